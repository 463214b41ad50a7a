//! Randomized properties over the public API. Deterministic seeds come
//! from proptest's default persistence; failures minimize automatically.

use num_traits::{One, Zero};
use proptest::collection::vec;
use proptest::prelude::*;

use orbicheck::enumeration::{
    build_subgroup_dag, enumerate_covers, enumerate_period_multisets, enumerate_signatures,
    EnumOptions,
};
use orbicheck::verification::{
    check_eq5_consistency, recheck, Certificate, ClaimId, Verdict,
};
use orbicheck::{Rational, Signature};

fn signature_strategy() -> impl Strategy<Value = Signature> {
    (0u32..40, vec(2u32..60, 0..8))
        .prop_map(|(g, periods)| Signature::new(g, periods).unwrap())
}

proptest! {
    #[test]
    fn signature_display_parse_roundtrip(sig in signature_strategy()) {
        let reparsed: Signature = sig.to_string().parse().unwrap();
        prop_assert_eq!(reparsed, sig);
    }

    #[test]
    fn l_sum_bounds(sig in signature_strategy()) {
        let k = sig.period_count() as i64;
        let l = sig.l_sum();
        prop_assert!(l >= Rational::new(k, 2));
        prop_assert!(l <= Rational::from_integer(k));
        if k > 0 {
            prop_assert!(l < Rational::from_integer(k));
        } else {
            prop_assert!(l.is_zero());
        }
    }

    #[test]
    fn multisets_hit_target_exactly(num in 1i64..8, den in 1i64..7, d in 2u64..25) {
        let target = Rational::new(num, den);
        let sols = enumerate_period_multisets(target, Some(d)).unwrap();
        for ms in &sols {
            let sum: Rational = ms
                .iter()
                .map(|&p| Rational::one() - Rational::new(1, i64::from(p)))
                .sum();
            prop_assert_eq!(sum, target);
            prop_assert!(ms.windows(2).all(|w| w[0] <= w[1]));
            prop_assert!(ms.iter().all(|&p| d % u64::from(p) == 0));
        }
        let mut dedup = sols.clone();
        dedup.dedup();
        prop_assert_eq!(&dedup, &sols);
        prop_assert!(sols.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn enumerated_covers_all_verify(g in 2u32..5, order in 1u64..13, degree in 2u64..4) {
        let opts = EnumOptions::default();
        for base in enumerate_signatures(g, order, &opts) {
            for pair in enumerate_covers(&base, degree) {
                prop_assert!(pair.verify(), "cover fails verify: {:?}", pair);
                prop_assert_eq!(
                    pair.total.orbifold_euler(),
                    Rational::from_integer(degree as i64) * pair.base.orbifold_euler()
                );
                prop_assert_eq!(pair.branch_data.len(), pair.base.period_count() as usize);
            }
        }
    }

    #[test]
    fn dag_build_is_deterministic(g in 2u32..5, max_order in 2u64..41) {
        let opts = EnumOptions { max_order: Some(max_order), ..EnumOptions::default() };
        let a = build_subgroup_dag(g, &opts).unwrap();
        let b = build_subgroup_dag(g, &opts).unwrap();
        prop_assert_eq!(a.nodes(), b.nodes());
        prop_assert_eq!(a.edges(), b.edges());
        for e in a.edges() {
            let lo = &a.nodes()[e.lower];
            let hi = &a.nodes()[e.higher];
            prop_assert!(hi.order % lo.order == 0 && hi.order > lo.order);
            prop_assert_eq!(&e.cover.base, &hi.signature);
            prop_assert_eq!(&e.cover.total, &lo.signature);
        }
    }

    #[test]
    fn certificate_lines_roundtrip(
        claim_idx in 0usize..5,
        case in "[a-z0-9 ()=<>-]{0,12}",
        subject in "[a-z0-9 ();,-]{1,20}",
        operands in vec(("[a-z_]{1,8}", any::<i64>()), 0..6),
        verdict_idx in 0usize..3,
    ) {
        let claims = [ClaimId::Gendec, ClaimId::Prop4, ClaimId::ClaimUno, ClaimId::Prop5, ClaimId::Eq5];
        let verdicts = [Verdict::Pass, Verdict::Fail, Verdict::Exception];
        let cert = Certificate {
            claim: claims[claim_idx],
            case_label: case,
            subject,
            operands,
            verdict: verdicts[verdict_idx],
        };
        prop_assert_eq!(&Certificate::from_text_line(&cert.to_text_line()).unwrap(), &cert);
        prop_assert_eq!(&Certificate::from_json_line(&cert.to_json_line()).unwrap(), &cert);
    }

    #[test]
    fn eq5_certificates_recheck(g_max in 0u32..7, k_max in 0u32..9) {
        let certs = check_eq5_consistency(g_max, k_max);
        prop_assert!(recheck(&certs).all_agree());
        for c in &certs {
            prop_assert_eq!(c.verdict, Verdict::Pass);
        }
    }
}
