//! Exhaustive desk-scale verification of the genus-monotonicity lemma, the
//! Weyl-vcd comparison with its two exceptional families, the tower-length
//! inequality, and the piecewise Weyl-vcd formula, emitting one
//! machine-checkable certificate per checked instance.
//!
//! Every certificate's verdict is a pure function of its named operands;
//! [`Certificate::recompute_verdict`] recomputes it so that serialized
//! certificates can be re-checked independently.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::enumeration::{build_subgroup_dag, CoverPair, EnumError, EnumOptions, SubgroupDag};
use crate::model::{harer_vcd, lambda_upper, Signature};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("genus {0} is below the hypothesis g >= 3")]
    GenusTooSmall(u32),
    #[error(transparent)]
    Enum(#[from] EnumError),
    #[error("cannot parse certificate line {line:?}: {reason}")]
    ParseCertificate { line: String, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimId {
    Gendec,
    Prop4,
    ClaimUno,
    Prop5,
    Eq5,
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ClaimId::Gendec => "gendec",
            ClaimId::Prop4 => "prop4",
            ClaimId::ClaimUno => "claim_uno",
            ClaimId::Prop5 => "prop5",
            ClaimId::Eq5 => "eq5",
        };
        f.write_str(s)
    }
}

impl FromStr for ClaimId {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "gendec" => ClaimId::Gendec,
            "prop4" => ClaimId::Prop4,
            "claim_uno" => ClaimId::ClaimUno,
            "prop5" => ClaimId::Prop5,
            "eq5" => ClaimId::Eq5,
            _ => return Err(()),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Exception,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Exception => "exception",
        };
        f.write_str(s)
    }
}

impl FromStr for Verdict {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "pass" => Verdict::Pass,
            "fail" => Verdict::Fail,
            "exception" => Verdict::Exception,
            _ => return Err(()),
        })
    }
}

/// One verified inequality instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub claim: ClaimId,
    pub case_label: String,
    pub subject: String,
    pub operands: Vec<(String, i64)>,
    pub verdict: Verdict,
}

impl Certificate {
    pub fn operand(&self, name: &str) -> Option<i64> {
        self.operands
            .iter()
            .find(|(n, _)| n == name)
            .map(|&(_, v)| v)
    }

    /// Recomputes the verdict from the operands alone. Returns `None` when
    /// a required operand is missing.
    pub fn recompute_verdict(&self) -> Option<Verdict> {
        let op = |n: &str| self.operand(n);
        Some(match self.claim {
            ClaimId::Gendec => {
                let (g_t, k_t) = (op("g_T")?, op("k_T")?);
                let (g_l, k_l) = (op("g_L")?, op("k_L")?);
                let holds = if g_t > 1 {
                    g_t < g_l
                } else {
                    g_t < g_l || (g_t == g_l && k_t < k_l)
                };
                if holds {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                }
            }
            ClaimId::Prop4 => {
                let (g_l, k_l) = (op("g_L")?, op("k_L")?);
                let (g_t, k_t) = (op("g_T")?, op("k_T")?);
                let (wl, wt) = (op("vcd_WL")?, op("vcd_WT")?);
                if wt < wl {
                    Verdict::Pass
                } else if wt == wl && exceptional_shape(g_l, k_l, g_t, k_t) {
                    Verdict::Exception
                } else {
                    Verdict::Fail
                }
            }
            ClaimId::ClaimUno => {
                let (vcd, lam, bound) = (op("vcd_WT")?, op("lambda")?, op("vcd_ambient")?);
                if vcd + lam + 1 <= bound {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                }
            }
            ClaimId::Prop5 => {
                let (vcd, lam, bound) = (op("vcd_WT")?, op("lambda")?, op("vcd_ambient")?);
                if vcd + lam <= bound {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                }
            }
            ClaimId::Eq5 => {
                let (g, k) = (op("g")?, op("k")?);
                let (nu, vcd) = (op("nu")?, op("vcd")?);
                let expected = if g > 0 && k > 0 {
                    nu
                } else if k == 0 {
                    nu - 1
                } else {
                    nu + 1
                };
                if vcd == expected {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                }
            }
        })
    }

    /// One-line text serialization: tab-separated claim, case, subject,
    /// comma-joined `name=value` operands, verdict.
    pub fn to_text_line(&self) -> String {
        let ops = self
            .operands
            .iter()
            .map(|(n, v)| format!("{n}={v}"))
            .collect::<Vec<_>>()
            .join(",");
        format!(
            "{}\t{}\t{}\t{}\t{}",
            self.claim, self.case_label, self.subject, ops, self.verdict
        )
    }

    pub fn from_text_line(line: &str) -> Result<Self, VerifyError> {
        let err = |reason: &str| VerifyError::ParseCertificate {
            line: line.to_string(),
            reason: reason.to_string(),
        };
        let fields: Vec<&str> = line.split('\t').collect();
        let [claim, case_label, subject, ops, verdict] = fields[..] else {
            return Err(err("expected 5 tab-separated fields"));
        };
        let claim = claim.parse().map_err(|_| err("unknown claim id"))?;
        let verdict = verdict.parse().map_err(|_| err("unknown verdict"))?;
        let mut operands = Vec::new();
        if !ops.is_empty() {
            for pair in ops.split(',') {
                let (n, v) = pair.split_once('=').ok_or_else(|| err("bad operand"))?;
                let v: i64 = v.parse().map_err(|_| err("bad operand value"))?;
                operands.push((n.to_string(), v));
            }
        }
        Ok(Certificate {
            claim,
            case_label: case_label.to_string(),
            subject: subject.to_string(),
            operands,
            verdict,
        })
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }

    pub fn from_json_line(line: &str) -> Result<Self, VerifyError> {
        serde_json::from_str(line).map_err(|e| VerifyError::ParseCertificate {
            line: line.to_string(),
            reason: e.to_string(),
        })
    }

    /// One CSV row (write-only; re-checking consumes text or json). The
    /// case and subject fields are quoted, operands are semicolon-joined.
    pub fn to_csv_line(&self) -> String {
        let ops = self
            .operands
            .iter()
            .map(|(n, v)| format!("{n}={v}"))
            .collect::<Vec<_>>()
            .join(";");
        format!(
            "{},\"{}\",\"{}\",{},{}",
            self.claim, self.case_label, self.subject, ops, self.verdict
        )
    }
}

pub const CSV_HEADER: &str = "claim,case,subject,operands,verdict";

fn exceptional_shape(g_l: i64, k_l: i64, g_t: i64, k_t: i64) -> bool {
    (g_l == 2 && k_l == 0 && g_t == 0 && k_t == 6)
        || (g_l == 1 && k_l >= 1 && g_t == 0 && k_t == k_l + 3)
}

fn edge_subject(g: u32, dag: &SubgroupDag, edge_idx: usize) -> String {
    let e = &dag.edges()[edge_idx];
    let lo = &dag.nodes()[e.lower];
    let hi = &dag.nodes()[e.higher];
    format!(
        "g={} L=(order {}, {}) T=(order {}, {}) d={}",
        g, lo.order, lo.signature, hi.order, hi.signature, e.cover.degree
    )
}

/// Checks genus monotonicity on every DAG edge for every ambient genus in
/// `[2, g_max]`: if the base genus exceeds 1 it must be strictly smaller
/// than the total genus; otherwise it is at most the total genus, with
/// strictly fewer base cone points in case of equality.
///
/// The strict cone-point inequality is *not* universally true: with both
/// genera zero, a cone point folding to a smooth (`q = 1`) preimage gives
/// `k_L = d(k_T − 2) + 2 − s` with `s` smooth preimages, and on the
/// boundary `s = (d − 1)(k_T − 2)` the counts coincide. One witness,
/// `(0;4,4,4)` over `(0;2,4,8)` at degree 2, matches a classical index-2
/// triangle-group inclusion, so these are real covers, not artifacts of
/// the admissible over-approximation. The checker reports
/// them as honest `fail` certificates; every fail within the default
/// bounds is of exactly this equal-genus-0, equal-k shape.
pub fn check_gendec(g_max: u32, opts: &EnumOptions) -> Result<Vec<Certificate>, VerifyError> {
    let mut certs = Vec::new();
    for g in 2..=g_max {
        let dag = build_subgroup_dag(g, opts)?;
        let mut per_edge: Vec<Certificate> = (0..dag.edges().len())
            .into_par_iter()
            .map(|i| {
                let e = &dag.edges()[i];
                let base = &e.cover.base;
                let total = &e.cover.total;
                let (g_t, k_t) = (base.genus(), base.period_count());
                let (g_l, k_l) = (total.genus(), total.period_count());
                let case_label = if g_t > 1 {
                    "(i) g_T > 1"
                } else {
                    "(ii) g_T <= 1"
                };
                let mut cert = Certificate {
                    claim: ClaimId::Gendec,
                    case_label: case_label.to_string(),
                    subject: edge_subject(g, &dag, i),
                    operands: vec![
                        ("g_T".into(), i64::from(g_t)),
                        ("k_T".into(), i64::from(k_t)),
                        ("g_L".into(), i64::from(g_l)),
                        ("k_L".into(), i64::from(k_l)),
                        ("degree".into(), e.cover.degree as i64),
                    ],
                    verdict: Verdict::Pass,
                };
                cert.verdict = cert.recompute_verdict().unwrap();
                cert
            })
            .collect();
        certs.append(&mut per_edge);
    }
    Ok(certs)
}

/// A pair of signature shapes on which the Weyl-group vcds coincide
/// instead of dropping strictly, together with a witnessing cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionPair {
    /// (g_L, k_L) of the smaller subgroup's quotient.
    pub upper: (u32, u32),
    /// (g_T, k_T) of the larger subgroup's quotient.
    pub lower: (u32, u32),
    pub witness: CoverPair,
}

/// Result of the Weyl-vcd comparison scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop4Scan {
    pub exceptions: Vec<ExceptionPair>,
    pub certificates: Vec<Certificate>,
}

/// Scans every DAG edge for ambient genus in `[2, g_max]`. On edges where
/// the base genus drops strictly, the Weyl vcd must drop strictly as well,
/// except on the two exceptional shapes `(2,0)/(0,6)` and `(1,r)/(0,r+3)`,
/// where exact equality is enforced. A vcd increase on any edge is a fail.
///
/// Exceptional `(1,r)` pairs are collected for `r ≤ opts.max_exception_r`;
/// the family is infinite, so completeness holds only within the search
/// bounds.
pub fn find_vcd_exceptions(g_max: u32, opts: &EnumOptions) -> Result<Prop4Scan, VerifyError> {
    let mut certificates = Vec::new();
    let mut exceptions: Vec<ExceptionPair> = Vec::new();
    for g in 2..=g_max {
        let dag = build_subgroup_dag(g, opts)?;
        let per_edge: Vec<(Certificate, Option<ExceptionPair>)> = (0..dag.edges().len())
            .into_par_iter()
            .filter_map(|i| {
                let e = &dag.edges()[i];
                let base = &e.cover.base;
                let total = &e.cover.total;
                let wl = i64::from(total.weyl_vcd().get());
                let wt = i64::from(base.weyl_vcd().get());
                if base.genus() >= total.genus() && wt <= wl {
                    // outside the proposition's hypothesis, and no
                    // monotonicity violation to report
                    return None;
                }
                let (g_l, k_l) = (total.genus(), total.period_count());
                let (g_t, k_t) = (base.genus(), base.period_count());
                let mut cert = Certificate {
                    claim: ClaimId::Prop4,
                    case_label: String::new(),
                    subject: edge_subject(g, &dag, i),
                    operands: vec![
                        ("g_L".into(), i64::from(g_l)),
                        ("k_L".into(), i64::from(k_l)),
                        ("g_T".into(), i64::from(g_t)),
                        ("k_T".into(), i64::from(k_t)),
                        ("vcd_WL".into(), wl),
                        ("vcd_WT".into(), wt),
                    ],
                    verdict: Verdict::Pass,
                };
                cert.verdict = cert.recompute_verdict().unwrap();
                cert.case_label = match cert.verdict {
                    Verdict::Pass => "strict".to_string(),
                    Verdict::Exception => {
                        if (g_l, k_l) == (2, 0) {
                            "exception-i".to_string()
                        } else {
                            format!("exception-ii r={k_l}")
                        }
                    }
                    Verdict::Fail => {
                        if wt > wl {
                            "monotonicity-violation".to_string()
                        } else {
                            "out-of-family".to_string()
                        }
                    }
                };
                let pair = (cert.verdict == Verdict::Exception
                    && (g_l != 1 || k_l <= opts.max_exception_r))
                    .then(|| ExceptionPair {
                        upper: (g_l, k_l),
                        lower: (g_t, k_t),
                        witness: e.cover.clone(),
                    });
                Some((cert, pair))
            })
            .collect();
        for (cert, pair) in per_edge {
            certificates.push(cert);
            if let Some(p) = pair {
                if !exceptions
                    .iter()
                    .any(|q| q.upper == p.upper && q.lower == p.lower)
                {
                    exceptions.push(p);
                }
            }
        }
    }
    exceptions.sort_by_key(|p| (p.upper, p.lower));
    Ok(Prop4Scan {
        exceptions,
        certificates,
    })
}

/// For every node of positive quotient genus and order at least 2, checks
/// `vcd(WT) + λ + 1 ≤ vcd(Γ_g)`, with λ the smaller of the
/// order-factorization bound and the tower length. Requires g ≥ 3.
pub fn verify_claim_uno(g: u32, opts: &EnumOptions) -> Result<Vec<Certificate>, VerifyError> {
    if g < 3 {
        return Err(VerifyError::GenusTooSmall(g));
    }
    let dag = build_subgroup_dag(g, opts)?;
    let bound = i64::from(harer_vcd(g, 0).get());
    let certs = (0..dag.nodes().len())
        .into_par_iter()
        .filter_map(|i| {
            let node = &dag.nodes()[i];
            if node.order < 2 || node.signature.genus() == 0 {
                return None;
            }
            let vcd = i64::from(node.signature.weyl_vcd().get());
            let lam = i64::from(lambda_upper(node.order).min(dag.lambda_at(i)));
            let case_label = match vcd {
                v if v >= 3 => "vcd>=3",
                2 => "vcd=2",
                _ => "vcd=1",
            };
            let mut cert = Certificate {
                claim: ClaimId::ClaimUno,
                case_label: case_label.to_string(),
                subject: format!("g={} T=(order {}, {})", g, node.order, node.signature),
                operands: vec![
                    ("vcd_WT".into(), vcd),
                    ("lambda".into(), lam),
                    ("vcd_ambient".into(), bound),
                ],
                verdict: Verdict::Pass,
            };
            cert.verdict = cert.recompute_verdict().unwrap();
            Some(cert)
        })
        .collect();
    Ok(certs)
}

/// For every node of the genus-g DAG, root included, checks
/// `vcd(WT) + Λ(T) ≤ vcd(Γ_g)` where Λ is the tower length. The tower
/// length upper-bounds λ(T) for every actual subgroup realizing the node,
/// so a full pass verifies the inequality over the admissible superset.
/// Requires g ≥ 3.
pub fn verify_prop5(g: u32, opts: &EnumOptions) -> Result<Vec<Certificate>, VerifyError> {
    if g < 3 {
        return Err(VerifyError::GenusTooSmall(g));
    }
    let dag = build_subgroup_dag(g, opts)?;
    let bound = i64::from(harer_vcd(g, 0).get());
    let certs = (0..dag.nodes().len())
        .into_par_iter()
        .map(|i| {
            let node = &dag.nodes()[i];
            let vcd = i64::from(node.signature.weyl_vcd().get());
            let lam = i64::from(dag.lambda_at(i));
            let case_label = if node.order == 1 {
                "root".to_string()
            } else if node.signature.genus() > 0 {
                "genus-positive".to_string()
            } else {
                // inductive route: the descent predecessor realizing the
                // tower length, genus-0 predecessors carrying k_T < k_L
                let pred = dag
                    .edges_into(i)
                    .filter(|e| dag.lambda_at(e.lower) + 1 == dag.lambda_at(i))
                    .map(|e| &dag.nodes()[e.lower])
                    .max_by_key(|n| (n.order, n.signature.clone()));
                match pred {
                    Some(p) => format!("genus0 via (order {}, {})", p.order, p.signature),
                    None => "genus0 direct".to_string(),
                }
            };
            let mut cert = Certificate {
                claim: ClaimId::Prop5,
                case_label,
                subject: format!("g={} T=(order {}, {})", g, node.order, node.signature),
                operands: vec![
                    ("vcd_WT".into(), vcd),
                    ("lambda".into(), lam),
                    ("vcd_ambient".into(), bound),
                ],
                verdict: Verdict::Pass,
            };
            cert.verdict = cert.recompute_verdict().unwrap();
            cert
        })
        .collect();
    Ok(certs)
}

/// For each (g, k) on the grid with 2g + k > 2, checks that `harer_vcd`
/// agrees with the piecewise value ν / ν−1 / ν+1 computed from
/// `ν = 4g + k − 4`.
pub fn check_eq5_consistency(g_max: u32, k_max: u32) -> Vec<Certificate> {
    let mut certs = Vec::new();
    for g in 0..=g_max {
        for k in 0..=k_max {
            if 2 * g + k <= 2 {
                continue;
            }
            let sig = Signature::new(g, std::iter::repeat(2).take(k as usize))
                .expect("periods are 2");
            let nu = sig.nu();
            let vcd = i64::from(harer_vcd(g, k).get());
            let case_label = if g > 0 && k > 0 {
                "g,k>0"
            } else if k == 0 {
                "k=0"
            } else {
                "g=0"
            };
            let mut cert = Certificate {
                claim: ClaimId::Eq5,
                case_label: case_label.to_string(),
                subject: format!("gamma({g},{k})"),
                operands: vec![
                    ("g".into(), i64::from(g)),
                    ("k".into(), i64::from(k)),
                    ("nu".into(), nu),
                    ("vcd".into(), vcd),
                ],
                verdict: Verdict::Pass,
            };
            cert.verdict = cert.recompute_verdict().unwrap();
            certs.push(cert);
        }
    }
    certs
}

/// Outcome of re-checking a batch of serialized certificates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecheckReport {
    pub total: usize,
    /// Indices (0-based line numbers) whose recomputed verdict disagrees
    /// with the stored one, or which lack the operands to recompute.
    pub disagreements: Vec<usize>,
}

impl RecheckReport {
    pub fn all_agree(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Recomputes every certificate's verdict from its operands and compares
/// with the stored verdict.
pub fn recheck(certs: &[Certificate]) -> RecheckReport {
    let disagreements = certs
        .iter()
        .enumerate()
        .filter(|(_, c)| c.recompute_verdict() != Some(c.verdict))
        .map(|(i, _)| i)
        .collect();
    RecheckReport {
        total: certs.len(),
        disagreements,
    }
}

pub fn count_verdicts(certs: &[Certificate]) -> (usize, usize, usize) {
    let mut pass = 0;
    let mut fail = 0;
    let mut exception = 0;
    for c in certs {
        match c.verdict {
            Verdict::Pass => pass += 1,
            Verdict::Fail => fail += 1,
            Verdict::Exception => exception += 1,
        }
    }
    (pass, fail, exception)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{cover_admissible, AmbientNode};

    fn opts() -> EnumOptions {
        EnumOptions::default()
    }

    fn sig(s: &str) -> Signature {
        s.parse().unwrap()
    }

    #[test]
    fn gendec_genus_two() {
        let certs = check_gendec(2, &opts()).unwrap();
        assert!(!certs.is_empty());
        // the hyperelliptic edge lands in case (ii)
        assert!(certs
            .iter()
            .any(|c| c.case_label.starts_with("(ii)") && c.subject.contains("0;2,2,2,2,2,2")));
        // Every fail is an equal-genus-0 edge where the base cone point
        // counts coincide because a cone point folds to a smooth preimage
        // (q = 1), so the claimed strict inequality k_T < k_L does not hold.
        // The family is arithmetically genuine: one member, (0;4,4,4) over
        // (0;2,4,8) at degree 2, mirrors the classical index-2
        // triangle-group inclusion.
        for c in &certs {
            if c.verdict != Verdict::Fail {
                continue;
            }
            assert_eq!(c.operand("g_T"), Some(0));
            assert_eq!(c.operand("g_L"), Some(0));
            assert_eq!(c.operand("k_T"), c.operand("k_L"));
        }
        assert!(certs.iter().any(|c| c.verdict == Verdict::Fail
            && c.subject.contains("L=(order 8, 0;4,4,4)")
            && c.subject.contains("T=(order 16, 0;2,4,8)")));
    }

    #[test]
    fn gendec_boundary_fail_has_smooth_preimage() {
        // the counterexamples require a q = 1 preimage over a cone point;
        // check that directly on the smallest witness
        let pair = cover_admissible(&sig("0;2,4,8"), 2, &sig("0;4,4,4")).unwrap();
        assert!(pair.verify());
        assert!(pair
            .branch_data
            .iter()
            .any(|b| b.upstairs_orders.contains(&1)));
    }

    #[test]
    fn gendec_unramified_case_i() {
        // (3;) over (5;), an unramified double cover below the root of the
        // g = 5 DAG, exercises case (i)
        let small = EnumOptions {
            max_order: Some(8),
            ..opts()
        };
        let certs = check_gendec(5, &small).unwrap();
        assert!(certs.iter().any(|c| c.case_label.starts_with("(i)")
            && c.subject.contains("L=(order 1, 5;)")
            && c.subject.contains("T=(order 2, 3;)")
            && c.verdict == Verdict::Pass));
    }

    #[test]
    fn prop4_finds_hyperelliptic_exception() {
        let small = EnumOptions {
            max_order: Some(8),
            ..opts()
        };
        let scan = find_vcd_exceptions(2, &small).unwrap();
        assert!(scan
            .exceptions
            .iter()
            .any(|p| p.upper == (2, 0) && p.lower == (0, 6) && p.witness.degree == 2));
        assert!(scan
            .exceptions
            .iter()
            .any(|p| p.upper == (1, 2) && p.lower == (0, 5)));
        let (_, fail, _) = count_verdicts(&scan.certificates);
        assert_eq!(fail, 0);
    }

    #[test]
    fn claim_uno_examples() {
        let certs = verify_claim_uno(3, &opts()).unwrap();
        let c = certs
            .iter()
            .find(|c| c.subject == "g=3 T=(order 2, 2;)")
            .unwrap();
        assert_eq!(c.operand("vcd_WT"), Some(3));
        assert_eq!(c.operand("lambda"), Some(1));
        assert_eq!(c.operand("vcd_ambient"), Some(7));
        assert_eq!(c.verdict, Verdict::Pass);

        let c = certs
            .iter()
            .find(|c| c.subject == "g=3 T=(order 4, 1;2,2)")
            .unwrap();
        assert_eq!(c.operand("vcd_WT"), Some(2));
        assert_eq!(c.operand("lambda"), Some(2));
        assert_eq!(c.verdict, Verdict::Pass);
    }

    #[test]
    fn claim_uno_rejects_small_genus() {
        assert!(matches!(
            verify_claim_uno(2, &opts()),
            Err(VerifyError::GenusTooSmall(2))
        ));
    }

    #[test]
    fn prop5_root_and_sample_node() {
        let certs = verify_prop5(3, &opts()).unwrap();
        let root = certs
            .iter()
            .find(|c| c.case_label == "root")
            .unwrap();
        assert_eq!(root.operand("vcd_WT"), Some(7));
        assert_eq!(root.operand("lambda"), Some(0));
        assert_eq!(root.verdict, Verdict::Pass);

        let c = certs
            .iter()
            .find(|c| c.subject == "g=3 T=(order 2, 0;2,2,2,2,2,2,2,2)")
            .unwrap();
        assert_eq!(c.operand("vcd_WT"), Some(5));
        assert_eq!(c.operand("lambda"), Some(1));
        assert_eq!(c.verdict, Verdict::Pass);
    }

    #[test]
    fn prop5_pass_set_monotone_in_max_order() {
        // enlarging the order bound may only grow tower lengths; previously
        // passing nodes must keep passing
        let small = EnumOptions {
            max_order: Some(20),
            ..opts()
        };
        let before = verify_prop5(3, &small).unwrap();
        let after = verify_prop5(3, &opts()).unwrap();
        for cert in &before {
            if cert.verdict != Verdict::Pass {
                continue;
            }
            let again = after.iter().find(|c| c.subject == cert.subject).unwrap();
            assert_eq!(again.verdict, Verdict::Pass, "regressed: {}", cert.subject);
        }
    }

    #[test]
    fn eq5_examples() {
        let certs = check_eq5_consistency(10, 20);
        let by_subject = |s: &str| certs.iter().find(|c| c.subject == s).unwrap();
        let c = by_subject("gamma(2,0)");
        assert_eq!((c.operand("nu"), c.operand("vcd")), (Some(4), Some(3)));
        let c = by_subject("gamma(0,6)");
        assert_eq!((c.operand("nu"), c.operand("vcd")), (Some(2), Some(3)));
        let c = by_subject("gamma(1,2)");
        assert_eq!((c.operand("nu"), c.operand("vcd")), (Some(2), Some(2)));
        let (_, fail, _) = count_verdicts(&certs);
        assert_eq!(fail, 0);
        // all three cases exercised
        for label in ["g,k>0", "k=0", "g=0"] {
            assert!(certs.iter().any(|c| c.case_label == label));
        }
    }

    #[test]
    fn certificates_round_trip_text_and_json() {
        let certs = check_eq5_consistency(3, 4);
        for c in &certs {
            assert_eq!(&Certificate::from_text_line(&c.to_text_line()).unwrap(), c);
            assert_eq!(&Certificate::from_json_line(&c.to_json_line()).unwrap(), c);
        }
    }

    #[test]
    fn recheck_catches_tampering() {
        let mut certs = check_eq5_consistency(3, 4);
        assert!(recheck(&certs).all_agree());
        certs[0].verdict = Verdict::Fail;
        let report = recheck(&certs);
        assert_eq!(report.disagreements, vec![0]);
    }

    #[test]
    fn weyl_vcd_monotone_on_edges() {
        for g in 2..=3u32 {
            let dag = build_subgroup_dag(g, &opts()).unwrap();
            for e in dag.edges() {
                assert!(
                    e.cover.base.weyl_vcd() <= e.cover.total.weyl_vcd(),
                    "vcd increased on edge {:?}",
                    e
                );
            }
        }
    }

    #[test]
    fn dag_node_helper_is_consistent() {
        let dag = build_subgroup_dag(2, &opts()).unwrap();
        let node = AmbientNode {
            ambient_genus: 2,
            order: 2,
            signature: sig("1;2,2"),
        };
        assert!(dag.node_index(&node).is_some());
    }
}
