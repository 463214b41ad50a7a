//! Deliberately naive brute-force reference implementations. These exist to
//! validate the pruned enumerators and the tower-length DP; they scan whole
//! budgeted search spaces with no pruning and no caching, and performance is
//! explicitly a non-goal. They ship in the library so the CLI can expose an
//! `--oracle` cross-check flag.

use num_traits::One;

use crate::enumeration::cover_admissible;
use crate::model::{rh_admissible, AmbientNode, Rational, Signature};

/// Finite search bounds for the oracles.
#[derive(Debug, Clone, Copy)]
pub struct OracleBudget {
    pub max_period: u32,
    pub max_terms: u32,
    pub max_order: u64,
}

impl OracleBudget {
    pub fn new(max_period: u32, max_terms: u32, max_order: u64) -> Self {
        assert!(max_period >= 2);
        assert!(max_terms >= 1);
        assert!(max_order >= 1);
        OracleBudget {
            max_period,
            max_terms,
            max_order,
        }
    }
}

/// Exhaustively tests every nondecreasing multiset with periods in
/// `[2, max_period]` and at most `max_terms` entries, returning those whose
/// `Σ(1 − 1/p)` equals the target exactly.
pub fn brute_multisets(target: Rational, budget: &OracleBudget) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = Vec::new();
    fn rec(
        target: Rational,
        budget: &OracleBudget,
        min_p: u32,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        let sum: Rational = cur
            .iter()
            .map(|&p| Rational::one() - Rational::new(1, i64::from(p)))
            .sum();
        if sum == target {
            out.push(cur.clone());
        }
        if cur.len() as u32 == budget.max_terms {
            return;
        }
        for p in min_p..=budget.max_period {
            cur.push(p);
            rec(target, budget, p, cur, out);
            cur.pop();
        }
    }
    rec(target, budget, 2, &mut cur, &mut out);
    out.sort();
    out
}

/// Exhaustively scans every signature with genus, periods, and period count
/// inside the budget, returning those that are Riemann-Hurwitz admissible
/// for the given ambient genus and order. Periods are restricted to
/// divisors of the order when `divide_order` is set.
pub fn brute_signatures(
    g: u32,
    order: u64,
    divide_order: bool,
    budget: &OracleBudget,
) -> Vec<Signature> {
    if order == 1 {
        return vec![Signature::closed(g)];
    }
    let candidates: Vec<u32> = (2..=budget.max_period)
        .filter(|&p| !divide_order || order % u64::from(p) == 0)
        .collect();
    let mut out = Vec::new();
    let mut cur: Vec<u32> = Vec::new();
    fn rec(
        g: u32,
        order: u64,
        genus: u32,
        candidates: &[u32],
        from: usize,
        max_terms: u32,
        cur: &mut Vec<u32>,
        out: &mut Vec<Signature>,
    ) {
        let sig = Signature::new(genus, cur.iter().copied()).unwrap();
        if rh_admissible(g, order, &sig) {
            out.push(sig);
        }
        if cur.len() as u32 == max_terms {
            return;
        }
        for (i, &p) in candidates.iter().enumerate().skip(from) {
            cur.push(p);
            rec(g, order, genus, candidates, i, max_terms, cur, out);
            cur.pop();
        }
    }
    for genus in 0..=g {
        rec(
            g,
            order,
            genus,
            &candidates,
            0,
            budget.max_terms,
            &mut cur,
            &mut out,
        );
    }
    out.sort();
    out
}

/// Recomputes the longest tower ending at the node by unmemoized recursive
/// search over all admissible predecessors within the budget. Predecessor
/// candidates are themselves found by the brute signature scan.
pub fn brute_tower_lambda(g: u32, node: &AmbientNode, budget: &OracleBudget) -> u32 {
    assert_eq!(node.ambient_genus, g);
    if node.order == 1 {
        return 0;
    }
    let mut best = 0;
    for order in 1..node.order {
        if node.order % order != 0 {
            continue;
        }
        let degree = node.order / order;
        for signature in brute_signatures(g, order, true, budget) {
            if cover_admissible(&node.signature, degree, &signature).is_some() {
                let pred = AmbientNode {
                    ambient_genus: g,
                    order,
                    signature,
                };
                best = best.max(1 + brute_tower_lambda(g, &pred, budget));
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn brute_multisets_examples() {
        let budget = OracleBudget::new(2, 8, 1);
        assert_eq!(
            brute_multisets(Rational::from_integer(3), &budget),
            vec![vec![2, 2, 2, 2, 2, 2]]
        );
        let budget = OracleBudget::new(6, 4, 1);
        assert_eq!(
            brute_multisets(Rational::zero(), &budget),
            vec![Vec::<u32>::new()]
        );
    }

    #[test]
    fn brute_tower_examples() {
        let budget = OracleBudget::new(12, 12, 12);
        let root = AmbientNode {
            ambient_genus: 2,
            order: 1,
            signature: Signature::closed(2),
        };
        assert_eq!(brute_tower_lambda(2, &root, &budget), 0);

        let hyperelliptic = AmbientNode {
            ambient_genus: 2,
            order: 2,
            signature: "0;2,2,2,2,2,2".parse().unwrap(),
        };
        assert_eq!(brute_tower_lambda(2, &hyperelliptic, &budget), 1);

        let node = AmbientNode {
            ambient_genus: 3,
            order: 4,
            signature: "1;2,2".parse().unwrap(),
        };
        assert_eq!(brute_tower_lambda(3, &node, &budget), 2);
    }
}
