//! Exhaustive, pruned, exact enumeration: period multisets with a
//! prescribed `Σ(1 − 1/p)`, Riemann-Hurwitz admissible quotient signatures,
//! branch data and cover pairs between signatures, the per-genus subgroup
//! DAG, and the tower-length dynamic program over it.
//!
//! Admissibility here is an over-approximation of realizability: no
//! Hurwitz-existence (permutation representation) check is performed, so
//! every enumeration returns a superset of what actual group actions
//! realize. Universally quantified checks over these supersets are sound.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{rh_admissible, Rational, Signature};
pub use crate::model::AmbientNode;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumError {
    #[error("target sum {0} is negative")]
    NegativeTarget(Rational),
    #[error("max_order must be at least 2, got {0}")]
    MaxOrderTooSmall(u64),
    #[error("node (order {order}, {signature}) is not in the DAG", order = .0.order, signature = .0.signature)]
    NodeNotInDag(AmbientNode),
}

/// Search bounds for the enumerators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EnumOptions {
    /// Restrict quotient periods to divisors of the subgroup order. Point
    /// stabilizers of a finite action are cyclic subgroups, so their orders
    /// divide the group order; disabling this widens the search.
    pub periods_divide_order: bool,
    /// Largest subgroup order considered; `None` means the Hurwitz bound
    /// 84(g−1) on |Aut| of a closed genus-g surface (a classical fact, used
    /// here purely as a finite search cutoff).
    pub max_order: Option<u64>,
    /// Largest `r` reported for the `(1,r)/(0,r+3)` exceptional family.
    pub max_exception_r: u32,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            periods_divide_order: true,
            max_order: None,
            max_exception_r: 16,
        }
    }
}

impl EnumOptions {
    pub fn effective_max_order(&self, g: u32) -> u64 {
        self.max_order.unwrap_or(84 * (u64::from(g) - 1))
    }

    /// Stable tag naming the options, used in cache keys.
    pub fn cache_tag(&self, g: u32) -> String {
        format!(
            "div{}-max{}-r{}",
            u8::from(self.periods_divide_order),
            self.effective_max_order(g),
            self.max_exception_r
        )
    }
}

/// All multisets `{p_i ≥ 2}` with `Σ(1 − 1/p_i) = target`, each sorted
/// nondecreasing, the list sorted lexicographically.
///
/// The multiset size k is confined to `ceil(target) ≤ k ≤ floor(2·target)`
/// (from `k/2 ≤ Σ(1 − 1/p) ≤ k`), and the recursion enumerates
/// nondecreasing periods with an exact remaining-sum feasibility bound:
/// with j slots left and next period ≥ p, the remainder must lie in
/// `[j(1 − 1/p), j)`, which caps p at `floor(j / (j − rem))`.
///
/// Arithmetic is exact over `i64` numerators and denominators with
/// overflow checks on in every profile. Without a divisor constraint the
/// feasible periods include Sylvester-style chains whose denominators grow
/// double-exponentially in the target, so very large unconstrained targets
/// abort on overflow rather than return wrong answers; the
/// divisor-constrained mode used by the signature enumerator has no such
/// growth.
pub fn enumerate_period_multisets(
    target: Rational,
    divisor_of: Option<u64>,
) -> Result<Vec<Vec<u32>>, EnumError> {
    if target.is_negative() {
        return Err(EnumError::NegativeTarget(target));
    }
    if target.is_zero() {
        return Ok(vec![Vec::new()]);
    }
    let k_min = target.ceil().to_integer().max(1) as u32;
    let k_max = (target * Rational::from_integer(2)).floor().to_integer() as u32;
    let mut out = Vec::new();
    let mut cur = Vec::new();
    for k in k_min..=k_max {
        descend(k, 2, target, divisor_of, &mut cur, &mut out);
    }
    out.sort();
    Ok(out)
}

fn descend(
    slots: u32,
    min_p: u32,
    rem: Rational,
    divisor_of: Option<u64>,
    cur: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if slots == 1 {
        // solve 1 − 1/p = rem exactly
        let inv = Rational::one() - rem;
        if inv.is_positive() && inv.numer().is_one() {
            let p = *inv.denom();
            if p >= i64::from(min_p)
                && p >= 2
                && divisor_of.map_or(true, |d| d % (p as u64) == 0)
            {
                cur.push(p as u32);
                out.push(cur.clone());
                cur.pop();
            }
        }
        return;
    }
    let slots_r = Rational::from_integer(i64::from(slots));
    if rem >= slots_r {
        return;
    }
    // p ≤ slots / (slots − rem)
    let p_cap = (slots_r / (slots_r - rem)).floor().to_integer();
    if p_cap < i64::from(min_p) {
        return;
    }
    for p in i64::from(min_p)..=p_cap {
        if let Some(d) = divisor_of {
            if d % (p as u64) != 0 {
                continue;
            }
        }
        let term = Rational::one() - Rational::new(1, p);
        if term > rem {
            break;
        }
        cur.push(p as u32);
        descend(slots - 1, p as u32, rem - term, divisor_of, cur, out);
        cur.pop();
    }
}

/// All signatures `sig` with `rh_admissible(g, order, sig)`, quotient genus
/// ascending and period multisets lexicographic within each genus.
///
/// The quotient genus ranges over `0 ≤ g_L ≤ floor(((2g−2)/order + 2)/2)`,
/// obtained by solving the Riemann-Hurwitz relation with `l = 0`.
pub fn enumerate_signatures(g: u32, order: u64, opts: &EnumOptions) -> Vec<Signature> {
    assert!(g >= 2);
    assert!(order >= 1);
    if order == 1 {
        return vec![Signature::closed(g)];
    }
    let total = Rational::new(2 * i64::from(g) - 2, order as i64);
    let divisor = opts.periods_divide_order.then_some(order);
    let genus_cap = ((total + Rational::from_integer(2)) / Rational::from_integer(2))
        .floor()
        .to_integer();
    let mut sigs = Vec::new();
    for quotient_genus in 0..=genus_cap.max(0) as u32 {
        let l_target = total - Rational::from_integer(2 * i64::from(quotient_genus) - 2);
        if l_target.is_negative() {
            break;
        }
        for periods in enumerate_period_multisets(l_target, divisor).expect("target >= 0") {
            sigs.push(Signature::new(quotient_genus, periods).expect("periods >= 2"));
        }
    }
    sigs
}

/// Local picture of an orbifold cover over one cone point of the base: the
/// multiset of upstairs orders q (each dividing the base period, with q = 1
/// for smooth preimages), where the local degrees `p/q` sum to the cover
/// degree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BranchDatum {
    pub base_period: u32,
    /// Sorted nondecreasing; includes q = 1 entries.
    pub upstairs_orders: Vec<u32>,
}

impl BranchDatum {
    /// Upstairs orders that are actual cone points (q ≥ 2).
    pub fn cone_orders(&self) -> impl Iterator<Item = u32> + '_ {
        self.upstairs_orders.iter().copied().filter(|&q| q >= 2)
    }

    /// Number of preimage points, q = 1 entries included.
    pub fn preimage_count(&self) -> u32 {
        self.upstairs_orders.len() as u32
    }

    /// `Σ 1/q` over all preimages, q = 1 included.
    pub fn reciprocal_sum(&self) -> Rational {
        self.upstairs_orders
            .iter()
            .map(|&q| Rational::new(1, i64::from(q)))
            .sum()
    }
}

/// All multisets of divisors q of `base_period` whose local degrees
/// `base_period/q` sum to `degree`, in lexicographic order.
pub fn branch_data_solutions(base_period: u32, degree: u64) -> Vec<BranchDatum> {
    assert!(base_period >= 2);
    assert!(degree >= 1);
    let divisors: Vec<u32> = (1..=base_period).filter(|q| base_period % q == 0).collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(
        p: u32,
        divisors: &[u32],
        from: usize,
        rem: u64,
        cur: &mut Vec<u32>,
        out: &mut Vec<BranchDatum>,
    ) {
        if rem == 0 {
            out.push(BranchDatum {
                base_period: p,
                upstairs_orders: cur.clone(),
            });
            return;
        }
        for (i, &q) in divisors.iter().enumerate().skip(from) {
            let local = u64::from(p / q);
            if local > rem {
                continue;
            }
            cur.push(q);
            rec(p, divisors, i, rem - local, cur, out);
            cur.pop();
        }
    }
    rec(base_period, &divisors, 0, degree, &mut cur, &mut out);
    out
}

/// Degree-d orbifold cover between two signatures with explicit branch
/// data, one [`BranchDatum`] per base period (aligned with
/// `base.periods()`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CoverPair {
    pub base: Signature,
    pub degree: u64,
    pub total: Signature,
    pub branch_data: Vec<BranchDatum>,
}

impl CoverPair {
    /// Checks every bookkeeping identity of the cover: multiplicativity of
    /// the orbifold Euler characteristic, the period multiset match, the
    /// q-inclusive Euler relation `2 − 2g_L − K = d(2 − 2g_T − k_T)` where
    /// K counts all preimage points, and the ramification identity
    /// `Σ 1/q = d · Σ 1/p` over all preimages.
    pub fn verify(&self) -> bool {
        let d = Rational::from_integer(self.degree as i64);
        if self.total.orbifold_euler() != d * self.base.orbifold_euler() {
            return false;
        }
        if self.branch_data.len() != self.base.periods().len() {
            return false;
        }
        let mut cone: Vec<u32> = Vec::new();
        let mut preimages: i64 = 0;
        let mut recip = Rational::zero();
        for (datum, &p) in self.branch_data.iter().zip(self.base.periods()) {
            if datum.base_period != p {
                return false;
            }
            if datum.upstairs_orders.iter().any(|&q| p % q != 0) {
                return false;
            }
            let local_sum: u64 = datum
                .upstairs_orders
                .iter()
                .map(|&q| u64::from(p / q))
                .sum();
            if local_sum != self.degree {
                return false;
            }
            cone.extend(datum.cone_orders());
            preimages += i64::from(datum.preimage_count());
            recip += datum.reciprocal_sum();
        }
        cone.sort_unstable();
        if cone != self.total.periods() {
            return false;
        }
        let base_recip: Rational = self
            .base
            .periods()
            .iter()
            .map(|&p| Rational::new(1, i64::from(p)))
            .sum();
        if recip != d * base_recip {
            return false;
        }
        // q-inclusive Euler relation
        let lhs = 2 - 2 * i64::from(self.total.genus()) - preimages;
        let rhs = d
            * Rational::from_integer(
                2 - 2 * i64::from(self.base.genus()) - i64::from(self.base.period_count()),
            );
        Rational::from_integer(lhs) == rhs
    }
}

/// Searches for an assignment of one [`BranchDatum`] per base period whose
/// q ≥ 2 orders reproduce exactly `total.periods` and whose Euler
/// bookkeeping is consistent; returns the lexicographically least witness,
/// or `None` when no assignment exists.
pub fn cover_admissible(base: &Signature, degree: u64, total: &Signature) -> Option<CoverPair> {
    assert!(degree >= 2);
    let d = Rational::from_integer(degree as i64);
    if total.orbifold_euler() != d * base.orbifold_euler() {
        return None;
    }
    // remaining multiset of total periods to account for
    let mut remaining: BTreeMap<u32, u32> = BTreeMap::new();
    for &q in total.periods() {
        *remaining.entry(q).or_insert(0) += 1;
    }
    let mut options: BTreeMap<u32, Vec<BranchDatum>> = BTreeMap::new();
    for &p in base.periods() {
        options
            .entry(p)
            .or_insert_with(|| branch_data_solutions(p, degree));
    }
    let mut chosen: Vec<BranchDatum> = Vec::with_capacity(base.periods().len());
    if assign(base.periods(), &options, &mut remaining, &mut chosen, degree) {
        let pair = CoverPair {
            base: base.clone(),
            degree,
            total: total.clone(),
            branch_data: chosen,
        };
        debug_assert!(pair.verify());
        Some(pair)
    } else {
        None
    }
}

fn assign(
    periods: &[u32],
    options: &BTreeMap<u32, Vec<BranchDatum>>,
    remaining: &mut BTreeMap<u32, u32>,
    chosen: &mut Vec<BranchDatum>,
    degree: u64,
) -> bool {
    let Some((&p, rest)) = periods.split_first() else {
        return remaining.values().all(|&c| c == 0);
    };
    // each later period can contribute at most `degree` cone points
    let outstanding: u64 = remaining.values().map(|&c| u64::from(c)).sum();
    if outstanding > degree * (periods.len() as u64) {
        return false;
    }
    'datum: for datum in &options[&p] {
        // try to take this datum's cone orders out of `remaining`
        let mut taken: Vec<u32> = Vec::new();
        for q in datum.cone_orders() {
            match remaining.get_mut(&q) {
                Some(c) if *c > 0 => {
                    *c -= 1;
                    taken.push(q);
                }
                _ => {
                    for t in taken {
                        *remaining.get_mut(&t).unwrap() += 1;
                    }
                    continue 'datum;
                }
            }
        }
        chosen.push(datum.clone());
        if assign(rest, options, remaining, chosen, degree) {
            return true;
        }
        chosen.pop();
        for t in taken {
            *remaining.get_mut(&t).unwrap() += 1;
        }
    }
    false
}

/// All covers over the given base and degree: every product of branch-data
/// choices per base period that yields an integer total genus ≥ 0,
/// deduplicated by total signature with the lexicographically least branch
/// assignment kept as witness, sorted by total signature.
pub fn enumerate_covers(base: &Signature, degree: u64) -> Vec<CoverPair> {
    assert!(degree >= 2);
    let d = Rational::from_integer(degree as i64);
    let options: Vec<Vec<BranchDatum>> = base
        .periods()
        .iter()
        .map(|&p| branch_data_solutions(p, degree))
        .collect();
    let mut found: BTreeMap<Signature, CoverPair> = BTreeMap::new();
    let mut chosen: Vec<BranchDatum> = Vec::new();
    fn product(
        base: &Signature,
        d: Rational,
        degree: u64,
        options: &[Vec<BranchDatum>],
        idx: usize,
        chosen: &mut Vec<BranchDatum>,
        found: &mut BTreeMap<Signature, CoverPair>,
    ) {
        if idx == options.len() {
            let mut cone: Vec<u32> = chosen.iter().flat_map(|b| b.cone_orders()).collect();
            cone.sort_unstable();
            let l_up: Rational = cone
                .iter()
                .map(|&q| Rational::one() - Rational::new(1, i64::from(q)))
                .sum();
            // 2 − 2g_total − l_up = degree · χ(base)
            let twice_genus =
                Rational::from_integer(2) - l_up - d * base.orbifold_euler();
            if twice_genus.is_negative() || !twice_genus.denom().is_one() {
                return;
            }
            let twice = twice_genus.to_integer();
            if twice % 2 != 0 {
                return;
            }
            let total = Signature::new((twice / 2) as u32, cone).expect("cone orders >= 2");
            found.entry(total.clone()).or_insert_with(|| {
                let pair = CoverPair {
                    base: base.clone(),
                    degree,
                    total,
                    branch_data: chosen.clone(),
                };
                debug_assert!(pair.verify());
                pair
            });
            return;
        }
        for datum in &options[idx] {
            chosen.push(datum.clone());
            product(base, d, degree, options, idx + 1, chosen, found);
            chosen.pop();
        }
    }
    product(base, d, degree, &options, 0, &mut chosen, &mut found);
    found.into_values().collect()
}

/// One edge of the subgroup DAG: the lower node plays the smaller subgroup
/// L, the higher node the larger subgroup T, and the cover runs from the
/// lower quotient (total) down to the higher quotient (base).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DagEdge {
    pub lower: usize,
    pub higher: usize,
    pub cover: CoverPair,
}

/// Per-ambient-genus DAG of admissible (order, signature) nodes with cover
/// edges. Nodes are sorted by (order, signature) with the root
/// `(order 1, (g; ∅))` first; edges are sorted by (higher, lower), so a
/// single pass computes the longest-chain DP.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupDag {
    ambient_genus: u32,
    nodes: Vec<AmbientNode>,
    edges: Vec<DagEdge>,
    lambda: Vec<u32>,
}

/// Builds the DAG of all admissible (order, signature) nodes with
/// `2 ≤ order ≤ opts.max_order`, plus the root, with an edge for every
/// cover-admissible pair of nodes whose orders strictly divide.
pub fn build_subgroup_dag(g: u32, opts: &EnumOptions) -> Result<SubgroupDag, EnumError> {
    assert!(g >= 2);
    let max_order = opts.effective_max_order(g);
    if max_order < 2 {
        return Err(EnumError::MaxOrderTooSmall(max_order));
    }
    let mut nodes = vec![AmbientNode {
        ambient_genus: g,
        order: 1,
        signature: Signature::closed(g),
    }];
    for order in 2..=max_order {
        for signature in enumerate_signatures(g, order, opts) {
            debug_assert!(rh_admissible(g, order, &signature));
            nodes.push(AmbientNode {
                ambient_genus: g,
                order,
                signature,
            });
        }
    }
    let mut edges = Vec::new();
    for hi in 1..nodes.len() {
        for lo in 0..hi {
            if nodes[lo].order >= nodes[hi].order || nodes[hi].order % nodes[lo].order != 0 {
                continue;
            }
            let degree = nodes[hi].order / nodes[lo].order;
            if let Some(cover) =
                cover_admissible(&nodes[hi].signature, degree, &nodes[lo].signature)
            {
                edges.push(DagEdge {
                    lower: lo,
                    higher: hi,
                    cover,
                });
            }
        }
    }
    // longest root-to-node chain; edges arrive grouped by ascending higher
    // index and lower < higher always holds, so one pass suffices
    let mut lambda = vec![0u32; nodes.len()];
    for e in &edges {
        debug_assert!(e.lower < e.higher);
        lambda[e.higher] = lambda[e.higher].max(lambda[e.lower] + 1);
    }
    Ok(SubgroupDag {
        ambient_genus: g,
        nodes,
        edges,
        lambda,
    })
}

impl SubgroupDag {
    pub fn ambient_genus(&self) -> u32 {
        self.ambient_genus
    }

    pub fn nodes(&self) -> &[AmbientNode] {
        &self.nodes
    }

    pub fn edges(&self) -> &[DagEdge] {
        &self.edges
    }

    pub fn root(&self) -> &AmbientNode {
        &self.nodes[0]
    }

    pub fn node_index(&self, node: &AmbientNode) -> Option<usize> {
        self.nodes.iter().position(|n| n == node)
    }

    /// Longest root-to-node chain length for the node at the given index.
    pub fn lambda_at(&self, index: usize) -> u32 {
        self.lambda[index]
    }

    /// Length of the longest directed path from the root to the node, one
    /// strict subgroup step per edge. A sound upper bound for the length
    /// λ(T) of any actual subgroup realizing the node, since a subgroup
    /// chain induces a tower of admissible quotient covers.
    pub fn tower_lambda(&self, node: &AmbientNode) -> Result<u32, EnumError> {
        self.node_index(node)
            .map(|i| self.lambda[i])
            .ok_or_else(|| EnumError::NodeNotInDag(node.clone()))
    }

    /// Edges whose higher endpoint is the given node index.
    pub fn edges_into(&self, index: usize) -> impl Iterator<Item = &DagEdge> {
        self.edges.iter().filter(move |e| e.higher == index)
    }
}
