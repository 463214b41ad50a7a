//! Exact domain types and closed-form formulas: signatures of quotient
//! orbifolds, orbifold Euler characteristics, Harer's vcd formula, the Weyl
//! group vcd, and subgroup-length upper bounds.
//!
//! All arithmetic is exact rational arithmetic; no floating point appears
//! anywhere in this crate.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exact fraction, the currency of all orbifold Euler arithmetic.
///
/// Backed by `num_rational::Rational64`, which stores values normalized
/// (gcd 1, positive denominator) and implements exact add/mul/compare.
pub type Rational = Rational64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("period {0} is smaller than 2")]
    PeriodTooSmall(u32),
    #[error("cannot parse signature {0:?}: expected `<genus>;<p1>,<p2>,...`")]
    ParseSignature(String),
}

/// Quotient-orbifold datum: genus together with the multiset of cone-point
/// orders (periods), stored sorted nondecreasing.
///
/// Two signatures are equal iff their genera and sorted period lists agree;
/// order-1 points are never listed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Signature {
    genus: u32,
    periods: Vec<u32>,
}

impl Signature {
    /// Builds a signature, sorting the periods. Rejects periods below 2.
    pub fn new(genus: u32, periods: impl IntoIterator<Item = u32>) -> Result<Self, ModelError> {
        let mut periods: Vec<u32> = periods.into_iter().collect();
        if let Some(&p) = periods.iter().find(|&&p| p < 2) {
            return Err(ModelError::PeriodTooSmall(p));
        }
        periods.sort_unstable();
        Ok(Signature { genus, periods })
    }

    /// Signature of a closed surface: no cone points.
    pub fn closed(genus: u32) -> Self {
        Signature { genus, periods: Vec::new() }
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn periods(&self) -> &[u32] {
        &self.periods
    }

    /// Number of cone points, the symbol `k`.
    pub fn period_count(&self) -> u32 {
        self.periods.len() as u32
    }

    /// The sum `l = Σ (1 − 1/p)` over all periods, exactly.
    ///
    /// Always satisfies `k/2 ≤ l ≤ k`, with equality on the left iff every
    /// period is 2, and equality on the right never (periods are finite).
    pub fn l_sum(&self) -> Rational {
        self.periods
            .iter()
            .map(|&p| Rational::one() - Rational::new(1, i64::from(p)))
            .sum()
    }

    /// Orbifold Euler characteristic `2 − 2g − Σ(1 − 1/p)`, exactly.
    pub fn orbifold_euler(&self) -> Rational {
        Rational::from_integer(2 - 2 * i64::from(self.genus)) - self.l_sum()
    }

    /// The combination `ν = 4g + k − 4`; may be negative for small signatures.
    pub fn nu(&self) -> i64 {
        4 * i64::from(self.genus) + i64::from(self.period_count()) - 4
    }

    /// vcd of the Weyl group of a finite subgroup with this quotient
    /// signature: the Weyl group is commensurable with the mapping class
    /// group of the quotient orbifold, so this is `harer_vcd(g, k)`.
    ///
    /// For spherical signatures (positive orbifold Euler characteristic),
    /// which cannot arise as quotients of ambient genus ≥ 2 surfaces, the
    /// value returned is still `harer_vcd(g, k)` by convention.
    pub fn weyl_vcd(&self) -> VcdValue {
        harer_vcd(self.genus, self.period_count())
    }
}

// Grammar: `<genus>;<p1>,<p2>,...`; the empty period list keeps the
// trailing semicolon, e.g. `2;`. Unsorted input is re-sorted silently.
impl FromStr for Signature {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ModelError::ParseSignature(s.to_string());
        let (g, rest) = s.split_once(';').ok_or_else(bad)?;
        let genus: u32 = g.trim().parse().map_err(|_| bad())?;
        let mut periods = Vec::new();
        if !rest.trim().is_empty() {
            for part in rest.split(',') {
                periods.push(part.trim().parse().map_err(|_| bad())?);
            }
        }
        Signature::new(genus, periods)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.genus)?;
        for (i, p) in self.periods.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// A virtual cohomological dimension (always a non-negative integer here).
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub struct VcdValue(pub u32);

impl VcdValue {
    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for VcdValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Candidate finite subgroup of the mapping class group of a closed genus-g
/// surface, recorded as (ambient genus, order, quotient signature).
///
/// Valid nodes satisfy [`rh_admissible`]; order 1 forces the closed
/// signature `(g; ∅)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AmbientNode {
    pub ambient_genus: u32,
    pub order: u64,
    pub signature: Signature,
}

/// Harer's vcd of the mapping class group of a genus-g surface with n
/// marked points, extended to all g, n ≥ 0.
///
/// For 2g + n > 2 this is the piecewise formula 4g+n−4 (g,n > 0), 4g−5
/// (n = 0), n−3 (g = 0). The remaining small cases are 0 for the trivial
/// groups (g = 0, n ≤ 1) and 1 for (0,2) and (1,0).
pub fn harer_vcd(g: u32, n: u32) -> VcdValue {
    if 2 * g + n > 2 {
        VcdValue(if g > 0 && n > 0 {
            4 * g + n - 4
        } else if n == 0 {
            4 * g - 5
        } else {
            n - 3
        })
    } else {
        match (g, n) {
            (0, 0) | (0, 1) => VcdValue(0),
            (0, 2) | (1, 0) => VcdValue(1),
            _ => unreachable!("2g+n <= 2 leaves only four cases"),
        }
    }
}

/// Number of prime factors counted with multiplicity.
pub fn big_omega(mut n: u64) -> u32 {
    assert!(n >= 1);
    let mut count = 0;
    let mut p = 2;
    while p * p <= n {
        while n % p == 0 {
            n /= p;
            count += 1;
        }
        p += 1;
    }
    if n > 1 {
        count += 1;
    }
    count
}

/// Upper bound for the length λ of any finite group of the given order:
/// `min(order − 1, Ω(order))`.
///
/// `order − 1` bounds λ because each chain step is strict; Ω(order) bounds
/// it because each strict step multiplies the order by an integer ≥ 2,
/// contributing at least one prime factor.
pub fn lambda_upper(order: u64) -> u32 {
    assert!(order >= 1);
    let linear = order - 1;
    let omega = u64::from(big_omega(order));
    linear.min(omega) as u32
}

/// Riemann-Hurwitz admissibility: `(2g − 2)/order = 2g_L − 2 + l_L` as
/// exact rationals. Equivalently, `χ^orb(sig) · order = 2 − 2g`.
pub fn rh_admissible(g: u32, order: u64, sig: &Signature) -> bool {
    assert!(g >= 2);
    assert!(order >= 1);
    let Ok(order) = i64::try_from(order) else {
        return false;
    };
    let lhs = Rational::new(2 * i64::from(g) - 2, order);
    let rhs = Rational::from_integer(2 * i64::from(sig.genus()) - 2) + sig.l_sum();
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(s: &str) -> Signature {
        s.parse().unwrap()
    }

    #[test]
    fn l_sum_examples() {
        assert_eq!(sig("2;").l_sum(), Rational::from_integer(0));
        assert_eq!(sig("0;2,2,2,2,2,2").l_sum(), Rational::from_integer(3));
        // 1/2 + 2/3 + 6/7 = 85/42
        assert_eq!(sig("0;2,3,7").l_sum(), Rational::new(85, 42));
    }

    #[test]
    fn orbifold_euler_examples() {
        assert_eq!(sig("2;").orbifold_euler(), Rational::from_integer(-2));
        assert_eq!(
            sig("0;2,2,2,2,2,2").orbifold_euler(),
            Rational::from_integer(-1)
        );
        assert_eq!(sig("0;2,3,7").orbifold_euler(), Rational::new(-1, 42));
    }

    #[test]
    fn harer_vcd_cases() {
        assert_eq!(harer_vcd(2, 0).get(), 3);
        assert_eq!(harer_vcd(0, 6).get(), 3);
        assert_eq!(harer_vcd(1, 2).get(), 2);
        assert_eq!(harer_vcd(0, 2).get(), 1);
        assert_eq!(harer_vcd(1, 0).get(), 1);
        assert_eq!(harer_vcd(0, 0).get(), 0);
        assert_eq!(harer_vcd(0, 1).get(), 0);
    }

    #[test]
    fn harer_vcd_monotone_in_punctures() {
        for g in 1..=10u32 {
            let mut prev = None;
            for n in 0..=20u32 {
                if 2 * g + n > 2 {
                    let v = harer_vcd(g, n).get();
                    if let Some(p) = prev {
                        assert!(v >= p, "vcd not monotone at g={g}, n={n}");
                    }
                    prev = Some(v);
                }
            }
        }
    }

    #[test]
    fn nu_examples() {
        assert_eq!(sig("2;").nu(), 4);
        assert_eq!(sig("0;2,2,2,2,2,2").nu(), 2);
        assert_eq!(sig("1;2,2").nu(), 2);
        assert_eq!(sig("0;2").nu(), -3);
    }

    #[test]
    fn weyl_vcd_examples() {
        assert_eq!(sig("0;2,2,2,2,2,2").weyl_vcd().get(), 3); // ν + 1
        assert_eq!(sig("2;").weyl_vcd().get(), 3); // ν − 1
        assert_eq!(sig("1;2,2").weyl_vcd().get(), 2); // ν
    }

    // Longest chain of subgroups of the cyclic group of order n is the
    // longest chain of divisors 1 = d_0 | d_1 | ... | d_m = n with strict
    // steps, which realizes Ω(n).
    fn longest_divisor_chain(n: u64) -> u32 {
        if n == 1 {
            return 0;
        }
        (2..=n)
            .filter(|d| n % d == 0)
            .map(|d| 1 + longest_divisor_chain(n / d))
            .max()
            .unwrap()
    }

    #[test]
    fn lambda_upper_examples() {
        assert_eq!(lambda_upper(1), 0);
        assert_eq!(lambda_upper(2), 1);
        assert_eq!(lambda_upper(4), 2);
        assert_eq!(lambda_upper(12), 3);
        assert_eq!(longest_divisor_chain(12), 3);
        for n in 1..=60 {
            assert_eq!(big_omega(n), longest_divisor_chain(n), "n={n}");
            assert!(lambda_upper(n) <= big_omega(n));
            assert!(u64::from(lambda_upper(n)) <= n - 1 || n == 1);
        }
    }

    #[test]
    fn lambda_upper_primes() {
        for p in [2u64, 3, 5, 7, 11, 13, 83] {
            assert_eq!(lambda_upper(p), 1);
        }
    }

    #[test]
    fn big_omega_multiplicative() {
        for a in 1..=40u64 {
            for b in 1..=40u64 {
                assert_eq!(big_omega(a * b), big_omega(a) + big_omega(b));
            }
        }
    }

    #[test]
    fn rh_admissible_examples() {
        assert!(rh_admissible(2, 2, &sig("0;2,2,2,2,2,2")));
        assert!(rh_admissible(3, 1, &sig("3;")));
        assert!(!rh_admissible(2, 2, &sig("0;2,2,2,2,2")));
    }

    #[test]
    fn signature_grammar_round_trip() {
        assert_eq!(sig("2;").to_string(), "2;");
        assert_eq!(sig("0;2,2,2,2,2,2").to_string(), "0;2,2,2,2,2,2");
        // unsorted input is re-sorted silently
        assert_eq!(sig("0;7,2,3").to_string(), "0;2,3,7");
        assert!("0;1,2".parse::<Signature>().is_err());
        assert!("nonsense".parse::<Signature>().is_err());
        assert!("2".parse::<Signature>().is_err());
    }

    #[test]
    fn rejects_small_periods() {
        assert_eq!(
            Signature::new(0, [2, 1]),
            Err(ModelError::PeriodTooSmall(1))
        );
    }
}
