//! Exact integer utilities and the dimension-equation enumerator.
//!
//! Everything here is rule-free: candidate solutions are produced exactly as
//! the arithmetic allows, and filtering happens in [`crate::typeprofile`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithmeticError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p and q must be distinct (got p = q = {0})")]
    EqualPrimes(u64),
    #[error("no supported regime for p = {p}, q = {q}: need p^4 < q, or p = 2 and q in {{3, 5, 7, 11, 13}}")]
    UnsupportedRegime { p: u64, q: u64 },
    #[error("group-like order {g_order} does not divide {dim}")]
    NotADivisor { g_order: u64, dim: u64 },
    #[error("degree set is empty")]
    EmptyDegreeSet,
    #[error("pinned counts already use {used} of dimension {dim}")]
    InconsistentPin { used: u64, dim: u64 },
    #[error("pinned degree {0} is not in the degree set")]
    PinOutsideDegreeSet(u64),
}

/// All divisors of `n` in increasing order.
///
/// Panics if `n == 0`.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "divisors of 0 are undefined");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Whether `target` is a nonnegative integer combination of `parts`.
pub fn is_expressible(target: u64, parts: &[u64]) -> bool {
    let parts: Vec<usize> = parts.iter().filter(|&&p| p > 0).map(|&p| p as usize).collect();
    let target = target as usize;
    let mut reach = vec![false; target + 1];
    reach[0] = true;
    for s in 1..=target {
        reach[s] = parts.iter().any(|&p| p <= s && reach[s - p]);
    }
    reach[target]
}

/// Which family of dimensions a profile belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// `p^4 < q`.
    General,
    /// `p = 2` and `q` one of 3, 5, 7, 11, 13.
    Small,
}

pub const SMALL_REGIME_PRIMES: [u64; 5] = [3, 5, 7, 11, 13];

/// The pair of primes `(p, q)` and the dimension `p^2 q^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DimensionProfile {
    pub p: u64,
    pub q: u64,
    pub dim: u64,
    pub regime: Regime,
}

impl DimensionProfile {
    pub fn new(p: u64, q: u64) -> Result<Self, ArithmeticError> {
        for x in [p, q] {
            if !is_prime(x) {
                return Err(ArithmeticError::NotPrime(x));
            }
        }
        if p == q {
            return Err(ArithmeticError::EqualPrimes(p));
        }
        let regime = if p.checked_pow(4).is_some_and(|p4| p4 < q) {
            Regime::General
        } else if p == 2 && SMALL_REGIME_PRIMES.contains(&q) {
            Regime::Small
        } else {
            return Err(ArithmeticError::UnsupportedRegime { p, q });
        };
        Ok(DimensionProfile { p, q, dim: p * p * q * q, regime })
    }

    /// Possible simple-module dimensions `{1, p, p^2, q}`.
    pub fn degree_set(&self) -> BTreeSet<u64> {
        [1, self.p, self.p * self.p, self.q].into_iter().collect()
    }
}

impl fmt::Display for DimensionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={}, q={}, dim={}", self.p, self.q, self.dim)
    }
}

/// A nonnegative solution of `dim = g_order + sum counts[d] * d^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TypeSolution {
    pub g_order: u64,
    /// Count per degree (> 1), every degree of the enumeration present, zeros included.
    pub counts: BTreeMap<u64, u64>,
}

impl TypeSolution {
    pub fn count(&self, degree: u64) -> u64 {
        self.counts.get(&degree).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.g_order + self.counts.iter().map(|(d, n)| n * d * d).sum::<u64>()
    }
}

/// Every count vector solving the dimension equation for `g_order`, in
/// lexicographic order keyed by ascending degree.
///
/// Degree 1 in `degree_set` is ignored; its count is `g_order`. `fixed` pins
/// the counts of selected degrees.
pub fn enumerate_dimension_solutions(
    profile: &DimensionProfile,
    g_order: u64,
    degree_set: &BTreeSet<u64>,
    fixed: &BTreeMap<u64, u64>,
) -> Result<Vec<TypeSolution>, ArithmeticError> {
    solve_dimension_equation(profile.dim, g_order, degree_set, fixed)
}

/// [`enumerate_dimension_solutions`] for a bare dimension.
pub fn solve_dimension_equation(
    dim: u64,
    g_order: u64,
    degree_set: &BTreeSet<u64>,
    fixed: &BTreeMap<u64, u64>,
) -> Result<Vec<TypeSolution>, ArithmeticError> {
    if degree_set.is_empty() {
        return Err(ArithmeticError::EmptyDegreeSet);
    }
    if g_order == 0 || dim % g_order != 0 {
        return Err(ArithmeticError::NotADivisor { g_order, dim });
    }
    let degrees: Vec<u64> = degree_set.iter().copied().filter(|&d| d > 1).collect();
    for &d in fixed.keys() {
        if !degrees.contains(&d) {
            return Err(ArithmeticError::PinOutsideDegreeSet(d));
        }
    }
    let used = g_order + fixed.iter().map(|(d, n)| n * d * d).sum::<u64>();
    if used > dim {
        return Err(ArithmeticError::InconsistentPin { used, dim });
    }

    let mut out = Vec::new();
    let mut counts = vec![0u64; degrees.len()];
    fill(&degrees, fixed, 0, dim - g_order, &mut counts, &mut |counts| {
        out.push(TypeSolution {
            g_order,
            counts: degrees.iter().copied().zip(counts.iter().copied()).collect(),
        });
    });
    Ok(out)
}

fn fill(
    degrees: &[u64],
    fixed: &BTreeMap<u64, u64>,
    i: usize,
    remaining: u64,
    counts: &mut [u64],
    emit: &mut dyn FnMut(&[u64]),
) {
    if i == degrees.len() {
        if remaining == 0 {
            emit(counts);
        }
        return;
    }
    let sq = degrees[i] * degrees[i];
    let range = match fixed.get(&degrees[i]) {
        Some(&n) => n..=n,
        None => 0..=remaining / sq,
    };
    for n in range {
        if n * sq > remaining {
            break;
        }
        counts[i] = n;
        fill(degrees, fixed, i + 1, remaining - n * sq, counts, emit);
    }
    counts[i] = 0;
}

/// True iff no nonnegative `c` satisfies `dim = offset + c * square`.
pub fn no_solution_check(dim: u64, offset: u64, square: u64) -> bool {
    assert!(square > 0);
    if offset > dim {
        return true;
    }
    (0..=(dim - offset) / square).all(|c| offset + c * square != dim)
}

/// Solvability of `q^2 = 1 + m p` and `q^2 = q + n p` over positive `m`, `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoidealObstruction {
    pub eq1_solvable: bool,
    pub eq2_solvable: bool,
    pub obstructed: bool,
}

pub fn coideal_obstruction(p: u64, q: u64) -> CoidealObstruction {
    assert!(p != q && p > 0 && q > 1);
    let eq1_solvable = (q * q - 1) % p == 0;
    let eq2_solvable = (q * q - q) % p == 0;
    CoidealObstruction { eq1_solvable, eq2_solvable, obstructed: !eq1_solvable && !eq2_solvable }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn trial_division_divisors(n: u64) -> Vec<u64> {
        (1..=n).filter(|d| n % d == 0).collect()
    }

    #[test]
    fn divisors_examples() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(100), trial_division_divisors(100));
        assert_eq!(divisors(100), vec![1, 2, 4, 5, 10, 20, 25, 50, 100]);
        assert_eq!(divisors(484), vec![1, 2, 4, 11, 22, 44, 121, 242, 484]);
    }

    #[test]
    #[should_panic]
    fn divisors_of_zero_is_a_usage_error() {
        divisors(0);
    }

    #[test]
    fn profile_regimes() {
        assert_eq!(DimensionProfile::new(2, 5).unwrap().regime, Regime::Small);
        assert_eq!(DimensionProfile::new(2, 17).unwrap().regime, Regime::General);
        assert_eq!(DimensionProfile::new(3, 83).unwrap().dim, 9 * 83 * 83);
        assert!(matches!(
            DimensionProfile::new(3, 79),
            Err(ArithmeticError::UnsupportedRegime { .. })
        ));
        assert_eq!(DimensionProfile::new(5, 5), Err(ArithmeticError::EqualPrimes(5)));
        assert_eq!(DimensionProfile::new(4, 17), Err(ArithmeticError::NotPrime(4)));
    }

    fn set(ds: &[u64]) -> BTreeSet<u64> {
        ds.iter().copied().collect()
    }

    #[test]
    fn pinned_enumerations() {
        let pin: BTreeMap<u64, u64> = [(2, 0)].into_iter().collect();
        let s = enumerate_dimension_solutions(&DimensionProfile::new(2, 5).unwrap(), 2, &set(&[2, 4, 5]), &pin)
            .unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!((s[0].count(4), s[0].count(5)), (3, 2));

        let s = enumerate_dimension_solutions(&DimensionProfile::new(2, 11).unwrap(), 11, &set(&[2, 4, 11]), &pin)
            .unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!((s[0].count(4), s[0].count(11)), (22, 1));
    }

    #[test]
    fn full_group_leaves_no_room() {
        let prof = DimensionProfile::new(2, 7).unwrap();
        let s = enumerate_dimension_solutions(&prof, prof.dim, &set(&[2, 4, 7]), &BTreeMap::new()).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s[0].counts.values().all(|&n| n == 0));
    }

    #[test]
    fn unpinned_matches_triple_loop() {
        let prof = DimensionProfile::new(2, 5).unwrap();
        let got = enumerate_dimension_solutions(&prof, 4, &set(&[2, 4, 5]), &BTreeMap::new()).unwrap();
        let mut want = Vec::new();
        for a in 0..=25u64 {
            for b in 0..=6u64 {
                for c in 0..=4u64 {
                    if 4 + 4 * a + 16 * b + 25 * c == 100 {
                        want.push((a, b, c));
                    }
                }
            }
        }
        let got: Vec<_> = got.iter().map(|s| (s.count(2), s.count(4), s.count(5))).collect();
        assert_eq!(got, want);
        assert_eq!(got.len(), 7);
    }

    #[test]
    fn enumeration_errors() {
        let prof = DimensionProfile::new(2, 5).unwrap();
        let none = BTreeMap::new();
        assert_eq!(
            enumerate_dimension_solutions(&prof, 2, &BTreeSet::new(), &none),
            Err(ArithmeticError::EmptyDegreeSet)
        );
        let pin: BTreeMap<u64, u64> = [(5, 5)].into_iter().collect();
        assert!(matches!(
            enumerate_dimension_solutions(&prof, 2, &set(&[2, 4, 5]), &pin),
            Err(ArithmeticError::InconsistentPin { used: 127, dim: 100 })
        ));
        assert!(matches!(
            enumerate_dimension_solutions(&prof, 3, &set(&[2, 4, 5]), &none),
            Err(ArithmeticError::NotADivisor { .. })
        ));
    }

    #[test]
    fn no_solution_examples() {
        assert!(no_solution_check(100, 2, 25));
        assert!(no_solution_check(4 * 37 * 37, 2, 37 * 37));
        assert!(!no_solution_check(100, 0, 25));
    }

    #[test]
    fn coideal_examples() {
        for q in [3, 5, 7, 11, 13, 17, 1283] {
            assert!(!coideal_obstruction(2, q).obstructed);
        }
        let c = coideal_obstruction(5, 13);
        assert!(!c.eq1_solvable && !c.eq2_solvable && c.obstructed);
        assert!(coideal_obstruction(3, 7).eq1_solvable);
        assert!(coideal_obstruction(5, 1283).obstructed);
    }

    #[test]
    fn expressibility() {
        assert!(!is_expressible(15, &[4, 13]));
        assert!(!is_expressible(14, &[4, 13]));
        assert!(is_expressible(17, &[4, 13]));
        assert!(!is_expressible(3, &[2, 4, 5]));
        assert!(is_expressible(0, &[]));
    }

    proptest! {
        #[test]
        fn divisor_pairing(n in 1u64..5000) {
            let ds = divisors(n);
            for &d in &ds {
                prop_assert_eq!(n % d, 0);
                prop_assert!(ds.contains(&(n / d)));
            }
            prop_assert!(ds.windows(2).all(|w| w[0] < w[1]));
        }

        #[test]
        fn obstruction_iff_no_divisibility(pi in 0usize..6, qi in 0usize..40) {
            let primes: Vec<u64> = (2..200).filter(|&n| is_prime(n)).collect();
            let (p, q) = (primes[pi], primes[qi]);
            prop_assume!(p != q);
            let c = coideal_obstruction(p, q);
            prop_assert_eq!(c.obstructed, (q - 1) % p != 0 && (q + 1) % p != 0 && q % p != 0);
        }
    }
}
