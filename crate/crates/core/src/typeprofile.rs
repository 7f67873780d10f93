//! Algebra types `(d1,n1;...;ds,ns)` and the counting filters that need no
//! character-ring search.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::arithmetic::{
    divisors, enumerate_dimension_solutions, gcd, is_expressible, ArithmeticError, DimensionProfile, Regime,
    TypeSolution,
};
use crate::rules::RuleId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("cannot parse type string `{0}`: expected (d1,n1;d2,n2;...) with ASCII digits and no whitespace")]
    Parse(String),
    #[error("degrees must be strictly increasing")]
    NotIncreasing,
    #[error("the first degree must be 1")]
    MissingDegreeOne,
    #[error("counts must be positive")]
    ZeroCount,
    #[error("type sums to {sum}, expected dimension {dim}")]
    DimensionMismatch { sum: u64, dim: u64 },
    #[error("group-like order {g} does not divide {dim}")]
    GrouplikeNotDivisor { g: u64, dim: u64 },
    #[error("degree {degree} is not an admissible simple-module dimension for {profile}")]
    DegreeOutsideProfile { degree: u64, profile: DimensionProfile },
}

/// A candidate algebra type: simple-module dimensions with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraType {
    dim: u64,
    entries: Vec<(u64, u64)>,
    profile: Option<DimensionProfile>,
}

impl AlgebraType {
    /// A type over a bare dimension. `entries` are `(degree, count)` pairs.
    pub fn new(dim: u64, entries: Vec<(u64, u64)>) -> Result<Self, TypeError> {
        if entries.first().map(|e| e.0) != Some(1) {
            return Err(TypeError::MissingDegreeOne);
        }
        if entries.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(TypeError::NotIncreasing);
        }
        if entries.iter().any(|e| e.1 == 0) {
            return Err(TypeError::ZeroCount);
        }
        let sum: u64 = entries.iter().map(|(d, n)| n * d * d).sum();
        if sum != dim {
            return Err(TypeError::DimensionMismatch { sum, dim });
        }
        let g = entries[0].1;
        if dim % g != 0 {
            return Err(TypeError::GrouplikeNotDivisor { g, dim });
        }
        Ok(AlgebraType { dim, entries, profile: None })
    }

    /// A type attached to a profile; every degree must be admissible for it.
    pub fn with_profile(profile: DimensionProfile, entries: Vec<(u64, u64)>) -> Result<Self, TypeError> {
        let mut t = AlgebraType::new(profile.dim, entries)?;
        let allowed = profile.degree_set();
        if let Some(&(degree, _)) = t.entries.iter().find(|(d, _)| !allowed.contains(d)) {
            return Err(TypeError::DegreeOutsideProfile { degree, profile });
        }
        t.profile = Some(profile);
        Ok(t)
    }

    pub fn from_solution(profile: DimensionProfile, sol: &TypeSolution) -> Result<Self, TypeError> {
        let mut entries = vec![(1, sol.g_order)];
        entries.extend(sol.counts.iter().filter(|(_, &n)| n > 0).map(|(&d, &n)| (d, n)));
        AlgebraType::with_profile(profile, entries)
    }

    /// Parses `(d1,n1;...)`. The dimension is the type's own sum unless `dim`
    /// is given, in which case the two must agree.
    pub fn parse(s: &str, dim: Option<u64>) -> Result<Self, TypeError> {
        let entries = parse_entries(s)?;
        let sum = entries.iter().map(|(d, n)| n * d * d).sum();
        AlgebraType::new(dim.unwrap_or(sum), entries)
    }

    pub fn dim(&self) -> u64 {
        self.dim
    }

    pub fn entries(&self) -> &[(u64, u64)] {
        &self.entries
    }

    pub fn profile(&self) -> Option<&DimensionProfile> {
        self.profile.as_ref()
    }

    pub fn grouplike_order(&self) -> u64 {
        self.entries[0].1
    }

    pub fn count(&self, degree: u64) -> u64 {
        self.entries.iter().find(|e| e.0 == degree).map_or(0, |e| e.1)
    }

    pub fn degrees(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries.iter().map(|e| e.0)
    }

    pub fn character_count(&self) -> u64 {
        self.entries.iter().map(|e| e.1).sum()
    }

    pub fn notation(&self) -> String {
        let parts: Vec<String> = self.entries.iter().map(|(d, n)| format!("{d},{n}")).collect();
        format!("({})", parts.join(";"))
    }
}

fn parse_entries(s: &str) -> Result<Vec<(u64, u64)>, TypeError> {
    let err = || TypeError::Parse(s.to_string());
    let inner = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(err)?;
    let number = |t: &str| -> Result<u64, TypeError> {
        if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        t.parse().map_err(|_| err())
    };
    inner
        .split(';')
        .map(|pair| {
            let (d, n) = pair.split_once(',').ok_or_else(err)?;
            Ok((number(d)?, number(n)?))
        })
        .collect()
}

impl fmt::Display for AlgebraType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.notation())
    }
}

impl FromStr for AlgebraType {
    type Err = TypeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AlgebraType::parse(s, None)
    }
}

#[derive(Serialize, Deserialize)]
struct AlgebraTypeRepr {
    notation: String,
    dim: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    profile: Option<DimensionProfile>,
}

impl Serialize for AlgebraType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        AlgebraTypeRepr { notation: self.notation(), dim: self.dim, profile: self.profile }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraType {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = AlgebraTypeRepr::deserialize(d)?;
        let entries = parse_entries(&repr.notation).map_err(serde::de::Error::custom)?;
        match repr.profile {
            Some(p) if p.dim == repr.dim => AlgebraType::with_profile(p, entries),
            Some(_) => Err(TypeError::DimensionMismatch { sum: repr.dim, dim: repr.dim }),
            None => AlgebraType::new(repr.dim, entries),
        }
        .map_err(serde::de::Error::custom)
    }
}

/// The admissible simple-module dimensions for a profile.
///
/// Degrees divide `dim` (Frobenius type), and `d^2 < dim` because the
/// group-likes are nontrivial. Among the divisors of `p^2 q^2` that leaves
/// exactly those below `pq`: `1, p, p^2, q`.
pub fn frobenius_degree_set(profile: &DimensionProfile) -> std::collections::BTreeSet<u64> {
    profile.degree_set()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterFailure {
    pub rule: RuleId,
    pub citation: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterFlag {
    pub rule: RuleId,
    pub detail: String,
}

/// The result of one filter on one type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterOutcome {
    pub rule: RuleId,
    pub failure: Option<String>,
    pub flags: Vec<String>,
}

impl FilterOutcome {
    fn pass(rule: RuleId) -> Self {
        FilterOutcome { rule, failure: None, flags: Vec::new() }
    }

    fn fail(rule: RuleId, detail: String) -> Self {
        FilterOutcome { rule, failure: Some(detail), flags: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterReport {
    #[serde(rename = "type")]
    pub ty: AlgebraType,
    pub passed: bool,
    pub failures: Vec<FilterFailure>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<FilterFlag>,
}

impl FilterReport {
    pub fn from_outcomes(ty: AlgebraType, outcomes: impl IntoIterator<Item = FilterOutcome>) -> Self {
        let mut failures = Vec::new();
        let mut flags = Vec::new();
        for o in outcomes {
            if let Some(detail) = o.failure {
                failures.push(FilterFailure { rule: o.rule, citation: o.rule.citation().to_string(), detail });
            }
            flags.extend(o.flags.into_iter().map(|detail| FilterFlag { rule: o.rule, detail }));
        }
        failures.sort_by(|a, b| a.rule.cmp(&b.rule));
        flags.sort_by(|a, b| (a.rule, &a.detail).cmp(&(b.rule, &b.detail)));
        FilterReport { ty, passed: failures.is_empty(), failures, flags }
    }

    pub fn has_flag(&self, needle: &str) -> bool {
        self.flags.iter().any(|f| f.detail.contains(needle))
    }
}

pub fn nontrivial_grouplike_filter(t: &AlgebraType) -> FilterOutcome {
    if t.grouplike_order() == 1 && t.dim() > 1 {
        FilterOutcome::fail(RuleId::NontrivialGrouplike, "group-like order is 1".into())
    } else {
        FilterOutcome::pass(RuleId::NontrivialGrouplike)
    }
}

/// `g` must divide `n d^2` for every degree class.
pub fn grouplike_count_bound_filter(t: &AlgebraType) -> FilterOutcome {
    let g = t.grouplike_order();
    let bad: Vec<String> = t.entries()[1..]
        .iter()
        .filter(|(d, n)| (n * d * d) % g != 0)
        .map(|(d, n)| format!("{g} does not divide {n}*{d}^2 = {}", n * d * d))
        .collect();
    if bad.is_empty() {
        FilterOutcome::pass(RuleId::GrouplikeCountBound)
    } else {
        FilterOutcome::fail(RuleId::GrouplikeCountBound, bad.join("; "))
    }
}

/// The quotient spanned by the low-degree characters must have dimension
/// dividing `dim`.
///
/// General regime: degrees `1, p, p^2`, quotient `g + a p^2 + b p^4`.
/// Small regime: degrees `1, 2` only, quotient `g + 4a`, applied when `a = 0`
/// or when `g` is `2` or `2q` (the degree-2 stabilizers are then forced to be
/// the order-2 subgroup). Flags quotients equal to `dim` or to `p q^2`.
pub fn p_part_quotient_filter(t: &AlgebraType) -> FilterOutcome {
    let rule = RuleId::QuotientDividesDim;
    let Some(profile) = t.profile() else {
        return FilterOutcome::pass(rule);
    };
    let (p, q, g) = (profile.p, profile.q, t.grouplike_order());
    let quotient = match profile.regime {
        Regime::General => g + t.count(p) * p * p + t.count(p * p) * p.pow(4),
        Regime::Small => {
            let a = t.count(2);
            if a != 0 && g != 2 && g != 2 * q {
                return FilterOutcome::pass(rule);
            }
            g + 4 * a
        }
    };
    if t.dim() % quotient != 0 {
        return FilterOutcome::fail(rule, format!("quotient dimension {quotient} does not divide {}", t.dim()));
    }
    let mut out = FilterOutcome::pass(rule);
    if quotient == t.dim() {
        out.flags.push(format!("quotient dimension {quotient} equals dim"));
    }
    if quotient == p * q * q && quotient != t.dim() {
        out.flags.push(format!("quotient dimension {quotient} = pq^2 (index-p trigger)"));
    }
    out
}

/// For each degree `d`, `chi chi*` is `|G[chi]|` group-likes plus characters
/// of degree > 1. Some admissible stabilizer order `s` (dividing both `g` and
/// `d^2`) must leave a remainder `d^2 - s` that is a sum of degrees present.
pub fn dual_product_residual_filter(t: &AlgebraType) -> FilterOutcome {
    let g = t.grouplike_order();
    let higher: Vec<u64> = t.degrees().filter(|&d| d > 1).collect();
    let bad: Vec<String> = higher
        .iter()
        .filter(|&&d| {
            !divisors(gcd(g, d * d)).into_iter().any(|s| is_expressible(d * d - s, &higher))
        })
        .map(|d| {
            let stabs = divisors(gcd(g, d * d));
            format!(
                "degree {d}: {d}^2 - s for s in {stabs:?} is not a sum of degrees {higher:?}"
            )
        })
        .collect();
    if bad.is_empty() {
        FilterOutcome::pass(RuleId::DualProductResidual)
    } else {
        FilterOutcome::fail(RuleId::DualProductResidual, bad.join("; "))
    }
}

pub type Filter = fn(&AlgebraType) -> FilterOutcome;

pub const FILTERS: [Filter; 4] = [
    nontrivial_grouplike_filter,
    grouplike_count_bound_filter,
    p_part_quotient_filter,
    dual_product_residual_filter,
];

pub fn apply_filters(t: &AlgebraType) -> FilterReport {
    FilterReport::from_outcomes(t.clone(), FILTERS.iter().map(|f| f(t)))
}

/// Enumerates every type with group-like order `g_order` and screens each.
pub fn screen_types(profile: &DimensionProfile, g_order: u64) -> Result<Vec<FilterReport>, ArithmeticError> {
    let sols = enumerate_dimension_solutions(profile, g_order, &frobenius_degree_set(profile), &BTreeMap::new())?;
    Ok(sols
        .iter()
        .map(|s| {
            let t = AlgebraType::from_solution(*profile, s).expect("enumerated solutions satisfy the type invariants");
            apply_filters(&t)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prof(p: u64, q: u64) -> DimensionProfile {
        DimensionProfile::new(p, q).unwrap()
    }

    #[test]
    fn parse_and_notation() {
        let t = AlgebraType::parse("(1,2;4,3;5,2)", Some(100)).unwrap();
        assert_eq!(t.notation(), "(1,2;4,3;5,2)");
        assert_eq!(t.grouplike_order(), 2);
        assert_eq!(t.character_count(), 7);
        assert_eq!("(1,4;2,1)".parse::<AlgebraType>().unwrap().dim(), 8);
        for bad in ["(1,2; 4,3)", "1,2;4,3", "(1,2;4,x)", "(1,2;;)", "()"] {
            assert!(matches!(AlgebraType::parse(bad, None), Err(TypeError::Parse(_))), "{bad}");
        }
        assert_eq!(AlgebraType::parse("(1,2;5,2;4,3)", None), Err(TypeError::NotIncreasing));
        assert_eq!(AlgebraType::parse("(2,2)", None), Err(TypeError::MissingDegreeOne));
        assert!(matches!(AlgebraType::parse("(1,2;4,3;5,2)", Some(99)), Err(TypeError::DimensionMismatch { .. })));
        assert!(matches!(AlgebraType::parse("(1,3;2,1)", None), Err(TypeError::GrouplikeNotDivisor { .. })));
    }

    #[test]
    fn profile_degree_sets() {
        assert_eq!(frobenius_degree_set(&prof(2, 5)).into_iter().collect::<Vec<_>>(), vec![1, 2, 4, 5]);
        assert_eq!(frobenius_degree_set(&prof(3, 83)).into_iter().collect::<Vec<_>>(), vec![1, 3, 9, 83]);
        assert!(matches!(
            AlgebraType::with_profile(prof(2, 5), vec![(1, 4), (3, 4), (6, 1)]),
            Err(TypeError::DimensionMismatch { .. }) | Err(TypeError::DegreeOutsideProfile { .. })
        ));
    }

    #[test]
    fn nontrivial_grouplike_examples() {
        assert!(!nontrivial_grouplike_filter(&AlgebraType::new(26, vec![(1, 1), (5, 1)]).unwrap()).passed());
        let t = AlgebraType::with_profile(prof(2, 5), vec![(1, 2), (4, 3), (5, 2)]).unwrap();
        assert!(nontrivial_grouplike_filter(&t).passed());
        assert!(nontrivial_grouplike_filter(&AlgebraType::new(100, vec![(1, 100)]).unwrap()).passed());
    }

    #[test]
    fn count_bound_examples() {
        let t = AlgebraType::new(100, vec![(1, 5), (2, 1), (4, 1), (5, 3)]).unwrap();
        let o = grouplike_count_bound_filter(&t);
        assert!(!o.passed());
        assert!(o.failure.unwrap().contains("5 does not divide 1*2^2"));
        let t = AlgebraType::with_profile(prof(2, 5), vec![(1, 2), (4, 3), (5, 2)]).unwrap();
        assert!(grouplike_count_bound_filter(&t).passed());
        assert!(grouplike_count_bound_filter(&AlgebraType::new(26, vec![(1, 1), (5, 1)]).unwrap()).passed());
    }

    #[test]
    fn quotient_examples() {
        // a = 8: 2 + 32 = 34 does not divide 100.
        let t = AlgebraType::with_profile(prof(2, 5), vec![(1, 2), (2, 8), (4, 1), (5, 2)]).unwrap();
        assert!(!p_part_quotient_filter(&t).passed());
        // a = 12: quotient 50 = 2q^2.
        let t = AlgebraType::with_profile(prof(2, 5), vec![(1, 2), (2, 12), (5, 2)]).unwrap();
        let o = p_part_quotient_filter(&t);
        assert!(o.passed());
        assert!(o.flags.iter().any(|f| f.contains("= pq^2")));
        let t = AlgebraType::with_profile(prof(2, 5), vec![(1, 100)]).unwrap();
        let o = p_part_quotient_filter(&t);
        assert!(o.passed() && o.flags.iter().any(|f| f.contains("equals dim")));
    }

    #[test]
    fn residual_examples() {
        // g = q: degree-2 stabilizers are trivial and 3 is not a sum of {2,4,5}.
        let t = AlgebraType::new(100, vec![(1, 5), (2, 1), (4, 1), (5, 3)]).unwrap();
        assert!(!dual_product_residual_filter(&t).passed());
        // 16 - {1,2} = 15 or 14 in degrees {4, 13}: impossible.
        let t = AlgebraType::new(676, vec![(1, 2), (4, 21), (13, 2)]).unwrap();
        assert!(!dual_product_residual_filter(&t).passed());
        let t = AlgebraType::new(100, vec![(1, 2), (4, 3), (5, 2)]).unwrap();
        assert!(dual_product_residual_filter(&t).passed());
    }

    #[test]
    fn screen_order_eleven_survivor() {
        let reports = screen_types(&prof(2, 11), 11).unwrap();
        let survivors: Vec<String> = reports.iter().filter(|r| r.passed).map(|r| r.ty.notation()).collect();
        assert_eq!(survivors, vec!["(1,11;4,22;11,1)".to_string()]);
    }

    #[test]
    fn screen_full_group() {
        let reports = screen_types(&prof(2, 5), 100).unwrap();
        assert_eq!(reports.len(), 1);
        assert!(reports[0].passed);
        assert_eq!(reports[0].ty.notation(), "(1,100)");
    }

    #[test]
    fn filters_are_order_independent() {
        for g in divisors(100) {
            for r in screen_types(&prof(2, 5), g).unwrap() {
                let mut rev: Vec<FilterOutcome> = FILTERS.iter().rev().map(|f| f(&r.ty)).collect();
                rev.rotate_left(1);
                assert_eq!(FilterReport::from_outcomes(r.ty.clone(), rev), r);
            }
        }
    }

    #[test]
    fn type_json_round_trip() {
        let t = AlgebraType::with_profile(prof(2, 5), vec![(1, 2), (4, 3), (5, 2)]).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(serde_json::from_str::<AlgebraType>(&s).unwrap(), t);
    }
}
