//! The fixed catalog of rules that may appear in filter reports and proof
//! traces. Each rule has a stable kebab-case identifier and a citation naming
//! the statement it applies and where that statement comes from.
//!
//! Rules backed by results from the literature are never recomputed; they
//! are recorded as axioms in traces.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleId {
    NicholsZoeller,
    FrobeniusType,
    NontrivialGrouplike,
    DimensionEquation,
    GrouplikeCountBound,
    StabilizerDividesDegsq,
    DualProductResidual,
    QuotientDividesDim,
    StandardSubalgebraClosure,
    FrobeniusReciprocity,
    DualityMultiplicity,
    GrouplikeMultiplicity,
    CounitMultiplicity,
    DegreeAccounting,
    GrouplikeTranslation,
    GroupAction,
    ProductNotIrreducible,
    OrbitLength,
    NoIntegerSolution,
    EmptyEnumeration,
    FusionInfeasible,
    IndexPSubalgebra,
    GrouplikeNormalSubalgebra,
    GrouplikeOrderPq2,
    DualGroupAlgebra,
    BiproductCriterion,
    BiproductOrSemisolvable,
    CoidealObstruction,
    DimensionThirtySix,
    PrimeDimension,
    PrimeSquareDimension,
}

impl RuleId {
    pub const ALL: [RuleId; 31] = [
        RuleId::NicholsZoeller,
        RuleId::FrobeniusType,
        RuleId::NontrivialGrouplike,
        RuleId::DimensionEquation,
        RuleId::GrouplikeCountBound,
        RuleId::StabilizerDividesDegsq,
        RuleId::DualProductResidual,
        RuleId::QuotientDividesDim,
        RuleId::StandardSubalgebraClosure,
        RuleId::FrobeniusReciprocity,
        RuleId::DualityMultiplicity,
        RuleId::GrouplikeMultiplicity,
        RuleId::CounitMultiplicity,
        RuleId::DegreeAccounting,
        RuleId::GrouplikeTranslation,
        RuleId::GroupAction,
        RuleId::ProductNotIrreducible,
        RuleId::OrbitLength,
        RuleId::NoIntegerSolution,
        RuleId::EmptyEnumeration,
        RuleId::FusionInfeasible,
        RuleId::IndexPSubalgebra,
        RuleId::GrouplikeNormalSubalgebra,
        RuleId::GrouplikeOrderPq2,
        RuleId::DualGroupAlgebra,
        RuleId::BiproductCriterion,
        RuleId::BiproductOrSemisolvable,
        RuleId::CoidealObstruction,
        RuleId::DimensionThirtySix,
        RuleId::PrimeDimension,
        RuleId::PrimeSquareDimension,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleId::NicholsZoeller => "nichols-zoeller",
            RuleId::FrobeniusType => "frobenius-type",
            RuleId::NontrivialGrouplike => "nontrivial-grouplike",
            RuleId::DimensionEquation => "dimension-equation",
            RuleId::GrouplikeCountBound => "grouplike-count-bound",
            RuleId::StabilizerDividesDegsq => "stabilizer-divides-degsq",
            RuleId::DualProductResidual => "dual-product-residual",
            RuleId::QuotientDividesDim => "quotient-divides-dim",
            RuleId::StandardSubalgebraClosure => "standard-subalgebra-closure",
            RuleId::FrobeniusReciprocity => "frobenius-reciprocity",
            RuleId::DualityMultiplicity => "duality-multiplicity",
            RuleId::GrouplikeMultiplicity => "grouplike-multiplicity",
            RuleId::CounitMultiplicity => "counit-multiplicity",
            RuleId::DegreeAccounting => "degree-accounting",
            RuleId::GrouplikeTranslation => "grouplike-translation",
            RuleId::GroupAction => "group-action",
            RuleId::ProductNotIrreducible => "product-not-irreducible",
            RuleId::OrbitLength => "orbit-length",
            RuleId::NoIntegerSolution => "no-integer-solution",
            RuleId::EmptyEnumeration => "empty-enumeration",
            RuleId::FusionInfeasible => "fusion-infeasible",
            RuleId::IndexPSubalgebra => "index-p-subalgebra",
            RuleId::GrouplikeNormalSubalgebra => "grouplike-normal-subalgebra",
            RuleId::GrouplikeOrderPq2 => "grouplike-order-pq2",
            RuleId::DualGroupAlgebra => "dual-group-algebra",
            RuleId::BiproductCriterion => "biproduct-criterion",
            RuleId::BiproductOrSemisolvable => "biproduct-or-semisolvable",
            RuleId::CoidealObstruction => "coideal-obstruction",
            RuleId::DimensionThirtySix => "dimension-thirty-six",
            RuleId::PrimeDimension => "prime-dimension",
            RuleId::PrimeSquareDimension => "prime-square-dimension",
        }
    }

    pub fn citation(self) -> &'static str {
        match self {
            RuleId::NicholsZoeller => {
                "Nichols-Zoeller freeness theorem: dim K divides dim H for a Hopf subalgebra K; in particular |G(H*)| divides dim H"
            }
            RuleId::FrobeniusType => {
                "Etingof-Nikshych-Ostrik (solvable fusion categories): dimension p^m q^n implies Frobenius type; simple-module dimensions divide dim H"
            }
            RuleId::NontrivialGrouplike => {
                "Etingof-Nikshych-Ostrik, Prop. 9.9: a solvable fusion category has a nontrivial invertible object, so |G(H*)| > 1"
            }
            RuleId::DimensionEquation => "Artin-Wedderburn: dim H = sum over simple modules of (dim V)^2",
            RuleId::GrouplikeCountBound => {
                "Natale, Lemma 2.2.2(2): |G(H*)| divides n(deg chi)^2, n = number of simple modules of dimension deg chi"
            }
            RuleId::StabilizerDividesDegsq => "Natale, Lemma 2.2.2(1): |G[chi]| divides (deg chi)^2",
            RuleId::DualProductResidual => {
                "Nichols-Richmond: chi chi* = sum_{g in G[chi]} g + terms of degree > 1; the remainder must be a sum of available degrees"
            }
            RuleId::QuotientDividesDim => {
                "standard subalgebra spanned by low-degree characters gives a quotient Hopf algebra; its dimension divides dim H"
            }
            RuleId::StandardSubalgebraClosure => {
                "Nichols, Thm. 6: *-invariant standard subalgebras of R(H) correspond to quotient Hopf algebras, whose dimension divides dim H"
            }
            RuleId::FrobeniusReciprocity => {
                "Nichols, Thm. 9: m(chi, psi omega) = m(psi*, omega chi*) = m(psi, chi omega*)"
            }
            RuleId::DualityMultiplicity => "Nichols, Thm. 9: m(chi, psi) = m(chi*, psi*)",
            RuleId::GrouplikeMultiplicity => {
                "Nichols, Thm. 10: m(g, chi psi) = 1 if psi = chi* g and 0 otherwise; zero when degrees differ"
            }
            RuleId::CounitMultiplicity => "m(epsilon, chi psi) = 1 exactly when psi = chi*",
            RuleId::DegreeAccounting => "deg(chi psi) = deg chi * deg psi",
            RuleId::GrouplikeTranslation => {
                "associativity with group-likes: (g chi) psi = g (chi psi), so m(g omega, (g chi) psi) = m(omega, chi psi)"
            }
            RuleId::GroupAction => "left multiplication by G(H*) is a group action on each degree class commuting with right multiplication",
            RuleId::ProductNotIrreducible => {
                "Natale, Lemma 2.4.1: if G[chi] = G is nontrivial for every chi of degree t, no product of two degree-t characters is irreducible"
            }
            RuleId::OrbitLength => "orbit-stabilizer: an orbit of G(H*) on X_t has length |G(H*)| / |G[chi]|",
            RuleId::NoIntegerSolution => "arithmetic certificate: the stated linear equation has no nonnegative integer solution",
            RuleId::EmptyEnumeration => "exhaustive enumeration of the dimension equation under the stated pins returns no solution",
            RuleId::FusionInfeasible => {
                "exhaustive character-ring search: no fusion table of the stated type satisfies the multiplicity rules"
            }
            RuleId::IndexPSubalgebra => {
                "Kobayashi-Masuoka: a Hopf subalgebra of index p (smallest prime) is normal; with Zhu (prime dimension) and Masuoka/Etingof-Gelaki (dims p^2, pq) H is lower semisolvable when it has a Hopf subalgebra of dimension pq^2"
            }
            RuleId::GrouplikeNormalSubalgebra => {
                "Natale, Prop. 3.2.6: G(H*) is normal in the subalgebra generated by simple subcoalgebras it stabilizes; with Masuoka the quotient is trivial, so H is upper semisolvable"
            }
            RuleId::GrouplikeOrderPq2 => {
                "kG(H*) is a Hopf subalgebra of H* of dimension pq^2, so H* is lower semisolvable and H is upper semisolvable"
            }
            RuleId::DualGroupAlgebra => "|G(H*)| = dim H forces H* = kG(H*), so H is a dual group algebra",
            RuleId::BiproductCriterion => {
                "Radford; Natale, Lemma 4.1.9: gcd(|G(H)|, |G(H*)|) = p^2 implies H is a biproduct R # kG with |G| = p^2"
            }
            RuleId::BiproductOrSemisolvable => {
                "group-like order p^2 or p^2 q: either a Hopf subalgebra of dimension pq^2 exists (semisolvable) or the biproduct criterion applies"
            }
            RuleId::CoidealObstruction => {
                "coideal count: a biproduct forces q^2 = 1 + mp or q^2 = q + np; if p divides neither q-1 nor q+1 H is semisolvable"
            }
            RuleId::DimensionThirtySix => "Natale, Chapter 8: semisimple Hopf algebras of dimension 36 are upper or lower semisolvable",
            RuleId::PrimeDimension => "Zhu: a Hopf algebra of prime dimension is a group algebra",
            RuleId::PrimeSquareDimension => "Masuoka: semisimple Hopf algebras of dimension p^2 are group algebras",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown rule id `{0}`")]
pub struct UnknownRule(pub String);

impl FromStr for RuleId {
    type Err = UnknownRule;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleId::ALL.iter().copied().find(|r| r.as_str() == s).ok_or_else(|| UnknownRule(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip_through_serde_and_fromstr() {
        for r in RuleId::ALL {
            let json = serde_json::to_string(&r).unwrap();
            assert_eq!(json, format!("\"{}\"", r.as_str()));
            assert_eq!(serde_json::from_str::<RuleId>(&json).unwrap(), r);
            assert_eq!(r.as_str().parse::<RuleId>().unwrap(), r);
            assert!(!r.citation().is_empty());
        }
    }

    #[test]
    fn unknown_ids_are_rejected() {
        assert!("made-up-rule".parse::<RuleId>().is_err());
        assert!(serde_json::from_str::<RuleId>("\"made-up-rule\"").is_err());
    }
}
