use hopfsieve_core::fusion::SearchConfig;
use hopfsieve_core::trace::Check;
use hopfsieve_core::verdict::{classify_4q2, classify_p2q2, replay, Outcome};

/// Outcome per group-like order for dimension 4q^2, written out by hand.
fn answer_key(q: u64) -> Vec<(u64, Outcome)> {
    use Outcome::*;
    vec![
        (1, Impossible),
        (2, UpperSemisolvable),
        (4, SemisolvableOrBiproduct),
        (q, Impossible),
        (2 * q, UpperSemisolvable),
        (4 * q, SemisolvableOrBiproduct),
        (q * q, UpperSemisolvable),
        (2 * q * q, UpperSemisolvable),
        (4 * q * q, DualGroupAlgebra),
    ]
}

#[test]
fn small_primes_match_the_answer_key() {
    let cfg = SearchConfig::default();
    for q in [5u64, 7, 11, 13] {
        let vs = classify_4q2(q, &cfg).unwrap();
        let mut got: Vec<(u64, Outcome)> = vs.iter().map(|v| (v.g_order.unwrap(), v.outcome)).collect();
        let mut want = answer_key(q);
        got.sort();
        want.sort();
        assert_eq!(got, want, "q = {q}");
        for v in &vs {
            assert!(v.findings.is_empty(), "q = {q}: {:?}", v.findings);
            assert_eq!(replay(v, &cfg), Ok(v.outcome), "q = {q}, g = {:?}", v.g_order);
            assert!(v.outcome == Outcome::Impossible || v.outcome == Outcome::DualGroupAlgebra || v.outcome.is_structural());
        }
    }
}

#[test]
fn order_eleven_is_eliminated_by_search() {
    let vs = classify_4q2(11, &SearchConfig::default()).unwrap();
    let v = vs.iter().find(|v| v.g_order == Some(11)).unwrap();
    assert_eq!(v.outcome, Outcome::Impossible);
    assert!(v
        .trace
        .steps
        .iter()
        .any(|s| matches!(&s.check, Check::Fusion { type_notation, .. } if type_notation == "(1,11;4,22;11,1)")));
}

#[test]
fn both_pipelines_agree_beyond_thirteen() {
    let cfg = SearchConfig::default();
    for q in [17u64, 19, 23] {
        assert_eq!(classify_4q2(q, &cfg).unwrap(), classify_p2q2(2, q).unwrap());
    }
}

#[test]
fn general_regime_dichotomy() {
    for (p, q) in [(2u64, 17u64), (2, 19), (3, 83), (3, 89), (5, 1283)] {
        for v in classify_p2q2(p, q).unwrap() {
            let g = v.g_order.unwrap();
            assert!(v.findings.is_empty());
            assert_eq!(v.outcome == Outcome::DualGroupAlgebra, g == p * p * q * q);
            assert!(v.outcome == Outcome::Impossible || v.outcome == Outcome::DualGroupAlgebra || v.outcome.is_structural());
        }
    }
}
