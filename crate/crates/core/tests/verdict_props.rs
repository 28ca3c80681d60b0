use gbf_core::cyclotomic::is_gbf;
use gbf_core::verdict::{
    check_prime_power, check_two_prime, dispatch, dispatch_with, eval, DispatchOptions, Rule, Status, Verdict,
    VerdictError,
};
use proptest::prelude::*;
use serde_json::json;

fn round_trip(v: &Verdict) -> Verdict {
    serde_json::from_str(&serde_json::to_string(v).unwrap()).unwrap()
}

#[test]
fn theorem_instances() {
    let v = check_two_prime(7, 1, 5, 1).unwrap();
    assert_eq!((v.status, v.gbf_type.to_string()), (Status::NonExistence, "[1, 70]".to_string()));
    let v = check_two_prime(23, 1, 5, 1).unwrap();
    assert_eq!((v.status, v.gbf_type.to_string()), (Status::NonExistence, "[3, 230]".to_string()));
    round_trip(&v).replay().unwrap();
    assert_eq!(check_two_prime(7, 1, 3, 1).unwrap().status, Status::Inconclusive);
    assert!(matches!(check_two_prime(7, 1, 4, 1), Err(VerdictError::InvalidInput(_))));
    assert_eq!(check_prime_power(31, 2, 3).unwrap().gbf_type.q, "1922");
}

#[test]
fn dispatch_routes() {
    // Kumar condition: 2^s = -1 mod 3
    assert_eq!(dispatch(3, 6).status, Status::NonExistence);
    // two-prime shape N = 23 * 5, m = 3
    assert_eq!(dispatch(3, 2 * 23 * 5).status, Status::NonExistence);
    assert_eq!(dispatch(1, 2 * 23 * 5).status, Status::Inconclusive);
    assert_eq!(dispatch(1, 2).status, Status::NonExistence);
    assert_eq!(dispatch(4, 6).status, Status::Inconclusive);
    assert_eq!(dispatch(1, 12).status, Status::Inconclusive);
    let opts = DispatchOptions {
        brute_force: false,
        ..Default::default()
    };
    let v = dispatch_with(1, 6, &opts);
    assert!(v.evidence.iter().all(|s| s.rule != Rule::ExhaustiveSearch));
    assert_eq!(v.status, Status::NonExistence);
}

#[test]
fn prime_power_verdicts_replay() {
    for (p, e, n) in [(31u64, 1u32, 1u64), (31, 1, 3), (31, 3, 5), (151, 1, 1), (151, 1, 5), (23, 1, 3), (7, 1, 1)] {
        let v = check_prime_power(p, e, n).unwrap();
        round_trip(&v).replay().unwrap();
    }
    let v = check_prime_power(151, 1, 5).unwrap();
    assert!(v.warnings.iter().any(|w| w.contains("x_5")));
}

#[test]
fn tampering_is_detected() {
    let mut v = dispatch(3, 62);
    let i = v.evidence.iter().position(|s| s.rule == Rule::RelationPipeline).unwrap();
    v.evidence[i].outputs["q_ord"] = json!(5);
    assert!(matches!(v.replay(), Err(VerdictError::ReplayMismatch { .. })));
    let mut w = dispatch(1, 6);
    w.status = Status::ExistsWitness;
    assert_eq!(w.replay(), Err(VerdictError::BadWitness));
}

#[test]
fn eval_rejects_malformed_inputs() {
    assert!(matches!(eval(Rule::HalfOrder, &json!({ "p": 3 })), Err(VerdictError::BadInputs(..))));
    assert!(eval(Rule::HalfOrder, &json!({ "modulus": 4 })).is_err());
    assert_eq!(eval(Rule::PrimeCheck, &json!({ "value": 151 })).unwrap(), json!({ "prime": true }));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn evidence_replays(n in (0u64..4).prop_map(|k| 2 * k + 1), q in 2u64..400) {
        let opts = DispatchOptions { budget: 50_000, ..Default::default() };
        let v = dispatch_with(n, q, &opts);
        let back = round_trip(&v);
        prop_assert_eq!(&back, &v);
        prop_assert!(back.replay().is_ok());
        if v.status == Status::ExistsWitness {
            prop_assert!(is_gbf(v.witness.as_ref().unwrap()));
        }
        if q % 4 != 2 {
            prop_assert_eq!(v.status, Status::Inconclusive);
        }
    }

    #[test]
    fn two_prime_replays(i in 0usize..6, j in 0usize..6, r1 in 1u32..3, r2 in 1u32..3) {
        let p7 = [7u64, 23, 31, 47, 71, 79][i];
        let p5 = [5u64, 13, 29, 37, 53, 61][j];
        let v = check_two_prime(p7, r1, p5, r2).unwrap();
        prop_assert!(round_trip(&v).replay().is_ok());
        if v.status == Status::NonExistence {
            prop_assert_eq!(v.gbf_type.n.unwrap() % 2, 1);
        }
    }
}
