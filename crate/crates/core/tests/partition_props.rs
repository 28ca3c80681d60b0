use std::collections::BTreeSet;
use std::f64::consts::PI;

use gbf_core::cyclotomic::FunctionTable;
use gbf_core::numtheory::OddModulus;
use gbf_core::partition::{
    admissible_patterns, certify, enumerate_certificates, epm_verdict, index2_subgroups, order2_elements,
    pattern_census, plancherel_sum, y0_solver, Order2Vector, SignPattern,
};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

/// `sum_x F(x) conj(F(x + v))` in floating point, straight from the definition.
fn float_plancherel(f: &FunctionTable, v: &Order2Vector) -> (f64, f64) {
    let q = f.q();
    let n = f.len();
    let transform = |lambda: &[u64]| {
        let mut acc = (0.0, 0.0);
        for (i, &val) in f.values().iter().enumerate() {
            let x = f.point(i as u64);
            let dot: u64 = x.iter().zip(lambda).map(|(a, b)| a * b).sum();
            let th = 2.0 * PI * ((val + q - dot % q) % q) as f64 / q as f64;
            acc.0 += th.cos();
            acc.1 += th.sin();
        }
        acc
    };
    let spec: Vec<(f64, f64)> = (0..n as u64).map(|i| transform(&f.point(i))).collect();
    let mut acc = (0.0, 0.0);
    for i in 0..n {
        let y: Vec<u64> = f.point(i as u64).iter().zip(v.to_point(q)).map(|(a, b)| (a + b) % q).collect();
        let (a, b) = (spec[i], spec[f.index_of(&y) as usize]);
        acc.0 += a.0 * b.0 + a.1 * b.1;
        acc.1 += a.1 * b.0 - a.0 * b.1;
    }
    acc
}

#[test]
fn order2_and_index2_counts() {
    for t in 1..=8 {
        let expected = (1usize << t) - 1;
        assert_eq!(order2_elements(t, 6).unwrap().len(), expected);
        assert_eq!(order2_elements(t, 4).unwrap().len(), expected);
        let subs = index2_subgroups(t).unwrap();
        assert_eq!(subs.len(), expected);
        let distinct: BTreeSet<_> = subs.iter().collect();
        assert_eq!(distinct.len(), expected);
        for h in &subs {
            assert_eq!(h.len(), 1 << (t - 1));
            assert!(h.iter().all(|a| h.iter().all(|b| h.contains(&(a ^ b)))));
        }
    }
}

#[test]
fn plancherel_vanishes_on_random_functions() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x6bf);
    let cases = [(1u32, 4u64), (1, 6), (3, 4), (3, 6)];
    for k in 0..1000 {
        let (t, q) = cases[k % cases.len()];
        let len = q.pow(t) as usize;
        let f = FunctionTable::new(t, q, (0..len).map(|_| rng.gen_range(0..q)).collect()).unwrap();
        let v = Order2Vector::new(t, rng.gen_range(1..1u32 << t)).unwrap();
        assert!(plancherel_sum(&f, &v).is_zero(), "case {k}: {:?}", f.values());
        if k < 40 {
            let (re, im) = float_plancherel(&f, &v);
            assert!(re.abs() < 1e-6 && im.abs() < 1e-6);
        }
    }
}

#[test]
fn admissible_patterns_are_the_linear_functionals() {
    for t in 1..=5 {
        let adm = admissible_patterns(t).unwrap();
        assert_eq!(adm.len(), 1 << t);
        assert!(adm.iter().all(SignPattern::is_subgroup_pattern));
        let set: BTreeSet<_> = adm.iter().collect();
        assert_eq!(set.len(), 1 << t);
        for p in &adm {
            assert!(certify(p).is_none());
        }
    }
}

#[test]
fn every_inadmissible_pattern_has_a_certificate() {
    for t in 1..=4 {
        let adm: BTreeSet<_> = admissible_patterns(t).unwrap().into_iter().collect();
        let all = enumerate_certificates(t).unwrap();
        assert_eq!(all.len() as u64, 1u64 << ((1u64 << t) - 1));
        for (p, cert) in all {
            match cert {
                None => assert!(adm.contains(&p)),
                Some(tr) => {
                    assert!(!adm.contains(&p));
                    assert!(tr.violates(&p));
                }
            }
        }
    }
    for t in 1..=5 {
        let c = pattern_census(t).unwrap();
        assert!(c.verify());
        assert_eq!(c.admissible.len(), 1 << t);
        assert_eq!(c.excluded + (1u64 << t), c.total);
        assert_eq!(c.total, 1u64 << ((1u64 << t) - 1));
    }
}

#[test]
fn y0_is_n_to_the_t() {
    assert_eq!(y0_solver(3, 6).unwrap(), BigInt::from(27));
    for (t, q) in [(1u32, 6u64), (3, 10), (5, 14), (7, 62), (9, 302), (21, 2 * 151)] {
        assert_eq!(y0_solver(t, q).unwrap(), BigInt::from(q / 2).pow(t));
    }
    assert!(y0_solver(3, 8).is_err());
    assert!(y0_solver(3, 7).is_err());
    let r = epm_verdict(3, OddModulus::new(31).unwrap()).unwrap();
    assert!(r.y0_odd && r.contradiction);
    assert!(epm_verdict(2, OddModulus::new(31).unwrap()).is_err());
}

proptest! {
    #[test]
    fn random_patterns_are_classified(t in 1u32..=6, seed in any::<u64>()) {
        let mask = if t == 6 { u64::MAX >> 1 } else { (1u64 << ((1u64 << t) - 1)) - 1 };
        let p = SignPattern { t, m_bits: seed & mask };
        match certify(&p) {
            None => prop_assert!(p.is_subgroup_pattern()),
            Some(tr) => {
                prop_assert!(tr.violates(&p));
                prop_assert!(!p.is_subgroup_pattern());
            }
        }
    }
}
