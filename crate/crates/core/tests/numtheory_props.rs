use gbf_core::numtheory::{
    as_prime_power, divisors, euler_phi, factorize, gcd, inv_mod, is_half_order, is_prime, minus_one_power_exists,
    mult_order, pow_mod, primitive_root, primitive_roots, wieferich_free, OddModulus,
};
use proptest::prelude::*;

fn naive_order(a: u64, m: u64) -> Option<u64> {
    if gcd(a % m, m) != 1 {
        return None;
    }
    let mut x = a % m;
    let mut k = 1;
    while x != 1 {
        x = x * (a % m) % m;
        k += 1;
    }
    Some(k)
}

#[test]
fn small_values() {
    let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
    assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
    assert_eq!(primitive_root(31).unwrap(), 3);
    assert_eq!(primitive_root(151).unwrap(), 6);
    assert_eq!(primitive_roots(31).unwrap().take(5).collect::<Vec<_>>(), vec![3, 11, 12, 13, 17]);
    assert!(!wieferich_free(1093).unwrap());
    assert!(!wieferich_free(3511).unwrap());
    assert!(wieferich_free(31).unwrap() && wieferich_free(151).unwrap());
    assert!(OddModulus::new(4).is_err() && OddModulus::new(1).is_err());
    assert!(is_half_order(OddModulus::new(35).unwrap()));
    assert!(!is_half_order(OddModulus::new(31).unwrap()));
    assert_eq!(as_prime_power(961), Some((31, 2)));
    assert_eq!(as_prime_power(70), None);
    assert_eq!(divisors(3934), vec![1, 2, 7, 14, 281, 562, 1967, 3934]);
}

#[test]
fn kumar_condition_examples() {
    // 2 has odd order modulo 7, 23, 31 and 151
    for n in [7u64, 23, 31, 151, 7 * 23] {
        assert!(!minus_one_power_exists(2, OddModulus::new(n).unwrap()).unwrap(), "N = {n}");
    }
    for n in [3u64, 5, 9, 11, 13, 25] {
        assert!(minus_one_power_exists(2, OddModulus::new(n).unwrap()).unwrap(), "N = {n}");
    }
}

proptest! {
    #[test]
    fn factorize_is_a_factorization(n in 1u64..5_000_000) {
        let f = factorize(n);
        let prod: u64 = f.iter().map(|&(p, e)| p.pow(e)).product();
        prop_assert_eq!(prod, n);
        prop_assert!(f.iter().all(|&(p, _)| is_prime(p)));
        prop_assert!(f.windows(2).all(|w| w[0].0 < w[1].0));
        let phi = (1..=n.min(3000)).filter(|&k| gcd(k, n) == 1).count() as u64;
        if n <= 3000 {
            prop_assert_eq!(euler_phi(n), phi);
        }
    }

    #[test]
    fn order_matches_naive(a in 1u64..500, m in (1u64..2000).prop_map(|k| 2 * k + 1)) {
        let r = mult_order(a as i64, OddModulus::new(m).unwrap());
        match naive_order(a, m) {
            Some(k) => {
                prop_assert_eq!(r.unwrap(), k);
                prop_assert_eq!(euler_phi(m) % k, 0);
            }
            None => prop_assert!(r.is_err()),
        }
    }

    #[test]
    fn minus_one_power_matches_naive(a in 2u64..200, m in (1u64..1000).prop_map(|k| 2 * k + 1)) {
        prop_assume!(gcd(a, m) == 1);
        let k = naive_order(a, m).unwrap();
        let naive = (1..=k).any(|s| pow_mod(a, s, m) == m - 1);
        prop_assert_eq!(minus_one_power_exists(a as i64, OddModulus::new(m).unwrap()).unwrap(), naive);
    }

    #[test]
    fn inverses(a in 1u64..10_000, m in 2u64..10_000) {
        match inv_mod(a, m) {
            Some(b) => prop_assert_eq!(a % m * b % m, 1 % m),
            None => prop_assert!(gcd(a, m) != 1),
        }
    }

    #[test]
    fn primitive_roots_generate(p in (3u64..3000).prop_filter("prime", |&p| is_prime(p))) {
        let w = primitive_root(p).unwrap();
        prop_assert_eq!(naive_order(w, p), Some(p - 1));
        prop_assert!((2..w).all(|a| naive_order(a, p) != Some(p - 1)));
    }
}
