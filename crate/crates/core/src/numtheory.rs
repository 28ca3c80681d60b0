//! Elementary modular arithmetic: Euler phi, multiplicative orders,
//! primitive roots and the small power-residue predicates used by the
//! theorem checkers.
//!
//! Everything here works on `u64` inputs with `u128` intermediates.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumTheoryError {
    #[error("{0} and {1} are not coprime")]
    NotCoprime(i64, u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} must be odd and at least 3")]
    BadModulus(u64),
    #[error("argument must be positive")]
    Zero,
}

/// An odd modulus `N >= 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct OddModulus(u64);

impl OddModulus {
    pub fn new(value: u64) -> Result<Self, NumTheoryError> {
        if value < 3 || value.is_multiple_of(2) {
            return Err(NumTheoryError::BadModulus(value));
        }
        Ok(OddModulus(value))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl TryFrom<u64> for OddModulus {
    type Error = NumTheoryError;
    fn try_from(value: u64) -> Result<Self, Self::Error> {
        OddModulus::new(value)
    }
}

impl From<OddModulus> for u64 {
    fn from(m: OddModulus) -> u64 {
        m.0
    }
}

impl std::fmt::Display for OddModulus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Reduces a signed integer into `[0, m)`.
pub fn reduce_signed(a: i64, m: u64) -> u64 {
    (a as i128).rem_euclid(m as i128) as u64
}

/// Deterministic Miller-Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

const TRIAL_LIMIT: u64 = 1_000_000;

/// Prime factorization as sorted `(prime, exponent)` pairs. `factorize(1)` is empty.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize(0)");
    let mut n = n;
    let mut out = Vec::new();
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0;
        while (*n).is_multiple_of(p) {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut n);
    let mut p = 3;
    while p <= TRIAL_LIMIT && p * p <= n {
        if n.is_multiple_of(p) {
            push(p, &mut n);
        }
        p += 2;
    }
    if n > 1 {
        let mut big = Vec::new();
        split_large(n, &mut big);
        big.sort_unstable();
        let mut i = 0;
        while i < big.len() {
            let mut j = i;
            while j < big.len() && big[j] == big[i] {
                j += 1;
            }
            out.push((big[i], (j - i) as u32));
            i = j;
        }
    }
    out.sort_unstable();
    out
}

fn split_large(n: u64, acc: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        acc.push(n);
        return;
    }
    let d = pollard_rho(n);
    split_large(d, acc);
    split_large(n / d, acc);
}

// Brent's variant; n is odd, composite and free of factors below the trial limit.
fn pollard_rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi(0)");
    factorize(n)
        .into_iter()
        .map(|(p, e)| (p - 1) * p.pow(e - 1))
        .product()
}

/// Smallest `k >= 1` with `a^k = 1 (mod m)`.
pub fn mult_order(a: i64, m: OddModulus) -> Result<u64, NumTheoryError> {
    let m = m.get();
    let a = reduce_signed(a, m);
    if gcd(a, m) != 1 {
        return Err(NumTheoryError::NotCoprime(a as i64, m));
    }
    Ok(order_with_group_exponent(a, m, euler_phi(m)))
}

fn order_with_group_exponent(a: u64, m: u64, exponent: u64) -> u64 {
    let mut order = exponent;
    for (l, _) in factorize(exponent) {
        while order.is_multiple_of(l) && pow_mod(a, order / l, m) == 1 {
            order /= l;
        }
    }
    order
}

/// All primitive roots modulo the prime `p`, in increasing order.
pub fn primitive_roots(p: u64) -> Result<impl Iterator<Item = u64>, NumTheoryError> {
    if !is_prime(p) {
        return Err(NumTheoryError::NotPrime(p));
    }
    let primes: Vec<u64> = factorize(p - 1).into_iter().map(|(l, _)| l).collect();
    Ok((1..p).filter(move |&w| {
        p == 2 || (w > 1 && primes.iter().all(|&l| pow_mod(w, (p - 1) / l, p) != 1))
    }))
}

/// The smallest positive primitive root modulo `p`.
pub fn primitive_root(p: u64) -> Result<u64, NumTheoryError> {
    Ok(primitive_roots(p)?
        .next()
        .expect("a primitive root exists modulo every prime"))
}

/// Whether `ord_N(2) = phi(N) / 2`.
pub fn is_half_order(n: OddModulus) -> bool {
    let phi = euler_phi(n.get());
    mult_order(2, n).map(|o| 2 * o == phi).unwrap_or(false)
}

/// Whether `a^s = -1 (mod M)` for some `s >= 1`.
pub fn minus_one_power_exists(a: i64, m: OddModulus) -> Result<bool, NumTheoryError> {
    let ord = mult_order(a, m)?;
    let a = reduce_signed(a, m.get());
    Ok(ord % 2 == 0 && pow_mod(a, ord / 2, m.get()) == m.get() - 1)
}

/// Whether `2^(p-1) != 1 (mod p^2)`.
pub fn wieferich_free(p: u64) -> Result<bool, NumTheoryError> {
    if !is_prime(p) || p == 2 {
        return Err(NumTheoryError::NotPrime(p));
    }
    let p2 = p as u128 * p as u128;
    let mut acc: u128 = 1;
    let mut base: u128 = 2;
    let mut e = p - 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p2;
        }
        base = base * base % p2;
        e >>= 1;
    }
    Ok(acc != 1)
}

/// Returns `(p, e)` when `n = p^e` for a prime `p`.
pub fn as_prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).as_slice() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

/// All positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factorize(n) {
        let len = divs.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return if m == 1 { Some(0) } else { None };
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}
