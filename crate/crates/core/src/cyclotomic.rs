//! Exact arithmetic in `Z[zeta_q]` and the GBF predicate.
//!
//! Elements are stored in the power basis `1, zeta, ..., zeta^(phi(q)-1)`,
//! fully reduced modulo the q-th cyclotomic polynomial, so equality is
//! coefficient-wise.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numtheory::{divisors, euler_phi};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycloError {
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("search space {needed} exceeds budget {budget}")]
    BudgetExceeded { needed: String, budget: u64 },
    #[error("invalid function table: {0}")]
    InvalidTable(String),
}

/// Integer polynomial, coefficients from the constant term up.
pub type IntPoly = Vec<BigInt>;

fn trim(p: &mut IntPoly) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub fn poly_mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Exact division by a monic polynomial; panics if the remainder is nonzero.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> IntPoly {
    let mut rem: IntPoly = num.to_vec();
    let dn = den.len() - 1;
    debug_assert!(den[dn].is_one());
    if rem.len() <= dn {
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= &c * d;
        }
        quot[i] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
    trim(&mut quot);
    quot
}

/// The n-th cyclotomic polynomial, by dividing `x^n - 1` by `Phi_d` for
/// every proper divisor `d`.
pub fn cyclotomic_polynomial(n: u64) -> IntPoly {
    assert!(n >= 1, "cyclotomic_polynomial(0)");
    let mut table: HashMap<u64, IntPoly> = HashMap::new();
    for d in divisors(n) {
        let mut p = vec![BigInt::zero(); d as usize + 1];
        p[0] = BigInt::from(-1);
        p[d as usize] = BigInt::one();
        for e in divisors(d) {
            if e < d {
                p = poly_div_exact(&p, &table[&e]);
            }
        }
        table.insert(d, p);
    }
    table.remove(&n).expect("n divides itself")
}

/// Reduction data for `Z[x] / Phi_q(x)`.
#[derive(Debug)]
pub struct CyclotomicRing {
    q: u64,
    degree: usize,
    modulus: IntPoly,
    // x^j mod Phi_q for j in 0..q
    powers: Vec<Vec<BigInt>>,
}

impl CyclotomicRing {
    fn build(q: u64) -> CyclotomicRing {
        assert!(q >= 1);
        let modulus = cyclotomic_polynomial(q);
        let degree = euler_phi(q) as usize;
        debug_assert_eq!(modulus.len(), degree + 1);
        let mut powers = Vec::with_capacity(q as usize);
        let mut cur = vec![BigInt::zero(); degree];
        cur[0] = BigInt::one();
        for _ in 0..q {
            powers.push(cur.clone());
            // multiply by x and fold the top coefficient back
            let top = cur.pop().expect("degree >= 1");
            cur.insert(0, BigInt::zero());
            if !top.is_zero() {
                for (c, m) in cur.iter_mut().zip(&modulus) {
                    *c -= &top * m;
                }
            }
        }
        CyclotomicRing {
            q,
            degree,
            modulus,
            powers,
        }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &IntPoly {
        &self.modulus
    }
}

/// Shared ring for modulus `q`.
pub fn ring(q: u64) -> Arc<CyclotomicRing> {
    static RINGS: OnceLock<Mutex<HashMap<u64, Arc<CyclotomicRing>>>> = OnceLock::new();
    let rings = RINGS.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(r) = rings.lock().expect("ring cache").get(&q) {
        return Arc::clone(r);
    }
    let built = Arc::new(CyclotomicRing::build(q));
    let mut guard = rings.lock().expect("ring cache");
    Arc::clone(guard.entry(q).or_insert(built))
}

/// An element of `Z[zeta_q]` in canonical form.
#[derive(Clone)]
pub struct CycloElt {
    ring: Arc<CyclotomicRing>,
    coeffs: Vec<BigInt>,
}

impl CycloElt {
    pub fn zero(q: u64) -> CycloElt {
        let ring = ring(q);
        let coeffs = vec![BigInt::zero(); ring.degree];
        CycloElt { ring, coeffs }
    }

    pub fn embed(q: u64, n: impl Into<BigInt>) -> CycloElt {
        let mut z = CycloElt::zero(q);
        z.coeffs[0] = n.into();
        z
    }

    /// `zeta_q^k` for any integer `k`.
    pub fn zeta_pow(q: u64, k: i64) -> CycloElt {
        let ring = ring(q);
        let j = k.rem_euclid(q as i64) as usize;
        let coeffs = ring.powers[j].clone();
        CycloElt { ring, coeffs }
    }

    /// Reduces `sum_j counts[j] zeta^j`, `counts` indexed by exponent mod q.
    pub fn from_exponent_counts<T: Into<BigInt> + Clone>(q: u64, counts: &[T]) -> CycloElt {
        assert_eq!(counts.len() as u64, q, "one count per exponent class");
        let ring = ring(q);
        let mut coeffs = vec![BigInt::zero(); ring.degree];
        for (j, c) in counts.iter().enumerate() {
            let c: BigInt = c.clone().into();
            if c.is_zero() {
                continue;
            }
            for (acc, p) in coeffs.iter_mut().zip(&ring.powers[j]) {
                if !p.is_zero() {
                    *acc += &c * p;
                }
            }
        }
        CycloElt { ring, coeffs }
    }

    pub fn q(&self) -> u64 {
        self.ring.q
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check(&self, other: &CycloElt) -> Result<(), CycloError> {
        if self.q() != other.q() {
            return Err(CycloError::ModulusMismatch(self.q(), other.q()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &CycloElt) -> Result<CycloElt, CycloError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycloElt {
            ring: Arc::clone(&self.ring),
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &CycloElt) -> Result<CycloElt, CycloError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CycloElt {
            ring: Arc::clone(&self.ring),
            coeffs,
        })
    }

    pub fn try_mul(&self, other: &CycloElt) -> Result<CycloElt, CycloError> {
        self.check(other)?;
        let q = self.q() as usize;
        let mut conv = vec![BigInt::zero(); q];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    conv[(i + j) % q] += a * b;
                }
            }
        }
        Ok(CycloElt::from_exponent_counts(self.q(), &conv))
    }

    /// Complex conjugation, `zeta -> zeta^(q-1)`.
    pub fn conjugate(&self) -> CycloElt {
        let q = self.q() as usize;
        let mut counts = vec![BigInt::zero(); q];
        for (i, a) in self.coeffs.iter().enumerate() {
            counts[(q - i) % q] += a;
        }
        CycloElt::from_exponent_counts(self.q(), &counts)
    }

    /// `self * conj(self)`.
    pub fn norm_sq(&self) -> CycloElt {
        self.try_mul(&self.conjugate()).expect("same ring")
    }

    /// Complex embedding at `zeta = exp(2 pi i / q)`; for diagnostics only.
    pub fn to_complex(&self) -> (f64, f64) {
        let q = self.q() as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let angle = 2.0 * std::f64::consts::PI * k as f64 / q;
            re += c * angle.cos();
            im += c * angle.sin();
        }
        (re, im)
    }
}

impl PartialEq for CycloElt {
    fn eq(&self, other: &Self) -> bool {
        self.q() == other.q() && self.coeffs == other.coeffs
    }
}

impl Eq for CycloElt {}

impl fmt::Debug for CycloElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloElt(q={}, {})", self.q(), self)
    }
}

impl fmt::Display for CycloElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "z^{k}")?,
                (_, false) => write!(f, "{mag}*z^{k}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! forward_op {
    ($tr:ident, $m:ident, $inner:ident) => {
        impl $tr for &CycloElt {
            type Output = CycloElt;
            fn $m(self, rhs: &CycloElt) -> CycloElt {
                self.$inner(rhs).expect("operands from the same cyclotomic ring")
            }
        }
        impl $tr for CycloElt {
            type Output = CycloElt;
            fn $m(self, rhs: CycloElt) -> CycloElt {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_op!(Add, add, try_add);
forward_op!(Sub, sub, try_sub);
forward_op!(Mul, mul, try_mul);

impl Neg for &CycloElt {
    type Output = CycloElt;
    fn neg(self) -> CycloElt {
        CycloElt {
            ring: Arc::clone(&self.ring),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// A function `Z_q^t -> Z_q` as a value table.
///
/// Index `i` encodes the point `x` with `i = x_0 + x_1 q + ... + x_{t-1} q^{t-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FunctionTable {
    t: u32,
    q: u64,
    values: Vec<u64>,
}

impl FunctionTable {
    pub fn new(t: u32, q: u64, values: Vec<u64>) -> Result<FunctionTable, CycloError> {
        if t == 0 || q < 2 {
            return Err(CycloError::InvalidTable(format!("t={t}, q={q}")));
        }
        let size = domain_size(t, q)
            .ok_or_else(|| CycloError::InvalidTable(format!("domain q^t too large (q={q}, t={t})")))?;
        if values.len() as u64 != size {
            return Err(CycloError::InvalidTable(format!(
                "expected {size} values, got {}",
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|&&v| v >= q) {
            return Err(CycloError::InvalidTable(format!("value {v} outside [0, {q})")));
        }
        Ok(FunctionTable { t, q, values })
    }

    pub fn from_fn(t: u32, q: u64, f: impl Fn(&[u64]) -> u64) -> Result<FunctionTable, CycloError> {
        let size = domain_size(t, q).ok_or_else(|| CycloError::InvalidTable("domain too large".into()))?;
        let values = (0..size).map(|i| f(&decode_point(i, t, q)) % q).collect();
        FunctionTable::new(t, q, values)
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn point(&self, index: u64) -> Vec<u64> {
        decode_point(index, self.t, self.q)
    }

    pub fn index_of(&self, point: &[u64]) -> u64 {
        encode_point(point, self.q)
    }
}

pub fn domain_size(t: u32, q: u64) -> Option<u64> {
    q.checked_pow(t)
}

pub fn decode_point(mut index: u64, t: u32, q: u64) -> Vec<u64> {
    let mut x = Vec::with_capacity(t as usize);
    for _ in 0..t {
        x.push(index % q);
        index /= q;
    }
    x
}

pub fn encode_point(point: &[u64], q: u64) -> u64 {
    point.iter().rev().fold(0, |acc, &c| acc * q + c % q)
}

fn dot_mod(x: &[u64], y: &[u64], q: u64) -> u64 {
    x.iter()
        .zip(y)
        .fold(0u64, |acc, (&a, &b)| ((acc as u128 + a as u128 * b as u128) % q as u128) as u64)
}

/// Exponent counts for `F(lambda) = sum_x zeta^(f(x) - x . lambda)`.
pub fn fourier_counts(f: &FunctionTable, lambda: &[u64]) -> Vec<u64> {
    let q = f.q;
    let mut counts = vec![0u64; q as usize];
    let mut x = vec![0u64; f.t as usize];
    for &v in &f.values {
        let e = (v + q - dot_mod(&x, lambda, q)) % q;
        counts[e as usize] += 1;
        // odometer, little-endian
        for c in x.iter_mut() {
            *c += 1;
            if *c < q {
                break;
            }
            *c = 0;
        }
    }
    counts
}

pub fn fourier_transform(f: &FunctionTable, lambda: &[u64]) -> CycloElt {
    assert_eq!(lambda.len(), f.t as usize, "lambda has the wrong dimension");
    CycloElt::from_exponent_counts(f.q, &fourier_counts(f, lambda))
}

/// `F(lambda)` for every `lambda`, indexed like the table.
pub fn spectrum(f: &FunctionTable) -> Vec<CycloElt> {
    (0..f.len() as u64)
        .map(|i| fourier_transform(f, &f.point(i)))
        .collect()
}

/// Whether `F(lambda) conj(F(lambda)) = q^t` for every `lambda`.
pub fn is_gbf(f: &FunctionTable) -> bool {
    let target = CycloElt::embed(f.q, BigInt::from(f.len() as u64));
    (0..f.len() as u64).all(|i| fourier_transform(f, &f.point(i)).norm_sq() == target)
}

/// Default number of tables `brute_search` may examine.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub budget: u64,
    /// Ignore the budget (the space must still fit in `u64`).
    pub force: bool,
    pub max_witnesses: Option<usize>,
    pub threads: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            force: false,
            max_witnesses: None,
            threads: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub t: u32,
    pub q: u64,
    pub tables_examined: u64,
    pub space_size: u64,
    pub witnesses: Vec<FunctionTable>,
    pub exhausted: bool,
}

/// Number of tables `Z_q^t -> Z_q`, if it fits in `u64`.
pub fn search_space(t: u32, q: u64) -> Option<u64> {
    let size = domain_size(t, q)?;
    q.checked_pow(u32::try_from(size).ok()?)
}

/// Exhaustive search for GBFs of type `[t, q]` in lexicographic table order.
pub fn brute_search(t: u32, q: u64, opts: &SearchOptions) -> Result<SearchOutcome, CycloError> {
    let size = domain_size(t, q).ok_or_else(|| CycloError::BudgetExceeded {
        needed: format!("{q}^({q}^{t})"),
        budget: opts.budget,
    })?;
    let space = match search_space(t, q) {
        Some(s) if opts.force || s <= opts.budget => s,
        other => {
            return Err(CycloError::BudgetExceeded {
                needed: other.map_or_else(|| format!("{q}^{size}"), |s| s.to_string()),
                budget: opts.budget,
            })
        }
    };
    let threads = opts.threads.max(1) as u64;
    let chunk = space.div_ceil(threads);
    let ranges: Vec<(u64, u64)> = (0..threads)
        .map(|i| (i * chunk, ((i + 1) * chunk).min(space)))
        .filter(|(a, b)| a < b)
        .collect();
    let results: Vec<(Vec<FunctionTable>, u64, bool)> = if ranges.len() == 1 {
        vec![scan_range(t, q, size, ranges[0], opts.max_witnesses)]
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = ranges
                .iter()
                .map(|&r| s.spawn(move || scan_range(t, q, size, r, opts.max_witnesses)))
                .collect();
            handles.into_iter().map(|h| h.join().expect("search worker")).collect()
        })
    };
    let mut witnesses = Vec::new();
    let mut examined = 0;
    let mut complete = true;
    for (w, n, done) in results {
        witnesses.extend(w);
        examined += n;
        complete &= done;
    }
    if let Some(k) = opts.max_witnesses {
        witnesses.truncate(k);
    }
    Ok(SearchOutcome {
        t,
        q,
        tables_examined: examined,
        space_size: space,
        witnesses,
        exhausted: complete,
    })
}

fn scan_range(
    t: u32,
    q: u64,
    size: u64,
    (start, end): (u64, u64),
    cap: Option<usize>,
) -> (Vec<FunctionTable>, u64, bool) {
    // rank -> table with values[0] as the most significant digit
    let mut values = vec![0u64; size as usize];
    let mut r = start;
    for slot in values.iter_mut().rev() {
        *slot = r % q;
        r /= q;
    }
    let mut found = Vec::new();
    let mut rank = start;
    while rank < end {
        let table = FunctionTable { t, q, values: values.clone() };
        if is_gbf(&table) {
            found.push(table);
            if cap.is_some_and(|k| found.len() >= k) {
                return (found, rank - start + 1, rank + 1 == end);
            }
        }
        for slot in values.iter_mut().rev() {
            *slot += 1;
            if *slot < q {
                break;
            }
            *slot = 0;
        }
        rank += 1;
    }
    (found, end - start, true)
}

/// One witness per line, table values separated by commas.
pub fn format_witnesses(witnesses: &[FunctionTable]) -> String {
    let mut out = String::new();
    for w in witnesses {
        let line: Vec<String> = w.values.iter().map(u64::to_string).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn parse_witnesses(text: &str, t: u32, q: u64) -> Result<Vec<FunctionTable>, CycloError> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let values = line
                .split(',')
                .map(|v| {
                    v.trim()
                        .parse::<u64>()
                        .map_err(|e| CycloError::InvalidTable(format!("{v:?}: {e}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            FunctionTable::new(t, q, values)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> IntPoly {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(62).len(), 31);
        // Phi_105 is the first with a coefficient of absolute value 2
        assert!(cyclotomic_polynomial(105).contains(&BigInt::from(-2)));
    }

    #[test]
    fn ring_examples() {
        let z = CycloElt::zeta_pow(6, 1);
        let z5 = CycloElt::zeta_pow(6, 5);
        assert_eq!(&z * &z5, CycloElt::embed(6, 1));
        // zeta_6^-1 = zeta_6^5 = 1 - zeta_6 under x^2 = x - 1
        let conj = z.conjugate();
        assert_eq!(conj.coeffs(), &ints(&[1, -1])[..]);
        assert_eq!(conj, z5);
        assert_eq!(
            CycloElt::embed(6, 5) * CycloElt::embed(6, 7),
            CycloElt::embed(6, 35)
        );
        assert_eq!(
            CycloElt::embed(6, 1).try_add(&CycloElt::embed(4, 1)),
            Err(CycloError::ModulusMismatch(6, 4))
        );
    }

    #[test]
    fn conjugate_matches_complex_conjugate() {
        let x = CycloElt::from_exponent_counts(6, &[3i64, 0, 2, -1, 0, 4]);
        let (re, im) = x.to_complex();
        let (cre, cim) = x.conjugate().to_complex();
        assert!((re - cre).abs() < 1e-9 && (im + cim).abs() < 1e-9);
    }

    #[test]
    fn fourier_examples() {
        let zero6 = FunctionTable::new(1, 6, vec![0; 6]).unwrap();
        assert_eq!(fourier_transform(&zero6, &[0]), CycloElt::embed(6, 6));
        assert!(fourier_transform(&zero6, &[1]).is_zero());
        let sq4 = FunctionTable::from_fn(1, 4, |x| x[0] * x[0]).unwrap();
        // 1 + i + 1 + i
        let expected = CycloElt::from_exponent_counts(4, &[2i64, 2, 0, 0]);
        assert_eq!(fourier_transform(&sq4, &[0]), expected);
        assert_eq!(expected.norm_sq(), CycloElt::embed(4, 8));
        assert_eq!(expected.coeffs(), &ints(&[2, 2])[..]);
    }

    #[test]
    fn gbf_examples() {
        // x^2 gives |F(0)|^2 = |2 + 2i|^2 = 8
        let sq4 = FunctionTable::from_fn(1, 4, |x| x[0] * x[0]).unwrap();
        assert!(!is_gbf(&sq4));
        let cube4 = FunctionTable::from_fn(1, 4, |x| x[0].pow(3)).unwrap();
        assert_eq!(cube4.values(), &[0, 1, 0, 3]);
        assert!(is_gbf(&cube4));
        let zero6 = FunctionTable::new(1, 6, vec![0; 6]).unwrap();
        assert!(!is_gbf(&zero6));
    }

    #[test]
    fn table_validation_and_encoding() {
        assert!(FunctionTable::new(1, 4, vec![0, 1, 2]).is_err());
        assert!(FunctionTable::new(1, 4, vec![0, 1, 2, 4]).is_err());
        let f = FunctionTable::new(2, 3, vec![0; 9]).unwrap();
        assert_eq!(f.point(5), vec![2, 1]);
        assert_eq!(f.index_of(&[2, 1]), 5);
    }

    #[test]
    fn search_examples() {
        let out = brute_search(1, 4, &SearchOptions::default()).unwrap();
        assert!(out.exhausted && !out.witnesses.is_empty());
        assert!(out.witnesses.iter().all(is_gbf));
        let err = brute_search(1, 10, &SearchOptions::default()).unwrap_err();
        assert!(matches!(err, CycloError::BudgetExceeded { .. }));
        let first = brute_search(
            1,
            4,
            &SearchOptions {
                max_witnesses: Some(1),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(first.witnesses, out.witnesses[..1]);
    }

    #[test]
    fn threaded_search_preserves_order() {
        let one = brute_search(1, 4, &SearchOptions::default()).unwrap();
        let many = brute_search(
            1,
            4,
            &SearchOptions {
                threads: 3,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(one, many);
    }

    #[test]
    fn witness_format() {
        let out = brute_search(1, 4, &SearchOptions::default()).unwrap();
        let text = format_witnesses(&out.witnesses);
        assert_eq!(text.lines().count(), out.witnesses.len());
        assert_eq!(parse_witnesses(&text, 1, 4).unwrap(), out.witnesses);
    }
}
