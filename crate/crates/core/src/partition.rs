//! Element partition on the 2-part of `Z_q^t`.
//!
//! For `q = 2N` with `N` odd the order-2 subgroup is `{0, q/2}^t`, which we
//! identify with `F_2^t` and store as bitmasks. Sign patterns record, for
//! a point `x`, whether `x` lies in `N_v` or `M_v` for each nonzero `v`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::{spectrum, CycloElt, FunctionTable};
use crate::numtheory::OddModulus;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("dimension {0} is outside the supported range {1}")]
    Dimension(u32, &'static str),
    #[error("modulus {0} must be twice an odd number")]
    BadModulus(u64),
    #[error("linear system has no integral solution")]
    NonIntegralSolution,
    #[error("vector mask {0:#x} is zero or exceeds dimension {1}")]
    BadVector(u32, u32),
}

/// Nonzero element of order 2 in `Z_q^t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Order2Vector {
    pub t: u32,
    pub mask: u32,
}

impl Order2Vector {
    pub fn new(t: u32, mask: u32) -> Result<Order2Vector, PartitionError> {
        if mask == 0 || t > 31 || mask >> t != 0 {
            return Err(PartitionError::BadVector(mask, t));
        }
        Ok(Order2Vector { t, mask })
    }

    /// Coordinates in `Z_q^t`: `q/2` where the mask is set.
    pub fn to_point(&self, q: u64) -> Vec<u64> {
        (0..self.t)
            .map(|i| if self.mask >> i & 1 == 1 { q / 2 } else { 0 })
            .collect()
    }
}

fn check_dim(t: u32, max: u32, label: &'static str) -> Result<(), PartitionError> {
    if t == 0 || t > max {
        return Err(PartitionError::Dimension(t, label));
    }
    Ok(())
}

/// Nonzero order-2 vectors in binary counting order.
pub fn order2_elements(t: u32, q: u64) -> Result<Vec<Order2Vector>, PartitionError> {
    check_dim(t, 20, "1..=20")?;
    if !q.is_multiple_of(2) {
        return Err(PartitionError::BadModulus(q));
    }
    Ok((1..1u32 << t).map(|mask| Order2Vector { t, mask }).collect())
}

fn parity(x: u32) -> u32 {
    x.count_ones() & 1
}

/// Index-2 subgroups of `F_2^t`, the kernel of `x -> a . x` for each
/// nonzero `a`, listed by `a`. Each subgroup is returned as its sorted masks.
pub fn index2_subgroups(t: u32) -> Result<Vec<Vec<u32>>, PartitionError> {
    check_dim(t, 20, "1..=20")?;
    Ok((1..1u32 << t)
        .map(|a| (0..1u32 << t).filter(|&x| parity(a & x) == 0).collect())
        .collect())
}

fn shift(point: &[u64], v: &Order2Vector, q: u64) -> Vec<u64> {
    point
        .iter()
        .zip(v.to_point(q))
        .map(|(a, b)| (a + b) % q)
        .collect()
}

/// `sum_x F(x) conj(F(x + v))`, which vanishes for every `f`.
pub fn plancherel_sum(f: &FunctionTable, v: &Order2Vector) -> CycloElt {
    let spec = spectrum(f);
    plancherel_sum_with(f, &spec, v)
}

pub fn plancherel_sum_with(f: &FunctionTable, spec: &[CycloElt], v: &Order2Vector) -> CycloElt {
    let mut acc = CycloElt::zero(f.q());
    for (i, fx) in spec.iter().enumerate() {
        let j = f.index_of(&shift(&f.point(i as u64), v, f.q()));
        acc = &acc + &(fx * &spec[j as usize].conjugate());
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairClass {
    /// `F(x) = F(x + v)`
    N,
    /// `F(x) = -F(x + v)`
    M,
    Neither,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairClassification {
    pub v: Order2Vector,
    /// Indexed like the function table.
    pub labels: Vec<PairClass>,
    pub n_count: u64,
    pub m_count: u64,
    pub neither_count: u64,
}

/// Labels each `x` by comparing `F(x)` and `F(x + v)`. Points with
/// `F(x) = F(x + v) = 0` are labelled `N`.
pub fn classify_pairs(f: &FunctionTable, v: &Order2Vector) -> PairClassification {
    classify_pairs_with(f, &spectrum(f), v)
}

pub fn classify_pairs_with(f: &FunctionTable, spec: &[CycloElt], v: &Order2Vector) -> PairClassification {
    let mut labels = Vec::with_capacity(spec.len());
    let (mut n, mut m, mut neither) = (0, 0, 0);
    for (i, fx) in spec.iter().enumerate() {
        let j = f.index_of(&shift(&f.point(i as u64), v, f.q())) as usize;
        let label = if *fx == spec[j] {
            n += 1;
            PairClass::N
        } else if *fx == -&spec[j] {
            m += 1;
            PairClass::M
        } else {
            neither += 1;
            PairClass::Neither
        };
        labels.push(label);
    }
    PairClassification {
        v: *v,
        labels,
        n_count: n,
        m_count: m,
        neither_count: neither,
    }
}

/// A choice of `N` or `M` for each nonzero `v in F_2^t`. Bit `v - 1` of
/// `m_bits` is set when `v` is assigned `M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignPattern {
    pub t: u32,
    pub m_bits: u64,
}

impl SignPattern {
    pub fn is_m(&self, v: u32) -> bool {
        self.m_bits >> (v - 1) & 1 == 1
    }

    /// Masks assigned `N`, together with 0.
    pub fn n_set(&self) -> Vec<u32> {
        std::iter::once(0)
            .chain((1..1u32 << self.t).filter(|&v| !self.is_m(v)))
            .collect()
    }

    /// The pattern whose `M` set is where the functional `x -> a . x` is 1.
    pub fn from_functional(t: u32, a: u32) -> SignPattern {
        let m_bits = (1..1u32 << t)
            .filter(|&v| parity(a & v) == 1)
            .fold(0u64, |acc, v| acc | 1 << (v - 1));
        SignPattern { t, m_bits }
    }

    /// Whether `N` set plus 0 is a subgroup of index at most 2.
    pub fn is_subgroup_pattern(&self) -> bool {
        let n = self.n_set();
        let size = n.len() as u64;
        let full = 1u64 << self.t;
        let closed = n.iter().all(|&a| n.iter().all(|&b| n.binary_search(&(a ^ b)).is_ok()));
        closed && (size == full || 2 * size == full)
    }
}

/// Three nonzero vectors with `u + v + w = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triple {
    pub u: u32,
    pub v: u32,
    pub w: u32,
}

impl Triple {
    /// An odd number of `M` labels on a zero-sum triple is impossible.
    pub fn violates(&self, p: &SignPattern) -> bool {
        let zero_sum = self.u ^ self.v ^ self.w == 0;
        let distinct_nonzero = self.u != 0 && self.v != 0 && self.w != 0 && self.u != self.v;
        let odd = (p.is_m(self.u) as u8 + p.is_m(self.v) as u8 + p.is_m(self.w) as u8) % 2 == 1;
        zero_sum && distinct_nonzero && odd
    }
}

/// The 2^t admissible patterns: all-`N` first, then one per index-2 subgroup.
pub fn admissible_patterns(t: u32) -> Result<Vec<SignPattern>, PartitionError> {
    check_dim(t, 6, "1..=6")?;
    Ok((0..1u32 << t).map(|a| SignPattern::from_functional(t, a)).collect())
}

/// A violating triple for an inadmissible pattern, `None` if admissible.
pub fn certify(p: &SignPattern) -> Option<Triple> {
    let linear = linear_extension(p);
    let diff = p.m_bits ^ linear;
    if diff == 0 {
        return None;
    }
    // smallest disagreeing vector; it is not a basis vector, and its two
    // summands below agree with the linear extension
    let x = diff.trailing_zeros() + 1;
    let e = 1u32 << (31 - x.leading_zeros());
    Some(Triple { u: x ^ e, v: e, w: x })
}

/// The functional agreeing with the pattern on the standard basis.
fn basis_functional(t: u32, m_bits: u64) -> u32 {
    (0..t).fold(0u32, |acc, i| acc | ((m_bits >> ((1u32 << i) - 1) & 1) as u32) << i)
}

fn linear_extension(p: &SignPattern) -> u64 {
    SignPattern::from_functional(p.t, basis_functional(p.t, p.m_bits)).m_bits
}

/// Excluded patterns sharing one certificate: those that agree with the
/// linear pattern of `functional` on every vector below `first_disagreement`
/// and differ from it there. The triple only reads vectors up to
/// `first_disagreement`, so it is checked once on `representative`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateClass {
    pub functional: u32,
    pub first_disagreement: u32,
    pub representative: SignPattern,
    pub triple: Triple,
    pub size: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternCensus {
    pub t: u32,
    pub total: u64,
    pub admissible: Vec<SignPattern>,
    pub excluded: u64,
    pub classes: Vec<CertificateClass>,
}

impl PatternCensus {
    /// Rechecks every class certificate and that the classes and the
    /// admissible patterns partition the whole pattern space.
    pub fn verify(&self) -> bool {
        let classes_ok = self.classes.iter().all(|c| {
            let agrees_below = (c.representative.m_bits ^ SignPattern::from_functional(self.t, c.functional).m_bits)
                == 1 << (c.first_disagreement - 1);
            agrees_below && c.triple.violates(&c.representative) && c.triple.w == c.first_disagreement
        });
        let covered: u64 = self.classes.iter().map(|c| c.size).sum();
        classes_ok
            && covered == self.excluded
            && self.excluded + self.admissible.len() as u64 == self.total
            && self.admissible.iter().all(SignPattern::is_subgroup_pattern)
    }
}

/// Partitions all `2^(2^t - 1)` patterns into the admissible ones and
/// certificate classes.
pub fn pattern_census(t: u32) -> Result<PatternCensus, PartitionError> {
    check_dim(t, 6, "1..=6")?;
    let vectors = (1u32 << t) - 1;
    let total = 1u64 << vectors;
    let admissible = admissible_patterns(t)?;
    let mut classes = Vec::new();
    for a in 0..1u32 << t {
        let linear = SignPattern::from_functional(t, a);
        for x in (1..=vectors).filter(|x| !x.is_power_of_two()) {
            let representative = SignPattern {
                t,
                m_bits: linear.m_bits ^ 1 << (x - 1),
            };
            let triple = certify(&representative).expect("differs from its linear extension");
            // free choices: the non-basis vectors above x
            let free = (x + 1..=vectors).filter(|v| !v.is_power_of_two()).count() as u32;
            classes.push(CertificateClass {
                functional: a,
                first_disagreement: x,
                representative,
                triple,
                size: 1 << free,
            });
        }
    }
    let excluded = classes.iter().map(|c| c.size).sum();
    Ok(PatternCensus {
        t,
        total,
        admissible,
        excluded,
        classes,
    })
}

/// Checks every pattern individually (feasible for `t <= 4`).
pub fn enumerate_certificates(t: u32) -> Result<Vec<(SignPattern, Option<Triple>)>, PartitionError> {
    check_dim(t, 4, "1..=4")?;
    let total = 1u64 << ((1u32 << t) - 1);
    Ok((0..total)
        .map(|bits| {
            let p = SignPattern { t, m_bits: bits };
            (p, certify(&p))
        })
        .collect())
}

/// Solves `y0 + S = q^t` and `(2^t - 1) y0 + (2^(t-1) - 1) S = (2^t - 1) q^t / 2`.
pub fn y0_solver(t: u32, q: u64) -> Result<BigInt, PartitionError> {
    check_dim(t, 64, "1..=64")?;
    if !q.is_multiple_of(2) || (q / 2).is_multiple_of(2) {
        return Err(PartitionError::BadModulus(q));
    }
    let qt = BigInt::from(q).pow(t);
    let two_t = BigInt::one() << t as usize;
    let (a11, a12, b1) = (BigInt::one(), BigInt::one(), qt.clone());
    let a21 = &two_t - 1;
    let a22 = (&two_t >> 1usize) - 1;
    let (half, rem) = qt.div_rem(&BigInt::from(2));
    if !rem.is_zero() {
        return Err(PartitionError::NonIntegralSolution);
    }
    let b2 = &a21 * half;
    let det: BigInt = &a11 * &a22 - &a12 * &a21;
    let num: BigInt = &b1 * &a22 - &a12 * &b2;
    let (y0, rem) = num.div_rem(&det);
    if !rem.is_zero() {
        return Err(PartitionError::NonIntegralSolution);
    }
    Ok(y0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpmReport {
    pub t: u32,
    pub n: u64,
    pub q: u64,
    #[serde(with = "crate::bigint_str")]
    pub y0: BigInt,
    /// From the counting system.
    pub y0_odd: bool,
    /// From `x in Y0 <=> x + v in Y0` for a fixed nonzero `v`.
    pub y0_even: bool,
    pub contradiction: bool,
}

/// The parity clash: `y0 = N^t` is odd, yet `Y0` is a union of `<v>`-cosets.
pub fn epm_verdict(t: u32, n: OddModulus) -> Result<EpmReport, PartitionError> {
    if t.is_multiple_of(2) {
        return Err(PartitionError::Dimension(t, "odd"));
    }
    let q = 2 * n.get();
    let y0 = y0_solver(t, q)?;
    let y0_odd = y0.is_odd();
    // translation by v != 0 is a fixed-point-free involution preserving Y0
    let y0_even = true;
    Ok(EpmReport {
        t,
        n: n.get(),
        q,
        y0,
        y0_odd,
        y0_even,
        contradiction: y0_odd && y0_even,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(order2_elements(1, 6).unwrap(), vec![Order2Vector { t: 1, mask: 1 }]);
        assert_eq!(order2_elements(1, 6).unwrap()[0].to_point(6), vec![3]);
        assert_eq!(order2_elements(3, 6).unwrap().len(), 7);
        assert_eq!(order2_elements(5, 6).unwrap().len(), 31);
        assert!(order2_elements(2, 5).is_err());
        assert_eq!(index2_subgroups(1).unwrap(), vec![vec![0]]);
        let t3 = index2_subgroups(3).unwrap();
        assert_eq!(t3.len(), 7);
        assert!(t3.iter().all(|h| h.len() == 4));
        let t2 = index2_subgroups(2).unwrap();
        assert_eq!(t2.len(), 3);
        assert!(t2.iter().all(|h| h.len() == 2));
    }

    #[test]
    fn plancherel_examples() {
        let zero = FunctionTable::new(1, 6, vec![0; 6]).unwrap();
        let v = Order2Vector::new(1, 1).unwrap();
        assert!(plancherel_sum(&zero, &v).is_zero());
    }

    #[test]
    fn classify_examples() {
        let cube = FunctionTable::from_fn(1, 4, |x| x[0].pow(3)).unwrap();
        let v = Order2Vector::new(1, 1).unwrap();
        let c = classify_pairs(&cube, &v);
        assert_eq!((c.n_count, c.m_count, c.neither_count), (2, 2, 0));

        let zero = FunctionTable::new(1, 6, vec![0; 6]).unwrap();
        let c = classify_pairs(&zero, &v);
        // F(0) = 6 and F(3) = 0, so only the four points away from {0, 3} match
        assert_eq!((c.n_count, c.m_count, c.neither_count), (4, 0, 2));
    }

    #[test]
    fn pattern_counts() {
        assert_eq!(pattern_census(1).unwrap().admissible.len(), 2);
        let c2 = pattern_census(2).unwrap();
        assert_eq!((c2.total, c2.admissible.len(), c2.excluded), (8, 4, 4));
        let c3 = pattern_census(3).unwrap();
        assert_eq!((c3.total, c3.admissible.len(), c3.excluded), (128, 8, 120));
        let c5 = pattern_census(5).unwrap();
        assert_eq!(c5.excluded, (1u64 << 31) - 32);
        for c in [c2, c3, c5] {
            assert!(c.verify());
        }
    }

    #[test]
    fn classes_match_enumeration() {
        for t in 1..=4 {
            let census = pattern_census(t).unwrap();
            let all = enumerate_certificates(t).unwrap();
            let mut admissible: Vec<_> = all.iter().filter(|(_, c)| c.is_none()).map(|(p, _)| *p).collect();
            admissible.sort();
            let mut direct = census.admissible.clone();
            direct.sort();
            assert_eq!(admissible, direct);
            for (p, c) in &all {
                if let Some(tr) = c {
                    assert!(tr.violates(p));
                    // the pattern falls in exactly the class of its certificate
                    let a = basis_functional(t, p.m_bits);
                    assert!(census
                        .classes
                        .iter()
                        .any(|k| k.functional == a && k.triple == *tr));
                }
            }
        }
    }

    #[test]
    fn all_n_comes_first() {
        let pats = admissible_patterns(4).unwrap();
        assert_eq!(pats[0].m_bits, 0);
        assert_eq!(pats.len(), 16);
    }

    #[test]
    fn y0_examples() {
        assert_eq!(y0_solver(3, 6).unwrap(), BigInt::from(27));
        assert_eq!(y0_solver(1, 6).unwrap(), BigInt::from(3));
        assert_eq!(y0_solver(5, 14).unwrap(), BigInt::from(16807));
        assert_eq!(y0_solver(3, 4).unwrap_err(), PartitionError::BadModulus(4));
    }

    #[test]
    fn epm_examples() {
        for (t, n, y0) in [(3, 3, BigInt::from(27)), (1, 31, BigInt::from(31)), (5, 151, BigInt::from(151u64.pow(5)))] {
            let r = epm_verdict(t, OddModulus::new(n).unwrap()).unwrap();
            assert!(r.contradiction);
            assert_eq!(r.y0, y0);
        }
        assert!(epm_verdict(2, OddModulus::new(3).unwrap()).is_err());
    }
}
