//! Stickelberger relation matrices and integer Hermite normal forms.
//!
//! For a prime `p = 7 (mod 8)` let `f = ord_p(2)`, `g = (p - 1) / f` and
//! `u = g / 2`. The unknowns `x_1, ..., x_g` are the classes of the primes
//! above 2 in the decomposition field, labelled through a primitive root `w`.
//! Each row of the relation matrix is one linear relation `sum_s r_s x_s = 0`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numtheory::{gcd, mult_order, primitive_root, wieferich_free, OddModulus};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StickelbergerError {
    #[error("{0} is not a prime = 7 (mod 8)")]
    BadResidue(u64),
    #[error("2^({0}-1) = 1 (mod {0}^2)")]
    WieferichViolation(u64),
    #[error("c = {0} is not coprime to p = {1}")]
    NotCoprime(u64, u64),
    #[error("{0} is not a primitive root mod {1}")]
    NotPrimitiveRoot(u64, u64),
    #[error("malformed matrix dump: {0}")]
    Parse(String),
}

/// `floor(c a / p)`.
pub fn k_coeff(c: u64, a: u64, p: u64) -> u64 {
    ((c as u128 * a as u128) / p as u128) as u64
}

/// Splitting data of 2 in `Q(zeta_p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Splitting {
    pub p: u64,
    pub f: u64,
    pub g: u64,
    pub u: u64,
}

impl Splitting {
    pub fn new(p: u64) -> Result<Splitting, StickelbergerError> {
        let m = OddModulus::new(p).map_err(|_| StickelbergerError::BadResidue(p))?;
        let f = mult_order(2, m).map_err(|_| StickelbergerError::BadResidue(p))?;
        let g = (p - 1) / f;
        Ok(Splitting { p, f, g, u: g / 2 })
    }
}

/// `(m_{c,1}, ..., m_{c,g})` with `m_{c,s} = sum_t k_{c, w^(s - 1 - t g)}`.
pub fn stickelberger_row(c: u64, p: u64, w: u64) -> Result<Vec<i64>, StickelbergerError> {
    if gcd(c, p) != 1 {
        return Err(StickelbergerError::NotCoprime(c, p));
    }
    let sp = Splitting::new(p)?;
    Ok(row_with(c, sp, w))
}

fn row_with(c: u64, sp: Splitting, w: u64) -> Vec<i64> {
    let n = sp.p - 1;
    let m = OddModulus::new(sp.p).expect("odd prime");
    (1..=sp.g)
        .map(|s| {
            (0..sp.f)
                .map(|t| {
                    let e = (s - 1 + n - (t * sp.g) % n) % n;
                    let a = crate::numtheory::pow_mod(w, e, m.get());
                    k_coeff(c, a, sp.p) as i64
                })
                .sum()
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RowTag {
    Stickelberger(u64),
    NormSum,
    /// `x_k + x_{u+k}`, 1-based `k`.
    Conjugation(u64),
}

impl fmt::Display for RowTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowTag::Stickelberger(c) => write!(f, "stickelberger({c})"),
            RowTag::NormSum => write!(f, "norm_sum"),
            RowTag::Conjugation(k) => write!(f, "conjugation({k})"),
        }
    }
}

impl FromStr for RowTag {
    type Err = StickelbergerError;

    fn from_str(s: &str) -> Result<RowTag, StickelbergerError> {
        let arg = |prefix: &str| -> Option<u64> {
            s.strip_prefix(prefix)?.strip_suffix(')')?.parse().ok()
        };
        if s == "norm_sum" {
            Ok(RowTag::NormSum)
        } else if let Some(c) = arg("stickelberger(") {
            Ok(RowTag::Stickelberger(c))
        } else if let Some(k) = arg("conjugation(") {
            Ok(RowTag::Conjugation(k))
        } else {
            Err(StickelbergerError::Parse(format!("unknown row tag {s:?}")))
        }
    }
}

/// Tagged rows over the `g` unknowns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationMatrix {
    pub splitting: Splitting,
    pub root: u64,
    pub rows: Vec<Vec<i64>>,
    pub tags: Vec<RowTag>,
}

impl RelationMatrix {
    pub fn dims(&self) -> (usize, usize) {
        (self.rows.len(), self.splitting.g as usize)
    }

    /// Whether every row vanishes on `x` modulo `d`.
    pub fn satisfied_by(&self, x: &[i64], d: u64) -> bool {
        self.rows.iter().all(|r| {
            let s: i128 = r.iter().zip(x).map(|(&a, &b)| a as i128 * b as i128).sum();
            s.rem_euclid(d as i128) == 0
        })
    }
}

/// Relation matrix built with the least primitive root.
pub fn assemble_relations(p: u64) -> Result<RelationMatrix, StickelbergerError> {
    check_prime(p)?;
    let w = primitive_root(p).map_err(|_| StickelbergerError::BadResidue(p))?;
    assemble_relations_with_root(p, w)
}

fn check_prime(p: u64) -> Result<(), StickelbergerError> {
    if p % 8 != 7 || !crate::numtheory::is_prime(p) {
        return Err(StickelbergerError::BadResidue(p));
    }
    if !wieferich_free(p).map_err(|_| StickelbergerError::BadResidue(p))? {
        return Err(StickelbergerError::WieferichViolation(p));
    }
    Ok(())
}

pub fn assemble_relations_with_root(p: u64, w: u64) -> Result<RelationMatrix, StickelbergerError> {
    check_prime(p)?;
    let m = OddModulus::new(p).expect("odd prime");
    if mult_order(w as i64, m).ok() != Some(p - 1) {
        return Err(StickelbergerError::NotPrimitiveRoot(w, p));
    }
    let sp = Splitting::new(p)?;
    let (g, u) = (sp.g as usize, sp.u as usize);
    let mut rows = Vec::with_capacity(p as usize + u);
    let mut tags = Vec::with_capacity(p as usize + u);
    for c in 1..p {
        rows.push(row_with(c, sp, w));
        tags.push(RowTag::Stickelberger(c));
    }
    rows.push(vec![1; g]);
    tags.push(RowTag::NormSum);
    for k in 0..u {
        let mut r = vec![0; g];
        r[k] = 1;
        r[u + k] = 1;
        rows.push(r);
        tags.push(RowTag::Conjugation(k as u64 + 1));
    }
    Ok(RelationMatrix {
        splitting: sp,
        root: w,
        rows,
        tags,
    })
}

/// The relation matrix after substituting `x_{u+k} = -x_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldedMatrix {
    pub u: usize,
    pub rows: Vec<Vec<i64>>,
    pub tags: Vec<RowTag>,
}

/// Column `k` becomes column `k` minus column `u + k`; conjugation rows
/// fold to zero and are dropped, all other rows are kept.
pub fn eliminate_conjugation(m: &RelationMatrix) -> FoldedMatrix {
    let u = m.splitting.u as usize;
    let mut rows = Vec::new();
    let mut tags = Vec::new();
    for (r, tag) in m.rows.iter().zip(&m.tags) {
        let folded: Vec<i64> = (0..u).map(|k| r[k] - r[u + k]).collect();
        if let RowTag::Conjugation(_) = tag {
            debug_assert!(folded.iter().all(|&v| v == 0));
            continue;
        }
        rows.push(folded);
        tags.push(*tag);
    }
    FoldedMatrix { u, rows, tags }
}

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn to_big(m: &[Vec<i64>]) -> IntMatrix {
    m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner, "dimension mismatch");
            (0..cols)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .filter(|(x, _)| !x.is_zero())
                        .map(|(x, br)| x * &br[j])
                        .sum()
                })
                .collect()
        })
        .collect()
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut a: IntMatrix = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &a[n - 1][n - 1]
}

/// Column-style Hermite normal form `H = A U`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HnfResult {
    #[serde(with = "big_matrix")]
    pub h: IntMatrix,
    #[serde(with = "big_matrix")]
    pub u: IntMatrix,
    /// `pivot_rows[j]` holds the pivot of column `j`, for `j < rank`.
    pub pivot_rows: Vec<usize>,
    #[serde(with = "big_vec")]
    pub pivots: Vec<BigInt>,
}

impl HnfResult {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// The nonzero columns of `H`.
    pub fn block(&self) -> IntMatrix {
        self.h.iter().map(|r| r[..self.rank()].to_vec()).collect()
    }

    pub fn block_i64(&self) -> Vec<Vec<i64>> {
        self.block()
            .iter()
            .map(|r| r.iter().map(|v| v.to_i64().expect("entry fits in i64")).collect())
            .collect()
    }

    /// Checks the HNF shape, `A U = H` and `|det U| = 1`.
    pub fn verify(&self, a: &[Vec<BigInt>]) -> bool {
        is_hnf(&self.h, &self.pivot_rows) && mat_mul(a, &self.u) == self.h && determinant(&self.u).abs().is_one()
    }
}

/// Shape check: pivot rows increase from left to right, pivots are
/// positive with zeros below, entries to the right of a pivot lie in
/// `[0, pivot)`, and zero columns follow the pivot columns.
pub fn is_hnf(h: &[Vec<BigInt>], pivot_rows: &[usize]) -> bool {
    let cols = h.first().map_or(0, Vec::len);
    let rank = pivot_rows.len();
    if pivot_rows.windows(2).any(|w| w[0] >= w[1]) {
        return false;
    }
    for (j, &r) in pivot_rows.iter().enumerate() {
        let piv = &h[r][j];
        if !piv.is_positive() {
            return false;
        }
        if (r + 1..h.len()).any(|i| !h[i][j].is_zero()) {
            return false;
        }
        if (j + 1..cols).any(|k| h[r][k].is_negative() || &h[r][k] >= piv) {
            return false;
        }
    }
    (rank..cols).all(|j| h.iter().all(|row| row[j].is_zero()))
}

/// Hermite normal form under unimodular column operations.
///
/// Rows are processed bottom-up; the pivot of each row is the gcd of its
/// still-free entries, found by repeated Euclidean reduction.
pub fn hermite_normal_form(a: &[Vec<BigInt>]) -> HnfResult {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut cols: Vec<Vec<BigInt>> = transpose(a);
    if cols.is_empty() {
        cols = vec![Vec::new(); n];
    }
    let mut ucols: Vec<Vec<BigInt>> = identity(n);
    // the identity is symmetric, so rows serve as columns
    let axpy = |cols: &mut Vec<Vec<BigInt>>, dst: usize, src: usize, q: &BigInt| {
        let (s, d) = if src < dst {
            let (lo, hi) = cols.split_at_mut(dst);
            (&lo[src], &mut hi[0])
        } else {
            let (lo, hi) = cols.split_at_mut(src);
            (&hi[0], &mut lo[dst])
        };
        for (x, y) in d.iter_mut().zip(s) {
            if !y.is_zero() {
                *x -= q * y;
            }
        }
    };
    let mut k = n;
    let mut pivots_rev = Vec::new();
    for i in (0..m).rev() {
        if k == 0 {
            break;
        }
        loop {
            let nz: Vec<usize> = (0..k).filter(|&j| !cols[j][i].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let j0 = *nz
                .iter()
                .min_by(|&&x, &&y| cols[x][i].abs().cmp(&cols[y][i].abs()).then(x.cmp(&y)))
                .expect("nonempty");
            let piv = cols[j0][i].clone();
            for &j in &nz {
                if j != j0 {
                    let q = cols[j][i].div_floor(&piv);
                    axpy(&mut cols, j, j0, &q);
                    axpy(&mut ucols, j, j0, &q);
                }
            }
        }
        let Some(j0) = (0..k).find(|&j| !cols[j][i].is_zero()) else {
            continue;
        };
        k -= 1;
        cols.swap(j0, k);
        ucols.swap(j0, k);
        if cols[k][i].is_negative() {
            for v in cols[k].iter_mut().chain(ucols[k].iter_mut()) {
                *v = -&*v;
            }
        }
        let piv = cols[k][i].clone();
        for j in k + 1..n {
            let q = cols[j][i].div_floor(&piv);
            if !q.is_zero() {
                axpy(&mut cols, j, k, &q);
                axpy(&mut ucols, j, k, &q);
            }
        }
        pivots_rev.push(i);
    }
    // move the pivot columns in front of the zero columns
    cols.rotate_left(k);
    ucols.rotate_left(k);
    let pivot_rows: Vec<usize> = pivots_rev.into_iter().rev().collect();
    let pivots = pivot_rows
        .iter()
        .enumerate()
        .map(|(j, &r)| cols[j][r].clone())
        .collect();
    HnfResult {
        h: if m == 0 { Vec::new() } else { transpose(&cols) },
        u: transpose(&ucols),
        pivot_rows,
        pivots,
    }
}

/// HNF of the transposed folded matrix: its leading block is upper
/// triangular with one column per unknown `x_1, ..., x_u`.
pub fn relation_hnf(folded: &FoldedMatrix) -> HnfResult {
    hermite_normal_form(&to_big(&transpose(&folded.rows)))
}

/// Plain-text dump: a header `# matrix R C` with optional `tags=...`, then
/// one line of space-separated integers per row.
pub fn format_matrix<T: fmt::Display>(rows: &[Vec<T>], tags: Option<&[RowTag]>) -> String {
    let cols = rows.first().map_or(0, Vec::len);
    let mut out = format!("# matrix {} {}", rows.len(), cols);
    if let Some(tags) = tags {
        let t: Vec<String> = tags.iter().map(RowTag::to_string).collect();
        out.push_str(&format!(" tags={}", t.join(",")));
    }
    out.push('\n');
    for r in rows {
        let line: Vec<String> = r.iter().map(T::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub type ParsedMatrix = (IntMatrix, Option<Vec<RowTag>>);

pub fn parse_matrix(text: &str) -> Result<ParsedMatrix, StickelbergerError> {
    let bad = |m: &str| StickelbergerError::Parse(m.to_string());
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| bad("empty input"))?;
    let mut parts = header
        .strip_prefix("# matrix ")
        .ok_or_else(|| bad("missing header"))?
        .split_whitespace();
    let dim = |s: Option<&str>| -> Result<usize, StickelbergerError> {
        s.ok_or_else(|| bad("missing dimension"))?
            .parse()
            .map_err(|_| bad("bad dimension"))
    };
    let (r, c) = (dim(parts.next())?, dim(parts.next())?);
    let tags = match parts.next() {
        Some(t) => {
            let list = t.strip_prefix("tags=").ok_or_else(|| bad("bad tag field"))?;
            let tags = list.split(',').map(RowTag::from_str).collect::<Result<Vec<_>, _>>()?;
            if tags.len() != r {
                return Err(bad("tag count differs from row count"));
            }
            Some(tags)
        }
        None => None,
    };
    let rows: IntMatrix = lines
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            l.split_whitespace()
                .map(|v| v.parse::<BigInt>().map_err(|_| bad("bad entry")))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
        return Err(bad("dimensions do not match the header"));
    }
    Ok((rows, tags))
}

mod big_matrix {
    use super::IntMatrix;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &IntMatrix, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<IntMatrix, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        rows.into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|v| v.parse().map_err(serde::de::Error::custom))
                    .collect()
            })
            .collect()
    }
}

mod big_vec {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?
            .into_iter()
            .map(|v| v.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(m: &[&[i64]]) -> IntMatrix {
        m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    #[test]
    fn k_coeff_examples() {
        assert!((1..31).all(|a| k_coeff(1, a, 31) == 0));
        assert_eq!(k_coeff(30, 17, 31), 16);
        assert!((1..31).all(|a| k_coeff(30, a, 31) == a - 1));
    }

    #[test]
    fn rows_and_shapes() {
        assert_eq!(stickelberger_row(1, 31, 3).unwrap(), vec![0; 6]);
        assert_eq!(stickelberger_row(31, 31, 3).unwrap_err(), StickelbergerError::NotCoprime(31, 31));
        assert_eq!(assemble_relations(31).unwrap().dims(), (34, 6));
        assert_eq!(assemble_relations(151).unwrap().dims(), (156, 10));
        assert_eq!(assemble_relations(7).unwrap().dims(), (8, 2));
        assert_eq!(assemble_relations(13).unwrap_err(), StickelbergerError::BadResidue(13));
        assert_eq!(
            assemble_relations_with_root(31, 2).unwrap_err(),
            StickelbergerError::NotPrimitiveRoot(2, 31)
        );
    }

    #[test]
    fn folding() {
        let m = assemble_relations(31).unwrap();
        let f = eliminate_conjugation(&m);
        assert_eq!(f.rows.len(), 31);
        assert_eq!(f.tags[30], RowTag::NormSum);
        assert_eq!(f.rows[30], vec![0, 0, 0]);
    }

    #[test]
    fn hnf_small() {
        let id = big(&[&[1, 0], &[0, 1]]);
        let r = hermite_normal_form(&id);
        assert_eq!(r.h, id);
        assert_eq!(r.u, id);
        let a = big(&[&[4, 2], &[0, 2]]);
        let r = hermite_normal_form(&a);
        assert_eq!(r.h, a);
        assert!(r.verify(&a));
        let a = big(&[&[2, 3, 4], &[0, 0, 0]]);
        let r = hermite_normal_form(&a);
        assert_eq!(r.h, big(&[&[1, 0, 0], &[0, 0, 0]]));
        assert!(r.verify(&a));
    }

    #[test]
    fn hnf_p31() {
        let h = relation_hnf(&eliminate_conjugation(&assemble_relations(31).unwrap()));
        assert_eq!(h.block_i64(), vec![vec![18, 14, 3], vec![0, 2, 1], vec![0, 0, 1]]);
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&big(&[&[2, 1], &[7, 4]])), BigInt::from(1));
        assert_eq!(determinant(&big(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 5]])), BigInt::from(-5));
        assert_eq!(determinant(&big(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }

    #[test]
    fn dump_round_trip() {
        let m = assemble_relations(7).unwrap();
        let text = format_matrix(&m.rows, Some(&m.tags));
        assert!(text.starts_with("# matrix 8 2 tags=stickelberger(1),"));
        let (rows, tags) = parse_matrix(&text).unwrap();
        assert_eq!(rows, to_big(&m.rows));
        assert_eq!(tags.unwrap(), m.tags);
        assert!(parse_matrix("# matrix 2 2\n1 2\n").is_err());
    }
}
