//! Positive definite binary quadratic forms `ax^2 + bxy + cy^2` of
//! discriminant `-p`, `p = 3 (mod 4)`.
//!
//! Reduced forms model the class group of `Q(sqrt(-p))`; composition is the
//! classical Dirichlet composition followed by Gauss reduction.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numtheory::is_prime;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("form ({0}, {1}, {2}) is not positive definite")]
    NotPositiveDefinite(i64, i64, i64),
    #[error("form ({0}, {1}, {2}) is not primitive")]
    NotPrimitive(i64, i64, i64),
    #[error("discriminants differ: {0} vs {1}")]
    DiscMismatch(i64, i64),
    #[error("{0} does not satisfy the required residue condition ({1})")]
    BadResidue(u64, &'static str),
    #[error("no odd m <= {0} solves x^2 + p y^2 = 2^(m+2)")]
    CapExceeded(u64),
    #[error("m cap {0} is beyond the supported range (<= 125)")]
    CapTooLarge(u64),
}

/// A reduced primitive positive definite form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadForm {
    pub fn disc(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    /// Reduces an arbitrary primitive positive definite form.
    pub fn reduce(a: i64, b: i64, c: i64) -> Result<QuadForm, FormError> {
        let disc = b as i128 * b as i128 - 4 * a as i128 * c as i128;
        if a <= 0 || disc >= 0 {
            return Err(FormError::NotPositiveDefinite(a, b, c));
        }
        if a.gcd(&b).gcd(&c) != 1 {
            return Err(FormError::NotPrimitive(a, b, c));
        }
        let (mut a, mut b, mut c) = (a as i128, b as i128, c as i128);
        loop {
            // normalize b into (-a, a]
            if b <= -a || b > a {
                let two_a = 2 * a;
                let k = (a - b).div_euclid(two_a);
                let nb = b + k * two_a;
                c = (nb * nb - disc) / (4 * a);
                b = nb;
            }
            if a > c {
                std::mem::swap(&mut a, &mut c);
                b = -b;
                continue;
            }
            if a == c && b < 0 {
                b = -b;
            }
            break;
        }
        Ok(QuadForm {
            a: a as i64,
            b: b as i64,
            c: c as i64,
        })
    }

    /// The principal form of discriminant `disc = 1 (mod 4)`.
    pub fn identity(disc: i64) -> QuadForm {
        debug_assert!(disc < 0 && disc.rem_euclid(4) == 1);
        QuadForm {
            a: 1,
            b: 1,
            c: (1 - disc) / 4,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.a == 1
    }

    pub fn inverse(&self) -> QuadForm {
        QuadForm::reduce(self.a, -self.b, self.c).expect("inverse of a reduced form")
    }

    /// Dirichlet composition.
    pub fn compose(&self, other: &QuadForm) -> Result<QuadForm, FormError> {
        let disc = self.disc();
        if disc != other.disc() {
            return Err(FormError::DiscMismatch(disc, other.disc()));
        }
        let (a1, b1) = (self.a as i128, self.b as i128);
        let (a2, b2, c2) = (other.a as i128, other.b as i128, other.c as i128);
        let beta = (b1 + b2) / 2;
        // u a1 + v a2 + w beta = e
        let g1 = a1.extended_gcd(&a2);
        let g2 = g1.gcd.extended_gcd(&beta);
        let e = g2.gcd;
        let (v, w) = (g1.y * g2.x, g2.y);
        let a3 = a1 * a2 / (e * e);
        // B = b2 + 2 (a2 / e) (v (beta - b2) - w c2)
        let b3 = b2 + 2 * (a2 / e) * (v * (beta - b2) - w * c2);
        let b3 = b3.rem_euclid(2 * a3);
        let c3 = (b3 * b3 - disc as i128) / (4 * a3);
        QuadForm::reduce(a3 as i64, b3 as i64, c3 as i64)
    }

    /// Order in the form class group.
    pub fn order(&self) -> u64 {
        let mut acc = *self;
        let mut k = 1;
        while !acc.is_identity() {
            acc = acc.compose(self).expect("same discriminant");
            k += 1;
        }
        k
    }
}

impl std::fmt::Display for QuadForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

pub fn reduce_form(a: i64, b: i64, c: i64) -> Result<QuadForm, FormError> {
    QuadForm::reduce(a, b, c)
}

pub fn compose_forms(f: &QuadForm, g: &QuadForm) -> Result<QuadForm, FormError> {
    f.compose(g)
}

pub fn form_order(f: &QuadForm) -> u64 {
    f.order()
}

fn check_residue(p: u64, modulus: u64, residue: u64, label: &'static str) -> Result<(), FormError> {
    if p % modulus != residue || !is_prime(p) {
        return Err(FormError::BadResidue(p, label));
    }
    Ok(())
}

/// All reduced primitive forms of discriminant `-p`, sorted.
pub fn reduced_forms(p: u64) -> Result<Vec<QuadForm>, FormError> {
    check_residue(p, 4, 3, "prime = 3 mod 4")?;
    let n = p as i64;
    let mut out = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= n {
        for b in -a + 1..=a {
            if (b * b + n) % (4 * a) != 0 {
                continue;
            }
            let c = (b * b + n) / (4 * a);
            if c < a || (a == c && b < 0) {
                continue;
            }
            if a.gcd(&b).gcd(&c) == 1 {
                out.push(QuadForm { a, b, c });
            }
        }
        a += 1;
    }
    out.sort();
    Ok(out)
}

/// Class number of `Q(sqrt(-p))` for a prime `p = 3 (mod 4)`.
pub fn class_number_neg(p: u64) -> Result<u64, FormError> {
    Ok(reduced_forms(p)?.len() as u64)
}

/// The reduced class of `(2, 1, (1 + p) / 8)`, a prime ideal above 2.
pub fn prime_form_over_2(p: u64) -> Result<QuadForm, FormError> {
    check_residue(p, 8, 7, "prime = 7 mod 8")?;
    QuadForm::reduce(2, 1, ((1 + p) / 8) as i64)
}

/// Default search cap for [`smallest_odd_m`].
pub const DEFAULT_M_CAP: u64 = 99;

/// Least odd `m <= m_cap` such that `x^2 + p y^2 = 2^(m+2)` is solvable in integers.
pub fn smallest_odd_m(p: u64, m_cap: u64) -> Result<u64, FormError> {
    check_residue(p, 8, 7, "prime = 7 mod 8")?;
    if m_cap > 125 {
        return Err(FormError::CapTooLarge(m_cap));
    }
    let p = p as u128;
    let mut m = 1;
    while m <= m_cap {
        let target: u128 = 1 << (m + 2);
        let mut y: u128 = 1;
        while p * y * y <= target {
            let rest = target - p * y * y;
            let x = rest.isqrt();
            if x * x == rest {
                return Ok(m);
            }
            y += 1;
        }
        m += 2;
    }
    Err(FormError::CapExceeded(m_cap))
}
