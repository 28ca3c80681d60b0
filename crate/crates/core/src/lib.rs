//! Exact-arithmetic verdict engine for generalized bent functions (GBFs).
//!
//! A function `f: Z_q^n -> Z_q` is a GBF when its Fourier transform has
//! `|F(lambda)|^2 = q^n` at every point. For `n` odd and `q = 2N` with `N`
//! odd, this crate certifies non-existence for concrete types through a
//! chain of exact computations:
//!
//! * [`numtheory`]: orders, primitive roots, Euler phi.
//! * [`quadforms`]: reduced binary quadratic forms of discriminant `-p`,
//!   the class group of `Q(sqrt(-p))`.
//! * [`cyclotomic`]: exact arithmetic in `Z[zeta_q]`, the GBF predicate and
//!   an exhaustive search oracle.
//! * [`partition`]: the order-2 shift counting argument.
//! * [`stickelberger`]: Stickelberger relation matrices and integer Hermite
//!   normal forms.
//! * [`classrel`]: order resolution in the class group of the decomposition
//!   field and the Diophantine solution search.
//! * [`verdict`]: theorem checkers producing replayable evidence chains.

pub mod classrel;
pub mod cyclotomic;
pub mod numtheory;
pub mod partition;
pub mod quadforms;
pub mod reference;
pub mod stickelberger;
pub mod verdict;

/// Serde adapter writing big integers as decimal strings.
pub mod bigint_str {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}
