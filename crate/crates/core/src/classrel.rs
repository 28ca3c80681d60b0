//! Order resolution for `x_1` in the class group of the decomposition field
//! and the search for nonnegative solutions of the class relation.
//!
//! Only the cyclic subgroup generated by `x_1` is modelled: every `x_k` is a
//! residue modulo the candidate order `d`, with `x_1 = 1`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numtheory::{divisors, gcd, inv_mod};
use crate::quadforms::{form_order, prime_form_over_2, FormError};
use crate::stickelberger::{
    assemble_relations, assemble_relations_with_root, eliminate_conjugation, relation_hnf, FoldedMatrix,
    HnfResult, RelationMatrix, Splitting, StickelbergerError,
};

/// Default odd bound for [`find_n0`].
pub const DEFAULT_N_MAX: u64 = 21;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassRelError {
    #[error("pivot H[{0}][{0}] is not invertible modulo {1}")]
    PivotNotInvertible(usize, u64),
    #[error("no solution for odd n <= {0}")]
    NoSolutionBelowCap(u64),
    #[error("relation matrix has rank below u")]
    RankDeficient,
    #[error(transparent)]
    Relations(#[from] StickelbergerError),
    #[error(transparent)]
    Forms(#[from] FormError),
}

/// Parity of the relative class number of `Q(zeta_p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MinusParity {
    Odd,
    Even,
    Unknown,
}

/// Bundled parities from the standard relative class number tables.
const MINUS_PARITY_TABLE: &[(u64, MinusParity, &str)] = &[
    (7, MinusParity::Odd, "h(Q(zeta_7)) = 1"),
    (23, MinusParity::Odd, "h(Q(zeta_23)) = 3"),
    (31, MinusParity::Odd, "h^-(Q(zeta_31)) = 9"),
    (151, MinusParity::Odd, "h^-(Q(zeta_151)) is odd"),
];

pub fn minus_parity(p: u64) -> MinusParity {
    MINUS_PARITY_TABLE
        .iter()
        .find(|(q, _, _)| *q == p)
        .map_or(MinusParity::Unknown, |e| e.1)
}

pub fn minus_parity_source(p: u64) -> Option<String> {
    MINUS_PARITY_TABLE
        .iter()
        .find(|(q, _, _)| *q == p)
        .map(|(_, _, src)| format!("relative class number table: {src}"))
}

/// Back-substitution through the columns of the upper-triangular block:
/// `x_1 = 1` and `x_j = -H[j][j]^-1 sum_{i<j} H[i][j] x_i (mod d)`, then
/// `x_{u+k} = -x_k`. Residues lie in `[0, d)`.
pub fn solve_x_vector(h: &[Vec<i64>], d: u64) -> Result<Vec<i64>, ClassRelError> {
    let u = h.len();
    let di = d as i64;
    let mut x = vec![0i64; u];
    if u == 0 {
        return Ok(x);
    }
    x[0] = 1 % di;
    for j in 1..u {
        let piv = h[j][j].rem_euclid(di) as u64;
        let inv = inv_mod(piv, d).ok_or(ClassRelError::PivotNotInvertible(j + 1, d))? as i128;
        let s: i128 = (0..j).map(|i| h[i][j] as i128 * x[i] as i128).sum();
        x[j] = (-inv * s).rem_euclid(d as i128) as i64;
    }
    let neg: Vec<i64> = x.iter().map(|&v| (-v).rem_euclid(di)).collect();
    x.extend(neg);
    Ok(x)
}

/// Representative in `(-d/2, d/2]`.
pub fn balanced(v: i64, d: u64) -> i64 {
    let d = d as i64;
    let r = v.rem_euclid(d);
    if 2 * r > d {
        r - d
    } else {
        r
    }
}

/// `s = sum_{k odd} x_k` (1-based) and its additive order in `Z/d`.
pub fn odd_index_sum(x: &[i64], d: u64) -> (u64, u64) {
    let s = x
        .iter()
        .step_by(2)
        .fold(0i128, |acc, &v| acc + v as i128)
        .rem_euclid(d as i128) as u64;
    (s, d / gcd(s, d))
}

/// The primes above `p_F` are the odd-indexed ones, so their sum must have
/// the order of `p_F`.
pub fn quad_order_constraint(x: &[i64], d: u64, q_ord: u64) -> bool {
    odd_index_sum(x, d).1 == q_ord
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateCheck {
    pub d: u64,
    pub x_vec: Option<Vec<i64>>,
    pub odd_sum: Option<u64>,
    pub odd_sum_order: Option<u64>,
    pub passes: bool,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Resolution {
    Resolved(u64),
    Inconclusive(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderResolution {
    pub pivot: i64,
    pub candidates: Vec<CandidateCheck>,
    pub survivors: Vec<u64>,
    pub outcome: Resolution,
}

/// Candidate orders are the odd divisors of `H[1][1]`; each must admit an
/// x-vector passing [`quad_order_constraint`].
pub fn resolve_order(h: &[Vec<i64>], q_ord: u64, parity: MinusParity) -> OrderResolution {
    let pivot = h.first().and_then(|r| r.first()).copied().unwrap_or(0);
    if parity != MinusParity::Odd {
        return OrderResolution {
            pivot,
            candidates: Vec::new(),
            survivors: Vec::new(),
            outcome: Resolution::Inconclusive(format!("relative class number parity is {parity:?}")),
        };
    }
    let mut odd = pivot.unsigned_abs();
    while odd % 2 == 0 && odd > 0 {
        odd /= 2;
    }
    let candidates: Vec<CandidateCheck> = divisors(odd).into_iter().map(|d| examine(h, d, q_ord)).collect();
    let survivors: Vec<u64> = candidates.iter().filter(|c| c.passes).map(|c| c.d).collect();
    let outcome = match survivors.as_slice() {
        [d] => Resolution::Resolved(*d),
        [] => Resolution::Inconclusive("no candidate order survives".into()),
        many => Resolution::Inconclusive(format!("several candidate orders survive: {many:?}")),
    };
    OrderResolution {
        pivot,
        candidates,
        survivors,
        outcome,
    }
}

fn examine(h: &[Vec<i64>], d: u64, q_ord: u64) -> CandidateCheck {
    match solve_x_vector(h, d) {
        Err(e) => CandidateCheck {
            d,
            x_vec: None,
            odd_sum: None,
            odd_sum_order: None,
            passes: false,
            reason: e.to_string(),
        },
        Ok(x) => {
            let (s, ord) = odd_index_sum(&x, d);
            let passes = ord == q_ord;
            CandidateCheck {
                d,
                reason: if passes {
                    format!("order of odd-index sum {s} is {ord}, as required")
                } else {
                    format!("order of odd-index sum {s} is {ord}, not {q_ord}")
                },
                x_vec: Some(x),
                odd_sum: Some(s),
                odd_sum_order: Some(ord),
                passes,
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionSet {
    pub n0: u64,
    /// Full g-tuples `(n_1, ..., n_u, n0 - n_1, ..., n0 - n_u)`, lexicographic.
    pub solutions: Vec<Vec<u64>>,
    /// 1-based indices of the zero entries of each solution.
    pub z_sets: Vec<Vec<usize>>,
}

impl SolutionSet {
    pub fn from_solutions(n0: u64, solutions: Vec<Vec<u64>>) -> SolutionSet {
        let z_sets = solutions.iter().map(|s| zero_set(s)).collect();
        SolutionSet { n0, solutions, z_sets }
    }
}

fn zero_set(s: &[u64]) -> Vec<usize> {
    s.iter().enumerate().filter(|(_, &v)| v == 0).map(|(i, _)| i + 1).collect()
}

/// Whether `sum_k (2 n_k - n) x_k = 0 (mod d)` for the first `u` entries.
pub fn relation_holds(half: &[u64], n: u64, x: &[i64], d: u64) -> bool {
    half.iter()
        .zip(x)
        .map(|(&a, &xk)| (2 * a as i128 - n as i128) * xk as i128)
        .sum::<i128>()
        .rem_euclid(d as i128)
        == 0
}

/// Least odd `n <= n_max` with a nonnegative solution, and all solutions at
/// that `n`. `x` holds at least `u` entries; only `x_1..x_u` are used.
pub fn find_n0(x: &[i64], d: u64, u: usize, n_max: u64) -> Result<SolutionSet, ClassRelError> {
    let x = &x[..u];
    let mut n = 1;
    while n <= n_max {
        let sols = solutions_at(x, d, n);
        if !sols.is_empty() {
            return Ok(SolutionSet::from_solutions(n, sols));
        }
        n += 2;
    }
    Err(ClassRelError::NoSolutionBelowCap(n_max))
}

/// All solutions at a given `n`, by depth-first search pruned with the
/// residues reachable from each suffix.
pub fn solutions_at(x: &[i64], d: u64, n: u64) -> Vec<Vec<u64>> {
    let u = x.len();
    let dm = d as usize;
    let term = |k: usize, a: u64| ((2 * a as i128 - n as i128) * x[k] as i128).rem_euclid(d as i128) as usize;
    // reach[k][r]: some choice of n_k..n_u contributes r
    let mut reach = vec![vec![false; dm]; u + 1];
    reach[u][0] = true;
    for k in (0..u).rev() {
        let (head, tail) = reach.split_at_mut(k + 1);
        let (cur, next) = (&mut head[k], &tail[0]);
        for a in 0..=n {
            let t = term(k, a);
            for (r, &ok) in next.iter().enumerate() {
                if ok {
                    cur[(r + t) % dm] = true;
                }
            }
        }
    }
    let mut out = Vec::new();
    if !reach[0][0] {
        return out;
    }
    let mut tuple = vec![0u64; u];
    #[allow(clippy::too_many_arguments)]
    fn dfs(
        k: usize,
        need: usize,
        tuple: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
        reach: &[Vec<bool>],
        n: u64,
        dm: usize,
        term: &dyn Fn(usize, u64) -> usize,
    ) {
        if k == tuple.len() {
            let mut full = tuple.clone();
            full.extend(tuple.iter().map(|&a| n - a));
            out.push(full);
            return;
        }
        for a in 0..=n {
            let t = term(k, a);
            let rest = (need + dm - t) % dm;
            if reach[k + 1][rest] {
                tuple[k] = a;
                dfs(k + 1, rest, tuple, out, reach, n, dm, term);
            }
        }
    }
    dfs(0, 0, &mut tuple, &mut out, &reach, n, dm, &term);
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ZFailure {
    /// 0-based solution index with an empty Z-set.
    Empty(usize),
    /// Two solutions with the same Z-set.
    Duplicate(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZCheck {
    pub holds: bool,
    pub failure: Option<ZFailure>,
}

/// Every Z-set nonempty and all of them pairwise distinct.
pub fn z_condition(s: &SolutionSet) -> ZCheck {
    let fail = |f| ZCheck {
        holds: false,
        failure: Some(f),
    };
    if let Some(i) = s.z_sets.iter().position(Vec::is_empty) {
        return fail(ZFailure::Empty(i));
    }
    for i in 0..s.z_sets.len() {
        for j in i + 1..s.z_sets.len() {
            if s.z_sets[i] == s.z_sets[j] {
                return fail(ZFailure::Duplicate(i, j));
            }
        }
    }
    ZCheck {
        holds: true,
        failure: None,
    }
}

/// Solver data for one candidate order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderAnalysis {
    pub d: u64,
    pub x_vec: Vec<i64>,
    /// `None` when no odd `n <= n_max` is solvable.
    pub solutions: Option<SolutionSet>,
    pub z: Option<ZCheck>,
}

impl OrderAnalysis {
    /// Non-existence is certified for `n < n0`, and for `n = n0` when the
    /// Z-sets are nonempty and distinct.
    pub fn certifies(&self, n: u64, n_max: u64) -> bool {
        match (&self.solutions, &self.z) {
            (None, _) => n <= n_max,
            (Some(s), z) => n < s.n0 || (n == s.n0 && z.as_ref().is_some_and(|z| z.holds)),
        }
    }
}

pub fn analyze_order(x: Vec<i64>, d: u64, u: usize, n_max: u64) -> Result<OrderAnalysis, ClassRelError> {
    let (solutions, z) = match find_n0(&x, d, u, n_max) {
        Ok(s) => {
            let z = z_condition(&s);
            (Some(s), Some(z))
        }
        Err(ClassRelError::NoSolutionBelowCap(_)) => (None, None),
        Err(e) => return Err(e),
    };
    Ok(OrderAnalysis {
        d,
        x_vec: x,
        solutions,
        z,
    })
}

/// Everything computed for one prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRelationData {
    pub p: u64,
    pub splitting: Splitting,
    pub relations: RelationMatrix,
    pub folded: FoldedMatrix,
    pub hnf: HnfResult,
    pub h: Vec<Vec<i64>>,
    pub pivot: i64,
    pub q_ord: u64,
    pub minus_parity: MinusParity,
    pub minus_parity_source: Option<String>,
    pub resolution: OrderResolution,
    /// One entry per surviving order, in increasing order of `d`.
    pub analyses: Vec<OrderAnalysis>,
    pub n_max: u64,
}

impl ClassRelationData {
    pub fn resolved(&self) -> Option<&OrderAnalysis> {
        match self.resolution.outcome {
            Resolution::Resolved(d) => self.analyses.iter().find(|a| a.d == d),
            Resolution::Inconclusive(_) => None,
        }
    }

    /// Sound whenever the true order is among the survivors: every survivor
    /// must certify `n`.
    pub fn certifies(&self, n: u64) -> bool {
        self.minus_parity == MinusParity::Odd
            && !self.analyses.is_empty()
            && self.analyses.iter().all(|a| a.certifies(n, self.n_max))
    }
}

pub fn analyze_prime(p: u64, n_max: u64) -> Result<ClassRelationData, ClassRelError> {
    build(assemble_relations(p)?, n_max)
}

pub fn analyze_prime_with_root(p: u64, w: u64, n_max: u64) -> Result<ClassRelationData, ClassRelError> {
    build(assemble_relations_with_root(p, w)?, n_max)
}

fn build(relations: RelationMatrix, n_max: u64) -> Result<ClassRelationData, ClassRelError> {
    let p = relations.splitting.p;
    let u = relations.splitting.u as usize;
    let folded = eliminate_conjugation(&relations);
    let hnf = relation_hnf(&folded);
    if hnf.rank() < u {
        return Err(ClassRelError::RankDeficient);
    }
    let h = hnf.block_i64();
    let pivot = h[0][0];
    let q_ord = form_order(&prime_form_over_2(p)?);
    let parity = minus_parity(p);
    let resolution = resolve_order(&h, q_ord, parity);
    let analyses = resolution
        .candidates
        .iter()
        .filter(|c| c.passes)
        .map(|c| analyze_order(c.x_vec.clone().expect("survivor has a vector"), c.d, u, n_max))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ClassRelationData {
        p,
        splitting: relations.splitting,
        relations,
        folded,
        hnf,
        h,
        pivot,
        q_ord,
        minus_parity: parity,
        minus_parity_source: minus_parity_source(p),
        resolution,
        analyses,
        n_max,
    })
}
