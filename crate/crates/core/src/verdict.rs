//! Theorem checkers with replayable evidence.
//!
//! Every computation that feeds a verdict goes through [`eval`], keyed by a
//! [`Rule`] and JSON inputs. The recorded step keeps both sides, so
//! [`Verdict::replay`] can recompute the chain from the report alone.

use num_bigint::BigUint;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::classrel::{analyze_prime, balanced, minus_parity, minus_parity_source, MinusParity, DEFAULT_N_MAX};
use crate::cyclotomic::{brute_search, is_gbf, search_space, FunctionTable, SearchOptions, DEFAULT_BUDGET};
use crate::numtheory::{
    as_prime_power, euler_phi, factorize, is_prime, minus_one_power_exists, mult_order, wieferich_free, OddModulus,
};
use crate::quadforms::{form_order, prime_form_over_2, smallest_odd_m, DEFAULT_M_CAP};
use crate::reference;

/// Version of the report layout.
pub const SCHEMA_VERSION: u32 = 1;

/// Largest prime for which the real cyclotomic field of conductor `p` is
/// known to have class number 1, as the pipeline requires.
pub const CLASS_NUMBER_ONE_BOUND: u64 = 151;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerdictError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("malformed inputs for rule {0:?}: {1}")]
    BadInputs(Rule, String),
    #[error("step {index} ({rule:?}) does not replay: recorded {recorded}, recomputed {recomputed}")]
    ReplayMismatch {
        index: usize,
        rule: Rule,
        recorded: String,
        recomputed: String,
    },
    #[error("step {index} ({rule:?}) failed on replay: {message}")]
    ReplayFailed { index: usize, rule: Rule, message: String },
    #[error("embedded witness is not a GBF")]
    BadWitness,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    PrimeCheck,
    ResidueCheck,
    KumarCondition,
    HalfOrder,
    MinusOnePower,
    SmallestOddM,
    FormOrder,
    WieferichFree,
    ClassNumberOneBound,
    MinusParity,
    RelationPipeline,
    SolverCertificate,
    ExhaustiveSearch,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Step {
    pub rule: Rule,
    /// The fact being applied, in words.
    pub statement: String,
    pub inputs: Value,
    pub outputs: Value,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    NonExistence,
    ExistsWitness,
    Inconclusive,
}

impl Status {
    pub fn is_definitive(self) -> bool {
        self != Status::Inconclusive
    }
}

/// `[n, q]`; `n` is absent when it is the unknown output of a theorem.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GbfType {
    pub n: Option<u64>,
    /// Decimal, since `q` may exceed 64 bits.
    pub q: String,
}

impl std::fmt::Display for GbfType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.n {
            Some(n) => write!(f, "[{n}, {}]", self.q),
            None => write!(f, "[?, {}]", self.q),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Versions {
    pub engine: String,
    pub schema: u32,
}

impl Default for Versions {
    fn default() -> Self {
        Versions {
            engine: env!("CARGO_PKG_VERSION").to_string(),
            schema: SCHEMA_VERSION,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    #[serde(rename = "type")]
    pub gbf_type: GbfType,
    pub status: Status,
    pub reason: String,
    pub evidence: Vec<Step>,
    pub warnings: Vec<String>,
    pub witness: Option<FunctionTable>,
    pub versions: Versions,
}

impl Verdict {
    /// Recomputes every step from its recorded inputs.
    pub fn replay(&self) -> Result<(), VerdictError> {
        for (index, step) in self.evidence.iter().enumerate() {
            let recomputed = eval(step.rule, &step.inputs).map_err(|e| VerdictError::ReplayFailed {
                index,
                rule: step.rule,
                message: e.to_string(),
            })?;
            if recomputed != step.outputs {
                return Err(VerdictError::ReplayMismatch {
                    index,
                    rule: step.rule,
                    recorded: step.outputs.to_string(),
                    recomputed: recomputed.to_string(),
                });
            }
        }
        if self.status == Status::ExistsWitness && !self.witness.as_ref().is_some_and(is_gbf) {
            return Err(VerdictError::BadWitness);
        }
        Ok(())
    }
}

fn args<T: DeserializeOwned>(rule: Rule, v: &Value) -> Result<T, VerdictError> {
    serde_json::from_value(v.clone()).map_err(|e| VerdictError::BadInputs(rule, e.to_string()))
}

fn modulus(rule: Rule, m: u64) -> Result<OddModulus, VerdictError> {
    OddModulus::new(m).map_err(|e| VerdictError::BadInputs(rule, e.to_string()))
}

#[derive(Deserialize)]
struct PIn {
    p: u64,
}

#[derive(Deserialize)]
struct ValueIn {
    value: u64,
}

#[derive(Deserialize)]
struct ResidueIn {
    value: u64,
    modulus: u64,
    residue: u64,
}

#[derive(Deserialize)]
struct ModIn {
    modulus: u64,
}

#[derive(Deserialize)]
struct PowIn {
    base: u64,
    modulus: u64,
}

#[derive(Deserialize)]
struct MIn {
    p: u64,
    cap: u64,
}

#[derive(Deserialize)]
struct BoundIn {
    p: u64,
    bound: u64,
}

#[derive(Deserialize)]
struct PipelineIn {
    p: u64,
    n_max: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct OrderSummary {
    d: u64,
    n0: Option<u64>,
    z_holds: Option<bool>,
}

#[derive(Deserialize)]
struct CertIn {
    n: u64,
    n_max: u64,
    parity_odd: bool,
    orders: Vec<OrderSummary>,
}

#[derive(Deserialize)]
struct SearchIn {
    t: u32,
    q: u64,
    budget: u64,
}

/// Evaluates one rule on JSON inputs.
pub fn eval(rule: Rule, inputs: &Value) -> Result<Value, VerdictError> {
    let bad = |e: String| VerdictError::BadInputs(rule, e);
    Ok(match rule {
        Rule::PrimeCheck => {
            let a: ValueIn = args(rule, inputs)?;
            json!({ "prime": is_prime(a.value) })
        }
        Rule::ResidueCheck => {
            let a: ResidueIn = args(rule, inputs)?;
            if a.modulus == 0 {
                return Err(bad("modulus 0".into()));
            }
            json!({ "holds": a.value % a.modulus == a.residue })
        }
        Rule::KumarCondition => {
            let a: ModIn = args(rule, inputs)?;
            let m = modulus(rule, a.modulus)?;
            json!({ "holds": minus_one_power_exists(2, m).map_err(|e| bad(e.to_string()))? })
        }
        Rule::HalfOrder => {
            let a: ModIn = args(rule, inputs)?;
            let m = modulus(rule, a.modulus)?;
            let order = mult_order(2, m).map_err(|e| bad(e.to_string()))?;
            let phi = euler_phi(a.modulus);
            json!({ "order": order, "phi": phi, "holds": 2 * order == phi })
        }
        Rule::MinusOnePower => {
            let a: PowIn = args(rule, inputs)?;
            let m = modulus(rule, a.modulus)?;
            let holds = minus_one_power_exists(a.base as i64, m).map_err(|e| bad(e.to_string()))?;
            json!({ "holds": holds })
        }
        Rule::SmallestOddM => {
            let a: MIn = args(rule, inputs)?;
            json!({ "m": smallest_odd_m(a.p, a.cap).ok() })
        }
        Rule::FormOrder => {
            let a: PIn = args(rule, inputs)?;
            let f = prime_form_over_2(a.p).map_err(|e| bad(e.to_string()))?;
            json!({ "form": f.to_string(), "order": form_order(&f) })
        }
        Rule::WieferichFree => {
            let a: PIn = args(rule, inputs)?;
            json!({ "holds": wieferich_free(a.p).map_err(|e| bad(e.to_string()))? })
        }
        Rule::ClassNumberOneBound => {
            let a: BoundIn = args(rule, inputs)?;
            json!({ "holds": a.p <= a.bound })
        }
        Rule::MinusParity => {
            let a: PIn = args(rule, inputs)?;
            json!({ "parity": minus_parity(a.p), "source": minus_parity_source(a.p) })
        }
        Rule::RelationPipeline => {
            let a: PipelineIn = args(rule, inputs)?;
            let data = analyze_prime(a.p, a.n_max).map_err(|e| bad(e.to_string()))?;
            let orders: Vec<Value> = data
                .analyses
                .iter()
                .map(|o| {
                    json!({
                        "d": o.d,
                        "x_vec": o.x_vec.iter().map(|&v| balanced(v, o.d)).collect::<Vec<_>>(),
                        "n0": o.solutions.as_ref().map(|s| s.n0),
                        "solutions": o.solutions.as_ref().map(|s| &s.solutions),
                        "z_holds": o.z.as_ref().map(|z| z.holds),
                    })
                })
                .collect();
            json!({
                "h": data.h,
                "pivot": data.pivot,
                "q_ord": data.q_ord,
                "candidates": data.resolution.candidates.iter().map(|c| c.d).collect::<Vec<_>>(),
                "survivors": data.resolution.survivors,
                "orders": orders,
            })
        }
        Rule::SolverCertificate => {
            let a: CertIn = args(rule, inputs)?;
            let certified = a.parity_odd
                && !a.orders.is_empty()
                && a.orders.iter().all(|o| match (o.n0, o.z_holds) {
                    (None, _) => a.n <= a.n_max,
                    (Some(n0), z) => a.n < n0 || (a.n == n0 && z == Some(true)),
                });
            json!({ "certified": certified })
        }
        Rule::ExhaustiveSearch => exhaustive_search(&args(rule, inputs)?, 1)?,
    })
}

fn exhaustive_search(a: &SearchIn, threads: usize) -> Result<Value, VerdictError> {
    let out = brute_search(
        a.t,
        a.q,
        &SearchOptions {
            budget: a.budget,
            max_witnesses: Some(1),
            threads,
            ..Default::default()
        },
    )
    .map_err(|e| VerdictError::BadInputs(Rule::ExhaustiveSearch, e.to_string()))?;
    Ok(json!({
        "space": out.space_size,
        "examined": out.tables_examined,
        "witness": out.witnesses.first().map(|w| w.values().to_vec()),
        "exhausted": out.exhausted,
    }))
}

/// Collects steps while a verdict is being built.
#[derive(Debug, Default)]
struct Chain {
    steps: Vec<Step>,
    warnings: Vec<String>,
}

impl Chain {
    fn run(&mut self, rule: Rule, statement: &str, inputs: Value) -> Result<Value, VerdictError> {
        let outputs = eval(rule, &inputs)?;
        self.steps.push(Step {
            rule,
            statement: statement.to_string(),
            inputs,
            outputs: outputs.clone(),
        });
        Ok(outputs)
    }

    fn holds(&mut self, rule: Rule, statement: &str, inputs: Value) -> Result<bool, VerdictError> {
        Ok(self.run(rule, statement, inputs)?["holds"] == json!(true))
    }

    fn finish(self, gbf_type: GbfType, status: Status, reason: impl Into<String>) -> Verdict {
        Verdict {
            gbf_type,
            status,
            reason: reason.into(),
            evidence: self.steps,
            warnings: self.warnings,
            witness: None,
            versions: Versions::default(),
        }
    }
}

fn q_string(factors: &[(u64, u32)]) -> String {
    factors
        .iter()
        .fold(BigUint::from(2u32), |acc, &(p, r)| acc * BigUint::from(p).pow(r))
        .to_string()
}

/// Two primes `p1 = 7 (mod 8)` and `p2 = 5 (mod 8)` with `N = p1^r1 p2^r2`:
/// if `ord_N(2) = phi(N)/2`, `p1^s = -1 (mod p2^r2)` and `p2^t = -1 (mod
/// p1^r1)` for some `s, t`, there is no GBF of type `[m, 2N]`, `m` the
/// least odd exponent with `x^2 + p1 y^2 = 2^(m+2)` solvable.
pub fn check_two_prime(p1: u64, r1: u32, p2: u64, r2: u32) -> Result<Verdict, VerdictError> {
    if !is_prime(p1) || !is_prime(p2) {
        return Err(VerdictError::InvalidInput(format!("{p1} and {p2} must be prime")));
    }
    if p1 == p2 {
        return Err(VerdictError::InvalidInput("the two primes must differ".into()));
    }
    if r1 == 0 || r2 == 0 {
        return Err(VerdictError::InvalidInput("exponents must be positive".into()));
    }
    let big = || VerdictError::InvalidInput("N does not fit in 64 bits".into());
    let pk1 = p1.checked_pow(r1).ok_or_else(big)?;
    let pk2 = p2.checked_pow(r2).ok_or_else(big)?;
    let n_mod = pk1.checked_mul(pk2).ok_or_else(big)?;
    let q = q_string(&[(p1, r1), (p2, r2)]);
    let mut chain = Chain::default();
    chain
        .warnings
        .push(format!("m is taken from x^2 + p*y^2 = 2^(m+2) with p = p1 = {p1}"));
    let fail = |chain: Chain, n: Option<u64>, why: &str| {
        chain.finish(GbfType { n, q: q.clone() }, Status::Inconclusive, format!("condition fails: {why}"))
    };
    if !chain.holds(
        Rule::ResidueCheck,
        "the first prime must be 7 mod 8",
        json!({ "value": p1, "modulus": 8, "residue": 7 }),
    )? {
        return Ok(fail(chain, None, "p1 = 7 (mod 8)"));
    }
    if !chain.holds(
        Rule::ResidueCheck,
        "the second prime must be 5 mod 8",
        json!({ "value": p2, "modulus": 8, "residue": 5 }),
    )? {
        return Ok(fail(chain, None, "p2 = 5 (mod 8)"));
    }
    if !chain.holds(Rule::HalfOrder, "ord_N(2) = phi(N)/2", json!({ "modulus": n_mod }))? {
        return Ok(fail(chain, None, "ord_N(2) = phi(N)/2"));
    }
    if !chain.holds(
        Rule::MinusOnePower,
        "p1^s = -1 (mod p2^r2) for some s",
        json!({ "base": p1, "modulus": pk2 }),
    )? {
        return Ok(fail(chain, None, "p1^s = -1 (mod p2^r2)"));
    }
    if !chain.holds(
        Rule::MinusOnePower,
        "p2^t = -1 (mod p1^r1) for some t",
        json!({ "base": p2, "modulus": pk1 }),
    )? {
        return Ok(fail(chain, None, "p2^t = -1 (mod p1^r1)"));
    }
    let m = chain.run(
        Rule::SmallestOddM,
        "m = least odd exponent with x^2 + p1*y^2 = 2^(m+2) solvable",
        json!({ "p": p1, "cap": DEFAULT_M_CAP }),
    )?["m"]
        .as_u64();
    let Some(m) = m else {
        return Ok(fail(chain, None, "no odd m below the cap"));
    };
    let order = chain.run(
        Rule::FormOrder,
        "m equals the order of the prime form above 2",
        json!({ "p": p1 }),
    )?["order"]
        .as_u64();
    if order != Some(m) {
        chain
            .warnings
            .push(format!("order of the form above 2 is {order:?}, m is {m}"));
    }
    Ok(chain.finish(
        GbfType { n: Some(m), q },
        Status::NonExistence,
        format!("two-prime criterion holds with m = {m}"),
    ))
}

/// Stickelberger pipeline for `N = p^e`, `p = 7 (mod 8)`.
pub fn check_prime_power(p: u64, e: u32, n: u64) -> Result<Verdict, VerdictError> {
    check_prime_power_with(p, e, n, DEFAULT_N_MAX)
}

pub fn check_prime_power_with(p: u64, e: u32, n: u64, n_max: u64) -> Result<Verdict, VerdictError> {
    if !is_prime(p) || p % 8 != 7 {
        return Err(VerdictError::InvalidInput(format!("{p} is not a prime = 7 (mod 8)")));
    }
    if e == 0 {
        return Err(VerdictError::InvalidInput("exponent must be positive".into()));
    }
    if n.is_multiple_of(2) {
        return Err(VerdictError::InvalidInput(format!("n = {n} must be odd")));
    }
    let gbf_type = GbfType {
        n: Some(n),
        q: q_string(&[(p, e)]),
    };
    let mut chain = Chain::default();
    let inconclusive = |chain: Chain, why: String| chain.finish(gbf_type.clone(), Status::Inconclusive, why);
    if !chain.holds(
        Rule::WieferichFree,
        "2^(p-1) != 1 (mod p^2), so ord_{p^e}(2) = p^(e-1) ord_p(2) for all e",
        json!({ "p": p }),
    )? {
        return Ok(inconclusive(chain, format!("{p} is a Wieferich prime")));
    }
    if !chain.holds(
        Rule::ClassNumberOneBound,
        "the maximal real subfield of Q(zeta_p) has class number 1",
        json!({ "p": p, "bound": CLASS_NUMBER_ONE_BOUND }),
    )? {
        return Ok(inconclusive(chain, format!("p = {p} exceeds {CLASS_NUMBER_ONE_BOUND}")));
    }
    let parity = chain.run(
        Rule::MinusParity,
        "the relative class number of Q(zeta_p) is odd",
        json!({ "p": p }),
    )?;
    let parity_odd = parity["parity"] == json!(MinusParity::Odd);
    if !parity_odd {
        return Ok(inconclusive(chain, format!("no tabulated relative class number parity for {p}")));
    }
    let pipe = chain.run(
        Rule::RelationPipeline,
        "Stickelberger relations, Hermite normal form, order resolution and the solution search",
        json!({ "p": p, "n_max": n_max }),
    )?;
    let orders: Vec<OrderSummary> =
        serde_json::from_value(pipe["orders"].clone()).map_err(|e| VerdictError::BadInputs(Rule::RelationPipeline, e.to_string()))?;
    let survivors = pipe["survivors"].clone();
    if orders.len() > 1 {
        chain.warnings.push(format!(
            "order of x_1 is not resolved: candidates {survivors} all survive; certification requires every one of them"
        ));
    }
    if orders.iter().any(|o| o.d == 1) {
        chain
            .warnings
            .push("order of x_1 is 1: the class relation is trivial".to_string());
    }
    if let Ok(data) = analyze_prime(p, n_max) {
        chain
            .warnings
            .extend(reference::compare(&data).iter().map(reference::Discrepancy::warning));
    }
    let cert = chain.run(
        Rule::SolverCertificate,
        "no GBF for n < n0, and for n = n0 when the zero sets are nonempty and distinct",
        json!({ "n": n, "n_max": n_max, "parity_odd": parity_odd, "orders": orders }),
    )?;
    let summary: Vec<String> = orders
        .iter()
        .map(|o| match o.n0 {
            Some(n0) => format!("d = {}: n0 = {n0}, zero sets {}", o.d, if o.z_holds == Some(true) { "pass" } else { "fail" }),
            None => format!("d = {}: no solution for odd n <= {n_max}", o.d),
        })
        .collect();
    if cert["certified"] == json!(true) {
        Ok(chain.finish(gbf_type, Status::NonExistence, format!("certified ({})", summary.join("; "))))
    } else if orders.is_empty() {
        Ok(inconclusive(chain, "no candidate order survives".into()))
    } else {
        Ok(inconclusive(chain, format!("not certified for n = {n} ({})", summary.join("; "))))
    }
}

#[derive(Debug, Clone)]
pub struct DispatchOptions {
    pub budget: u64,
    pub n_max: u64,
    /// Run the exhaustive search when the space fits the budget.
    pub brute_force: bool,
    /// Workers for the exhaustive search; results do not depend on it.
    pub threads: usize,
}

impl Default for DispatchOptions {
    fn default() -> Self {
        DispatchOptions {
            budget: DEFAULT_BUDGET,
            n_max: DEFAULT_N_MAX,
            brute_force: true,
            threads: 1,
        }
    }
}

pub fn dispatch(n: u64, q: u64) -> Verdict {
    dispatch_with(n, q, &DispatchOptions::default())
}

/// Routes `[n, q]` through the applicable criteria, then the exhaustive
/// search when it fits the budget.
pub fn dispatch_with(n: u64, q: u64, opts: &DispatchOptions) -> Verdict {
    let gbf_type = GbfType {
        n: Some(n),
        q: q.to_string(),
    };
    let mut chain = Chain::default();
    if n == 0 || q < 2 {
        return chain.finish(gbf_type, Status::Inconclusive, "n must be positive and q at least 2");
    }
    if q % 4 != 2 || n.is_multiple_of(2) {
        chain
            .warnings
            .push("GBFs exist by Kumar's constructions (out of scope)".to_string());
        return chain.finish(
            gbf_type,
            Status::Inconclusive,
            "outside the scope n odd, q = 2 (mod 4); GBFs exist by Kumar (out of scope)",
        );
    }
    let big_n = q / 2;
    let mut theorem: Option<Verdict> = None;
    if big_n >= 3 {
        match chain.holds(
            Rule::KumarCondition,
            "2^s = -1 (mod N) for some s excludes GBFs of type [n, 2N] with n odd",
            json!({ "modulus": big_n }),
        ) {
            Ok(true) => {
                theorem = Some(Chain::default().finish(gbf_type.clone(), Status::NonExistence, "Kumar condition holds"))
            }
            Ok(false) => {}
            Err(e) => chain.warnings.push(e.to_string()),
        }
        if theorem.is_none() {
            theorem = route_theorems(n, big_n, opts, &mut chain);
        }
    }
    let mut verdict = match theorem {
        Some(t) => {
            chain.steps.extend(t.evidence);
            chain.warnings.extend(t.warnings);
            chain.finish(gbf_type.clone(), t.status, t.reason)
        }
        None => chain.finish(gbf_type.clone(), Status::Inconclusive, "no applicable criterion"),
    };
    if opts.brute_force {
        brute_force_stage(&mut verdict, n, q, opts);
    }
    verdict
}

fn route_theorems(n: u64, big_n: u64, opts: &DispatchOptions, chain: &mut Chain) -> Option<Verdict> {
    if let Some((p, e)) = as_prime_power(big_n) {
        if p % 8 == 7 {
            return match check_prime_power_with(p, e, n, opts.n_max) {
                Ok(v) => Some(v),
                Err(err) => {
                    chain.warnings.push(err.to_string());
                    None
                }
            };
        }
        return None;
    }
    let f = factorize(big_n);
    if let [(a, ra), (b, rb)] = f.as_slice() {
        let ((p1, r1), (p2, r2)) = if a % 8 == 7 { ((*a, *ra), (*b, *rb)) } else { ((*b, *rb), (*a, *ra)) };
        if p1 % 8 == 7 && p2 % 8 == 5 {
            let v = match check_two_prime(p1, r1, p2, r2) {
                Ok(v) => v,
                Err(err) => {
                    chain.warnings.push(err.to_string());
                    return None;
                }
            };
            if v.status == Status::NonExistence && v.gbf_type.n != Some(n) {
                let m = v.gbf_type.n.unwrap_or(0);
                let mut v = v;
                v.status = Status::Inconclusive;
                v.reason = format!("two-prime criterion covers only n = {m}");
                return Some(v);
            }
            return Some(v);
        }
    }
    None
}

fn brute_force_stage(verdict: &mut Verdict, n: u64, q: u64, opts: &DispatchOptions) {
    let budget = opts.budget;
    let Ok(t) = u32::try_from(n) else { return };
    match search_space(t, q) {
        Some(space) if space <= budget => {}
        _ => return,
    }
    let inputs = json!({ "t": t, "q": q, "budget": budget });
    let out = match exhaustive_search(&SearchIn { t, q, budget }, opts.threads.max(1)) {
        Ok(v) => v,
        Err(e) => {
            verdict.warnings.push(e.to_string());
            return;
        }
    };
    verdict.evidence.push(Step {
        rule: Rule::ExhaustiveSearch,
        statement: "exhaustive search over all value tables".to_string(),
        inputs,
        outputs: out.clone(),
    });
    let witness = out["witness"]
        .as_array()
        .map(|vals| vals.iter().filter_map(Value::as_u64).collect::<Vec<_>>());
    match (witness, verdict.status) {
        (Some(vals), Status::NonExistence) => {
            verdict.status = Status::Inconclusive;
            verdict.reason = "criteria and exhaustive search disagree".into();
            verdict.warnings.push(format!("search found a witness {vals:?} against a non-existence criterion"));
        }
        (Some(vals), _) => {
            verdict.witness = FunctionTable::new(t, q, vals).ok();
            verdict.status = Status::ExistsWitness;
            verdict.reason = "exhaustive search found a GBF".into();
        }
        (None, status) if out["exhausted"] == json!(true) => match status {
            Status::NonExistence => verdict.reason.push_str("; confirmed by exhaustive search"),
            _ => {
                verdict.status = Status::NonExistence;
                verdict.reason = "exhaustive search finds no GBF".into();
            }
        },
        _ => {}
    }
}
