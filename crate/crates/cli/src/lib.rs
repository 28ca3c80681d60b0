//! The `gbf` command line: verdicts, relation matrices and exhaustive
//! searches, each emitted as one [`ReportDocument`].

pub mod cache;
pub mod report;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

use gbf_core::classrel::{analyze_prime, balanced, ClassRelationData, Resolution, DEFAULT_N_MAX};
use gbf_core::cyclotomic::{brute_search, format_witnesses, CycloError, SearchOptions, DEFAULT_BUDGET};
use gbf_core::reference;
use gbf_core::stickelberger::format_matrix;
use gbf_core::verdict::{check_two_prime, dispatch_with, DispatchOptions, Status, Verdict};

pub use cache::Cache;
pub use report::ReportDocument;

pub const EXIT_DEFINITIVE: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;

const TEXT_SOLUTION_LIMIT: usize = 16;

#[derive(Debug, Parser)]
#[command(name = "gbf", version, about = "Existence checks for generalized bent functions of type [n, q]")]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Emit the structured report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Bypass the report cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Directory for matrix, witness and report dumps.
    #[arg(long, global = true)]
    pub dump_dir: Option<PathBuf>,
    /// Exhaustive-search workers.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Decide the type [n, q].
    Check {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = DEFAULT_N_MAX)]
        n_max: u64,
    },
    /// Run the class-relation pipeline for a prime p = 7 (mod 8).
    Relations {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = DEFAULT_N_MAX)]
        n_max: u64,
    },
    /// Enumerate every table Z_q^t -> Z_q and list the GBFs.
    Search {
        #[arg(long)]
        t: u32,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Witness file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Two-prime criterion for N = p1^r1 p2^r2.
    TwoPrime {
        #[arg(long)]
        p1: u64,
        #[arg(long, default_value_t = 1)]
        r1: u32,
        #[arg(long)]
        p2: u64,
        #[arg(long, default_value_t = 1)]
        r2: u32,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Budget(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Budget(_) => EXIT_INCONCLUSIVE,
            _ => EXIT_ERROR,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub report: ReportDocument,
    pub text: String,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Relations { .. } => "relations",
            Command::Search { .. } => "search",
            Command::TwoPrime { .. } => "two-prime",
        }
    }

    /// Parameters that determine the result; also the cache key.
    pub fn parameters(&self) -> Value {
        match *self {
            Command::Check { n, q, budget, n_max } => json!({ "n": n, "q": q, "budget": budget, "n_max": n_max }),
            Command::Relations { p, n_max } => json!({ "p": p, "n_max": n_max }),
            Command::Search { t, q, budget, .. } => json!({ "t": t, "q": q, "budget": budget }),
            Command::TwoPrime { p1, r1, p2, r2 } => json!({ "p1": p1, "r1": r1, "p2": p2, "r2": r2 }),
        }
    }

    fn cache_key(&self) -> String {
        let params = self.parameters();
        let obj = params.as_object().expect("parameters are an object");
        obj.iter().map(|(k, v)| format!("{k}{v}")).collect::<Vec<_>>().join("_")
    }
}

/// Runs one command, consulting `cache` unless `--no-cache` is set.
pub fn run(cli: &Cli, cache: Option<&Cache>) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let cmd = &cli.command;
    let cache = cache.filter(|_| !cli.common.no_cache);
    let key = cmd.cache_key();
    let mut report = match cache.and_then(|c| c.load(cmd.name(), &key)) {
        Some(mut r) => {
            r.cache_hits = 1;
            r
        }
        None => {
            let r = compute(cmd, &cli.common)?;
            if let Some(c) = cache {
                if let Err(e) = c.store(cmd.name(), &key, &r) {
                    eprintln!("warning: cache write failed: {e}");
                }
            }
            r
        }
    };
    report.timings.wall_ms = start.elapsed().as_millis() as u64;
    if let Some(dir) = &cli.common.dump_dir {
        write_dumps(dir, cmd, &report)?;
    }
    if let Command::Search { out: Some(path), .. } = cmd {
        fs::write(path, witnesses_text(&report))?;
    }
    Ok(Outcome {
        code: exit_code(&report),
        text: render(&report),
        report,
    })
}

fn compute(cmd: &Command, common: &CommonArgs) -> Result<ReportDocument, CliError> {
    let mut report = ReportDocument::new(cmd.name(), cmd.parameters());
    match *cmd {
        Command::Check { n, q, budget, n_max } => {
            let opts = DispatchOptions {
                budget,
                n_max,
                brute_force: true,
                threads: common.threads,
            };
            report.verdict = Some(dispatch_with(n, q, &opts));
        }
        Command::Relations { p, n_max } => {
            let data = analyze_prime(p, n_max).map_err(|e| CliError::Input(e.to_string()))?;
            let warnings: Vec<String> = reference::compare(&data).iter().map(|d| d.warning()).collect();
            report.payload = Some(json!({ "analysis": data, "warnings": warnings }));
        }
        Command::Search { t, q, budget, .. } => {
            let opts = SearchOptions {
                budget,
                threads: common.threads,
                ..Default::default()
            };
            let out = brute_search(t, q, &opts).map_err(|e| match e {
                CycloError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
                other => CliError::Input(other.to_string()),
            })?;
            report.payload = Some(serde_json::to_value(&out).expect("search outcome serializes"));
        }
        Command::TwoPrime { p1, r1, p2, r2 } => {
            let v = check_two_prime(p1, r1, p2, r2).map_err(|e| CliError::Input(e.to_string()))?;
            report.verdict = Some(v);
        }
    }
    Ok(report)
}

/// The pipeline data embedded in a `relations` report.
pub fn relation_data(report: &ReportDocument) -> Option<ClassRelationData> {
    serde_json::from_value(report.payload.as_ref()?.get("analysis")?.clone()).ok()
}

pub fn exit_code(report: &ReportDocument) -> i32 {
    if let Some(v) = &report.verdict {
        return if v.status.is_definitive() { EXIT_DEFINITIVE } else { EXIT_INCONCLUSIVE };
    }
    match report.command.as_str() {
        "relations" => match relation_data(report).map(|d| d.resolution.outcome) {
            Some(Resolution::Resolved(_)) => EXIT_DEFINITIVE,
            _ => EXIT_INCONCLUSIVE,
        },
        "search" => match report.payload.as_ref().and_then(|p| p["exhausted"].as_bool()) {
            Some(true) => EXIT_DEFINITIVE,
            _ => EXIT_INCONCLUSIVE,
        },
        _ => EXIT_ERROR,
    }
}

fn witnesses_text(report: &ReportDocument) -> String {
    let Some(p) = &report.payload else { return String::new() };
    let outcome: Result<gbf_core::cyclotomic::SearchOutcome, _> = serde_json::from_value(p.clone());
    outcome.map(|o| format_witnesses(&o.witnesses)).unwrap_or_default()
}

fn write_dumps(dir: &Path, cmd: &Command, report: &ReportDocument) -> Result<(), CliError> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join(format!("{}.json", report.command)), report.to_json())?;
    match *cmd {
        Command::Relations { p, .. } => {
            let data = relation_data(report).ok_or_else(|| CliError::Input("report has no pipeline data".into()))?;
            fs::write(
                dir.join(format!("relations_p{p}.txt")),
                format_matrix(&data.relations.rows, Some(&data.relations.tags)),
            )?;
            fs::write(
                dir.join(format!("folded_p{p}.txt")),
                format_matrix(&data.folded.rows, Some(&data.folded.tags)),
            )?;
            fs::write(dir.join(format!("hnf_h_p{p}.txt")), format_matrix(&data.hnf.h, None))?;
            fs::write(dir.join(format!("hnf_u_p{p}.txt")), format_matrix(&data.hnf.u, None))?;
        }
        Command::Search { t, q, .. } => {
            fs::write(dir.join(format!("witnesses_t{t}_q{q}.txt")), witnesses_text(report))?;
        }
        Command::Check { n, q, .. } => {
            if let Some(w) = report.verdict.as_ref().and_then(|v| v.witness.as_ref()) {
                fs::write(dir.join(format!("witnesses_t{n}_q{q}.txt")), format_witnesses(std::slice::from_ref(w)))?;
            }
        }
        Command::TwoPrime { .. } => {}
    }
    Ok(())
}

pub fn render(report: &ReportDocument) -> String {
    let mut s = String::new();
    if let Some(v) = &report.verdict {
        render_verdict(&mut s, v);
    } else if report.command == "relations" {
        if let Some(data) = relation_data(report) {
            render_relations(&mut s, &data);
        }
        let warnings = report.payload.as_ref().and_then(|p| p["warnings"].as_array().cloned());
        for w in warnings.unwrap_or_default() {
            let _ = writeln!(s, "warning: {}", w.as_str().unwrap_or_default());
        }
    } else if report.command == "search" {
        if let Some(p) = &report.payload {
            let _ = writeln!(
                s,
                "type [{}, {}]: {} of {} tables examined, exhausted: {}",
                p["t"], p["q"], p["tables_examined"], p["space_size"], p["exhausted"]
            );
            let w = witnesses_text(report);
            let _ = writeln!(s, "{} witnesses", w.lines().count());
            s.push_str(&w);
        }
    }
    if report.cache_hits > 0 {
        s.push_str("(cached)\n");
    }
    s
}

fn render_verdict(s: &mut String, v: &Verdict) {
    let status = match v.status {
        Status::NonExistence => "no GBF exists",
        Status::ExistsWitness => "a GBF exists",
        Status::Inconclusive => "inconclusive",
    };
    let _ = writeln!(s, "type {}: {status}", v.gbf_type);
    let _ = writeln!(s, "reason: {}", v.reason);
    for (i, step) in v.evidence.iter().enumerate() {
        let rule = serde_json::to_value(step.rule).unwrap_or_default();
        let _ = writeln!(
            s,
            "  {}. {} [{}] {} -> {}",
            i + 1,
            rule.as_str().unwrap_or_default(),
            step.statement,
            step.inputs,
            summarize(&step.outputs)
        );
    }
    if let Some(w) = &v.witness {
        let _ = write!(s, "witness: {}", format_witnesses(std::slice::from_ref(w)));
    }
    for w in &v.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
}

fn summarize(v: &Value) -> String {
    let text = v.to_string();
    if text.len() > 160 {
        format!("{}...", &text[..text.char_indices().take(157).last().map_or(0, |(i, _)| i)])
    } else {
        text
    }
}

fn render_relations(s: &mut String, data: &ClassRelationData) {
    let sp = data.splitting;
    let (r, c) = data.relations.dims();
    let _ = writeln!(s, "p = {}: f = {}, g = {}, u = {}, primitive root {}", sp.p, sp.f, sp.g, sp.u, data.relations.root);
    let _ = writeln!(s, "relation matrix {r} x {c}, folded {} x {}", data.folded.rows.len(), data.folded.u);
    let _ = writeln!(s, "H =");
    for row in &data.h {
        let cells: Vec<String> = row.iter().map(i64::to_string).collect();
        let _ = writeln!(s, "  {}", cells.join(" "));
    }
    let _ = writeln!(s, "pivot {}, order of the form above 2: {}", data.pivot, data.q_ord);
    for c in &data.resolution.candidates {
        let _ = writeln!(s, "  candidate d = {}: {} ({})", c.d, if c.passes { "survives" } else { "excluded" }, c.reason);
    }
    match &data.resolution.outcome {
        Resolution::Resolved(d) => {
            let _ = writeln!(s, "order of x_1: d = {d}");
        }
        Resolution::Inconclusive(why) => {
            let _ = writeln!(s, "order of x_1 unresolved: {why}");
        }
    }
    for a in &data.analyses {
        let x: Vec<String> = a.x_vec.iter().map(|&v| balanced(v, a.d).to_string()).collect();
        let _ = writeln!(s, "d = {}: x = ({})", a.d, x.join(", "));
        match &a.solutions {
            Some(sol) => {
                let _ = writeln!(s, "  n0 = {}, {} solutions", sol.n0, sol.solutions.len());
                for (t, z) in sol.solutions.iter().zip(&sol.z_sets).take(TEXT_SOLUTION_LIMIT) {
                    let t: Vec<String> = t.iter().map(u64::to_string).collect();
                    let z: Vec<String> = z.iter().map(usize::to_string).collect();
                    let _ = writeln!(s, "    ({})  Z = {{{}}}", t.join(","), z.join(","));
                }
                if sol.solutions.len() > TEXT_SOLUTION_LIMIT {
                    let _ = writeln!(s, "    ... {} more (see --json)", sol.solutions.len() - TEXT_SOLUTION_LIMIT);
                }
                if let Some(z) = &a.z {
                    let _ = writeln!(s, "  zero-set condition: {}", z.holds);
                }
            }
            None => {
                let _ = writeln!(s, "  no solution for odd n <= {}", data.n_max);
            }
        }
    }
}

/// Parses `args`, runs, prints, and returns the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_DEFINITIVE };
            let _ = e.print();
            return code;
        }
    };
    let cache = Cache::from_env();
    match run(&cli, cache.as_ref()) {
        Ok(out) => {
            if cli.common.json {
                println!("{}", out.report.to_json());
            } else {
                print!("{}", out.text);
            }
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
