//! The `eostrata` command line.
//!
//! Exit codes: 0 success, 1 a check failed, 2 invalid configuration.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bedard::{enumerate_sequences, is_irreducible, sequence_for, stratum_dimension, FrobeniusAction};
use crate::dieudonne::verify_pullback;
use crate::dlclassify::{census, census_field, classify_fine, DEFAULT_TWIST};
use crate::error::Error;
use crate::gf::FieldCtx;
use crate::symplectic::{Subspace, SymplecticSpace};
use crate::weyl::{enumerate_iw, ParabolicType, WeylElement};

/// Point sets larger than this need `--trials`.
pub const MAX_EXHAUSTIVE_POINTS: u64 = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Parser, Serialize)]
pub struct RunConfig {
    /// rank c of the Lagrangian Grassmannian
    #[arg(long, default_value_t = 1)]
    pub c: usize,
    /// genus g (verify, and the lift columns of strata)
    #[arg(long)]
    pub g: Option<usize>,
    #[arg(long, default_value_t = 2)]
    pub p: u32,
    /// points are taken over F_{p^{2m}}
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// sample this many random points instead of enumerating
    #[arg(long)]
    pub trials: Option<usize>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// table of fine strata of the Lagrangian Grassmannian of rank c
    Strata(RunConfig),
    /// count points of each fine stratum over F_{p^{2m}}
    Census(RunConfig),
    /// check the Ekedahl-Oort type of each point against its lifted fine label
    Verify(RunConfig),
    /// dump the Bédard sequences for the Siegel type of rank c
    Bedard(RunConfig),
}

#[derive(Debug, Parser)]
#[command(name = "eostrata", version, about = "Ekedahl-Oort and Deligne-Lusztig strata at desk scale")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Failed(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NotPrime(_)
            | Error::FieldTooLarge { .. }
            | Error::ZeroDegree
            | Error::RankTooSmall { .. }
            | Error::GeneratorOutOfRange { .. } => CliError::Config(e.to_string()),
            other => CliError::Failed(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Config(format!("cannot write output: {e}"))
    }
}

type CmdResult = Result<Outcome, CliError>;

/// What a command produced: the file body, a summary for stderr, and success.
pub struct Outcome {
    pub body: String,
    pub summary: String,
    pub ok: bool,
}

fn header(command: &str, cfg: &RunConfig, fields: &[&FieldCtx]) -> Value {
    let moduli: Vec<Value> =
        fields.iter().map(|f| json!({"p": f.p(), "k": f.degree(), "modulus": f.modulus()})).collect();
    json!({
        "tool": "eostrata",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "config": cfg,
        "moduli": moduli,
    })
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn require_json(cfg: &RunConfig, command: &str) -> Result<(), CliError> {
    if cfg.format != Format::Json {
        return Err(CliError::Config(format!("{command} only writes json")));
    }
    Ok(())
}

fn word_string(w: &WeylElement) -> String {
    w.reduced_word().to_string()
}

fn oneline_string(w: &WeylElement) -> String {
    w.one_line().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn cmd_strata(cfg: &RunConfig) -> CmdResult {
    require_json(cfg, "strata")?;
    let c = cfg.c;
    if c == 0 || c > 6 {
        return Err(CliError::Config(format!("strata needs 1 <= c <= 6, got {c}")));
    }
    if let Some(g) = cfg.g {
        if g < c {
            return Err(CliError::Config(format!("--g {g} is smaller than c = {c}")));
        }
    }
    let siegel = ParabolicType::siegel(c);
    let frob = FrobeniusAction::identity(c);
    let mut rows = Vec::new();
    for w in enumerate_iw(c) {
        let seq = sequence_for(&w, &siegel, &frob)?;
        let mut row = json!({
            "word": w.reduced_word().letters(),
            "one_line": w,
            "length": w.length(),
            "i_inf": seq.i_inf,
            "u_sequence": seq.steps.iter().map(|s| &s.u).collect::<Vec<_>>(),
            "dimension": stratum_dimension(&w, &siegel, &frob)?,
            "irreducible": is_irreducible(&w, &siegel, &frob)?,
            "coarse_class": w.min_double_coset_rep(&siegel, &siegel),
        });
        if let Some(g) = cfg.g {
            let lift = w.r_map_inv(g)?;
            let class = lift.class_c()?;
            row["lift"] = json!({
                "g": g,
                "one_line": lift,
                "length": lift.length(),
                "class_c": class,
                "in_class": class == Some(c),
            });
        }
        rows.push(row);
    }
    let n = rows.len();
    let body = to_json(&json!({"header": header("strata", cfg, &[]), "rows": rows}));
    Ok(Outcome { body, summary: format!("{n} strata for c = {c}"), ok: true })
}

fn census_csv(records: &[crate::dlclassify::CensusRecord]) -> Result<String, CliError> {
    let mut wtr = csv::Writer::from_writer(Vec::new());
    wtr.write_record(["p", "m", "c", "label_word", "label_oneline", "count"])
        .map_err(|e| CliError::Failed(e.to_string()))?;
    for r in records {
        wtr.write_record([
            r.p.to_string(),
            r.m.to_string(),
            r.c.to_string(),
            word_string(&r.label),
            oneline_string(&r.label),
            r.count.to_string(),
        ])
        .map_err(|e| CliError::Failed(e.to_string()))?;
    }
    let bytes = wtr.into_inner().map_err(|e| CliError::Failed(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

fn check_point_budget(space: &SymplecticSpace) -> Result<(), CliError> {
    let n = space.lagrangian_count();
    if n > MAX_EXHAUSTIVE_POINTS {
        return Err(CliError::Config(format!("{n} points exceed the exhaustive limit; pass --trials")));
    }
    Ok(())
}

pub fn cmd_census(cfg: &RunConfig) -> CmdResult {
    let field = census_field(cfg.p, cfg.m)?;
    check_point_budget(&SymplecticSpace::standard(&field, cfg.c))?;
    let result = census(cfg.c, cfg.p, cfg.m)?;
    let ok = result.checks.all_pass();
    let body = match cfg.format {
        Format::Csv => census_csv(&result.records)?,
        Format::Json => to_json(&json!({
            "header": header("census", cfg, &[&field]),
            "records": result.records,
            "checks": result.checks,
        })),
    };
    let summary = format!(
        "{} points over F_{}^{} in {} strata; checks {}",
        result.checks.points,
        cfg.p,
        2 * cfg.m,
        result.records.len(),
        if ok { "pass" } else { "FAIL" }
    );
    Ok(Outcome { body, summary, ok })
}

pub fn cmd_verify(cfg: &RunConfig) -> CmdResult {
    require_json(cfg, "verify")?;
    let c = cfg.c;
    let g = cfg.g.unwrap_or(2 * c);
    if 2 * c > g {
        return Err(CliError::Config(format!("verify needs 2c <= g, got c = {c}, g = {g}")));
    }
    let field = census_field(cfg.p, cfg.m)?;
    let space = SymplecticSpace::standard(&field, c);
    let points: Vec<Subspace> = match cfg.trials {
        Some(n) => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            (0..n).map(|_| space.random_lagrangian(&mut rng)).collect()
        }
        None => {
            check_point_budget(&space)?;
            space.enumerate_lagrangians()
        }
    };
    let results: Vec<(WeylElement, bool)> = points
        .par_iter()
        .map(|u| Ok((classify_fine(&space, u, DEFAULT_TWIST)?.w, verify_pullback(u, g)?)))
        .collect::<Result<_, Error>>()?;
    let mut per: BTreeMap<(usize, WeylElement), (u64, u64)> = BTreeMap::new();
    for (w, pass) in &results {
        let e = per.entry((w.length(), w.clone())).or_default();
        e.0 += 1;
        e.1 += *pass as u64;
    }
    let strata: Vec<Value> = per
        .iter()
        .map(|((_, w), (n, pass))| json!({"label": w, "lift": w.r_map_inv(g).ok(), "points": n, "passed": pass}))
        .collect();
    let failed = results.iter().filter(|r| !r.1).count();
    let mut summary = String::new();
    for ((_, w), (n, pass)) in &per {
        summary.push_str(&format!("stratum {w}: {pass}/{n} pass\n"));
    }
    summary.push_str(&format!("{} points, {failed} mismatches", results.len()));
    let body = to_json(&json!({
        "header": header("verify", cfg, &[&field]),
        "g": g,
        "points": results.len(),
        "mismatches": failed,
        "strata": strata,
    }));
    Ok(Outcome { body, summary, ok: failed == 0 })
}

pub fn cmd_bedard(cfg: &RunConfig) -> CmdResult {
    require_json(cfg, "bedard")?;
    let c = cfg.c;
    if c == 0 || c > 5 {
        return Err(CliError::Config(format!("bedard needs 1 <= c <= 5, got {c}")));
    }
    let seqs = enumerate_sequences(&ParabolicType::siegel(c), &FrobeniusAction::identity(c))?;
    let n = seqs.len();
    let body = to_json(&json!({"header": header("bedard", cfg, &[]), "sequences": seqs}));
    Ok(Outcome { body, summary: format!("{n} sequences for c = {c}"), ok: true })
}

fn dispatch(cmd: &Command) -> (CmdResult, &RunConfig) {
    match cmd {
        Command::Strata(c) => (cmd_strata(c), c),
        Command::Census(c) => (cmd_census(c), c),
        Command::Verify(c) => (cmd_verify(c), c),
        Command::Bedard(c) => (cmd_bedard(c), c),
    }
}

/// Parses arguments, runs the command, writes output; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let (result, cfg) = dispatch(&cli.command);
    let outcome = match result {
        Ok(o) => o,
        Err(CliError::Config(msg)) => {
            eprintln!("error: {msg}");
            return 2;
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("check failed: {msg}");
            return 1;
        }
    };
    let written = match &cfg.out {
        Some(path) => std::fs::write(path, &outcome.body),
        None => std::io::stdout().write_all(outcome.body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return 2;
    }
    eprintln!("{}", outcome.summary);
    if outcome.ok { 0 } else { 1 }
}
