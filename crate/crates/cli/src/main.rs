//! `pinchlab`: JSON in, JSON out.
//!
//! Exit status 0 on success, 1 for bad input, 2 when an internal consistency
//! check fails (including any failing `verify-paper` record).

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pinchlab::corpus::{evaluate, parse_corpus, run_records, verify_paper_seeded};
use pinchlab::{oracle, Error, Result};
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(name = "pinchlab", version, about = "Model singularities of pointed curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct Common {
    /// Input JSON file, `-` for stdin, or an inline JSON object.
    #[arg(long = "in", value_name = "FILE")]
    input: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Degree horizon for dimension tables and membership lists.
    #[arg(long, value_name = "N")]
    horizon: Option<u64>,
    /// Seed for the randomized suites.
    #[arg(long, value_name = "N")]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Numerical semigroups: explicit generators, a curve point, or the non-Weierstrass case.
    Semigroup {
        /// Semigroup of a non-Weierstrass point of this genus.
        #[arg(long, value_name = "G")]
        non_weierstrass: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Graded pieces, generators, branch maps and ghost conditions.
    Model(Common),
    /// Ghost Taylor conditions only.
    Ghost(Common),
    /// Suspension of a model by extra branches.
    Suspend(Common),
    /// Central fibre and members of the smoothing family.
    Family(Common),
    /// Runs the built-in corpus of worked examples, or the corpus given with --in.
    VerifyPaper(Common),
    /// Independent brute-force recomputation of a single task.
    Oracle(Common),
}

fn read_input(common: &Common) -> Result<Value> {
    let text = match common.input.as_deref() {
        None => return Err(Error::InvalidInput("this subcommand needs --in".into())),
        Some("-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Error::InvalidInput(format!("stdin: {e}")))?;
            s
        }
        Some(s) if s.trim_start().starts_with('{') => s.to_string(),
        Some(path) => std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{path}: {e}")))?,
    };
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("input is not JSON: {e}")))?;
    if !v.is_object() {
        return Err(Error::InvalidInput("input must be a JSON object".into()));
    }
    Ok(v)
}

fn project(v: &Value, keys: &[&str]) -> Value {
    let m: Map<String, Value> = keys.iter().filter_map(|&k| v.get(k).map(|x| (k.to_string(), x.clone()))).collect();
    Value::Object(m)
}

fn model_input(common: &Common) -> Result<Value> {
    let mut input = read_input(common)?;
    if let Some(h) = common.horizon {
        input["dims_horizon"] = json!(h);
    }
    Ok(input)
}

/// Runs a subcommand; the flag says whether the report passed its own checks.
fn run(command: &Command) -> Result<(Value, bool)> {
    let report = match command {
        Command::Semigroup { non_weierstrass, common } => {
            let mut input = match (non_weierstrass, &common.input) {
                (Some(g), None) => json!({ "non_weierstrass": g }),
                (None, Some(_)) => read_input(common)?,
                (Some(_), Some(_)) => return Err(Error::InvalidInput("give either --non-weierstrass or --in".into())),
                (None, None) => return Err(Error::InvalidInput("semigroup needs --non-weierstrass or --in".into())),
            };
            if let Some(h) = common.horizon {
                input["members_up_to"] = json!(h);
            }
            let kind = if input.get("curve").is_some() { "curve-semigroup" } else { "semigroup" };
            evaluate(kind, &input)?
        }
        Command::Model(common) => evaluate("model", &model_input(common)?)?,
        Command::Ghost(common) => {
            let full = evaluate("model", &model_input(common)?)?;
            project(&full, &["genus", "weights", "M_actual", "gap_dimension", "ghost_conditions", "ghost_summary"])
        }
        Command::Suspend(common) => evaluate("suspend", &read_input(common)?)?,
        Command::Family(common) => {
            let input = read_input(common)?;
            let mut out = evaluate("central-fibre", &input)?;
            if input.get("t").is_some() || input.get("at").is_some() {
                out["member"] = evaluate("family-member", &input)?;
            }
            if let Some(h) = common.horizon {
                let mut fibre = input.clone();
                fibre["horizon"] = json!(h);
                out["fibre_report"] = evaluate("fibre-report", &fibre)?;
            }
            out
        }
        Command::VerifyPaper(common) => {
            let records = match &common.input {
                None => verify_paper_seeded(common.seed)?,
                // A corpus file in the built-in format replaces the shipped one.
                Some(_) => run_records(&parse_corpus(&read_input(common)?.to_string())?),
            };
            let failed: Vec<&str> = records.iter().filter(|r| !r.passed()).map(|r| r.id.as_str()).collect();
            let report = json!({
                "pass": failed.is_empty(),
                "total": records.len(),
                "failed": failed,
                "records": records.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
            });
            let ok = failed.is_empty();
            return Ok((report, ok));
        }
        Command::Oracle(common) => {
            let mut input = read_input(common)?;
            if let Some(h) = common.horizon {
                input["horizon"] = json!(h);
            }
            oracle::run_task(&input)?
        }
    };
    Ok((report, true))
}

fn common(command: &Command) -> &Common {
    match command {
        Command::Semigroup { common, .. } => common,
        Command::Model(c)
        | Command::Ghost(c)
        | Command::Suspend(c)
        | Command::Family(c)
        | Command::VerifyPaper(c)
        | Command::Oracle(c) => c,
    }
}

fn emit(report: &Value, out: Option<&PathBuf>) -> Result<()> {
    let text = serde_json::to_string_pretty(report).expect("JSON values serialize") + "\n";
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display()))),
        None => {
            // A closed pipe is not worth a panic.
            let _ = std::io::stdout().write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("{}", json!({ "error": e.code(), "message": e.to_string() }));
    ExitCode::from(if e.is_internal() { 2 } else { 1 })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // Usage errors are input errors; help and version requests succeed.
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if let Err(e) = pinchlab::configure_threads() {
        return fail(&e);
    }
    let (report, ok) = match run(&cli.command) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    if let Err(e) = emit(&report, common(&cli.command).out.as_ref()) {
        return fail(&e);
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        eprintln!("{}", json!({ "error": "internal-consistency", "failed": report["failed"] }));
        ExitCode::from(2)
    }
}
