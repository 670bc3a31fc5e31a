//! `mgeo`: compute metric-geometry objects, run seeded property suites and
//! generate random instances.

mod compute;
mod generate;
mod report;
mod space;
mod suites;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::compute::Op;
use crate::generate::{Kind, Params};
use crate::report::Report;

#[derive(Parser, Debug)]
#[command(name = "mgeo", version, about = "Metric geometry on finite instances")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// euclidean[:dim] or klein[:dim[:r[:k]]]
    #[arg(long, global = true, default_value = "euclidean:2")]
    space: String,
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Tolerance for the self-checks of `compute`.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one operation on a JSON input.
    Compute {
        #[arg(value_enum)]
        op: Op,
        /// A JSON file, or inline JSON starting with `{`.
        #[arg(long)]
        input: String,
    },
    /// Run a property suite, or `all`.
    Suite { name: String },
    /// Write a seeded random instance.
    Generate {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        clusters: usize,
        /// Cluster radius as a fraction of the sampling radius.
        #[arg(long, default_value_t = 0.1)]
        spread: f64,
    },
}

fn read_input(arg: &str) -> Result<Value> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?
    };
    serde_json::from_str(&text).context("input is not valid JSON")
}

fn emit(out: &Option<PathBuf>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(path) => fs::write(path, bytes).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(bytes)?;
            Ok(stdout.flush()?)
        }
    }
}

fn write_report(cli: &Cli, report: &Report) -> Result<()> {
    let bytes = match cli.format {
        Format::Json => {
            let mut s = report.to_json()?;
            s.push('\n');
            s.into_bytes()
        }
        Format::Csv => {
            let mut buf = Vec::new();
            report.write_csv(&mut buf)?;
            buf
        }
    };
    emit(&cli.out, &bytes)
}

/// Points of a generated instance, one row each, tagged by set name.
fn instance_csv(v: &Value) -> Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    w.write_record(["set", "index", "coords..."])?;
    if let Some(data) = v["data"].as_object() {
        for (name, pts) in data {
            let list = match pts {
                Value::Array(a) if a.first().is_some_and(Value::is_array) => a.clone(),
                Value::Array(_) => vec![pts.clone()],
                Value::Object(o) => o.get("vertices").and_then(Value::as_array).cloned().unwrap_or_default(),
                _ => continue,
            };
            for (i, p) in list.iter().enumerate() {
                let mut row = vec![name.clone(), i.to_string()];
                row.extend(p.as_array().into_iter().flatten().map(|c| c.to_string()));
                w.write_record(&row)?;
            }
        }
    }
    Ok(w.into_inner()?)
}

fn run(cli: &Cli) -> Result<bool> {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        bail!("--tol must be positive, got {}", cli.tol);
    }
    let space = space::parse_space(&cli.space)?;
    let started = Instant::now();
    let mut report = match &cli.command {
        Command::Compute { op, input } => {
            let input = read_input(input)?;
            let (result, checks) = compute::run(*op, &space, &input, cli.tol).with_context(|| format!("compute {}", op.name()))?;
            let inputs = json!({"op": op.name(), "space": space, "tol": cli.tol, "input": input});
            Report::new(format!("compute {}", op.name()), &inputs, cli.space.clone(), cli.seed, result, checks)
        }
        Command::Suite { name } => {
            let checks = suites::run(name, cli.seed)?;
            let inputs = json!({"suite": name, "seed": cli.seed});
            let result = json!({"records": checks.len(), "failed": checks.iter().filter(|c| !c.pass).count()});
            Report::new(format!("suite {name}"), &inputs, cli.space.clone(), cli.seed, result, checks)
        }
        Command::Generate { kind, n, clusters, spread } => {
            let params = Params { n: *n, clusters: *clusters, spread: *spread };
            let v = generate::generate(&space, *kind, params, cli.seed)?;
            let bytes = match cli.format {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&v)?).into_bytes(),
                Format::Csv => instance_csv(&v)?,
            };
            emit(&cli.out, &bytes)?;
            return Ok(true);
        }
    };
    report.timing_ms = started.elapsed().as_secs_f64() * 1e3;
    write_report(cli, &report)?;
    Ok(report.pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
