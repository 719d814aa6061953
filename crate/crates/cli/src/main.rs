use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use cybe_core::fixtures::FIXTURES;
use cybe_core::pipeline::{run_pipeline, CheckName, Report};
use cybe_core::problem::{parse_probes, parse_problem};
use cybe_core::report::{emit_report, report_json, Format};

/// Set to anything other than "" or "0" to include per-check timings.
const VERBOSE_ENV: &str = "CYBE_VERBOSE";

#[derive(Parser)]
#[command(name = "cybe", version, about = "Exact checks for Yang-Baxter induced Poisson structures and connections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run checks on a problem file.
    Check {
        problem: PathBuf,
        /// Comma-separated check names (aliases: yb, flatness, hawkins, structure).
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<String>>,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
        /// JSON array of probe points, replacing the problem's own probes.
        #[arg(long)]
        probes: Option<PathBuf>,
    },
    /// Shipped problem files.
    Fixtures {
        #[command(subcommand)]
        action: FixtureAction,
    },
}

#[derive(Subcommand)]
enum FixtureAction {
    List,
    RunAll {
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Text,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Format {
        match f {
            OutFormat::Json => Format::Json,
            OutFormat::Text => Format::Text,
        }
    }
}

fn verbose() -> bool {
    std::env::var(VERBOSE_ENV).is_ok_and(|v| !v.is_empty() && v != "0")
}

fn parse_only(names: &[String]) -> anyhow::Result<BTreeSet<CheckName>> {
    names
        .iter()
        .map(|n| CheckName::parse(n.trim()).ok_or_else(|| anyhow!("unknown check `{n}`")))
        .collect()
}

fn check(problem: PathBuf, only: Option<Vec<String>>, format: OutFormat, probes: Option<PathBuf>) -> anyhow::Result<Report> {
    let text = std::fs::read(&problem).with_context(|| format!("reading {}", problem.display()))?;
    let mut spec = parse_problem(&text)?;
    if let Some(p) = probes {
        let Some(action) = &spec.action else {
            bail!("--probes needs a problem with an action");
        };
        let text = std::fs::read(&p).with_context(|| format!("reading {}", p.display()))?;
        spec.probes = parse_probes(&text, action.coords.len()).with_context(|| format!("in {}", p.display()))?;
    }
    let only = only.as_deref().map(parse_only).transpose()?;
    let rep = run_pipeline(&spec, only.as_ref());
    std::io::stdout().write_all(&emit_report(&rep, format.into(), verbose()))?;
    Ok(rep)
}

fn run_all(format: OutFormat) -> anyhow::Result<i32> {
    let timings = verbose();
    let mut reports = Vec::new();
    for f in FIXTURES {
        let spec = parse_problem(f.json.as_bytes()).with_context(|| format!("fixture {}", f.name))?;
        reports.push(run_pipeline(&spec, None));
    }
    let mut out = std::io::stdout().lock();
    match format {
        OutFormat::Json => {
            let all: Vec<_> = reports.iter().map(|r| report_json(r, timings)).collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&all)?)?;
        }
        OutFormat::Text => {
            for r in &reports {
                out.write_all(&emit_report(r, Format::Text, timings))?;
            }
            let bad = reports.iter().filter(|r| r.exit_code() != 0).count();
            writeln!(out, "fixtures: {} run, {} with unexpected verdicts", reports.len(), bad)?;
        }
    }
    Ok(reports.iter().map(Report::exit_code).max().unwrap_or(0))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check {
            problem,
            only,
            format,
            probes,
        } => check(problem, only, format, probes).map(|r| r.exit_code()),
        Command::Fixtures { action: FixtureAction::List } => {
            for f in FIXTURES {
                println!("{}", f.name);
            }
            Ok(0)
        }
        Command::Fixtures {
            action: FixtureAction::RunAll { format },
        } => run_all(format),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
