//! Report serialization. Output bytes depend only on the report contents;
//! timings are included only when asked for.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::pipeline::{Report, Verdict};

pub const REPORT_SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

impl Format {
    pub fn parse(s: &str) -> Option<Format> {
        match s {
            "json" => Some(Format::Json),
            "text" => Some(Format::Text),
            _ => None,
        }
    }
}

fn count(rep: &Report, v: Verdict) -> usize {
    rep.checks.iter().filter(|c| c.verdict == v).count()
}

pub fn report_json(rep: &Report, timings: bool) -> Value {
    let checks: Vec<Value> = rep
        .checks
        .iter()
        .map(|c| {
            let mut m = Map::new();
            m.insert("check".into(), json!(c.check.as_str()));
            m.insert("verdict".into(), json!(c.verdict.as_str()));
            if let Some(e) = c.expected {
                m.insert("expected".into(), json!(e.as_str()));
            }
            m.insert("unexpected".into(), json!(c.unexpected()));
            if let Some(w) = &c.witness {
                m.insert("witness".into(), json!(w));
            }
            m.insert("details".into(), json!(c.details));
            if timings {
                m.insert("elapsed_ms".into(), json!(c.elapsed.as_secs_f64() * 1000.0));
            }
            Value::Object(m)
        })
        .collect();
    json!({
        "schema_version": REPORT_SCHEMA_VERSION,
        "problem": rep.problem,
        "checks": checks,
        "summary": {
            "pass": count(rep, Verdict::Pass),
            "fail": count(rep, Verdict::Fail),
            "skipped": count(rep, Verdict::Skipped),
            "refused": count(rep, Verdict::Refused),
            "unexpected": rep.checks.iter().filter(|c| c.unexpected()).count(),
        },
        "exit_code": rep.exit_code(),
    })
}

pub fn report_text(rep: &Report, timings: bool) -> String {
    let mut out = String::new();
    let name = rep.problem.as_deref().unwrap_or("<unnamed>");
    writeln!(out, "problem: {name}").unwrap();
    let width = rep.checks.iter().map(|c| c.check.as_str().len()).max().unwrap_or(0);
    for c in &rep.checks {
        let mut line = format!("  {:width$}  {}", c.check.as_str(), c.verdict.as_str().to_uppercase());
        match (c.expected, c.unexpected()) {
            (Some(_), false) if c.verdict != Verdict::Pass => line.push_str(" (expected)"),
            (Some(e), true) => line.push_str(&format!(" (UNEXPECTED, expected {})", e.as_str())),
            (None, true) => line.push_str(" (UNEXPECTED)"),
            _ => {}
        }
        if timings {
            line.push_str(&format!("  [{:.3} ms]", c.elapsed.as_secs_f64() * 1000.0));
        }
        writeln!(out, "{line}").unwrap();
        if let Some(w) = &c.witness {
            writeln!(out, "      witness: {w}").unwrap();
        }
        for d in &c.details {
            writeln!(out, "      {d}").unwrap();
        }
    }
    writeln!(
        out,
        "summary: {} pass, {} fail, {} skipped, {} refused, {} unexpected",
        count(rep, Verdict::Pass),
        count(rep, Verdict::Fail),
        count(rep, Verdict::Skipped),
        count(rep, Verdict::Refused),
        rep.checks.iter().filter(|c| c.unexpected()).count()
    )
    .unwrap();
    out
}

pub fn emit_report(rep: &Report, format: Format, timings: bool) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report_json(rep, timings)).expect("JSON values serialize");
            s.push('\n');
            s.into_bytes()
        }
        Format::Text => report_text(rep, timings).into_bytes(),
    }
}
