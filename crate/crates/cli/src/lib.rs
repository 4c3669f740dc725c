//! Command-line front end. Every command produces its whole output as a
//! string first, so JSON output is byte-stable under a fixed configuration.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use fermat5::arith::{parse_rational, Rational};
use fermat5::curves::{
    prove, search_points, verify_certificate_with, AffinePoint, CurveId, FactTable, Verdict,
};
use fermat5::galois::{classify_quartic, splitting_degree_oracle};
use fermat5::line::scan_parameters;
use fermat5::pipeline::{render_poly, render_text, run_theorem2_with, ScanSummary};
use fermat5::poly::{qx, QPoly};

/// Version of every JSON document the CLI emits.
pub const OUTPUT_SCHEMA_VERSION: u32 = 1;

pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const OPERATIONAL: i32 = 1;
    pub const REFUTED: i32 = 2;
    /// BSD `EX_USAGE`.
    pub const USAGE: i32 = 64;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Run the full chain for the cyclic quartic field and its point.
    VerifyTheorem,
    /// Profile every line parameter t up to the height bound.
    Scan,
    /// List the rational points of C1 or C2 up to the height bound.
    SearchCurve {
        #[arg(value_parser = parse_curve)]
        curve: CurveId,
    },
    /// Emit and check the obstruction certificate for C1 or C2.
    Certify {
        #[arg(value_parser = parse_curve)]
        curve: CurveId,
    },
    /// Galois class of a quartic, coefficients leading first, e.g. 31,-36,26,-36,31.
    Classify {
        #[arg(allow_hyphen_values = true, value_parser = parse_quartic)]
        coefficients: QPoly,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Parser)]
#[command(name = "fermat5", version, about = "Certified computations for quartic points on x^5 + y^5 + z^5 = 0")]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Height bound for scans and searches.
    #[arg(long = "height", global = true, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub height_bound: u64,
    #[arg(long = "format", global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub output_format: OutputFormat,
    /// Write the output here instead of stdout.
    #[arg(long = "out", global = true)]
    pub output_path: Option<PathBuf>,
    /// Cross-check Galois classes by explicit root finding.
    #[arg(long = "oracle", global = true)]
    pub oracle_enabled: bool,
}

fn parse_curve(s: &str) -> Result<CurveId, String> {
    s.parse().map_err(|e: fermat5::Error| e.to_string())
}

/// Comma-separated coefficients, leading first; degree exactly 4.
pub fn parse_quartic(s: &str) -> Result<QPoly, String> {
    let mut coeffs = s
        .split(',')
        .map(|c| parse_rational(c).map_err(|e| e.to_string()))
        .collect::<Result<Vec<Rational>, _>>()?;
    coeffs.reverse();
    let q = qx().from_coeffs(coeffs);
    if q.degree() != Some(4) {
        return Err(format!("expected 5 coefficients of a quartic, got degree {:?}", q.degree()));
    }
    Ok(q)
}

pub fn parse_args<I, T>(args: I) -> Result<CliConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    CliConfig::try_parse_from(args)
}

/// Rendered output and the exit code it carries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub exit_code: i32,
}

pub fn produce(config: &CliConfig, facts: &FactTable) -> anyhow::Result<Outcome> {
    let json = config.output_format == OutputFormat::Json;
    let (output, exit_code) = match &config.command {
        Command::VerifyTheorem => {
            let report = run_theorem2_with(config.height_bound, facts, config.oracle_enabled)?;
            let code = if report.is_confirmed() { exit::SUCCESS } else { exit::REFUTED };
            (if json { report.to_json() } else { render_text(&report) }, code)
        }
        Command::Scan => (scan(config.height_bound, json)?, exit::SUCCESS),
        Command::SearchCurve { curve } => (search(*curve, config.height_bound, json), exit::SUCCESS),
        Command::Certify { curve } => certify(*curve, facts, json),
        Command::Classify { coefficients } => (classify(coefficients, config.oracle_enabled, json)?, exit::SUCCESS),
    };
    Ok(Outcome { output: with_newline(output), exit_code })
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

/// Produces and writes the output; returns the process exit code.
pub fn execute(config: &CliConfig, facts: &FactTable) -> i32 {
    let outcome = match produce(config, facts) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return exit::OPERATIONAL;
        }
    };
    let written = match &config.output_path {
        Some(path) => std::fs::write(path, &outcome.output).with_context(|| format!("writing {}", path.display())),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(outcome.output.as_bytes()).context("writing stdout")
        }
    };
    match written {
        Ok(()) => outcome.exit_code,
        Err(e) => {
            eprintln!("error: {e:#}");
            exit::OPERATIONAL
        }
    }
}

/// Full entry point: parse, run against the embedded fact table, report.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match parse_args(args) {
        Ok(config) => execute(&config, &FactTable::embedded()),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                exit::USAGE
            } else {
                exit::SUCCESS
            }
        }
    }
}

fn scan(height_bound: u64, json: bool) -> anyhow::Result<String> {
    let profiles = scan_parameters(height_bound)?;
    let summary = ScanSummary::from_profiles(height_bound, &profiles);
    if json {
        let doc = json!({
            "schema_version": OUTPUT_SCHEMA_VERSION,
            "height_bound": height_bound,
            "summary": summary,
            "profiles": profiles,
        });
        return Ok(serde_json::to_string_pretty(&doc)?);
    }
    let join = |v: &[Rational]| v.iter().map(Rational::to_string).collect::<Vec<_>>().join(", ");
    let mut s = String::new();
    writeln!(s, "height <= {height_bound}: {} parameters", summary.parameters)?;
    writeln!(s, "condition (1) hits: [{}]", join(&summary.cond1_hits))?;
    writeln!(s, "condition (2) hits: [{}]", join(&summary.cond2_hits))?;
    for (class, n) in &summary.class_counts {
        writeln!(s, "{class:>9} {n}")?;
    }
    writeln!(s, "order 4 without a condition: [{}]", join(&summary.order4_without_condition))?;
    writeln!(s, "order 8 not D4: [{}]", join(&summary.order8_not_dihedral))?;
    write!(s, "condition without order 4: [{}]", join(&summary.condition_without_order4))?;
    Ok(s)
}

fn points_text(points: &[AffinePoint]) -> String {
    points.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("\n")
}

fn search(curve: CurveId, height_bound: u64, json: bool) -> String {
    let points = search_points(curve, height_bound);
    if json {
        let doc = json!({
            "schema_version": OUTPUT_SCHEMA_VERSION,
            "curve": curve,
            "height_bound": height_bound,
            "points": points,
        });
        return serde_json::to_string_pretty(&doc).expect("points serialize");
    }
    let mut s = format!("{curve}: {} points with height(X) <= {height_bound}", points.len());
    if !points.is_empty() {
        s.push('\n');
        s.push_str(&points_text(&points));
    }
    s
}

/// The certificate is emitted even when it fails to verify; the exit code
/// and a stderr line carry the failure.
fn certify(curve: CurveId, facts: &FactTable, json: bool) -> (String, i32) {
    let cert = prove(curve);
    let checked = verify_certificate_with(&cert, facts);
    if let Err(f) = &checked {
        eprintln!("certificate rejected: {f}");
    }
    let code = if checked.is_ok() { exit::SUCCESS } else { exit::REFUTED };
    if json {
        return (cert.to_json(), code);
    }
    let mut s = format!("{curve}: {} steps, ", cert.steps.len());
    match &checked {
        Ok(()) => s.push_str("verified\n"),
        Err(f) => {
            let _ = writeln!(s, "rejected at {f}");
        }
    }
    for step in &cert.steps {
        let _ = writeln!(s, "  {:<18} {}", step.kind(), step.label());
    }
    match &cert.verdict {
        Verdict::Empty => s.push_str("verdict: empty"),
        Verdict::Points(p) => {
            let _ = write!(s, "verdict: {} points\n{}", p.len(), points_text(p));
        }
    }
    (s, code)
}

fn classify(q: &QPoly, oracle: bool, json: bool) -> anyhow::Result<String> {
    let class = classify_quartic(q)?;
    let oracle_order = match (oracle, class) {
        (true, Some(_)) => Some(splitting_degree_oracle(q)?),
        _ => None,
    };
    let rendered = render_poly(q.coeffs(), "X");
    if json {
        let mut doc = json!({
            "schema_version": OUTPUT_SCHEMA_VERSION,
            "polynomial": rendered,
            "irreducible": class.is_some(),
            "galois_class": class,
            "order": class.map(|c| c.order()),
        });
        if let Some(o) = oracle_order {
            doc["oracle_order"] = json!(o);
        }
        return Ok(serde_json::to_string_pretty(&doc)?);
    }
    let mut s = match class {
        Some(c) => format!("{c}"),
        None => "reducible".to_string(),
    };
    if let Some(o) = oracle_order {
        let _ = write!(s, " (root finding: order {o})");
    }
    Ok(s)
}
