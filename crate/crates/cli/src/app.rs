//! Argument parsing and dispatch. [`run`] never exits the process, so it
//! can be driven from tests.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use fluxform::{Error, Rational, Tolerance};
use serde_json::Value;

use crate::demos;
use crate::report::Report;
use crate::scenario::{classify_document, run_tasks, FormDocument, Mode, Scenario, Task};

/// Structural failures: bad arguments, unreadable or malformed input,
/// unknown demos, and computations whose preconditions fail.
pub const EXIT_STRUCTURAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "fluxform", version, about = "Special 3-forms and Einstein checks on homogeneous 7-manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Arithmetic: exact rationals or f64. Defaults to the scenario's
    /// choice, then to exact with a float fallback when roots are irrational.
    #[arg(long, global = true, value_enum)]
    mode: Option<ModeArg>,
    /// Absolute tolerance for float comparisons.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Also write the JSON report to this path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Format printed on stdout.
    #[arg(long, global = true, value_enum, default_value_t = ReportFormat::Text)]
    report: ReportFormat,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every task listed in a scenario.
    Verify { file: PathBuf },
    /// Solve the Maxwell eigenproblem for a scenario.
    SolveMaxwell { file: PathBuf },
    /// Classify a 3-form: a scenario's phi or a bare form document.
    ClassifyForm { file: PathBuf },
    /// Ricci tensor of a scenario's metric.
    Ricci { file: PathBuf },
    /// Run a built-in demo.
    Demo { name: String },
    /// List the built-in demos.
    ListDemos,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

/// Exit code and captured output streams.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn structural(msg: impl Into<String>) -> Self {
        Outcome { code: EXIT_STRUCTURAL, stdout: String::new(), stderr: format!("error: {}\n", msg.into()) }
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: 0, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: EXIT_STRUCTURAL, stdout: String::new(), stderr: text },
            };
        }
    };
    if let Some(t) = cli.tolerance {
        if !(t.is_finite() && t >= 0.0) {
            return Outcome::structural(format!("tolerance must be a nonnegative number, got {t}"));
        }
    }
    let cli_mode = cli.mode.map(|m| match m {
        ModeArg::Exact => Mode::Exact,
        ModeArg::Float => Mode::Float,
    });
    let result = match &cli.command {
        Command::ListDemos => {
            let mut out = String::new();
            for (name, about) in demos::DEMOS {
                out.push_str(&format!("{name:<14} {about}\n"));
            }
            return Outcome { code: 0, stdout: out, stderr: String::new() };
        }
        Command::Demo { name } => {
            let tol = Tolerance::absolute(cli.tolerance.unwrap_or(1e-9));
            demos::run(name, cli_mode.unwrap_or(Mode::Exact), &tol).map_err(|e| e.to_string())
        }
        Command::Verify { file } => scenario_command(file, None, cli_mode, cli.tolerance, "verify"),
        Command::SolveMaxwell { file } => {
            scenario_command(file, Some(Task::SolveMaxwell), cli_mode, cli.tolerance, "solve-maxwell")
        }
        Command::Ricci { file } => scenario_command(file, Some(Task::Ricci), cli_mode, cli.tolerance, "ricci"),
        Command::ClassifyForm { file } => classify_command(file, cli_mode, cli.tolerance),
    };
    match result {
        Ok(report) => emit(&report, cli.report, cli.out.as_ref()),
        Err(msg) => Outcome::structural(msg),
    }
}

fn emit(report: &Report, format: ReportFormat, out: Option<&PathBuf>) -> Outcome {
    let json = report.to_json();
    if let Some(path) = out {
        if let Err(e) = std::fs::write(path, &json) {
            return Outcome::structural(format!("cannot write {}: {e}", path.display()));
        }
    }
    let stdout = match format {
        ReportFormat::Json => json,
        ReportFormat::Text => report.to_text(),
    };
    Outcome { code: report.exit_code, stdout, stderr: String::new() }
}

fn read_json(path: &PathBuf) -> Result<Value, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| json_error(path, &e))
}

fn json_error(path: &PathBuf, e: &serde_json::Error) -> String {
    let kind = match e.classify() {
        serde_json::error::Category::Syntax | serde_json::error::Category::Eof => "malformed JSON",
        _ => "invalid document",
    };
    format!("{kind} in {} at line {}, column {}: {e}", path.display(), e.line(), e.column())
}

fn parse_mode(text: Option<&String>) -> Result<Option<Mode>, String> {
    text.map(|m| Mode::parse(m).ok_or_else(|| format!("unknown mode '{m}'"))).transpose()
}

/// Runs `body` in the resolved mode. Without an explicit mode an exact run
/// that needs an irrational number is repeated in float mode.
fn with_mode<F>(title: String, explicit: Option<Mode>, body: F) -> Result<Report, String>
where
    F: Fn(Mode, &mut Report) -> fluxform::Result<()>,
{
    let mode = explicit.unwrap_or(Mode::Exact);
    let mut report = Report::new(title.clone(), mode.name());
    match body(mode, &mut report) {
        Ok(()) => Ok(report),
        Err(Error::Inexact(why)) if explicit.is_none() => {
            let mut report = Report::new(title, Mode::Float.name());
            report.note(format!("exact arithmetic unavailable ({why}); ran in float mode"));
            body(Mode::Float, &mut report).map_err(|e| e.to_string())?;
            Ok(report)
        }
        Err(e) => Err(e.to_string()),
    }
}

fn scenario_command(
    path: &PathBuf,
    only: Option<Task>,
    cli_mode: Option<Mode>,
    cli_tol: Option<f64>,
    verb: &str,
) -> Result<Report, String> {
    let value = read_json(path)?;
    let sc: Scenario = serde_json::from_value(value).map_err(|e| format!("invalid scenario in {}: {e}", path.display()))?;
    let listed = sc.validate().map_err(|e| e.to_string())?;
    let tasks = match only {
        Some(t) => vec![t],
        None => listed,
    };
    let explicit = cli_mode.or(parse_mode(sc.mode.as_ref())?);
    let tol = Tolerance::absolute(cli_tol.or(sc.tolerance).unwrap_or(1e-9));
    with_mode(format!("{verb} {}", sc.name), explicit, |mode, report| match mode {
        Mode::Exact => run_tasks::<Rational>(&sc, &tasks, &tol, report),
        Mode::Float => run_tasks::<f64>(&sc, &tasks, &tol, report),
    })
}

fn classify_command(path: &PathBuf, cli_mode: Option<Mode>, cli_tol: Option<f64>) -> Result<Report, String> {
    let value = read_json(path)?;
    if value.get("form").is_none() {
        return scenario_command(path, Some(Task::Classify), cli_mode, cli_tol, "classify-form");
    }
    let doc: FormDocument =
        serde_json::from_value(value).map_err(|e| format!("invalid form document in {}: {e}", path.display()))?;
    if doc.schema != 1 {
        return Err(format!("unsupported schema {}; expected 1", doc.schema));
    }
    let explicit = cli_mode.or(parse_mode(doc.mode.as_ref())?);
    let tol = Tolerance::absolute(cli_tol.unwrap_or(1e-9));
    let title = format!("classify-form {}", doc.name.clone().unwrap_or_else(|| path.display().to_string()));
    with_mode(title, explicit, |mode, report| match mode {
        Mode::Exact => classify_document::<Rational>(&doc, &tol, report),
        Mode::Float => classify_document::<f64>(&doc, &tol, report),
    })
}
