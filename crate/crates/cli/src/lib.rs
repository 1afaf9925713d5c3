//! Batch front-end: reads a JSON problem specification, runs the requested
//! check, construction or simulation and emits a JSON or text report.
//!
//! Exit codes are 0 (pass), 1 (fail) and 2 (error).

mod error;
mod report;
mod run;
mod spec;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, ValueEnum};

pub use error::CliError;
pub use report::{bracket_doc, poly_doc, ErrorDoc, Report, Status, ViolationDoc};
pub use run::{run, RunOptions};
pub use spec::{parse_spec, Mode, Payload, ProblemSpec, Simulation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "pencil", version, about = "Check, build and simulate nonlocal hydrodynamic-type brackets")]
pub struct Options {
    /// Problem specification (JSON).
    #[arg(long)]
    pub spec: PathBuf,
    /// Report destination; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Overrides the sample-point seed of the specification.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Conservation series CSV (simulate mode).
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Adds wall-clock time to the report.
    #[arg(long)]
    pub timing: bool,
}

fn load(opts: &Options) -> Result<ProblemSpec, CliError> {
    let text = std::fs::read_to_string(&opts.spec)
        .map_err(|e| CliError::Io { path: opts.spec.display().to_string(), source: e })?;
    let mut spec = parse_spec(&text)?;
    if let Some(seed) = opts.seed {
        spec.seed = seed;
    }
    Ok(spec)
}

/// Produces the report for `opts` without writing it.
pub fn execute(opts: &Options) -> Report {
    let start = Instant::now();
    let mut report = match load(opts) {
        Ok(spec) => run(&spec, RunOptions { csv: opts.csv.as_deref() }),
        Err(e) => {
            let mut r = Report::new(None);
            r.set_error(&e);
            r
        }
    };
    if opts.timing {
        report.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    report
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    }
}

/// Runs the command line end to end and returns the process exit code.
pub fn main_with(opts: &Options) -> u8 {
    let report = execute(opts);
    let text = render(&report, opts.format);
    let written = match &opts.out {
        Some(path) => std::fs::write(path, &text).map_err(|e| (path.display().to_string(), e)),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes()).map_err(|e| ("stdout".to_string(), e))
        }
    };
    match written {
        Ok(()) => report.exit_code(),
        Err((path, e)) => {
            eprintln!("pencil: cannot write report to {path}: {e}");
            Status::Error.exit_code()
        }
    }
}
