//! Command-line frontend for the `cryoion` models.
//!
//! [`run`] takes the full argv and two sinks and returns the process exit
//! code: 0 on success, 1 when a computation or input file fails, 2 for usage
//! errors (unknown commands or flags, malformed flag values).

mod args;
mod commands;
pub mod config;
pub mod csvio;
pub mod report;
pub mod units;

use std::io::Write;
use std::path::Path;

use clap::error::ErrorKind;
use clap::Parser;
use thiserror::Error;

pub use commands::{demo_commands, DEMO_COMMANDS};
use report::{Format, Provenance, Report};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Input(_) | CliError::Compute(_) => 1,
        }
    }
}

macro_rules! compute_errors {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Compute(e.to_string())
            }
        })*
    };
}

compute_errors!(
    cryoion::magshield::ShieldError,
    cryoion::cryotherm::ThermalError,
    cryoion::trapfield::TrapError,
    cryoion::qubitsim::QubitError,
    cryoion::metrology::MetrologyError,
    cryoion::physcore::SeriesError
);

impl From<csvio::CsvError> for CliError {
    fn from(e: csvio::CsvError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<config::ConfigError> for CliError {
    fn from(e: config::ConfigError) -> Self {
        CliError::Input(e.to_string())
    }
}

/// Per-invocation state: the provenance digest accumulates every input read.
pub(crate) struct Context {
    pub provenance: Provenance,
}

impl Context {
    pub fn read(&mut self, path: &Path) -> Result<String, CliError> {
        let name = path.display().to_string();
        let bytes = std::fs::read(path).map_err(|e| match e.kind() {
            std::io::ErrorKind::NotFound => CliError::Input(format!("file not found: {name}")),
            _ => CliError::Input(format!("cannot read {name}: {e}")),
        })?;
        self.provenance.add_input(&name, &bytes);
        String::from_utf8(bytes).map_err(|_| CliError::Input(format!("{name}: not UTF-8 text")))
    }

    pub fn records(&mut self, path: &Path, columns: csvio::Columns) -> Result<csvio::Records, CliError> {
        let text = self.read(path)?;
        Ok(csvio::parse_records(&text, &path.display().to_string(), columns)?)
    }
}

/// Arguments that only choose where output goes; they do not enter the digest.
fn digest_argv(argv: &[String]) -> Vec<String> {
    let mut kept = Vec::new();
    let mut skip = false;
    for a in argv {
        if skip {
            skip = false;
            continue;
        }
        if a == "--output" || a == "-o" {
            skip = true;
            continue;
        }
        if a.starts_with("--output=") || (a.starts_with("-o") && a.len() > 2 && !a.starts_with("--")) {
            continue;
        }
        kept.push(a.clone());
    }
    kept
}

/// Runs one command line. `argv[0]` is the program name.
pub fn run<S: AsRef<str>>(argv: &[S], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let argv: Vec<String> = argv.iter().map(|s| s.as_ref().to_string()).collect();
    let folded = match units::fold_unit_flags(&argv) {
        Ok(a) => a,
        Err(message) => {
            let _ = writeln!(err, "error: {message}\n\nFor more information, try 'cryoion --help'.");
            return 2;
        }
    };
    let cli = match args::Cli::try_parse_from(&folded) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    2
                }
            };
        }
    };
    let format = if cli.json {
        Format::Json
    } else if cli.csv {
        Format::Csv
    } else {
        Format::Text
    };
    let mut context = Context {
        provenance: Provenance::new(&digest_argv(folded.get(1..).unwrap_or(&[]))),
    };
    let report: Result<Report, CliError> = commands::dispatch(cli.command, &mut context);
    match report {
        Ok(report) => {
            let text = report.render(format, &context.provenance);
            let written = match &cli.output {
                Some(path) => std::fs::write(path, text.as_bytes())
                    .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
                None => out
                    .write_all(text.as_bytes())
                    .map_err(|e| CliError::Input(format!("cannot write output: {e}"))),
            };
            match written {
                Ok(()) => 0,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    e.exit_code()
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn output_flag_is_not_hashed() {
        let a: Vec<String> = ["met", "allan", "--in", "a.csv", "-o", "x.txt"].map(String::from).to_vec();
        let b: Vec<String> = ["met", "allan", "--output=y.txt", "--in", "a.csv"].map(String::from).to_vec();
        assert_eq!(digest_argv(&a), digest_argv(&b));
    }
}
