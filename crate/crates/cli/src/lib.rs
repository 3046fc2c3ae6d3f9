//! Command-line front end for `ccpt-core`.
//!
//! Each subcommand reads a single-column CSV of samples, runs one library
//! pipeline and writes canonical JSON or CSV. [`run`] returns the process
//! exit code: 0 on success, 1 for invalid arguments, 2 for unparsable input
//! and 3 for numeric failures.

pub mod args;
pub mod commands;
pub mod input;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use ccpt_core::export::{matrix_csv, matrix_sidecar_json, signal_csv, to_canonical_json};
use ccpt_core::period::StrengthMode;
use clap::error::ErrorKind;
use clap::Parser;
use thiserror::Error;

use crate::args::{Cli, Command};
use crate::commands::PeriodOptions;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Args(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] ccpt_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use ccpt_core::Error as E;
        match self {
            CliError::Args(_) | CliError::Io { .. } => 1,
            CliError::Parse { .. } => 2,
            CliError::Core(
                E::InvalidBand(_)
                | E::InvalidArgument(_)
                | E::TooFewCandidates(_)
                | E::ZeroPeriod
                | E::UnsupportedFamily(_)
                | E::LengthMismatch { .. },
            ) => 1,
            CliError::Core(_) => 3,
        }
    }
}

fn write_output(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => stdout.write_all(text.as_bytes()).map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        }),
    }
}

fn sidecar_path(csv: &Path) -> PathBuf {
    csv.with_extension("json")
}

pub fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Transform(a) => {
            let x = input::read_samples(&a.io.input, a.io.n)?;
            let v = commands::transform_report(&x, a.family)?;
            write_output(a.io.out.as_deref(), &to_canonical_json(&v), stdout)
        }
        Command::Periods(a) => {
            let x = input::read_samples(&a.io.input, a.io.n)?;
            let opts = PeriodOptions {
                family: a.family,
                method: a.method,
                threshold: a.threshold,
                fs: a.fs,
                p_max: a.pmax,
                penalty: a.penalty.into(),
                candidates: a.candidates,
                mode: if a.per_dimension { StrengthMode::PerDimension } else { StrengthMode::Raw },
            };
            let (v, csv) = commands::periods_report(&x, &opts)?;
            if let (Some(path), Some(table)) = (a.csv.as_deref(), csv) {
                write_output(Some(path), &table, stdout)?;
            }
            write_output(a.io.out.as_deref(), &to_canonical_json(&v), stdout)
        }
        Command::FilterBand(a) => {
            let x = input::read_samples(&a.io.input, a.io.n)?;
            let y = commands::band_filter(&x, a.fs, a.band.0, a.band.1, a.family)?;
            write_output(a.io.out.as_deref(), &signal_csv(&y), stdout)
        }
        Command::Benchmark(a) => {
            let v = commands::benchmark_report(&a.sizes)?;
            write_output(a.out.as_deref(), &to_canonical_json(&v), stdout)
        }
        Command::Matrix(a) => {
            if a.n == 0 || a.n > ccpt_core::npm::MAX_DIRECT_SIZE {
                return Err(CliError::Args(format!("--n {} is outside 1..={}", a.n, ccpt_core::npm::MAX_DIRECT_SIZE)));
            }
            let m = ccpt_core::npm::build::<f64>(a.family, a.n);
            write_output(a.out.as_deref(), &matrix_csv(&m), stdout)?;
            if let Some(p) = a.out.as_deref() {
                write_output(Some(&sidecar_path(p)), &to_canonical_json(&matrix_sidecar_json(&m)), stdout)?;
            }
            Ok(())
        }
        Command::Fixture(a) => {
            let x = commands::fixture_signal(a.name, a.seed, a.snr, a.clean);
            write_output(a.out.as_deref(), &signal_csv(&x), stdout)
        }
    }
}

/// Parse `args` (including the program name), run, and return the exit code.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    1
                }
            };
        }
    };
    match execute(cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
