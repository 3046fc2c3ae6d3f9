use std::path::PathBuf;

use ccpt_core::period::dictionary::Penalty;
use ccpt_core::Family;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "ccpt", version, about = "Periodic transforms, period estimation and band filtering")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficients of a signal in one of the periodic bases.
    Transform(TransformArgs),
    /// Period strengths, significant periods and the estimated period.
    Periods(PeriodsArgs),
    /// Keep only the components inside a frequency band and resynthesize.
    FilterBand(FilterArgs),
    /// Operation counts per transform, with measured fast-transform counters.
    Benchmark(BenchmarkArgs),
    /// Dump a basis matrix as CSV with a JSON column sidecar.
    Matrix(MatrixArgs),
    /// Write one of the bundled seeded test signals.
    Fixture(FixtureArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Single-column CSV of samples, optional `value` header.
    pub input: PathBuf,
    /// Use only the first N samples.
    #[arg(long = "n")]
    pub n: Option<usize>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    #[command(flatten)]
    pub io: InputArgs,
    #[arg(long, default_value = "occpt", value_parser = parse_family)]
    pub family: Family,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Matrix,
    Dictionary,
    Candidates,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PenaltyArg {
    P2,
    Phi,
}

impl From<PenaltyArg> for Penalty {
    fn from(p: PenaltyArg) -> Self {
        match p {
            PenaltyArg::P2 => Penalty::Square,
            PenaltyArg::Phi => Penalty::Totient,
        }
    }
}

#[derive(Debug, Args)]
pub struct PeriodsArgs {
    #[command(flatten)]
    pub io: InputArgs,
    #[arg(long, default_value = "occpt", value_parser = parse_family)]
    pub family: Family,
    #[arg(long, value_enum, default_value = "matrix")]
    pub method: Method,
    /// Relative strength cut in (0, 1].
    #[arg(long, default_value_t = 0.2, value_parser = parse_threshold)]
    pub threshold: f64,
    /// Sampling rate in Hz, used to label frequency components.
    #[arg(long, value_parser = parse_positive)]
    pub fs: Option<f64>,
    /// Largest dictionary period; defaults to N.
    #[arg(long)]
    pub pmax: Option<usize>,
    #[arg(long, value_enum, default_value = "p2")]
    pub penalty: PenaltyArg,
    /// Candidate periods for the candidates method, e.g. `6,8`.
    #[arg(long, value_delimiter = ',')]
    pub candidates: Vec<usize>,
    /// Divide each strength by the subspace dimension.
    #[arg(long)]
    pub per_dimension: bool,
    /// Also write a `period,strength` table here.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FilterArgs {
    #[command(flatten)]
    pub io: InputArgs,
    #[arg(long, default_value = "occpt", value_parser = parse_family)]
    pub family: Family,
    #[arg(long, value_parser = parse_positive)]
    pub fs: f64,
    /// Pass band in Hz as `LO:HI`.
    #[arg(long, value_parser = parse_band)]
    pub band: (f64, f64),
}

#[derive(Debug, Args)]
pub struct BenchmarkArgs {
    #[arg(long, value_delimiter = ',', default_value = "7,8,15,16")]
    pub sizes: Vec<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MatrixArgs {
    #[arg(long, default_value = "occpt", value_parser = parse_family)]
    pub family: Family,
    #[arg(long = "n")]
    pub n: usize,
    /// CSV path; the sidecar goes next to it with a `.json` extension.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FixtureName {
    X1,
    X2,
    Ecg,
}

#[derive(Debug, Args)]
pub struct FixtureArgs {
    #[arg(value_enum)]
    pub name: FixtureName,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Override the noise level of x1 and x2, in dB.
    #[arg(long, allow_hyphen_values = true)]
    pub snr: Option<f64>,
    /// Write x1 or x2 without noise.
    #[arg(long, conflicts_with = "snr")]
    pub clean: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: ccpt_core::Error| e.to_string())
}

fn parse_threshold(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if t > 0.0 && t <= 1.0 {
        Ok(t)
    } else {
        Err(format!("threshold {t} is outside (0, 1]"))
    }
}

fn parse_positive(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(format!("{v} must be positive"))
    }
}

pub fn parse_band(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("band '{s}' is not LO:HI"))?;
    let lo: f64 = lo.trim().parse().map_err(|_| format!("'{lo}' is not a number"))?;
    let hi: f64 = hi.trim().parse().map_err(|_| format!("'{hi}' is not a number"))?;
    if !(lo.is_finite() && hi.is_finite()) || lo < 0.0 || lo > hi {
        return Err(format!("band {lo}:{hi} must satisfy 0 <= LO <= HI"));
    }
    Ok((lo, hi))
}
