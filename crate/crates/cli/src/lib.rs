//! Command-line surface over `fermat-core`. Every subcommand produces a
//! [`Table`] rendered as CSV or JSON.

mod commands;
mod table;

use std::path::PathBuf;

use clap::{Parser, ValueEnum};

pub use table::{format_float, Cell, Table};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    /// 1 for bad input, 2 for everything that points at a bug or the
    /// environment.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Internal(_) | CliError::Io(_) => 2,
        }
    }
}

impl From<fermat_core::Error> for CliError {
    fn from(e: fermat_core::Error) -> Self {
        use fermat_core::Error as E;
        match e {
            E::Internal(_) | E::NotStabilized { .. } => CliError::Internal(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// N(B) on the Fermat surface by direct enumeration.
    Count,
    /// N_X(B) by direct enumeration.
    Countx,
    /// N_X(B) as a sum over fibres, one row per fibre.
    Fibration,
    /// Local densities of the fibre (s, t).
    Density,
    /// D(x) and the dyadic lower bound.
    Dsum,
    /// Sums of 1*chi_3 or r~ over a progression against their main terms.
    Progsum,
    /// Sums of r~(m) r~(n) over coprime pairs in progressions.
    Pairsum,
    /// Counts on the biprojective bundle and on a twist.
    Bt,
    /// Log-power fit of a (bound, count) CSV.
    Fit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Function {
    /// `1 * chi_3`, summed over all n.
    OneStarChi3,
    /// `r~`, summed over squarefree n.
    RTilde,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "fermat",
    version,
    about = "Point counts and densities for the Fermat cubic surface"
)]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,

    /// Height bound B.
    #[arg(long)]
    pub bound: Option<u64>,

    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<i64>,

    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<i64>,

    /// Single prime for `density`.
    #[arg(long)]
    pub p: Option<u64>,

    /// Prime cutoff for `density`.
    #[arg(long, default_value_t = 100)]
    pub pmax: u64,

    /// Summation range for `dsum`, `progsum`, `pairsum`.
    #[arg(long)]
    pub x: Option<u64>,

    #[arg(long, default_value_t = 1)]
    pub modulus: u64,

    /// Residue `a` for `progsum`, or `sigma,tau` for `pairsum`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub residue: Vec<i64>,

    /// Twist vector `t0,t1,t2,t3` for `bt`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub twist: Vec<i64>,

    /// Summand for `progsum`.
    #[arg(long, value_enum, default_value = "one-star-chi3")]
    pub function: Function,

    /// Count projective points (vectors up to sign) in `count` and `countx`.
    #[arg(long)]
    pub projective: bool,

    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,

    /// Write the table here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,

    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: u64,

    /// Seed for sampled computations; no current subcommand samples.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Input CSV for `fit`, with `bound` and `count` columns.
    pub input: Option<PathBuf>,
}

impl RunConfig {
    /// Parses `args`, the first of which is the program name.
    pub fn from_args<I, T>(args: I) -> Result<Self, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        RunConfig::try_parse_from(args)
    }
}

/// Runs the subcommand on a pool of `config.workers` threads and renders the
/// result. When `out` is set the text is also written there.
pub fn run(config: &RunConfig) -> Result<String, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers as usize)
        .build()
        .map_err(|e| CliError::Internal(e.to_string()))?;
    let table = pool.install(|| commands::execute(config))?;
    let text = match config.format {
        Format::Csv => table.to_csv()?,
        Format::Json => table.to_json()?,
    };
    if let Some(path) = &config.out {
        std::fs::write(path, &text)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(text)
}
