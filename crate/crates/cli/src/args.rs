use std::path::PathBuf;

use altlasso::Loss;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "altlasso",
    version,
    about = "Fit l1-regularized linear models and report alternate features"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Fit the penalized model and write the solution as JSON.
    Fit(FitArgs),
    /// Enumerate, solve, and score alternates for a stored solution.
    Alternates(AlternatesArgs),
    /// Re-emit a stored report as JSON, DOT, or TSV.
    Report(ReportArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    /// `label idx:val ...` lines with 1-based indices.
    Libsvm,
    /// Rectangular CSV; requires --target-column.
    Csv,
    /// `label<TAB>text` lines, vectorized as tf-idf.
    Text,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum EmitFormat {
    Json,
    Dot,
    Tsv,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum LossArg {
    Squared,
    Logistic,
}

impl From<LossArg> for Loss {
    fn from(value: LossArg) -> Self {
        match value {
            LossArg::Squared => Loss::Squared,
            LossArg::Logistic => Loss::Logistic,
        }
    }
}

#[derive(Args)]
pub struct InputArgs {
    /// Dataset file.
    #[arg(long)]
    pub input: PathBuf,

    /// Input format.
    #[arg(long, value_enum, default_value_t = InputFormat::Libsvm)]
    pub format: InputFormat,

    /// CSV target column, by header name or zero-based position.
    #[arg(long)]
    pub target_column: Option<String>,

    /// Treat the first CSV row as data instead of a header.
    #[arg(long)]
    pub no_header: bool,

    /// File with one stop word per line (text format).
    #[arg(long)]
    pub stop_words: Option<PathBuf>,

    /// Minimum document frequency for text tokens.
    #[arg(long)]
    pub min_df: Option<usize>,
}

#[derive(Args)]
pub struct FitArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Loss function.
    #[arg(long, value_enum, default_value_t = LossArg::Squared)]
    pub loss: LossArg,

    /// Regularization weight.
    #[arg(long, allow_negative_numbers = true)]
    pub rho: f64,

    /// Multiply --rho by the number of observations.
    #[arg(long)]
    pub rho_per_sample: bool,

    /// Convergence threshold on the stationarity residual.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,

    /// Coordinate sweeps before the fit is flagged non-converged.
    #[arg(long, default_value_t = 10_000)]
    pub max_sweeps: usize,

    /// Destination for the solution JSON.
    #[arg(long)]
    pub output: PathBuf,
}

#[derive(Args)]
pub struct AlternatesArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Solution JSON produced by fit.
    #[arg(long)]
    pub solution: PathBuf,

    /// Destination for the emitted report.
    #[arg(long)]
    pub output: PathBuf,

    /// Report format.
    #[arg(long, value_enum, default_value_t = EmitFormat::Json)]
    pub emit: EmitFormat,

    /// Rows kept in TSV output.
    #[arg(long, default_value_t = 10)]
    pub top_k: usize,

    /// Origin feature for TSV output, by name or index.
    #[arg(long)]
    pub origin: Option<String>,

    /// Worker threads for the enumeration (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,

    /// Iteration budget for each univariate solve.
    #[arg(long, default_value_t = 10_000)]
    pub max_prox_iters: usize,
}

#[derive(Args)]
pub struct ReportArgs {
    /// Report JSON produced by alternates.
    #[arg(long)]
    pub report: PathBuf,

    /// Output format.
    #[arg(long, value_enum, default_value_t = EmitFormat::Json)]
    pub emit: EmitFormat,

    /// Rows kept in TSV output.
    #[arg(long, default_value_t = 10)]
    pub top_k: usize,

    /// Origin feature for TSV output, by name or index.
    #[arg(long)]
    pub origin: Option<String>,

    /// Destination file (standard output when omitted).
    #[arg(long)]
    pub output: Option<PathBuf>,
}
