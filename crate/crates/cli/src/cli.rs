//! Argument surface of the `coinwalk` binary.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

#[derive(Parser, Debug)]
#[command(
    name = "coinwalk",
    version,
    about = "Exact distributions, moments and step correlations for classical and quantum walks",
    after_help = "Coin states load from JSON ({\"dim\":2,\"p\":[p1,pm1],\"eta\":[re,im]} or the \
                  dim-4 form with an eta map); inline flags override file values."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classical random walk position distribution
    Crw(CrwArgs),
    /// Coherence-driven 1D quantum random walk (Hadamard coin)
    Qrw1d(Qrw1dArgs),
    /// Coherence-driven 2D quantum random walk (Grover coin)
    Qrw2d(Qrw2dArgs),
    /// Conventional single-coin quantum walk
    Qw(QwArgs),
    /// Step-correlation covariance series of the quantum walk
    Covariance(CovarianceArgs),
    /// Validation report, flip analysis and per-step moments of a coin state
    CoinAnalytics(CoinAnalyticsArgs),
    /// Monte Carlo sampling of a walk model
    Sample(SampleArgs),
    /// Total variation and chi-square comparison of two distribution files
    Compare(CompareArgs),
    /// Check an effective-coherence triple against the feasibility region
    Feasibility(FeasibilityArgs),
    /// Emit the data behind one of the reference figures
    Figure(FigureArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct OutputOpts {
    /// Output file (stdout when omitted); written atomically
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

/// Source flags for a dim-2 coin state. A JSON file provides defaults;
/// inline flags override individual fields.
#[derive(Args, Debug)]
pub struct Coin2Opts {
    /// Coin-state JSON file
    #[arg(long)]
    pub coin: Option<PathBuf>,
    /// Probability of the |1> (heads) component
    #[arg(long)]
    pub p1: Option<f64>,
    /// Probability of the |-1> (tails) component (default: 1 - p1)
    #[arg(long)]
    pub pm1: Option<f64>,
    /// Coherence as RE or RE,IM
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub eta: Option<Complex64>,
    /// Re-serialize the resolved coin state to this JSON file
    #[arg(long)]
    pub dump_coin: Option<PathBuf>,
}

/// Source flags for a dim-4 coin state.
#[derive(Args, Debug)]
pub struct Coin4Opts {
    /// Coin-state JSON file
    #[arg(long)]
    pub coin: Option<PathBuf>,
    /// Effective coherence triple; bypasses the density matrix
    #[arg(long, num_args = 3, allow_hyphen_values = true, value_names = ["Z1", "Z2", "Z3"])]
    pub zeta: Option<Vec<f64>>,
    /// Re-serialize the loaded coin state to this JSON file
    #[arg(long)]
    pub dump_coin: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CrwArgs {
    /// Step count
    #[arg(long)]
    pub n: usize,
    /// Probability of a right step
    #[arg(long, default_value_t = 0.5)]
    pub p1: f64,
    /// Probability of a left step (default: 1 - p1)
    #[arg(long)]
    pub pm1: Option<f64>,
    #[command(flatten)]
    pub out: OutputOpts,
}

#[derive(Args, Debug)]
pub struct Qrw1dArgs {
    /// Step count
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub coin: Coin2Opts,
    #[command(flatten)]
    pub out: OutputOpts,
}

#[derive(Args, Debug)]
pub struct Qrw2dArgs {
    /// Step count
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub coin: Coin4Opts,
    #[command(flatten)]
    pub out: OutputOpts,
}

#[derive(Args, Debug)]
pub struct QwArgs {
    /// Step count
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub coin: Coin2Opts,
    #[command(flatten)]
    pub out: OutputOpts,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Direct,
    Integral,
    Both,
}

#[derive(Args, Debug)]
pub struct CovarianceArgs {
    /// Largest step count in the series
    #[arg(long)]
    pub n_max: usize,
    /// Evaluation route(s)
    #[arg(long, value_enum, default_value_t = MethodArg::Both)]
    pub method: MethodArg,
    /// Diagonal weight of the initial coin on |1>
    #[arg(long, default_value_t = 0.5)]
    pub p1: f64,
    #[command(flatten)]
    pub out: OutputOpts,
}

#[derive(Args, Debug)]
pub struct CoinAnalyticsArgs {
    /// Coin-state JSON file of either dimension
    #[arg(long)]
    pub coin: Option<PathBuf>,
    /// Inline dim-2 state: probability of |1>
    #[arg(long)]
    pub p1: Option<f64>,
    #[arg(long)]
    pub pm1: Option<f64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub eta: Option<Complex64>,
    /// Re-serialize the resolved coin state to this JSON file
    #[arg(long)]
    pub dump_coin: Option<PathBuf>,
    /// Output file (stdout when omitted); analytics are always JSON
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Crw,
    Qrw1d,
    Qrw2d,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    /// Walk model to sample
    #[arg(long, value_enum)]
    pub model: ModelArg,
    /// Steps per walk
    #[arg(long)]
    pub n: usize,
    /// Number of sampled walks
    #[arg(long)]
    pub samples: u64,
    /// PRNG seed (chunks derive independent streams from it)
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Coin-state JSON file (dim matching the model)
    #[arg(long)]
    pub coin: Option<PathBuf>,
    /// crw / qrw1d: probability flags
    #[arg(long)]
    pub p1: Option<f64>,
    #[arg(long)]
    pub pm1: Option<f64>,
    /// qrw1d: coherence as RE or RE,IM
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub eta: Option<Complex64>,
    /// qrw2d: effective coherence triple
    #[arg(long, num_args = 3, allow_hyphen_values = true, value_names = ["Z1", "Z2", "Z3"])]
    pub zeta: Option<Vec<f64>>,
    /// Re-serialize the resolved coin state to this JSON file
    #[arg(long)]
    pub dump_coin: Option<PathBuf>,
    #[command(flatten)]
    pub out: OutputOpts,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    /// Reference (analytic) distribution file, CSV or JSON
    #[arg(long)]
    pub a: PathBuf,
    /// Observed distribution file, CSV or JSON
    #[arg(long)]
    pub b: PathBuf,
    /// Sample count behind `b`; enables the chi-square test
    #[arg(long)]
    pub n_samples: Option<u64>,
    /// Output file (stdout when omitted); the report is JSON
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct FeasibilityArgs {
    /// Effective coherence triple to test
    #[arg(long, num_args = 3, allow_hyphen_values = true, required = true,
          value_names = ["Z1", "Z2", "Z3"])]
    pub zeta: Vec<f64>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FigureId {
    #[value(name = "fig2a")]
    Fig2a,
    #[value(name = "fig2b")]
    Fig2b,
    #[value(name = "fig4a")]
    Fig4a,
    #[value(name = "fig4b")]
    Fig4b,
    #[value(name = "fig4c")]
    Fig4c,
    #[value(name = "fig4d")]
    Fig4d,
    #[value(name = "fig4e")]
    Fig4e,
    #[value(name = "fig4f")]
    Fig4f,
    #[value(name = "fig4g")]
    Fig4g,
    #[value(name = "fig4h")]
    Fig4h,
    #[value(name = "fig_cov")]
    FigCov,
    #[value(name = "fig_loglog")]
    FigLoglog,
}

#[derive(Args, Debug)]
pub struct FigureArgs {
    /// Which figure's data to emit (CSV)
    #[arg(long, value_enum)]
    pub id: FigureId,
    /// Output file (stdout when omitted)
    #[arg(long)]
    pub output: Option<PathBuf>,
}

pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = text.split(',').collect();
    match parts.as_slice() {
        [re] => {
            let re: f64 = re.trim().parse().map_err(|e| format!("bad real part: {e}"))?;
            Ok(Complex64::new(re, 0.0))
        }
        [re, im] => {
            let re: f64 = re.trim().parse().map_err(|e| format!("bad real part: {e}"))?;
            let im: f64 = im.trim().parse().map_err(|e| format!("bad imaginary part: {e}"))?;
            Ok(Complex64::new(re, im))
        }
        _ => Err("expected RE or RE,IM".into()),
    }
}
