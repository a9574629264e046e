use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use multmoments::rng::DEFAULT_SEED;

#[derive(Debug, Parser)]
#[command(name = "multmoments", version, about = "Moments of random multiplicative functions and truncated characteristic polynomials")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Serialize)]
pub struct GlobalArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Worker threads for parallel kernels (0 = one per core).
    #[arg(long, env = "MULTMOMENTS_THREADS", default_value_t = 0, global = true)]
    pub threads: usize,
    /// Master seed for Monte Carlo runs.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    pub seed: u64,
    /// Write the output to this file instead of stdout.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub output: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact moments as finite counts.
    Count(CountArgs),
    /// Euler-product and polytope-volume constants.
    Constants(ConstantsArgs),
    /// Truncated characteristic-polynomial moments.
    Rmt(RmtArgs),
    /// Monte Carlo moments of random multiplicative sums.
    Simulate(SimulateArgs),
    /// Conjectured fractional moments and their constants.
    Conjecture(ConjectureArgs),
    /// Minimize the two-variable Cauchy-Schwarz bound.
    Bound,
    /// Run the acceptance suite.
    Verify(VerifyArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Count(_) => "count",
            Command::Constants(_) => "constants",
            Command::Rmt(_) => "rmt",
            Command::Simulate(_) => "simulate",
            Command::Conjecture(_) => "conjecture",
            Command::Bound => "bound",
            Command::Verify(_) => "verify",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CountModel {
    Steinhaus,
    Rademacher,
    Char,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RademacherMethod {
    Sign,
    Tuple,
    Both,
}

#[derive(Debug, Args, Serialize)]
pub struct CountArgs {
    #[arg(long, value_enum)]
    pub model: CountModel,
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub x: f64,
    /// Weight exponent (Steinhaus only).
    #[arg(long, default_value_t = 0.0)]
    pub sigma: f64,
    /// Prime modulus (char only).
    #[arg(long)]
    pub q: Option<u64>,
    /// Rademacher counting route.
    #[arg(long, value_enum, default_value_t = RademacherMethod::Sign)]
    pub method: RademacherMethod,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstantName {
    A,
    B,
    Alpha,
    Beta,
    Gamma,
}

#[derive(Debug, Args, Serialize)]
pub struct ConstantsArgs {
    #[arg(long, value_enum)]
    pub name: ConstantName,
    /// Moment parameter; may be fractional for `a`.
    #[arg(long)]
    pub k: f64,
    /// Bound on the log error of Euler products (defaults: 1e-8 for a, 1e-6 for b).
    #[arg(long)]
    pub eps: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupArg {
    Unitary,
    So,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RmtMode {
    Exact,
    Mc,
    Asymptotic,
    Ratio,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GammaNorm {
    /// Volume of the degree-1 slice.
    UnitSlice,
    /// Volume of the degree-2 slice.
    DegreeTwo,
}

#[derive(Debug, Args, Serialize)]
pub struct RmtArgs {
    #[arg(long, value_enum, default_value_t = GroupArg::Unitary)]
    pub group: GroupArg,
    #[arg(long)]
    pub k: u32,
    /// Truncation lengths, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub l: Vec<u32>,
    /// `|z|`, which must exceed 1.
    #[arg(long, default_value_t = 0.5f64.exp())]
    pub z: f64,
    #[arg(long, value_enum, default_value_t = RmtMode::Exact)]
    pub mode: RmtMode,
    /// Matrix size for Monte Carlo (default `kL`).
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 10_000)]
    pub samples: u64,
    /// Normalization of the orthogonal volume constant.
    #[arg(long, value_enum, default_value_t = GammaNorm::UnitSlice)]
    pub gamma_norm: GammaNorm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SimModel {
    Steinhaus,
    Rademacher,
}

#[derive(Debug, Args, Serialize)]
pub struct SimulateArgs {
    #[arg(long, value_enum, default_value_t = SimModel::Steinhaus)]
    pub model: SimModel,
    /// Lengths of the sums, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = [1000u64, 10_000, 100_000])]
    pub x: Vec<u64>,
    #[arg(long, default_value_t = 0.0)]
    pub sigma: f64,
    /// Exponent `2k` of `|S|`; any positive real.
    #[arg(long, default_value_t = 2.0)]
    pub two_k: f64,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    /// Emit the first-moment comparison table instead.
    #[arg(long)]
    pub helson: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct ConjectureArgs {
    #[arg(long, default_value_t = 0.5)]
    pub k: f64,
    #[arg(long, default_value_t = 0.0)]
    pub sigma: f64,
    #[arg(long, value_delimiter = ',', default_values_t = [1e4])]
    pub x: Vec<f64>,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    /// Criteria to run, comma separated (default: all).
    #[arg(long, value_delimiter = ',')]
    pub criteria: Vec<u32>,
    /// List every check, not only failures.
    #[arg(long)]
    pub verbose: bool,
}
