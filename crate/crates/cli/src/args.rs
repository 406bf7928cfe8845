use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "orlicz-lab", version, about = "Orlicz-space norms, dilation gauges and bilinear multipliers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Young-function utilities.
    #[command(subcommand)]
    Young(YoungCmd),
    /// Luxemburg norm of a sampled function.
    Norm(NormArgs),
    /// Dilation gauge bounds over a set of λ.
    Gauge(GaugeArgs),
    /// Boyd index estimates.
    Boyd(BoydArgs),
    /// Evaluate a bilinear multiplier B_m(f, g).
    Bm(BmArgs),
    /// Run a named verification experiment (or `all`).
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct OutputArgs {
    /// Output file (or directory for `verify`).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Artifact format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug, Clone, Copy, Serialize)]
pub struct GridArgs {
    /// Grid half-width L; nodes are x_j = (j - n/2)·2L/n.
    #[arg(long = "L", default_value_t = 32.0)]
    pub half_width: f64,
    /// Number of grid nodes (a power of two).
    #[arg(long, default_value_t = 4096)]
    pub n: usize,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum YoungCmd {
    /// Φ(x).
    Eval {
        #[arg(long)]
        phi: String,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Φ⁻¹(y) = inf{x > 0 : Φ(x) > y}.
    Inverse {
        #[arg(long)]
        phi: String,
        #[arg(long)]
        y: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Complementary function Ψ; prints Ψ(y) for each --y.
    Complement {
        #[arg(long)]
        phi: String,
        /// Points at which to print Ψ.
        #[arg(long, num_args = 1..)]
        y: Vec<f64>,
        /// Upper end of the scan in x.
        #[arg(long, default_value_t = 100.0)]
        x_max: f64,
        #[arg(long, default_value_t = 4096)]
        points: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Δ₂ estimate sup Φ(2x)/Φ(x) on [lo, hi].
    Delta2 {
        #[arg(long)]
        phi: String,
        #[arg(long, default_value_t = 1e-3)]
        lo: f64,
        #[arg(long, default_value_t = 1e3)]
        hi: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check a triple condition on a log grid.
    Triple {
        #[arg(long)]
        phi1: String,
        #[arg(long)]
        phi2: String,
        #[arg(long)]
        phi3: String,
        #[arg(long, value_enum, default_value_t = TripleKindArg::Hoelder)]
        kind: TripleKindArg,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TripleKindArg {
    Hoelder,
    YoungConv,
}

#[derive(Args, Debug, Serialize)]
pub struct NormArgs {
    /// Function spec: indicator:a=4 | gauss:s=1 | sinc:w=1 | bl-gauss | @file.csv
    #[arg(long)]
    pub f: String,
    #[arg(long)]
    pub phi: String,
    /// Level γ in ∫Φ(|f|/λ) ≤ γ.
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct GaugeArgs {
    #[arg(long)]
    pub phi: String,
    /// λ values; defaults to 25 log-spaced points on [1/8, 8].
    #[arg(long, num_args = 1..)]
    pub lambda: Vec<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct BoydArgs {
    #[arg(long)]
    pub phi: String,
    /// Decades on each side of t = 1 (≥ 3).
    #[arg(long, default_value_t = 4.0)]
    pub decades: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct BmArgs {
    /// Symbol spec: one | zero | difference:gauss|sign[:w=8]|bump|@file.csv | measure:delta@t,w;...[:alpha=1,beta=-1]
    #[arg(long)]
    pub symbol: String,
    #[arg(long)]
    pub f: String,
    #[arg(long)]
    pub g: String,
    /// direct | kernel | halfsum | convolution | space_side | all
    #[arg(long, default_value = "direct")]
    pub method: String,
    /// Max-norm agreement required between methods with --method all.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    /// Experiment name or `all`.
    pub name: String,
    /// JSON config; command-line flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Seed; required by randomized experiments.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Directory for `<name>.json` and `<name>.csv`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub p1: Option<f64>,
    #[arg(long)]
    pub p2: Option<f64>,
    #[arg(long)]
    pub p3: Option<f64>,
    /// Piece length for `rademacher`.
    #[arg(long)]
    pub a: Option<f64>,
    /// Largest N for `rademacher`.
    #[arg(long = "N")]
    pub n_max: Option<usize>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long = "L")]
    pub half_width: Option<f64>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub tol_exact: Option<f64>,
    #[arg(long)]
    pub tol_identity: Option<f64>,
    #[arg(long)]
    pub tol_limit: Option<f64>,
    #[arg(long)]
    pub tol_slope: Option<f64>,
}
