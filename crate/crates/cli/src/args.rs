use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "fracsub",
    version,
    about = "Space-time fractional diffusion: special functions, Green functions, trajectories",
    after_help = "Exit status: 0 success, 1 failed check or I/O error, 2 usage error, \
                  3 parameter outside its domain, 4 numerical failure."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mittag-Leffler function E_{α,β}(z).
    Mlf(MlfArgs),
    /// Wright M_ν(z) or F_ν(z).
    Wright(WrightArgs),
    /// Stable density t^{-1/α} L_α^θ(x t^{-1/α}).
    StablePdf(StablePdfArgs),
    /// Green function u(x, t) of the space-time fractional diffusion equation.
    Green(GreenArgs),
    /// Green function of the time-fractional drift equation.
    Drift(DriftArgs),
    /// Simulate trajectories by parametric subordination.
    Simulate(SimulateArgs),
    /// Directing (inverse leading) step function of a trajectory CSV.
    Invert(InvertArgs),
    /// Monte Carlo marginal vs quadrature CDF.
    Verify(VerifyArgs),
    /// Check the horizontal/vertical structure of a step-function CSV.
    Lint(LintArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OutputArgs {
    /// Output file (a directory for multi-file `simulate` runs). Defaults to
    /// stdout, or to a file under FRACSUB_OUTPUT_DIR when that is set.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, env = "FRACSUB_OUTPUT_DIR", hide_env_values = true)]
    pub output_dir: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Abscissae {
    /// Comma-separated evaluation points.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "grid")]
    pub x: Vec<f64>,
    /// Number of points of a sinh-spaced grid on [-W, W]; adds a mass check.
    #[arg(long)]
    pub grid: Option<usize>,
    /// Half width W of the grid.
    #[arg(long, default_value_t = 20.0)]
    pub half_width: f64,
    /// Clustering of grid points near 0 (larger is denser).
    #[arg(long, default_value_t = 3.0)]
    pub concentration: f64,
    /// Allowed |mass − 1| of a grid table.
    #[arg(long, default_value_t = 0.01)]
    pub mass_tol: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MlfArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub z: Vec<f64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WrightKind {
    M,
    F,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct WrightArgs {
    #[arg(long)]
    pub nu: f64,
    #[arg(long, required = true, value_delimiter = ',')]
    pub z: Vec<f64>,
    #[arg(long, value_enum, default_value_t = WrightKind::M)]
    pub function: WrightKind,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct StablePdfArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta: f64,
    /// Self-similar time scale.
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    #[command(flatten)]
    pub xs: Abscissae,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GreenArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta: f64,
    #[arg(long)]
    pub beta: f64,
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    /// Absolute tolerance of the subordination integral.
    #[arg(long, default_value_t = 1e-13)]
    pub abs_tol: f64,
    /// Relative tolerance of the subordination integral.
    #[arg(long, default_value_t = 1e-8)]
    pub rel_tol: f64,
    #[command(flatten)]
    pub xs: Abscissae,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DriftArgs {
    #[arg(long)]
    pub beta: f64,
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    #[command(flatten)]
    pub xs: Abscissae,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PlotKind {
    None,
    Leading,
    Parent,
    Directing,
    Subordinated,
    All,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct WalkArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta: f64,
    #[arg(long)]
    pub beta: f64,
    /// Operational time step τ_*.
    #[arg(long)]
    pub tau_star: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; results do not depend on this.
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub walk: WalkArgs,
    /// Operational steps N per trajectory.
    #[arg(long)]
    pub steps: u64,
    /// Number of trajectories; ids run from --first-id.
    #[arg(long, default_value_t = 1)]
    pub paths: u64,
    #[arg(long, default_value_t = 0)]
    pub first_id: u64,
    /// Emit step-function polylines instead of (or, with `all`, besides)
    /// the snapshot table.
    #[arg(long, value_enum, default_value_t = PlotKind::None)]
    pub plot: PlotKind,
    /// Write every k-th snapshot only; the simulation still runs every step.
    #[arg(long, default_value_t = 1)]
    pub thin: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct InvertArgs {
    /// Trajectory CSV with header n,t_star,t,x.
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub walk: WalkArgs,
    /// Observation time.
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    #[arg(long, default_value_t = 100_000)]
    pub paths: u64,
    /// Pass threshold for the sup-difference of CDFs.
    #[arg(long, default_value_t = 0.01)]
    pub threshold: f64,
    /// Record wall-clock time in the report (makes it non-reproducible).
    #[arg(long)]
    pub timing: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct LintArgs {
    /// Two-column step-function CSV.
    #[arg(long)]
    pub input: PathBuf,
    /// Also require non-decreasing ordinates (leading and directing walks).
    #[arg(long)]
    pub monotone: bool,
}
