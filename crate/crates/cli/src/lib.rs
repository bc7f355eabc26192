//! Command-line front end: laminate input documents in, feasibility
//! reports, diagram data and scan tables out.
//!
//! Exit codes: 0 feasible/success, 2 input error, 3 infeasible,
//! 4 marginal, 5 requested case not applicable, 1 oracle disagreement
//! (`verify` only).

pub mod commands;
pub mod exit;
pub mod input;
pub mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};

use polarlam::bounds::CheckOptions;

#[derive(Parser)]
#[command(
    name = "polarlam",
    version,
    about = "Elastic bounds of coupled laminates in polar invariants"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the polar and Cartesian extension/coupling/bending triple
    Abd(CommonArgs),
    /// Decide feasibility of the laminate triple
    Check(CheckArgs),
    /// Classify the elastic symmetry of the layer and of the triple
    Classify(CommonArgs),
    /// Emit direction-sweep data of one Cartesian component as CSV
    Diagram(DiagramArgs),
    /// Scan the coupling-moduli plane and emit one verdict row per point
    Scan(ScanArgs),
    /// Cross-verify the closed-form verdicts against the eigenvalue oracle
    Verify(VerifyArgs),
}

#[derive(Args)]
pub struct CommonArgs {
    /// Input document path, or '-' for standard input
    pub input: String,
    /// Emit machine-readable JSON instead of text
    #[arg(long)]
    pub json: bool,
    /// Relative tolerance of the verdict band
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Grid step of the numeric minimization, degrees
    #[arg(long = "grid-step-deg", default_value_t = 0.5)]
    pub grid_step_deg: f64,
    /// Override the document thickness
    #[arg(long)]
    pub h: Option<f64>,
}

impl CommonArgs {
    pub fn check_options(&self) -> CheckOptions {
        CheckOptions {
            tol: self.tol,
            grid_step: self.grid_step_deg.to_radians(),
            ..CheckOptions::default()
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum CaseChoice {
    Auto,
    General,
    Aligned,
    SquareB,
    FullSquare,
    R0,
    Isotropic,
}

#[derive(Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Condition set to apply (auto routes to the most specific one)
    #[arg(long, value_enum, default_value_t = CaseChoice::Auto)]
    pub case: CaseChoice,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "UPPER")]
pub enum TensorChoice {
    A,
    B,
    D,
}

#[derive(Args)]
pub struct DiagramArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Which tensor of the triple to sweep
    #[arg(long, value_enum, ignore_case = true)]
    pub tensor: TensorChoice,
    /// Cartesian component name (T1111, T1112, T1122, T1212, T1222, T2222)
    #[arg(long)]
    pub component: String,
    /// Sweep step in degrees
    #[arg(long = "step-deg", default_value_t = 1.0)]
    pub step_deg: f64,
}

#[derive(Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Grid specification, e.g. "r0b=0:50:26,r1b=0:40:21"
    #[arg(long)]
    pub grid: String,
    /// Additionally perturb alignment angles and report closed-form
    /// counterexample candidates
    #[arg(long = "probe-conjecture")]
    pub probe_conjecture: bool,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Input document path, or '-' for standard input (omit with --random)
    pub input: Option<String>,
    /// Verify a seeded stream of random laminates instead of one input
    #[arg(long)]
    pub random: bool,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub json: bool,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long = "grid-step-deg", default_value_t = 0.5)]
    pub grid_step_deg: f64,
}

pub fn run() -> u8 {
    let cli = Cli::parse();
    match cli.command {
        Command::Abd(args) => commands::abd::run(&args),
        Command::Check(args) => commands::check::run(&args),
        Command::Classify(args) => commands::classify::run(&args),
        Command::Diagram(args) => commands::diagram::run(&args),
        Command::Scan(args) => commands::scan::run(&args),
        Command::Verify(args) => commands::verify::run(&args),
    }
}
