use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use multisplit::Algorithm;

#[derive(Debug, Parser)]
#[command(
    name = "multisplit",
    version,
    about = "Multiple-splitting solvers: experiment runner"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one solver on a Fermat-Weber or deblurring problem.
    Run(RunArgs),
    /// Replicate the Fermat-Weber comparison grid and write one merged CSV.
    Table1(Table1Args),
    /// Write a seeded Fermat-Weber instance in the plain-text format.
    GenInstance(GenArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProblemKind {
    FermatWeber,
    Deblur,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgoArg {
    Msa,
    Famsa,
    #[value(name = "famsa-s")]
    FamsaS,
    Grad,
    Nest,
}

impl From<AlgoArg> for Algorithm {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::Msa => Algorithm::Msa,
            AlgoArg::Famsa => Algorithm::Famsa,
            AlgoArg::FamsaS => Algorithm::FamsaS,
            AlgoArg::Grad => Algorithm::Grad,
            AlgoArg::Nest => Algorithm::Nest,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MixingArg {
    Uniform,
    Identity,
}

pub fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        Ok(v) => Err(format!("expected a positive number, got {v}")),
        Err(e) => Err(e.to_string()),
    }
}

pub fn nonnegative(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v >= 0.0 => Ok(v),
        Ok(v) => Err(format!("expected a nonnegative number, got {v}")),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("step").required(true).args(["tau", "mu"])))]
pub struct RunArgs {
    #[arg(long, value_enum, default_value_t = ProblemKind::FermatWeber)]
    pub problem: ProblemKind,

    #[arg(long, value_enum, default_value_t = AlgoArg::Msa)]
    pub algo: AlgoArg,

    /// Dimension of the Fermat-Weber points.
    #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,

    /// Number of Fermat-Weber points.
    #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u32).range(2..))]
    pub k: u32,

    /// Gradient step; splitting schemes use mu = tau (K - 1).
    #[arg(long, value_parser = positive)]
    pub tau: Option<f64>,

    /// Splitting step parameter.
    #[arg(long, value_parser = positive)]
    pub mu: Option<f64>,

    /// Fermat-Weber smoothing.
    #[arg(long, default_value_t = 1e-3, value_parser = positive)]
    pub rho: f64,

    /// Deblur: TV smoothing.
    #[arg(long, default_value_t = 1e-4, value_parser = positive)]
    pub delta: f64,

    /// Deblur: wavelet l1 smoothing.
    #[arg(long, default_value_t = 1e-4, value_parser = positive)]
    pub sigma: f64,

    /// Deblur: TV weight.
    #[arg(long, default_value_t = 0.001, value_parser = positive)]
    pub alpha: f64,

    /// Deblur: wavelet l1 weight.
    #[arg(long, default_value_t = 0.035, value_parser = positive)]
    pub beta: f64,

    /// Stop once relerr falls below this (Fermat-Weber only).
    #[arg(long, default_value_t = 1e-6, value_parser = nonnegative)]
    pub tol: f64,

    #[arg(long = "max-iter", visible_alias = "iters", default_value_t = 500)]
    pub max_iter: usize,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, value_enum, default_value_t = MixingArg::Uniform)]
    pub mixing: MixingArg,

    /// Deblur: side of the synthetic test image (power of two).
    #[arg(long, default_value_t = 64)]
    pub size: usize,

    /// Deblur: standard deviation of the added noise.
    #[arg(long = "noise-sd", default_value_t = 0.56, value_parser = nonnegative)]
    pub noise_sd: f64,

    /// Deblur: Chambolle iterations per TV block solve.
    #[arg(long = "inner-iters", default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
    pub inner_iters: u32,

    /// Deblur: Haar levels.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
    pub levels: u32,

    /// Fermat-Weber instance file; overrides --n, --k and --seed.
    #[arg(long, conflicts_with = "image")]
    pub instance: Option<PathBuf>,

    /// Deblur ground truth (.pgm, or a plain-text grid); overrides --size.
    #[arg(long)]
    pub image: Option<PathBuf>,

    /// Output directory.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct Table1Args {
    /// Step sizes to sweep.
    #[arg(long, value_delimiter = ',', default_values_t = [0.001, 0.01, 0.1], value_parser = positive)]
    pub taus: Vec<f64>,

    /// Skip grid cells with n above this.
    #[arg(long = "max-n", default_value_t = 300)]
    pub max_n: usize,

    /// Skip grid cells with K above this.
    #[arg(long = "max-k", default_value_t = 1200)]
    pub max_k: usize,

    #[arg(long, default_value_t = 1e-3, value_parser = positive)]
    pub rho: f64,

    #[arg(long, default_value_t = 1e-6, value_parser = nonnegative)]
    pub tol: f64,

    #[arg(long = "max-iter", default_value_t = 500)]
    pub max_iter: usize,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Merged CSV path.
    #[arg(long, default_value = "table1.csv")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,

    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub k: u32,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
