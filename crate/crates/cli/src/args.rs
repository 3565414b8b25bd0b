use std::num::NonZeroUsize;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "relcalc",
    version,
    about = "Bayesian reliability analysis for pass/fail test data"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Beta prior from a point estimate and an effective prior sample size.
    Elicit {
        #[arg(long)]
        theta_hat: f64,
        #[arg(long)]
        n_pr: f64,
    },
    /// Per-component conjugate posteriors.
    Update {
        #[arg(long)]
        model: PathBuf,
        /// Also write prior and posterior densities on a grid to `densities.csv`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Number of grid points on [0, 1] for `densities.csv`.
        #[arg(long, default_value_t = 201, value_parser = clap::value_parser!(u32).range(2..))]
        grid: u32,
    },
    /// Monte Carlo distribution of system reliability.
    Propagate(RunArgs),
    /// System reliability conditioned on whole-system test outcomes.
    Condition(RunArgs),
    /// Rejection sampling on the built-in discrete joint table, z = 2.
    DemoDiscrete {
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long, default_value_t = 10_000)]
        nsim: usize,
        /// Candidate budget [default: 1000 * nsim]
        #[arg(long)]
        max_attempts: Option<u64>,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct SeedArg {
    #[arg(long, env = "RELCALC_SEED", default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub model: PathBuf,
    /// Output directory, created if missing.
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub seed: SeedArg,
    #[arg(long, default_value_t = 10_000)]
    pub nsim: usize,
    #[arg(long, default_value_t = 50)]
    pub bins: usize,
    #[arg(long, default_value_t = 0.95)]
    pub level: f64,
    /// Candidate budget for `condition` [default: 1000 * nsim]
    #[arg(long)]
    pub max_attempts: Option<u64>,
    #[arg(long, default_value = "1")]
    pub chunks: NonZeroUsize,
}
