use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "wor-bounds", version, about = "Concentration bounds for sampling without replacement")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct GlobalArgs {
    /// Seed for population generation and sampling
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Write output here instead of standard output
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Confidence parameter
    #[arg(long, global = true)]
    pub delta: Option<f64>,

    /// Deviation from the population mean
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub epsilon: Option<f64>,

    /// Monte Carlo repetitions per sample size
    #[arg(long, global = true)]
    pub reps: Option<u64>,

    /// Population size
    #[arg(long = "N", global = true, value_name = "N")]
    pub pop_size: Option<usize>,

    /// Generating distribution: gaussian[:mean:sd], lognormal[:mean:sd] or bernoulli:p
    #[arg(long, global = true)]
    pub dist: Option<String>,

    /// Comma-separated, strictly increasing sample sizes
    #[arg(long, global = true, value_delimiter = ',')]
    pub grid: Option<Vec<usize>>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a single bound and print it with 12 significant digits
    Bound(BoundArgs),

    /// Tail bounds at fixed epsilon against a Monte Carlo estimate, as CSV.
    ///
    /// Columns: n, empirical_p, std_err, hoeffding, bernstein,
    /// hoeffding_serfling, bernstein_serfling. hoeffding_serfling is
    /// exp(-2 n eps^2 / (rho_n (b-a)^2)), the better of the two
    /// Hoeffding-Serfling exponents, and is 0 at n = N. bernstein_serfling
    /// is the backward Bernstein-Serfling tail including its additive delta,
    /// evaluated at min(n, N-1); without --delta it is minimized over
    /// delta = 10^(-j/4), j = 0..60. All bounds use the generated
    /// population's range and variance. Defaults: N = 10000, epsilon = 0.01,
    /// reps = 1000, gaussian.
    #[command(verbatim_doc_comment)]
    Figure1,

    /// Confidence radii along one exhaustive sampling path, as CSV.
    ///
    /// Columns: n, hs_radius, bs_radius, ebs_radius. bs_radius uses the
    /// population variance, ebs_radius the running empirical standard
    /// deviation of the path. Defaults: N = 1000000, delta = 0.05, gaussian.
    #[command(verbatim_doc_comment)]
    Figure2,

    /// Run the exhaustive small-population verification suite
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundKind {
    Hoeffding,
    Bernstein,
    HsForward,
    HsBackward,
    HsRadius,
    BsForward,
    BsBackward,
    BsRadius,
    EbsRadius,
    SigmaUpper,
}

#[derive(Debug, Clone, Args)]
pub struct BoundArgs {
    pub kind: BoundKind,

    /// Sample size
    #[arg(long = "n", value_name = "n")]
    pub sample_size: usize,

    /// Width b - a of the range [a, b] containing the population
    #[arg(long, default_value_t = 1.0)]
    pub range: f64,

    /// Population variance
    #[arg(long)]
    pub variance: Option<f64>,

    /// Biased empirical standard deviation of the sample
    #[arg(long)]
    pub sigma_hat: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Largest random population size (2 to 7)
    #[arg(long, default_value_t = 7)]
    pub max_pop: usize,

    /// Number of random populations besides the fixed fixtures
    #[arg(long, default_value_t = 50)]
    pub random_populations: usize,

    /// Multiply every bound by this factor before checking
    #[arg(long, default_value_t = 1.0, hide = true)]
    pub corrupt_bound_factor: f64,
}
