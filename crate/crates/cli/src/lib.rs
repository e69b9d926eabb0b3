//! Command-line front end for `wor-bounds`: evaluate a single bound, write
//! the figure CSVs, or run the exhaustive verification suite.

pub mod args;
pub mod experiment;
pub mod format;

use std::fs::File;
use std::io::{self, BufWriter, Write};

use clap::ValueEnum;
use thiserror::Error;
use wor_bounds::bounds::{
    bernstein_tail, bs_radius, bs_tail_backward, bs_tail_forward, ebs_radius, hoeffding_tail, hs_radius,
    hs_tail_backward, hs_tail_forward, sigma_upper, PopulationSummary,
};
use wor_bounds::oracle::{run_suite, SuiteConfig, SuiteReport};
use wor_bounds::BoundError;

use args::{BoundArgs, BoundKind, Cli, Command, GlobalArgs, VerifyArgs};
use experiment::{default_grid, figure1_rows, figure2_rows, write_figure1, write_figure2, ExperimentConfig};

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Bound(#[from] BoundError),

    #[error("{0}")]
    Usage(String),

    #[error("i/o error: {0}")]
    Io(#[from] io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("verification failed")]
    VerificationFailed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::VerificationFailed => 1,
            _ => 2,
        }
    }
}

pub const FIGURE1_DEFAULT_N: usize = 10_000;
pub const FIGURE1_DEFAULT_EPSILON: f64 = 0.01;
pub const FIGURE1_DEFAULT_REPS: u64 = 1_000;
pub const FIGURE2_DEFAULT_N: usize = 1_000_000;

/// Runs a parsed command line, writing to `--out` or to `stdout`.
pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<()> {
    match &cli.global.out {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            let result = dispatch(&cli, &mut file);
            file.flush()?;
            result
        }
        None => dispatch(&cli, stdout),
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let g = &cli.global;
    match &cli.command {
        Command::Bound(b) => {
            let value = evaluate_bound(g, b)?;
            writeln!(out, "{}", format::significant(value, 12))?;
        }
        Command::Figure1 => {
            let config = experiment_config(g, FIGURE1_DEFAULT_N)?;
            write_figure1(out, &figure1_rows(&config)?)?;
        }
        Command::Figure2 => {
            let config = experiment_config(g, FIGURE2_DEFAULT_N)?;
            write_figure2(out, &figure2_rows(&config)?)?;
        }
        Command::Verify(v) => {
            let report = verify(g, v)?;
            write_report(out, &report)?;
            if !report.passed() {
                return Err(CliError::VerificationFailed);
            }
        }
    }
    Ok(())
}

/// Resolves the figure configuration from the global flags.
pub fn experiment_config(g: &GlobalArgs, default_pop: usize) -> Result<ExperimentConfig> {
    let pop_size = g.pop_size.unwrap_or(default_pop);
    let distribution = g.dist.as_deref().unwrap_or("gaussian").parse()?;
    let config = ExperimentConfig {
        distribution,
        pop_size,
        epsilon: g.epsilon.unwrap_or(FIGURE1_DEFAULT_EPSILON),
        delta: g.delta,
        reps: g.reps.unwrap_or(FIGURE1_DEFAULT_REPS),
        seed: g.seed,
        n_grid: g.grid.clone().unwrap_or_else(|| default_grid(pop_size)),
    };
    config.validate()?;
    Ok(config)
}

fn kind_name(kind: BoundKind) -> String {
    kind.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
}

fn require(value: Option<f64>, kind: BoundKind, flag: &str) -> Result<f64> {
    value.ok_or_else(|| CliError::Usage(format!("bound {} requires --{flag}", kind_name(kind))))
}

/// Value of the requested bound. Bounds that do not depend on the
/// population size take `N = max(n, 2)` when `--N` is absent.
pub fn evaluate_bound(g: &GlobalArgs, b: &BoundArgs) -> Result<f64> {
    let n = b.sample_size;
    let kind = b.kind;
    let size_free = matches!(kind, BoundKind::Hoeffding | BoundKind::Bernstein);
    let big = match g.pop_size {
        Some(big) => big,
        None if size_free => n.max(2),
        None => return Err(CliError::Usage(format!("bound {} requires --N", kind_name(kind)))),
    };
    let summary = || -> Result<PopulationSummary> {
        let s = PopulationSummary::new(big, n, 0.0, b.range)?;
        Ok(match b.variance {
            Some(v) => s.with_variance(v)?,
            None => s,
        })
    };
    let eps = || require(g.epsilon, kind, "epsilon");
    let delta = || require(g.delta, kind, "delta");
    let var = || require(b.variance, kind, "variance").map(|_| ());
    let sigma_hat = || require(b.sigma_hat, kind, "sigma-hat");
    Ok(match kind {
        BoundKind::Hoeffding => hoeffding_tail(&summary()?, eps()?)?.value(),
        BoundKind::Bernstein => {
            var()?;
            bernstein_tail(&summary()?, eps()?)?.value()
        }
        BoundKind::HsForward => hs_tail_forward(&summary()?, eps()?)?.value(),
        BoundKind::HsBackward => hs_tail_backward(&summary()?, eps()?)?.value(),
        BoundKind::HsRadius => hs_radius(&summary()?, delta()?)?.value(),
        BoundKind::BsForward => {
            var()?;
            bs_tail_forward(&summary()?, eps()?, delta()?)?.value()
        }
        BoundKind::BsBackward => {
            var()?;
            bs_tail_backward(&summary()?, eps()?, delta()?)?.value()
        }
        BoundKind::BsRadius => {
            var()?;
            bs_radius(&summary()?, delta()?)?.value()
        }
        BoundKind::EbsRadius => ebs_radius(n, big, delta()?, sigma_hat()?, b.range)?.value(),
        BoundKind::SigmaUpper => sigma_upper(n, big, delta()?, sigma_hat()?, b.range)?,
    })
}

pub fn verify(g: &GlobalArgs, v: &VerifyArgs) -> Result<SuiteReport> {
    let config = SuiteConfig {
        max_pop: v.max_pop,
        random_populations: v.random_populations,
        seed: g.seed,
        bound_scale: v.corrupt_bound_factor,
    };
    Ok(run_suite(&config)?)
}

pub fn write_report(out: &mut dyn Write, report: &SuiteReport) -> io::Result<()> {
    writeln!(out, "populations: {}", report.populations)?;
    for c in &report.checks {
        writeln!(
            out,
            "{} {:<22} max_violation={:<12} tolerance={:<8} cases={}",
            if c.passed() { "PASS" } else { "FAIL" },
            c.name,
            format::significant(c.report.max_violation, 4),
            format::significant(c.tolerance, 3),
            c.report.cases,
        )?;
    }
    writeln!(out, "{}", if report.passed() { "all checks passed" } else { "verification FAILED" })
}
