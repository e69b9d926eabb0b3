//! Figure reproduction: configuration, sample-size grids and CSV rows.

use std::io::Write;

use wor_bounds::bounds::{
    bernstein_tail, bs_radius, bs_tail_backward, ebs_radius, hoeffding_tail, hs_radius, hs_tail,
};
use wor_bounds::monte_carlo::{estimate_exceedance, exhaustion_path, generate_population, DistributionSpec, Population};

use crate::format::csv_real;
use crate::{CliError, Result};

/// Everything a figure run depends on.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub distribution: DistributionSpec,
    pub pop_size: usize,
    pub epsilon: f64,
    pub delta: Option<f64>,
    pub reps: u64,
    pub seed: u64,
    pub n_grid: Vec<usize>,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        self.distribution.validate()?;
        if self.pop_size < 2 {
            return Err(CliError::Usage(format!("--N must be at least 2, got {}", self.pop_size)));
        }
        check_grid(&self.n_grid, self.pop_size)?;
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(CliError::Usage(format!("--epsilon must be positive, got {}", self.epsilon)));
        }
        if let Some(delta) = self.delta {
            if !(delta > 0.0 && delta <= 1.0) {
                return Err(CliError::Usage(format!("--delta must lie in (0, 1], got {delta}")));
            }
        }
        if self.reps == 0 {
            return Err(CliError::Usage("--reps must be at least 1".into()));
        }
        Ok(())
    }

    pub fn population(&self) -> Result<Population> {
        Ok(generate_population(&self.distribution, self.pop_size, self.seed)?)
    }
}

/// 40 log-spaced integers from 10 (from 1 when `N < 10`) to `N`, plus
/// `N - 1` and `N`, sorted and deduplicated.
pub fn default_grid(pop_size: usize) -> Vec<usize> {
    let lo = if pop_size >= 10 { 10.0 } else { 1.0 };
    let hi = pop_size as f64;
    let mut grid: Vec<usize> = (0..40)
        .map(|i| (lo * (hi / lo).powf(i as f64 / 39.0)).round() as usize)
        .chain([pop_size.saturating_sub(1), pop_size])
        .filter(|&n| (1..=pop_size).contains(&n))
        .collect();
    grid.sort_unstable();
    grid.dedup();
    grid
}

pub fn check_grid(grid: &[usize], pop_size: usize) -> Result<()> {
    if grid.is_empty() {
        return Err(CliError::Usage("--grid is empty".into()));
    }
    if let Some(&bad) = grid.iter().find(|&&n| n == 0 || n > pop_size) {
        return Err(CliError::Usage(format!("--grid value {bad} is outside 1..={pop_size}")));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CliError::Usage("--grid must be strictly increasing".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Figure1Row {
    pub n: usize,
    pub empirical_p: f64,
    pub std_err: f64,
    pub hoeffding: f64,
    pub bernstein: f64,
    pub hoeffding_serfling: f64,
    pub bernstein_serfling: f64,
}

pub const FIGURE1_HEADER: [&str; 7] = [
    "n",
    "empirical_p",
    "std_err",
    "hoeffding",
    "bernstein",
    "hoeffding_serfling",
    "bernstein_serfling",
];

/// `10^(-j/4)` for `j = 0..=60`.
fn delta_grid() -> impl Iterator<Item = f64> {
    (0..=60).map(|j| 10f64.powf(-(j as f64) / 4.0))
}

pub fn figure1_rows(config: &ExperimentConfig) -> Result<Vec<Figure1Row>> {
    config.validate()?;
    let pop = config.population()?;
    figure1_rows_for(&pop, config)
}

/// Figure 1 rows for an already generated population.
pub fn figure1_rows_for(pop: &Population, config: &ExperimentConfig) -> Result<Vec<Figure1Row>> {
    let (big, eps) = (pop.len(), config.epsilon);
    check_grid(&config.n_grid, big)?;
    config
        .n_grid
        .iter()
        .map(|&n| {
            let est = estimate_exceedance(pop, n, eps, config.reps, config.seed)?;
            let s = pop.summary(n)?;
            let capped = pop.summary(n.min(big - 1))?;
            let bs = |delta| bs_tail_backward(&capped, eps, delta).map(|t| t.value());
            let bernstein_serfling = match config.delta {
                Some(delta) => bs(delta)?,
                None => delta_grid().map(bs).try_fold(1.0f64, |m, v| v.map(|v| m.min(v)))?,
            };
            Ok(Figure1Row {
                n,
                empirical_p: est.p_hat,
                std_err: est.std_err,
                hoeffding: hoeffding_tail(&s, eps)?.value(),
                bernstein: bernstein_tail(&s, eps)?.value(),
                hoeffding_serfling: hs_tail(&s, eps)?.value(),
                bernstein_serfling,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Figure2Row {
    pub n: usize,
    pub hs_radius: f64,
    pub bs_radius: f64,
    pub ebs_radius: f64,
}

pub const FIGURE2_HEADER: [&str; 4] = ["n", "hs_radius", "bs_radius", "ebs_radius"];

pub const FIGURE2_DEFAULT_DELTA: f64 = 0.05;

pub fn figure2_rows(config: &ExperimentConfig) -> Result<Vec<Figure2Row>> {
    config.validate()?;
    let pop = config.population()?;
    figure2_rows_for(&pop, config)
}

/// Figure 2 rows for an already generated population; the empirical
/// standard deviation comes from one exhaustive path seeded by `config.seed`.
pub fn figure2_rows_for(pop: &Population, config: &ExperimentConfig) -> Result<Vec<Figure2Row>> {
    let big = pop.len();
    check_grid(&config.n_grid, big)?;
    let delta = config.delta.unwrap_or(FIGURE2_DEFAULT_DELTA);
    let path = exhaustion_path(pop, config.seed);
    config
        .n_grid
        .iter()
        .map(|&n| {
            let s = pop.summary(n)?;
            let sigma_hat = path[n - 1].variance.sqrt();
            Ok(Figure2Row {
                n,
                hs_radius: hs_radius(&s, delta)?.value(),
                bs_radius: bs_radius(&s, delta)?.value(),
                ebs_radius: ebs_radius(n, big, delta, sigma_hat, pop.range())?.value(),
            })
        })
        .collect()
}

pub fn write_figure1(out: impl Write, rows: &[Figure1Row]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(FIGURE1_HEADER)?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            csv_real(r.empirical_p),
            csv_real(r.std_err),
            csv_real(r.hoeffding),
            csv_real(r.bernstein),
            csv_real(r.hoeffding_serfling),
            csv_real(r.bernstein_serfling),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_figure2(out: impl Write, rows: &[Figure2Row]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(FIGURE2_HEADER)?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            csv_real(r.hs_radius),
            csv_real(r.bs_radius),
            csv_real(r.ebs_radius),
        ])?;
    }
    w.flush()?;
    Ok(())
}
