//! Seeded populations, sampling without replacement and Monte Carlo
//! estimation of exceedance probabilities.
//!
//! Randomness comes from ChaCha8 with a 64-bit seed expanded by
//! `seed_from_u64`; independent substreams are selected with the ChaCha
//! stream id. Repetition `r` of [`estimate_exceedance`] uses stream `r`,
//! population generation and exhaustion paths use two reserved streams at
//! the top of the range. Results therefore do not depend on how
//! repetitions are scheduled across threads.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;

use crate::bounds::PopulationSummary;
use crate::error::{BoundError, Result};
use crate::estimators::PrefixStats;

const POPULATION_STREAM: u64 = u64::MAX;
const EXHAUSTION_STREAM: u64 = u64::MAX - 1;

/// Generator for substream `stream` of `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// A finite population of reals with cached moments and range.
#[derive(Debug, Clone, PartialEq)]
pub struct Population {
    values: Vec<f64>,
    mean: f64,
    variance: f64,
    range_low: f64,
    range_high: f64,
}

impl Population {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(BoundError::PopulationTooSmall(values.len()));
        }
        if values.iter().any(|x| !x.is_finite()) {
            return Err(BoundError::NonFiniteValue);
        }
        let size = values.len() as f64;
        let mean = values.iter().sum::<f64>() / size;
        let variance = values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / size;
        let (range_low, range_high) = values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)));
        Ok(Self {
            values,
            mean,
            variance,
            range_low,
            range_high,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Population variance, `N` denominator.
    pub fn variance(&self) -> f64 {
        self.variance
    }

    pub fn std_dev(&self) -> f64 {
        self.variance.sqrt()
    }

    pub fn range_low(&self) -> f64 {
        self.range_low
    }

    pub fn range_high(&self) -> f64 {
        self.range_high
    }

    pub fn range(&self) -> f64 {
        self.range_high - self.range_low
    }

    /// Bound parameters for a sample of size `n` from this population,
    /// including the realised variance.
    pub fn summary(&self, n: usize) -> Result<PopulationSummary> {
        PopulationSummary::new(self.len(), n, self.range_low, self.range_high)?
            .with_variance(self.variance)
    }
}

/// Generating law of a synthetic population.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DistributionSpec {
    Gaussian { mean: f64, sd: f64 },
    /// `exp(Z)` with `Z ~ Normal(norm_mean, norm_sd)`.
    LogNormal { norm_mean: f64, norm_sd: f64 },
    Bernoulli { p: f64 },
}

impl DistributionSpec {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            Self::Gaussian { mean, sd } => mean.is_finite() && sd.is_finite() && sd > 0.0,
            Self::LogNormal { norm_mean, norm_sd } => {
                norm_mean.is_finite() && norm_sd.is_finite() && norm_sd > 0.0
            }
            Self::Bernoulli { p } => (0.0..=1.0).contains(&p),
        };
        if ok {
            Ok(())
        } else {
            Err(BoundError::Distribution(format!("invalid parameters in {self}")))
        }
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> f64 {
        match *self {
            Self::Gaussian { mean, sd } => Normal::new(mean, sd).expect("validated").sample(rng),
            Self::LogNormal { norm_mean, norm_sd } => Normal::new(norm_mean, norm_sd)
                .expect("validated")
                .sample(rng)
                .exp(),
            Self::Bernoulli { p } => {
                if rng.random::<f64>() < p {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }
}

impl fmt::Display for DistributionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Gaussian { mean, sd } => write!(f, "gaussian:{mean}:{sd}"),
            Self::LogNormal { norm_mean, norm_sd } => write!(f, "lognormal:{norm_mean}:{norm_sd}"),
            Self::Bernoulli { p } => write!(f, "bernoulli:{p}"),
        }
    }
}

/// Parses `gaussian[:mean:sd]`, `lognormal[:mean:sd]` or `bernoulli:p`.
/// Bare `gaussian` is `N(0, 1)` and bare `lognormal` is `lnN(1, 1)`.
impl FromStr for DistributionSpec {
    type Err = BoundError;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(':');
        let kind = parts.next().unwrap_or_default().to_ascii_lowercase();
        let params = parts
            .map(|p| {
                p.trim()
                    .parse::<f64>()
                    .map_err(|_| BoundError::Distribution(format!("bad parameter {p:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let spec = match (kind.as_str(), params.as_slice()) {
            ("gaussian" | "normal", []) => Self::Gaussian { mean: 0.0, sd: 1.0 },
            ("gaussian" | "normal", [mean, sd]) => Self::Gaussian { mean: *mean, sd: *sd },
            ("lognormal", []) => Self::LogNormal {
                norm_mean: 1.0,
                norm_sd: 1.0,
            },
            ("lognormal", [m, sd]) => Self::LogNormal {
                norm_mean: *m,
                norm_sd: *sd,
            },
            ("bernoulli", [p]) => Self::Bernoulli { p: *p },
            _ => {
                return Err(BoundError::Distribution(format!(
                    "expected gaussian[:mean:sd], lognormal[:mean:sd] or bernoulli:p, got {s:?}"
                )))
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Draws `pop_size` i.i.d. values from `spec`. Deterministic in
/// `(spec, pop_size, seed)`.
pub fn generate_population(spec: &DistributionSpec, pop_size: usize, seed: u64) -> Result<Population> {
    spec.validate()?;
    if pop_size < 2 {
        return Err(BoundError::PopulationTooSmall(pop_size));
    }
    let mut rng = stream_rng(seed, POPULATION_STREAM);
    Population::new((0..pop_size).map(|_| spec.sample(&mut rng)).collect())
}

/// Index buffer for repeated partial Fisher–Yates shuffles. The buffer is
/// restored to the identity after each draw so it can be reused.
struct PartialShuffler {
    indices: Vec<usize>,
    swaps: Vec<usize>,
}

impl PartialShuffler {
    fn new(pop_size: usize) -> Self {
        Self {
            indices: (0..pop_size).collect(),
            swaps: Vec::new(),
        }
    }

    /// Selects `n` distinct indices uniformly (as an ordered list), hands
    /// them to `f`, then undoes the swaps.
    fn with_draw<T>(&mut self, n: usize, rng: &mut ChaCha8Rng, f: impl FnOnce(&[usize]) -> T) -> T {
        let len = self.indices.len();
        self.swaps.clear();
        for i in 0..n {
            let j = rng.random_range(i..len);
            self.indices.swap(i, j);
            self.swaps.push(j);
        }
        let out = f(&self.indices[..n]);
        for (i, &j) in self.swaps.iter().enumerate().rev() {
            self.indices.swap(i, j);
        }
        out
    }
}

fn check_sample_size(pop: &Population, n: usize) -> Result<()> {
    crate::bounds::check_sizes(n, pop.len(), 1, pop.len())
}

/// An ordered sample of `n` values drawn without replacement.
pub fn draw_without_replacement(pop: &Population, n: usize, seed: u64) -> Result<Vec<f64>> {
    check_sample_size(pop, n)?;
    let mut rng = stream_rng(seed, 0);
    let mut shuffler = PartialShuffler::new(pop.len());
    Ok(shuffler.with_draw(n, &mut rng, |idx| idx.iter().map(|&i| pop.values[i]).collect()))
}

/// Monte Carlo estimate of `P(sample mean - mu >= eps)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExceedanceEstimate {
    pub p_hat: f64,
    pub successes: u64,
    pub reps: u64,
    /// `sqrt(p_hat (1 - p_hat) / reps)`
    pub std_err: f64,
}

impl ExceedanceEstimate {
    fn from_counts(successes: u64, reps: u64) -> Self {
        let p_hat = successes as f64 / reps as f64;
        Self {
            p_hat,
            successes,
            reps,
            std_err: (p_hat * (1.0 - p_hat) / reps as f64).sqrt(),
        }
    }
}

/// Fraction of `reps` independent samples of size `n` whose mean exceeds
/// the population mean by at least `eps`. Repetitions run in parallel.
pub fn estimate_exceedance(
    pop: &Population,
    n: usize,
    eps: f64,
    reps: u64,
    seed: u64,
) -> Result<ExceedanceEstimate> {
    check_sample_size(pop, n)?;
    if !eps.is_finite() {
        return Err(BoundError::Epsilon(eps));
    }
    if reps == 0 {
        return Err(BoundError::Argument {
            name: "reps",
            requirement: "at least 1",
            value: 0.0,
        });
    }
    let (values, mu, nf) = (&pop.values, pop.mean, n as f64);
    let successes: u64 = (0..reps)
        .into_par_iter()
        .map_init(
            || PartialShuffler::new(values.len()),
            |shuffler, rep| {
                let mut rng = stream_rng(seed, rep);
                let sum = shuffler.with_draw(n, &mut rng, |idx| idx.iter().map(|&i| values[i]).sum::<f64>());
                u64::from(sum / nf - mu >= eps)
            },
        )
        .sum();
    Ok(ExceedanceEstimate::from_counts(successes, reps))
}

/// Prefix statistics after `k` draws of an exhaustive path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathPoint {
    pub k: usize,
    pub mean: f64,
    /// Biased empirical variance of the first `k` draws.
    pub variance: f64,
}

/// Samples the whole population without replacement in one random order
/// and records the running mean and variance after every draw.
pub fn exhaustion_path(pop: &Population, seed: u64) -> Vec<PathPoint> {
    let mut rng = stream_rng(seed, EXHAUSTION_STREAM);
    let mut shuffler = PartialShuffler::new(pop.len());
    shuffler.with_draw(pop.len(), &mut rng, |order| {
        let mut stats = PrefixStats::new();
        order
            .iter()
            .map(|&i| {
                stats = stats.push(pop.values[i]);
                PathPoint {
                    k: stats.count(),
                    mean: stats.mean().expect("nonempty"),
                    variance: stats.variance().expect("nonempty"),
                }
            })
            .collect()
    })
}
