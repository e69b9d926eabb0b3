//! Exact computations on tiny populations.
//!
//! Permutation-invariant quantities (sample mean, its MGF) are computed by
//! enumerating unordered subsets; anything that conditions on the order of
//! the draws enumerates ordered arrangements or full permutations.
//! Probabilities are kept as exact counts over counts.
//!
//! Deviation events `mean - mu >= eps` are decided as
//! `N * S - n * T >= eps * n * N`, with `S` the sample sum and `T` the
//! population total. For populations whose values are small dyadic
//! rationals (every built-in fixture) the left side is exact, so ties are
//! resolved without rounding.

mod enumerate;
mod identities;
mod mgf;
mod path;
pub mod suite;
mod validity;

pub use enumerate::{SumLaw, ENUMERATION_BUDGET, MAX_ORDERED_POP};
pub use identities::{
    check_conditional_variance, check_forward_martingale, check_reduction,
    check_reverse_martingale, reduction_expectations, reduction_violation, ConvexTest,
};
pub use mgf::{check_mgf_bounds, lambda_grid, MgfReport, MAX_MGF_POP};
pub use suite::{run_suite, SuiteCheck, SuiteConfig, SuiteReport};
pub use path::PathStats;
pub use validity::{envelope_validity, epsilon_grid, radius_validity, tail_validity, TailBoundKind, DELTAS};

use crate::error::{BoundError, Result};
use crate::monte_carlo::Population;

/// A probability `hits / total` over equally likely outcomes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactProbability {
    pub hits: u64,
    pub total: u64,
}

impl ExactProbability {
    pub fn value(&self) -> f64 {
        self.hits as f64 / self.total as f64
    }
}

/// Largest discrepancy seen by a check, over `cases` evaluated cases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckReport {
    pub max_violation: f64,
    pub cases: u64,
}

impl CheckReport {
    pub fn new() -> Self {
        Self {
            max_violation: 0.0,
            cases: 0,
        }
    }

    pub(crate) fn record(&mut self, violation: f64) {
        self.cases += 1;
        // NaN must count as a failure
        if !(violation <= self.max_violation) {
            self.max_violation = if violation.is_nan() { f64::INFINITY } else { violation };
        }
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.cases += other.cases;
        self.max_violation = self.max_violation.max(other.max_violation);
    }

    pub fn passes(&self, tolerance: f64) -> bool {
        self.max_violation <= tolerance
    }
}

impl Default for CheckReport {
    fn default() -> Self {
        Self::new()
    }
}

fn check_sample(pop: &Population, n: usize) -> Result<()> {
    crate::bounds::check_sizes(n, pop.len(), 1, pop.len())
}

/// `N * S - n * T`, i.e. `n N (mean - mu)`.
pub(crate) fn scaled_deviation(pop_size: usize, total: f64, n: usize, sum: f64) -> f64 {
    pop_size as f64 * sum - n as f64 * total
}

pub(crate) fn total(pop: &Population) -> f64 {
    pop.values().iter().sum()
}

/// Exact `P(mean of an n-sample - mu >= eps)` by enumerating all
/// `C(N, n)` subsets.
pub fn exact_exceedance(pop: &Population, n: usize, eps: f64) -> Result<ExactProbability> {
    check_sample(pop, n)?;
    if !eps.is_finite() {
        return Err(BoundError::Epsilon(eps));
    }
    let law = enumerate::without_replacement_law(pop.values(), n)?;
    let (big, total) = (pop.len(), total(pop));
    let threshold = eps * n as f64 * big as f64;
    let hits = law
        .atoms
        .iter()
        .filter(|&&(sum, _)| scaled_deviation(big, total, n, sum) >= threshold)
        .map(|&(_, c)| c)
        .sum();
    Ok(ExactProbability { hits, total: law.total })
}

/// Exact `E exp(lambda n Z_n)` where `n Z_n = sum_{t<=n} (X_t - mu)`.
pub fn exact_mgf(pop: &Population, n: usize, lambda: f64) -> Result<f64> {
    check_sample(pop, n)?;
    if !lambda.is_finite() {
        return Err(BoundError::Argument {
            name: "lambda",
            requirement: "finite",
            value: lambda,
        });
    }
    if lambda == 0.0 {
        return Ok(1.0);
    }
    let law = enumerate::without_replacement_law(pop.values(), n)?;
    let (big, total) = (pop.len(), total(pop));
    Ok(law.expectation(|sum| (lambda * scaled_deviation(big, total, n, sum) / big as f64).exp()))
}

/// Law of the sample sum without replacement.
pub fn sum_law_without_replacement(pop: &Population, n: usize) -> Result<SumLaw> {
    check_sample(pop, n)?;
    enumerate::without_replacement_law(pop.values(), n)
}

/// Law of the sum of `n` draws with replacement.
pub fn sum_law_with_replacement(pop: &Population, n: usize) -> Result<SumLaw> {
    check_sample(pop, n)?;
    enumerate::with_replacement_law(pop.values(), n)
}
