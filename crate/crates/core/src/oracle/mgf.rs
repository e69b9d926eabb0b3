//! Exact moment generating functions against their bounds.

use super::enumerate::check_ordered;
use super::{check_sample, exact_mgf, CheckReport, PathStats};
use crate::bounds::{hs_log_mgf_bound, phi, MgfVariant};
use crate::error::Result;
use crate::monte_carlo::Population;
use itertools::Itertools;

/// Largest population for which `check_mgf_bounds` walks all `N!` orders.
pub const MAX_MGF_POP: usize = 7;

/// `lambda = j / 4` for `j = 1..=20`.
pub fn lambda_grid() -> impl Iterator<Item = f64> {
    (1..=20).map(|j| j as f64 / 4.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MgfReport {
    /// `log E exp(lambda n Z_n)` minus each range-based log-MGF bound.
    pub log_mgf_excess: CheckReport,
    /// Variance-corrected exponential moments minus one.
    pub supermartingale_excess: CheckReport,
}

impl MgfReport {
    pub fn passes(&self, tolerance: f64) -> bool {
        self.log_mgf_excess.passes(tolerance) && self.supermartingale_excess.passes(tolerance)
    }
}

/// Variance penalties of the two exponential supermartingales at sample
/// size `n` along one ordering:
/// `sum_{k=1}^{N-n} phi(2R lambda n/(N-k)) sigma^2_{<,N-k+1} n^2/(N-k)^2` and
/// `sum_{k=1}^{n} phi(2R lambda (N-n)/(N-k)) sigma^2_{>,k} (N-n)^2/(N-k)^2`.
fn penalties(path: &PathStats, n: usize, lambda: f64, range: f64) -> (f64, f64) {
    let big = path.pop_size();
    let (nf, rest) = (n as f64, (big - n) as f64);
    let backward = (1..=big - n)
        .map(|k| {
            let d = (big - k) as f64;
            phi(2.0 * range * lambda * nf / d) * path.sigma2_lt(big - k + 1) * nf * nf / (d * d)
        })
        .sum();
    let forward = (1..=n)
        .map(|k| {
            let d = (big - k) as f64;
            phi(2.0 * range * lambda * rest / d) * path.sigma2_gt(k) * rest * rest / (d * d)
        })
        .sum();
    (backward, forward)
}

/// For `n` fixed and every `lambda` on the grid: `log exact_mgf` against
/// both range-based bounds, and the two variance-corrected exponential
/// moments against 1 (for `n <= N-1`, over all `N!` orderings).
pub fn check_mgf_bounds(pop: &Population, n: usize) -> Result<MgfReport> {
    check_sample(pop, n)?;
    let big = pop.len();
    check_ordered("orderings", big, MAX_MGF_POP)?;
    let range = pop.range();
    let mut report = MgfReport::default();
    for lambda in lambda_grid() {
        let log_mgf = exact_mgf(pop, n, lambda)?.ln();
        let improved = hs_log_mgf_bound(n, big, lambda, range, MgfVariant::Improved)?;
        report.log_mgf_excess.record(log_mgf - improved);
        if n < big {
            let serfling = hs_log_mgf_bound(n, big, lambda, range, MgfVariant::Serfling)?;
            report.log_mgf_excess.record(log_mgf - serfling);
        }
    }
    if n < big {
        report.supermartingale_excess = supermartingale_excess(pop, n, &all_paths(pop)?);
    }
    Ok(report)
}

/// Every ordering of the population, as path statistics.
pub(crate) fn all_paths(pop: &Population) -> Result<Vec<PathStats>> {
    let big = pop.len();
    check_ordered("orderings", big, MAX_MGF_POP)?;
    (0..big)
        .permutations(big)
        .map(|order| PathStats::new(pop, &order))
        .collect()
}

/// The two variance-corrected exponential moments minus one, for every
/// `lambda` on the grid; `paths` must hold every ordering and `n < N`.
pub(crate) fn supermartingale_excess(pop: &Population, n: usize, paths: &[PathStats]) -> CheckReport {
    let range = pop.range();
    let count = paths.len() as f64;
    let mut report = CheckReport::new();
    for lambda in lambda_grid() {
        let (mut backward, mut forward) = (0.0, 0.0);
        for path in paths {
            let gain = lambda * path.centered_sum(n);
            let (pen_b, pen_f) = penalties(path, n, lambda, range);
            backward += (gain - lambda * lambda * pen_b).exp();
            forward += (gain - lambda * lambda * pen_f).exp();
        }
        report.record(backward / count - 1.0);
        report.record(forward / count - 1.0);
    }
    report
}
