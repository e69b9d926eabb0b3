//! Every bound against the exact law of the sample mean.

use super::enumerate::{self, binomial, check_budget, check_ordered, ENUMERATION_BUDGET};
use super::mgf::{all_paths, MAX_MGF_POP};
use super::{scaled_deviation, total, CheckReport};
use crate::bounds::{
    bernstein_tail, bs_radius, bs_tail_backward, bs_tail_forward, ebs_radius, hoeffding_tail, hs_radius,
    hs_tail, hs_tail_backward, hs_tail_forward, sigma_upper, variance_envelope_backward,
    variance_envelope_forward, PopulationSummary, TailProbability,
};
use crate::error::Result;
use crate::monte_carlo::Population;
use itertools::Itertools;

/// Confidence levels at which `delta`-dependent bounds are checked.
pub const DELTAS: [f64; 3] = [0.5, 0.1, 0.01];

/// Tail bounds checked against the exact exceedance probability.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TailBoundKind {
    Hoeffding,
    Bernstein,
    HoeffdingSerfling,
    HoeffdingSerflingForward,
    HoeffdingSerflingBackward,
    BernsteinSerflingForward,
    BernsteinSerflingBackward,
}

impl TailBoundKind {
    pub const ALL: [TailBoundKind; 7] = [
        TailBoundKind::Hoeffding,
        TailBoundKind::Bernstein,
        TailBoundKind::HoeffdingSerfling,
        TailBoundKind::HoeffdingSerflingForward,
        TailBoundKind::HoeffdingSerflingBackward,
        TailBoundKind::BernsteinSerflingForward,
        TailBoundKind::BernsteinSerflingBackward,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            TailBoundKind::Hoeffding => "hoeffding",
            TailBoundKind::Bernstein => "bernstein",
            TailBoundKind::HoeffdingSerfling => "hs",
            TailBoundKind::HoeffdingSerflingForward => "hs-forward",
            TailBoundKind::HoeffdingSerflingBackward => "hs-backward",
            TailBoundKind::BernsteinSerflingForward => "bs-forward",
            TailBoundKind::BernsteinSerflingBackward => "bs-backward",
        }
    }

    /// The bound's values at `(s, eps)`: one per `delta` in [`DELTAS`] for
    /// the `delta`-dependent bounds, none where the sample size is outside
    /// the bound's domain.
    fn values(&self, s: &PopulationSummary, eps: f64) -> Result<Vec<f64>> {
        let proper = s.sample_size() < s.pop_size();
        let single = |t: Result<TailProbability>| t.map(|t| vec![t.value()]);
        let per_delta = |f: fn(&PopulationSummary, f64, f64) -> Result<TailProbability>| {
            DELTAS.iter().map(|&d| f(s, eps, d).map(|t| t.value())).collect()
        };
        match self {
            TailBoundKind::Hoeffding => single(hoeffding_tail(s, eps)),
            TailBoundKind::Bernstein => single(bernstein_tail(s, eps)),
            TailBoundKind::HoeffdingSerfling => single(hs_tail(s, eps)),
            _ if !proper => Ok(Vec::new()),
            TailBoundKind::HoeffdingSerflingForward => single(hs_tail_forward(s, eps)),
            TailBoundKind::HoeffdingSerflingBackward => single(hs_tail_backward(s, eps)),
            TailBoundKind::BernsteinSerflingForward => per_delta(bs_tail_forward),
            TailBoundKind::BernsteinSerflingBackward => per_delta(bs_tail_backward),
        }
    }
}

/// `eps = range * j / 64` for `j = 1..=50` (`range = 1` for a constant
/// population). Dyadic steps keep deviations of dyadic fixtures exact.
pub fn epsilon_grid(pop: &Population) -> Vec<f64> {
    let range = if pop.range() > 0.0 { pop.range() } else { 1.0 };
    (1..=50).map(|j| range * j as f64 / 64.0).collect()
}

/// For every tail bound, the largest `exact - scale * bound` over all
/// `n` and the epsilon grid. `scale` is 1 except when deliberately
/// weakening the bounds to exercise failure reporting.
pub fn tail_validity(pop: &Population, scale: f64) -> Result<Vec<(TailBoundKind, CheckReport)>> {
    let big = pop.len();
    let total = total(pop);
    let grid = epsilon_grid(pop);
    let mut reports: Vec<(TailBoundKind, CheckReport)> =
        TailBoundKind::ALL.iter().map(|&k| (k, CheckReport::new())).collect();
    for n in 1..=big {
        let law = enumerate::without_replacement_law(pop.values(), n)?;
        let s = pop.summary(n)?;
        for &eps in &grid {
            let threshold = eps * n as f64 * big as f64;
            let hits: u64 = law
                .atoms
                .iter()
                .filter(|&&(sum, _)| scaled_deviation(big, total, n, sum) >= threshold)
                .map(|&(_, c)| c)
                .sum();
            let exact = hits as f64 / law.total as f64;
            for (kind, report) in reports.iter_mut() {
                for bound in kind.values(&s, eps)? {
                    report.record(exact - scale * bound);
                }
            }
        }
    }
    Ok(reports)
}

struct SubsetStats {
    scaled_dev: f64,
    sigma_hat: f64,
}

fn subset_stats(pop: &Population, n: usize) -> Result<Vec<SubsetStats>> {
    check_budget("unordered subsets", binomial(pop.len(), n), ENUMERATION_BUDGET)?;
    let (big, total) = (pop.len(), total(pop));
    Ok(pop
        .values()
        .iter()
        .copied()
        .combinations(n)
        .map(|subset| {
            let sum: f64 = subset.iter().sum();
            let mean = sum / n as f64;
            let var = subset.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n as f64;
            SubsetStats {
                scaled_dev: scaled_deviation(big, total, n, sum),
                sigma_hat: var.sqrt(),
            }
        })
        .collect())
}

/// Coverage of the confidence radii and of the standard-deviation upper
/// bound: for every `n` and `delta` in [`DELTAS`], the exact frequency of
/// `mean - mu > radius` (resp. `sigma > sigma_upper`) minus its budget
/// (`delta`, `2 delta` or `5 delta`).
pub fn radius_validity(pop: &Population, scale: f64) -> Result<Vec<(&'static str, CheckReport)>> {
    let big = pop.len();
    let (range, sigma) = (pop.range(), pop.std_dev());
    let mut hs = CheckReport::new();
    let mut bs = CheckReport::new();
    let mut ebs = CheckReport::new();
    let mut upper = CheckReport::new();
    for n in 1..=big {
        let subsets = subset_stats(pop, n)?;
        let count = subsets.len() as f64;
        let s = pop.summary(n)?;
        let scale_to_sum = (n * big) as f64;
        let frequency = |radius: &dyn Fn(&SubsetStats) -> Result<f64>| -> Result<f64> {
            let mut hits = 0u64;
            for sub in &subsets {
                if sub.scaled_dev > scale * radius(sub)? * scale_to_sum {
                    hits += 1;
                }
            }
            Ok(hits as f64 / count)
        };
        for delta in DELTAS {
            let r = hs_radius(&s, delta)?;
            hs.record(frequency(&|_| Ok(r.value()))? - r.confidence_spent());
            let r = bs_radius(&s, delta)?;
            bs.record(frequency(&|_| Ok(r.value()))? - r.confidence_spent());
            let freq = frequency(&|sub| Ok(ebs_radius(n, big, delta, sub.sigma_hat, range)?.value()))?;
            ebs.record(freq - 5.0 * delta);
            let mut misses = 0u64;
            for sub in &subsets {
                if sigma > scale * sigma_upper(n, big, delta, sub.sigma_hat, range)? {
                    misses += 1;
                }
            }
            upper.record(misses as f64 / count - delta);
        }
    }
    Ok(vec![
        ("hs-radius", hs),
        ("bs-radius", bs),
        ("ebs-radius", ebs),
        ("sigma-upper", upper),
    ])
}

/// Frequency, over all `N!` orderings, with which the largest conditional
/// variance exceeds its high-probability envelope, minus `delta`. Both the
/// `max_{k<=n} sigma^2_{>,k}` and `max_{n<=k<=N-1} sigma^2_{<,k+1}` forms
/// are checked for every `n` and `delta` in [`DELTAS`].
pub fn envelope_validity(pop: &Population, scale: f64) -> Result<CheckReport> {
    let big = pop.len();
    check_ordered("orderings", big, MAX_MGF_POP)?;
    let (range, sigma) = (pop.range(), pop.std_dev());
    let paths = all_paths(pop)?;
    let count = paths.len() as f64;
    let mut report = CheckReport::new();
    for n in 1..=big {
        for delta in DELTAS {
            let env = scale * variance_envelope_backward(n, big, delta, sigma, range)?;
            let misses = paths
                .iter()
                .filter(|p| (1..=n).map(|k| p.sigma2_gt(k)).fold(f64::NEG_INFINITY, f64::max) > env + 1e-12)
                .count();
            report.record(misses as f64 / count - delta);
            if n < big {
                let env = scale * variance_envelope_forward(n, big, delta, sigma, range)?;
                let misses = paths
                    .iter()
                    .filter(|p| (n..big).map(|k| p.sigma2_lt(k + 1)).fold(f64::NEG_INFINITY, f64::max) > env + 1e-12)
                    .count();
                report.record(misses as f64 / count - delta);
            }
        }
    }
    Ok(report)
}
