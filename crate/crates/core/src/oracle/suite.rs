//! The full verification suite over fixed and random small populations.

use rand::Rng;
use rayon::prelude::*;

use super::enumerate::{check_budget, ENUMERATION_BUDGET};
use super::identities::{check_conditional_variance, check_forward_martingale, check_reverse_martingale};
use super::mgf::{all_paths, supermartingale_excess, MAX_MGF_POP};
use super::{
    envelope_validity, exact_mgf, radius_validity, reduction_violation, tail_validity, CheckReport, ConvexTest,
};
use crate::bounds::{hs_log_mgf_bound, MgfVariant};
use crate::error::{BoundError, Result};
use crate::monte_carlo::{stream_rng, Population};

/// Tolerance for identities computed in floating point.
pub const IDENTITY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteConfig {
    /// Largest random population size, at most 7.
    pub max_pop: usize,
    pub random_populations: usize,
    pub seed: u64,
    /// Multiplies every bound before comparison; 1 for a real run.
    pub bound_scale: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            max_pop: MAX_MGF_POP,
            random_populations: 50,
            seed: 0,
            bound_scale: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteCheck {
    pub name: String,
    pub tolerance: f64,
    pub report: CheckReport,
}

impl SuiteCheck {
    pub fn passed(&self) -> bool {
        self.report.passes(self.tolerance)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub populations: usize,
    pub checks: Vec<SuiteCheck>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(SuiteCheck::passed)
    }
}

/// Hand-picked populations: one-point spikes `{0,...,0,1}`, arithmetic
/// progressions, a constant population and a tied one.
pub fn fixtures(max_pop: usize) -> Vec<Population> {
    let mut out = Vec::new();
    for big in 2..=max_pop {
        let mut spike = vec![0.0; big];
        spike[big - 1] = 1.0;
        out.push(spike);
        out.push((0..big).map(|i| i as f64).collect());
    }
    out.push(vec![0.75; 4.min(max_pop)]);
    if max_pop >= 4 {
        out.push(vec![0.0, 1.0, 1.0, 2.0]);
    }
    out.into_iter().map(|v| Population::new(v).expect("fixture")).collect()
}

/// Random populations of size `2..=max_pop` with values in
/// `{0, 1/8, ..., 2}`; population `i` uses stream `i` of `seed`.
pub fn random_populations(count: usize, max_pop: usize, seed: u64) -> Vec<Population> {
    (0..count as u64)
        .map(|i| {
            let mut rng = stream_rng(seed, i);
            let big = rng.random_range(2..=max_pop);
            let values = (0..big).map(|_| rng.random_range(0..=16u32) as f64 / 8.0).collect();
            Population::new(values).expect("random fixture")
        })
        .collect()
}

fn push(out: &mut Vec<(String, f64, CheckReport)>, name: &str, tolerance: f64, report: CheckReport) {
    out.push((name.to_string(), tolerance, report));
}

fn check_population(pop: &Population, scale: f64) -> Result<Vec<(String, f64, CheckReport)>> {
    let big = pop.len();
    let mut out = Vec::new();
    push(&mut out, "forward-martingale", IDENTITY_TOLERANCE, check_forward_martingale(pop)?);
    push(&mut out, "reverse-martingale", IDENTITY_TOLERANCE, check_reverse_martingale(pop)?);
    push(&mut out, "conditional-variance", IDENTITY_TOLERANCE, check_conditional_variance(pop)?);

    let mut reduction = CheckReport::new();
    for n in 1..=big {
        let tuples = (big as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if check_budget("tuples", tuples, ENUMERATION_BUDGET).is_err() {
            continue;
        }
        for test in ConvexTest::FAMILY {
            reduction.record(reduction_violation(pop, n, test)?);
        }
    }
    push(&mut out, "reduction", IDENTITY_TOLERANCE, reduction);

    let range = pop.range();
    let paths = all_paths(pop)?;
    let mut log_mgf = CheckReport::new();
    let mut supermartingale = CheckReport::new();
    for n in 1..=big {
        for lambda in super::lambda_grid() {
            let value = exact_mgf(pop, n, lambda)?.ln();
            let improved = hs_log_mgf_bound(n, big, lambda, range, MgfVariant::Improved)?;
            log_mgf.record(value - scale * improved);
            if n < big {
                let serfling = hs_log_mgf_bound(n, big, lambda, range, MgfVariant::Serfling)?;
                log_mgf.record(value - scale * serfling);
            }
        }
        if n < big {
            supermartingale.merge(supermartingale_excess(pop, n, &paths));
        }
    }
    push(&mut out, "log-mgf", IDENTITY_TOLERANCE, log_mgf);
    push(&mut out, "supermartingale", IDENTITY_TOLERANCE, supermartingale);

    for (kind, report) in tail_validity(pop, scale)? {
        push(&mut out, &format!("tail:{}", kind.name()), 0.0, report);
    }
    for (name, report) in radius_validity(pop, scale)? {
        push(&mut out, &format!("coverage:{name}"), 0.0, report);
    }
    push(&mut out, "variance-envelope", 0.0, envelope_validity(pop, scale)?);
    Ok(out)
}

/// Runs every check on the fixtures and on `random_populations` random
/// populations, merging per-check reports across populations.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    if !(2..=MAX_MGF_POP).contains(&config.max_pop) {
        return Err(BoundError::Argument {
            name: "max_pop",
            requirement: "between 2 and 7",
            value: config.max_pop as f64,
        });
    }
    if !(config.bound_scale > 0.0) || !config.bound_scale.is_finite() {
        return Err(BoundError::Argument {
            name: "bound_scale",
            requirement: "positive and finite",
            value: config.bound_scale,
        });
    }
    let mut pops = fixtures(config.max_pop);
    pops.extend(random_populations(config.random_populations, config.max_pop, config.seed));
    let per_pop: Vec<Vec<(String, f64, CheckReport)>> = pops
        .par_iter()
        .map(|pop| check_population(pop, config.bound_scale))
        .collect::<Result<_>>()?;

    let mut checks: Vec<SuiteCheck> = Vec::new();
    for (name, tolerance, report) in per_pop.into_iter().flatten() {
        match checks.iter_mut().find(|c| c.name == name) {
            Some(c) => c.report.merge(report),
            None => checks.push(SuiteCheck { name, tolerance, report }),
        }
    }
    Ok(SuiteReport {
        populations: pops.len(),
        checks,
    })
}
