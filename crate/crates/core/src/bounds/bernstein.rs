//! Variance-based (Bernstein-type) bounds.

use super::{
    check_delta, check_delta_open, check_epsilon, check_nonnegative, check_sizes, chernoff_tail,
    kappa, rho, ConfidenceRadius, PopulationSummary, TailProbability,
};
use crate::error::Result;

/// Bernstein's bound `exp(-n eps^2 / (2 sigma^2 + (2/3)(b-a) eps))`.
pub fn bernstein_tail(s: &PopulationSummary, eps: f64) -> Result<TailProbability> {
    let variance = s.require_variance()?;
    check_epsilon(eps)?;
    let (n, range) = (s.sample_size() as f64, s.range());
    Ok(chernoff_tail(
        eps,
        range,
        || -n * eps * eps / (2.0 * variance + 2.0 / 3.0 * range * eps),
        0.0,
    ))
}

/// `c_n(delta) = sigma (b-a) sqrt(2 log(1/delta) / n)`.
pub fn c_delta(n: usize, delta: f64, sigma: f64, range: f64) -> Result<f64> {
    if n == 0 {
        return Err(crate::BoundError::Argument {
            name: "n",
            requirement: "at least 1",
            value: 0.0,
        });
    }
    check_delta(delta)?;
    check_nonnegative("sigma", sigma)?;
    check_nonnegative("range", range)?;
    Ok(sigma * range * (2.0 * (1.0 / delta).ln() / n as f64).sqrt())
}

/// `weight * c_m(delta)`, zero when the weight is zero whatever `m`.
fn weighted_c(weight: f64, m: usize, delta: f64, sigma: f64, range: f64) -> Result<f64> {
    if weight == 0.0 {
        Ok(0.0)
    } else {
        Ok(weight * c_delta(m, delta, sigma, range)?)
    }
}

/// Variance proxy of the backward Bernstein–Serfling tail:
/// `(1 - f_{n-1}) sigma^2 + f_{n-1} c_{n-1}(delta)`.
pub fn bs_gamma2(s: &PopulationSummary, delta: f64) -> Result<f64> {
    let variance = s.require_variance()?;
    check_delta(delta)?;
    let (n, big) = (s.sample_size(), s.pop_size() as f64);
    let f_prev = (n - 1) as f64 / big;
    let sigma = variance.sqrt();
    Ok((1.0 - f_prev) * variance + weighted_c(f_prev, n.max(2) - 1, delta, sigma, s.range())?)
}

/// Variance proxy of the forward Bernstein–Serfling tail:
/// `(1 - f_n)((n+1)/n sigma^2 + (N-n-1)/n c_{N-n-1}(delta))`, for `n <= N-1`.
pub fn bs_gamma2_tilde(s: &PopulationSummary, delta: f64) -> Result<f64> {
    let variance = s.require_variance()?;
    s.require_proper_sample()?;
    check_delta(delta)?;
    let (n, big) = (s.sample_size(), s.pop_size());
    let nf = n as f64;
    let rest = big - n - 1;
    let weight = rest as f64 / nf;
    let sigma = variance.sqrt();
    let inner = (nf + 1.0) / nf * variance + weighted_c(weight, rest.max(1), delta, sigma, s.range())?;
    Ok((1.0 - nf / big as f64) * inner)
}

fn bs_tail(s: &PopulationSummary, eps: f64, gamma2: f64, slack: f64) -> TailProbability {
    let (n, range) = (s.sample_size() as f64, s.range());
    chernoff_tail(
        eps,
        range,
        || -(n * eps * eps / 2.0) / (gamma2 + 2.0 / 3.0 * range * eps),
        slack,
    )
}

/// Backward Bernstein–Serfling tail with a single `delta` used both as the
/// additive slack and inside the variance envelope.
pub fn bs_tail_backward(s: &PopulationSummary, eps: f64, delta: f64) -> Result<TailProbability> {
    bs_tail_backward_split(s, eps, delta, delta)
}

/// Backward Bernstein–Serfling tail
/// `exp(-(n eps^2/2) / (gamma^2 + (2/3)(b-a) eps)) + delta_slack`, with
/// `gamma^2` built from `delta_envelope`. Requires `n <= N-1`.
pub fn bs_tail_backward_split(
    s: &PopulationSummary,
    eps: f64,
    delta_slack: f64,
    delta_envelope: f64,
) -> Result<TailProbability> {
    s.require_proper_sample()?;
    check_epsilon(eps)?;
    check_delta(delta_slack)?;
    let gamma2 = bs_gamma2(s, delta_envelope)?;
    Ok(bs_tail(s, eps, gamma2, delta_slack))
}

/// Forward Bernstein–Serfling tail with a single `delta`.
pub fn bs_tail_forward(s: &PopulationSummary, eps: f64, delta: f64) -> Result<TailProbability> {
    bs_tail_forward_split(s, eps, delta, delta)
}

/// Forward Bernstein–Serfling tail, built on `gamma~^2`. Requires `n <= N-1`.
pub fn bs_tail_forward_split(
    s: &PopulationSummary,
    eps: f64,
    delta_slack: f64,
    delta_envelope: f64,
) -> Result<TailProbability> {
    s.require_proper_sample()?;
    check_epsilon(eps)?;
    check_delta(delta_slack)?;
    let gamma2 = bs_gamma2_tilde(s, delta_envelope)?;
    Ok(bs_tail(s, eps, gamma2, delta_slack))
}

/// Bernstein–Serfling radius
/// `sigma sqrt(2 rho_n log(1/delta) / n) + kappa_n (b-a) log(1/delta) / n`,
/// holding with probability at least `1 - 2 delta`.
pub fn bs_radius(s: &PopulationSummary, delta: f64) -> Result<ConfidenceRadius> {
    let variance = s.require_variance()?;
    check_delta(delta)?;
    let (n, big) = (s.sample_size(), s.pop_size());
    let (rho, kappa) = (rho(n, big)?, kappa(n, big)?);
    let log_term = (1.0 / delta).ln();
    let nf = n as f64;
    let value =
        variance.sqrt() * (2.0 * rho * log_term / nf).sqrt() + kappa * s.range() * log_term / nf;
    Ok(ConfidenceRadius::new(value, 2.0 * delta))
}

/// High-probability bound on `max_{1<=k<=n} sigma^2_{>,k}`:
/// `sigma^2 + sigma (b-a) (n-1)/(N-n+1) sqrt(2 log(1/delta) / (n-1))`.
pub fn variance_envelope_backward(
    n: usize,
    pop_size: usize,
    delta: f64,
    sigma: f64,
    range: f64,
) -> Result<f64> {
    check_sizes(n, pop_size, 1, pop_size)?;
    check_delta_open(delta)?;
    check_nonnegative("sigma", sigma)?;
    check_nonnegative("range", range)?;
    let weight = (n - 1) as f64 / (pop_size - n + 1) as f64;
    Ok(sigma * sigma + weighted_c(weight, n.max(2) - 1, delta, sigma, range)?)
}

/// High-probability bound on `max_{n<=k<=N-1} sigma^2_{<,k+1}`:
/// `sigma^2 + sigma (b-a) (N-n-1)/(n+1) sqrt(2 log(1/delta) / (N-n-1))`.
pub fn variance_envelope_forward(
    n: usize,
    pop_size: usize,
    delta: f64,
    sigma: f64,
    range: f64,
) -> Result<f64> {
    check_sizes(n, pop_size, 1, pop_size.saturating_sub(1))?;
    check_delta_open(delta)?;
    check_nonnegative("sigma", sigma)?;
    check_nonnegative("range", range)?;
    let rest = pop_size - n - 1;
    let weight = rest as f64 / (n + 1) as f64;
    Ok(sigma * sigma + weighted_c(weight, rest.max(1), delta, sigma, range)?)
}
