//! Range-based (Hoeffding-type) bounds.

use super::{
    check_delta, check_epsilon, check_nonnegative, check_sizes, chernoff_tail, rho,
    ConfidenceRadius, PopulationSummary, TailProbability,
};
use crate::error::{BoundError, Result};

/// Hoeffding's bound `exp(-2 n eps^2 / (b-a)^2)`. Valid without replacement
/// through the reduction to sampling with replacement.
pub fn hoeffding_tail(s: &PopulationSummary, eps: f64) -> Result<TailProbability> {
    check_epsilon(eps)?;
    let (n, range) = (s.sample_size() as f64, s.range());
    Ok(chernoff_tail(eps, range, || -2.0 * n * eps * eps / (range * range), 0.0))
}

/// Hoeffding's bound inverted at `delta`: `(b-a) sqrt(log(1/delta) / (2n))`.
pub fn hoeffding_radius(s: &PopulationSummary, delta: f64) -> Result<ConfidenceRadius> {
    check_delta(delta)?;
    let n = s.sample_size() as f64;
    let value = s.range() * ((1.0 / delta).ln() / (2.0 * n)).sqrt();
    Ok(ConfidenceRadius::new(value, delta))
}

/// Which upper bound on `log E exp(lambda n Z_n)` to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MgfVariant {
    /// `(b-a)^2/8 lambda^2 n (1 - (n-1)/N)`, for `n <= N-1`.
    Serfling,
    /// `(b-a)^2/8 lambda^2 (n+1)(1 - n/N)`, for `n <= N`.
    Improved,
}

pub fn hs_log_mgf_bound(
    n: usize,
    pop_size: usize,
    lambda: f64,
    range: f64,
    variant: MgfVariant,
) -> Result<f64> {
    if !(lambda > 0.0) || lambda.is_infinite() {
        return Err(BoundError::Argument {
            name: "lambda",
            requirement: "positive",
            value: lambda,
        });
    }
    check_nonnegative("range", range)?;
    let (nf, big) = (n as f64, pop_size as f64);
    let scale = range * range / 8.0 * lambda * lambda;
    match variant {
        MgfVariant::Serfling => {
            check_sizes(n, pop_size, 1, pop_size.saturating_sub(1))?;
            Ok(scale * nf * (pop_size - n + 1) as f64 / big)
        }
        MgfVariant::Improved => {
            check_sizes(n, pop_size, 1, pop_size)?;
            Ok(scale * (nf + 1.0) * (pop_size - n) as f64 / big)
        }
    }
}

/// Maximal bound over `n <= k <= N-1` of the running means:
/// `exp(-2 n eps^2 / ((1 - n/N)(1 + 1/n)(b-a)^2))`.
pub fn hs_tail_forward(s: &PopulationSummary, eps: f64) -> Result<TailProbability> {
    s.require_proper_sample()?;
    check_epsilon(eps)?;
    let (n, big, range) = (s.sample_size() as f64, s.pop_size() as f64, s.range());
    let factor = (1.0 - n / big) * (1.0 + 1.0 / n);
    Ok(chernoff_tail(
        eps,
        range,
        || -2.0 * n * eps * eps / (factor * range * range),
        0.0,
    ))
}

/// Maximal bound over `1 <= k <= n` of the `N-k`-normalised partial sums:
/// `exp(-2 n eps^2 / ((1 - (n-1)/N)(b-a)^2))`.
pub fn hs_tail_backward(s: &PopulationSummary, eps: f64) -> Result<TailProbability> {
    s.require_proper_sample()?;
    check_epsilon(eps)?;
    let (n, big, range) = (s.sample_size() as f64, s.pop_size() as f64, s.range());
    let factor = 1.0 - (n - 1.0) / big;
    Ok(chernoff_tail(
        eps,
        range,
        || -2.0 * n * eps * eps / (factor * range * range),
        0.0,
    ))
}

/// The better of [`hs_tail_forward`] and [`hs_tail_backward`] for the event
/// `mean - mu >= eps`, i.e. `exp(-2 n eps^2 / (rho_n (b-a)^2))`.
///
/// Accepts `n = N`, where `rho_N = 0` and the tail is 0 for `eps > 0`.
pub fn hs_tail(s: &PopulationSummary, eps: f64) -> Result<TailProbability> {
    check_epsilon(eps)?;
    let rho = rho(s.sample_size(), s.pop_size())?;
    let (n, range) = (s.sample_size() as f64, s.range());
    if eps > 0.0 && rho == 0.0 {
        return Ok(TailProbability::zero());
    }
    Ok(chernoff_tail(
        eps,
        range,
        || -2.0 * n * eps * eps / (rho * range * range),
        0.0,
    ))
}

/// Hoeffding–Serfling radius `(b-a) sqrt(rho_n log(1/delta) / (2n))`,
/// holding with probability at least `1 - delta`, including at `n = N`.
pub fn hs_radius(s: &PopulationSummary, delta: f64) -> Result<ConfidenceRadius> {
    check_delta(delta)?;
    let rho = rho(s.sample_size(), s.pop_size())?;
    let n = s.sample_size() as f64;
    let value = s.range() * (rho * (1.0 / delta).ln() / (2.0 * n)).sqrt();
    Ok(ConfidenceRadius::new(value, delta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn summary(big: usize, n: usize, range: f64) -> PopulationSummary {
        PopulationSummary::new(big, n, 0.0, range).unwrap()
    }

    #[test]
    fn hoeffding_examples() {
        let s = summary(100, 8, 1.0);
        assert_relative_eq!(
            hoeffding_tail(&s, 0.25).unwrap().value(),
            0.367_879_441_171_442_32,
            max_relative = 1e-14
        );
        assert_eq!(hoeffding_tail(&s, 0.0).unwrap().value(), 1.0);
        let flat = PopulationSummary::new(100, 8, 3.0, 3.0).unwrap();
        assert_eq!(hoeffding_tail(&flat, 0.1).unwrap().value(), 0.0);
        assert_eq!(hoeffding_tail(&flat, 0.0).unwrap().value(), 1.0);
        assert!(hoeffding_tail(&s, -0.1).is_err());
    }

    #[test]
    fn mgf_bound_examples() {
        let serf = hs_log_mgf_bound(4, 10, 1.0, 1.0, MgfVariant::Serfling).unwrap();
        assert_relative_eq!(serf, 0.35, max_relative = 1e-15);
        let imp = hs_log_mgf_bound(4, 10, 1.0, 1.0, MgfVariant::Improved).unwrap();
        assert_relative_eq!(imp, 0.375, max_relative = 1e-15);
        assert_eq!(hs_log_mgf_bound(10, 10, 3.0, 2.0, MgfVariant::Improved).unwrap(), 0.0);
        assert!(hs_log_mgf_bound(10, 10, 1.0, 1.0, MgfVariant::Serfling).is_err());
        assert!(hs_log_mgf_bound(4, 10, 0.0, 1.0, MgfVariant::Improved).is_err());
        assert!(hs_log_mgf_bound(4, 10, 1.0, -1.0, MgfVariant::Improved).is_err());
    }

    #[test]
    fn improved_mgf_bound_wins_past_half() {
        for big in 2..200usize {
            for n in 1..big {
                let serf = hs_log_mgf_bound(n, big, 1.0, 1.0, MgfVariant::Serfling).unwrap();
                let imp = hs_log_mgf_bound(n, big, 1.0, 1.0, MgfVariant::Improved).unwrap();
                if 2 * n > big {
                    assert!(imp <= serf, "n={n} N={big}");
                }
            }
        }
    }

    #[test]
    fn forward_examples() {
        let t = hs_tail_forward(&summary(10, 5, 1.0), 0.5).unwrap();
        assert_relative_eq!(t.value(), 0.015_503_853_599_009_319, max_relative = 1e-13);
        assert_eq!(hs_tail_forward(&summary(10, 5, 1.0), 0.0).unwrap().value(), 1.0);
        let t = hs_tail_forward(&summary(10, 9, 1.0), 0.3).unwrap();
        assert_relative_eq!(t.value(), 4.655_715_715_783_087e-7, max_relative = 1e-12);
        assert!(hs_tail_forward(&summary(10, 10, 1.0), 0.3).is_err());
    }

    #[test]
    fn backward_examples() {
        let t = hs_tail_backward(&summary(10, 4, 1.0), 0.5).unwrap();
        assert_relative_eq!(t.value(), 0.057_432_619_267_617_350, max_relative = 1e-13);
        assert_eq!(hs_tail_backward(&summary(10, 4, 1.0), 0.0).unwrap().value(), 1.0);
        let t = hs_tail_backward(&summary(10, 1, 1.0), 1.0).unwrap();
        assert_relative_eq!(t.value(), 0.135_335_283_236_612_69, max_relative = 1e-14);
        assert!(hs_tail_backward(&summary(10, 10, 1.0), 0.3).is_err());
    }

    #[test]
    fn combined_tail_is_min_of_branches() {
        for n in 1..20 {
            let s = summary(20, n, 2.0);
            let best = hs_tail(&s, 0.3).unwrap().value();
            let fwd = hs_tail_forward(&s, 0.3).unwrap().value();
            let bwd = hs_tail_backward(&s, 0.3).unwrap().value();
            assert_relative_eq!(best, fwd.min(bwd), max_relative = 1e-12);
        }
        let full = summary(20, 20, 2.0);
        assert_eq!(hs_tail(&full, 0.3).unwrap().value(), 0.0);
        assert_eq!(hs_tail(&full, 0.0).unwrap().value(), 1.0);
    }

    #[test]
    fn radius_examples() {
        assert_eq!(hs_radius(&summary(100, 100, 1.0), 0.05).unwrap().value(), 0.0);
        assert_eq!(hs_radius(&summary(100, 7, 1.0), 1.0).unwrap().value(), 0.0);
        let r = hs_radius(&summary(10_000, 5000, 1.0), 0.05).unwrap();
        assert_relative_eq!(r.value(), 0.012_239_957_965_631_871, max_relative = 1e-13);
        assert_eq!(r.confidence_spent(), 0.05);
        let flat = PopulationSummary::new(100, 7, 2.0, 2.0).unwrap();
        assert_eq!(hs_radius(&flat, 0.05).unwrap().value(), 0.0);
        assert!(hs_radius(&summary(100, 7, 1.0), 0.0).is_err());
        assert!(hs_radius(&summary(100, 7, 1.0), 1.5).is_err());
    }

    #[test]
    fn serfling_radius_never_worse_than_hoeffding() {
        for big in [2usize, 3, 10, 57, 200] {
            for n in 1..=big {
                for delta in [1.0, 0.5, 0.05, 1e-6] {
                    let s = summary(big, n, 1.7);
                    let hs = hs_radius(&s, delta).unwrap().value();
                    let h = hoeffding_radius(&s, delta).unwrap().value();
                    assert!(hs <= h, "n={n} N={big} delta={delta}");
                }
            }
        }
    }
}
