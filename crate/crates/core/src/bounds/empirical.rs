//! Bounds that only need the sample's empirical standard deviation.

use super::{check_delta, check_delta_open, check_nonnegative, rho, ConfidenceRadius};
use crate::error::Result;

/// Second-order constant of the empirical Bernstein–Serfling radius,
/// `7/3 + 3/sqrt(2)`. Dominates every `kappa_n`.
pub const EMPIRICAL_KAPPA: f64 = 7.0 / 3.0 + 3.0 / std::f64::consts::SQRT_2;

/// Upper confidence bound on the population standard deviation from the
/// biased sample estimate `sigma_hat`:
/// `sigma_hat + (b-a)(1 + sqrt(1 + rho_n)) sqrt(log(3/delta) / (2n))`.
pub fn sigma_upper(n: usize, pop_size: usize, delta: f64, sigma_hat: f64, range: f64) -> Result<f64> {
    check_delta_open(delta)?;
    check_nonnegative("sigma_hat", sigma_hat)?;
    check_nonnegative("range", range)?;
    let rho = rho(n, pop_size)?;
    let width = (1.0 + (1.0 + rho).sqrt()) * ((3.0 / delta).ln() / (2.0 * n as f64)).sqrt();
    Ok(sigma_hat + range * width)
}

/// Empirical Bernstein–Serfling radius
/// `sigma_hat sqrt(2 rho_n log(1/delta) / n) + kappa (b-a) log(1/delta) / n`,
/// holding with probability at least `1 - 5 delta`.
pub fn ebs_radius(
    n: usize,
    pop_size: usize,
    delta: f64,
    sigma_hat: f64,
    range: f64,
) -> Result<ConfidenceRadius> {
    check_delta(delta)?;
    check_nonnegative("sigma_hat", sigma_hat)?;
    check_nonnegative("range", range)?;
    let rho = rho(n, pop_size)?;
    let nf = n as f64;
    let log_term = (1.0 / delta).ln();
    let value =
        sigma_hat * (2.0 * rho * log_term / nf).sqrt() + EMPIRICAL_KAPPA * range * log_term / nf;
    Ok(ConfidenceRadius::new(value, 5.0 * delta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn kappa_constant() {
        assert!((EMPIRICAL_KAPPA - 4.454_653_676_892_976).abs() < 1e-14);
        assert!(EMPIRICAL_KAPPA >= 4.0 / 3.0 + 1.0 / std::f64::consts::SQRT_2);
    }

    #[test]
    fn sigma_upper_examples() {
        let delta = 3.0 * (-4f64).exp();
        assert_relative_eq!(sigma_upper(8, 16, delta, 0.5, 1.0).unwrap(), 1.625, max_relative = 1e-14);
        assert_eq!(sigma_upper(8, 16, 0.1, 0.5, 0.0).unwrap(), 0.5);
        assert!(sigma_upper(8, 16, 3.0, 0.5, 1.0).is_err());
        assert!(sigma_upper(8, 16, 1.0, 0.5, 1.0).is_err());
        assert!(sigma_upper(17, 16, 0.1, 0.5, 1.0).is_err());
        assert!(sigma_upper(8, 16, 0.1, -0.5, 1.0).is_err());
    }

    #[test]
    fn radius_examples() {
        assert_eq!(ebs_radius(4, 10, 1.0, 0.5, 1.0).unwrap().value(), 0.0);
        let r = ebs_radius(10, 10, 0.05, 0.7, 2.0).unwrap();
        assert_relative_eq!(r.value(), EMPIRICAL_KAPPA * 2.0 * 20f64.ln() / 10.0, max_relative = 1e-14);
        let r = ebs_radius(4, 10, (-1f64).exp(), 0.5, 1.0).unwrap();
        assert_relative_eq!(r.value(), 1.409_467_408_378_224_8, max_relative = 1e-13);
        assert_relative_eq!(r.confidence_spent(), 5.0 * (-1f64).exp());
        assert!(ebs_radius(4, 10, 0.0, 0.5, 1.0).is_err());
        assert_eq!(ebs_radius(4, 10, 0.2, 0.0, 0.0).unwrap().value(), 0.0);
    }
}
