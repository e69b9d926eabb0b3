//! Scale factors and helper functions shared by the bounds.

use super::check_sizes;
use crate::error::{BoundError, Result};

/// Below this magnitude `phi` switches to its Taylor expansion.
const PHI_SERIES_CUTOFF: f64 = 1e-4;

/// `phi(c) = (e^c - 1 - c) / c^2`, extended by continuity with `phi(0) = 1/2`.
///
/// Nondecreasing on the whole real line.
pub fn phi(c: f64) -> f64 {
    if c.abs() < PHI_SERIES_CUTOFF {
        // sum_k c^k / (k+2)!, six terms
        let mut term = 0.5;
        let mut acc = term;
        for k in 1..6 {
            term *= c / (k as f64 + 2.0);
            acc += term;
        }
        acc
    } else {
        (c.exp_m1() - c) / (c * c)
    }
}

/// `zeta(u) = (1 + u) log(1 + u) - u` for `u >= 0`.
pub fn zeta(u: f64) -> Result<f64> {
    if !(u >= 0.0) || u.is_infinite() {
        return Err(BoundError::Argument {
            name: "u",
            requirement: "nonnegative",
            value: u,
        });
    }
    if u < 0.1 {
        // sum_{k>=2} (-1)^k u^k / (k(k-1)); the closed form cancels badly
        let mut power = u * u;
        let mut sum = 0.0;
        for k in 2..20 {
            let term = power / (k * (k - 1)) as f64;
            sum += if k % 2 == 0 { term } else { -term };
            power *= u;
        }
        return Ok(sum);
    }
    Ok((1.0 + u) * u.ln_1p() - u)
}

/// Finite-population factor
///
/// ```text
/// rho_n = 1 - (n-1)/N          if n <= N/2
///       = (1 - n/N)(1 + 1/n)   if n >  N/2
/// ```
///
/// Each branch is evaluated from its exact integer ratio, so the result is
/// the correctly rounded value of the rational `rho_n`. `rho_N = 0`.
pub fn rho(n: usize, pop_size: usize) -> Result<f64> {
    check_sizes(n, pop_size, 1, pop_size)?;
    let (nf, big) = (n as f64, pop_size as f64);
    Ok(if 2 * n <= pop_size {
        (pop_size - n + 1) as f64 / big
    } else {
        ((pop_size - n) * (n + 1)) as f64 / (nf * big)
    })
}

/// Second-order coefficient of the Bernstein–Serfling radius
///
/// ```text
/// kappa_n = 4/3 + sqrt(n(n-1) / (N(N-n+1)))        if n <= N/2
///         = 4/3 + sqrt((N-n-1)(N-n) / ((n+1)N))    if n >  N/2
/// ```
///
/// The first branch is the singularity-free form of `sqrt(f_n / g_{n-1})`.
/// `kappa_1 = kappa_N = 4/3`.
pub fn kappa(n: usize, pop_size: usize) -> Result<f64> {
    check_sizes(n, pop_size, 1, pop_size)?;
    let (nf, big) = (n as f64, pop_size as f64);
    let ratio = if 2 * n <= pop_size {
        nf * (nf - 1.0) / (big * (big - nf + 1.0))
    } else {
        // (N-n-1) is -1 at n = N, where (N-n) = 0 kills the product.
        let rest = (pop_size - n) as f64;
        if rest == 0.0 {
            0.0
        } else {
            (rest - 1.0) * rest / ((nf + 1.0) * big)
        }
    };
    Ok(4.0 / 3.0 + ratio.sqrt())
}

/// Upper bound `n (1 - (n-1)/N)` on `sum_{k=1}^n (N-n)^2 / (N-k)^2`, for
/// `1 <= n <= N-1`.
pub fn serfling_sum_bound(n: usize, pop_size: usize) -> Result<f64> {
    check_sizes(n, pop_size, 1, pop_size.saturating_sub(1))?;
    let nf = n as f64;
    Ok(nf * (pop_size - n + 1) as f64 / pop_size as f64)
}

/// The quantities `f_n = n/N`, `g_n = N/n - 1`, `rho_n` and `kappa_n` for
/// one `(n, N)` pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleFactors {
    pub f: f64,
    pub g: f64,
    pub rho: f64,
    pub kappa: f64,
}

impl ScaleFactors {
    pub fn new(n: usize, pop_size: usize) -> Result<Self> {
        let rho = rho(n, pop_size)?;
        let kappa = kappa(n, pop_size)?;
        let (nf, big) = (n as f64, pop_size as f64);
        Ok(Self {
            f: nf / big,
            g: big / nf - 1.0,
            rho,
            kappa,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::{E, LN_2, SQRT_2};

    fn phi_taylor(c: f64, terms: usize) -> f64 {
        let mut fact = 2.0;
        let mut pow = 1.0;
        let mut acc = 0.0;
        for k in 0..terms {
            acc += pow / fact;
            pow *= c;
            fact *= k as f64 + 3.0;
        }
        acc
    }

    #[test]
    fn phi_values() {
        assert_eq!(phi(0.0), 0.5);
        assert_relative_eq!(phi(1.0), E - 2.0, max_relative = 1e-15);
        assert_relative_eq!(phi(-1.0), 1.0 / E, max_relative = 1e-15);
    }

    #[test]
    fn phi_is_continuous_at_cutoff() {
        for c in [PHI_SERIES_CUTOFF, -PHI_SERIES_CUTOFF] {
            let below = phi(c * (1.0 - 1e-9));
            let above = phi(c * (1.0 + 1e-9));
            assert_relative_eq!(below, above, max_relative = 1e-12);
        }
    }

    #[test]
    fn phi_matches_taylor_near_zero() {
        let mut c = -1e-3;
        while c <= 1e-3 {
            assert!((phi(c) - phi_taylor(c, 12)).abs() <= 1e-12, "c = {c}");
            c += 1e-6;
        }
    }

    #[test]
    fn phi_nondecreasing() {
        let mut prev = phi(-50.0);
        let mut c = -50.0;
        while c <= 50.0 {
            let v = phi(c);
            assert!(v >= prev, "phi decreased at {c}: {prev} -> {v}");
            prev = v;
            c += 1e-3;
        }
    }

    #[test]
    fn zeta_values() {
        assert_eq!(zeta(0.0).unwrap(), 0.0);
        assert_relative_eq!(zeta(1.0).unwrap(), 2.0 * LN_2 - 1.0, max_relative = 1e-15);
        let z2 = zeta(2.0).unwrap();
        assert_relative_eq!(z2, 3.0 * 3f64.ln() - 2.0, max_relative = 1e-15);
        assert!(z2 >= 1.2);
        assert!(zeta(-1e-12).is_err());
        assert!(zeta(f64::NAN).is_err());
        assert_relative_eq!(zeta(1e-3).unwrap(), 4.998_334_166_167e-7, max_relative = 1e-14);
        assert_relative_eq!(zeta(0.0999999).unwrap(), 0.004_841_188_253_743_911, max_relative = 1e-14);
        assert_relative_eq!(zeta(0.1).unwrap(), zeta(0.1 - 1e-15).unwrap(), max_relative = 1e-12);
    }

    #[test]
    fn zeta_dominates_bernstein_form() {
        let mut u: f64 = 1e-8;
        while u <= 1e8 {
            let lower = u * u / (2.0 + 2.0 * u / 3.0);
            let z = zeta(u).unwrap();
            assert!(z >= lower * (1.0 - 1e-12), "u = {u}: {z} < {lower}");
            u *= 1.1;
        }
    }

    #[test]
    fn rho_values() {
        assert_eq!(rho(4, 10).unwrap(), 0.7);
        assert_eq!(rho(10, 10).unwrap(), 0.0);
        assert_relative_eq!(rho(6, 10).unwrap(), 7.0 / 15.0, max_relative = 1e-15);
        assert!(rho(0, 10).is_err());
        assert!(rho(11, 10).is_err());
        assert!(rho(1, 1).is_err());
    }

    #[test]
    fn kappa_values() {
        assert_eq!(kappa(1, 10).unwrap(), 4.0 / 3.0);
        assert_eq!(kappa(10, 10).unwrap(), 4.0 / 3.0);
        // 4/3 + sqrt(12/70), 30-digit evaluation
        assert_relative_eq!(kappa(4, 10).unwrap(), 1.747_372_668_938_745_9, max_relative = 1e-14);
    }

    #[test]
    fn kappa_within_envelope() {
        for big in 2..300 {
            for n in 1..=big {
                let k = kappa(n, big).unwrap();
                assert!((4.0 / 3.0..=4.0 / 3.0 + 1.0 / SQRT_2 + 1e-15).contains(&k), "n={n} N={big}");
            }
        }
    }

    #[test]
    fn kappa_matches_ratio_form_away_from_singularity() {
        for big in 3..100 {
            for n in 2..=big {
                let s = ScaleFactors::new(n, big).unwrap();
                let expected = if 2 * n <= big {
                    let g_prev = big as f64 / (n - 1) as f64 - 1.0;
                    4.0 / 3.0 + (s.f / g_prev).sqrt()
                } else {
                    let g_next = big as f64 / (n + 1) as f64 - 1.0;
                    4.0 / 3.0 + (g_next * (1.0 - s.f)).max(0.0).sqrt()
                };
                assert_relative_eq!(s.kappa, expected, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn serfling_sum_bound_values() {
        assert_relative_eq!(serfling_sum_bound(3, 10).unwrap(), 2.4, max_relative = 1e-15);
        assert_eq!(serfling_sum_bound(1, 17).unwrap(), 1.0);
        assert_eq!(serfling_sum_bound(3, 4).unwrap(), 1.5);
        assert!(serfling_sum_bound(4, 4).is_err());
        assert!(serfling_sum_bound(0, 4).is_err());
    }

    #[test]
    fn scale_factors() {
        let s = ScaleFactors::new(4, 10).unwrap();
        assert_eq!(s.f, 0.4);
        assert_eq!(s.g, 1.5);
        assert_eq!(s.rho, 0.7);
    }
}
