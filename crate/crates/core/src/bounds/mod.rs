//! Closed-form concentration bounds for sampling without replacement.
//!
//! All functions here are pure. Tail bounds return a [`TailProbability`]
//! whose value is clamped to `[0, 1]`; the unclamped exponent is kept for
//! log-domain consumers. Inverted bounds return a [`ConfidenceRadius`]
//! carrying the total probability budget the radius spends.
//!
//! Conventions shared by every function:
//!
//! - a degenerate range `a == b` makes the sample mean exact, so tails are 0
//!   for `eps > 0` and radii are 0;
//! - a tail at `eps == 0` is 1;
//! - a term whose weight is exactly zero contributes zero even when its
//!   cofactor is undefined (for instance `c_0(delta)`).

mod bernstein;
mod empirical;
mod factors;
mod hoeffding;

pub use bernstein::{
    bernstein_tail, bs_gamma2, bs_gamma2_tilde, bs_radius, bs_tail_backward,
    bs_tail_backward_split, bs_tail_forward, bs_tail_forward_split, c_delta,
    variance_envelope_backward, variance_envelope_forward,
};
pub use empirical::{ebs_radius, sigma_upper, EMPIRICAL_KAPPA};
pub use factors::{kappa, phi, rho, serfling_sum_bound, zeta, ScaleFactors};
pub use hoeffding::{
    hoeffding_radius, hoeffding_tail, hs_log_mgf_bound, hs_radius, hs_tail, hs_tail_backward,
    hs_tail_forward, MgfVariant,
};

use crate::error::{BoundError, Result};

/// Relative slack accepted on the Popoviciu bound `sigma^2 <= (b-a)^2 / 4`,
/// so that a variance computed in floating point from a two-point
/// population is not rejected.
const POPOVICIU_SLACK: f64 = 1e-12;

/// Public parameters of a bound: population size `N`, sample size `n`,
/// the range `[a, b]` of the population and, when known, its variance
/// (`N` denominator).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PopulationSummary {
    pop_size: usize,
    sample_size: usize,
    range_low: f64,
    range_high: f64,
    variance: Option<f64>,
}

impl PopulationSummary {
    pub fn new(pop_size: usize, sample_size: usize, range_low: f64, range_high: f64) -> Result<Self> {
        check_sizes(sample_size, pop_size, 1, pop_size)?;
        if !range_low.is_finite() || !range_high.is_finite() || range_low > range_high {
            return Err(BoundError::Range {
                low: range_low,
                high: range_high,
            });
        }
        Ok(Self {
            pop_size,
            sample_size,
            range_low,
            range_high,
            variance: None,
        })
    }

    /// Attaches the population variance, checked against `[0, (b-a)^2/4]`.
    pub fn with_variance(mut self, variance: f64) -> Result<Self> {
        let max = self.range() * self.range() / 4.0;
        if !variance.is_finite() || variance < 0.0 || variance > max * (1.0 + POPOVICIU_SLACK) {
            return Err(BoundError::Variance { value: variance, max });
        }
        self.variance = Some(variance);
        Ok(self)
    }

    /// Same population, different sample size.
    pub fn with_sample_size(mut self, sample_size: usize) -> Result<Self> {
        check_sizes(sample_size, self.pop_size, 1, self.pop_size)?;
        self.sample_size = sample_size;
        Ok(self)
    }

    pub fn pop_size(&self) -> usize {
        self.pop_size
    }

    pub fn sample_size(&self) -> usize {
        self.sample_size
    }

    pub fn range_low(&self) -> f64 {
        self.range_low
    }

    pub fn range_high(&self) -> f64 {
        self.range_high
    }

    /// `b - a`.
    pub fn range(&self) -> f64 {
        self.range_high - self.range_low
    }

    pub fn variance(&self) -> Option<f64> {
        self.variance
    }

    /// Population standard deviation, when the variance is known.
    pub fn sigma(&self) -> Option<f64> {
        self.variance.map(f64::sqrt)
    }

    fn require_variance(&self) -> Result<f64> {
        self.variance.ok_or(BoundError::MissingVariance)
    }

    /// Bounds stated for a sample of size `n < N`.
    fn require_proper_sample(&self) -> Result<()> {
        check_sizes(self.sample_size, self.pop_size, 1, self.pop_size - 1)
    }
}

/// Result of evaluating a tail bound at a deviation `eps`.
///
/// `value = min(1, exp(raw_exponent) + additive_slack)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailProbability {
    value: f64,
    raw_exponent: f64,
    additive_slack: f64,
}

impl TailProbability {
    pub(crate) fn new(raw_exponent: f64, additive_slack: f64) -> Self {
        let value = (raw_exponent.exp() + additive_slack).clamp(0.0, 1.0);
        Self {
            value,
            raw_exponent,
            additive_slack,
        }
    }

    /// Zero probability: degenerate range with a positive deviation.
    pub(crate) fn zero() -> Self {
        Self::new(f64::NEG_INFINITY, 0.0)
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn raw_exponent(&self) -> f64 {
        self.raw_exponent
    }

    pub fn additive_slack(&self) -> f64 {
        self.additive_slack
    }
}

/// Result of inverting a bound at confidence level `delta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfidenceRadius {
    value: f64,
    confidence_spent: f64,
}

impl ConfidenceRadius {
    pub(crate) fn new(value: f64, confidence_spent: f64) -> Self {
        debug_assert!(value >= 0.0, "negative radius {value}");
        Self {
            value,
            confidence_spent,
        }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    /// Total failure probability of the statement `mean - mu <= value`.
    pub fn confidence_spent(&self) -> f64 {
        self.confidence_spent
    }
}

pub(crate) fn check_sizes(n: usize, pop_size: usize, min: usize, max: usize) -> Result<()> {
    if pop_size < 2 {
        return Err(BoundError::PopulationTooSmall(pop_size));
    }
    if n < min || n > max {
        return Err(BoundError::SampleSize {
            n,
            pop_size,
            min,
            max,
        });
    }
    Ok(())
}

pub(crate) fn check_epsilon(eps: f64) -> Result<()> {
    if eps.is_finite() && eps >= 0.0 {
        Ok(())
    } else {
        Err(BoundError::Epsilon(eps))
    }
}

/// `delta` in `(0, 1]`.
pub(crate) fn check_delta(delta: f64) -> Result<()> {
    if delta > 0.0 && delta <= 1.0 {
        Ok(())
    } else {
        Err(BoundError::Delta {
            value: delta,
            interval: "(0, 1]",
        })
    }
}

/// `delta` in `(0, 1)`.
pub(crate) fn check_delta_open(delta: f64) -> Result<()> {
    if delta > 0.0 && delta < 1.0 {
        Ok(())
    } else {
        Err(BoundError::Delta {
            value: delta,
            interval: "(0, 1)",
        })
    }
}

pub(crate) fn check_nonnegative(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(BoundError::Argument {
            name,
            requirement: "nonnegative",
            value,
        })
    }
}

/// Tail from a Chernoff exponent of the form `-num / den` with the shared
/// degenerate-case conventions.
pub(crate) fn chernoff_tail(eps: f64, range: f64, exponent: impl FnOnce() -> f64, slack: f64) -> TailProbability {
    if eps == 0.0 {
        TailProbability::new(0.0, slack)
    } else if range == 0.0 {
        TailProbability::zero()
    } else {
        TailProbability::new(exponent(), slack)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_rejects_bad_inputs() {
        assert_eq!(
            PopulationSummary::new(1, 1, 0.0, 1.0),
            Err(BoundError::PopulationTooSmall(1))
        );
        assert!(PopulationSummary::new(10, 0, 0.0, 1.0).is_err());
        assert!(PopulationSummary::new(10, 11, 0.0, 1.0).is_err());
        assert!(PopulationSummary::new(10, 5, 1.0, 0.0).is_err());
        assert!(PopulationSummary::new(10, 5, 0.0, f64::NAN).is_err());
        let s = PopulationSummary::new(10, 5, 0.0, 1.0).unwrap();
        assert!(s.with_variance(0.26).is_err());
        assert!(s.with_variance(-0.1).is_err());
        assert_eq!(s.with_variance(0.25).unwrap().sigma(), Some(0.5));
    }

    #[test]
    fn tail_probability_clamps() {
        let t = TailProbability::new(0.0, 0.3);
        assert_eq!(t.value(), 1.0);
        assert_eq!(t.raw_exponent(), 0.0);
        assert_eq!(t.additive_slack(), 0.3);
        assert_eq!(TailProbability::zero().value(), 0.0);
        assert_eq!(TailProbability::new(f64::INFINITY, 0.0).value(), 1.0);
    }

    #[test]
    fn delta_domains() {
        assert!(check_delta(1.0).is_ok());
        assert!(check_delta(0.0).is_err());
        assert!(check_delta(f64::NAN).is_err());
        assert!(check_delta_open(1.0).is_err());
        assert!(check_delta_open(0.5).is_ok());
    }
}
