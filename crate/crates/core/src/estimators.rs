//! Sample mean and the biased empirical variance, in batch and streaming
//! form.

use crate::error::{BoundError, Result};

/// Running prefix statistics of a path: count, sum and sum of squares.
///
/// The variance uses the `n` denominator (no Bessel correction).
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PrefixStats {
    count: usize,
    sum: f64,
    sum_sq: f64,
}

impl PrefixStats {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the statistics with `x` appended.
    #[must_use]
    pub fn push(self, x: f64) -> Self {
        Self {
            count: self.count + 1,
            sum: self.sum + x,
            sum_sq: self.sum_sq + x * x,
        }
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn sum(&self) -> f64 {
        self.sum
    }

    pub fn sum_sq(&self) -> f64 {
        self.sum_sq
    }

    /// `None` before the first push.
    pub fn mean(&self) -> Option<f64> {
        (self.count > 0).then(|| self.sum / self.count as f64)
    }

    /// Biased variance `sum_sq / k - mean^2`, clamped at zero.
    pub fn variance(&self) -> Option<f64> {
        let mean = self.mean()?;
        Some((self.sum_sq / self.count as f64 - mean * mean).max(0.0))
    }

    pub fn std_dev(&self) -> Option<f64> {
        self.variance().map(f64::sqrt)
    }
}

impl FromIterator<f64> for PrefixStats {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        iter.into_iter().fold(Self::new(), Self::push)
    }
}

pub fn mean(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(BoundError::Empty);
    }
    Ok(values.iter().sum::<f64>() / values.len() as f64)
}

/// `(1/n) sum (x_i - mean)^2`, computed in two passes.
pub fn empirical_variance(values: &[f64]) -> Result<f64> {
    let mean = mean(values)?;
    Ok(values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / values.len() as f64)
}

/// Splits the second moment around the true mean `mu` into squared bias and
/// empirical variance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentDecomposition {
    /// `(1/n) sum (x_i - mu)^2`
    pub vn: f64,
    /// `(mean - mu)^2`
    pub bias_sq: f64,
    /// biased empirical variance
    pub sigma_hat_sq: f64,
}

pub fn decompose_vn(values: &[f64], mu: f64) -> Result<MomentDecomposition> {
    let mean = mean(values)?;
    let n = values.len() as f64;
    Ok(MomentDecomposition {
        vn: values.iter().map(|x| (x - mu).powi(2)).sum::<f64>() / n,
        bias_sq: (mean - mu).powi(2),
        sigma_hat_sq: values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n,
    })
}
