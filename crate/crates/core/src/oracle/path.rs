//! Statistics along one complete ordering of the population.

use crate::error::{BoundError, Result};
use crate::monte_carlo::Population;

/// Per-step statistics of the ordered draw `X_1, ..., X_N`.
///
/// All accessors use 1-based step indices. With `D_k = sum_{t<=k} (X_t - mu)`
/// and `E_k = sum_{t<=k} ((X_t - mu)^2 - sigma^2)`:
///
/// * `z(k) = D_k / k`, `z_star(k) = D_k / (N - k)` (with `z_star(0) = 0`);
/// * `q(k) = E_k / k`, `q_star(k) = E_k / (N - k)`;
/// * `mu_gt(k)`, `sigma2_gt(k)`: mean of `X_k - mu` and variance of `X_k`
///   given the first `k - 1` draws (the `N - k + 1` values left);
/// * `mu_lt(k)`, `sigma2_lt(k)`: the same given the draws after `k` (the
///   first `k` values as a set).
#[derive(Debug, Clone)]
pub struct PathStats {
    pop_size: usize,
    deviations: Vec<f64>,
    excess: Vec<f64>,
    mu_gt: Vec<f64>,
    sigma2_gt: Vec<f64>,
    mu_lt: Vec<f64>,
    sigma2_lt: Vec<f64>,
}

fn centered_moments(values: impl Iterator<Item = f64> + Clone, mu: f64) -> (f64, f64) {
    let count = values.clone().count() as f64;
    let mean = values.clone().sum::<f64>() / count;
    let var = values.map(|x| (x - mean) * (x - mean)).sum::<f64>() / count;
    (mean - mu, var)
}

impl PathStats {
    /// `order` must be a permutation of `0..N`.
    pub fn new(pop: &Population, order: &[usize]) -> Result<Self> {
        let big = pop.len();
        let mut seen = vec![false; big];
        let is_permutation = order.len() == big
            && order
                .iter()
                .all(|&i| i < big && !std::mem::replace(&mut seen[i], true));
        if !is_permutation {
            return Err(BoundError::Argument {
                name: "order",
                requirement: "a permutation of the population indices",
                value: order.len() as f64,
            });
        }
        let (mu, var) = (pop.mean(), pop.variance());
        let xs: Vec<f64> = order.iter().map(|&i| pop.values()[i]).collect();

        let mut deviations = vec![0.0; big + 1];
        let mut excess = vec![0.0; big + 1];
        for k in 1..=big {
            let d = xs[k - 1] - mu;
            deviations[k] = deviations[k - 1] + d;
            excess[k] = excess[k - 1] + (d * d - var);
        }
        let mut mu_gt = vec![f64::NAN; big + 1];
        let mut sigma2_gt = vec![f64::NAN; big + 1];
        let mut mu_lt = vec![f64::NAN; big + 1];
        let mut sigma2_lt = vec![f64::NAN; big + 1];
        for k in 1..=big {
            (mu_gt[k], sigma2_gt[k]) = centered_moments(xs[k - 1..].iter().copied(), mu);
            (mu_lt[k], sigma2_lt[k]) = centered_moments(xs[..k].iter().copied(), mu);
        }
        // the whole population: exact values
        mu_gt[1] = 0.0;
        mu_lt[big] = 0.0;
        (sigma2_gt[1], sigma2_lt[big]) = (var, var);

        Ok(Self {
            pop_size: big,
            deviations,
            excess,
            mu_gt,
            sigma2_gt,
            mu_lt,
            sigma2_lt,
        })
    }

    pub fn pop_size(&self) -> usize {
        self.pop_size
    }

    /// `sum_{t<=k} (X_t - mu)`.
    pub fn centered_sum(&self, k: usize) -> f64 {
        self.deviations[k]
    }

    pub fn z(&self, k: usize) -> f64 {
        assert!(k >= 1 && k <= self.pop_size, "step {k} out of range");
        if k == self.pop_size {
            return 0.0;
        }
        self.deviations[k] / k as f64
    }

    pub fn z_star(&self, k: usize) -> f64 {
        assert!(k < self.pop_size, "step {k} out of range");
        self.deviations[k] / (self.pop_size - k) as f64
    }

    pub fn q(&self, k: usize) -> f64 {
        assert!(k >= 1 && k <= self.pop_size, "step {k} out of range");
        if k == self.pop_size {
            return 0.0;
        }
        self.excess[k] / k as f64
    }

    pub fn q_star(&self, k: usize) -> f64 {
        assert!(k < self.pop_size, "step {k} out of range");
        self.excess[k] / (self.pop_size - k) as f64
    }

    pub fn mu_gt(&self, k: usize) -> f64 {
        self.mu_gt[k]
    }

    pub fn sigma2_gt(&self, k: usize) -> f64 {
        self.sigma2_gt[k]
    }

    pub fn mu_lt(&self, k: usize) -> f64 {
        self.mu_lt[k]
    }

    pub fn sigma2_lt(&self, k: usize) -> f64 {
        self.sigma2_lt[k]
    }
}
