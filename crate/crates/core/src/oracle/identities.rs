//! Martingale, conditional-variance and reduction identities, checked by
//! exhaustive enumeration.

use super::enumerate::{self, bits, check_ordered, for_each_arrangement, MAX_ORDERED_POP};
use super::{check_sample, CheckReport};
use crate::error::Result;
use crate::monte_carlo::Population;

fn prefix_deviation(values: &[f64], seq: &[usize], mu: f64) -> f64 {
    seq.iter().map(|&i| values[i] - mu).sum()
}

fn average_over(values: &[f64], mask: u32, f: impl Fn(f64) -> f64) -> f64 {
    let count = mask.count_ones() as f64;
    bits(mask).map(|i| f(values[i])).sum::<f64>() / count
}

/// Largest `|E[Z*_k | X_1..X_{k-1}] - Z*_{k-1}|` over every history and
/// every `1 <= k <= N-1`.
pub fn check_forward_martingale(pop: &Population) -> Result<CheckReport> {
    let big = pop.len();
    check_ordered("ordered prefixes", big, MAX_ORDERED_POP)?;
    let (values, mu) = (pop.values(), pop.mean());
    let mut report = CheckReport::new();
    for k in 1..big {
        let denom = (big - k) as f64;
        for_each_arrangement(big, k - 1, |history, rest| {
            let d = prefix_deviation(values, history, mu);
            let previous = d / (denom + 1.0);
            let expected = average_over(values, rest, |x| (d + (x - mu)) / denom);
            report.record((expected - previous).abs());
        });
    }
    Ok(report)
}

/// Largest `|E[Z_k | X_{k+2}..X_N] - Z_{k+1}|` over every suffix and every
/// `1 <= k <= N-1`.
pub fn check_reverse_martingale(pop: &Population) -> Result<CheckReport> {
    let big = pop.len();
    check_ordered("ordered suffixes", big, MAX_ORDERED_POP)?;
    let (values, mu) = (pop.values(), pop.mean());
    let mut report = CheckReport::new();
    for k in 1..big {
        let kf = k as f64;
        // the suffix fixes the set of the first k+1 draws
        for_each_arrangement(big, big - k - 1, |_suffix, head| {
            let d: f64 = bits(head).map(|i| values[i] - mu).sum();
            let next = d / (kf + 1.0);
            let expected = average_over(values, head, |x| (d - (x - mu)) / kf);
            report.record((expected - next).abs());
        });
    }
    Ok(report)
}

/// Checks `E[(X_k - mu)^2 | X_1..X_{k-1}] = sigma^2 - Q*_{k-1}` for every
/// history and `E[(X_k - mu)^2 | X_{k+1}..X_N] = sigma^2 + Q_k` for every
/// suffix, `1 <= k <= N`.
pub fn check_conditional_variance(pop: &Population) -> Result<CheckReport> {
    let big = pop.len();
    check_ordered("ordered prefixes", big, MAX_ORDERED_POP)?;
    let (values, mu, var) = (pop.values(), pop.mean(), pop.variance());
    let sq = |x: f64| (x - mu) * (x - mu);
    let mut report = CheckReport::new();
    for k in 1..=big {
        for_each_arrangement(big, k - 1, |history, rest| {
            let excess: f64 = history.iter().map(|&i| sq(values[i]) - var).sum();
            let q_star = excess / (big - k + 1) as f64;
            let lhs = average_over(values, rest, sq);
            report.record((lhs - (var - q_star)).abs());
        });
        for_each_arrangement(big, big - k, |_suffix, head| {
            let excess: f64 = bits(head).map(|i| sq(values[i]) - var).sum();
            let q = excess / k as f64;
            let lhs = average_over(values, head, sq);
            report.record((lhs - (var + q)).abs());
        });
    }
    Ok(report)
}

/// Convex test functions applied to the sample sum `x`; `center` is `n mu`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConvexTest {
    Square,
    Abs,
    CenteredAbs,
    Exp(f64),
}

impl ConvexTest {
    pub const FAMILY: [ConvexTest; 7] = [
        ConvexTest::Square,
        ConvexTest::Abs,
        ConvexTest::CenteredAbs,
        ConvexTest::Exp(1.0),
        ConvexTest::Exp(-1.0),
        ConvexTest::Exp(0.5),
        ConvexTest::Exp(-0.5),
    ];

    pub fn eval(&self, x: f64, center: f64) -> f64 {
        match *self {
            ConvexTest::Square => x * x,
            ConvexTest::Abs => x.abs(),
            ConvexTest::CenteredAbs => (x - center).abs(),
            ConvexTest::Exp(s) => (s * x).exp(),
        }
    }
}

impl std::fmt::Display for ConvexTest {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConvexTest::Square => f.write_str("x^2"),
            ConvexTest::Abs => f.write_str("|x|"),
            ConvexTest::CenteredAbs => f.write_str("|x - n mu|"),
            ConvexTest::Exp(s) => write!(f, "exp({s} x)"),
        }
    }
}

/// `(E f(sum without replacement), E f(sum with replacement))` for a sample
/// of size `n`.
pub fn reduction_expectations(pop: &Population, n: usize, f: impl Fn(f64) -> f64) -> Result<(f64, f64)> {
    check_sample(pop, n)?;
    let without = enumerate::without_replacement_law(pop.values(), n)?;
    let with = enumerate::with_replacement_law(pop.values(), n)?;
    Ok((without.expectation(&f), with.expectation(&f)))
}

/// Relative excess of the without-replacement expectation over the
/// with-replacement one; positive means the reduction fails.
pub fn reduction_violation(pop: &Population, n: usize, test: ConvexTest) -> Result<f64> {
    let center = n as f64 * pop.mean();
    let (without, with) = reduction_expectations(pop, n, |x| test.eval(x, center))?;
    Ok((without - with) / with.abs().max(1.0))
}

/// Whether `E f(sum without replacement) <= E f(sum with replacement)`
/// holds, up to a relative rounding allowance of `1e-12`.
pub fn check_reduction(pop: &Population, n: usize, test: ConvexTest) -> Result<bool> {
    Ok(reduction_violation(pop, n, test)? <= 1e-12)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pop(values: &[f64]) -> Population {
        Population::new(values.to_vec()).unwrap()
    }

    #[test]
    fn martingales_on_small_fixtures() {
        for values in [&[0.0, 1.0, 2.0][..], &[0.0, 0.0, 1.0], &[0.0, 1.0, 1.0, 2.0]] {
            let p = pop(values);
            assert!(check_forward_martingale(&p).unwrap().passes(1e-12));
            assert!(check_reverse_martingale(&p).unwrap().passes(1e-12));
            assert!(check_conditional_variance(&p).unwrap().passes(1e-12));
        }
        let flat = pop(&[1.5; 4]);
        assert_eq!(check_forward_martingale(&flat).unwrap().max_violation, 0.0);
        assert_eq!(check_reverse_martingale(&flat).unwrap().max_violation, 0.0);
        assert_eq!(check_conditional_variance(&flat).unwrap().max_violation, 0.0);
    }

    #[test]
    fn case_counts() {
        let p = pop(&[0.0, 1.0, 2.0]);
        // histories of length 0 and 1
        assert_eq!(check_forward_martingale(&p).unwrap().cases, 1 + 3);
        // suffixes of length 1 and 0
        assert_eq!(check_reverse_martingale(&p).unwrap().cases, 3 + 1);
        assert_eq!(check_conditional_variance(&p).unwrap().cases, 2 * (1 + 3 + 6));
    }

    #[test]
    fn ordered_budget() {
        assert!(check_forward_martingale(&pop(&[0.0; 9])).is_err());
        assert!(check_forward_martingale(&pop(&[0.0; 8])).is_ok());
    }

    #[test]
    fn reduction_examples() {
        let two = pop(&[0.0, 1.0]);
        assert_eq!(reduction_expectations(&two, 2, |x| x * x).unwrap(), (1.0, 1.5));
        assert!(check_reduction(&two, 2, ConvexTest::Square).unwrap());
        let p = pop(&[0.0, 0.25, 1.0, 2.0]);
        let (a, b) = reduction_expectations(&p, 3, |x| x).unwrap();
        assert!((a - b).abs() < 1e-15);
        let flat = pop(&[0.75; 3]);
        for test in ConvexTest::FAMILY {
            assert!(reduction_violation(&flat, 2, test).unwrap().abs() < 1e-15);
            assert!(check_reduction(&p, 2, test).unwrap());
        }
        assert!(reduction_expectations(&pop(&[0.0; 10]), 7, |x| x).is_err());
    }
}
