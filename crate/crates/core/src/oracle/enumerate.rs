//! Exhaustive enumeration helpers over index sets of a tiny population.

use std::collections::BTreeMap;

use crate::error::{BoundError, Result};

/// Largest population handled by ordered enumeration (bitmask width and
/// `N!` budget).
pub const MAX_ORDERED_POP: usize = 8;

/// Case budget for unordered and with-replacement enumeration.
pub const ENUMERATION_BUDGET: u128 = 1_000_000;

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

pub(crate) fn check_budget(what: &'static str, needed: u128, limit: u128) -> Result<()> {
    if needed > limit {
        Err(BoundError::Budget { what, needed, limit })
    } else {
        Ok(())
    }
}

pub(crate) fn check_ordered(what: &'static str, size: usize, max: usize) -> Result<()> {
    if size > max {
        let needed = (1..=size as u128).product();
        let limit = (1..=max as u128).product();
        return Err(BoundError::Budget { what, needed, limit });
    }
    Ok(())
}

/// Calls `f(sequence, remaining)` for every ordered selection of `len`
/// distinct indices out of `0..size`; `remaining` is the bitmask of unused
/// indices.
pub(crate) fn for_each_arrangement(size: usize, len: usize, mut f: impl FnMut(&[usize], u32)) {
    fn recurse(size: usize, len: usize, seq: &mut Vec<usize>, used: u32, f: &mut impl FnMut(&[usize], u32)) {
        if seq.len() == len {
            let all = if size == 32 { u32::MAX } else { (1u32 << size) - 1 };
            f(seq, all & !used);
            return;
        }
        for i in 0..size {
            if used & (1 << i) == 0 {
                seq.push(i);
                recurse(size, len, seq, used | (1 << i), f);
                seq.pop();
            }
        }
    }
    assert!(size <= 16 && len <= size);
    recurse(size, len, &mut Vec::with_capacity(len), 0, &mut f);
}

/// Iterates the set bits of `mask`.
pub(crate) fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask & (1 << i) != 0)
}

/// Law of the sample sum: distinct sums with their multiplicities, out of
/// `total` equally likely outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct SumLaw {
    pub atoms: Vec<(f64, u64)>,
    pub total: u64,
}

impl SumLaw {
    fn from_counts(counts: BTreeMap<u64, u64>) -> Self {
        let atoms: Vec<(f64, u64)> = counts.into_iter().map(|(bits, c)| (f64::from_bits(bits), c)).collect();
        let total = atoms.iter().map(|&(_, c)| c).sum();
        Self { atoms, total }
    }

    pub fn expectation(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.atoms.iter().map(|&(s, c)| c as f64 * f(s)).sum::<f64>() / self.total as f64
    }
}

/// Sum of a uniformly random `n`-subset, by enumerating all `C(N, n)` subsets.
pub(crate) fn without_replacement_law(values: &[f64], n: usize) -> Result<SumLaw> {
    check_budget("unordered subsets", binomial(values.len(), n), ENUMERATION_BUDGET)?;
    let mut counts = BTreeMap::new();
    for subset in itertools::Itertools::combinations(values.iter(), n) {
        let sum: f64 = subset.into_iter().sum();
        *counts.entry(sum.to_bits()).or_insert(0) += 1;
    }
    Ok(SumLaw::from_counts(counts))
}

/// Sum of `n` i.i.d. uniform draws, by enumerating all `N^n` tuples.
pub(crate) fn with_replacement_law(values: &[f64], n: usize) -> Result<SumLaw> {
    let size = values.len();
    let needed = (size as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    check_budget("with-replacement tuples", needed, ENUMERATION_BUDGET)?;
    let mut counts = BTreeMap::new();
    let mut digits = vec![0usize; n];
    loop {
        let sum: f64 = digits.iter().map(|&i| values[i]).sum();
        *counts.entry(sum.to_bits()).or_insert(0) += 1;
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == n {
                return Ok(SumLaw::from_counts(counts));
            }
            digits[pos] += 1;
            if digits[pos] < size {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrangement_counts() {
        for size in 1..=6 {
            for len in 0..=size {
                let mut count = 0u128;
                for_each_arrangement(size, len, |seq, rest| {
                    assert_eq!(seq.len(), len);
                    assert_eq!(rest.count_ones() as usize, size - len);
                    assert!(seq.iter().all(|&i| rest & (1 << i) == 0));
                    count += 1;
                });
                let expected: u128 = (size - len + 1..=size).map(|x| x as u128).product();
                assert_eq!(count, expected);
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(7, 0), 1);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(40, 20), 137_846_528_820);
    }

    #[test]
    fn laws() {
        let w = without_replacement_law(&[0.0, 1.0], 2).unwrap();
        assert_eq!(w.atoms, vec![(1.0, 1)]);
        let r = with_replacement_law(&[0.0, 1.0], 2).unwrap();
        assert_eq!(r.total, 4);
        assert_eq!(r.expectation(|x| x * x), 1.5);
        assert!(with_replacement_law(&[0.0; 10], 7).is_err());
        assert!(without_replacement_law(&[0.0; 40], 20).is_err());
    }
}
