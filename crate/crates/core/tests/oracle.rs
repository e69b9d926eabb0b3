use std::time::Instant;

use wor_bounds::monte_carlo::{estimate_exceedance, Population};
use wor_bounds::oracle::*;

fn pop(values: &[f64]) -> Population {
    Population::new(values.to_vec()).unwrap()
}

#[test]
fn default_suite_passes() {
    let start = Instant::now();
    let report = run_suite(&SuiteConfig::default()).unwrap();
    assert!(report.populations >= 50);
    for check in &report.checks {
        assert!(check.passed(), "{check:?}");
        assert!(check.report.cases > 0, "{check:?}");
    }
    assert!(start.elapsed().as_secs() < 60);
}

#[test]
fn exceedance_mass_is_complete_below_the_smallest_deviation() {
    for p in suite::random_populations(20, 6, 3) {
        for n in 1..=p.len() {
            let all = exact_exceedance(&p, n, -p.range() - 1.0).unwrap();
            assert_eq!(all.hits, all.total);
            assert_eq!(exact_mgf(&p, n, 0.0).unwrap(), 1.0);
        }
    }
}

#[test]
fn full_sample_never_deviates() {
    for p in suite::fixtures(6) {
        let e = exact_exceedance(&p, p.len(), 1.0 / 64.0).unwrap();
        assert_eq!(e.hits, 0);
    }
}

#[test]
fn path_invariants_on_every_ordering() {
    let p = pop(&[0.0, 0.125, 1.0, 1.0, 2.0]);
    let big = p.len();
    for order in itertools::Itertools::permutations(0..big, big) {
        let path = PathStats::new(&p, &order).unwrap();
        assert_eq!(path.z(big), 0.0);
        for n in 1..big {
            let lhs = path.z(n);
            let rhs = (big - n) as f64 / n as f64 * path.z_star(n);
            assert!((lhs - rhs).abs() < 1e-12);
        }
    }
}

#[test]
fn monte_carlo_agrees_with_enumeration() {
    let cases = [
        (pop(&[0.0, 1.0]), 1, 0.4),
        (pop(&[1.0, 2.0, 3.0]), 2, 0.5),
        (pop(&[0.0, 0.0, 0.0, 0.5, 2.0, 2.0]), 3, 0.25),
        (pop(&[0.0, 0.0, 0.0, 0.0, 0.0, 1.0]), 2, 0.3),
    ];
    for (i, (p, n, eps)) in cases.iter().enumerate() {
        let exact = exact_exceedance(p, *n, *eps).unwrap().value();
        let est = estimate_exceedance(p, *n, *eps, 100_000, i as u64).unwrap();
        let se = (exact * (1.0 - exact) / 100_000.0).sqrt();
        assert!((est.p_hat - exact).abs() <= 4.0 * se, "case {i}: {} vs {exact}", est.p_hat);
    }
}

#[test]
fn mgf_check_example() {
    let p = pop(&[0.0, 1.0, 2.0, 3.0]);
    let r = check_mgf_bounds(&p, 2).unwrap();
    assert!(r.passes(1e-12));
    let flat = pop(&[1.0; 3]);
    for n in 1..=3 {
        for lambda in lambda_grid() {
            assert_eq!(exact_mgf(&flat, n, lambda).unwrap(), 1.0);
        }
    }
}
