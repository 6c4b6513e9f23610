//! The O(n^2) distribution enumerator against exhaustive 2^n enumeration.

mod common;

use common::{brute_force_distribution, params, pmf_moment};
use minwalk::{enumerate_distribution, enumerate_distribution_with_cap, exact_moment};

fn param_grid() -> Vec<minwalk::ModelParams> {
    vec![
        params(0.5, 0.5, 0.5),
        params(0.8, 0.2, 0.5),
        params(0.3, 0.7, 0.9),
        params(0.75, 0.0, 0.6),
        params(0.0, 0.4, 0.2),
        params(1.0, 0.2, 0.5),  // alpha = 0.8
        params(0.9, 0.1, 1.0),
        params(0.45, 0.55, 0.25),
        params(1.0, 0.0, 0.7),  // alpha = 1: pure repetition after step one
        params(0.2, 0.6, 0.0),  // alpha = -0.4, walk pinned at 0 by s = 0
    ]
}

#[test]
fn dp_matches_exhaustive_enumeration() {
    for pr in param_grid() {
        for n in 1..=12u64 {
            let brute = brute_force_distribution(&pr, n);
            let table = enumerate_distribution(&pr, n).unwrap();
            let dense: Vec<(u64, f64)> = table.iter().collect();
            assert_eq!(dense.len(), brute.len(), "support 0..=n at {pr:?} n={n}");
            for (x, prob) in dense {
                assert!(
                    (prob - brute[x as usize]).abs() <= 1e-12,
                    "pmf mismatch at {pr:?} n={n} x={x}: dp={prob} brute={}",
                    brute[x as usize]
                );
            }
            assert!((table.total_mass() - 1.0).abs() <= 1e-12);
        }
    }
}

#[test]
fn dp_moments_match_exhaustive_enumeration() {
    for pr in param_grid() {
        let n = 10;
        let brute = brute_force_distribution(&pr, n);
        let table = enumerate_distribution(&pr, n).unwrap();
        for order in 1..=4u32 {
            let want = pmf_moment(&brute, order);
            assert!(
                (table.moment(order) - want).abs() <= 1e-11 * want.abs().max(1.0),
                "moment {order} at {pr:?}"
            );
            assert!(
                (exact_moment(&pr, n, order).unwrap() - want).abs()
                    <= 1e-11 * want.abs().max(1.0)
            );
        }
    }
}

#[test]
fn one_step_pmf_is_bernoulli_s_exactly() {
    for s in [0.0, 0.25, 0.5, 0.9, 1.0] {
        let table = enumerate_distribution(&params(0.8, 0.2, s), 1).unwrap();
        let dense: Vec<(u64, f64)> = table.iter().collect();
        assert_eq!(dense, vec![(0, 1.0 - s), (1, s)]);
    }
}

#[test]
fn degenerate_corners_concentrate_all_mass() {
    // s = 0 pins the diagonal walk at the origin forever.
    let table = enumerate_distribution(&params(1.0, 0.0, 0.0), 9).unwrap();
    assert_eq!(table.iter().next().unwrap(), (0, 1.0));
    assert!(table.iter().skip(1).all(|(_, p)| p == 0.0));
    // s = 1, p = 1, q = 1 steps every time.
    let table = enumerate_distribution(&params(1.0, 1.0, 1.0), 9).unwrap();
    assert_eq!(table.iter().last().unwrap(), (9, 1.0));
}

#[test]
fn support_cap_is_enforced() {
    let pr = params(0.8, 0.2, 0.5);
    assert!(enumerate_distribution_with_cap(&pr, 10, 10).is_err());
    assert!(enumerate_distribution_with_cap(&pr, 10, 11).is_ok());
    assert!(enumerate_distribution(&pr, minwalk::DEFAULT_SUPPORT_CAP as u64 + 1).is_err());
}
