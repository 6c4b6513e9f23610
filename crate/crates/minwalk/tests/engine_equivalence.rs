//! The two sampling engines against each other and against the exact
//! distribution. The engines share no step logic: one simulates the reduced
//! single-coin chain, the other the naive two-coin construction, so
//! agreement here is evidence against coding errors in either.

mod common;

use common::params;
use minwalk::model::enumerate_distribution;
use minwalk::simulate::{
    collect_endpoints, endpoint_naive, endpoint_naive_with_cap, endpoint_reduced,
    simulate_trajectory, CounterRng, Engine,
};
use minwalk::stats::{chi_square_gof, chi_square_two_sample};

fn histogram(samples: &[u64], support: usize) -> Vec<u64> {
    let mut counts = vec![0u64; support];
    for &x in samples {
        counts[x as usize] += 1;
    }
    counts
}

#[test]
fn both_engines_match_the_exact_distribution_and_each_other() {
    let n = 12u64;
    let replicas = 30_000u64;
    for pr in [
        params(0.8, 0.2, 0.5),
        params(0.5, 0.5, 0.5),
        params(0.75, 0.0, 0.6),
        params(0.3, 0.6, 0.9),
    ] {
        let expected: Vec<f64> = enumerate_distribution(&pr, n)
            .unwrap()
            .iter()
            .map(|(_, prob)| prob * replicas as f64)
            .collect();
        // Distinct seeds: the engines consume draws differently, so identical
        // seeds would still be dependent samples.
        let reduced =
            collect_endpoints(&pr, n, replicas, 11, 0, Engine::Reduced).unwrap();
        let naive = collect_endpoints(&pr, n, replicas, 2024, 0, Engine::Naive).unwrap();
        let h_reduced = histogram(&reduced, n as usize + 1);
        let h_naive = histogram(&naive, n as usize + 1);

        let gof_reduced = chi_square_gof(&h_reduced, &expected).unwrap();
        let gof_naive = chi_square_gof(&h_naive, &expected).unwrap();
        let two_sample = chi_square_two_sample(&h_reduced, &h_naive).unwrap();
        assert!(
            gof_reduced.p_value > 1e-3,
            "reduced vs exact at {pr:?}: p = {}",
            gof_reduced.p_value
        );
        assert!(
            gof_naive.p_value > 1e-3,
            "naive vs exact at {pr:?}: p = {}",
            gof_naive.p_value
        );
        assert!(
            two_sample.p_value > 1e-3,
            "engines disagree at {pr:?}: p = {}",
            two_sample.p_value
        );
    }
}

#[test]
fn engines_agree_in_distribution_at_moderate_depth() {
    // Past the enumeration-friendly range: two-sample test only.
    let pr = params(0.7, 0.2, 0.5);
    let n = 300u64;
    let replicas = 20_000u64;
    let reduced = collect_endpoints(&pr, n, replicas, 5, 0, Engine::Reduced).unwrap();
    let naive = collect_endpoints(&pr, n, replicas, 17, 0, Engine::Naive).unwrap();
    let h_reduced = histogram(&reduced, n as usize + 1);
    let h_naive = histogram(&naive, n as usize + 1);
    let two_sample = chi_square_two_sample(&h_reduced, &h_naive).unwrap();
    assert!(two_sample.p_value > 1e-3, "p = {}", two_sample.p_value);
}

#[test]
fn collect_endpoints_reproduces_the_scalar_replica_convention() {
    let pr = params(0.8, 0.2, 0.5);
    let (seed, stream, n) = (42u64, 9u64, 200u64);
    let batch = collect_endpoints(&pr, n, 64, seed, stream, Engine::Reduced).unwrap();
    for (r, &x) in batch.iter().enumerate() {
        let rng = CounterRng::replica(seed, stream, r as u64);
        assert_eq!(x, endpoint_reduced(&pr, &rng, n), "replica {r}");
    }
    let batch = collect_endpoints(&pr, n, 64, seed, stream, Engine::Naive).unwrap();
    for (r, &x) in batch.iter().enumerate() {
        let rng = CounterRng::replica(seed, stream, r as u64);
        assert_eq!(x, endpoint_naive(&pr, &rng, n).unwrap(), "replica {r}");
    }
}

#[test]
fn trajectory_endpoint_equals_the_reduced_engine() {
    let pr = params(0.6, 0.2, 0.3);
    for (seed, stream) in [(1u64, 0u64), (7, 3), (2024, 50)] {
        for n in [1u64, 2, 17, 500] {
            let times: Vec<u64> = (1..=n).filter(|t| t % 7 == 1 || *t == n).collect();
            let series = simulate_trajectory(&pr, seed, stream, &times).unwrap();
            let rng = CounterRng::new(seed, stream);
            assert_eq!(
                *series.positions.last().unwrap(),
                endpoint_reduced(&pr, &rng, n)
            );
            // Positions never decrease and only grow by single steps between
            // adjacent times.
            for w in series.positions.windows(2) {
                assert!(w[1] >= w[0]);
            }
        }
    }
}

#[test]
fn naive_engine_respects_its_draw_cap() {
    let pr = params(0.8, 0.2, 0.5);
    let rng = CounterRng::new(0, 0);
    // The naive construction consumes two draw indices per step.
    assert!(endpoint_naive_with_cap(&pr, &rng, 100, 64).is_err());
    assert!(endpoint_naive_with_cap(&pr, &rng, 100, 256).is_ok());
}
