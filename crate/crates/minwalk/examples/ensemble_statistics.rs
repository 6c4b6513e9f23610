//! Checkpointed Monte Carlo ensemble against the exact mean curve.
//!
//! One pass simulates every replica to the horizon, folding positions into
//! mergeable integer accumulators at each checkpoint. The run is
//! reproducible: the same seed gives the same table on any thread count.
//!
//!     cargo run --example ensemble_statistics

use minwalk::closed_form::mean_exact;
use minwalk::model::ModelParams;
use minwalk::simulate::{run_ensemble_checkpointed, Engine};

fn main() -> minwalk::Result<()> {
    let params = ModelParams::new(0.7, 0.1, 0.3)?;
    let times: Vec<u64> = (4..=14).map(|k| 1u64 << k).collect();
    let replicas = 20_000;
    let stats = run_ensemble_checkpointed(&params, &times, replicas, 7, 0, Engine::Reduced)?;

    println!(
        "p={} q={} s={} (alpha={:.2}), {replicas} replicas, seed 7",
        params.p,
        params.q,
        params.s,
        params.alpha()
    );
    println!(
        "{:>6}  {:>12}  {:>10}  {:>12}  {:>10}",
        "n", "mean", "se", "exact mean", "variance"
    );
    for s in &stats {
        let exact = mean_exact(&params, s.time)?;
        println!(
            "{:>6}  {:>12.4}  {:>10.4}  {:>12.4}  {:>10.1}",
            s.time,
            s.mean(),
            s.se_mean(),
            exact,
            s.variance()
        );
    }
    Ok(())
}
