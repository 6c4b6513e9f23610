//! Direct test of the conditional step law at a single time step.
//!
//! At step j the walk moves with probability q + alpha X_{j-1}/(j-1).
//! Binning observed transitions by the entering position and comparing
//! step frequencies against that formula gives position-resolved
//! residuals with exact Bernoulli standard errors; any mismatch in the
//! memory kernel shows up as a large |z| in some bin. A deliberately
//! wrong law is shown flagged.
//!
//!     cargo run --example step_law_residuals

use minwalk::model::ModelParams;
use minwalk::simulate::collect_transitions;
use minwalk::stats::martingale_check;

fn print_check(label: &str, check: &minwalk::stats::MartingaleCheck) {
    println!("{label}: worst |z| = {:.2}, flagged bins = {}", check.worst_abs_z, check.flagged);
    println!("  {:>11}  {:>7}  {:>13}  {:>9}  {:>6}", "x range", "count", "mean residual", "se", "z");
    for bin in &check.bins {
        println!(
            "  {:>4} ..= {:>3}  {:>7}  {:>13.6}  {:>9.6}  {:>6.2}",
            bin.x_lo, bin.x_hi, bin.count, bin.mean_residual, bin.se, bin.z
        );
    }
}

fn main() -> minwalk::Result<()> {
    let params = ModelParams::new(0.7, 0.2, 0.5)?;
    let j = 64;
    let transitions = collect_transitions(&params, j, 40_000, 7, 0)?;

    let good = martingale_check(&params, j, &transitions, 6)?;
    print_check("true step law", &good);

    // Same data scored against a wrong memory strength: residuals tilt.
    let wrong = ModelParams::new(0.9, 0.2, 0.5)?;
    let bad = martingale_check(&wrong, j, &transitions, 6)?;
    println!();
    print_check("wrong law (p = 0.9)", &bad);
    Ok(())
}
