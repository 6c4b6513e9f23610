//! Exact distribution of the walk by dynamic programming.
//!
//! The walk starts with a Bernoulli(s) step and afterwards steps right with
//! probability q + alpha X_n / n, alpha = p - q. Enumeration is exact, so
//! the printed mass sums to 1 and the moments match the closed forms to
//! machine precision.
//!
//!     cargo run --example exact_pmf

use minwalk::closed_form::mean_exact;
use minwalk::model::{enumerate_distribution, ModelParams};

fn main() -> minwalk::Result<()> {
    let params = ModelParams::new(0.8, 0.2, 0.5)?;
    let n = 16;
    let table = enumerate_distribution(&params, n)?;

    println!(
        "walk p={} q={} s={} (alpha={:.2}), n={n}",
        params.p,
        params.q,
        params.s,
        params.alpha()
    );
    println!("{:>4}  {:>12}  histogram", "x", "P[X_n = x]");
    for (x, prob) in table.iter() {
        let bar = "#".repeat((prob * 200.0).round() as usize);
        println!("{x:>4}  {prob:>12.8}  {bar}");
    }

    println!("\ntotal mass      {:.16}", table.total_mass());
    println!("enumerated mean {:.16}", table.mean());
    println!("closed-form     {:.16}", mean_exact(&params, n)?);
    Ok(())
}
