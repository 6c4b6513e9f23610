//! Variance-growth phase portrait: measured exponents vs predictions.
//!
//! Each grid point gets an ensemble, a log-log fit of Var(X_t) over the
//! upper checkpoints, and a comparison against the predicted exponent:
//! 1 in the diffusive phase, 2 alpha when alpha > 1/2, 2p on the q = 0
//! ray. Small scale here; the acceptance run uses 2^10..2^20.
//!
//!     cargo run --example phase_portrait

use minwalk::model::ModelParams;
use minwalk::verify::{phase_diagram, VerifyConfig};

fn main() -> minwalk::Result<()> {
    let grid = [
        ModelParams::new(0.3, 0.3, 0.5)?,
        ModelParams::new(0.75, 0.25, 0.5)?,
        ModelParams::new(0.9, 0.1, 0.5)?,
        ModelParams::new(0.8, 0.0, 0.5)?,
    ];
    let mut config = VerifyConfig::regime_default();
    config.n = 1 << 14;
    config.replicas = 5_000;
    config.checkpoints = Some((8..=14).map(|k| 1u64 << k).collect());

    let diagram = phase_diagram(&grid, &config)?;
    println!(
        "{:>5} {:>5} {:>6}  {:<14} {:>9} {:>9}  agree",
        "p", "q", "alpha", "regime", "predicted", "measured"
    );
    for pt in &diagram.points {
        println!(
            "{:>5} {:>5} {:>6.2}  {:<14} {:>9} {:>9.3}  {}",
            pt.params.p,
            pt.params.q,
            pt.params.alpha(),
            format!("{:?}", pt.law.regime),
            pt.law
                .variance_exponent
                .map(|e| format!("{e:.3}"))
                .unwrap_or_else(|| "-".into()),
            pt.measured_exponent,
            match pt.agree {
                Some(true) => "yes",
                Some(false) => "NO",
                None => "n/a",
            }
        );
    }
    Ok(())
}
