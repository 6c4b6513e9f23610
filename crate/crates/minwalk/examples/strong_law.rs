//! Strong law of large numbers: X_n/n settles on q/(1-alpha).
//!
//! Checks that per-path deviations from the limit shrink across the last
//! four power-of-two checkpoints (up to CLT-scale slack) and that the
//! terminal deviation sits inside the predicted band. A shorter horizon
//! than the default keeps this instant; the law is the same.
//!
//!     cargo run --example strong_law

use minwalk::model::ModelParams;
use minwalk::verify::{verify_slln, VerifyConfig};

fn main() -> minwalk::Result<()> {
    let params = ModelParams::new(0.6, 0.2, 0.5)?;
    let mut config = VerifyConfig::slln_default();
    config.n = 1_000_000;
    config.paths = 16;

    let report = verify_slln(&params, &config)?;
    print!("{}", report.summary());
    println!(
        "\nevery path's X_n/n ended within {:.2e} of q/(1-alpha) = {:.6}",
        report
            .estimates
            .iter()
            .find(|e| e.name == "terminalDeviationMax")
            .map(|e| e.value)
            .unwrap_or(f64::NAN),
        params.q / (1.0 - params.alpha())
    );
    Ok(())
}
