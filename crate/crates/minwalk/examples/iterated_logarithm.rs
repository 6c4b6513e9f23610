//! Running ratio behind the law of the iterated logarithm.
//!
//! The LIL pins the limsup of |X_t - E X_t| / (sd(X_t) sqrt(2 log log t))
//! at 1, but a limsup over time is invisible at any finite horizon: the
//! running max crosses levels ever more slowly. So this is a diagnostic,
//! never a pass/fail verdict: the ratio should hover near or below 1 and
//! only a 10x sanity bound is checked.
//!
//!     cargo run --example iterated_logarithm

use minwalk::model::ModelParams;
use minwalk::verify::{lil_diagnostic, VerifyConfig};

fn main() -> minwalk::Result<()> {
    let params = ModelParams::new(0.5, 0.5, 0.5)?;
    let mut config = VerifyConfig::lil_default();
    config.n = 1_000_000;
    config.paths = 4;

    let report = lil_diagnostic(&params, &config)?;
    print!("{}", report.summary());
    Ok(())
}
