//! Gaussian fluctuations for alpha < 1/2, and the alpha = 1/2 crossover.
//!
//! For q > 0 and alpha < 1/2, (X_n - E X_n)/sqrt(c n) is asymptotically
//! standard normal with c = q(1-p)/((1-alpha)^2 (1-2 alpha)). At
//! alpha = 1/2 the variance picks up a log factor and the normalizer
//! switches to the exact a_n s_n scale. The battery: KS against N(0,1),
//! skewness, excess kurtosis.
//!
//!     cargo run --example central_limit

use minwalk::model::ModelParams;
use minwalk::verify::{verify_clt, VerifyConfig};

fn main() -> minwalk::Result<()> {
    let mut config = VerifyConfig::clt_default();
    config.n = 1 << 13;
    config.replicas = 20_000;

    for (p, q) in [(0.6, 0.4), (0.75, 0.25)] {
        let params = ModelParams::new(p, q, 0.5)?;
        let report = verify_clt(&params, &config)?;
        println!("{}", report.summary());
    }
    Ok(())
}
