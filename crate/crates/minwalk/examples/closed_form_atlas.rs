//! Tour of the closed forms: mean, step law, variance scaling, limits.
//!
//! Everything here is analytic; nothing is simulated. The memory
//! coefficient a_n = prod_{k<n} (1 + alpha/k) controls how the first step
//! echoes through the mean, and the variance regime is decided by alpha
//! alone (with q = 0 its own family).
//!
//!     cargo run --example closed_form_atlas

use minwalk::closed_form::{
    a_coeff, gamma_sum, limit_moments, mean_asymptotic, mean_exact, pn_exact, scaling_law,
    sn_squared_exact,
};
use minwalk::model::ModelParams;

fn main() -> minwalk::Result<()> {
    let params = ModelParams::new(0.8, 0.2, 0.9)?;
    let alpha = params.alpha();
    println!("p={} q={} s={}  alpha={alpha:.2}", params.p, params.q, params.s);

    println!("\nmemory coefficient and mean (exact vs large-n form):");
    println!("{:>8}  {:>10}  {:>12}  {:>12}  {:>8}", "n", "a_n", "E X_n", "asymptotic", "p_n");
    for n in [2u64, 16, 256, 4096, 65536] {
        println!(
            "{n:>8}  {:>10.4}  {:>12.4}  {:>12.4}  {:>8.5}",
            a_coeff(n, alpha)?,
            mean_exact(&params, n)?,
            mean_asymptotic(&params, n)?,
            pn_exact(&params, n)?
        );
    }

    println!("\nvariance scaling across regimes (s = 0.5):");
    for (p, q) in [(0.3, 0.3), (0.75, 0.25), (0.9, 0.1), (0.3, 0.0), (0.8, 0.0)] {
        let pr = ModelParams::new(p, q, 0.5)?;
        let law = scaling_law(&pr)?;
        println!(
            "  p={p:<4} q={q:<4} alpha={:>5.2}  {:?}: Var ~ {} {}",
            pr.alpha(),
            law.regime,
            law.variance_constant
                .map(|c| format!("{c:.4} *"))
                .unwrap_or_else(|| "c *".into()),
            law.growth
        );
    }

    // The martingale normalizer: Var(X_n) / (a_n^2 s_n^2) -> 1.
    let n = 65536;
    println!(
        "\nnormalizer at n = {n}: a_n^2 s_n^2 = {:.2}",
        a_coeff(n, alpha)?.powi(2) * sn_squared_exact(&params, n)?
    );

    // Gamma-ratio sums close the q = 0 moment forms.
    println!(
        "gamma_sum(1.6, 0.8, 1000) = {:.12} (sum of Gamma(k+1.6)/Gamma(k+0.8))",
        gamma_sum(1.6, 0.8, 1000)?
    );

    // q = 0, p > 1/2: X_n/a_n converges to a non-normal limit.
    let lm = limit_moments(0.75, 0.5)?;
    println!(
        "\nq = 0, p = 0.75, s = 0.5 limit of X_n/a_n - s: var {:.4}, skew {:.4}, excess kurtosis {:.4}",
        lm.m2, lm.skewness, lm.excess_kurtosis
    );
    Ok(())
}
