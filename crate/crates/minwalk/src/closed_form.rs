//! Closed-form quantities for the walk: memory coefficients, exact and
//! asymptotic means, step-marginal probabilities, gamma-ratio sums, exact
//! superdiffusive moments, limit-law moments, martingale variance sums,
//! scaling classification, and iterated-logarithm constants.
//!
//! Everything here is deterministic arithmetic; the simulation side treats
//! these values as targets. All gamma ratios go through log-gamma
//! differences evaluated in difference form (see `gamma`), never through
//! raw `Gamma` calls that overflow, and results carry ~1e-13 relative error
//! or better unless a contract states otherwise.

mod gamma;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ModelParams, REGIME_EPS};
use crate::numeric::CompensatedSum;

use gamma::{ln_gamma, ln_gamma_ratio};

/// Width of the guard window around the pole of `gamma_sum`.
pub const GAMMA_SUM_POLE_EPS: f64 = 1e-9;

/// Memory coefficient a_n = Gamma(n + alpha) / (Gamma(n) Gamma(1 + alpha)),
/// the product of (1 + alpha/j) over j < n. a_1 = 1 exactly; alpha = 0 gives
/// exactly 1 for every n.
///
/// Accepts any finite `alpha > -1` (the moment identities use it with
/// alpha up to 4). `UnsupportedAlpha` otherwise; `OutOfRange` for n = 0.
pub fn a_coeff(n: u64, alpha: f64) -> Result<f64> {
    if !(alpha > -1.0) || !alpha.is_finite() {
        return Err(Error::UnsupportedAlpha(format!(
            "a_coeff requires alpha > -1, got {alpha}"
        )));
    }
    if n == 0 {
        return Err(Error::out_of_range("n", "n >= 1 required"));
    }
    if n == 1 || alpha == 0.0 {
        return Ok(1.0);
    }
    Ok((ln_gamma_ratio(n as f64, alpha) - ln_gamma(1.0 + alpha)).exp())
}

/// a_n for alpha in [-1, 1] including the alpha = -1 endpoint, where the
/// product hits the factor (1 + alpha/1) = 0 and every a_n with n >= 2 is 0.
/// Loops the defining product, so cost is O(n); callers on hot paths with
/// alpha > -1 should prefer `a_coeff`.
fn a_coeff_with_endpoint(n: u64, alpha: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::out_of_range("n", "n >= 1 required"));
    }
    if alpha > -1.0 {
        return a_coeff(n, alpha);
    }
    if alpha < -1.0 || !alpha.is_finite() {
        return Err(Error::UnsupportedAlpha(format!(
            "memory coefficients require alpha >= -1, got {alpha}"
        )));
    }
    Ok(if n == 1 { 1.0 } else { 0.0 })
}

/// Exact mean E[X_n] = (q/(1-alpha)) n + (s - q/(1-alpha)) a_n for alpha < 1.
/// At alpha = -1 the fixed-point form is still exact and is evaluated with
/// the endpoint coefficient. `DegenerateAlpha` at alpha = 1 (snapped).
pub fn mean_exact(params: &ModelParams, n: u64) -> Result<f64> {
    params.validate()?;
    if n == 0 {
        return Err(Error::out_of_range("n", "n >= 1 required"));
    }
    let alpha = params.alpha();
    if alpha > 1.0 - REGIME_EPS {
        return Err(Error::DegenerateAlpha(
            "mean closed form requires alpha < 1; at alpha = 1 the walk is binary: X_n = n with probability s, else 0".into(),
        ));
    }
    let mu = params.q / (1.0 - alpha);
    let an = a_coeff_with_endpoint(n, alpha)?;
    Ok(mu * n as f64 + (params.s - mu) * an)
}

/// Leading-order mean (q/(1-alpha)) n + (s - q/(1-alpha)) n^alpha / Gamma(1+alpha)
/// for alpha strictly inside (-1, 1). With q = 0 this is s n^p / Gamma(1+p).
pub fn mean_asymptotic(params: &ModelParams, n: u64) -> Result<f64> {
    params.validate()?;
    if n == 0 {
        return Err(Error::out_of_range("n", "n >= 1 required"));
    }
    let alpha = params.alpha();
    if alpha > 1.0 - REGIME_EPS {
        return Err(Error::DegenerateAlpha(
            "mean asymptote requires alpha < 1".into(),
        ));
    }
    if alpha < -1.0 + REGIME_EPS {
        return Err(Error::UnsupportedAlpha(
            "mean asymptote requires alpha > -1 (Gamma(1 + alpha) pole at -1)".into(),
        ));
    }
    let mu = params.q / (1.0 - alpha);
    let nf = n as f64;
    let an_asym = (alpha * nf.ln() - ln_gamma(1.0 + alpha)).exp();
    Ok(mu * nf + (params.s - mu) * an_asym)
}

/// Marginal probability that step n is a move:
/// p_n = q/(1-alpha) + alpha (a_{n-1}/(n-1)) (s - q/(1-alpha)), n >= 2.
/// p_2 reduces to q + alpha s. `DegenerateAlpha` at alpha = 1.
pub fn pn_exact(params: &ModelParams, n: u64) -> Result<f64> {
    params.validate()?;
    if n < 2 {
        return Err(Error::out_of_range(
            "n",
            "marginal step law needs n >= 2; step 1 is Bernoulli(s)",
        ));
    }
    let alpha = params.alpha();
    if alpha > 1.0 - REGIME_EPS {
        return Err(Error::DegenerateAlpha(
            "marginal step law closed form requires alpha < 1".into(),
        ));
    }
    let mu = params.q / (1.0 - alpha);
    let a_prev = a_coeff_with_endpoint(n - 1, alpha)?;
    Ok(mu + alpha * (a_prev / (n - 1) as f64) * (params.s - mu))
}

/// Sum of gamma ratios: sum_{k=1}^{n} Gamma(k + a) / Gamma(k + b) for
/// a, b >= 0, in the two-term closed form
/// (Gamma(1+a)/Gamma(b) - Gamma(n+a+1)/Gamma(n+b)) / (b - a - 1).
/// The b = 0 boundary uses 1/Gamma(0) = 0. `SingularCase` inside the pole
/// window |b - (a + 1)| < 1e-9, where the sum telescopes to digamma-type
/// terms instead.
pub fn gamma_sum(a: f64, b: f64, n: u64) -> Result<f64> {
    if !(a >= 0.0) || !a.is_finite() {
        return Err(Error::out_of_range("a", format!("a >= 0 required, got {a}")));
    }
    if !(b >= 0.0) || !b.is_finite() {
        return Err(Error::out_of_range("b", format!("b >= 0 required, got {b}")));
    }
    if n == 0 {
        return Err(Error::out_of_range("n", "n >= 1 required"));
    }
    let denom = b - a - 1.0;
    if denom.abs() < GAMMA_SUM_POLE_EPS {
        return Err(Error::SingularCase(format!(
            "b = a + 1 is a pole of the closed form (a = {a}, b = {b})"
        )));
    }
    let head = if b == 0.0 {
        0.0
    } else {
        (ln_gamma(1.0 + a) - ln_gamma(b)).exp()
    };
    let tail = ln_gamma_ratio(n as f64 + b, a + 1.0 - b).exp();
    Ok((head - tail) / denom)
}

/// Exact second moment of X_n for q = 0:
/// E[X_n^2] = s (2 A(n, 2p) - A(n, p)) with A(n, c) = Gamma(n+c)/(Gamma(n)Gamma(1+c)).
/// The combination is factored so that at n = 1 every A is exactly 1 and the
/// result collapses to s bit-exactly.
pub fn moment2_q0(p: f64, s: f64, n: u64) -> Result<f64> {
    check_q0_args(p, s, n)?;
    let a1 = a_coeff(n, p)?;
    let a2 = a_coeff(n, 2.0 * p)?;
    Ok(s * (2.0 * a2 - a1))
}

/// Exact third moment for q = 0: E[X_n^3] = s (6 A(n,3p) - 6 A(n,2p) + A(n,p)).
pub fn moment3_q0(p: f64, s: f64, n: u64) -> Result<f64> {
    check_q0_args(p, s, n)?;
    let a1 = a_coeff(n, p)?;
    let a2 = a_coeff(n, 2.0 * p)?;
    let a3 = a_coeff(n, 3.0 * p)?;
    Ok(s * ((6.0 * a3 - 6.0 * a2) + a1))
}

/// Exact fourth moment for q = 0:
/// E[X_n^4] = s (24 A(n,4p) - 36 A(n,3p) + 14 A(n,2p) - A(n,p)).
pub fn moment4_q0(p: f64, s: f64, n: u64) -> Result<f64> {
    check_q0_args(p, s, n)?;
    let a1 = a_coeff(n, p)?;
    let a2 = a_coeff(n, 2.0 * p)?;
    let a3 = a_coeff(n, 3.0 * p)?;
    let a4 = a_coeff(n, 4.0 * p)?;
    Ok(s * (((24.0 * a4 - 36.0 * a3) + 14.0 * a2) - a1))
}

/// Leading term of E[X_n^k] for q = 0: k! s n^{kp} / Gamma(1 + kp).
pub fn moment2_q0_asymptotic(p: f64, s: f64, n: u64) -> Result<f64> {
    check_q0_args(p, s, n)?;
    Ok(moment_q0_asymptotic(2, p, s, n))
}

pub fn moment3_q0_asymptotic(p: f64, s: f64, n: u64) -> Result<f64> {
    check_q0_args(p, s, n)?;
    Ok(moment_q0_asymptotic(3, p, s, n))
}

pub fn moment4_q0_asymptotic(p: f64, s: f64, n: u64) -> Result<f64> {
    check_q0_args(p, s, n)?;
    Ok(moment_q0_asymptotic(4, p, s, n))
}

fn moment_q0_asymptotic(k: u32, p: f64, s: f64, n: u64) -> f64 {
    let kf = k as f64;
    let factorial: f64 = (1..=k).map(|i| i as f64).product();
    factorial * s * (kf * p * (n as f64).ln() - ln_gamma(1.0 + kf * p)).exp()
}

fn check_q0_args(p: f64, s: f64, n: u64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::out_of_range("p", format!("p in [0, 1] required, got {p}")));
    }
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::out_of_range("s", format!("s in [0, 1] required, got {s}")));
    }
    if n == 0 {
        return Err(Error::out_of_range("n", "n >= 1 required"));
    }
    Ok(())
}

/// Centered moments of the superdiffusive limit variable
/// M = lim X_n / a_n - s for q = 0, 1/2 < p < 1, 0 < s <= 1.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct LimitMoments {
    /// E[M] = 0 (the normalizer subtracts the exact mean scale).
    pub m1: f64,
    /// E[M^2] = 2 s Gamma(1+p)^2 / Gamma(1+2p) - s^2.
    pub m2: f64,
    /// E[M^3].
    pub m3: f64,
    /// E[M^4].
    pub m4: f64,
    /// m3 / m2^{3/2}; nonzero skew is the non-normality witness.
    pub skewness: f64,
    /// m4 / m2^2 - 3.
    pub excess_kurtosis: f64,
}

/// Moments of the limit variable for the frozen-memory regime. Requires
/// q = 0 hypotheses: 1/2 < p < 1 and 0 < s <= 1.
pub fn limit_moments(p: f64, s: f64) -> Result<LimitMoments> {
    if !(p > 0.5 && p < 1.0) {
        return Err(Error::out_of_range(
            "p",
            format!("limit moments need 1/2 < p < 1, got {p}"),
        ));
    }
    if !(s > 0.0 && s <= 1.0) {
        return Err(Error::out_of_range(
            "s",
            format!("limit moments need 0 < s <= 1, got {s}"),
        ));
    }
    let lg = ln_gamma(1.0 + p);
    let e2 = (2.0 * lg - ln_gamma(1.0 + 2.0 * p)).exp();
    let e3 = (3.0 * lg - ln_gamma(1.0 + 3.0 * p)).exp();
    let e4 = (4.0 * lg - ln_gamma(1.0 + 4.0 * p)).exp();
    let m2 = 2.0 * s * e2 - s * s;
    let m3 = 6.0 * s * e3 - 6.0 * s * s * e2 + 2.0 * s * s * s;
    let m4 = 24.0 * s * e4 - 24.0 * s * s * e3 + 12.0 * s * s * s * e2 - 3.0 * s * s * s * s;
    Ok(LimitMoments {
        m1: 0.0,
        m2,
        m3,
        m4,
        skewness: m3 / m2.powf(1.5),
        excess_kurtosis: m4 / (m2 * m2) - 3.0,
    })
}

/// Conditional-variance sum of the normalized martingale:
/// s_n^2 = sum_{j=1}^{n} p_j (1 - p_j) / a_j^2 with p_1 = s.
///
/// Exact for any alpha in (-1, 1); compensated summation, O(n). Meaningful
/// as a CLT normalizer only for q > 0, but computable for q = 0 as a
/// diagnostic.
pub fn sn_squared_exact(params: &ModelParams, n: u64) -> Result<f64> {
    params.validate()?;
    if n == 0 {
        return Err(Error::out_of_range("n", "n >= 1 required"));
    }
    let alpha = params.alpha();
    if !(alpha > -1.0) {
        return Err(Error::UnsupportedAlpha(
            "martingale variance sum requires alpha > -1 (a_n vanishes at -1)".into(),
        ));
    }
    if alpha > 1.0 - REGIME_EPS {
        return Err(Error::DegenerateAlpha(
            "martingale variance sum requires alpha < 1".into(),
        ));
    }
    let mu = params.q / (1.0 - alpha);
    let mut acc = CompensatedSum::new();
    acc.add(params.s * (1.0 - params.s)); // j = 1: p_1 = s, a_1 = 1
    let mut a = 1.0f64; // a_j, advanced incrementally
    for j in 2..=n {
        let jm = (j - 1) as f64;
        let pj = mu + alpha * (a / jm) * (params.s - mu);
        a *= 1.0 + alpha / jm;
        acc.add(pj * (1.0 - pj) / (a * a));
    }
    Ok(acc.value())
}

/// Leading-order s_n^2 for q > 0:
/// alpha < 1/2: (q(1-p)/(1-alpha)^2) Gamma(1+alpha)^2 n^{1-2alpha} / (1-2alpha);
/// alpha = 1/2: 4 q (1-p) Gamma(3/2)^2 ln n.
pub fn sn_squared_asymptotic(params: &ModelParams, n: u64) -> Result<f64> {
    params.validate()?;
    if n == 0 {
        return Err(Error::out_of_range("n", "n >= 1 required"));
    }
    let alpha = params.alpha_snapped();
    if alpha <= -1.0 + REGIME_EPS {
        return Err(Error::UnsupportedAlpha(
            "variance asymptote requires alpha > -1".into(),
        ));
    }
    if alpha > 0.5 {
        return Err(Error::HypothesisViolation(
            "alpha <= 1/2 required: the martingale variance sum converges for alpha > 1/2".into(),
        ));
    }
    let nf = n as f64;
    let lead = params.q * (1.0 - params.p) / ((1.0 - alpha) * (1.0 - alpha));
    let g = (2.0 * ln_gamma(1.0 + alpha)).exp();
    if alpha == 0.5 {
        Ok(4.0 * params.q * (1.0 - params.p) * g * nf.ln())
    } else {
        Ok(lead * g * (nf.powf(1.0 - 2.0 * alpha)) / (1.0 - 2.0 * alpha))
    }
}

/// Fluctuation regime of the variance of X_n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// alpha = 1: binary walk X_n = n eta_1, variance n^2 s(1-s).
    Degenerate,
    /// q = 0, p < 1/2: variance grows slower than n; no settled exponent.
    Subdiffusive,
    /// Var ~ const n: q > 0 with alpha < 1/2 (Gaussian limit), or the
    /// q = 0, p = 1/2 boundary where the limit law itself is unresolved.
    Diffusive,
    /// q > 0, alpha = 1/2: Var ~ const n log n, Gaussian limit.
    Marginal,
    /// alpha > 1/2 (or q = 0, p > 1/2): Var ~ const n^{2 alpha}.
    Superdiffusive,
}

/// Predicted growth of Var(X_n) and the limit behavior.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScalingLaw {
    pub regime: Regime,
    /// e such that Var(X_n) ~ variance_constant * n^e (up to the log factor
    /// named in `growth`), when known.
    pub variance_exponent: Option<f64>,
    /// Coefficient in front of the growth function, when known.
    pub variance_constant: Option<f64>,
    /// Human-readable growth law, e.g. "n", "n log n", "n^{2p}".
    pub growth: String,
}

/// Classifies (p, q, s) into its variance-scaling regime with the known
/// constants. Never errors for valid parameters.
pub fn scaling_law(params: &ModelParams) -> Result<ScalingLaw> {
    params.validate()?;
    let alpha = params.alpha_snapped();
    let (p, q, s) = (params.p, params.q, params.s);
    if alpha == 1.0 {
        // X_n = n eta_1: variance n^2 s(1-s).
        return Ok(ScalingLaw {
            regime: Regime::Degenerate,
            variance_exponent: Some(2.0),
            variance_constant: Some(s * (1.0 - s)),
            growth: "n^2 (binary walk)".into(),
        });
    }
    if q == 0.0 {
        if p > 0.5 + REGIME_EPS {
            // Var ~ (2s/Gamma(1+2p) - s^2/Gamma(1+p)^2) n^{2p}.
            let c = 2.0 * s * (-ln_gamma(1.0 + 2.0 * p)).exp()
                - s * s * (-2.0 * ln_gamma(1.0 + p)).exp();
            return Ok(ScalingLaw {
                regime: Regime::Superdiffusive,
                variance_exponent: Some(2.0 * p),
                variance_constant: Some(c),
                growth: "n^{2p}".into(),
            });
        }
        if (p - 0.5).abs() <= REGIME_EPS {
            // Var ~ (2s - 4s^2/pi) n from the exact moments; the limit law
            // itself is unresolved.
            return Ok(ScalingLaw {
                regime: Regime::Diffusive,
                variance_exponent: Some(1.0),
                variance_constant: Some(2.0 * s - 4.0 * s * s / std::f64::consts::PI),
                growth: "n (limit law open)".into(),
            });
        }
        return Ok(ScalingLaw {
            regime: Regime::Subdiffusive,
            variance_exponent: None,
            variance_constant: None,
            growth: "slower than n (exponent unresolved)".into(),
        });
    }
    if alpha < 0.5 {
        let c = q * (1.0 - p) / ((1.0 - alpha) * (1.0 - alpha) * (1.0 - 2.0 * alpha));
        Ok(ScalingLaw {
            regime: Regime::Diffusive,
            variance_exponent: Some(1.0),
            variance_constant: Some(c),
            growth: "n".into(),
        })
    } else if alpha == 0.5 {
        Ok(ScalingLaw {
            regime: Regime::Marginal,
            variance_exponent: None,
            variance_constant: Some(4.0 * q * (1.0 - p)),
            growth: "n log n".into(),
        })
    } else {
        // q > 0, alpha > 1/2: the martingale variance converges, so
        // Var ~ const n^{2 alpha}, but the constant has no closed form here.
        Ok(ScalingLaw {
            regime: Regime::Superdiffusive,
            variance_exponent: Some(2.0 * alpha),
            variance_constant: None,
            growth: "n^{2 alpha}".into(),
        })
    }
}

/// Iterated-logarithm constant: the almost-sure limsup of
/// |X_n - (q/(1-alpha)) n| / sqrt(2 n log log n)            (alpha < 1/2)
/// |X_n - 2 q n| / sqrt(2 n log n log log log n)            (alpha = 1/2).
/// Requires q > 0, p < 1, alpha <= 1/2.
pub fn lil_constant(params: &ModelParams) -> Result<f64> {
    params.validate()?;
    let alpha = params.alpha_snapped();
    if params.q <= 0.0 {
        return Err(Error::out_of_range("q", "iterated-logarithm law requires q > 0"));
    }
    if params.p >= 1.0 - REGIME_EPS {
        return Err(Error::out_of_range("p", "iterated-logarithm law requires p < 1"));
    }
    if alpha > 0.5 {
        return Err(Error::out_of_range(
            "alpha",
            "iterated-logarithm law requires alpha <= 1/2",
        ));
    }
    let q1p = params.q * (1.0 - params.p);
    if alpha == 0.5 {
        Ok((4.0 * q1p).sqrt())
    } else {
        Ok((q1p / ((1.0 - alpha) * (1.0 - alpha) * (1.0 - 2.0 * alpha))).sqrt())
    }
}
