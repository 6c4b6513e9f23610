//! Walk definition: parameters, the conditional step law, and exact
//! finite-time distributions by dynamic programming.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::CompensatedSum;

/// Snap width for regime boundaries. `p - q` in floats can miss an intended
/// boundary by an ulp (0.7 - 0.2 != 0.5 exactly), and an exact comparison
/// would then select the wrong branch of a closed form next to a
/// 1/(1 - 2 alpha) pole.
pub const REGIME_EPS: f64 = 1e-9;

/// Default cap on the support size `enumerate_distribution` materializes.
pub const DEFAULT_SUPPORT_CAP: usize = 4096;

/// Model parameters. The memory strength `alpha = p - q` is always derived,
/// never stored, so the three fields stay the single source of truth.
///
/// * `p`: probability of repeating a remembered increment that was 1
/// * `q`: probability of flipping a remembered 0 increment into a 1
/// * `s`: probability that the very first increment is 1
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub p: f64,
    pub q: f64,
    pub s: f64,
}

impl ModelParams {
    /// Validated constructor.
    pub fn new(p: f64, q: f64, s: f64) -> Result<Self> {
        let params = ModelParams { p, q, s };
        params.validate()?;
        Ok(params)
    }

    /// Memory strength alpha = p - q, always in [-1, 1] for valid params.
    #[inline]
    pub fn alpha(&self) -> f64 {
        self.p - self.q
    }

    /// alpha snapped onto a regime boundary when within `REGIME_EPS` of it.
    pub fn alpha_snapped(&self) -> f64 {
        let a = self.alpha();
        for boundary in [-1.0, -0.5, 0.0, 0.5, 1.0] {
            if (a - boundary).abs() < REGIME_EPS {
                return boundary;
            }
        }
        a
    }

    /// Checks that p, q, s are probabilities. Rejects NaN.
    pub fn validate(&self) -> Result<()> {
        for (field, value) in [("p", self.p), ("q", self.q), ("s", self.s)] {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::out_of_range(
                    field,
                    format!("{value} is not a probability in [0, 1]"),
                ));
            }
        }
        Ok(())
    }
}

/// Position and elapsed steps of one walker. The walk starts at the origin
/// at time 0 and can gain at most one site per step, so `position <= time`
/// always.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkState {
    pub time: u64,
    pub position: u64,
}

impl WalkState {
    pub fn origin() -> Self {
        WalkState { time: 0, position: 0 }
    }

    /// Applies one increment.
    #[inline]
    pub fn advance(&mut self, stepped: bool) {
        self.time += 1;
        self.position += stepped as u64;
    }
}

/// Conditional step law in the exact floating-point form shared by the
/// enumerator and the simulation engines: q + alpha * x * (1/n), with the
/// reciprocal precomputed so hot loops amortize the divide. Keeping one
/// canonical expression makes every consumer evaluate bit-identical
/// probabilities.
#[inline(always)]
pub(crate) fn step_prob_raw(q: f64, alpha: f64, x: u64, inv_n: f64) -> f64 {
    q + alpha * (x as f64) * inv_n
}

/// Conditional step law without validation.
#[inline(always)]
pub(crate) fn step_prob_unchecked(params: &ModelParams, x: u64, n: u64) -> f64 {
    step_prob_raw(params.q, params.alpha(), x, 1.0 / n as f64)
}

/// P[next increment is 1 | position x after n steps] = q + alpha x / n.
///
/// Errors: `DegenerateStep` at n = 0 (the first step is Bernoulli(s), not a
/// conditional step), `OutOfRange` if x > n. The result is clamped into
/// [min(p, q), max(p, q)], which the exact law obeys; the clamp only removes
/// one-ulp rounding excursions at the endpoints.
pub fn step_probability(params: &ModelParams, x: u64, n: u64) -> Result<f64> {
    params.validate()?;
    if n == 0 {
        return Err(Error::DegenerateStep(
            "conditional step law is undefined at time 0; the first increment is Bernoulli(s)"
                .into(),
        ));
    }
    if x > n {
        return Err(Error::out_of_range(
            "x",
            format!("position {x} exceeds elapsed time {n}"),
        ));
    }
    let lo = self::min(params.p, params.q);
    let hi = self::max(params.p, params.q);
    Ok(step_prob_unchecked(params, x, n).clamp(lo, hi))
}

#[inline]
fn min(a: f64, b: f64) -> f64 {
    if a < b {
        a
    } else {
        b
    }
}

#[inline]
fn max(a: f64, b: f64) -> f64 {
    if a > b {
        a
    } else {
        b
    }
}

/// Exact distribution of the position after `n` steps. `masses[x]` is
/// P[X_n = x] for x in 0..=n; the total mass is 1 up to accumulated rounding
/// (within 1e-12 absolute for any n the default cap admits).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistributionTable {
    pub n: u64,
    pub masses: Vec<f64>,
}

impl DistributionTable {
    /// (position, mass) pairs in increasing position order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        self.masses.iter().enumerate().map(|(x, &m)| (x as u64, m))
    }

    /// Compensated total mass; equals 1 within the table's rounding budget.
    pub fn total_mass(&self) -> f64 {
        let mut acc = CompensatedSum::new();
        for &m in &self.masses {
            acc.add(m);
        }
        acc.value()
    }

    /// Compensated raw moment E[X_n^order].
    pub fn moment(&self, order: u32) -> f64 {
        let mut acc = CompensatedSum::new();
        for (x, m) in self.iter() {
            acc.add((x as f64).powi(order as i32) * m);
        }
        acc.value()
    }

    pub fn mean(&self) -> f64 {
        self.moment(1)
    }
}

/// `enumerate_distribution` with the default support cap.
pub fn enumerate_distribution(params: &ModelParams, n: u64) -> Result<DistributionTable> {
    enumerate_distribution_with_cap(params, n, DEFAULT_SUPPORT_CAP)
}

/// Exact distribution of X_n by forward dynamic programming over the support
/// {0, ..., n}. Cost O(n^2) time, O(n) space.
///
/// Mass is moved with the complement trick: the mass leaving a site is
/// computed once and both subtracted and added, so conservation errors come
/// only from the two roundings per transfer and the total stays within
/// n * eps of 1.
///
/// Errors: `OutOfRange` for n = 0, `CapExceeded` if the support n + 1 would
/// exceed `cap`.
pub fn enumerate_distribution_with_cap(
    params: &ModelParams,
    n: u64,
    cap: usize,
) -> Result<DistributionTable> {
    params.validate()?;
    if n == 0 {
        return Err(Error::out_of_range("n", "n >= 1 required"));
    }
    let support = (n + 1) as usize;
    if support > cap {
        return Err(Error::CapExceeded(format!(
            "support size {support} exceeds cap {cap}"
        )));
    }

    let mut masses = vec![0.0f64; support];
    masses[0] = 1.0 - params.s;
    masses[1] = params.s;

    // State after step k lives in masses[0..=k]; advance to k + 1.
    let (q, alpha) = (params.q, params.alpha());
    for k in 1..n {
        let inv_k = 1.0 / k as f64;
        for x in (0..=k as usize).rev() {
            let m = masses[x];
            if m == 0.0 {
                continue;
            }
            let moved = m * step_prob_raw(q, alpha, x as u64, inv_k);
            masses[x + 1] += moved;
            masses[x] = m - moved;
        }
    }
    Ok(DistributionTable { n, masses })
}

/// Exact raw moment E[X_n^order] by enumeration, with the default cap.
pub fn exact_moment(params: &ModelParams, n: u64, order: u32) -> Result<f64> {
    exact_moment_with_cap(params, n, order, DEFAULT_SUPPORT_CAP)
}

/// Exact raw moment E[X_n^order] by enumeration. Orders 1..=4 are covered by
/// tests; higher orders are computed the same way but unvalidated.
pub fn exact_moment_with_cap(params: &ModelParams, n: u64, order: u32, cap: usize) -> Result<f64> {
    if order == 0 {
        return Err(Error::out_of_range("order", "order >= 1 required"));
    }
    Ok(enumerate_distribution_with_cap(params, n, cap)?.moment(order))
}
