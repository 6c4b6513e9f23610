//! Sampling engines and ensemble statistics.
//!
//! Two independently coded engines draw the same walk law:
//!
//! * [`Engine::Reduced`] keeps only the position and samples each step from
//!   the conditional law q + alpha X_n / n directly (one draw per step);
//! * [`Engine::Naive`] keeps the full increment history, picks a uniformly
//!   random past step, and repeats it with probability p (if it was a move)
//!   or moves fresh with probability q (if it was a stay) - two draws per
//!   step. Averaging over the picked index reproduces q + alpha X_n / n
//!   exactly, so both engines sample the same process.
//!
//! Agreement between them is a strong end-to-end check that is exercised by
//! the verification suite.
//!
//! All randomness is counter-based ([`CounterRng`]): replica r of an
//! ensemble reads stream `stream + r`, and draw indices within a replica
//! are fixed by the engine's draw discipline (documented on each engine).
//! Results are therefore bit-identical across thread counts and scheduling
//! orders; ensembles are reduced with exact integer accumulators
//! ([`EnsembleStats`]) so not even the reduction order can perturb them.
//!
//! Probabilities in hot loops are evaluated in the one canonical form
//! q + alpha * x * (1/n) shared with the exact enumerator. No clamping is
//! needed: at the saturated boundaries (exact probability 0 or 1) the
//! one-ulp rounding excursions cannot flip any comparison against a
//! uniform in [0, 1).

mod rng;

pub use rng::{mix64, CounterRng, GOLDEN, STREAM_SALT};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{step_prob_raw, ModelParams};

/// Largest trajectory length the history-keeping naive engine accepts by
/// default (the history costs one bit per step per replica).
pub const DEFAULT_NAIVE_HISTORY_CAP: u64 = 1 << 24;

/// Replicas per parallel work unit. Exact merging makes the block size
/// invisible in the results; it only tunes scheduling granularity.
const ENSEMBLE_BLOCK: u64 = 256;

/// Which sampling implementation to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    /// Conditional-law sampler: one draw per step, draw index k-1 for step k.
    Reduced,
    /// History-replay sampler: draw 2k picks the remembered step, draw
    /// 2k+1 is the coin; step 1 burns draw 0 and flips draw 1 against s.
    Naive,
}

// ---------------------------------------------------------------------------
// Engines
// ---------------------------------------------------------------------------

/// Position after n steps under the reduced (conditional-law) engine.
///
/// Draw discipline: step k consumes exactly draw k-1, whether or not any
/// shortcut applies, so endpoints are reproducible from (seed, stream, n)
/// alone.
pub fn endpoint_reduced(params: &ModelParams, rng: &CounterRng, n: u64) -> u64 {
    let s = params.s;
    let mut x = (rng.uniform(0) < s) as u64;
    if n == 1 {
        return x;
    }
    let (q, alpha) = (params.q, params.alpha());
    if q == 0.0 && x == 0 {
        // Step probability is alpha * 0 / k = 0 forever: the walk is frozen.
        return 0;
    }
    if alpha == 0.0 {
        // q + 0 * x * inv == q exactly: steps are iid Bernoulli(q).
        for k in 2..=n {
            x += (rng.uniform(k - 1) < q) as u64;
        }
        return x;
    }
    for k in 2..=n {
        let inv = 1.0 / (k - 1) as f64;
        let prob = step_prob_raw(q, alpha, x, inv);
        x += (rng.uniform(k - 1) < prob) as u64;
    }
    x
}

/// Reduced engine without the q = 0 / alpha = 0 shortcuts; the shortcuts
/// must agree with this bit for bit.
#[cfg(test)]
fn endpoint_reduced_generic(params: &ModelParams, rng: &CounterRng, n: u64) -> u64 {
    let (q, alpha, s) = (params.q, params.alpha(), params.s);
    let mut x = (rng.uniform(0) < s) as u64;
    for k in 2..=n {
        let inv = 1.0 / (k - 1) as f64;
        let prob = step_prob_raw(q, alpha, x, inv);
        x += (rng.uniform(k - 1) < prob) as u64;
    }
    x
}

/// Position after n steps under the naive (history-replay) engine.
///
/// Keeps every increment in a bit vector. Step k+1 picks j uniform in
/// {0, ..., k-1} (draw 2k, multiply-shift map) and then steps with
/// probability p if increment j was a move, q if it was a stay (draw 2k+1).
/// Averaging over j gives (x/k) p + (1-x/k) q = q + alpha x / k: the same
/// law the reduced engine samples.
pub fn endpoint_naive(params: &ModelParams, rng: &CounterRng, n: u64) -> Result<u64> {
    endpoint_naive_with_cap(params, rng, n, DEFAULT_NAIVE_HISTORY_CAP)
}

/// `endpoint_naive` with an explicit history cap.
pub fn endpoint_naive_with_cap(
    params: &ModelParams,
    rng: &CounterRng,
    n: u64,
    cap: u64,
) -> Result<u64> {
    if n == 0 {
        return Err(Error::out_of_range("n", "n >= 1 required"));
    }
    let positions = naive_positions_at(params, rng, &[n], cap)?;
    Ok(positions[0])
}

/// Naive-engine walk recording the position at each time in `times`
/// (validated by the caller: non-empty, strictly increasing, >= 1).
fn naive_positions_at(
    params: &ModelParams,
    rng: &CounterRng,
    times: &[u64],
    cap: u64,
) -> Result<Vec<u64>> {
    let n = *times.last().expect("non-empty");
    if n > cap {
        return Err(Error::CapExceeded(format!(
            "history-replay engine keeps all {n} increments; cap is {cap}"
        )));
    }
    let (p, q, s) = (params.p, params.q, params.s);
    let mut bits = vec![0u64; n.div_ceil(64) as usize];
    let mut out = Vec::with_capacity(times.len());
    let mut next = 0usize;
    let first = rng.uniform(1) < s;
    bits[0] |= first as u64;
    let mut x = first as u64;
    if times[next] == 1 {
        out.push(x);
        next += 1;
    }
    for k in 1..n {
        let j = rng.below(2 * k, k);
        let remembered = (bits[(j >> 6) as usize] >> (j & 63)) & 1 == 1;
        let threshold = if remembered { p } else { q };
        if rng.uniform(2 * k + 1) < threshold {
            bits[(k >> 6) as usize] |= 1u64 << (k & 63);
            x += 1;
        }
        if next < times.len() && times[next] == k + 1 {
            out.push(x);
            next += 1;
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Trajectories and transition windows
// ---------------------------------------------------------------------------

/// One walk observed at a fixed set of checkpoint times.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TrajectorySeries {
    pub params: ModelParams,
    pub seed: u64,
    pub stream: u64,
    /// Strictly increasing checkpoint times, each >= 1.
    pub times: Vec<u64>,
    /// Position at each checkpoint time.
    pub positions: Vec<u64>,
}

/// Runs the reduced engine once and records the position at each checkpoint.
/// `times` must be non-empty and strictly increasing with times[0] >= 1.
/// The endpoint equals `endpoint_reduced` at the same (seed, stream, n).
pub fn simulate_trajectory(
    params: &ModelParams,
    seed: u64,
    stream: u64,
    times: &[u64],
) -> Result<TrajectorySeries> {
    params.validate()?;
    if times.is_empty() {
        return Err(Error::out_of_range("times", "at least one checkpoint required"));
    }
    if times[0] == 0 {
        return Err(Error::out_of_range("times", "checkpoints start at time 1"));
    }
    if times.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::out_of_range("times", "checkpoints must strictly increase"));
    }
    let rng = CounterRng::new(seed, stream);
    let (q, alpha, s) = (params.q, params.alpha(), params.s);
    let n = *times.last().expect("non-empty");
    let mut positions = Vec::with_capacity(times.len());
    let mut next = 0usize;
    let mut x = (rng.uniform(0) < s) as u64;
    if times[next] == 1 {
        positions.push(x);
        next += 1;
    }
    for k in 2..=n {
        let inv = 1.0 / (k - 1) as f64;
        let prob = step_prob_raw(q, alpha, x, inv);
        x += (rng.uniform(k - 1) < prob) as u64;
        if next < times.len() && times[next] == k {
            positions.push(x);
            next += 1;
        }
    }
    Ok(TrajectorySeries {
        params: *params,
        seed,
        stream,
        times: times.to_vec(),
        positions,
    })
}

/// One conditional-step observation: the position x entering step `j` and
/// whether the walk stepped. Windows into reduced-engine trajectories:
/// replica r reproduces steps 1..=j of `endpoint_reduced` on stream
/// `stream + r`.
pub fn collect_transitions(
    params: &ModelParams,
    j: u64,
    replicas: u64,
    seed: u64,
    stream: u64,
) -> Result<Vec<(u64, bool)>> {
    params.validate()?;
    if j < 2 {
        return Err(Error::out_of_range("j", "conditional steps start at j = 2"));
    }
    if replicas == 0 {
        return Err(Error::out_of_range("replicas", "at least one replica required"));
    }
    let (q, alpha) = (params.q, params.alpha());
    Ok((0..replicas)
        .into_par_iter()
        .map(|r| {
            let rng = CounterRng::replica(seed, stream, r);
            let x = endpoint_reduced(params, &rng, j - 1);
            let inv = 1.0 / (j - 1) as f64;
            let prob = step_prob_raw(q, alpha, x, inv);
            let stepped = rng.uniform(j - 1) < prob;
            (x, stepped)
        })
        .collect())
}

// ---------------------------------------------------------------------------
// Ensemble statistics
// ---------------------------------------------------------------------------

/// Exact accumulator of endpoint statistics.
///
/// Power sums are unsigned 128-bit integers, so pushes and merges are exact
/// and merging is truly associative and commutative: any parallel reduction
/// tree produces the same bits. Central moments are derived on demand from
/// integer combinations (evaluated in i128 where they fit, falling back to
/// long-double-free f64 arithmetic on the raw sums otherwise).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EnsembleStats {
    /// Trajectory length the endpoints were sampled at.
    pub time: u64,
    /// Number of endpoints accumulated.
    pub count: u64,
    #[serde(with = "u128_decimal")]
    pub sum1: u128,
    #[serde(with = "u128_decimal")]
    pub sum2: u128,
    #[serde(with = "u128_decimal")]
    pub sum3: u128,
    #[serde(with = "u128_decimal")]
    pub sum4: u128,
    pub min: u64,
    pub max: u64,
}

/// serde codec writing u128 as a decimal string: JSON numbers cannot carry
/// 128-bit integers faithfully.
mod u128_decimal {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &u128, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<u128, D::Error> {
        let text = String::deserialize(de)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

impl EnsembleStats {
    pub fn empty(time: u64) -> Self {
        EnsembleStats {
            time,
            count: 0,
            sum1: 0,
            sum2: 0,
            sum3: 0,
            sum4: 0,
            min: u64::MAX,
            max: 0,
        }
    }

    /// Accumulates one endpoint. Exact: no rounding at any count.
    pub fn push(&mut self, x: u64) {
        let x1 = x as u128;
        let x2 = x1 * x1;
        self.count += 1;
        self.sum1 += x1;
        self.sum2 += x2;
        self.sum3 += x2 * x1;
        self.sum4 += x2 * x2;
        self.min = self.min.min(x);
        self.max = self.max.max(x);
    }

    /// Exact union of two accumulators over disjoint replica sets.
    pub fn merge(&mut self, other: &EnsembleStats) {
        debug_assert_eq!(self.time, other.time);
        self.count += other.count;
        self.sum1 += other.sum1;
        self.sum2 += other.sum2;
        self.sum3 += other.sum3;
        self.sum4 += other.sum4;
        self.min = self.min.min(other.min);
        self.max = self.max.max(other.max);
    }

    pub fn mean(&self) -> f64 {
        self.sum1 as f64 / self.count as f64
    }

    /// Population central moment m2 = E[(X - mean)^2], from the exact
    /// integer combination c*s2 - s1^2 when it fits in i128.
    pub fn m2(&self) -> f64 {
        let c = self.count;
        if c == 0 {
            return 0.0;
        }
        let exact = (self.count as i128)
            .checked_mul(self.sum2 as i128)
            .and_then(|cs2| cs2.checked_sub((self.sum1 as i128).checked_mul(self.sum1 as i128)?));
        match exact {
            Some(num) => num as f64 / (c as f64 * c as f64),
            None => {
                let mean = self.mean();
                self.sum2 as f64 / c as f64 - mean * mean
            }
        }
    }

    /// Unbiased sample variance (c - 1 denominator).
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            return 0.0;
        }
        self.m2() * self.count as f64 / (self.count - 1) as f64
    }

    /// Standard error of the mean.
    pub fn se_mean(&self) -> f64 {
        (self.variance() / self.count as f64).sqrt()
    }

    /// Population central third moment, exact i128 combination
    /// (c^2 s3 - 3 c s1 s2 + 2 s1^3) / c^3 when it fits.
    pub fn m3(&self) -> f64 {
        let c = self.count;
        if c == 0 {
            return 0.0;
        }
        let exact = (|| {
            let c = c as i128;
            let s1 = self.sum1 as i128;
            let s2 = self.sum2 as i128;
            let s3 = self.sum3 as i128;
            let t1 = c.checked_mul(c)?.checked_mul(s3)?;
            let t2 = c.checked_mul(3)?.checked_mul(s1)?.checked_mul(s2)?;
            let t3 = s1.checked_mul(s1)?.checked_mul(s1)?.checked_mul(2)?;
            t1.checked_sub(t2)?.checked_add(t3)
        })();
        let cf = c as f64;
        match exact {
            Some(num) => num as f64 / (cf * cf * cf),
            None => {
                let mean = self.mean();
                self.sum3 as f64 / cf - 3.0 * mean * (self.sum2 as f64 / cf)
                    + 2.0 * mean * mean * mean
            }
        }
    }

    /// Population central fourth moment. Always evaluated in f64 from the
    /// raw sums: the exact integer combination c^3 s4 overflows i128 at
    /// ensemble sizes this crate routinely runs.
    pub fn m4(&self) -> f64 {
        let c = self.count;
        if c == 0 {
            return 0.0;
        }
        let cf = c as f64;
        let mean = self.mean();
        self.sum4 as f64 / cf - 4.0 * mean * (self.sum3 as f64 / cf)
            + 6.0 * mean * mean * (self.sum2 as f64 / cf)
            - 3.0 * mean * mean * mean * mean
    }

    /// m3 / m2^{3/2}; `None` when the sample is degenerate (m2 = 0).
    pub fn skewness(&self) -> Option<f64> {
        let m2 = self.m2();
        if m2 <= 0.0 {
            return None;
        }
        Some(self.m3() / m2.powf(1.5))
    }

    /// m4 / m2^2 - 3; `None` when the sample is degenerate.
    pub fn excess_kurtosis(&self) -> Option<f64> {
        let m2 = self.m2();
        if m2 <= 0.0 {
            return None;
        }
        Some(self.m4() / (m2 * m2) - 3.0)
    }
}

// ---------------------------------------------------------------------------
// Parallel drivers
// ---------------------------------------------------------------------------

fn check_ensemble_args(n: u64, replicas: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::out_of_range("n", "n >= 1 required"));
    }
    if replicas == 0 {
        return Err(Error::out_of_range("replicas", "at least one replica required"));
    }
    // sum4 must stay inside u128: replicas * n^4 bounds it.
    let fits = (n as u128)
        .checked_pow(4)
        .and_then(|n4| n4.checked_mul(replicas as u128));
    if fits.is_none() {
        return Err(Error::CapExceeded(format!(
            "fourth-power sum of {replicas} endpoints at n = {n} would overflow the exact accumulator"
        )));
    }
    Ok(())
}

/// Samples `replicas` independent endpoints (replica r on stream
/// `stream + r`) and reduces them into exact ensemble statistics.
///
/// Work is split into fixed blocks farmed to the current rayon pool; the
/// result is bit-identical for every thread count because single-replica
/// sampling is stateless and merging is exact integer arithmetic.
pub fn run_ensemble(
    params: &ModelParams,
    n: u64,
    replicas: u64,
    seed: u64,
    stream: u64,
    engine: Engine,
) -> Result<EnsembleStats> {
    if n == 0 {
        return Err(Error::out_of_range("n", "n >= 1 required"));
    }
    let mut slots = run_ensemble_checkpointed(params, &[n], replicas, seed, stream, engine)?;
    Ok(slots.pop().expect("one checkpoint"))
}

/// `run_ensemble` observed at every time in `times` (strictly increasing,
/// first >= 1): one exact accumulator per checkpoint, all fed by the same
/// walks. The marginal at each time is bit-identical to a plain
/// `run_ensemble` at that n because draw indices depend only on the step.
pub fn run_ensemble_checkpointed(
    params: &ModelParams,
    times: &[u64],
    replicas: u64,
    seed: u64,
    stream: u64,
    engine: Engine,
) -> Result<Vec<EnsembleStats>> {
    params.validate()?;
    if times.is_empty() {
        return Err(Error::out_of_range("times", "at least one checkpoint required"));
    }
    if times[0] == 0 {
        return Err(Error::out_of_range("times", "checkpoints start at time 1"));
    }
    if times.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::out_of_range("times", "checkpoints must strictly increase"));
    }
    let n = *times.last().expect("non-empty");
    check_ensemble_args(n, replicas)?;
    if engine == Engine::Naive && n > DEFAULT_NAIVE_HISTORY_CAP {
        return Err(Error::CapExceeded(format!(
            "history-replay engine keeps all {n} increments; cap is {DEFAULT_NAIVE_HISTORY_CAP}"
        )));
    }
    let blocks = replicas.div_ceil(ENSEMBLE_BLOCK);
    (0..blocks)
        .into_par_iter()
        .map(|b| {
            let lo = b * ENSEMBLE_BLOCK;
            let hi = (lo + ENSEMBLE_BLOCK).min(replicas);
            let mut out: Vec<EnsembleStats> =
                times.iter().map(|&t| EnsembleStats::empty(t)).collect();
            match engine {
                Engine::Reduced => {
                    reduced_block_checkpointed(params, times, seed, stream, lo, hi, &mut out)
                }
                Engine::Naive => {
                    for r in lo..hi {
                        let rng = CounterRng::replica(seed, stream, r);
                        let positions =
                            naive_positions_at(params, &rng, times, DEFAULT_NAIVE_HISTORY_CAP)?;
                        for (slot, x) in out.iter_mut().zip(positions) {
                            slot.push(x);
                        }
                    }
                }
            }
            Ok(out)
        })
        .try_reduce(
            || times.iter().map(|&t| EnsembleStats::empty(t)).collect(),
            |mut a: Vec<EnsembleStats>, b| {
                for (x, y) in a.iter_mut().zip(&b) {
                    x.merge(y);
                }
                Ok(a)
            },
        )
}

/// Reduced-engine inner loop for replicas [lo, hi), advanced in lock step
/// so each step's reciprocal is computed once. Same formula and draw
/// indices as `endpoint_reduced`, hence bit-identical to scalar runs.
/// At q = 0, replicas frozen at zero leave the active set after step 1.
fn reduced_block_checkpointed(
    params: &ModelParams,
    times: &[u64],
    seed: u64,
    stream: u64,
    lo: u64,
    hi: u64,
    out: &mut [EnsembleStats],
) {
    let (q, alpha, s) = (params.q, params.alpha(), params.s);
    let n = *times.last().expect("non-empty");
    let count = (hi - lo) as usize;
    let rngs: Vec<CounterRng> = (lo..hi)
        .map(|r| CounterRng::replica(seed, stream, r))
        .collect();
    let mut xs = vec![0u64; count];
    for (x, rng) in xs.iter_mut().zip(&rngs) {
        *x = (rng.uniform(0) < s) as u64;
    }
    let mut next = 0usize;
    if times[next] == 1 {
        for &x in &xs {
            out[next].push(x);
        }
        next += 1;
    }
    // q = 0: the step probability of a zero walker is alpha * 0 / k = 0
    // forever, so only walkers that took the first step stay active.
    let sparse = q == 0.0;
    let active: Vec<usize> = if sparse {
        (0..count).filter(|&i| xs[i] == 1).collect()
    } else {
        Vec::new()
    };
    for k in 2..=n {
        let inv = 1.0 / (k - 1) as f64;
        if sparse {
            for &i in &active {
                let prob = step_prob_raw(q, alpha, xs[i], inv);
                xs[i] += (rngs[i].uniform(k - 1) < prob) as u64;
            }
        } else if alpha == 0.0 {
            // q + 0 * x * inv == q exactly: steps are iid Bernoulli(q).
            for (x, rng) in xs.iter_mut().zip(&rngs) {
                *x += (rng.uniform(k - 1) < q) as u64;
            }
        } else {
            for (x, rng) in xs.iter_mut().zip(&rngs) {
                let prob = step_prob_raw(q, alpha, *x, inv);
                *x += (rng.uniform(k - 1) < prob) as u64;
            }
        }
        if next < times.len() && times[next] == k {
            for &x in &xs {
                out[next].push(x);
            }
            next += 1;
        }
    }
}

/// Samples `replicas` endpoints and returns them in replica order.
pub fn collect_endpoints(
    params: &ModelParams,
    n: u64,
    replicas: u64,
    seed: u64,
    stream: u64,
    engine: Engine,
) -> Result<Vec<u64>> {
    params.validate()?;
    if n == 0 {
        return Err(Error::out_of_range("n", "n >= 1 required"));
    }
    if replicas == 0 {
        return Err(Error::out_of_range("replicas", "at least one replica required"));
    }
    (0..replicas)
        .into_par_iter()
        .map(|r| {
            let rng = CounterRng::replica(seed, stream, r);
            match engine {
                Engine::Reduced => Ok(endpoint_reduced(params, &rng, n)),
                Engine::Naive => endpoint_naive(params, &rng, n),
            }
        })
        .collect()
}
