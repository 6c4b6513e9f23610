//! Shared oracles: independent reimplementations used to cross-check the
//! library. They deliberately avoid the crate's DP tables and Gamma-ratio
//! code paths.
#![allow(dead_code)]

use minwalk::ModelParams;

/// Endpoint pmf by exhaustive enumeration of all 2^n increment sequences.
/// Exponential cost; keep n <= ~16.
pub fn brute_force_distribution(params: &ModelParams, n: u64) -> Vec<f64> {
    assert!(n >= 1 && n <= 24, "brute force is exponential in n");
    let (q, alpha, s) = (params.q, params.p - params.q, params.s);
    let mut pmf = vec![0.0; n as usize + 1];
    for mask in 0u64..(1u64 << n) {
        let mut prob = 1.0;
        let mut x = 0u64;
        for k in 1..=n {
            let step = (mask >> (k - 1)) & 1 == 1;
            let pi = if k == 1 {
                s
            } else {
                q + alpha * x as f64 / (k - 1) as f64
            };
            prob *= if step { pi } else { 1.0 - pi };
            if step {
                x += 1;
            }
        }
        pmf[x as usize] += prob;
    }
    pmf
}

/// k-th raw moment of a dense pmf over {0, 1, ..., len-1}.
pub fn pmf_moment(pmf: &[f64], order: u32) -> f64 {
    pmf.iter()
        .enumerate()
        .map(|(x, &p)| (x as f64).powi(order as i32) * p)
        .sum()
}

/// Raw moments E[X_n^k] for k = 1..=4 by the tower rule. With B the step
/// indicator and pi = q + alpha X / j affine in X,
///
///   E[(X + B)^k | X] = X^k + sum_{j=1}^{k} C(k,j) X^{k-j} pi(X),
///
/// so the first four moments close on themselves. Exact up to f64
/// rounding; costs O(n).
pub fn moment_recursion(params: &ModelParams, n: u64) -> [f64; 4] {
    assert!(n >= 1);
    let (q, alpha, s) = (params.q, params.p - params.q, params.s);
    // After the Bernoulli(s) first step every raw moment equals s.
    let mut m = [s, s, s, s];
    for j in 2..=n {
        let a = alpha / (j - 1) as f64;
        let t1 = q + a * m[0]; // E[pi]
        let t2 = q * m[0] + a * m[1]; // E[X pi]
        let t3 = q * m[1] + a * m[2]; // E[X^2 pi]
        let t4 = q * m[2] + a * m[3]; // E[X^3 pi]
        m = [
            m[0] + t1,
            m[1] + 2.0 * t2 + t1,
            m[2] + 3.0 * t3 + 3.0 * t2 + t1,
            m[3] + 4.0 * t4 + 6.0 * t3 + 4.0 * t2 + t1,
        ];
    }
    m
}

/// Memory coefficient a_n as the bare product prod_{k=1}^{n-1} (1 + alpha/k).
pub fn a_product(n: u64, alpha: f64) -> f64 {
    let mut a = 1.0;
    for k in 1..n {
        a *= 1.0 + alpha / k as f64;
    }
    a
}

/// Standard normal quantile by bisection on the library CDF; plenty for
/// generating stratified null samples in tests.
pub fn inverse_normal(u: f64) -> f64 {
    assert!(u > 0.0 && u < 1.0);
    let (mut lo, mut hi) = (-12.0f64, 12.0f64);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if minwalk::stats::standard_normal_cdf(mid) < u {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Relative gap |x - y| / max(|y|, floor); floor guards targets near zero.
pub fn rel_err(x: f64, y: f64, floor: f64) -> f64 {
    (x - y).abs() / y.abs().max(floor)
}

pub fn params(p: f64, q: f64, s: f64) -> ModelParams {
    ModelParams::new(p, q, s).expect("valid test parameters")
}
