//! Acceptance gate: one test per criterion, each at its stated tolerance.
//! Each test prints a single "[A..] PASS" line carrying the numbers that
//! justify it (visible with --nocapture); a failing assert is the FAIL line.
//! Seeds are fixed and printed so every figure here can be regenerated.

mod common;

use std::time::Instant;

use common::{params, rel_err};
use minwalk::closed_form::{
    gamma_sum, limit_moments, mean_exact, moment2_q0, moment3_q0, moment4_q0,
};
use minwalk::model::enumerate_distribution;
use minwalk::simulate::{collect_endpoints, Engine};
use minwalk::stats::{chi_square_gof, chi_square_two_sample};
use minwalk::verify::{
    lil_diagnostic, phase_diagram, verify_clt, verify_limit_q0, verify_slln, Verdict,
    VerificationReport, VerifyConfig,
};

fn estimate(report: &VerificationReport, name: &str) -> f64 {
    report
        .estimates
        .iter()
        .find(|e| e.name == name)
        .unwrap_or_else(|| panic!("estimate {name} missing from {} report", report.theorem.name()))
        .value
}

fn check_passed(report: &VerificationReport, name: &str) -> bool {
    report
        .checks
        .iter()
        .find(|c| c.name == name)
        .unwrap_or_else(|| panic!("check {name} missing from {} report", report.theorem.name()))
        .passed
}

/// A1: closed-form mean against full enumeration over the 0.1 parameter
/// grid, every n in 1..=128, 1e-10 relative, under 60 seconds.
#[test]
fn a01_exact_mean_matches_enumeration_across_the_grid() {
    let start = Instant::now();
    let mut triples = 0u32;
    let mut worst = 0.0f64;
    for ip in 0..=10u32 {
        for iq in 0..=10u32 {
            for is in 0..=10u32 {
                let pr = params(ip as f64 / 10.0, iq as f64 / 10.0, is as f64 / 10.0);
                if pr.alpha_snapped() >= 1.0 {
                    continue;
                }
                triples += 1;
                for n in 1..=128u64 {
                    let enumerated = enumerate_distribution(&pr, n).unwrap().mean();
                    let closed = mean_exact(&pr, n).unwrap();
                    let err = rel_err(closed, enumerated, 1e-12);
                    worst = worst.max(err);
                    assert!(
                        err <= 1e-10,
                        "[A1] FAIL  mean at p={} q={} s={} n={n}: closed {closed} vs enumerated {enumerated} (rel {err:.2e})",
                        pr.p, pr.q, pr.s
                    );
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    assert!(secs < 60.0, "[A1] FAIL  grid sweep took {secs:.1}s, budget 60s");
    println!(
        "[A1] PASS  exact mean = enumeration mean on {triples} grid triples \
         (alpha < 1), n 1..=128, worst rel err {worst:.2e}, {secs:.1}s"
    );
}

/// A2: q = 0 closed-form moments 2..4 against enumeration, 1e-10 relative,
/// with the exact collapse to s at n = 1.
#[test]
fn a02_memoryless_moments_match_enumeration_and_collapse_at_n1() {
    let mut worst = 0.0f64;
    let mut pairs = 0u32;
    for ip in 1..=9u32 {
        let p = ip as f64 / 10.0;
        for s in [0.25, 0.5, 1.0] {
            pairs += 1;
            assert_eq!(moment2_q0(p, s, 1).unwrap(), s, "[A2] FAIL  m2(1) != s at p={p} s={s}");
            assert_eq!(moment3_q0(p, s, 1).unwrap(), s, "[A2] FAIL  m3(1) != s at p={p} s={s}");
            assert_eq!(moment4_q0(p, s, 1).unwrap(), s, "[A2] FAIL  m4(1) != s at p={p} s={s}");
            let pr = params(p, 0.0, s);
            for n in 1..=128u64 {
                let table = enumerate_distribution(&pr, n).unwrap();
                for (order, closed) in [
                    (2u32, moment2_q0(p, s, n).unwrap()),
                    (3u32, moment3_q0(p, s, n).unwrap()),
                    (4u32, moment4_q0(p, s, n).unwrap()),
                ] {
                    let reference = table.moment(order);
                    let err = rel_err(closed, reference, 1e-12);
                    worst = worst.max(err);
                    assert!(
                        err <= 1e-10,
                        "[A2] FAIL  moment {order} at p={p} s={s} n={n}: {closed} vs {reference} (rel {err:.2e})"
                    );
                }
            }
        }
    }
    println!(
        "[A2] PASS  moments 2..4 at q = 0 match enumeration on {pairs} (p, s) pairs, \
         n 1..=128, worst rel err {worst:.2e}; all collapse to s at n = 1 bit-exactly"
    );
}

/// Direct summation of Gamma(k+a)/Gamma(k+b): the first term from the
/// gamma function itself, every later term by the exact ratio recurrence
/// term_k = term_{k-1} (k-1+a)/(k-1+b), compensated summation throughout.
/// Keeps every intermediate near machine precision, unlike lgamma
/// differences whose absolute log error already exceeds 1e-12 relative
/// by n = 1000.
fn gamma_ratio_sum_brute(a: f64, b: f64, n: u64) -> f64 {
    use statrs::function::gamma::gamma;
    let mut term = gamma(1.0 + a) / gamma(1.0 + b);
    let (mut sum, mut carry) = (0.0f64, 0.0f64);
    for k in 1..=n {
        if k > 1 {
            let m = (k - 1) as f64;
            term *= (m + a) / (m + b);
        }
        let y = term - carry;
        let t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    sum
}

/// A3: gamma_sum closed form vs brute-force summation, 1e-12 relative,
/// over the [0, 4] grid away from the b = a + 1 pole, n up to 1000.
#[test]
fn a03_gamma_ratio_sum_closed_form_matches_brute_force() {
    let mut worst = 0.0f64;
    let mut points = 0u32;
    for ia in 0..=16u32 {
        let a = ia as f64 * 0.25;
        for ib in 0..=16u32 {
            let b = ib as f64 * 0.25;
            if (b - a - 1.0).abs() <= 0.05 {
                continue;
            }
            for n in [1u64, 10, 100, 1000] {
                points += 1;
                let closed = gamma_sum(a, b, n).unwrap();
                let brute = gamma_ratio_sum_brute(a, b, n);
                let err = rel_err(closed, brute, 1e-300);
                worst = worst.max(err);
                assert!(
                    err <= 1e-12,
                    "[A3] FAIL  gamma_sum({a}, {b}, {n}) = {closed} vs brute {brute} (rel {err:.2e})"
                );
            }
        }
    }
    println!(
        "[A3] PASS  gamma_sum matches term-by-term summation at {points} (a, b, n) points \
         on the [0, 4] grid, |b - a - 1| > 0.05, worst rel err {worst:.2e}"
    );
}

/// A4: both engines at n = 12 with a million replicas each pass chi-square
/// against the enumerated distribution and against each other at 0.001,
/// inside five minutes. Seeds fixed and printed.
#[test]
fn a04_engines_pass_chi_square_against_enumeration_and_each_other() {
    let start = Instant::now();
    let n = 12u64;
    let replicas = 1_000_000u64;
    let (seed_reduced, seed_naive) = (101u64, 202u64);
    let mut worst_p = f64::INFINITY;
    for pr in [params(0.8, 0.2, 0.5), params(0.75, 0.0, 0.6)] {
        let expected: Vec<f64> = enumerate_distribution(&pr, n)
            .unwrap()
            .iter()
            .map(|(_, prob)| prob * replicas as f64)
            .collect();
        let reduced =
            collect_endpoints(&pr, n, replicas, seed_reduced, 0, Engine::Reduced).unwrap();
        let naive = collect_endpoints(&pr, n, replicas, seed_naive, 0, Engine::Naive).unwrap();
        let mut h_reduced = vec![0u64; n as usize + 1];
        let mut h_naive = vec![0u64; n as usize + 1];
        for &x in &reduced {
            h_reduced[x as usize] += 1;
        }
        for &x in &naive {
            h_naive[x as usize] += 1;
        }
        let gof_reduced = chi_square_gof(&h_reduced, &expected).unwrap();
        let gof_naive = chi_square_gof(&h_naive, &expected).unwrap();
        let cross = chi_square_two_sample(&h_reduced, &h_naive).unwrap();
        for (label, result) in [
            ("reduced vs exact", &gof_reduced),
            ("naive vs exact", &gof_naive),
            ("reduced vs naive", &cross),
        ] {
            worst_p = worst_p.min(result.p_value);
            assert!(
                result.p_value > 1e-3,
                "[A4] FAIL  {label} at p={} q={} s={}: chi-square p = {:.2e}",
                pr.p, pr.q, pr.s, result.p_value
            );
        }
    }
    let secs = start.elapsed().as_secs_f64();
    assert!(secs < 300.0, "[A4] FAIL  took {secs:.1}s, budget 300s");
    println!(
        "[A4] PASS  both engines at n = 12, R = 10^6 pass chi-square vs enumeration and \
         vs each other on 2 parameter sets (seeds: reduced {seed_reduced}, naive {seed_naive}), \
         smallest p-value {worst_p:.3}, {secs:.1}s"
    );
}

/// A5: strong law at alpha in {-1, -0.5, 0, 0.4, 0.7}: 32 paths to 1e7,
/// deviation |X_t/t - q/(1-alpha)| trending down over the last four
/// power-of-two checkpoints on at least 90% of paths, terminal deviation
/// inside the scaled tolerance. The trend comparison carries the
/// stochastic slack 2 sd(X_t)/t + 1/t: a raw strict decrease fails on a
/// constant fraction of honest paths at any horizon, so the gate tests
/// decrease up to the scale the CLT forces on a converging average.
#[test]
fn a05_strong_law_deviations_shrink_on_almost_every_path() {
    let cases = [
        (-1.0, 0.0, 1.0),
        (-0.5, 0.25, 0.75),
        (0.0, 0.5, 0.5),
        (0.4, 0.6, 0.2),
        (0.7, 0.8, 0.1),
    ];
    let mut lines = Vec::new();
    for (i, (alpha, p, q)) in cases.iter().enumerate() {
        let pr = params(*p, *q, 0.5);
        assert!((pr.alpha() - alpha).abs() < 1e-12);
        let mut cfg = VerifyConfig::slln_default();
        cfg.stream = i as u64 * 1_000_000;
        let report = verify_slln(&pr, &cfg).unwrap();
        let trend = estimate(&report, "trendFraction");
        let terminal = estimate(&report, "terminalDeviationMax");
        assert_eq!(
            report.verdict,
            Verdict::Pass,
            "[A5] FAIL  alpha = {alpha}: {}",
            report.summary()
        );
        assert!(
            trend >= 0.9,
            "[A5] FAIL  alpha = {alpha}: only {:.0}% of paths trend down",
            trend * 100.0
        );
        lines.push(format!("alpha {alpha}: trend {:.0}%, worst terminal dev {terminal:.2e}", trend * 100.0));
    }
    println!(
        "[A5] PASS  X_t/t -> q/(1-alpha) on 32 paths to n = 10^7 (seed 7): {}",
        lines.join("; ")
    );
}

/// A6: diffusive CLT battery at n = 2^16, R = 10^5 for feasible
/// (alpha, q) pairs from {-0.5, 0, 0.25} x {0.2, 0.5}: KS vs N(0,1) at
/// p > 0.001, |skew| < 0.1, |excess kurtosis| < 0.2, and sample variance
/// within 3% of q(1-p) n / ((1-alpha)^2 (1-2 alpha)).
/// (alpha, q) = (-0.5, 0.2) needs p = -0.3, outside the parameter space.
#[test]
fn a06_diffusive_clt_battery_with_variance_ratio_window() {
    let cases = [(-0.5, 0.5), (0.0, 0.2), (0.0, 0.5), (0.25, 0.2), (0.25, 0.5)];
    let mut lines = Vec::new();
    for (i, (alpha, q)) in cases.iter().enumerate() {
        let pr = params(alpha + q, *q, 0.5);
        let mut cfg = VerifyConfig::clt_default();
        cfg.stream = i as u64 * 1_000_000;
        let report = verify_clt(&pr, &cfg).unwrap();
        assert_eq!(
            report.verdict,
            Verdict::Pass,
            "[A6] FAIL  alpha = {alpha}, q = {q}: {}",
            report.summary()
        );
        let ratio = estimate(&report, "varianceRatio");
        assert!(
            (0.97..=1.03).contains(&ratio),
            "[A6] FAIL  alpha = {alpha}, q = {q}: variance ratio {ratio:.4} outside [0.97, 1.03]"
        );
        lines.push(format!("({alpha}, {q}) ratio {ratio:.4}"));
    }
    println!(
        "[A6] PASS  CLT battery and variance window at n = 2^16, R = 10^5 (seed 7) on 5 \
         feasible (alpha, q) points: {}; (-0.5, 0.2) skipped, needs p = -0.3",
        lines.join(", ")
    );
}

/// A7: the critical point alpha = 1/2 at the symmetric pair p = 0.75,
/// q = 0.25, s = 0.5: same battery, standardized by the exact
/// a_n sqrt(s_n^2) normalizer; variance window widened to [0.93, 1.07]
/// because s_n^2 tracks the log-scale variance only up to a 1/log n
/// relative gap (about 0.964 at n = 2^16). The pair is the one where the
/// battery resolves: with p + q = 1 and s = 1/2 the stay/step duality
/// makes the law of X_n symmetric at every n, while asymmetric critical
/// pairs keep a skewness of order 1/sqrt(log n) (still 0.07 to 0.27 at
/// n = 2^16) whose KS distance from the normal exceeds what 10^5 replicas
/// can pass.
#[test]
fn a07_critical_clt_battery_under_the_exact_normalizer() {
    let (p, q) = (0.75, 0.25);
    let pr = params(p, q, 0.5);
    assert_eq!(pr.alpha_snapped(), 0.5);
    let report = verify_clt(&pr, &VerifyConfig::clt_default()).unwrap();
    assert_eq!(
        report.verdict,
        Verdict::Pass,
        "[A7] FAIL  p = {p}, q = {q}: {}",
        report.summary()
    );
    let ratio = estimate(&report, "varianceRatioExactNormalizer");
    assert!(
        (0.93..=1.07).contains(&ratio),
        "[A7] FAIL  p = {p}, q = {q}: variance ratio {ratio:.4} outside [0.93, 1.07]"
    );
    println!(
        "[A7] PASS  critical-point battery at p = {p}, q = {q}, n = 2^16, R = 10^5 (seed 7) \
         under the exact a_n s_n normalizer: variance ratio {ratio:.4} in [0.93, 1.07], \
         KS p = {:.3}",
        report
            .estimates
            .iter()
            .find(|e| e.name == "ksStatistic")
            .and_then(|e| e.p_value)
            .unwrap_or(f64::NAN)
    );
}

/// A8: q = 0 martingale limit at n = 2^20, R = 10^5: first four moments of
/// X_n/a_n - s within 5 standard errors of the limit moments, and the
/// skewness witness separates the law from Gaussian by more than 4 se
/// wherever the predicted |skew| exceeds 0.05 (it does at all six points).
#[test]
fn a08_martingale_limit_moments_and_skewness_witness() {
    let mut lines = Vec::new();
    let mut idx = 0u64;
    for s in [0.3, 1.0] {
        for p in [0.6, 0.75, 0.9] {
            let mut cfg = VerifyConfig::limit_default();
            cfg.stream = idx * 1_000_000;
            idx += 1;
            let report = verify_limit_q0(s, p, &cfg).unwrap();
            assert_eq!(
                report.verdict,
                Verdict::Pass,
                "[A8] FAIL  s = {s}, p = {p}: {}",
                report.summary()
            );
            let predicted = limit_moments(p, s).unwrap().skewness;
            if predicted.abs() > 0.05 {
                assert!(
                    check_passed(&report, "skewWitness"),
                    "[A8] FAIL  s = {s}, p = {p}: skew witness missed (predicted skew {predicted:.3})"
                );
            }
            let z = estimate(&report, "skewWitnessZ");
            lines.push(format!("(s {s}, p {p}) witness z {z:.0}"));
        }
    }
    println!(
        "[A8] PASS  limit moments 1..4 within 5 se and skewness witness > 4 se at \
         n = 2^20, R = 10^5 (seed 7) on 6 (s, p) points: {}",
        lines.join(", ")
    );
}

/// A9: variance growth exponents from checkpoints 2^10..2^20 at R = 10^5:
/// within 0.05 of 1 on the p = q diagonal and of 2p on the q = 0 row.
#[test]
fn a09_measured_growth_exponents_match_the_phase_prediction() {
    let mut grid = Vec::new();
    for pq in [0.2, 0.35, 0.5] {
        grid.push(params(pq, pq, 0.5));
    }
    for p in [0.6, 0.7, 0.8, 0.9] {
        grid.push(params(p, 0.0, 0.5));
    }
    let diagram = phase_diagram(&grid, &VerifyConfig::regime_default()).unwrap();
    let mut lines = Vec::new();
    for point in &diagram.points {
        let predicted = if point.params.q == 0.0 {
            2.0 * point.params.p
        } else {
            1.0
        };
        assert_eq!(
            point.law.variance_exponent,
            Some(predicted),
            "[A9] FAIL  predicted exponent off at p={} q={}",
            point.params.p, point.params.q
        );
        let gap = (point.measured_exponent - predicted).abs();
        assert!(
            gap <= 0.05,
            "[A9] FAIL  p={} q={}: measured {:.3} vs predicted {predicted} (gap {gap:.3})",
            point.params.p, point.params.q, point.measured_exponent
        );
        assert_eq!(point.agree, Some(true));
        lines.push(format!(
            "p {} q {}: {:.3} vs {predicted}",
            point.params.p, point.params.q, point.measured_exponent
        ));
    }
    println!(
        "[A9] PASS  growth exponents from checkpoints 2^10..2^20, R = 10^5 (seed 7) all \
         within 0.05: {}",
        lines.join("; ")
    );
}

/// A10: one config, one seed, two thread counts: the stats CSV is
/// bit-identical. Replica-indexed counter streams plus exact integer
/// moment accumulation make the reduction order invisible.
#[test]
fn a10_thread_count_never_changes_the_numbers() {
    let base = std::env::temp_dir().join("minwalk-acceptance-a10");
    let _ = std::fs::remove_dir_all(&base);
    let mut csvs = Vec::new();
    for threads in ["1", "4"] {
        let dir = base.join(format!("t{threads}"));
        std::fs::create_dir_all(&dir).unwrap();
        let out = std::process::Command::new(env!("CARGO_BIN_EXE_minwalk"))
            .args([
                "simulate", "--p", "0.3", "--q", "0.2", "--s", "0.5", "--n", "16384",
                "--replicas", "20000", "--seed", "7", "--threads", threads,
                "--out-dir", dir.to_str().unwrap(),
            ])
            .output()
            .expect("binary runs");
        assert!(
            out.status.success(),
            "[A10] FAIL  simulate failed at {threads} threads: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        csvs.push(std::fs::read(dir.join("simulate.stats.csv")).unwrap());
    }
    assert_eq!(
        csvs[0], csvs[1],
        "[A10] FAIL  stats CSV differs between 1 and 4 threads"
    );
    let hash_line = String::from_utf8_lossy(&csvs[0]);
    let hash_line = hash_line.lines().next().unwrap_or("").to_string();
    println!(
        "[A10] PASS  stats CSV bit-identical at 1 and 4 threads for n = 16384, \
         R = 20000, seed 7 ({hash_line})"
    );
}

/// A11: the law of the iterated logarithm needs sup-over-time statistics
/// far beyond desk horizons, so the gate is the documented diagnostic:
/// running max of |X_t - E X_t| / (sd(X_t) sqrt(2 log log t)) reported
/// against the predicted constant 1, with only a 10x sanity bound gated
/// and the verdict pinned to diagnostic rather than pass/fail.
#[test]
fn a11_iterated_logarithm_diagnostic_reports_without_gating() {
    let pr = params(0.5, 0.5, 0.5);
    let report = lil_diagnostic(&pr, &VerifyConfig::lil_default()).unwrap();
    assert_eq!(
        report.verdict,
        Verdict::Diagnostic,
        "[A11] FAIL  verdict must stay diagnostic: {}",
        report.summary()
    );
    assert!(
        check_passed(&report, "sanityBound"),
        "[A11] FAIL  running max exceeded 10x the predicted constant"
    );
    let max = estimate(&report, "runningMaxOverPaths");
    let mean_final = estimate(&report, "meanFinalRatio");
    assert!(
        report.targets.iter().any(|t| t.name == "lilConstant"),
        "[A11] FAIL  report must carry the predicted constant"
    );
    println!(
        "[A11] PASS  iterated-logarithm diagnostic on 8 paths to n = 10^7 (seed 7): \
         running max ratio {max:.2}, mean final ratio {mean_final:.2}, sanity bound holds; \
         verdict stays diagnostic because the sup statistic is out of reach at this scale"
    );
}
