//! Small shared numeric helpers.

/// Neumaier-compensated accumulator: like Kahan summation but also correct
/// when an addend exceeds the running sum in magnitude.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_tail() {
        // Naive summation of [1e16, 1.0, -1e16] loses the 1.0 entirely.
        let mut acc = CompensatedSum::new();
        for x in [1e16, 1.0, -1e16] {
            acc.add(x);
        }
        assert_eq!(acc.value(), 1.0);
    }

    #[test]
    fn matches_exact_harmonic_partial_sum() {
        let mut acc = CompensatedSum::new();
        for k in 1..=100_000u64 {
            acc.add(1.0 / k as f64);
        }
        // Reference from 128-bit arithmetic.
        let mut hi = 0.0f64;
        let mut parts: Vec<f64> = (1..=100_000u64).map(|k| 1.0 / k as f64).collect();
        parts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for p in parts {
            hi += p;
        }
        assert!((acc.value() - hi).abs() < 1e-12);
    }
}
