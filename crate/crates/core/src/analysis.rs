//! Exact distribution of the crossing rank `M` of a uniform random
//! permutation, its upper bound, and a Monte-Carlo estimator.
//!
//! `M` is the side of the smallest top-left square of the `V x V` permutation
//! grid that contains a point. Its tail is
//!
//! ```text
//! P(M > m) = (V-m)! (V-m)! / ((V-2m)! V!)      for 2m <= V, else 0
//! ```
//!
//! so `1 <= M <= floor(V/2) + 1` and `E(M) = sum_{m=0}^{floor(V/2)} P(M > m)`.

use rayon::prelude::*;

use crate::generators::{gen_permutation_with, trial_rng};
use crate::kernel::crossing_rank;

/// `ln(k!)` for `k = 0..=max`, built as a running sum of logarithms.
#[derive(Debug, Clone)]
pub struct LogFactorialTable {
    table: Vec<f64>,
}

impl LogFactorialTable {
    pub fn new(max: usize) -> Self {
        let mut table = Vec::with_capacity(max + 1);
        let mut acc = 0.0f64;
        table.push(acc);
        for k in 1..=max {
            acc += (k as f64).ln();
            table.push(acc);
        }
        LogFactorialTable { table }
    }

    pub fn max(&self) -> usize {
        self.table.len() - 1
    }

    /// `ln(k!)`. Panics if `k` exceeds the table.
    #[inline]
    pub fn ln_factorial(&self, k: usize) -> f64 {
        self.table[k]
    }

    /// `P(M > m)` for permutations of size `v <= self.max()`.
    pub fn tail(&self, v: usize, m: usize) -> f64 {
        if m == 0 {
            return 1.0;
        }
        if 2 * m > v {
            return 0.0;
        }
        let ln = 2.0 * self.ln_factorial(v - m) - self.ln_factorial(v - 2 * m) - self.ln_factorial(v);
        ln.exp().min(1.0)
    }
}

/// `P(M > m)` for a uniform random permutation of size `v`.
pub fn tail_probability(v: usize, m: usize) -> f64 {
    if m == 0 {
        return 1.0;
    }
    if 2 * m > v {
        return 0.0;
    }
    LogFactorialTable::new(v).tail(v, m)
}

/// `E(M) = sum_{m=0}^{floor(v/2)} P(M > m)`.
#[allow(non_snake_case)]
pub fn exact_expected_M(v: usize) -> f64 {
    assert!(v >= 1, "v must be at least 1");
    let table = LogFactorialTable::new(v);
    (0..=v / 2).map(|m| table.tail(v, m)).sum()
}

/// Tail for a region of width `f` filled by sampling rows without replacement:
/// `prod_{i=0}^{m} (1 - f / (v - i))`, each factor clamped at 0.
pub fn sampling_tail_no_replacement(v: usize, m: usize, f: f64) -> f64 {
    let mut p = 1.0;
    for i in 0..=m {
        let remaining = v as f64 - i as f64;
        let factor = if remaining <= 0.0 {
            if f > 0.0 {
                0.0
            } else {
                1.0
            }
        } else {
            (1.0 - f / remaining).max(0.0)
        };
        p *= factor;
        if p == 0.0 {
            break;
        }
    }
    p
}

/// Tail when each row picks an independent uniform column: `(1 - f/v)^m`.
pub fn sampling_tail_with_replacement(v: usize, m: usize, f: f64) -> f64 {
    let q = 1.0 - f / v as f64;
    q.powf(m as f64)
}

/// Geometric-series bound `V / f(V)` with `f(V) = sqrt(V)`, i.e. `sqrt(V)`.
pub fn expected_upper_bound(v: usize) -> f64 {
    (v as f64).sqrt()
}

/// Tabulated tail, expectation and bound for one `v`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityCurve {
    pub v: usize,
    /// `tail[m] = P(M > m)` for `m = 0..=floor(v/2)`; zero beyond.
    pub tail: Vec<f64>,
    pub expected_m: f64,
    pub upper_bound: f64,
}

impl ProbabilityCurve {
    pub fn new(v: usize) -> Self {
        assert!(v >= 1, "v must be at least 1");
        let table = LogFactorialTable::new(v);
        let tail: Vec<f64> = (0..=v / 2).map(|m| table.tail(v, m)).collect();
        let expected_m = tail.iter().sum();
        ProbabilityCurve {
            v,
            tail,
            expected_m,
            upper_bound: expected_upper_bound(v),
        }
    }

    pub fn tail_at(&self, m: usize) -> f64 {
        self.tail.get(m).copied().unwrap_or(0.0)
    }
}

/// Sample mean of `M` and its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub trials: usize,
}

/// Estimates `E(M)` from `trials` uniform permutations. Trial `t` draws from a
/// generator keyed by `(seed, t)`, so the result does not depend on thread
/// scheduling.
#[allow(non_snake_case)]
pub fn monte_carlo_M(v: usize, trials: usize, seed: u64) -> MonteCarloEstimate {
    assert!(v >= 1 && trials >= 1, "v and trials must be at least 1");
    let samples: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let perm = gen_permutation_with(v, &mut trial_rng(seed, t as u64));
            crossing_rank(&perm) as f64
        })
        .collect();
    let (mean, stderr) = mean_and_stderr(&samples);
    MonteCarloEstimate {
        mean,
        stderr,
        trials,
    }
}

/// Sample mean and standard error of the mean (0 for a single sample).
pub fn mean_and_stderr(samples: &[f64]) -> (f64, f64) {
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    if samples.len() < 2 {
        return (mean, 0.0);
    }
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tail_small_values() {
        assert!((tail_probability(2, 1) - 0.5).abs() < 1e-15);
        assert!((tail_probability(4, 2) - 1.0 / 6.0).abs() < 1e-15);
        for v in 1..20 {
            assert_eq!(tail_probability(v, 0), 1.0);
        }
        assert_eq!(tail_probability(4, 3), 0.0);
        assert_eq!(tail_probability(1, 1), 0.0);
    }

    #[test]
    fn expectation_small_values() {
        assert_eq!(exact_expected_M(1), 1.0);
        assert!((exact_expected_M(2) - 1.5).abs() < 1e-15);
        assert!((exact_expected_M(3) - 5.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn sampling_tails() {
        for m in 0..5 {
            assert_eq!(sampling_tail_no_replacement(10, m, 0.0), 1.0);
        }
        assert!((sampling_tail_no_replacement(10, 0, 1.0) - 0.9).abs() < 1e-15);
        assert!((sampling_tail_no_replacement(4, 1, 2.0) - 1.0 / 6.0).abs() < 1e-15);
        assert_eq!(sampling_tail_with_replacement(7, 0, 3.0), 1.0);
        assert!((sampling_tail_with_replacement(100, 1, 10.0) - 0.9).abs() < 1e-15);
        // width beyond the remaining rows clamps to zero
        assert_eq!(sampling_tail_no_replacement(4, 2, 3.5), 0.0);
    }

    #[test]
    fn upper_bound_values() {
        assert_eq!(expected_upper_bound(1), 1.0);
        assert_eq!(expected_upper_bound(100), 10.0);
        assert_eq!(expected_upper_bound(10_000), 100.0);
    }

    #[test]
    fn curve_invariants() {
        for v in [1, 2, 7, 50, 1001] {
            let c = ProbabilityCurve::new(v);
            assert_eq!(c.tail_at(0), 1.0);
            assert!(c.tail.windows(2).all(|w| w[1] <= w[0]));
            assert_eq!(c.tail_at(v / 2 + 1), 0.0);
            assert!(c.expected_m >= 1.0 && c.expected_m <= (v / 2 + 1) as f64);
            assert!((c.expected_m - exact_expected_M(v)).abs() < 1e-12);
        }
    }

    #[test]
    fn monte_carlo_trivial_and_deterministic() {
        let r = monte_carlo_M(1, 10, 3);
        assert_eq!(r.mean, 1.0);
        assert_eq!(r.stderr, 0.0);
        assert_eq!(monte_carlo_M(50, 200, 9), monte_carlo_M(50, 200, 9));
    }

    #[test]
    fn monte_carlo_two() {
        let r = monte_carlo_M(2, 20_000, 1);
        assert!((r.mean - 1.5).abs() < 4.0 * r.stderr, "{r:?}");
    }

    #[test]
    fn stderr_of_constant_is_zero() {
        assert_eq!(mean_and_stderr(&[2.0, 2.0, 2.0]), (2.0, 0.0));
    }
}
