//! Evaluation engine: deterministic quadrature over the random offset,
//! seeded Monte Carlo, and the report type everything serializes into.

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::fmath;
use crate::online::{derive_seed, final_reset_point};

/// One labelled slice of a report (per length, per state, per policy...).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BreakdownRow {
    pub label: String,
    pub trials: u64,
    pub mean: f64,
    pub max: f64,
}

/// Competitive-ratio statistics with the reference constant they are
/// measured against.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioReport {
    pub algorithm: String,
    pub instance: String,
    pub trials: u64,
    pub mean: f64,
    pub max: f64,
    pub std_error: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub breakdown: Vec<BreakdownRow>,
    /// Constant the run reproduces, when one exists.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference: Option<f64>,
    /// Acceptable |mean - reference|, when asserted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    /// Pass/fail against reference and tolerance, when asserted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
}

impl RatioReport {
    /// Fills `pass` from `|mean - reference| <= tolerance`.
    pub fn judged(mut self, reference: f64, tolerance: f64) -> Self {
        self.reference = Some(reference);
        self.tolerance = Some(tolerance);
        self.pass = Some(fmath::abs(self.mean - reference) <= tolerance);
        self
    }
}

/// Running mean/max/variance accumulator (Welford).
#[derive(Debug, Clone, Default)]
pub struct RatioStats {
    count: u64,
    mean: f64,
    m2: f64,
    max: f64,
}

impl RatioStats {
    pub fn push(&mut self, value: f64) {
        self.count += 1;
        let delta = value - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (value - self.mean);
        if value > self.max || self.count == 1 {
            self.max = value;
        }
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    /// Sample standard deviation (n - 1 denominator); 0 below two samples.
    pub fn std_dev(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            fmath::sqrt(self.m2 / (self.count - 1) as f64)
        }
    }

    /// `std_dev / sqrt(count)`.
    pub fn std_error(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            self.std_dev() / fmath::sqrt(self.count as f64)
        }
    }

    pub fn report(&self, algorithm: &str, instance: &str) -> RatioReport {
        RatioReport {
            algorithm: String::from(algorithm),
            instance: String::from(instance),
            trials: self.count,
            mean: self.mean,
            max: self.max,
            std_error: self.std_error(),
            breakdown: Vec::new(),
            reference: None,
            tolerance: None,
            pass: None,
        }
    }
}

/// Runs `trials` independent seeded trials of `ratio_fn` and aggregates.
/// Trial `i` receives the seed derived from `(seed, i)`, so results do not
/// depend on evaluation order.
pub fn monte_carlo<F: FnMut(u64) -> f64>(
    algorithm: &str,
    instance: &str,
    trials: u64,
    seed: u64,
    mut ratio_fn: F,
) -> RatioReport {
    let mut stats = RatioStats::default();
    for i in 0..trials {
        stats.push(ratio_fn(derive_seed(seed, i)));
    }
    stats.report(algorithm, instance)
}

/// Expected ratio of center guessing on the all-ones sequence of length `n`,
/// by midpoint quadrature over the offset in (0, 1).
///
/// The integrand is piecewise smooth with O(log_x n) breakpoints, so the
/// default 2e5-point grid leaves quadrature error far below the reported
/// tolerances. Each evaluation costs O(log n) via the final reset point.
pub fn expected_ratio_quadrature(x: f64, n: u64, grid: usize) -> f64 {
    let grid = grid.max(100_000);
    let optimal = n.div_ceil(2) as f64;
    let mut acc = 0.0f64;
    for k in 0..grid {
        let delta = (k as f64 + 0.5) / grid as f64;
        let bottleneck = match final_reset_point(x, delta, n) {
            None => n,
            Some(t) => t.max(n - t),
        };
        acc += bottleneck as f64 / optimal;
    }
    acc / grid as f64
}

/// Default quadrature grid.
pub const QUADRATURE_GRID: usize = 200_000;
