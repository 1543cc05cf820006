//! Closed-form expected-ratio objectives for center guessing and their
//! numeric minimization.

use crate::fmath;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatioObjective {
    /// All-ones sequences: `f(x) = 2 - 2 log_x 2 + 2 / (x ln x)`.
    Unweighted,
    /// Arbitrary weights: `g(x) = 2 + 2 / (x ln x) - 1 / ln x`.
    Weighted,
}

/// Evaluates the objective at growth base `x > 1`.
pub fn objective_value(objective: RatioObjective, x: f64) -> f64 {
    let lnx = fmath::ln(x);
    match objective {
        RatioObjective::Unweighted => 2.0 - 2.0 * fmath::ln(2.0) / lnx + 2.0 / (x * lnx),
        RatioObjective::Weighted => 2.0 + 2.0 / (x * lnx) - 1.0 / lnx,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizedBase {
    pub x: f64,
    pub value: f64,
}

/// Minimizes the objective over `x in (2, 20)` by golden-section search to
/// an interval of 1e-6.
pub fn optimize_x(objective: RatioObjective) -> OptimizedBase {
    let phi = (fmath::sqrt(5.0) - 1.0) / 2.0;
    let mut lo = 2.0f64 + 1e-9;
    let mut hi = 20.0f64;
    let mut c = hi - phi * (hi - lo);
    let mut d = lo + phi * (hi - lo);
    let mut fc = objective_value(objective, c);
    let mut fd = objective_value(objective, d);
    while hi - lo > 1e-6 {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - phi * (hi - lo);
            fc = objective_value(objective, c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + phi * (hi - lo);
            fd = objective_value(objective, d);
        }
    }
    let x = 0.5 * (lo + hi);
    OptimizedBase { x, value: objective_value(objective, x) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::online::{UNWEIGHTED_BASE, WEIGHTED_BASE};

    #[test]
    fn unweighted_minimum() {
        let opt = optimize_x(RatioObjective::Unweighted);
        assert!((opt.x - 3.052).abs() < 0.01, "x = {}", opt.x);
        assert!((opt.value - 1.344).abs() < 0.002, "value = {}", opt.value);
        assert!((opt.x - UNWEIGHTED_BASE).abs() < 1e-4);
    }

    #[test]
    fn weighted_minimum() {
        let opt = optimize_x(RatioObjective::Weighted);
        assert!((opt.x - 5.357).abs() < 0.01, "x = {}", opt.x);
        assert!((opt.value - 1.627).abs() < 0.002, "value = {}", opt.value);
        assert!((opt.x - WEIGHTED_BASE).abs() < 1e-4);
    }

    #[test]
    fn objective_at_four() {
        // 2 - 2 log_4 2 + 2 / (4 ln 4) = 1 + 1 / (2 ln 4)
        let v = objective_value(RatioObjective::Unweighted, 4.0);
        assert!((v - 1.360674).abs() < 1e-5, "f(4) = {v}");
    }
}
