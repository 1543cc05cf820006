//! Online partitioning of a continuous unit-rate flow, driven by the
//! scheme's emitted states.
//!
//! The transition from state `X_i` to `X_{i+1}` is two steps: the merge
//! (either freeing a slot, after which a fresh empty partition opens at the
//! right, or growing the open partition's target), then a fill of the last
//! partition up to `X_{i+1}[p]`. A stop mid-fill leaves the first `p - 1`
//! partitions at `X_{i+1}[1..p-1]` and the last at the residual fill level.
//! When a cycle completes, the final state is the initial configuration
//! scaled by `F = sum(S_1) / alpha`, so the run repeats with everything
//! scaled by `F`.

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::scheme::{periodic_scheme, SchemeTrace};
use super::SchemeError;
use crate::fmath;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FlowOutcome {
    /// Stop time, in scheme units (the warm-up period is `sum(X_1)`).
    pub t_max: f64,
    /// Final partition weights; they sum to `t_max`.
    pub weights: Vec<f64>,
    pub bottleneck: f64,
    /// `t_max / p`: a continuous flow splits perfectly.
    pub optimal: f64,
    pub ratio: f64,
}

/// Reusable simulator: build once per `(p, x)`, run many stop times.
pub struct FlowSimulator {
    trace: SchemeTrace,
    /// Running totals `sum(X_i)` per emitted state; strictly increasing.
    totals: Vec<f64>,
    /// Per-cycle scale factor.
    factor: f64,
}

impl FlowSimulator {
    pub fn new(p: usize, x: f64) -> Result<Self, SchemeError> {
        let trace = periodic_scheme(p, x)?;
        Ok(Self::from_trace(trace))
    }

    pub fn from_trace(trace: SchemeTrace) -> Self {
        let totals = trace.state_sums();
        let factor = trace.states.last().expect("non-empty trace")[0] / trace.states[0][0];
        Self { trace, totals, factor }
    }

    pub fn trace(&self) -> &SchemeTrace {
        &self.trace
    }

    /// Warm-up period `t_0 = sum(X_1)` in scheme units.
    pub fn warm_up(&self) -> f64 {
        self.totals[0]
    }

    pub fn cycle_factor(&self) -> f64 {
        self.factor
    }

    /// Partition weights when the flow stops at `t_max >= t_0`.
    pub fn run(&self, t_max: f64) -> Result<FlowOutcome, SchemeError> {
        let t0 = self.totals[0];
        let last = *self.totals.last().expect("non-empty totals");
        if t_max < t0 * (1.0 - 1e-12) {
            return Err(SchemeError::BeforeWarmUp);
        }
        // cycle c scales the whole trace by factor^c
        let mut cycle = fmath::floor(fmath::ln(t_max / t0) / fmath::ln(self.factor)).max(0.0);
        let mut tau = t_max / fmath::powf(self.factor, cycle);
        while tau > last * (1.0 + 1e-12) {
            cycle += 1.0;
            tau = t_max / fmath::powf(self.factor, cycle);
        }
        while tau < t0 * (1.0 - 1e-12) && cycle > 0.0 {
            cycle -= 1.0;
            tau = t_max / fmath::powf(self.factor, cycle);
        }
        let scale = fmath::powf(self.factor, cycle);

        let p = self.trace.p;
        let idx = self.totals.partition_point(|&s| s < tau * (1.0 - 1e-12));
        let mut weights: Vec<f64>;
        if idx >= self.totals.len() {
            // numerically at the cycle boundary
            weights = self.trace.states.last().unwrap().clone();
        } else if fmath::approx_eq(self.totals[idx], tau, 1e-12) {
            weights = self.trace.states[idx].clone();
        } else {
            // mid-fill toward state idx (tau < totals[idx]): the first p - 1
            // partitions already hold X_idx[..p-1], the last holds the rest
            debug_assert!(idx > 0, "tau below the warm-up was rejected above");
            let target = &self.trace.states[idx];
            let head: f64 = target[..p - 1].iter().sum();
            let fill = tau - head;
            debug_assert!(
                fill >= -1e-9 * tau && fill <= target[p - 1] * (1.0 + 1e-9),
                "fill {fill} out of range (target {})",
                target[p - 1]
            );
            weights = target[..p - 1].to_vec();
            weights.push(fill.max(0.0));
        }
        for w in &mut weights {
            *w *= scale;
        }
        let bottleneck = weights.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let t_real = tau * scale;
        let optimal = t_real / p as f64;
        Ok(FlowOutcome { t_max: t_real, weights, bottleneck, optimal, ratio: bottleneck / optimal })
    }
}

/// One-shot convenience wrapper around [`FlowSimulator`].
pub fn flow_simulate(p: usize, x: f64, t_max: f64) -> Result<FlowOutcome, SchemeError> {
    FlowSimulator::new(p, x)?.run(t_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fmath::approx_eq;

    #[test]
    fn stop_at_cycle_boundary_reproduces_the_initial_shape() {
        let sim = FlowSimulator::new(4, 2.0).unwrap();
        let f = sim.cycle_factor();
        for cycle in 0..3 {
            let t = sim.warm_up() * fmath::powf(f, cycle as f64);
            let out = sim.run(t).unwrap();
            let first = &sim.trace().states[0];
            let expected_ratio = {
                let sum: f64 = first.iter().sum();
                let max = first.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                4.0 * max / sum
            };
            assert!(approx_eq(out.ratio, expected_ratio, 1e-9), "cycle {cycle}");
        }
    }

    #[test]
    fn flow_is_conserved_at_every_stop() {
        let sim = FlowSimulator::new(8, 2.0).unwrap();
        let t0 = sim.warm_up();
        let span = fmath::powf(sim.cycle_factor(), 3.0);
        for k in 0..2000 {
            let t = t0 * fmath::powf(span, (k as f64 + 0.5) / 2000.0);
            let out = sim.run(t).unwrap();
            let total: f64 = out.weights.iter().sum();
            assert!(approx_eq(total, out.t_max, 1e-9), "t = {t}");
            assert!(approx_eq(out.t_max, t, 1e-9));
        }
    }

    #[test]
    fn ratio_never_exceeds_the_state_bound_times_growth() {
        // worst mid-fill ratio <= (p + 4) / p * max state ratio
        for p in [4usize, 8, 16] {
            let sim = FlowSimulator::new(p, 2.0).unwrap();
            let report = super::super::scheme::scheme_ratio(sim.trace());
            let cap = (p as f64 + 4.0) / p as f64 * report.max_ratio;
            let t0 = sim.warm_up();
            let span = fmath::powf(sim.cycle_factor(), 2.0);
            for k in 0..4000 {
                let t = t0 * fmath::powf(span, (k as f64 + 0.5) / 4000.0);
                let out = sim.run(t).unwrap();
                assert!(out.ratio <= cap * (1.0 + 1e-9), "p={p} t={t}: {} > {cap}", out.ratio);
            }
        }
    }

    #[test]
    fn premature_stop_is_rejected() {
        let sim = FlowSimulator::new(4, 2.0).unwrap();
        assert!(matches!(sim.run(sim.warm_up() * 0.5), Err(SchemeError::BeforeWarmUp)));
    }
}
