//! Randomized center guessing for `p = 2`.
//!
//! The input is treated as `W_n` unit requests. For a random offset
//! `delta in (0, 1)` the single separator is moved to the current position
//! whenever the cumulative unit count reaches the reset point
//! `ceil(x^(i + delta))`, `i = 0, 1, 2, ...`. A reset point falling strictly
//! inside a weight places the separator after that weight; one landing on a
//! weight boundary places it at the boundary (the same physical position).

use crate::fmath;
use crate::seqcore::WeightedSequence;

use super::{GuessCenterConfig, OnlineError, OnlineRun, RunRecorder};

/// `ceil(x^(i + delta))`, snapping powers within 1e-9 relative of an integer
/// to that integer first so float error cannot shift a cut by one.
/// Saturates to `u64::MAX` once the power leaves desk scale.
pub fn reset_threshold(x: f64, delta: f64, i: u32) -> u64 {
    let v = fmath::powf(x, i as f64 + delta);
    if !(v < 4.0e18) {
        return u64::MAX;
    }
    let r = fmath::round(v);
    let snapped = if fmath::abs(v - r) <= 1e-9 * r.max(1.0) { r } else { fmath::ceil(v) };
    snapped as u64
}

/// Largest reset point `<= total`, in the unit domain. `None` when even the
/// first reset point exceeds `total`.
pub fn final_reset_point(x: f64, delta: f64, total: u64) -> Option<u64> {
    let mut last = None;
    for i in 0.. {
        let t = reset_threshold(x, delta, i);
        if t > total {
            break;
        }
        last = Some(t);
    }
    last
}

/// Final bottleneck on a weighted sequence, via its prefix sums (leading 0).
/// O(log n) per call once the prefix sums exist.
pub fn weighted_final_bottleneck(prefix: &[u64], x: f64, delta: f64) -> u64 {
    let total = *prefix.last().expect("prefix sums include the leading 0");
    match final_reset_point(x, delta, total) {
        None => total,
        Some(t) => {
            // first request index whose cumulative weight reaches t
            let j = prefix.partition_point(|&c| c < t);
            let cut = prefix[j]; // separator after request j
            cut.max(total - cut)
        }
    }
}

/// Ratio on the all-ones sequence of length `n`, against `ceil(n / 2)`.
pub fn all_ones_ratio(x: f64, delta: f64, n: u64) -> f64 {
    let bottleneck = match final_reset_point(x, delta, n) {
        None => n,
        Some(t) => t.max(n - t),
    };
    bottleneck as f64 / n.div_ceil(2) as f64
}

/// Full event-log simulation of the center-guessing run.
pub fn guess_center(
    seq: &WeightedSequence,
    cfg: &GuessCenterConfig,
    seed: u64,
) -> Result<OnlineRun, OnlineError> {
    cfg.validate()?;
    let delta = cfg.draw_delta(seed);
    let mut recorder = RunRecorder::new(2);
    let mut cumulative: u64 = 0;
    let mut i: u32 = 0;
    let mut next = reset_threshold(cfg.x, delta, i);
    let mut separator: Option<usize> = None;
    for &w in seq.weights() {
        recorder.observe(w);
        cumulative += w;
        if cumulative >= next {
            // consume every reset point this weight crossed; one move
            while cumulative >= next {
                i += 1;
                next = reset_threshold(cfg.x, delta, i);
            }
            if separator != Some(recorder.current_position()) {
                if let Some(pos) = separator {
                    recorder.remove(pos)?;
                }
                recorder.insert_current()?;
                separator = Some(recorder.current_position());
            }
        }
    }
    let name = if cfg.weighted { "guess-center-weighted" } else { "guess-center" };
    recorder.finish(name, Some(seed), seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqcore::validate_event_stream;
    use alloc::vec;

    #[test]
    fn reset_points_for_spec_instance() {
        // x = 3.052, delta = 0.5: reset points 2, 6, 17...
        assert_eq!(reset_threshold(3.052, 0.5, 0), 2);
        assert_eq!(reset_threshold(3.052, 0.5, 1), 6);
        assert_eq!(reset_threshold(3.052, 0.5, 2), 17);
    }

    #[test]
    fn all_ones_ten_lands_on_six() {
        let seq = WeightedSequence::all_ones(10);
        let cfg = GuessCenterConfig::unweighted().with_x(3.052).with_fixed_delta(0.5);
        let run = guess_center(&seq, &cfg, 0).unwrap();
        assert_eq!(run.final_layout.separators(), &[7]); // after request 6
        assert_eq!(run.bottleneck, 6);
        assert!(validate_event_stream(&seq, &run.events, 2).ok());
    }

    #[test]
    fn snap_guard_hits_exact_center() {
        // x = 3, delta = log_3 6 - 1: the reset point x^(1+delta) = 6 exactly,
        // up to float error the snap guard absorbs.
        let delta = fmath::log2(6.0) / fmath::log2(3.0) - 1.0;
        let seq = WeightedSequence::all_ones(12);
        let cfg = GuessCenterConfig::unweighted().with_x(3.0).with_fixed_delta(delta);
        let run = guess_center(&seq, &cfg, 0).unwrap();
        assert_eq!(run.bottleneck, 6);
        assert_eq!(all_ones_ratio(3.0, delta, 12), 1.0);
    }

    #[test]
    fn closed_form_matches_replay_on_weighted_input() {
        let seq = WeightedSequence::new(vec![3, 7, 2, 2, 11, 1, 5, 8, 4, 6]).unwrap();
        let prefix = seq.prefix_sums();
        for k in 0..40 {
            let delta = (k as f64 + 0.5) / 40.0;
            let cfg = GuessCenterConfig::weighted().with_fixed_delta(delta);
            let run = guess_center(&seq, &cfg, 0).unwrap();
            assert_eq!(
                run.bottleneck,
                weighted_final_bottleneck(&prefix, cfg.x, delta),
                "delta = {delta}"
            );
        }
    }

    #[test]
    fn threshold_saturates() {
        assert_eq!(reset_threshold(3.0, 0.5, 200), u64::MAX);
    }
}
