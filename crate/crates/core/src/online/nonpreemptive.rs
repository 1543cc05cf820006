//! Non-preemptive baselines: once a separator is placed it stays. Used to
//! exhibit the Omega(p) gap between the two online models.

use alloc::vec::Vec;

use crate::seqcore::WeightedSequence;

use super::{OnlineError, OnlineRun, RunRecorder};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NonPreemptivePolicy {
    /// Single partition; trivially p-competitive.
    NeverPlace,
    /// Cut whenever the cumulative weight crosses a multiple of `quota`,
    /// while separators remain.
    EqualQuota { quota: u64 },
}

/// Runs a non-preemptive policy; the event log contains no removals.
pub fn nonpreemptive_baseline(
    seq: &WeightedSequence,
    p: usize,
    policy: NonPreemptivePolicy,
) -> Result<OnlineRun, OnlineError> {
    if p < 2 {
        return Err(OnlineError::PartitionCountTooSmall { p });
    }
    if let NonPreemptivePolicy::EqualQuota { quota: 0 } = policy {
        return Err(OnlineError::ZeroQuota);
    }
    let mut recorder = RunRecorder::new(p);
    let mut cumulative: u64 = 0;
    for &w in seq.weights() {
        recorder.observe(w);
        let before = cumulative;
        cumulative += w;
        if let NonPreemptivePolicy::EqualQuota { quota } = policy {
            if cumulative / quota > before / quota && recorder.separators().len() < p - 1 {
                recorder.insert_current()?;
            }
        }
    }
    recorder.finish("non-preemptive", None, seq)
}

/// Separator positions the quota policy places on a long enough all-ones
/// sequence: after requests `quota, 2*quota, ...`, at most `p - 1` of them.
pub fn quota_separator_positions(quota: u64, p: usize) -> Vec<usize> {
    (1..p).map(|j| (j as u64 * quota + 1) as usize).collect()
}
