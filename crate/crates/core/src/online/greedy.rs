//! Deterministic 2-competitive algorithm for arbitrary `p`.
//!
//! Per request `x`: update the running total `S` and maximum `m`, set the
//! bound `B = max(2m, ceil(2S / p))`, and regroup by sweeping the greedy
//! probe over the current partition weights with `x` appended. Probe groups
//! merge adjacent partitions; realizing a merge removes the separators
//! interior to the group.
//!
//! A cut directly before `x` is only realizable if a separator already sits
//! after the previous request. The algorithm therefore keeps a *frontier*
//! separator at the current position whenever the budget allows, so the next
//! request starts in a fresh empty partition and probe is free to leave it
//! alone. When all `p` partitions are occupied the budget is spent, the
//! frontier is dropped, and an arriving request falls into the open last
//! partition; the probe view folds `x` into that partition, every group
//! boundary then coincides with a separator already in place, and the
//! regrouping stays realizable. The per-step check `bottleneck <= B` guards
//! the competitive guarantee either way.

use alloc::vec::Vec;

use crate::seqcore::WeightedSequence;

use super::{OnlineError, OnlineRun, RunRecorder};

pub struct GreedyTwoApprox {
    p: usize,
    total: u64,
    max_elem: u64,
    /// Weights of the partitions currently delimited by separators; the last
    /// entry is the empty frontier partition when `frontier` is set.
    blocks: Vec<u64>,
    frontier: bool,
    recorder: RunRecorder,
}

impl GreedyTwoApprox {
    pub fn new(p: usize) -> Result<Self, OnlineError> {
        if p < 2 {
            return Err(OnlineError::PartitionCountTooSmall { p });
        }
        Ok(Self {
            p,
            total: 0,
            max_elem: 0,
            blocks: alloc::vec![0],
            frontier: false,
            recorder: RunRecorder::new(p),
        })
    }

    /// Probe bound after the requests seen so far.
    pub fn bound(&self) -> u64 {
        (2 * self.max_elem).max((2 * self.total).div_ceil(self.p as u64))
    }

    pub fn bottleneck(&self) -> u64 {
        self.blocks.iter().copied().max().unwrap_or(0)
    }

    pub fn blocks(&self) -> &[u64] {
        &self.blocks
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn max_element(&self) -> u64 {
        self.max_elem
    }

    pub fn push(&mut self, x: u64) -> Result<(), OnlineError> {
        self.recorder.observe(x);
        self.total = self
            .total
            .checked_add(x)
            .ok_or(OnlineError::Seq(crate::seqcore::SeqError::TotalOverflow))?;
        self.max_elem = self.max_elem.max(x);
        let bound = self.bound();

        // Probe view: the physical blocks with x folded into the open last
        // block (which is empty exactly when a frontier separator is up).
        // Boundary b between view items b and b+1 is the b-th separator.
        let mut view: Vec<u64> = self.blocks.clone();
        *view.last_mut().expect("at least one block") += x;
        let mut groups: Vec<u64> = Vec::with_capacity(self.p);
        let mut kept: Vec<usize> = Vec::with_capacity(self.p);
        let mut current: u64 = 0;
        for (idx, &w) in view.iter().enumerate() {
            if idx > 0 && current + w > bound {
                kept.push(idx - 1);
                groups.push(current);
                current = 0;
            }
            current += w;
        }
        groups.push(current);

        if groups.len() > self.p {
            return Err(OnlineError::InternalInvariant("probe produced more than p partitions"));
        }

        // Remove separators interior to the merged groups (all boundaries not
        // kept), from the right so positions stay valid.
        let positions: Vec<usize> = self.recorder.separators().to_vec();
        debug_assert_eq!(positions.len() + 1, self.blocks.len());
        for b in (0..positions.len()).rev() {
            if !kept.contains(&b) {
                self.recorder.remove(positions[b])?;
            }
        }

        self.blocks = groups;
        self.frontier = self.blocks.len() <= self.p - 1;
        if self.frontier {
            self.recorder.insert_current()?;
            self.blocks.push(0);
        }

        if self.bottleneck() > bound {
            return Err(OnlineError::InternalInvariant("bottleneck exceeded the probe bound"));
        }
        Ok(())
    }

    pub fn finish(self, seq: &WeightedSequence) -> Result<OnlineRun, OnlineError> {
        self.recorder.finish("greedy-two-approx", None, seq)
    }
}

/// Runs the full sequence through [`GreedyTwoApprox`].
pub fn greedy_two_approx(seq: &WeightedSequence, p: usize) -> Result<OnlineRun, OnlineError> {
    let mut alg = GreedyTwoApprox::new(p)?;
    for &w in seq.weights() {
        alg.push(w)?;
    }
    alg.finish(seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::offline::optimal_bottleneck;
    use crate::seqcore::validate_event_stream;
    use alloc::vec;
    use alloc::vec::Vec;

    #[test]
    fn single_element_is_optimal() {
        let seq = WeightedSequence::new(vec![1]).unwrap();
        let run = greedy_two_approx(&seq, 4).unwrap();
        assert_eq!(run.bottleneck, 1);
    }

    #[test]
    fn all_ones_stays_within_twice_optimal() {
        for p in 2..9usize {
            for k in 0..8u32 {
                let n = (1usize << k) * p;
                let seq = WeightedSequence::all_ones(n);
                let run = greedy_two_approx(&seq, p).unwrap();
                let opt = optimal_bottleneck(&seq, p).unwrap();
                assert!(
                    run.bottleneck <= 2 * opt,
                    "n={n} p={p}: {} > 2*{opt}",
                    run.bottleneck
                );
                assert!(validate_event_stream(&seq, &run.events, p).ok());
            }
        }
    }

    #[test]
    fn per_step_bound_holds_on_random_instances() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for trial in 0..300 {
            let p = 2 + (next() % 7) as usize;
            let n = 1 + (next() % 60) as usize;
            let weights: Vec<u64> = (0..n).map(|_| 1 + next() % 50).collect();
            let seq = WeightedSequence::new(weights).unwrap();
            let mut alg = GreedyTwoApprox::new(p).unwrap();
            for (i, &w) in seq.weights().iter().enumerate() {
                alg.push(w).unwrap();
                // per-step: bottleneck <= B <= 2 * optimal of the prefix
                let prefix = WeightedSequence::new(seq.weights()[..=i].to_vec()).unwrap();
                let opt = optimal_bottleneck(&prefix, p).unwrap();
                assert!(alg.bottleneck() <= alg.bound(), "trial {trial}");
                assert!(alg.bound() <= 2 * opt, "trial {trial}");
            }
            let run = alg.finish(&seq).unwrap();
            let diag = validate_event_stream(&seq, &run.events, p);
            assert!(diag.ok(), "trial {trial}: {:?}", diag.violations);
        }
    }

    #[test]
    fn deterministic_replay() {
        let seq = WeightedSequence::new(vec![5, 1, 9, 2, 2, 7, 3]).unwrap();
        let a = greedy_two_approx(&seq, 3).unwrap();
        let b = greedy_two_approx(&seq, 3).unwrap();
        assert_eq!(a.events, b.events);
    }
}
