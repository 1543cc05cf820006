//! Core data model: weighted sequences, partition layouts, and the preemptive
//! online event model.
//!
//! Separator positions are 1-based: a separator at position `s` sits after
//! request `s - 1` and before request `s`, with implicit sentinels `s_0 = 1`
//! and `s_p = n + 1`. Equal adjacent separators are allowed and denote an
//! empty partition of weight 0.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeqError {
    /// A weight smaller than 1 was supplied.
    NonPositiveWeight { index: usize },
    /// The total weight does not fit in 64 bits.
    TotalOverflow,
    /// A separator lies outside `[1, n + 1]`.
    SeparatorOutOfRange { position: usize, n: usize },
    /// More than `p - 1` separators.
    TooManySeparators { count: usize, p: usize },
    /// Separator list is not sorted.
    UnsortedSeparators,
    /// `p` must be at least 1.
    InvalidPartitionCount,
}

impl fmt::Display for SeqError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqError::NonPositiveWeight { index } => {
                write!(f, "weight at index {index} must be >= 1")
            }
            SeqError::TotalOverflow => write!(f, "total weight overflows u64"),
            SeqError::SeparatorOutOfRange { position, n } => {
                write!(f, "separator {position} outside [1, {}]", n + 1)
            }
            SeqError::TooManySeparators { count, p } => {
                write!(f, "{count} separators exceed p - 1 = {}", p - 1)
            }
            SeqError::UnsortedSeparators => write!(f, "separators must be sorted"),
            SeqError::InvalidPartitionCount => write!(f, "p must be >= 1"),
        }
    }
}

impl core::error::Error for SeqError {}

/// A finite sequence of positive integer weights.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedSequence {
    weights: Vec<u64>,
    total: u64,
    max_w: u64,
}

impl WeightedSequence {
    /// Builds a sequence, rejecting zero weights and 64-bit total overflow.
    pub fn new(weights: Vec<u64>) -> Result<Self, SeqError> {
        let mut total: u64 = 0;
        let mut max_w: u64 = 0;
        for (index, &w) in weights.iter().enumerate() {
            if w == 0 {
                return Err(SeqError::NonPositiveWeight { index });
            }
            total = total.checked_add(w).ok_or(SeqError::TotalOverflow)?;
            max_w = max_w.max(w);
        }
        Ok(Self { weights, total, max_w })
    }

    /// The all-ones sequence of length `n`.
    pub fn all_ones(n: usize) -> Self {
        Self { weights: alloc::vec![1; n], total: n as u64, max_w: if n == 0 { 0 } else { 1 } }
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Total weight `W_n`.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// Maximum single weight.
    pub fn max_weight(&self) -> u64 {
        self.max_w
    }

    /// Prefix sums with a leading 0, so `prefix[i]` is the weight of the
    /// first `i` requests.
    pub fn prefix_sums(&self) -> Vec<u64> {
        let mut prefix = Vec::with_capacity(self.weights.len() + 1);
        prefix.push(0);
        let mut acc = 0u64;
        for &w in &self.weights {
            acc += w;
            prefix.push(acc);
        }
        prefix
    }
}

/// Separator positions plus the implied partition weights.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionLayout {
    p: usize,
    separators: Vec<usize>,
}

impl PartitionLayout {
    pub fn new(p: usize, separators: Vec<usize>) -> Result<Self, SeqError> {
        if p == 0 {
            return Err(SeqError::InvalidPartitionCount);
        }
        if separators.len() > p - 1 {
            return Err(SeqError::TooManySeparators { count: separators.len(), p });
        }
        if separators.windows(2).any(|w| w[0] > w[1]) {
            return Err(SeqError::UnsortedSeparators);
        }
        Ok(Self { p, separators })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn separators(&self) -> &[usize] {
        &self.separators
    }

    /// Weights of all `p` partitions under this layout, trailing empty
    /// partitions included.
    pub fn partition_weights(&self, seq: &WeightedSequence) -> Result<Vec<u64>, SeqError> {
        let n = seq.len();
        let prefix = seq.prefix_sums();
        let mut weights = Vec::with_capacity(self.p);
        let mut start = 1usize; // s_0 = 1
        for &s in &self.separators {
            if s < 1 || s > n + 1 {
                return Err(SeqError::SeparatorOutOfRange { position: s, n });
            }
            weights.push(prefix[s - 1] - prefix[start - 1]);
            start = s;
        }
        weights.push(prefix[n] - prefix[start - 1]); // up to s_p = n + 1
        while weights.len() < self.p {
            weights.push(0);
        }
        Ok(weights)
    }
}

/// Maximum partition weight of `layout` on `seq`.
pub fn bottleneck(seq: &WeightedSequence, layout: &PartitionLayout) -> Result<u64, SeqError> {
    Ok(layout.partition_weights(seq)?.into_iter().max().unwrap_or(0))
}

/// One step of a preemptive online run.
///
/// Inserts carry the position they target so illegal streams (inserting at a
/// non-current position) are expressible and rejected by the referee.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OnlineEvent {
    Observe { weight: u64 },
    Insert { position: usize },
    Remove { position: usize },
}

/// Outcome of [`validate_event_stream`], with one entry per violation.
#[derive(Debug, Clone, Default)]
pub struct StreamDiagnostics {
    pub violations: Vec<String>,
}

impl StreamDiagnostics {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Referee for preemptive online legality.
///
/// Accepts iff: observed weights match `seq` in order, every insert targets
/// the position straight after the current request (and at least one request
/// has been observed), every removal targets a separator currently in place,
/// and the separator count never exceeds `p - 1`.
pub fn validate_event_stream(
    seq: &WeightedSequence,
    events: &[OnlineEvent],
    p: usize,
) -> StreamDiagnostics {
    use alloc::format;
    let mut diag = StreamDiagnostics::default();
    if p == 0 {
        diag.violations.push(String::from("p must be >= 1"));
        return diag;
    }
    let mut observed = 0usize;
    let mut separators: Vec<usize> = Vec::new();
    for (step, ev) in events.iter().enumerate() {
        match *ev {
            OnlineEvent::Observe { weight } => {
                match seq.weights().get(observed) {
                    Some(&w) if w == weight => {}
                    Some(&w) => diag.violations.push(format!(
                        "step {step}: observed weight {weight} but sequence has {w} at request {}",
                        observed + 1
                    )),
                    None => diag
                        .violations
                        .push(format!("step {step}: observed beyond sequence end")),
                }
                observed += 1;
            }
            OnlineEvent::Insert { position } => {
                if observed == 0 {
                    diag.violations
                        .push(format!("step {step}: insert before any request"));
                } else if position != observed + 1 {
                    diag.violations.push(format!(
                        "step {step}: insert at {position} but current position is {}",
                        observed + 1
                    ));
                }
                if separators.len() + 1 > p.saturating_sub(1) {
                    diag.violations.push(format!(
                        "step {step}: insert would exceed {} separators",
                        p - 1
                    ));
                }
                let idx = separators.partition_point(|&s| s <= position);
                separators.insert(idx, position);
            }
            OnlineEvent::Remove { position } => {
                match separators.iter().position(|&s| s == position) {
                    Some(idx) => {
                        separators.remove(idx);
                    }
                    None => diag.violations.push(format!(
                        "step {step}: remove at {position} but no separator is there"
                    )),
                }
            }
        }
    }
    diag
}

/// Replays an event stream into the final layout. The stream is assumed
/// legal; combine with [`validate_event_stream`] when in doubt.
pub fn replay_events(events: &[OnlineEvent], p: usize) -> Result<PartitionLayout, SeqError> {
    let mut separators: Vec<usize> = Vec::new();
    for ev in events {
        match *ev {
            OnlineEvent::Observe { .. } => {}
            OnlineEvent::Insert { position } => {
                let idx = separators.partition_point(|&s| s <= position);
                separators.insert(idx, position);
            }
            OnlineEvent::Remove { position } => {
                if let Some(idx) = separators.iter().position(|&s| s == position) {
                    separators.remove(idx);
                }
            }
        }
    }
    PartitionLayout::new(p, separators)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn bottleneck_symmetric_split() {
        let seq = WeightedSequence::all_ones(4);
        let layout = PartitionLayout::new(2, vec![3]).unwrap();
        assert_eq!(bottleneck(&seq, &layout).unwrap(), 2);
    }

    #[test]
    fn bottleneck_weighted_split() {
        // parts {3,1,2} and {4,1}
        let seq = WeightedSequence::new(vec![3, 1, 2, 4, 1]).unwrap();
        let layout = PartitionLayout::new(2, vec![4]).unwrap();
        assert_eq!(bottleneck(&seq, &layout).unwrap(), 6);
    }

    #[test]
    fn bottleneck_single_partition() {
        let seq = WeightedSequence::new(vec![5]).unwrap();
        let layout = PartitionLayout::new(2, vec![]).unwrap();
        assert_eq!(bottleneck(&seq, &layout).unwrap(), 5);
    }

    #[test]
    fn bottleneck_rejects_out_of_range_separator() {
        let seq = WeightedSequence::new(vec![1, 2]).unwrap();
        let layout = PartitionLayout::new(2, vec![7]).unwrap();
        assert_eq!(
            bottleneck(&seq, &layout),
            Err(SeqError::SeparatorOutOfRange { position: 7, n: 2 })
        );
    }

    #[test]
    fn empty_partitions_have_weight_zero() {
        let seq = WeightedSequence::new(vec![2, 3]).unwrap();
        let layout = PartitionLayout::new(3, vec![2, 2]).unwrap();
        assert_eq!(layout.partition_weights(&seq).unwrap(), vec![2, 0, 3]);
    }

    #[test]
    fn rejects_zero_weight() {
        assert_eq!(
            WeightedSequence::new(vec![1, 0]),
            Err(SeqError::NonPositiveWeight { index: 1 })
        );
    }

    #[test]
    fn rejects_total_overflow() {
        assert_eq!(
            WeightedSequence::new(vec![u64::MAX, 1]),
            Err(SeqError::TotalOverflow)
        );
    }

    #[test]
    fn legal_stream_accepted() {
        let seq = WeightedSequence::all_ones(3);
        let events = vec![
            OnlineEvent::Observe { weight: 1 },
            OnlineEvent::Insert { position: 2 },
            OnlineEvent::Observe { weight: 1 },
            OnlineEvent::Remove { position: 2 },
            OnlineEvent::Insert { position: 3 },
            OnlineEvent::Observe { weight: 1 },
        ];
        let diag = validate_event_stream(&seq, &events, 2);
        assert!(diag.ok(), "{:?}", diag.violations);
        let layout = replay_events(&events, 2).unwrap();
        assert_eq!(layout.separators(), &[3]);
    }

    #[test]
    fn insert_at_past_position_rejected() {
        let seq = WeightedSequence::all_ones(3);
        let events = vec![
            OnlineEvent::Observe { weight: 1 },
            OnlineEvent::Observe { weight: 1 },
            OnlineEvent::Insert { position: 2 }, // current would be 3
        ];
        assert!(!validate_event_stream(&seq, &events, 2).ok());
    }

    #[test]
    fn reinsert_at_old_position_rejected() {
        let seq = WeightedSequence::all_ones(5);
        let events = vec![
            OnlineEvent::Observe { weight: 1 },
            OnlineEvent::Observe { weight: 1 },
            OnlineEvent::Insert { position: 3 },
            OnlineEvent::Observe { weight: 1 },
            OnlineEvent::Observe { weight: 1 },
            OnlineEvent::Remove { position: 3 },
            OnlineEvent::Insert { position: 3 }, // removed, but 3 is no longer current
        ];
        assert!(!validate_event_stream(&seq, &events, 2).ok());
    }

    #[test]
    fn separator_budget_enforced() {
        let seq = WeightedSequence::all_ones(4);
        let events = vec![
            OnlineEvent::Observe { weight: 1 },
            OnlineEvent::Insert { position: 2 },
            OnlineEvent::Observe { weight: 1 },
            OnlineEvent::Insert { position: 3 }, // second separator with p = 2
        ];
        assert!(!validate_event_stream(&seq, &events, 2).ok());
    }

    #[test]
    fn remove_missing_separator_rejected() {
        let seq = WeightedSequence::all_ones(2);
        let events = vec![
            OnlineEvent::Observe { weight: 1 },
            OnlineEvent::Remove { position: 2 },
        ];
        assert!(!validate_event_stream(&seq, &events, 2).ok());
    }
}
