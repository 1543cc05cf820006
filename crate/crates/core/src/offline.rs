//! Offline reference machinery: the greedy feasibility sweep and the
//! optimal-bottleneck oracles every competitive ratio is measured against.

use alloc::vec::Vec;
use core::fmt;

use crate::seqcore::WeightedSequence;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OfflineError {
    /// A single weight exceeds the probe bound; no partitioning with
    /// bottleneck `<= bound` exists.
    InfeasibleBound { index: usize, weight: u64, bound: u64 },
    /// `p` must be at least 1.
    InvalidPartitionCount,
    /// The `n * p` guard for the dynamic program was exceeded.
    SizeGuard { n: usize, p: usize },
}

impl fmt::Display for OfflineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OfflineError::InfeasibleBound { index, weight, bound } => write!(
                f,
                "weight {weight} at index {index} exceeds bound {bound}; infeasible"
            ),
            OfflineError::InvalidPartitionCount => write!(f, "p must be >= 1"),
            OfflineError::SizeGuard { n, p } => {
                write!(f, "n * p = {} exceeds the 10^7 guard", n * p)
            }
        }
    }
}

impl core::error::Error for OfflineError {}

/// Greedy left-to-right sweep: extend the current partition while its sum
/// stays `<= bound`, cut otherwise. Returns the partition weights; the count
/// is unbounded and the caller compares it against `p`.
///
/// Zero weights are allowed (the 2-competitive online algorithm probes
/// current partition weights, which may be 0). A sum hitting `bound` exactly
/// stays in the current partition.
pub fn probe(weights: &[u64], bound: u64) -> Result<Vec<u64>, OfflineError> {
    let mut parts = Vec::new();
    let mut current: u64 = 0;
    let mut open = false;
    for (index, &w) in weights.iter().enumerate() {
        if w > bound {
            return Err(OfflineError::InfeasibleBound { index, weight: w, bound });
        }
        if open && current + w > bound {
            parts.push(current);
            current = 0;
        }
        current += w;
        open = true;
    }
    if open {
        parts.push(current);
    }
    Ok(parts)
}

/// Number of partitions [`probe`] would create, without allocating.
pub fn probe_count(weights: &[u64], bound: u64) -> Result<usize, OfflineError> {
    let mut count = 0usize;
    let mut current: u64 = 0;
    let mut open = false;
    for (index, &w) in weights.iter().enumerate() {
        if w > bound {
            return Err(OfflineError::InfeasibleBound { index, weight: w, bound });
        }
        if open && current + w > bound {
            count += 1;
            current = 0;
        }
        current += w;
        open = true;
    }
    if open {
        count += 1;
    }
    Ok(count)
}

/// [`probe_count`] on `weights` followed by `tail_ones` unit requests, with
/// the tail handled in closed form so huge unit blocks never materialize.
pub fn probe_count_with_unit_tail(
    weights: &[u64],
    tail_ones: u64,
    bound: u64,
) -> Result<usize, OfflineError> {
    if bound == 0 && tail_ones > 0 {
        return Err(OfflineError::InfeasibleBound { index: weights.len(), weight: 1, bound });
    }
    let mut count = 0usize;
    let mut current: u64 = 0;
    let mut open = false;
    for (index, &w) in weights.iter().enumerate() {
        if w > bound {
            return Err(OfflineError::InfeasibleBound { index, weight: w, bound });
        }
        if open && current + w > bound {
            count += 1;
            current = 0;
        }
        current += w;
        open = true;
    }
    let mut remaining = tail_ones;
    if open {
        let room = bound - current;
        let take = remaining.min(room);
        remaining -= take;
        count += 1; // the partition holding `current` (+ any ones that fit)
    }
    if remaining > 0 {
        count += remaining.div_ceil(bound) as usize;
    }
    Ok(count)
}

fn feasible(weights: &[u64], tail_ones: u64, bound: u64, p: usize) -> bool {
    match probe_count_with_unit_tail(weights, tail_ones, bound) {
        Ok(count) => count <= p,
        Err(_) => false,
    }
}

/// Smallest bottleneck achievable with `p` contiguous partitions, by binary
/// search over `[max_w, W_n]` with the greedy sweep as the exact feasibility
/// test.
pub fn optimal_bottleneck(seq: &WeightedSequence, p: usize) -> Result<u64, OfflineError> {
    optimal_bottleneck_with_unit_tail(seq.weights(), 0, p)
}

/// Optimal bottleneck of `weights` followed by `tail_ones` unit requests.
pub fn optimal_bottleneck_with_unit_tail(
    weights: &[u64],
    tail_ones: u64,
    p: usize,
) -> Result<u64, OfflineError> {
    if p == 0 {
        return Err(OfflineError::InvalidPartitionCount);
    }
    if weights.is_empty() && tail_ones == 0 {
        return Ok(0);
    }
    let total: u64 = weights.iter().sum::<u64>() + tail_ones;
    let max_w = weights
        .iter()
        .copied()
        .max()
        .unwrap_or(0)
        .max(if tail_ones > 0 { 1 } else { 0 });
    let mut lo = max_w.max(total.div_ceil(p as u64));
    let mut hi = total;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if feasible(weights, tail_ones, mid, p) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(lo)
}

/// An optimal layout to go with [`optimal_bottleneck`]: separator positions
/// from the greedy sweep at the optimal bound.
pub fn optimal_layout(seq: &WeightedSequence, p: usize) -> Result<(u64, Vec<usize>), OfflineError> {
    let opt = optimal_bottleneck(seq, p)?;
    let mut separators = Vec::new();
    let mut current: u64 = 0;
    let mut open = false;
    for (i, &w) in seq.weights().iter().enumerate() {
        if open && current + w > opt {
            separators.push(i + 1); // before request i + 1 (1-based)
            current = 0;
        }
        current += w;
        open = true;
    }
    Ok((opt, separators))
}

/// Exact optimum by dynamic programming over (prefix, partitions used).
/// Independent of the probe route; the two must agree on every input.
pub fn optimal_bottleneck_dp(seq: &WeightedSequence, p: usize) -> Result<u64, OfflineError> {
    if p == 0 {
        return Err(OfflineError::InvalidPartitionCount);
    }
    let n = seq.len();
    if n == 0 {
        return Ok(0);
    }
    if n.saturating_mul(p) > 10_000_000 {
        return Err(OfflineError::SizeGuard { n, p });
    }
    let prefix = seq.prefix_sums();
    const INF: u64 = u64::MAX;
    // best[j] = optimal bottleneck splitting the first j requests into the
    // current number of partitions.
    let mut best: Vec<u64> = prefix.iter().map(|&s| s).collect(); // 1 partition
    for _ in 2..=p {
        let mut next = alloc::vec![INF; n + 1];
        next[0] = 0;
        for j in 1..=n {
            let mut acc = INF;
            // last partition covers requests i+1..=j
            for i in (0..j).rev() {
                let last = prefix[j] - prefix[i];
                if last >= acc {
                    break; // widening the last partition only worsens it
                }
                acc = acc.min(best[i].max(last));
            }
            next[j] = acc.min(best[j]); // empty last partition allowed
        }
        best = next;
    }
    Ok(best[n])
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn probe_examples() {
        assert_eq!(probe(&[2, 3, 1, 4], 5).unwrap(), vec![5, 5]);
        assert_eq!(probe(&[1, 1, 1, 1, 1], 2).unwrap(), vec![2, 2, 1]);
        assert_eq!(
            probe(&[4, 1], 3),
            Err(OfflineError::InfeasibleBound { index: 0, weight: 4, bound: 3 })
        );
    }

    #[test]
    fn probe_accepts_zero_weights() {
        assert_eq!(probe(&[0, 0, 3, 0, 2], 3).unwrap(), vec![3, 2]);
        assert_eq!(probe(&[0, 0], 0).unwrap(), vec![0]);
    }

    #[test]
    fn probe_monotone_in_bound() {
        let ws = [3u64, 1, 4, 1, 5, 9, 2, 6];
        let mut prev = usize::MAX;
        for b in 9..=31 {
            let c = probe_count(&ws, b).unwrap();
            assert!(c <= prev, "count must not increase with the bound");
            prev = c;
        }
    }

    #[test]
    fn optimal_examples() {
        let seven = WeightedSequence::all_ones(7);
        assert_eq!(optimal_bottleneck(&seven, 2).unwrap(), 4);

        let seq = WeightedSequence::new(vec![3, 1, 2, 4, 1]).unwrap();
        // exhaustive check over the 5 split points of a p = 2 layout
        let prefix = seq.prefix_sums();
        let brute = (1..=6)
            .map(|s| (prefix[s - 1]).max(prefix[5] - prefix[s - 1]))
            .min()
            .unwrap();
        assert_eq!(brute, 6);
        assert_eq!(optimal_bottleneck(&seq, 2).unwrap(), 6);

        for p in 2..6usize {
            let twop = WeightedSequence::all_ones(2 * p);
            assert_eq!(optimal_bottleneck(&twop, p).unwrap(), 2);
        }
    }

    #[test]
    fn optimal_empty_sequence_is_zero() {
        let seq = WeightedSequence::new(vec![]).unwrap();
        assert_eq!(optimal_bottleneck(&seq, 3).unwrap(), 0);
    }

    #[test]
    fn dp_examples() {
        for p in 2..6usize {
            let seq = WeightedSequence::all_ones(2 * p + 1);
            assert_eq!(optimal_bottleneck_dp(&seq, p).unwrap(), 3);
        }
        let one = WeightedSequence::new(vec![1]).unwrap();
        assert_eq!(optimal_bottleneck_dp(&one, 5).unwrap(), 1);
    }

    #[test]
    fn dp_guard() {
        let seq = WeightedSequence::all_ones(2_000_001);
        assert!(matches!(
            optimal_bottleneck_dp(&seq, 5),
            Err(OfflineError::SizeGuard { .. })
        ));
    }

    #[test]
    fn unit_tail_matches_materialized() {
        let ws = [7u64, 3, 9, 2];
        for tail in [0u64, 1, 5, 23] {
            let mut full: Vec<u64> = ws.to_vec();
            full.extend(core::iter::repeat(1).take(tail as usize));
            for bound in 9..30 {
                assert_eq!(
                    probe_count_with_unit_tail(&ws, tail, bound).unwrap(),
                    probe_count(&full, bound).unwrap(),
                    "tail={tail} bound={bound}"
                );
            }
            for p in 1..6 {
                let seq = WeightedSequence::new(full.clone()).unwrap();
                assert_eq!(
                    optimal_bottleneck_with_unit_tail(&ws, tail, p).unwrap(),
                    optimal_bottleneck(&seq, p).unwrap()
                );
            }
        }
    }

    #[test]
    fn optimal_layout_reconstructs_bottleneck() {
        let seq = WeightedSequence::new(vec![3, 1, 2, 4, 1, 6, 2]).unwrap();
        for p in 1..5 {
            let (opt, seps) = optimal_layout(&seq, p).unwrap();
            let layout = crate::seqcore::PartitionLayout::new(p, seps).unwrap();
            assert_eq!(crate::seqcore::bottleneck(&seq, &layout).unwrap(), opt);
        }
    }
}
