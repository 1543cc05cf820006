//! Hard-instance generators and lower-bound checkers.
//!
//! Each generator realizes one adversarial family: all-ones prefix chains
//! against non-preemptive algorithms, the reciprocal length distribution
//! against center guessing, exponentially increasing weights, the paired
//! all-ones lengths `2p` / `2p + 1`, and the unit-request continuation that
//! forces any flow partitioning to grow its bottleneck.

use alloc::vec::Vec;
use core::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::fmath;
use crate::offline::{optimal_bottleneck_with_unit_tail, OfflineError};
use crate::seqcore::WeightedSequence;

#[derive(Debug, Clone, PartialEq)]
pub enum AdversaryError {
    /// Exponential weights beyond 2^61 would overflow the u64 total.
    ExponentTooLarge { i: u32 },
    /// The reciprocal distribution needs `n_max > 2 * n_min`.
    BadLengthRange { n_min: u64, n_max: u64 },
    /// `p` must be at least 2.
    PartitionCountTooSmall { p: usize },
    Offline(OfflineError),
}

impl fmt::Display for AdversaryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdversaryError::ExponentTooLarge { i } => write!(f, "exponent {i} exceeds 62"),
            AdversaryError::BadLengthRange { n_min, n_max } => {
                write!(f, "need n_max > 2 * n_min, got [{n_min}, {n_max}]")
            }
            AdversaryError::PartitionCountTooSmall { p } => write!(f, "p = {p} must be >= 2"),
            AdversaryError::Offline(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for AdversaryError {}

impl From<OfflineError> for AdversaryError {
    fn from(e: OfflineError) -> Self {
        AdversaryError::Offline(e)
    }
}

// ---------------------------------------------------------------------------
// all-ones prefix chain against non-preemptive algorithms

/// Lengths of the all-ones family `sigma_1..sigma_k`: `4ip` for
/// `i = 1..=p^2`. Kept as lengths; the sequences are never materialized.
pub fn nonpreemptive_family(p: usize) -> Vec<u64> {
    let k = (p * p) as u64;
    (1..=k).map(|i| 4 * i * p as u64).collect()
}

/// Mean competitive ratio of a fixed separator set over the family. A
/// deterministic non-preemptive algorithm on nested all-ones inputs is
/// exactly a fixed set: on the length-`n` member only the separators with
/// position `<= n + 1` exist yet.
pub fn fixed_set_mean_ratio(p: usize, separators: &[usize], lengths: &[u64]) -> f64 {
    debug_assert!(separators.windows(2).all(|w| w[0] <= w[1]));
    debug_assert!(separators.len() <= p - 1);
    let mut total = 0.0f64;
    for &n in lengths {
        let mut best = 0u64; // heaviest block among placed separators
        let mut start = 1u64;
        for &s in separators {
            if (s as u64) > n + 1 {
                break;
            }
            best = best.max(s as u64 - start);
            start = s as u64;
        }
        best = best.max(n + 1 - start);
        let optimal = n.div_ceil(p as u64);
        total += best as f64 / optimal as f64;
    }
    total / lengths.len() as f64
}

// ---------------------------------------------------------------------------
// reciprocal length distribution (center guessing is optimal against it)

/// Lengths in `[n_min, n_max]` drawn with probability proportional to `1/n`.
pub struct HarmonicLengths {
    n_min: u64,
    /// cumulative masses, one per length
    cdf: Vec<f64>,
    norm: f64,
}

impl HarmonicLengths {
    pub fn new(n_min: u64, n_max: u64) -> Result<Self, AdversaryError> {
        if n_min == 0 || n_max <= 2 * n_min {
            return Err(AdversaryError::BadLengthRange { n_min, n_max });
        }
        let mut cdf = Vec::with_capacity((n_max - n_min + 1) as usize);
        let mut acc = 0.0f64;
        for n in n_min..=n_max {
            acc += 1.0 / n as f64;
            cdf.push(acc);
        }
        Ok(Self { n_min, cdf, norm: acc })
    }

    pub fn n_min(&self) -> u64 {
        self.n_min
    }

    pub fn n_max(&self) -> u64 {
        self.n_min + self.cdf.len() as u64 - 1
    }

    /// `P[n] = 1 / (n * S)` with `S` the partial harmonic sum.
    pub fn pmf(&self, n: u64) -> f64 {
        if n < self.n_min || n > self.n_max() {
            return 0.0;
        }
        1.0 / (n as f64 * self.norm)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        let u: f64 = rng.gen::<f64>() * self.norm;
        let idx = self.cdf.partition_point(|&c| c < u);
        self.n_min + idx.min(self.cdf.len() - 1) as u64
    }

    pub fn sample_seeded(&self, seed: u64) -> u64 {
        self.sample(&mut ChaCha8Rng::seed_from_u64(seed))
    }

    /// Expectation of `f(n)` under the distribution, summed exactly.
    pub fn expectation<F: FnMut(u64) -> f64>(&self, mut f: F) -> f64 {
        let mut acc = 0.0f64;
        for (idx, _) in self.cdf.iter().enumerate() {
            let n = self.n_min + idx as u64;
            acc += f(n) / n as f64;
        }
        acc / self.norm
    }
}

/// Mean ratio of fixed-offset center guessing under the reciprocal
/// distribution, minimized over a grid of offsets: the strongest
/// deterministic witness in the family the upper bound shows is extremal.
pub fn best_fixed_delta_mean_ratio(x: f64, dist: &HarmonicLengths, grid: usize) -> f64 {
    let mut best = f64::INFINITY;
    for k in 0..grid {
        let delta = (k as f64 + 0.5) / grid as f64;
        // reset points are constant between consecutive thresholds, so the
        // expectation splits into runs sharing one separator position
        let mut points: Vec<u64> = Vec::new();
        for i in 0.. {
            let t = crate::online::reset_threshold(x, delta, i);
            if t > dist.n_max() {
                break;
            }
            points.push(t);
        }
        let mean = dist.expectation(|n| {
            let sep = match points.iter().rev().find(|&&t| t <= n) {
                Some(&t) => t,
                None => 0,
            };
            let bottleneck = if sep == 0 { n } else { sep.max(n - sep) };
            bottleneck as f64 / n.div_ceil(2) as f64
        });
        best = best.min(mean);
    }
    best
}

// ---------------------------------------------------------------------------
// exponentially increasing weights

/// `1, 2, 4, ..., 2^(i-1)`.
pub fn exponential_family(i: u32) -> Result<WeightedSequence, AdversaryError> {
    if i > 62 {
        return Err(AdversaryError::ExponentTooLarge { i });
    }
    let weights: Vec<u64> = (0..i).map(|k| 1u64 << k).collect();
    Ok(WeightedSequence::new(weights).expect("powers of two are positive and fit"))
}

/// Ratio of the exponential sequence of length `n` when the last separator
/// sits after request `j <= n` (`j = 0`: no separator). `p = 2`.
pub fn exponential_ratio(n: u32, j: u32) -> f64 {
    debug_assert!(j <= n && n >= 1);
    let total = (1u128 << n) - 1;
    let left = if j == 0 { 0u128 } else { (1u128 << j) - 1 };
    let bottleneck = left.max(total - left);
    let optimal = 1u128 << (n - 1);
    bottleneck as f64 / optimal as f64
}

/// Minimum mean ratio over all fixed separator sets when the length is
/// uniform on `[i_min, i_max]`, by dynamic programming over the position of
/// the last separator (a virtual separator sits at `i_min - 1`).
pub fn exponential_best_fixed_set_mean(i_min: u32, i_max: u32) -> f64 {
    let lo = i_min as usize;
    let hi = i_max as usize;
    let count = hi - lo + 1;
    // segment cost: ratios of lengths in (j, j') with last separator at j,
    // plus the length-j' term where the separator lands on the last request
    let cost_between = |j: usize, j2: usize| -> f64 {
        let mut acc = 0.0;
        for n in (j + 1).max(lo)..j2.min(hi + 1) {
            acc += exponential_ratio(n as u32, j as u32);
        }
        acc
    };
    // best[j] = minimal total over lengths < j', last separator at j
    let virt = lo - 1;
    let positions: Vec<usize> = core::iter::once(virt).chain(lo..=hi).collect();
    let mut best: Vec<f64> = alloc::vec![f64::INFINITY; positions.len()];
    best[0] = 0.0;
    let mut answer = f64::INFINITY;
    for (a, &ja) in positions.iter().enumerate() {
        if best[a].is_infinite() {
            continue;
        }
        // close the chain: no further separators
        let tail = cost_between(ja, hi + 1);
        answer = answer.min(best[a] + tail);
        for (b, &jb) in positions.iter().enumerate().skip(a + 1) {
            let step = cost_between(ja, jb) + exponential_ratio(jb as u32, jb as u32);
            let cand = best[a] + step;
            if cand < best[b] {
                best[b] = cand;
            }
        }
    }
    answer / count as f64
}

// ---------------------------------------------------------------------------
// the paired all-ones lengths 2p and 2p + 1

/// The two all-ones sequences of lengths `2p` and `2p + 1` with their
/// mixture weights (2/5, 3/5).
#[derive(Debug, Clone)]
pub struct AllOnesPair {
    pub p: usize,
    pub short: WeightedSequence,
    pub long: WeightedSequence,
    pub weight_short: f64,
    pub weight_long: f64,
}

/// Builds the pair for `p >= 2`.
pub fn all_ones_pair(p: usize) -> Result<AllOnesPair, AdversaryError> {
    if p < 2 {
        return Err(AdversaryError::PartitionCountTooSmall { p });
    }
    Ok(AllOnesPair {
        p,
        short: WeightedSequence::all_ones(2 * p),
        long: WeightedSequence::all_ones(2 * p + 1),
        weight_short: 0.4,
        weight_long: 0.6,
    })
}

impl AllOnesPair {
    /// Optimal bottlenecks are 2 and 3.
    pub fn optima(&self) -> (u64, u64) {
        (2, 3)
    }

    /// Expected ratio of an algorithm given its (expected) ratios on the
    /// two members.
    pub fn expected_ratio(&self, ratio_short: f64, ratio_long: f64) -> f64 {
        self.weight_short * ratio_short + self.weight_long * ratio_long
    }

    /// The mixture identity behind the 6/5 bound: an algorithm that is
    /// optimal on the short member with probability `q` and pays the forced
    /// follow-ups (3/2 on the short member otherwise, 4/3 on the long member
    /// after an optimal short prefix) averages exactly 6/5, independent
    /// of `q`.
    pub fn mixture_lower_bound(&self, q: f64) -> f64 {
        self.expected_ratio(q + 1.5 * (1.0 - q), (4.0 / 3.0) * q + (1.0 - q))
    }
}

// ---------------------------------------------------------------------------
// forced-merge continuation for flow partitionings

/// Outcome of the forced-bottleneck check on a partition-weight vector.
#[derive(Debug, Clone)]
pub struct ForcedBottleneck {
    /// Scaled integer partition weights the check ran on.
    pub scaled_weights: Vec<u64>,
    /// Number of light partitions (weight < x_max / alpha).
    pub light_count: usize,
    /// Unit requests appended: `(light_count + 1) * ceil(2 x_max / alpha)`.
    pub tail_ones: u64,
    /// The bound every p-partitioning of the continuation must reach.
    pub forced: u64,
    /// Exact optimum of the continuation, from the offline oracle.
    pub oracle: u64,
    /// True iff `oracle >= forced`.
    pub verified: bool,
}

/// Scales real weights to integers at the given resolution and verifies via
/// the offline oracle that after `(|L| + 1) * ceil(2 x_max / alpha)` unit
/// requests every p-partitioning has bottleneck at least
/// `ceil(2 x_max / alpha)`.
pub fn flow_lb_check(weights: &[f64], alpha: f64, resolution: f64) -> ForcedBottleneck {
    debug_assert!(alpha > 1.0 && alpha < 2.0);
    let max_w = weights.iter().copied().fold(0.0f64, f64::max);
    let scale = if max_w > 0.0 { resolution / max_w } else { 1.0 };
    let scaled: Vec<u64> = weights
        .iter()
        .map(|&w| (fmath::round(w * scale) as u64).max(1))
        .collect();
    flow_lb_check_scaled(&scaled, alpha)
}

/// Integer-exact variant of [`flow_lb_check`].
pub fn flow_lb_check_scaled(weights: &[u64], alpha: f64) -> ForcedBottleneck {
    let p = weights.len();
    let x_max = weights.iter().copied().max().unwrap_or(0);
    let threshold = x_max as f64 / alpha;
    let light_count = weights.iter().filter(|&&w| (w as f64) < threshold).count();
    let forced = fmath::ceil(2.0 * x_max as f64 / alpha) as u64;
    let tail_ones = (light_count as u64 + 1) * forced;
    let oracle = optimal_bottleneck_with_unit_tail(weights, tail_ones, p)
        .expect("positive weights and p >= 1");
    ForcedBottleneck {
        scaled_weights: weights.to_vec(),
        light_count,
        tail_ones,
        forced,
        oracle,
        verified: oracle >= forced,
    }
}

/// The competitive-ratio bound the forced merge implies:
/// `(5 - (alpha + 2/alpha)) / 2`, maximal at `alpha = sqrt(2)`.
pub fn implied_flow_bound(alpha: f64) -> f64 {
    (5.0 - (alpha + 2.0 / alpha)) / 2.0
}

/// Instances with uniformly random weights, for oracle sweeps.
pub fn random_instance(seed: u64, max_len: usize, max_weight: u64) -> WeightedSequence {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_len);
    let weights: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=max_weight)).collect();
    WeightedSequence::new(weights).expect("weights are positive")
}
