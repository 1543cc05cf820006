//! The super-partition merge scheme, its closed forms, and the flow
//! simulator built on top of it.
//!
//! A *super-partition* with base `b` starts as the geometric progression
//! `alpha^b, alpha^(b+1), ..., alpha^(b+p-1)` with `alpha = x^(1/p)` and
//! evolves by merging its minimal-sum adjacent pair. The periodic scheme
//! advances `p` super-partitions with bases `1..p` round-robin for `p - 1`
//! rounds and emits the length-`p` prefix of their concatenation whenever it
//! changes. The emitted states are the partition weights of a deterministic
//! algorithm for partitioning a continuous flow; its competitive ratio is
//! governed by the max-over-average ratio of the states.

use core::fmt;

use serde::{Deserialize, Serialize};

mod bounds;
mod flow;
mod part_adapter;
mod scheme;
mod super_partition;
mod sweep;

pub use bounds::{avg_growth_check, min_applicable_bound, state_ratio_bounds, sum_max_closed_forms};
pub use flow::{flow_simulate, FlowOutcome, FlowSimulator};
pub use part_adapter::{part_via_flow, PartViaFlowRun};
pub use scheme::{
    max_over_avg, periodic_scheme, run_scheme, scheme_ratio, SchemeRatioReport, SchemeTrace,
    SchemeVisitor,
};
pub use super_partition::SuperPartition;
pub use sweep::{run_scheme_pow2, StreamedState};

/// Relative tolerance for every float comparison in the scheme machinery.
pub const SCHEME_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SchemeError {
    /// The scheme needs at least two partitions.
    PartitionCountTooSmall { p: usize },
    /// The fast runner and the closed forms require a power of two.
    PowerOfTwoRequired { p: usize },
    /// merge_next on a length-1 super-partition.
    Exhausted,
    /// Closed forms or ratio bounds called outside their domain.
    Domain(&'static str),
    /// Flow stopped before the warm-up period.
    BeforeWarmUp,
}

impl fmt::Display for SchemeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemeError::PartitionCountTooSmall { p } => write!(f, "p = {p} must be >= 2"),
            SchemeError::PowerOfTwoRequired { p } => {
                write!(f, "p = {p} must be a power of two here")
            }
            SchemeError::Exhausted => write!(f, "super-partition already has a single entry"),
            SchemeError::Domain(what) => write!(f, "domain error: {what}"),
            SchemeError::BeforeWarmUp => write!(f, "stop time precedes the warm-up period"),
        }
    }
}

impl core::error::Error for SchemeError {}

/// Classification `(L, t, m, c)` of an emitted state, defined for powers of
/// two: super-partitions have lengths `L - t` or `L - t + 1` with `L` a power
/// of two and `1 <= t <= L / 2`; `m` is the rightmost fully included
/// super-partition of the short length, `c` the number of fully included
/// super-partitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateClass {
    pub level: usize,
    pub t: usize,
    pub m: usize,
    pub c: usize,
}

impl StateClass {
    /// Short super-partition length `l = L - t`.
    pub fn short_len(&self) -> usize {
        self.level - self.t
    }
}

/// How one emitted state turns into the next, in flow terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TransitionKind {
    /// Two partitions inside the prefix merge (0-based left slot); a fresh
    /// empty partition opens at the right and fills up.
    Internal { merged_slot: usize },
    /// The last prefix slot merges with the next concatenation entry: the
    /// open partition keeps filling toward a larger target.
    Absorb,
}
