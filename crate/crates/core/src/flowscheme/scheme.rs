//! The periodic scheme: round-robin advancement of `p` super-partitions with
//! bases `1..=p`, emitting the length-`p` prefix of their concatenation
//! whenever a merge changes it.

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::super_partition::SuperPartition;
use super::{SchemeError, StateClass, TransitionKind, SCHEME_TOL};
use crate::fmath;

/// Observer for a scheme run.
pub trait SchemeVisitor {
    /// Every emitted prefix state, the initial one included. `transition`
    /// leads into this state and is `None` for the initial state.
    fn on_state(
        &mut self,
        index: usize,
        prefix: &[f64],
        class: Option<&StateClass>,
        transition: Option<TransitionKind>,
    );

    /// The full concatenated configuration after every merge, plus the
    /// initial one. Non-emitting merges show up here too.
    fn on_configuration(&mut self, _supers: &[SuperPartition]) {}
}

fn concat_prefix(supers: &[SuperPartition], p: usize, buf: &mut Vec<f64>) {
    buf.clear();
    'outer: for sp in supers {
        for &e in sp.entries() {
            buf.push(e);
            if buf.len() == p {
                break 'outer;
            }
        }
    }
}

fn prefix_changed(a: &[f64], b: &[f64]) -> bool {
    a.len() != b.len()
        || a.iter().zip(b).any(|(&x, &y)| !fmath::approx_eq(x, y, SCHEME_TOL))
}

/// `(L, t, m, c)` classification; `None` when `p` is not a power of two
/// (the scheme still runs there, the analysis does not).
fn classify(supers: &[SuperPartition], p: usize) -> Option<StateClass> {
    if !p.is_power_of_two() {
        return None;
    }
    let short = supers.iter().map(SuperPartition::len).min()?;
    if supers.iter().any(|sp| sp.len() > short + 1) {
        return None;
    }
    let level = (short + 1).next_power_of_two();
    let t = level - short;
    let mut slots = 0usize;
    let mut c = 0usize;
    while c < supers.len() && slots + supers[c].len() <= p {
        slots += supers[c].len();
        c += 1;
    }
    let m = (1..=c).rev().find(|&j| supers[j - 1].len() == short).unwrap_or(0);
    Some(StateClass { level, t, m, c })
}

/// Kind of the transition produced by merging pair `(pos, pos + 1)` of the
/// concatenation (0-based, pre-merge), when the prefix saw it.
fn transition_kind(pos: usize, p: usize) -> TransitionKind {
    if pos + 1 <= p - 1 {
        TransitionKind::Internal { merged_slot: pos }
    } else {
        TransitionKind::Absorb
    }
}

/// Runs the scheme, driving the visitor. Works for arbitrary `p >= 2`;
/// merge cost is a linear scan, so this is the reference path (the
/// power-of-two fast path lives in [`super::run_scheme_pow2`]).
pub fn run_scheme<V: SchemeVisitor>(p: usize, x: f64, visitor: &mut V) -> Result<(), SchemeError> {
    if p < 2 {
        return Err(SchemeError::PartitionCountTooSmall { p });
    }
    let mut supers: Vec<SuperPartition> =
        (1..=p).map(|base| SuperPartition::new(base, p, x)).collect();
    let mut prefix = Vec::with_capacity(p);
    let mut last = Vec::with_capacity(p);
    concat_prefix(&supers, p, &mut last);
    let mut index = 1usize;
    visitor.on_configuration(&supers);
    visitor.on_state(index, &last, classify(&supers, p).as_ref(), None);
    for _round in 1..p {
        for k in 0..p {
            let offset: usize = supers[..k].iter().map(SuperPartition::len).sum();
            let pair = supers[k].merge_next()?;
            visitor.on_configuration(&supers);
            concat_prefix(&supers, p, &mut prefix);
            if prefix_changed(&prefix, &last) {
                index += 1;
                let kind = transition_kind(offset + pair, p);
                visitor.on_state(index, &prefix, classify(&supers, p).as_ref(), Some(kind));
                core::mem::swap(&mut prefix, &mut last);
            }
        }
    }
    Ok(())
}

/// The materialized emitted-state sequence of one scheme run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SchemeTrace {
    pub p: usize,
    pub x: f64,
    /// Emitted states, each of length `p`.
    pub states: Vec<Vec<f64>>,
    /// Per-state classification; `None` for non-power-of-two `p`.
    pub classes: Vec<Option<StateClass>>,
    /// Transition leading into `states[i + 1]`; length is one less than
    /// `states`.
    pub transitions: Vec<TransitionKind>,
}

impl SchemeTrace {
    pub fn state_sums(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.iter().sum()).collect()
    }
}

struct Collector {
    trace: SchemeTrace,
}

impl SchemeVisitor for Collector {
    fn on_state(
        &mut self,
        _index: usize,
        prefix: &[f64],
        class: Option<&StateClass>,
        transition: Option<TransitionKind>,
    ) {
        self.trace.states.push(prefix.to_vec());
        self.trace.classes.push(class.copied());
        if let Some(kind) = transition {
            self.trace.transitions.push(kind);
        }
    }
}

/// Runs the scheme and materializes the emitted states.
pub fn periodic_scheme(p: usize, x: f64) -> Result<SchemeTrace, SchemeError> {
    let mut collector = Collector {
        trace: SchemeTrace { p, x, states: Vec::new(), classes: Vec::new(), transitions: Vec::new() },
    };
    run_scheme(p, x, &mut collector)?;
    Ok(collector.trace)
}

/// Max-over-average statistics of a trace.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SchemeRatioReport {
    pub p: usize,
    pub x: f64,
    /// `max X_i / avg X_i` per emitted state.
    pub per_state: Vec<f64>,
    pub max_ratio: f64,
    /// 0-based index of the worst state.
    pub argmax: usize,
    pub argmax_class: Option<StateClass>,
}

/// Computes `r_i = max X_i / avg X_i` for every state and the maximum.
pub fn scheme_ratio(trace: &SchemeTrace) -> SchemeRatioReport {
    let p = trace.p as f64;
    let mut per_state = Vec::with_capacity(trace.states.len());
    let mut max_ratio = 0.0f64;
    let mut argmax = 0usize;
    for (i, state) in trace.states.iter().enumerate() {
        let sum: f64 = state.iter().sum();
        let max = state.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let r = max * p / sum;
        per_state.push(r);
        if r > max_ratio {
            max_ratio = r;
            argmax = i;
        }
    }
    SchemeRatioReport {
        p: trace.p,
        x: trace.x,
        per_state,
        max_ratio,
        argmax,
        argmax_class: trace.classes.get(argmax).copied().flatten(),
    }
}

/// Worst max-over-average ratio of one run without materializing states;
/// this is what the arbitrary-`p` sweep plots.
pub fn max_over_avg(p: usize, x: f64) -> Result<f64, SchemeError> {
    struct MaxVisitor {
        p: f64,
        worst: f64,
    }
    impl SchemeVisitor for MaxVisitor {
        fn on_state(
            &mut self,
            _index: usize,
            prefix: &[f64],
            _class: Option<&StateClass>,
            _transition: Option<TransitionKind>,
        ) {
            let sum: f64 = prefix.iter().sum();
            let max = prefix.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            self.worst = self.worst.max(max * self.p / sum);
        }
    }
    let mut v = MaxVisitor { p: p as f64, worst: 0.0 };
    run_scheme(p, x, &mut v)?;
    Ok(v.worst)
}
