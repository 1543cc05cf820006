//! Preemptive online partitioning of integer sequences and continuous flows.
//!
//! A sequence of positive integers arrives one request at a time and must be
//! split into `p` contiguous partitions so that the heaviest partition (the
//! *bottleneck*) stays close to the offline optimum. Separators may only be
//! inserted after the current request; previously placed separators may be
//! removed, which merges the two adjacent partitions.
//!
//! The crate provides:
//!
//! * [`seqcore`] — sequences, partition layouts, the online event model and
//!   the referee that certifies an event stream as a legal preemptive run;
//! * [`offline`] — the greedy feasibility sweep ([`offline::probe`]) and two
//!   independent optimal-bottleneck oracles;
//! * [`online`] — the online algorithms: randomized center guessing for
//!   `p = 2`, a single-coin variant, a deterministic 2-competitive algorithm
//!   for arbitrary `p`, and non-preemptive baselines;
//! * [`flowscheme`] — the super-partition merge scheme, its closed forms and
//!   ratio bounds, the continuous-flow simulator, and the adapter that drives
//!   integer sequences off the flow targets;
//! * [`adversary`] — hard instance families and lower-bound checkers;
//! * [`harness`] — quadrature and Monte Carlo evaluation with reproducible
//!   seeding, producing [`harness::RatioReport`]s.
//!
//! The crate is `no_std` (it allocates but performs no IO); the companion
//! `seqpart` crate carries the CLI and file formats.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod adversary;
pub(crate) mod fmath;
pub mod flowscheme;
pub mod harness;
pub mod offline;
pub mod online;
pub mod seqcore;
