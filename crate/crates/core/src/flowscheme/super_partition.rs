//! A geometric-weight block evolving by minimal-sum adjacent merges.

use alloc::vec::Vec;

use crate::fmath;

use super::{SchemeError, SCHEME_TOL};

#[derive(Debug, Clone, PartialEq)]
pub struct SuperPartition {
    base: usize,
    entries: Vec<f64>,
}

impl SuperPartition {
    /// Initial configuration: `alpha^(base + k - 1)` for `k = 1..=p`,
    /// `alpha = x^(1/p)`.
    pub fn new(base: usize, p: usize, x: f64) -> Self {
        let alpha = fmath::powf(x, 1.0 / p as f64);
        let entries = (0..p).map(|k| fmath::powf(alpha, (base + k) as f64)).collect();
        Self { base, entries }
    }

    pub fn from_entries(base: usize, entries: Vec<f64>) -> Self {
        Self { base, entries }
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.entries.iter().sum()
    }

    pub fn max_entry(&self) -> f64 {
        self.entries.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Merges the adjacent pair with minimal sum (leftmost on ties within
    /// relative tolerance), shrinking the length by one. Returns the 0-based
    /// index of the merged pair's left entry.
    pub fn merge_next(&mut self) -> Result<usize, SchemeError> {
        if self.entries.len() < 2 {
            return Err(SchemeError::Exhausted);
        }
        let mut best_idx = 0usize;
        let mut best_sum = self.entries[0] + self.entries[1];
        for j in 1..self.entries.len() - 1 {
            let s = self.entries[j] + self.entries[j + 1];
            if s < best_sum * (1.0 - SCHEME_TOL) {
                best_sum = s;
                best_idx = j;
            }
        }
        self.entries[best_idx] = best_sum;
        self.entries.remove(best_idx + 1);
        Ok(best_idx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fmath::approx_eq;

    #[test]
    fn initial_configuration_is_geometric() {
        let sp = SuperPartition::new(1, 4, 2.0);
        let alpha = fmath::powf(2.0, 0.25);
        for (k, &e) in sp.entries().iter().enumerate() {
            assert!(approx_eq(e, fmath::powf(alpha, (k + 1) as f64), 1e-12));
        }
    }

    #[test]
    fn first_merge_combines_the_leading_pair() {
        // base-1, p = 4, x = 2: [a, a^2, a^3, a^4] -> [a(1+a), a^3, a^4]
        let mut sp = SuperPartition::new(1, 4, 2.0);
        let a = fmath::powf(2.0, 0.25);
        let idx = sp.merge_next().unwrap();
        assert_eq!(idx, 0);
        assert_eq!(sp.len(), 3);
        assert!(approx_eq(sp.entries()[0], a * (1.0 + a), 1e-12));
        assert!(approx_eq(sp.entries()[1], fmath::powf(a, 3.0), 1e-12));
        assert!(approx_eq(sp.entries()[2], 2.0, 1e-12));
    }

    #[test]
    fn merges_conserve_total() {
        let mut sp = SuperPartition::new(2, 8, 2.0);
        let total = sp.total();
        while sp.len() > 1 {
            sp.merge_next().unwrap();
            assert!(approx_eq(sp.total(), total, 1e-12));
        }
    }

    #[test]
    fn collapses_to_its_total() {
        // after p - 1 merges a base-1 super-partition is the single entry
        // alpha / (alpha - 1) (for x = 2)
        let mut sp = SuperPartition::new(1, 4, 2.0);
        for _ in 0..3 {
            sp.merge_next().unwrap();
        }
        assert_eq!(sp.len(), 1);
        let alpha = fmath::powf(2.0, 0.25);
        assert!(approx_eq(sp.entries()[0], alpha / (alpha - 1.0), 1e-10));
        assert!(matches!(sp.merge_next(), Err(SchemeError::Exhausted)));
    }
}
