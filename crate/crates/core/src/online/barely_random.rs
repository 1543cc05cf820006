//! Single-coin center guessing: the separator is moved at request `2^i`,
//! with `i` starting at 0 or 1 on a fair coin and stepping by 2.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::seqcore::WeightedSequence;

use super::{OnlineError, OnlineRun, RunRecorder};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coin {
    /// `i = 0, 2, 4, ...` — resets at 1, 4, 16, ...
    Even,
    /// `i = 1, 3, 5, ...` — resets at 2, 8, 32, ...
    Odd,
}

/// Largest admissible reset position `<= n` for the coin, if any.
pub fn barely_random_final_position(n: u64, coin: Coin) -> Option<u64> {
    let start: u32 = match coin {
        Coin::Even => 0,
        Coin::Odd => 1,
    };
    let mut best = None;
    let mut i = start;
    while i < 63 {
        let pos = 1u64 << i;
        if pos > n {
            break;
        }
        best = Some(pos);
        i += 2;
    }
    best
}

/// Expected ratio over both coins on the all-ones sequence of length `n`.
pub fn barely_random_expected_ratio(n: u64) -> f64 {
    let opt = n.div_ceil(2) as f64;
    let ratio = |coin| {
        let b = match barely_random_final_position(n, coin) {
            None => n,
            Some(s) => s.max(n - s),
        };
        b as f64 / opt
    };
    0.5 * (ratio(Coin::Even) + ratio(Coin::Odd))
}

/// Event-log run for a fixed coin. All-ones input only.
pub fn barely_random_with_coin(
    seq: &WeightedSequence,
    coin: Coin,
    seed: Option<u64>,
) -> Result<OnlineRun, OnlineError> {
    if seq.weights().iter().any(|&w| w != 1) {
        return Err(OnlineError::AllOnesRequired);
    }
    let mut recorder = RunRecorder::new(2);
    let mut i: u32 = match coin {
        Coin::Even => 0,
        Coin::Odd => 1,
    };
    let mut separator: Option<usize> = None;
    for j in 1..=seq.len() as u64 {
        recorder.observe(1);
        if i < 63 && j == 1u64 << i {
            if let Some(pos) = separator {
                recorder.remove(pos)?;
            }
            recorder.insert_current()?;
            separator = Some(recorder.current_position());
            i += 2;
        }
    }
    recorder.finish("barely-random", seed, seq)
}

/// Coin drawn from the seed.
pub fn barely_random(seq: &WeightedSequence, seed: u64) -> Result<OnlineRun, OnlineError> {
    let coin = if ChaCha8Rng::seed_from_u64(seed).gen::<bool>() { Coin::Even } else { Coin::Odd };
    barely_random_with_coin(seq, coin, Some(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqcore::validate_event_stream;
    use alloc::vec;

    #[test]
    fn n_eight_even_coin_is_optimal() {
        let seq = WeightedSequence::all_ones(8);
        let run = barely_random_with_coin(&seq, Coin::Even, None).unwrap();
        assert_eq!(run.final_layout.separators(), &[5]); // after request 4
        assert_eq!(run.bottleneck, 4);
        assert!(validate_event_stream(&seq, &run.events, 2).ok());
    }

    #[test]
    fn n_eight_odd_coin_parks_at_the_end() {
        let seq = WeightedSequence::all_ones(8);
        let run = barely_random_with_coin(&seq, Coin::Odd, None).unwrap();
        assert_eq!(run.final_layout.separators(), &[9]); // after request 8
        assert_eq!(run.bottleneck, 8);
        // averaged with the even coin: (1 + 2) / 2 = 1.5
        assert_eq!(barely_random_expected_ratio(8), 1.5);
    }

    #[test]
    fn closed_form_matches_replay() {
        for n in 1..200usize {
            let seq = WeightedSequence::all_ones(n);
            for coin in [Coin::Even, Coin::Odd] {
                let run = barely_random_with_coin(&seq, coin, None).unwrap();
                let expected = match barely_random_final_position(n as u64, coin) {
                    None => n as u64,
                    Some(s) => s.max(n as u64 - s),
                };
                assert_eq!(run.bottleneck, expected, "n={n} coin={coin:?}");
            }
        }
    }

    #[test]
    fn tiny_n_odd_coin_places_nothing() {
        let seq = WeightedSequence::all_ones(1);
        let run = barely_random_with_coin(&seq, Coin::Odd, None).unwrap();
        assert!(run.final_layout.separators().is_empty());
        assert_eq!(run.bottleneck, 1);
    }

    #[test]
    fn weighted_input_rejected() {
        let seq = WeightedSequence::new(vec![1, 2]).unwrap();
        assert!(matches!(
            barely_random_with_coin(&seq, Coin::Even, None),
            Err(OnlineError::AllOnesRequired)
        ));
    }
}
