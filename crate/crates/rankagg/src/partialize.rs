//! Turning complete rankings into partial rankings with ties.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::dataset::Dataset;
use crate::ranking::{Label, Permutation, Ranking};

const MAX_REDRAWS: usize = 1000;

/// Discard/keep probabilities of the partialization procedure.
#[derive(Clone, Copy, Debug)]
pub struct PartializeParams {
    pub p_discard: f64,
    pub p_keep: f64,
}

#[derive(Debug, Error, PartialEq)]
pub enum PartializeError {
    #[error("p_discard must lie in [0,1), got {0}")]
    BadDiscard(f64),
    #[error("p_keep must lie in [0,1], got {0}")]
    BadKeep(f64),
    #[error("fewer than 2 labels survived {MAX_REDRAWS} consecutive redraws")]
    GenerationFailure,
    #[error("ranking {index} is not a complete permutation")]
    NotComplete { index: usize },
}

impl PartializeParams {
    pub fn new(p_discard: f64, p_keep: f64) -> Result<Self, PartializeError> {
        if !(0.0..1.0).contains(&p_discard) {
            return Err(PartializeError::BadDiscard(p_discard));
        }
        if !(0.0..=1.0).contains(&p_keep) {
            return Err(PartializeError::BadKeep(p_keep));
        }
        Ok(PartializeParams { p_discard, p_keep })
    }

    /// The paper's benchmark setting `p_d = 2/3`, `p_k = 5/6`.
    pub fn benchmark() -> Self {
        PartializeParams {
            p_discard: 2.0 / 3.0,
            p_keep: 5.0 / 6.0,
        }
    }
}

/// Visits labels of `p` from most to least preferred; each is discarded
/// with `p_discard`, and each retained label joins the current bucket with
/// `p_keep` or opens a new one. Draws are repeated until at least two
/// labels survive, so the output never contradicts `p`.
pub fn partialize<R: Rng + ?Sized>(
    p: &Permutation,
    params: &PartializeParams,
    rng: &mut R,
) -> Result<Ranking, PartializeError> {
    for _ in 0..MAX_REDRAWS {
        let mut buckets: Vec<Vec<Label>> = Vec::new();
        for &label in p.order() {
            if rng.random::<f64>() < params.p_discard {
                continue;
            }
            if buckets.is_empty() {
                buckets.push(vec![label]);
            } else if rng.random::<f64>() < params.p_keep {
                buckets.last_mut().unwrap().push(label);
            } else {
                buckets.push(vec![label]);
            }
        }
        let survivors: usize = buckets.iter().map(Vec::len).sum();
        if survivors >= 2 {
            return Ok(Ranking::new(p.len(), buckets).expect("survivors form a valid ranking"));
        }
    }
    Err(PartializeError::GenerationFailure)
}

/// Partializes every ranking of a complete dataset, reproducibly from the
/// seed.
pub fn partialize_dataset(
    d: &Dataset,
    params: &PartializeParams,
    seed: u64,
) -> Result<Dataset, PartializeError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rankings = Vec::with_capacity(d.len());
    for (index, r) in d.rankings().iter().enumerate() {
        let p = r
            .to_permutation()
            .ok_or(PartializeError::NotComplete { index })?;
        rankings.push(partialize(&p, params, &mut rng)?);
    }
    Ok(Dataset::new(d.universe_size(), rankings).expect("universe size preserved"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairs::decompose_pairs;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rejects_bad_probabilities() {
        assert!(PartializeParams::new(1.0, 0.5).is_err());
        assert!(PartializeParams::new(-0.1, 0.5).is_err());
        assert!(PartializeParams::new(0.5, 1.1).is_err());
        assert!(PartializeParams::new(0.0, 1.0).is_ok());
    }

    #[test]
    fn no_discard_no_keep_reproduces_input() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = Permutation::random(8, &mut rng);
        let params = PartializeParams::new(0.0, 0.0).unwrap();
        let r = partialize(&p, &params, &mut rng).unwrap();
        assert_eq!(r, p.to_ranking());
    }

    #[test]
    fn always_keep_collapses_to_one_bucket() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let p = Permutation::random(6, &mut rng);
        let params = PartializeParams::new(0.0, 1.0).unwrap();
        let r = partialize(&p, &params, &mut rng).unwrap();
        assert_eq!(r.buckets().len(), 1);
        assert_eq!(r.ranked_count(), 6);
    }

    #[test]
    fn benchmark_setting_matches_binomial_mean() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = Permutation::identity(50);
        let params = PartializeParams::benchmark();
        let draws = 10_000;
        let mut total = 0usize;
        for _ in 0..draws {
            total += partialize(&p, &params, &mut rng).unwrap().ranked_count();
        }
        let mean = total as f64 / draws as f64;
        let expected = 50.0 * (1.0 - params.p_discard);
        let rel = (mean - expected).abs() / expected;
        assert!(rel < 0.05, "mean retained {mean} vs expected {expected}");
    }

    #[test]
    fn never_introduces_inversions() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let params = PartializeParams::new(0.4, 0.4).unwrap();
        for _ in 0..200 {
            let p = Permutation::random(9, &mut rng);
            let r = partialize(&p, &params, &mut rng).unwrap();
            let base = decompose_pairs(&p.to_ranking());
            for pair in decompose_pairs(&r) {
                assert!(base.contains(&pair), "{pair:?} contradicts the source");
            }
        }
    }

    #[test]
    fn near_certain_discard_eventually_fails() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let p = Permutation::identity(2);
        let params = PartializeParams::new(0.999_999_999, 0.5).unwrap();
        assert_eq!(
            partialize(&p, &params, &mut rng),
            Err(PartializeError::GenerationFailure)
        );
    }
}
