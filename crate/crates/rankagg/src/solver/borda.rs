//! Borda count baselines.
//!
//! Complete rankings award `m − r` points at rank `r`. Partial rankings use
//! the extended scoring where a missing label scores `(m+1)/2` and a label
//! ranked `r`-th among `m'` scores `(m'+1−r)·(m+1)/(m'+1)`; labels tied in
//! a bucket receive the mean of the ranks the bucket spans.

use rand::Rng;

use crate::dataset::Dataset;
use crate::ranking::{Permutation, Ranking, UNRANKED};
use crate::solver::order_by_score_desc;

fn add_scores(scores: &mut [f64], r: &Ranking) {
    let m = scores.len() as f64;
    if r.is_complete() {
        let mut covered = 0usize;
        for bucket in r.buckets() {
            let len = bucket.len();
            let mid_rank = covered as f64 + (len as f64 + 1.0) / 2.0;
            let points = m - mid_rank;
            for &label in bucket {
                scores[label.index()] += points;
            }
            covered += len;
        }
    } else {
        let ranked = r.ranked_count() as f64;
        let factor = (m + 1.0) / (ranked + 1.0);
        let mut covered = 0usize;
        for bucket in r.buckets() {
            let len = bucket.len();
            let mid_rank = covered as f64 + (len as f64 + 1.0) / 2.0;
            let points = (ranked + 1.0 - mid_rank) * factor;
            for &label in bucket {
                scores[label.index()] += points;
            }
            covered += len;
        }
        let missing = (m + 1.0) / 2.0;
        for (index, &bucket) in r.bucket_table().iter().enumerate() {
            if bucket == UNRANKED {
                scores[index] += missing;
            }
        }
    }
}

fn borda_over<'a, R, I>(m: usize, rankings: I, rng: &mut R) -> Permutation
where
    R: Rng + ?Sized,
    I: Iterator<Item = &'a Ranking>,
{
    let mut scores = vec![0.0f64; m];
    for r in rankings {
        add_scores(&mut scores, r);
    }
    order_by_score_desc(&scores, rng)
}

/// Borda aggregation of the whole dataset; score ties broken uniformly at
/// random.
pub fn borda<R: Rng + ?Sized>(d: &Dataset, rng: &mut R) -> Permutation {
    borda_over(d.universe_size(), d.rankings().iter(), rng)
}

/// Borda over a uniformly sampled subset of `⌈(1−β)·n⌉` rankings,
/// resampled on every call.
pub fn randomized_borda<R: Rng + ?Sized>(d: &Dataset, beta: f64, rng: &mut R) -> Permutation {
    assert!(
        beta > 0.0 && beta < 0.5,
        "randomization factor must lie in (0, 0.5)"
    );
    let n = d.len();
    let amount = (((1.0 - beta) * n as f64).ceil() as usize).clamp(1, n);
    let chosen = rand::seq::index::sample(rng, n, amount);
    borda_over(
        d.universe_size(),
        chosen.iter().map(|i| &d.rankings()[i]),
        rng,
    )
}
