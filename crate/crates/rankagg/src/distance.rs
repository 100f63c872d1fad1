//! Kendall and extended Kendall distances, and the aggregation objective.
//!
//! Distances are discordant-pair counts. The canonical objective is the
//! integer sum of distances over the dataset; division by `n` happens only
//! when a value is reported, so fitness comparisons inside the solvers stay
//! exact.

use crate::dataset::Dataset;
use crate::ranking::{Permutation, Ranking, UNRANKED};

/// Counts pairs `i < j` with `seq[i] > seq[j]` by bottom-up merge sort.
///
/// Equal elements are never counted, so tie buckets encoded as equal keys
/// contribute nothing.
fn count_discordant(seq: &mut [u32]) -> u64 {
    let n = seq.len();
    if n < 2 {
        return 0;
    }
    let mut buf = vec![0u32; n];
    let mut src: &mut [u32] = seq;
    let mut dst: &mut [u32] = &mut buf;
    let mut count = 0u64;
    let mut width = 1;
    let mut flipped = false;
    while width < n {
        let mut start = 0;
        while start < n {
            let mid = (start + width).min(n);
            let end = (start + 2 * width).min(n);
            let (mut i, mut j, mut k) = (start, mid, start);
            while i < mid && j < end {
                if src[i] <= src[j] {
                    dst[k] = src[i];
                    i += 1;
                } else {
                    dst[k] = src[j];
                    j += 1;
                    count += (mid - i) as u64;
                }
                k += 1;
            }
            dst[k..end - (mid - i)].copy_from_slice(&src[j..end]);
            let k = end - (mid - i);
            dst[k..end].copy_from_slice(&src[i..mid]);
            start = end;
        }
        std::mem::swap(&mut src, &mut dst);
        flipped = !flipped;
        width *= 2;
    }
    if flipped {
        dst.copy_from_slice(src);
    }
    count
}

/// Kendall tau distance between two permutations over the same universe.
///
/// Runs in O(m log m) by counting inversions of the composed permutation.
pub fn kendall_distance(u: &Permutation, v: &Permutation) -> u64 {
    assert_eq!(u.len(), v.len(), "universe size mismatch");
    let mut composed: Vec<u32> = u
        .order()
        .iter()
        .map(|&label| v.position(label) as u32)
        .collect();
    count_discordant(&mut composed)
}

/// Extended Kendall distance from a permutation to an arbitrary ranking.
///
/// Counts label pairs that are ranked in different buckets of `s` and whose
/// strict order in `s` opposes the order in `u`; pairs tied in `s` or with
/// an unranked label contribute nothing. Equals [`kendall_distance`] when
/// `s` is a permutation.
pub fn extended_kendall(u: &Permutation, s: &Ranking) -> u64 {
    assert_eq!(u.len(), s.universe_size(), "universe size mismatch");
    let table = s.bucket_table();
    let mut seq: Vec<u32> = u
        .order()
        .iter()
        .filter_map(|&label| match table[label.index()] {
            UNRANKED => None,
            bucket => Some(bucket),
        })
        .collect();
    count_discordant(&mut seq)
}

/// Extended Kendall distance between two arbitrary rankings.
///
/// A pair counts iff both labels are ranked in both rankings and the two
/// rankings express strictly opposite preferences; a tie on either side
/// contributes nothing.
pub fn extended_kendall_rankings(a: &Ranking, b: &Ranking) -> u64 {
    assert_eq!(
        a.universe_size(),
        b.universe_size(),
        "universe size mismatch"
    );
    let mut common: Vec<(u32, u32)> = Vec::new();
    for index in 0..a.universe_size() {
        let ba = a.bucket_table()[index];
        let bb = b.bucket_table()[index];
        if ba != UNRANKED && bb != UNRANKED {
            common.push((ba, bb));
        }
    }
    let mut count = 0u64;
    for i in 0..common.len() {
        for j in i + 1..common.len() {
            let (ai, bi) = common[i];
            let (aj, bj) = common[j];
            if ai != aj && bi != bj && ((ai < aj) != (bi < bj)) {
                count += 1;
            }
        }
    }
    count
}

/// Canonical objective: the integer sum of extended Kendall distances from
/// `p` to every ranking of the dataset.
pub fn fitness_sum(p: &Permutation, d: &Dataset) -> u64 {
    assert_eq!(p.len(), d.universe_size(), "universe size mismatch");
    d.rankings().iter().map(|r| extended_kendall(p, r)).sum()
}

/// Reported objective value: `fitness_sum / n` as a decimal.
pub fn fitness(p: &Permutation, d: &Dataset) -> f64 {
    mean_fitness(fitness_sum(p, d), d.len())
}

/// Converts an integer fitness sum to the reported mean.
pub fn mean_fitness(sum: u64, n: usize) -> f64 {
    sum as f64 / n as f64
}
