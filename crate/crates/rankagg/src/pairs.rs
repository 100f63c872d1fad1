//! Pairwise preference decomposition and concordant pairs.

use std::collections::HashSet;

use crate::ranking::{Label, Permutation, Ranking};

/// A strict preference statement `preferred ≺ other`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PreferencePair {
    pub preferred: Label,
    pub other: Label,
}

impl PreferencePair {
    pub fn new(preferred: Label, other: Label) -> Self {
        assert_ne!(preferred, other, "a label cannot be preferred to itself");
        PreferencePair { preferred, other }
    }
}

/// All strict pairwise preferences expressed by a ranking.
///
/// Tied labels and unranked labels yield no pairs; a permutation decomposes
/// into exactly `m(m-1)/2` pairs.
pub fn decompose_pairs(r: &Ranking) -> HashSet<PreferencePair> {
    let mut pairs = HashSet::new();
    for (bi, bucket) in r.buckets().iter().enumerate() {
        for lower in &r.buckets()[bi + 1..] {
            for &a in bucket {
                for &b in lower {
                    pairs.insert(PreferencePair::new(a, b));
                }
            }
        }
    }
    pairs
}

/// Preference pairs shared by two permutations (their backbone).
///
/// The result is the intersection of two linear orders, hence a strict
/// partial order.
pub fn concordant_pairs(u: &Permutation, v: &Permutation) -> HashSet<PreferencePair> {
    assert_eq!(u.len(), v.len(), "universe size mismatch");
    let m = u.len();
    let mut pairs = HashSet::new();
    for i in 0..m {
        for j in i + 1..m {
            let a = Label::new(i as u32 + 1);
            let b = Label::new(j as u32 + 1);
            let in_u = u.position(a) < u.position(b);
            let in_v = v.position(a) < v.position(b);
            if in_u == in_v {
                let pair = if in_u {
                    PreferencePair::new(a, b)
                } else {
                    PreferencePair::new(b, a)
                };
                pairs.insert(pair);
            }
        }
    }
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::kendall_distance;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn perm(values: &[u32]) -> Permutation {
        Permutation::from_order(values.iter().map(|&v| Label::new(v)).collect()).unwrap()
    }

    fn pair(a: u32, b: u32) -> PreferencePair {
        PreferencePair::new(Label::new(a), Label::new(b))
    }

    #[test]
    fn decompose_paper_example() {
        let r = Ranking::parse("4|2|1|3", 4).unwrap();
        let expected: HashSet<_> = [
            pair(4, 2),
            pair(4, 1),
            pair(4, 3),
            pair(2, 1),
            pair(2, 3),
            pair(1, 3),
        ]
        .into_iter()
        .collect();
        assert_eq!(decompose_pairs(&r), expected);
    }

    #[test]
    fn tied_labels_yield_no_pair() {
        let r = Ranking::parse("1,2|4", 4).unwrap();
        let expected: HashSet<_> = [pair(1, 4), pair(2, 4)].into_iter().collect();
        assert_eq!(decompose_pairs(&r), expected);
    }

    #[test]
    fn permutation_has_all_pairs() {
        let p = Permutation::identity(5);
        assert_eq!(decompose_pairs(&p.to_ranking()).len(), 10);
    }

    #[test]
    fn concordant_paper_example() {
        let u = perm(&[1, 3, 4, 5, 2]);
        let v = perm(&[1, 5, 3, 4, 2]);
        let expected: HashSet<_> = [
            pair(1, 2),
            pair(1, 3),
            pair(1, 4),
            pair(1, 5),
            pair(3, 2),
            pair(3, 4),
            pair(4, 2),
            pair(5, 2),
        ]
        .into_iter()
        .collect();
        assert_eq!(concordant_pairs(&u, &v), expected);
    }

    #[test]
    fn concordant_extremes() {
        let u = perm(&[2, 1, 3]);
        assert_eq!(concordant_pairs(&u, &u).len(), 3);
        let w = perm(&[2, 3, 1]);
        assert_eq!(
            concordant_pairs(&u, &w),
            [pair(2, 1), pair(2, 3)].into_iter().collect()
        );
        let id = perm(&[1, 2, 3]);
        let rev = perm(&[3, 2, 1]);
        assert!(concordant_pairs(&id, &rev).is_empty());
    }

    #[test]
    fn concordant_complements_kendall() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let m = rng.random_range(2..=9);
            let u = Permutation::random(m, &mut rng);
            let v = Permutation::random(m, &mut rng);
            let total = (m * (m - 1) / 2) as u64;
            assert_eq!(
                concordant_pairs(&u, &v).len() as u64,
                total - kendall_distance(&u, &v)
            );
        }
    }

    #[test]
    fn kendall_equals_decompose_difference() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..100 {
            let m = rng.random_range(2..=8);
            let u = Permutation::random(m, &mut rng);
            let v = Permutation::random(m, &mut rng);
            let ru = decompose_pairs(&u.to_ranking());
            let rv = decompose_pairs(&v.to_ranking());
            assert_eq!(ru.difference(&rv).count() as u64, kendall_distance(&u, &v));
        }
    }
}
