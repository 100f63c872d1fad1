//! Random rankings with ties and missing labels for unit tests.

use rand::Rng;

use crate::ranking::{Label, Permutation, Ranking};

/// Every permutation of `m` labels, in lexicographic order of the order
/// vector (enumeration oracle; keep `m` small).
pub(crate) fn all_permutations(m: usize) -> Vec<Permutation> {
    let mut result = Vec::new();
    let mut current: Vec<Label> = Vec::with_capacity(m);
    let mut used = vec![false; m];
    fn recurse(
        m: usize,
        current: &mut Vec<Label>,
        used: &mut Vec<bool>,
        result: &mut Vec<Permutation>,
    ) {
        if current.len() == m {
            result.push(Permutation::from_order(current.clone()).unwrap());
            return;
        }
        for i in 0..m {
            if !used[i] {
                used[i] = true;
                current.push(Label::new(i as u32 + 1));
                recurse(m, current, used, result);
                current.pop();
                used[i] = false;
            }
        }
    }
    recurse(m, &mut current, &mut used, &mut result);
    result
}

/// Random ranking over `2..=m` labels with random tie structure.
pub(crate) fn random_ranking<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Ranking {
    let base = Permutation::random(m, rng);
    let keep = rng.random_range(2..=m);
    let labels: Vec<Label> = base.order()[..keep].to_vec();
    let mut buckets: Vec<Vec<Label>> = vec![vec![labels[0]]];
    for &label in &labels[1..] {
        if rng.random_bool(0.3) {
            buckets.last_mut().unwrap().push(label);
        } else {
            buckets.push(vec![label]);
        }
    }
    Ranking::new(m, buckets).expect("constructed ranking is valid")
}
