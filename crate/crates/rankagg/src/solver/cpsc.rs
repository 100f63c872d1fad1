//! Concordant pairs-based semantic crossover.
//!
//! The backbone of two parents is the set of label pairs they order the
//! same way. Each label is scored by its out-degree in that backbone (how
//! many labels it precedes in both parents); sorting by descending
//! out-degree yields a linear extension of the backbone, and shuffling the
//! equal-score groups realizes the random completion of the remaining
//! relations.

use rand::Rng;

use crate::ranking::{Label, Permutation};
use crate::solver::order_by_score_desc;

/// Offspring permutation preserving every concordant pair of the parents.
pub fn cpsc<R: Rng + ?Sized>(u: &Permutation, v: &Permutation, rng: &mut R) -> Permutation {
    assert_eq!(u.len(), v.len(), "universe size mismatch");
    let m = u.len();
    let mut out_degree = vec![0u32; m];
    for i in 0..m {
        let a = Label::from_index(i);
        for j in i + 1..m {
            let b = Label::from_index(j);
            let in_u = u.position(a) < u.position(b);
            let in_v = v.position(a) < v.position(b);
            if in_u == in_v {
                if in_u {
                    out_degree[i] += 1;
                } else {
                    out_degree[j] += 1;
                }
            }
        }
    }
    order_by_score_desc(&out_degree, rng)
}
