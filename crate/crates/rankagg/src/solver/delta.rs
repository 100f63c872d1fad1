//! Incremental evaluation of swap moves.
//!
//! A swap exchanges the positions of two labels in the candidate
//! permutation. Only pairs involving the swapped labels and the labels
//! between them can change state, so the distance delta is computable in
//! O(gap) instead of re-counting from scratch.

use crate::dataset::Dataset;
use crate::ranking::{Label, Permutation, Ranking, UNRANKED};

/// Change in `extended_kendall(p, s)` caused by swapping labels `a` and `b`
/// in `p`, without applying the move.
pub fn swap_delta(p: &Permutation, a: Label, b: Label, s: &Ranking) -> i64 {
    assert_ne!(a, b, "swap needs two distinct labels");
    assert_eq!(p.len(), s.universe_size(), "universe size mismatch");
    let (x, y) = if p.position(a) < p.position(b) {
        (a, b)
    } else {
        (b, a)
    };
    if let Some(order) = s.strict_order() {
        let bx = s.bucket_raw(x);
        let by = s.bucket_raw(y);
        if bx != UNRANKED && by != UNRANKED {
            return strict_window_delta(p, x, y, bx as usize, by as usize, order);
        }
    }
    bucket_walk_delta(p, x, y, s.bucket_table())
}

/// Fast path for tie-free rankings with both swap labels ranked: walk the
/// ranks of `s` strictly between the two labels. Each label lying inside
/// both the `s` window and the `p` window flips two pairs at once.
fn strict_window_delta(
    p: &Permutation,
    x: Label,
    y: Label,
    sx: usize,
    sy: usize,
    order: &[Label],
) -> i64 {
    let sign: i64 = if sx < sy { 1 } else { -1 };
    let (lo, hi) = if sx < sy { (sx, sy) } else { (sy, sx) };
    let px = p.position(x);
    let py = p.position(y);
    let mut delta = sign;
    for &v in &order[lo + 1..hi] {
        let pv = p.position(v);
        if px < pv && pv < py {
            delta += 2 * sign;
        }
    }
    delta
}

/// General path: walk the labels of `p` strictly between the swapped
/// positions and account for each flipped pair under the extended-Kendall
/// semantics (unranked labels and ties contribute nothing).
fn bucket_walk_delta(p: &Permutation, x: Label, y: Label, table: &[u32]) -> i64 {
    let bx = table[x.index()];
    let by = table[y.index()];
    let px = p.position(x);
    let py = p.position(y);
    let mut delta = 0i64;
    if bx != UNRANKED && by != UNRANKED && bx != by {
        delta += if bx < by { 1 } else { -1 };
    }
    for &v in &p.order()[px + 1..py] {
        let bv = table[v.index()];
        if bv == UNRANKED {
            continue;
        }
        // p said x ≺ v; after the swap it says v ≺ x.
        if bx != UNRANKED && bv != bx {
            delta += if bx < bv { 1 } else { -1 };
        }
        // p said v ≺ y; after the swap it says y ≺ v.
        if by != UNRANKED && bv != by {
            delta += if bv < by { 1 } else { -1 };
        }
    }
    delta
}

/// Change in the dataset fitness sum caused by swapping `a` and `b` in `p`.
pub fn fitness_delta(p: &Permutation, a: Label, b: Label, d: &Dataset) -> i64 {
    d.rankings().iter().map(|s| swap_delta(p, a, b, s)).sum()
}
