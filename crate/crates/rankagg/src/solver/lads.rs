//! Late acceptance driven search.
//!
//! Keeps a circular list of the last `L_h` accepted costs together with its
//! running maximum and multiplicity. A candidate swap is accepted when it
//! is cost-neutral or beats the list maximum; the slot at the virtual
//! beginning is then raised to the current cost if larger, or lowered when
//! the current cost both undercuts the slot and improved on the previous
//! iteration.

use std::time::Instant;

use rand::Rng;

use crate::dataset::Dataset;
use crate::distance::fitness_sum;
use crate::ranking::{Label, Permutation};
use crate::solver::delta::fitness_delta;
use crate::solver::SolverParams;

/// Circular cost history with tracked maximum and multiplicity.
///
/// `max` and `max_multiplicity` always equal the true maximum of the buffer
/// and its count; debug builds shadow-check this after every update.
#[derive(Clone, Debug)]
pub struct CostList {
    costs: Vec<u64>,
    max: u64,
    multiplicity: usize,
}

impl CostList {
    pub fn new(len: usize, initial: u64) -> Self {
        assert!(len >= 1, "history length must be at least 1");
        CostList {
            costs: vec![initial; len],
            max: initial,
            multiplicity: len,
        }
    }

    pub fn len(&self) -> usize {
        self.costs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.costs.is_empty()
    }

    pub fn costs(&self) -> &[u64] {
        &self.costs
    }

    pub fn max(&self) -> u64 {
        self.max
    }

    pub fn max_multiplicity(&self) -> usize {
        self.multiplicity
    }

    /// Applies the virtual-beginning update for one iteration: `current` is
    /// the cost after the acceptance decision, `previous` the cost before
    /// the candidate move.
    pub fn update(&mut self, slot: usize, current: u64, previous: u64) {
        let old = self.costs[slot];
        if current > old {
            self.costs[slot] = current;
            if current > self.max {
                self.max = current;
                self.multiplicity = 1;
            } else if current == self.max {
                self.multiplicity += 1;
            }
        } else if current < old && current < previous {
            self.costs[slot] = current;
            if old == self.max {
                self.multiplicity -= 1;
                if self.multiplicity == 0 {
                    self.recompute();
                }
            }
        }
        debug_assert!(self.invariant_holds(), "cost list max/multiplicity drifted");
    }

    fn recompute(&mut self) {
        self.max = *self.costs.iter().max().expect("list is nonempty");
        self.multiplicity = self.costs.iter().filter(|&&c| c == self.max).count();
    }

    pub fn invariant_holds(&self) -> bool {
        let true_max = *self.costs.iter().max().unwrap();
        let true_mult = self.costs.iter().filter(|&&c| c == true_max).count();
        self.max == true_max && self.multiplicity == true_mult
    }
}

/// Outcome of one LADS run.
#[derive(Clone, Debug)]
pub struct LadsOutcome {
    pub best: Permutation,
    pub best_sum: u64,
    pub iterations: u64,
    pub evaluations: u64,
}

/// Runs LADS from `start` until `max_iters` iterations pass without
/// improving the best-so-far solution, or the configured time budget runs
/// out.
pub fn lads<R: Rng + ?Sized>(
    start: &Permutation,
    d: &Dataset,
    params: &SolverParams,
    rng: &mut R,
) -> LadsOutcome {
    let deadline = params.time_limit.map(|limit| Instant::now() + limit);
    lads_engine(start, d, params, rng, deadline, &mut |_| {})
}

pub(crate) fn lads_engine<R: Rng + ?Sized>(
    start: &Permutation,
    d: &Dataset,
    params: &SolverParams,
    rng: &mut R,
    deadline: Option<Instant>,
    on_accept: &mut dyn FnMut(u64),
) -> LadsOutcome {
    let m = d.universe_size();
    assert!(m >= 2, "search needs at least two labels");
    assert_eq!(start.len(), m, "universe size mismatch");

    let mut current = start.clone();
    let mut current_sum = fitness_sum(&current, d);
    let mut evaluations: u64 = 1;
    let mut best = current.clone();
    let mut best_sum = current_sum;
    let mut list = CostList::new(params.history_len, current_sum);
    let history_len = params.history_len as u64;
    let mut iterations: u64 = 0;
    let mut idle: u64 = 0;

    while idle < params.max_iters {
        if let Some(deadline) = deadline {
            if iterations & 1023 == 0 && Instant::now() >= deadline {
                break;
            }
        }
        let previous_sum = current_sum;
        let (a, b) = random_label_pair(m, rng);
        let delta = fitness_delta(&current, a, b, d);
        evaluations += 1;
        let candidate_sum = current_sum
            .checked_add_signed(delta)
            .expect("fitness sums stay nonnegative");
        let slot = (iterations % history_len) as usize;
        if candidate_sum == current_sum || candidate_sum < list.max() {
            current.swap_labels(a, b);
            current_sum = candidate_sum;
            on_accept(current_sum);
            if current_sum < best_sum {
                best = current.clone();
                best_sum = current_sum;
                idle = 0;
            } else {
                idle += 1;
            }
        } else {
            idle += 1;
        }
        list.update(slot, current_sum, previous_sum);
        iterations += 1;
    }

    LadsOutcome {
        best,
        best_sum,
        iterations,
        evaluations,
    }
}

/// Uniform unordered pair of distinct labels.
fn random_label_pair<R: Rng + ?Sized>(m: usize, rng: &mut R) -> (Label, Label) {
    let i = rng.random_range(0..m);
    let mut j = rng.random_range(0..m - 1);
    if j >= i {
        j += 1;
    }
    (Label::from_index(i), Label::from_index(j))
}
