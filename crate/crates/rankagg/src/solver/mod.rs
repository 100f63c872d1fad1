//! Search algorithms: Borda baselines, late acceptance driven search, the
//! concordant-pairs crossover, and the hybrid evolutionary driver.

pub mod borda;
pub mod cpsc;
pub mod delta;
pub mod her;
pub mod lads;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::dataset::Dataset;
use crate::distance::{fitness_sum, mean_fitness};
use crate::ranking::{Label, Permutation};

/// Identifier of the deterministic generator used by every solver, echoed
/// in output metadata.
pub const RNG_ALGORITHM: &str = "chacha8";

/// Solver parameters; the defaults are the paper's benchmark settings.
#[derive(Clone, Debug, PartialEq)]
pub struct SolverParams {
    /// Generations without improvement before HER stops.
    pub max_gens: u64,
    /// Population size `T`.
    pub pop_size: usize,
    /// Randomization factor of the randomized Borda initialization.
    pub beta: f64,
    /// LADS iterations without improvement before it stops.
    pub max_iters: u64,
    /// Cost-list length `L_h`.
    pub history_len: usize,
    /// Optional wall-clock budget covering a whole solve.
    pub time_limit: Option<Duration>,
}

impl Default for SolverParams {
    fn default() -> Self {
        SolverParams {
            max_gens: 60,
            pop_size: 20,
            beta: 0.2,
            max_iters: 5000,
            history_len: 5,
            time_limit: None,
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ParamsError {
    #[error("beta must lie strictly between 0 and 0.5, got {0}")]
    Beta(f64),
    #[error("history length must be at least 1")]
    HistoryLen,
    #[error("population size must be at least 2")]
    PopSize,
}

impl SolverParams {
    pub fn validate(&self) -> Result<(), ParamsError> {
        if !(self.beta > 0.0 && self.beta < 0.5) {
            return Err(ParamsError::Beta(self.beta));
        }
        if self.history_len < 1 {
            return Err(ParamsError::HistoryLen);
        }
        if self.pop_size < 2 {
            return Err(ParamsError::PopSize);
        }
        Ok(())
    }
}

/// The implemented aggregation algorithms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Algorithm {
    Borda,
    Lads,
    Her,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Borda => "borda",
            Algorithm::Lads => "lads",
            Algorithm::Her => "her",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "borda" => Ok(Algorithm::Borda),
            "lads" => Ok(Algorithm::Lads),
            "her" => Ok(Algorithm::Her),
            other => Err(format!("unknown algorithm {other:?}")),
        }
    }
}

/// Search-effort counters shared by the solvers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Counters {
    pub iterations: u64,
    pub evaluations: u64,
}

/// Outcome of a solver run, with enough metadata to reproduce it.
#[derive(Clone, Debug)]
pub struct SolverResult {
    pub algorithm: Algorithm,
    pub best: Permutation,
    pub fitness_sum: u64,
    pub fitness: f64,
    pub iterations: u64,
    pub evaluations: u64,
    pub generations: u64,
    pub elapsed: Duration,
    pub seed: u64,
    pub params: SolverParams,
}

/// Runs one algorithm on a dataset with a fresh seeded generator.
///
/// Identical `(dataset, algorithm, params, seed)` produce identical results
/// including counters, `elapsed` excepted, provided the time limit is not
/// the binding stop condition.
pub fn solve(
    d: &Dataset,
    algorithm: Algorithm,
    params: &SolverParams,
    seed: u64,
) -> Result<SolverResult, ParamsError> {
    params.validate()?;
    let started = Instant::now();
    let deadline = params.time_limit.map(|limit| started + limit);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (best, best_sum, iterations, evaluations, generations) = match algorithm {
        Algorithm::Borda => {
            let p = borda::borda(d, &mut rng);
            let sum = fitness_sum(&p, d);
            (p, sum, 0, 1, 0)
        }
        Algorithm::Lads => {
            let start = borda::borda(d, &mut rng);
            let out = lads::lads_engine(&start, d, params, &mut rng, deadline, &mut |_| {});
            (out.best, out.best_sum, out.iterations, out.evaluations, 0)
        }
        Algorithm::Her => {
            let out = her::her_engine(d, params, &mut rng, deadline);
            (
                out.best,
                out.best_sum,
                out.counters.iterations,
                out.counters.evaluations,
                out.generations,
            )
        }
    };
    Ok(SolverResult {
        algorithm,
        fitness: mean_fitness(best_sum, d.len()),
        fitness_sum: best_sum,
        best,
        iterations,
        evaluations,
        generations,
        elapsed: started.elapsed(),
        seed,
        params: params.clone(),
    })
}

/// Orders labels by descending score; runs of equal scores are shuffled
/// uniformly.
pub(crate) fn order_by_score_desc<T, R>(scores: &[T], rng: &mut R) -> Permutation
where
    T: PartialOrd + Copy,
    R: Rng + ?Sized,
{
    let m = scores.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| {
        scores[b]
            .partial_cmp(&scores[a])
            .expect("scores are totally comparable")
            .then(a.cmp(&b))
    });
    let mut start = 0;
    while start < m {
        let mut end = start + 1;
        while end < m && scores[order[end]] == scores[order[start]] {
            end += 1;
        }
        for i in (start + 1..end).rev() {
            let j = rng.random_range(start..=i);
            order.swap(i, j);
        }
        start = end;
    }
    Permutation::from_order(order.into_iter().map(Label::from_index).collect())
        .expect("indices 0..m form a permutation")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_the_benchmark_settings() {
        let p = SolverParams::default();
        assert_eq!(p.max_gens, 60);
        assert_eq!(p.pop_size, 20);
        assert_eq!(p.beta, 0.2);
        assert_eq!(p.max_iters, 5000);
        assert_eq!(p.history_len, 5);
        assert_eq!(p.time_limit, None);
        assert!(p.validate().is_ok());
    }

    #[test]
    fn validation_rejects_bad_params() {
        let p = SolverParams {
            beta: 0.5,
            ..SolverParams::default()
        };
        assert_eq!(p.validate(), Err(ParamsError::Beta(0.5)));
        let p = SolverParams {
            history_len: 0,
            ..SolverParams::default()
        };
        assert_eq!(p.validate(), Err(ParamsError::HistoryLen));
        let p = SolverParams {
            pop_size: 1,
            ..SolverParams::default()
        };
        assert_eq!(p.validate(), Err(ParamsError::PopSize));
    }

    #[test]
    fn algorithm_names_round_trip() {
        for algo in [Algorithm::Borda, Algorithm::Lads, Algorithm::Her] {
            assert_eq!(algo.as_str().parse::<Algorithm>().unwrap(), algo);
        }
        assert!("annealing".parse::<Algorithm>().is_err());
    }

    #[test]
    fn solve_is_deterministic_per_seed() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let perms = (0..8).map(|_| Permutation::random(6, &mut rng)).collect();
        let d = Dataset::from_permutations(perms).unwrap();
        let params = SolverParams {
            max_iters: 200,
            ..SolverParams::default()
        };
        for algo in [Algorithm::Borda, Algorithm::Lads, Algorithm::Her] {
            let a = solve(&d, algo, &params, 5).unwrap();
            let b = solve(&d, algo, &params, 5).unwrap();
            assert_eq!(a.best, b.best);
            assert_eq!(a.fitness_sum, b.fitness_sum);
            assert_eq!(a.iterations, b.iterations);
            assert_eq!(a.evaluations, b.evaluations);
            assert_eq!(a.generations, b.generations);
        }
    }
}
