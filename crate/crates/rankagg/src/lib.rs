//! Rank aggregation toolkit.
//!
//! Aggregates `n` preference rankings over `m` labels into a single
//! consensus permutation minimizing the mean (extended) Kendall distance.
//! The crate provides the ranking data model with complete, partial, and
//! tied rankings; exact distance computation with incremental swap
//! evaluation; Mallows-model benchmark generation with partialization; and
//! three solvers: the Borda baseline, late acceptance driven search (LADS),
//! and the hybrid evolutionary ranking algorithm (HER) combining a
//! concordant-pairs crossover with LADS refinement.
//!
//! Fitness is kept as an exact integer sum of pair disagreements; division
//! by `n` happens only when values are reported.

pub mod dataset;
pub mod distance;
pub mod io;
pub mod mallows;
pub mod pairs;
pub mod partialize;
pub mod ranking;
pub mod solver;

#[cfg(test)]
pub(crate) mod testutil;

pub use dataset::{Dataset, DatasetError};
pub use distance::{
    extended_kendall, extended_kendall_rankings, fitness, fitness_sum, kendall_distance,
    mean_fitness,
};
pub use io::{read_dataset, write_dataset, DatasetFileError, DatasetFormat};
pub use mallows::{generate_dataset, sample_mallows, MallowsError, MallowsParams};
pub use pairs::{concordant_pairs, decompose_pairs, PreferencePair};
pub use partialize::{partialize, partialize_dataset, PartializeError, PartializeParams};
pub use ranking::{Label, Permutation, Ranking, RankingError};
pub use solver::borda::{borda, randomized_borda};
pub use solver::cpsc::cpsc;
pub use solver::delta::{fitness_delta, swap_delta};
pub use solver::her::{population_init, population_update, Population};
pub use solver::lads::{lads, CostList, LadsOutcome};
pub use solver::{solve, Algorithm, ParamsError, SolverParams, SolverResult, RNG_ALGORITHM};
