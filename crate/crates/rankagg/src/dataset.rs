//! Input profiles: a set of rankings over a common label universe.

use thiserror::Error;

use crate::ranking::{Permutation, Ranking};

/// Errors from assembling a dataset.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum DatasetError {
    #[error("dataset needs at least one ranking")]
    NoRankings,
    #[error("ranking {index} has universe size {found}, dataset declares {expected}")]
    UniverseMismatch {
        index: usize,
        found: usize,
        expected: usize,
    },
}

/// `n` input rankings over the universe `{1..m}`.
///
/// Each ranking carries its own bucket table, which doubles as the rank
/// table the solvers evaluate against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dataset {
    m: usize,
    rankings: Vec<Ranking>,
    complete: bool,
}

impl Dataset {
    pub fn new(m: usize, rankings: Vec<Ranking>) -> Result<Self, DatasetError> {
        if rankings.is_empty() {
            return Err(DatasetError::NoRankings);
        }
        for (index, r) in rankings.iter().enumerate() {
            if r.universe_size() != m {
                return Err(DatasetError::UniverseMismatch {
                    index,
                    found: r.universe_size(),
                    expected: m,
                });
            }
        }
        let complete = rankings.iter().all(Ranking::is_permutation);
        Ok(Dataset {
            m,
            rankings,
            complete,
        })
    }

    /// Convenience constructor from complete permutations.
    pub fn from_permutations(perms: Vec<Permutation>) -> Result<Self, DatasetError> {
        let m = perms.first().map(Permutation::len).unwrap_or(0);
        Self::new(m, perms.iter().map(Permutation::to_ranking).collect())
    }

    /// Universe size `m`.
    pub fn universe_size(&self) -> usize {
        self.m
    }

    /// Number of rankings `n`.
    pub fn len(&self) -> usize {
        self.rankings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rankings.is_empty()
    }

    pub fn rankings(&self) -> &[Ranking] {
        &self.rankings
    }

    /// True iff every ranking is a complete strict permutation.
    pub fn is_complete(&self) -> bool {
        self.complete
    }
}
