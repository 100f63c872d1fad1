//! Mallows-model benchmark instance generation.
//!
//! Draws permutations from `P(π) ∝ exp(−θ·d(π, π_0))` with the repeated
//! insertion method, which samples the model exactly without rejection.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::dataset::Dataset;
use crate::ranking::{Label, Permutation};

/// Parameters of a Mallows instance family.
#[derive(Clone, Debug)]
pub struct MallowsParams {
    pub m: usize,
    pub theta: f64,
    pub center: Permutation,
    pub n: usize,
}

#[derive(Debug, Error, PartialEq)]
pub enum MallowsError {
    #[error("theta must be nonnegative and finite, got {0}")]
    BadTheta(f64),
    #[error("permutation length must be at least 2, got {0}")]
    BadLength(usize),
    #[error("sample count must be at least 1")]
    BadSampleCount,
    #[error("center has length {found}, expected {expected}")]
    CenterMismatch { found: usize, expected: usize },
}

impl MallowsParams {
    /// Builds a parameter set with the identity center.
    pub fn with_identity_center(
        m: usize,
        theta: f64,
        n: usize,
    ) -> Result<Self, MallowsError> {
        Self::new(m, theta, Permutation::identity(m), n)
    }

    /// Benchmark instances use `theta > 0`; `theta = 0` (the uniform limit)
    /// is accepted for test purposes.
    pub fn new(
        m: usize,
        theta: f64,
        center: Permutation,
        n: usize,
    ) -> Result<Self, MallowsError> {
        if !(theta >= 0.0 && theta.is_finite()) {
            return Err(MallowsError::BadTheta(theta));
        }
        if m < 2 {
            return Err(MallowsError::BadLength(m));
        }
        if n < 1 {
            return Err(MallowsError::BadSampleCount);
        }
        if center.len() != m {
            return Err(MallowsError::CenterMismatch {
                found: center.len(),
                expected: m,
            });
        }
        Ok(MallowsParams {
            m,
            theta,
            center,
            n,
        })
    }
}

/// One draw from the Mallows distribution via repeated insertion.
///
/// Items of the center are inserted in preference order; at step `i`
/// (1-based) the new item lands in slot `j ∈ {1..i}` with probability
/// proportional to `exp(−θ·(i−j))`.
pub fn sample_mallows<R: Rng + ?Sized>(params: &MallowsParams, rng: &mut R) -> Permutation {
    let m = params.m;
    // Geometric slot weights: exp(−θ·k) = r^k for displacement k = i − j.
    let r = (-params.theta).exp();
    let mut order: Vec<Label> = Vec::with_capacity(m);
    let mut weights: Vec<f64> = Vec::with_capacity(m);
    for (step, &item) in params.center.order().iter().enumerate() {
        let i = step + 1;
        weights.clear();
        let mut w = 1.0;
        let mut total = 0.0;
        // weights[k] is the weight of displacement k, i.e. slot j = i − k.
        for _ in 0..i {
            weights.push(w);
            total += w;
            w *= r;
        }
        let x = rng.random::<f64>() * total;
        let mut acc = 0.0;
        let mut displacement = i - 1;
        for (k, &wk) in weights.iter().enumerate() {
            acc += wk;
            if x < acc {
                displacement = k;
                break;
            }
        }
        order.insert(i - 1 - displacement, item);
    }
    Permutation::from_order(order).expect("insertion keeps the order a permutation")
}

/// Generates `n` independent Mallows draws, reproducible from the seed.
pub fn generate_dataset(params: &MallowsParams, seed: u64) -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let perms: Vec<Permutation> = (0..params.n)
        .map(|_| sample_mallows(params, &mut rng))
        .collect();
    Dataset::from_permutations(perms).expect("n >= 1 checked at construction")
}
