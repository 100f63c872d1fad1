//! Machine-readable output payloads. Field order is part of the schema.

use rankagg::{mean_fitness, Dataset, SolverResult, RNG_ALGORITHM};
use serde::Serialize;

/// Rounds a reported fitness to the 3 decimal places the tables use.
pub fn round_fitness(value: f64) -> f64 {
    (value * 1000.0).round() / 1000.0
}

#[derive(Serialize)]
pub struct ParamsEcho {
    max_gens: u64,
    pop_size: usize,
    beta: f64,
    max_iters: u64,
    history_len: usize,
    time_limit_s: Option<f64>,
    rng: &'static str,
}

#[derive(Serialize)]
pub struct SolveOutput {
    algorithm: String,
    instance: String,
    m: usize,
    n: usize,
    seed: u64,
    params: ParamsEcho,
    best_ranking: String,
    fitness_sum: u64,
    fitness: f64,
    iterations: u64,
    evaluations: u64,
    generations: u64,
    elapsed_ms: u64,
}

impl SolveOutput {
    pub fn new(result: &SolverResult, instance: &str, dataset: &Dataset) -> Self {
        SolveOutput {
            algorithm: result.algorithm.to_string(),
            instance: instance.to_string(),
            m: dataset.universe_size(),
            n: dataset.len(),
            seed: result.seed,
            params: ParamsEcho {
                max_gens: result.params.max_gens,
                pop_size: result.params.pop_size,
                beta: result.params.beta,
                max_iters: result.params.max_iters,
                history_len: result.params.history_len,
                time_limit_s: result.params.time_limit.map(|d| d.as_secs_f64()),
                rng: RNG_ALGORITHM,
            },
            best_ranking: result.best.to_string(),
            fitness_sum: result.fitness_sum,
            fitness: round_fitness(result.fitness),
            iterations: result.iterations,
            evaluations: result.evaluations,
            generations: result.generations,
            elapsed_ms: result.elapsed.as_millis() as u64,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("output serializes")
    }
}

#[derive(Serialize)]
pub struct EvalOutput {
    fitness_sum: u64,
    fitness: f64,
}

impl EvalOutput {
    pub fn new(fitness_sum: u64, n: usize) -> Self {
        EvalOutput {
            fitness_sum,
            fitness: round_fitness(mean_fitness(fitness_sum, n)),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("output serializes")
    }
}
