//! Batch benchmark runner: every (instance, algorithm, seed) combination,
//! optionally in parallel, with deterministic CSV output and a per-algorithm
//! summary on stdout.

use std::fmt::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};

use rankagg::{read_dataset, solve, Algorithm, Dataset};

use crate::output::round_fitness;
use crate::seed::{fnv1a64, mix_seeds};
use crate::{CliError, FormatArg, ParamFlags};

pub const CSV_HEADER: &str =
    "instance,algorithm,seed,fitness,fitness_sum,elapsed_ms,iterations,generations";

struct BenchRow {
    instance: String,
    algorithm: Algorithm,
    seed: u64,
    fitness: f64,
    fitness_sum: u64,
    elapsed_ms: u64,
    iterations: u64,
    generations: u64,
}

impl BenchRow {
    fn csv_line(&self) -> String {
        format!(
            "{},{},{},{:.3},{},{},{},{}",
            self.instance,
            self.algorithm,
            self.seed,
            self.fitness,
            self.fitness_sum,
            self.elapsed_ms,
            self.iterations,
            self.generations
        )
    }
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_bench(
    dir: &Path,
    algorithms: &[Algorithm],
    seeds: &[u64],
    master_seed: u64,
    jobs: usize,
    out: &Path,
    format: FormatArg,
    flags: &ParamFlags,
) -> Result<(), CliError> {
    let params = flags.to_params()?;
    let instances = list_instances(dir)?;
    if instances.is_empty() {
        return Err(CliError::Usage(format!(
            "{}: no instance files found",
            dir.display()
        )));
    }
    if algorithms.is_empty() {
        return Err(CliError::Usage("no algorithms selected".to_string()));
    }
    if seeds.is_empty() {
        return Err(CliError::Usage("no seeds given".to_string()));
    }

    // Read every instance up front so parse errors surface deterministically.
    let mut datasets: Vec<(String, Dataset)> = Vec::with_capacity(instances.len());
    for path in &instances {
        let dataset = read_dataset(path, format.into())?;
        datasets.push((path.display().to_string(), dataset));
    }

    let mut runs: Vec<(usize, Algorithm, u64)> = Vec::new();
    for instance_idx in 0..datasets.len() {
        for &algorithm in algorithms {
            for &seed in seeds {
                runs.push((instance_idx, algorithm, seed));
            }
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Runtime(format!("worker pool: {e}")))?;

    let results: Vec<Result<BenchRow, String>> = pool.install(|| {
        use rayon::prelude::*;
        runs.par_iter()
            .map(|&(instance_idx, algorithm, seed)| {
                let (name, dataset) = &datasets[instance_idx];
                run_one(name, dataset, algorithm, seed, master_seed, &params)
            })
            .collect()
    });

    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for result in results {
        match result {
            Ok(row) => rows.push(row),
            Err(message) => failures.push(message),
        }
    }
    rows.sort_by(|a, b| {
        (&a.instance, a.algorithm, a.seed).cmp(&(&b.instance, b.algorithm, b.seed))
    });

    let mut csv = String::with_capacity(64 * (rows.len() + 1));
    csv.push_str(CSV_HEADER);
    csv.push('\n');
    for row in &rows {
        csv.push_str(&row.csv_line());
        csv.push('\n');
    }
    std::fs::write(out, &csv).map_err(|e| CliError::Runtime(format!("{}: {e}", out.display())))?;

    print!("{}", summarize(algorithms, &rows));

    if failures.is_empty() {
        Ok(())
    } else {
        for failure in &failures {
            eprintln!("error: {failure}");
        }
        Err(CliError::Runtime(format!(
            "{} of {} runs failed",
            failures.len(),
            rows.len() + failures.len()
        )))
    }
}

fn run_one(
    name: &str,
    dataset: &Dataset,
    algorithm: Algorithm,
    seed: u64,
    master_seed: u64,
    params: &rankagg::SolverParams,
) -> Result<BenchRow, String> {
    let derived = mix_seeds(&[
        master_seed,
        fnv1a64(name.as_bytes()),
        fnv1a64(algorithm.as_str().as_bytes()),
        seed,
    ]);
    let outcome = catch_unwind(AssertUnwindSafe(|| {
        solve(dataset, algorithm, params, derived)
    }));
    match outcome {
        Ok(Ok(result)) => Ok(BenchRow {
            instance: name.to_string(),
            algorithm,
            seed,
            fitness: round_fitness(result.fitness),
            fitness_sum: result.fitness_sum,
            elapsed_ms: result.elapsed.as_millis() as u64,
            iterations: result.iterations,
            generations: result.generations,
        }),
        Ok(Err(e)) => Err(format!("{name} {algorithm} seed {seed}: {e}")),
        Err(panic) => {
            let message = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "worker panicked".to_string());
            Err(format!("{name} {algorithm} seed {seed}: {message}"))
        }
    }
}

fn list_instances(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let entries = std::fs::read_dir(dir)
        .map_err(|e| CliError::Runtime(format!("{}: {e}", dir.display())))?;
    let mut files = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| CliError::Runtime(format!("{}: {e}", dir.display())))?;
        let path = entry.path();
        let hidden = path
            .file_name()
            .and_then(|n| n.to_str())
            .is_some_and(|n| n.starts_with('.'));
        if path.is_file() && !hidden {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

/// Per-algorithm summary block mirroring the best/average/time columns of
/// the benchmark tables.
fn summarize(algorithms: &[Algorithm], rows: &[BenchRow]) -> String {
    let mut out = String::new();
    for &algorithm in algorithms {
        let group: Vec<&BenchRow> = rows.iter().filter(|r| r.algorithm == algorithm).collect();
        if group.is_empty() {
            continue;
        }
        let f_best = group.iter().map(|r| r.fitness).fold(f64::INFINITY, f64::min);
        let f_avg = group.iter().map(|r| r.fitness).sum::<f64>() / group.len() as f64;
        let t_avg = group.iter().map(|r| r.elapsed_ms as f64).sum::<f64>() / group.len() as f64;
        writeln!(
            out,
            "group {algorithm}: runs={} f_best={:.3} f_avg={:.3} t_avg_ms={:.1}",
            group.len(),
            f_best,
            f_avg,
            t_avg
        )
        .unwrap();
    }
    out
}
