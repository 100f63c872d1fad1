//! Command-line front end: benchmark generation, solving, evaluation, and
//! batch benchmarking with machine-readable output.
//!
//! Exit codes: 0 success, 1 runtime failure, 2 usage or parse error.
//! Diagnostics go to stderr only.

mod bench;
mod output;
mod seed;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rankagg::{
    generate_dataset, partialize_dataset, read_dataset, solve, Algorithm, Dataset,
    DatasetFileError, DatasetFormat, MallowsParams, PartializeError, PartializeParams,
    Permutation, Ranking, SolverParams,
};

#[derive(Parser)]
#[command(name = "rankagg", version, about = "Rank aggregation toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate Mallows benchmark instances with the identity center
    Generate {
        /// Permutation length
        #[arg(long)]
        m: usize,
        /// Spread parameter, > 0
        #[arg(long)]
        theta: f64,
        /// Rankings per instance
        #[arg(long, default_value_t = 100)]
        n: usize,
        /// Number of instances
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Master seed; instance i uses a seed derived from (seed, i)
        #[arg(long, default_value_t = 0, env = "RANKAGG_SEED")]
        seed: u64,
        /// Output directory
        #[arg(long)]
        out: PathBuf,
    },
    /// Turn a complete dataset into a partial one
    Partialize {
        /// Input instance file (must contain only complete rankings)
        #[arg(long = "in")]
        input: PathBuf,
        /// Probability of discarding a label
        #[arg(long, default_value_t = 2.0 / 3.0)]
        p_discard: f64,
        /// Probability a retained label stays in the current bucket
        #[arg(long, default_value_t = 5.0 / 6.0)]
        p_keep: f64,
        #[arg(long, default_value_t = 0, env = "RANKAGG_SEED")]
        seed: u64,
        /// Output instance file
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: FormatArg,
    },
    /// Solve one instance and print the result as a JSON object
    Solve {
        /// Input instance file
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        algo: AlgoArg,
        #[arg(long, default_value_t = 0, env = "RANKAGG_SEED")]
        seed: u64,
        #[arg(long, value_enum, default_value_t)]
        format: FormatArg,
        #[command(flatten)]
        params: ParamFlags,
    },
    /// Evaluate a permutation against an instance
    Eval {
        /// Input instance file
        #[arg(long = "in")]
        input: PathBuf,
        /// Permutation in bar syntax, e.g. "2|1|3"
        #[arg(long)]
        ranking: String,
        #[arg(long, value_enum, default_value_t)]
        format: FormatArg,
    },
    /// Run every (instance, algorithm, seed) combination in a directory
    Bench {
        /// Directory of instance files
        #[arg(long)]
        dir: PathBuf,
        /// Comma-separated algorithms
        #[arg(long, value_enum, value_delimiter = ',', default_value = "her")]
        algos: Vec<AlgoArg>,
        /// Comma-separated run seeds
        #[arg(long, value_delimiter = ',', default_value = "1")]
        seeds: Vec<u64>,
        /// Master seed mixed into every run's derived seed
        #[arg(long, default_value_t = 0, env = "RANKAGG_SEED")]
        master_seed: u64,
        /// Parallel workers
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        jobs: u32,
        /// Output CSV file
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: FormatArg,
        #[command(flatten)]
        params: ParamFlags,
    },
}

/// Solver parameter flags; defaults are the benchmark settings and every
/// flag can also be set through its RANKAGG_* environment variable.
#[derive(Args, Clone)]
struct ParamFlags {
    /// Generations without improvement before HER stops
    #[arg(long, default_value_t = 60, env = "RANKAGG_MAX_GENS")]
    max_gens: u64,
    /// Population size
    #[arg(long, default_value_t = 20, env = "RANKAGG_POP_SIZE")]
    pop_size: usize,
    /// Randomized-Borda factor, in (0, 0.5)
    #[arg(long, default_value_t = 0.2, env = "RANKAGG_BETA")]
    beta: f64,
    /// LADS iterations without improvement before it stops
    #[arg(long, default_value_t = 5000, env = "RANKAGG_MAX_ITERS")]
    max_iters: u64,
    /// Cost-list length
    #[arg(long, default_value_t = 5, env = "RANKAGG_HISTORY_LEN")]
    history_len: usize,
    /// Wall-clock budget per solve, in seconds
    #[arg(long, env = "RANKAGG_TIME_LIMIT")]
    time_limit: Option<f64>,
}

impl ParamFlags {
    fn to_params(&self) -> Result<SolverParams, CliError> {
        if let Some(limit) = self.time_limit {
            if !(limit > 0.0 && limit.is_finite()) {
                return Err(CliError::Usage(format!(
                    "time limit must be positive, got {limit}"
                )));
            }
        }
        let params = SolverParams {
            max_gens: self.max_gens,
            pop_size: self.pop_size,
            beta: self.beta,
            max_iters: self.max_iters,
            history_len: self.history_len,
            time_limit: self.time_limit.map(Duration::from_secs_f64),
        };
        params
            .validate()
            .map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(params)
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum AlgoArg {
    Borda,
    Lads,
    Her,
}

impl From<AlgoArg> for Algorithm {
    fn from(a: AlgoArg) -> Algorithm {
        match a {
            AlgoArg::Borda => Algorithm::Borda,
            AlgoArg::Lads => Algorithm::Lads,
            AlgoArg::Her => Algorithm::Her,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, Default)]
enum FormatArg {
    /// Bar/comma rankings, e.g. "1|3,4|2"
    #[default]
    Bars,
    /// Space-separated rank vectors (public benchmark syntax)
    Ranks,
}

impl From<FormatArg> for DatasetFormat {
    fn from(f: FormatArg) -> DatasetFormat {
        match f {
            FormatArg::Bars => DatasetFormat::Bars,
            FormatArg::Ranks => DatasetFormat::Ranks,
        }
    }
}

/// Failures split by exit code: usage/parse errors exit 2, runtime errors 1.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Runtime(String),
}

impl From<DatasetFileError> for CliError {
    fn from(e: DatasetFileError) -> CliError {
        match e {
            DatasetFileError::Io { .. } => CliError::Runtime(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Generate {
            m,
            theta,
            n,
            count,
            seed,
            out,
        } => cmd_generate(m, theta, n, count, seed, &out),
        Command::Partialize {
            input,
            p_discard,
            p_keep,
            seed,
            out,
            format,
        } => cmd_partialize(&input, p_discard, p_keep, seed, &out, format),
        Command::Solve {
            input,
            algo,
            seed,
            format,
            params,
        } => cmd_solve(&input, algo.into(), seed, format, &params),
        Command::Eval {
            input,
            ranking,
            format,
        } => cmd_eval(&input, &ranking, format),
        Command::Bench {
            dir,
            algos,
            seeds,
            master_seed,
            jobs,
            out,
            format,
            params,
        } => {
            let mut algorithms: Vec<Algorithm> = algos.into_iter().map(Into::into).collect();
            algorithms.sort();
            algorithms.dedup();
            let mut seeds = seeds;
            seeds.sort_unstable();
            seeds.dedup();
            bench::cmd_bench(
                &dir,
                &algorithms,
                &seeds,
                master_seed,
                jobs as usize,
                &out,
                format,
                &params,
            )
        }
    }
}

fn load_dataset(path: &Path, format: FormatArg) -> Result<Dataset, CliError> {
    Ok(read_dataset(path, format.into())?)
}

fn cmd_generate(
    m: usize,
    theta: f64,
    n: usize,
    count: usize,
    seed: u64,
    out: &Path,
) -> Result<(), CliError> {
    if count < 1 {
        return Err(CliError::Usage("count must be at least 1".to_string()));
    }
    let params = MallowsParams::with_identity_center(m, theta, n)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    if theta <= 0.0 {
        return Err(CliError::Usage(
            "theta must be strictly positive for benchmark instances".to_string(),
        ));
    }
    std::fs::create_dir_all(out)
        .map_err(|e| CliError::Runtime(format!("{}: {e}", out.display())))?;
    for idx in 1..=count {
        let instance_seed = seed::mix_seeds(&[seed, idx as u64]);
        let dataset = generate_dataset(&params, instance_seed);
        let name = instance_file_name(m, theta, idx);
        let path = out.join(&name);
        let comments = vec![format!(
            "mallows theta={theta:.3} center=identity seed={seed} index={idx} rng={}",
            rankagg::RNG_ALGORITHM
        )];
        rankagg::io::write_dataset_with_comments(&dataset, &path, &comments)
            .map_err(CliError::from)?;
    }
    Ok(())
}

fn instance_file_name(m: usize, theta: f64, idx: usize) -> String {
    format!("MM{m:03}n{theta:.3}_{idx:02}.txt")
}

fn cmd_partialize(
    input: &Path,
    p_discard: f64,
    p_keep: f64,
    seed: u64,
    out: &Path,
    format: FormatArg,
) -> Result<(), CliError> {
    let dataset = load_dataset(input, format)?;
    if !dataset.is_complete() {
        return Err(CliError::Usage(format!(
            "{}: input contains non-complete rankings",
            input.display()
        )));
    }
    let params =
        PartializeParams::new(p_discard, p_keep).map_err(|e| CliError::Usage(e.to_string()))?;
    let result = partialize_dataset(&dataset, &params, seed).map_err(|e| match e {
        PartializeError::GenerationFailure => CliError::Runtime(e.to_string()),
        _ => CliError::Usage(e.to_string()),
    })?;
    rankagg::write_dataset(&result, out).map_err(CliError::from)?;
    Ok(())
}

fn cmd_solve(
    input: &Path,
    algorithm: Algorithm,
    seed: u64,
    format: FormatArg,
    flags: &ParamFlags,
) -> Result<(), CliError> {
    let dataset = load_dataset(input, format)?;
    let params = flags.to_params()?;
    let result =
        solve(&dataset, algorithm, &params, seed).map_err(|e| CliError::Usage(e.to_string()))?;
    let payload = output::SolveOutput::new(&result, &input.display().to_string(), &dataset);
    println!("{}", payload.to_json());
    Ok(())
}

fn cmd_eval(input: &Path, ranking: &str, format: FormatArg) -> Result<(), CliError> {
    let dataset = load_dataset(input, format)?;
    let parsed = Ranking::parse(ranking, dataset.universe_size())
        .map_err(|e| CliError::Usage(format!("ranking {ranking:?}: {e}")))?;
    let permutation: Permutation = parsed.to_permutation().ok_or_else(|| {
        CliError::Usage(format!(
            "ranking {ranking:?} is not a complete strict permutation of m={}",
            dataset.universe_size()
        ))
    })?;
    let sum = rankagg::fitness_sum(&permutation, &dataset);
    let payload = output::EvalOutput::new(sum, dataset.len());
    println!("{}", payload.to_json());
    Ok(())
}
