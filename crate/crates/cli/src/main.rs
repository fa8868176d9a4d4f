//! `memvqe`: generate, group, optimize and benchmark Pauli Hamiltonians
//! with memoized measurement evaluation.
//!
//! Exit codes: 0 success, 1 usage error, 2 data or runtime error.

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use memvqe::evaluator::DEFAULT_MEMORY_LIMIT;
use memvqe::vqe::{
    benchmark_suite, generate_ising, run_vqe_grouped, BenchmarkConfig, EvalMode, ShotSchedule,
    VqeConfig, VqeError,
};
use memvqe::{
    derive_seed, group_hamiltonian, initial_guess, AnsatzSpec, GroupingError, GroupingMode,
    Hamiltonian, Scheme,
};
use memvqe_cli::format::{parse_hamiltonian, write_hamiltonian, FormatError};
use memvqe_cli::metrics::{bench_raw_table, bench_summary_table, run_table};
use memvqe_cli::{resolve_output, OUTPUT_DIR_VAR};
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
enum AppError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Format { path: String, source: FormatError },
    #[error(transparent)]
    Pauli(#[from] memvqe::PauliError),
    #[error(transparent)]
    Grouping(#[from] GroupingError),
    #[error(transparent)]
    Vqe(#[from] VqeError),
}

fn read_to_string(path: &Path) -> Result<String, AppError> {
    std::fs::read_to_string(path)
        .map_err(|source| AppError::Io { path: path.display().to_string(), source })
}

/// Writes an output file, creating parent directories and honoring the
/// output-directory environment variable for relative paths.
fn write_output(path: &Path, content: &str) -> Result<PathBuf, AppError> {
    let resolved = resolve_output(path);
    if let Some(parent) = resolved.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)
                .map_err(|source| AppError::Io { path: parent.display().to_string(), source })?;
        }
    }
    std::fs::write(&resolved, content)
        .map_err(|source| AppError::Io { path: resolved.display().to_string(), source })?;
    Ok(resolved)
}

fn load_hamiltonian(path: &Path) -> Result<Hamiltonian, AppError> {
    parse_hamiltonian(&read_to_string(path)?)
        .map_err(|source| AppError::Format { path: path.display().to_string(), source })
}

fn parse_grouping(text: &str) -> Result<GroupingMode, String> {
    text.parse()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SchemeArg {
    Naive,
    Sorted,
    Mm,
    Exact,
}

impl SchemeArg {
    fn mode(self) -> EvalMode {
        match self {
            SchemeArg::Naive => EvalMode::Sampled(Scheme::Naive),
            SchemeArg::Sorted => EvalMode::Sampled(Scheme::Sorted),
            SchemeArg::Mm => EvalMode::Sampled(Scheme::Mm),
            SchemeArg::Exact => EvalMode::Exact,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BenchSchemeArg {
    Naive,
    Sorted,
    Mm,
}

impl BenchSchemeArg {
    fn scheme(self) -> Scheme {
        match self {
            BenchSchemeArg::Naive => Scheme::Naive,
            BenchSchemeArg::Sorted => Scheme::Sorted,
            BenchSchemeArg::Mm => Scheme::Mm,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ScheduleArg {
    /// c * N^2 shots per group (defaults c to 25).
    Quadratic,
    /// c * N shots per group (defaults c to 100).
    Linear,
}

impl ScheduleArg {
    fn schedule(self, c: Option<u64>) -> ShotSchedule {
        match self {
            ScheduleArg::Quadratic => ShotSchedule::Quadratic { c: c.unwrap_or(25) },
            ScheduleArg::Linear => ShotSchedule::Linear { c: c.unwrap_or(100) },
        }
    }
}

#[derive(Parser)]
#[command(
    name = "memvqe",
    version,
    about = "Commuting-group measurement evaluation for variational quantum eigensolvers",
    after_help = format!("Relative output paths are prefixed with ${OUTPUT_DIR_VAR} when set.")
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a random fully connected Ising Hamiltonian file.
    GenerateIsing {
        /// Number of spins.
        #[arg(long)]
        qubits: usize,
        /// Coefficient seed; same seed, same file.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Partition a Hamiltonian file into commuting groups.
    Group {
        /// Hamiltonian file to read.
        #[arg(long)]
        input: PathBuf,
        /// Grouping relation: qwc (qubit-wise) or gc (general).
        #[arg(long, default_value = "qwc", value_parser = parse_grouping)]
        mode: GroupingMode,
        /// Also print every term and measurement basis circuit.
        #[arg(long)]
        detail: bool,
    },
    /// Optimize a Hamiltonian file with gradient descent.
    Run {
        /// Hamiltonian file to read.
        #[arg(long)]
        input: PathBuf,
        /// Grouping relation: qwc (qubit-wise) or gc (general).
        #[arg(long, default_value = "qwc", value_parser = parse_grouping)]
        mode: GroupingMode,
        /// Evaluation scheme; exact replaces sampling with exact probabilities.
        #[arg(long, default_value = "mm")]
        scheme: SchemeArg,
        #[arg(long, default_value_t = 100)]
        iterations: usize,
        #[arg(long, default_value_t = 0.05)]
        learning_rate: f64,
        /// Shots-per-group growth with qubit count.
        #[arg(long, default_value = "quadratic")]
        schedule: ScheduleArg,
        /// Constant c of the shot schedule.
        #[arg(long)]
        shots_c: Option<u64>,
        /// Master seed; sampling seeds derive from it per (iteration, evaluation, group).
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Separate seed for the initial parameter guess (defaults to a
        /// stream derived from the master seed).
        #[arg(long)]
        guess_seed: Option<u64>,
        /// Write the per-iteration metrics table to this file.
        #[arg(long)]
        metrics: Option<PathBuf>,
    },
    /// Compare evaluation schemes on random Ising instances.
    Bench {
        /// Comma-separated qubit counts.
        #[arg(long, value_delimiter = ',', default_values_t = [6usize, 8, 10, 12, 14, 16])]
        sizes: Vec<usize>,
        /// Comma-separated schemes to time.
        #[arg(long, value_delimiter = ',', value_enum,
              default_values_t = [BenchSchemeArg::Naive, BenchSchemeArg::Sorted, BenchSchemeArg::Mm])]
        schemes: Vec<BenchSchemeArg>,
        /// Optimization runs per (size, scheme) cell, paired across schemes.
        #[arg(long, default_value_t = 10)]
        repetitions: usize,
        #[arg(long, default_value_t = 200)]
        iterations: usize,
        /// Grouping relation: qwc (qubit-wise) or gc (general).
        #[arg(long, default_value = "gc", value_parser = parse_grouping)]
        mode: GroupingMode,
        #[arg(long, default_value = "quadratic")]
        schedule: ScheduleArg,
        /// Constant c of the shot schedule.
        #[arg(long)]
        shots_c: Option<u64>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Scheme whose post-processing time defines 100%.
        #[arg(long, default_value = "sorted")]
        baseline: BenchSchemeArg,
        /// Write one raw row per optimization run to this file.
        #[arg(long)]
        raw: Option<PathBuf>,
        /// Write the per-cell summary table to this file.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
}

fn cmd_generate_ising(qubits: usize, seed: u64, out: Option<PathBuf>) -> Result<(), AppError> {
    let h: Hamiltonian = generate_ising(qubits, seed)?;
    let text = write_hamiltonian(&h);
    match out {
        Some(path) => {
            let written = write_output(&path, &text)?;
            println!("wrote {} ({} terms) to {}", h.name(), h.num_terms(), written.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_group(input: &Path, mode: GroupingMode, detail: bool) -> Result<(), AppError> {
    let h = load_hamiltonian(input)?;
    let gh = group_hamiltonian(&h, mode)?;
    println!(
        "hamiltonian {}: {} qubits, {} terms, identity offset {:.6}",
        h.name(),
        h.n_qubits(),
        h.num_terms(),
        gh.identity_offset()
    );
    println!("mode {mode}: {} groups", gh.num_groups());
    let largest = gh.groups().iter().map(|g| g.terms.len()).max().unwrap_or(0);
    for (k, g) in gh.groups().iter().enumerate() {
        println!(
            "group {k}: {} terms, basis circuit depth {}",
            g.terms.len(),
            g.basis_circuit.gates().len()
        );
        if detail {
            for (t, d) in g.terms.iter().zip(&g.diagonal_terms) {
                println!("  {:+.6} {}  ->  {:+.6} {}", t.coeff, t.pauli, d.coeff, d.pauli);
            }
            if !g.basis_circuit.is_empty() {
                let gates: Vec<String> =
                    g.basis_circuit.gates().iter().map(|gate| format!("{gate:?}")).collect();
                println!("  basis: {}", gates.join(" "));
            }
        }
    }
    println!("largest group: {largest} terms");
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_run(
    input: &Path,
    mode: GroupingMode,
    scheme: SchemeArg,
    iterations: usize,
    learning_rate: f64,
    schedule: ScheduleArg,
    shots_c: Option<u64>,
    seed: u64,
    guess_seed: Option<u64>,
    metrics: Option<PathBuf>,
) -> Result<(), AppError> {
    let h = load_hamiltonian(input)?;
    let gh = group_hamiltonian(&h, mode)?;
    let ansatz = AnsatzSpec::new(h.n_qubits());
    let guess = guess_seed.unwrap_or_else(|| derive_seed(seed, 0, u64::MAX, 0));
    let config = VqeConfig {
        ansatz,
        iterations,
        learning_rate,
        shot_schedule: schedule.schedule(shots_c),
        mode: scheme.mode(),
        grouping: mode,
        master_seed: seed,
        memory_limit: DEFAULT_MEMORY_LIMIT,
        initial_params: initial_guess(ansatz.n_params(), guess),
    };
    let record = run_vqe_grouped(&gh, &config)?;

    println!(
        "hamiltonian {}: {} qubits, {} terms, {} groups ({mode})",
        h.name(),
        h.n_qubits(),
        h.num_terms(),
        record.num_groups
    );
    match config.mode {
        EvalMode::Sampled(s) => println!(
            "scheme {s}: {} shots per group per evaluation, {iterations} iterations, seed {seed}",
            record.shots_per_group
        ),
        EvalMode::Exact => {
            println!("scheme exact: exact probabilities, {iterations} iterations")
        }
    }
    if let Some(first) = record.iterations.first() {
        println!("initial energy {:+.10}", first.energy);
    }
    println!("final energy {:+.10}", record.final_energy);
    if let Some((bits, energy)) = &record.best_measured {
        println!("best measured state {bits} with energy {energy:+.10}");
    }
    let s = &record.total_stats;
    println!(
        "time {:.3}s total, {:.3}s post-processing",
        record.total_wall_time, s.wall_time
    );
    println!(
        "counters: hash_probes={} string_compares={} group_evals={} memory_hits={} memory_size={}",
        s.hash_probes, s.string_compares, s.group_evals, s.memory_hits, record.memory_entries
    );
    if let Some(path) = metrics {
        let run_id = format!("{}-{}-{}", h.name(), config.mode, seed);
        let written = write_output(&path, &run_table(&run_id, &record))?;
        println!("metrics written to {}", written.display());
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_bench(
    sizes: Vec<usize>,
    schemes: Vec<BenchSchemeArg>,
    repetitions: usize,
    iterations: usize,
    mode: GroupingMode,
    schedule: ScheduleArg,
    shots_c: Option<u64>,
    seed: u64,
    baseline: BenchSchemeArg,
    raw: Option<PathBuf>,
    summary: Option<PathBuf>,
) -> Result<(), AppError> {
    let config = BenchmarkConfig {
        sizes,
        schemes: schemes.iter().map(|s| s.scheme()).collect(),
        repetitions,
        iterations,
        grouping: mode,
        shot_schedule: schedule.schedule(shots_c),
        learning_rate: 0.05,
        master_seed: seed,
        baseline: baseline.scheme(),
    };
    let report = benchmark_suite(&config)?;

    println!("baseline: {}", report.baseline);
    println!(
        "{:>8} {:>8} {:>14} {:>14} {:>14} {:>10}",
        "n_qubits", "scheme", "postproc_mean", "postproc_std", "total_mean", "saved_%"
    );
    for s in &report.summaries {
        println!(
            "{:>8} {:>8} {:>14.6} {:>14.6} {:>14.6} {:>10.2}",
            s.n_qubits, s.scheme.to_string(), s.mean_postproc, s.std_postproc, s.mean_total,
            s.percentage_saved
        );
    }
    if let Some(path) = raw {
        let written = write_output(&path, &bench_raw_table(&report))?;
        println!("raw timings written to {}", written.display());
    }
    if let Some(path) = summary {
        let written = write_output(&path, &bench_summary_table(&report))?;
        println!("summary written to {}", written.display());
    }
    Ok(())
}

fn dispatch(cli: Cli) -> Result<(), AppError> {
    match cli.command {
        Command::GenerateIsing { qubits, seed, out } => cmd_generate_ising(qubits, seed, out),
        Command::Group { input, mode, detail } => cmd_group(&input, mode, detail),
        Command::Run {
            input,
            mode,
            scheme,
            iterations,
            learning_rate,
            schedule,
            shots_c,
            seed,
            guess_seed,
            metrics,
        } => cmd_run(
            &input, mode, scheme, iterations, learning_rate, schedule, shots_c, seed, guess_seed,
            metrics,
        ),
        Command::Bench {
            sizes,
            schemes,
            repetitions,
            iterations,
            mode,
            schedule,
            shots_c,
            seed,
            baseline,
            raw,
            summary,
        } => cmd_bench(
            sizes, schemes, repetitions, iterations, mode, schedule, shots_c, seed, baseline, raw,
            summary,
        ),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(e) = dispatch(cli) {
        eprintln!("error: {e}");
        std::process::exit(2);
    }
}
