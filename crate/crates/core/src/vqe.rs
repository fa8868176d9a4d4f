//! Gradient-descent variational eigensolver driver and benchmark harness.
//!
//! One optimization iteration evaluates the energy at the current
//! parameters, then two shifted energies per parameter for the
//! parameter-shift gradient: `2d + 1` evaluations for `d` parameters.
//! A final readout evaluation at the optimized parameters closes the
//! run, so a run of `T` iterations performs `T (2d + 1) + 1` energy
//! evaluations in a fixed order.
//!
//! All randomness flows from one master seed through a splitmix-style
//! mixer keyed by (iteration, evaluation index, group index), so runs
//! are reproducible and two schemes given the same master seed draw
//! identical shot streams.

use crate::evaluator::{
    eval_hamiltonian, eval_hamiltonian_exact, EvalStats, MeasurementMemory, Scheme,
    DEFAULT_MEMORY_LIMIT,
};
use crate::grouping::{group_hamiltonian, GroupedHamiltonian, GroupingError, GroupingMode};
use crate::num::{real, Real};
use crate::pauli::{BitString, Hamiltonian, PauliError, PauliString, PauliTerm};
use crate::sim::{prepare_state, AnsatzSpec, SampleSet, SimError};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum VqeError {
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    Grouping(#[from] GroupingError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Eval(#[from] crate::evaluator::EvalError),
    #[error("ansatz is for {ansatz} qubits, Hamiltonian for {hamiltonian}")]
    QubitCountMismatch { ansatz: usize, hamiltonian: usize },
    #[error("expected {expected} parameters, got {got}")]
    WrongParameterCount { expected: usize, got: usize },
    #[error("shot schedule produced zero shots per group")]
    ZeroShots,
    #[error("best measured state needs a single commuting group, found {groups}")]
    NotSingleGroup { groups: usize },
    #[error("measurement memory is empty")]
    EmptyMemory,
}

/// Random transverse-field-free Ising Hamiltonian: a `ZZ` term for every
/// pair `i < j` (lexicographic) followed by a `Z` term for every qubit,
/// with coefficients drawn uniformly from `[-1, 1]` and resampled if
/// exactly zero. `N(N-1)/2 + N` terms in total.
pub fn generate_ising<T: Real>(n_qubits: usize, seed: u64) -> Result<Hamiltonian<T>, PauliError> {
    if n_qubits == 0 || n_qubits > crate::pauli::MAX_QUBITS {
        return Err(PauliError::QubitCountOutOfRange { requested: n_qubits });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coeff = move || loop {
        let c: f64 = rng.random_range(-1.0..1.0);
        if c != 0.0 {
            return real::<T>(c);
        }
    };
    let mut terms = Vec::with_capacity(n_qubits * (n_qubits - 1) / 2 + n_qubits);
    for i in 0..n_qubits {
        for j in (i + 1)..n_qubits {
            let z = (1u64 << i) | (1u64 << j);
            terms.push(PauliTerm::new(PauliString::from_masks(n_qubits, 0, z), coeff()));
        }
    }
    for i in 0..n_qubits {
        terms.push(PauliTerm::new(PauliString::from_masks(n_qubits, 0, 1u64 << i), coeff()));
    }
    Hamiltonian::new(n_qubits, &format!("ising-n{n_qubits}-s{seed}"), terms)
}

/// Shots drawn per commuting group per energy evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShotSchedule {
    /// `c * N^2` shots; suited to Hamiltonians whose group count does not
    /// grow with `N`.
    Quadratic { c: u64 },
    /// `c * N` shots.
    Linear { c: u64 },
}

impl ShotSchedule {
    pub fn shots_per_group(&self, n_qubits: usize) -> u64 {
        let n = n_qubits as u64;
        match self {
            ShotSchedule::Quadratic { c } => c * n * n,
            ShotSchedule::Linear { c } => c * n,
        }
    }
}

/// How each energy evaluation is carried out.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalMode {
    Sampled(Scheme),
    Exact,
}

impl std::fmt::Display for EvalMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EvalMode::Sampled(s) => s.fmt(f),
            EvalMode::Exact => f.write_str("exact"),
        }
    }
}

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Stateless seed stream: every (iteration, evaluation, group) triple
/// gets its own well-mixed sampling seed from the master seed.
pub fn derive_seed(master: u64, iteration: u64, eval_index: u64, group_index: u64) -> u64 {
    let mut z = master.wrapping_add(0x9e3779b97f4a7c15);
    z = mix(z ^ iteration.wrapping_mul(0xff51afd7ed558ccd));
    z = mix(z ^ eval_index.wrapping_mul(0xc4ceb9fe1a85ec53));
    mix(z ^ group_index.wrapping_mul(0x2545f4914f6cdd1d))
}

/// Seed stream tag for drawing initial parameter guesses.
const STREAM_GUESS: u64 = u64::MAX;
/// Seed stream tag for benchmark Hamiltonian instances.
const STREAM_ISING: u64 = 0xA11CE;
/// Seed stream tag for benchmark per-repetition run seeds.
const STREAM_RUN: u64 = 0xB43;

/// Initial parameters drawn uniformly from `[-pi, pi)`.
pub fn initial_guess<T: Real>(n_params: usize, seed: u64) -> Vec<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n_params)
        .map(|_| real::<T>(rng.random_range(-std::f64::consts::PI..std::f64::consts::PI)))
        .collect()
}

#[derive(Clone, Debug)]
pub struct VqeConfig<T> {
    pub ansatz: AnsatzSpec,
    pub iterations: usize,
    pub learning_rate: T,
    pub shot_schedule: ShotSchedule,
    pub mode: EvalMode,
    pub grouping: GroupingMode,
    pub master_seed: u64,
    pub memory_limit: usize,
    pub initial_params: Vec<T>,
}

impl<T: Real> VqeConfig<T> {
    pub fn new(n_qubits: usize, iterations: usize) -> Self {
        let master_seed = 7;
        let ansatz = AnsatzSpec::new(n_qubits);
        let initial_params =
            initial_guess(ansatz.n_params(), derive_seed(master_seed, 0, STREAM_GUESS, 0));
        VqeConfig {
            ansatz,
            iterations,
            learning_rate: real(0.05),
            shot_schedule: ShotSchedule::Quadratic { c: 25 },
            mode: EvalMode::Sampled(Scheme::Mm),
            grouping: GroupingMode::QubitWise,
            master_seed,
            memory_limit: DEFAULT_MEMORY_LIMIT,
            initial_params,
        }
    }
}

/// State of one optimization step; times, counters and memory size are
/// cumulative from the start of the run.
#[derive(Clone, Debug)]
pub struct IterationRecord<T> {
    pub iteration: usize,
    /// Energy at the parameters entering this iteration, before the
    /// gradient update.
    pub energy: T,
    pub gradient_norm: T,
    pub wall_time_total: f64,
    pub wall_time_postproc: f64,
    pub stats: EvalStats,
    pub memory_entries: usize,
}

#[derive(Clone, Debug)]
pub struct RunRecord<T> {
    pub n_qubits: usize,
    pub num_groups: usize,
    pub grouping: GroupingMode,
    pub mode: EvalMode,
    pub shots_per_group: u64,
    pub iterations: Vec<IterationRecord<T>>,
    pub final_params: Vec<T>,
    /// Energy of one extra readout evaluation at the final parameters.
    pub final_energy: T,
    pub total_stats: EvalStats,
    pub total_wall_time: f64,
    pub memory_entries: usize,
    /// Lowest-eigenvalue bit string in the measurement memory with the
    /// identity offset folded in; only for single-group runs under the
    /// memoizing scheme.
    pub best_measured: Option<(BitString, T)>,
}

fn check_shapes<T: Real>(
    gh: &GroupedHamiltonian<T>,
    ansatz: &AnsatzSpec,
    params: &[T],
) -> Result<(), VqeError> {
    if ansatz.n_qubits != gh.n_qubits() {
        return Err(VqeError::QubitCountMismatch {
            ansatz: ansatz.n_qubits,
            hamiltonian: gh.n_qubits(),
        });
    }
    if params.len() != ansatz.n_params() {
        return Err(VqeError::WrongParameterCount {
            expected: ansatz.n_params(),
            got: params.len(),
        });
    }
    Ok(())
}

/// Exact expectation of the grouped Hamiltonian in the ansatz state.
pub fn exact_energy<T: Real>(
    gh: &GroupedHamiltonian<T>,
    ansatz: &AnsatzSpec,
    params: &[T],
) -> Result<T, VqeError> {
    check_shapes(gh, ansatz, params)?;
    let psi = prepare_state(ansatz, params)?;
    let probs: Vec<Vec<(BitString, T)>> = gh
        .groups()
        .iter()
        .map(|g| {
            let mut rotated = psi.clone();
            rotated.apply_clifford(&g.basis_circuit);
            rotated.exact_probabilities()
        })
        .collect();
    Ok(eval_hamiltonian_exact(gh, &probs)?.0)
}

fn sampled_energy<T: Real>(
    gh: &GroupedHamiltonian<T>,
    ansatz: &AnsatzSpec,
    params: &[T],
    scheme: Scheme,
    shots: u64,
    master_seed: u64,
    iteration: u64,
    eval_index: u64,
    memory: Option<&mut MeasurementMemory<T>>,
) -> Result<(T, EvalStats), VqeError> {
    let psi = prepare_state(ansatz, params)?;
    let sets: Vec<SampleSet> = gh
        .groups()
        .iter()
        .enumerate()
        .map(|(k, g)| {
            let mut rotated = psi.clone();
            rotated.apply_clifford(&g.basis_circuit);
            let mut set = rotated
                .sample(shots as usize, derive_seed(master_seed, iteration, eval_index, k as u64));
            set.group_index = k;
            set
        })
        .collect();
    Ok(eval_hamiltonian(gh, &sets, memory, scheme)?)
}

/// Parameter-shift gradient of the exact energy:
/// `g_x = (E(p + pi/2 e_x) - E(p - pi/2 e_x)) / 2`.
pub fn parameter_shift_gradient<T: Real>(
    gh: &GroupedHamiltonian<T>,
    ansatz: &AnsatzSpec,
    params: &[T],
) -> Result<Vec<T>, VqeError> {
    check_shapes(gh, ansatz, params)?;
    let half = T::FRAC_PI_2();
    let two = T::one() + T::one();
    let mut p = params.to_vec();
    let mut grad = Vec::with_capacity(p.len());
    for x in 0..p.len() {
        p[x] += half;
        let plus = exact_energy(gh, ansatz, &p)?;
        p[x] -= half + half;
        let minus = exact_energy(gh, ansatz, &p)?;
        p[x] += half;
        grad.push((plus - minus) / two);
    }
    Ok(grad)
}

/// Runs plain gradient descent on the grouped Hamiltonian.
pub fn run_vqe<T: Real>(
    h: &Hamiltonian<T>,
    config: &VqeConfig<T>,
) -> Result<RunRecord<T>, VqeError> {
    let gh = group_hamiltonian(h, config.grouping)?;
    run_vqe_grouped(&gh, config)
}

/// Same as [`run_vqe`] with the grouping already done.
pub fn run_vqe_grouped<T: Real>(
    gh: &GroupedHamiltonian<T>,
    config: &VqeConfig<T>,
) -> Result<RunRecord<T>, VqeError> {
    check_shapes(gh, &config.ansatz, &config.initial_params)?;
    let shots = config.shot_schedule.shots_per_group(gh.n_qubits());
    if matches!(config.mode, EvalMode::Sampled(_)) && shots == 0 {
        return Err(VqeError::ZeroShots);
    }
    let mut memory = match config.mode {
        EvalMode::Sampled(Scheme::Mm) => {
            Some(MeasurementMemory::with_limit(gh.num_groups(), config.memory_limit))
        }
        _ => None,
    };

    let evaluate = |params: &[T],
                        iteration: u64,
                        eval_index: u64,
                        memory: Option<&mut MeasurementMemory<T>>|
     -> Result<(T, EvalStats), VqeError> {
        match config.mode {
            EvalMode::Exact => {
                let start = Instant::now();
                let e = exact_energy(gh, &config.ansatz, params)?;
                Ok((e, EvalStats { wall_time: start.elapsed().as_secs_f64(), ..Default::default() }))
            }
            EvalMode::Sampled(scheme) => sampled_energy(
                gh,
                &config.ansatz,
                params,
                scheme,
                shots,
                config.master_seed,
                iteration,
                eval_index,
                memory,
            ),
        }
    };

    let d = config.ansatz.n_params();
    let half = T::FRAC_PI_2();
    let two = T::one() + T::one();
    let mut params = config.initial_params.clone();
    let mut cum_stats = EvalStats::default();
    let mut cum_total = 0.0f64;
    let mut records = Vec::with_capacity(config.iterations);

    for t in 0..config.iterations {
        let iter_start = Instant::now();
        let (energy, s) = evaluate(&params, t as u64, 0, memory.as_mut())?;
        cum_stats.merge(&s);

        let mut grad = vec![T::zero(); d];
        for (x, g) in grad.iter_mut().enumerate() {
            let eval_base = 1 + 2 * x as u64;
            params[x] += half;
            let (plus, sp) = evaluate(&params, t as u64, eval_base, memory.as_mut())?;
            cum_stats.merge(&sp);
            params[x] -= half + half;
            let (minus, sm) = evaluate(&params, t as u64, eval_base + 1, memory.as_mut())?;
            cum_stats.merge(&sm);
            params[x] += half;
            *g = (plus - minus) / two;
        }

        let mut norm_sq = T::zero();
        for (p, g) in params.iter_mut().zip(&grad) {
            *p -= config.learning_rate * *g;
            norm_sq += *g * *g;
        }

        cum_total += iter_start.elapsed().as_secs_f64();
        records.push(IterationRecord {
            iteration: t,
            energy,
            gradient_norm: norm_sq.sqrt(),
            wall_time_total: cum_total,
            wall_time_postproc: cum_stats.wall_time,
            stats: cum_stats,
            memory_entries: memory.as_ref().map_or(0, |m| m.len()),
        });
    }

    let readout_start = Instant::now();
    let (final_energy, s) =
        evaluate(&params, config.iterations as u64, 0, memory.as_mut())?;
    cum_stats.merge(&s);
    cum_total += readout_start.elapsed().as_secs_f64();

    let best_measured = match &memory {
        Some(mem) if gh.num_groups() == 1 => Some(best_measured_state(gh, mem)?),
        _ => None,
    };
    Ok(RunRecord {
        n_qubits: gh.n_qubits(),
        num_groups: gh.num_groups(),
        grouping: gh.mode(),
        mode: config.mode,
        shots_per_group: shots,
        iterations: records,
        final_params: params,
        final_energy,
        total_stats: cum_stats,
        total_wall_time: cum_total,
        memory_entries: memory.as_ref().map_or(0, |m| m.len()),
        best_measured,
    })
}

/// Lowest-eigenvalue bit string memorized during a single-group run, with
/// the identity offset folded in. For a single group the full Hamiltonian
/// is the offset plus that one group, so the returned value is the exact
/// energy of the (basis-rotated) computational state that was measured.
pub fn best_measured_state<T: Real>(
    gh: &GroupedHamiltonian<T>,
    memory: &MeasurementMemory<T>,
) -> Result<(BitString, T), VqeError> {
    if gh.num_groups() != 1 {
        return Err(VqeError::NotSingleGroup { groups: gh.num_groups() });
    }
    let (b, v) = memory.min_entry(0).ok_or(VqeError::EmptyMemory)?;
    Ok((b, v + gh.identity_offset()))
}

#[derive(Clone, Debug)]
pub struct BenchmarkConfig {
    pub sizes: Vec<usize>,
    pub schemes: Vec<Scheme>,
    pub repetitions: usize,
    pub iterations: usize,
    pub grouping: GroupingMode,
    pub shot_schedule: ShotSchedule,
    pub learning_rate: f64,
    pub master_seed: u64,
    /// Scheme whose post-processing time the others are compared against.
    pub baseline: Scheme,
}

impl BenchmarkConfig {
    pub fn new(sizes: Vec<usize>, iterations: usize, repetitions: usize) -> Self {
        BenchmarkConfig {
            sizes,
            schemes: vec![Scheme::Naive, Scheme::Sorted, Scheme::Mm],
            repetitions,
            iterations,
            grouping: GroupingMode::General,
            shot_schedule: ShotSchedule::Quadratic { c: 25 },
            learning_rate: 0.05,
            master_seed: 7,
            baseline: Scheme::Sorted,
        }
    }
}

/// One optimization run inside a benchmark.
#[derive(Clone, Debug)]
pub struct BenchmarkRun {
    pub n_qubits: usize,
    pub scheme: Scheme,
    pub repetition: usize,
    pub guess_seed: u64,
    pub run_seed: u64,
    pub final_energy: f64,
    pub wall_time_total: f64,
    pub wall_time_postproc: f64,
    pub stats: EvalStats,
    pub memory_entries: usize,
}

/// Mean and spread of post-processing time for one (size, scheme) cell.
#[derive(Clone, Copy, Debug)]
pub struct BenchmarkSummary {
    pub n_qubits: usize,
    pub scheme: Scheme,
    pub mean_postproc: f64,
    pub std_postproc: f64,
    pub mean_total: f64,
    pub std_total: f64,
    /// `100 (1 - mean / baseline mean)`; zero for the baseline itself.
    pub percentage_saved: f64,
}

#[derive(Clone, Debug)]
pub struct BenchmarkReport {
    pub baseline: Scheme,
    pub runs: Vec<BenchmarkRun>,
    pub summaries: Vec<BenchmarkSummary>,
}

impl BenchmarkReport {
    pub fn summary(&self, n_qubits: usize, scheme: Scheme) -> Option<&BenchmarkSummary> {
        self.summaries.iter().find(|s| s.n_qubits == n_qubits && s.scheme == scheme)
    }
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Runs every scheme on random Ising instances of every size.
///
/// The Hamiltonian is fixed per size and the initial guess and sampling
/// seeds are fixed per repetition, shared by all schemes, so scheme
/// columns are paired. Schemes are interleaved within a repetition to
/// spread slow drift of the host machine evenly.
pub fn benchmark_suite(config: &BenchmarkConfig) -> Result<BenchmarkReport, VqeError> {
    let mut runs = Vec::new();
    for &n in &config.sizes {
        let h: Hamiltonian<f64> =
            generate_ising(n, derive_seed(config.master_seed, n as u64, STREAM_ISING, 0))?;
        let gh = group_hamiltonian(&h, config.grouping)?;
        for rep in 0..config.repetitions {
            let guess_seed = derive_seed(config.master_seed, rep as u64, STREAM_GUESS, 0);
            let run_seed = derive_seed(config.master_seed, n as u64, rep as u64, STREAM_RUN);
            let ansatz = AnsatzSpec::new(n);
            let initial_params: Vec<f64> = initial_guess(ansatz.n_params(), guess_seed);
            for &scheme in &config.schemes {
                let cfg = VqeConfig {
                    ansatz,
                    iterations: config.iterations,
                    learning_rate: config.learning_rate,
                    shot_schedule: config.shot_schedule,
                    mode: EvalMode::Sampled(scheme),
                    grouping: config.grouping,
                    master_seed: run_seed,
                    memory_limit: DEFAULT_MEMORY_LIMIT,
                    initial_params: initial_params.clone(),
                };
                let record = run_vqe_grouped(&gh, &cfg)?;
                runs.push(BenchmarkRun {
                    n_qubits: n,
                    scheme,
                    repetition: rep,
                    guess_seed,
                    run_seed,
                    final_energy: record.final_energy,
                    wall_time_total: record.total_wall_time,
                    wall_time_postproc: record.total_stats.wall_time,
                    stats: record.total_stats,
                    memory_entries: record.memory_entries,
                });
            }
        }
    }

    let mut summaries = Vec::new();
    for &n in &config.sizes {
        let cell = |scheme: Scheme| -> (Vec<f64>, Vec<f64>) {
            let post: Vec<f64> = runs
                .iter()
                .filter(|r| r.n_qubits == n && r.scheme == scheme)
                .map(|r| r.wall_time_postproc)
                .collect();
            let total: Vec<f64> = runs
                .iter()
                .filter(|r| r.n_qubits == n && r.scheme == scheme)
                .map(|r| r.wall_time_total)
                .collect();
            (post, total)
        };
        let (base_post, _) = cell(config.baseline);
        let base_mean = if base_post.is_empty() { 0.0 } else { mean_std(&base_post).0 };
        for &scheme in &config.schemes {
            let (post, total) = cell(scheme);
            if post.is_empty() {
                continue;
            }
            let (mean_postproc, std_postproc) = mean_std(&post);
            let (mean_total, std_total) = mean_std(&total);
            let percentage_saved = if scheme == config.baseline || base_mean == 0.0 {
                0.0
            } else {
                100.0 * (1.0 - mean_postproc / base_mean)
            };
            summaries.push(BenchmarkSummary {
                n_qubits: n,
                scheme,
                mean_postproc,
                std_postproc,
                mean_total,
                std_total,
                percentage_saved,
            });
        }
    }
    Ok(BenchmarkReport { baseline: config.baseline, runs, summaries })
}
