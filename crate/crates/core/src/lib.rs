//! Measurement post-processing for variational quantum eigensolvers.
//!
//! Estimating a grouped Hamiltonian expectation from sampled bit strings
//! spends most of its post-processing budget evaluating diagonalized
//! Pauli sums on the same strings over and over: shot distributions are
//! concentrated on few outcomes, and a variational optimizer revisits
//! nearby parameters every iteration. This crate implements three
//! interchangeable estimation schemes over commuting Pauli groups
//! (per-shot evaluation, per-evaluation histogramming, and a persistent
//! per-group memo of bit-string eigenvalues) together with everything
//! needed to compare them end to end:
//!
//! * [`pauli`]: packed Pauli strings, bit strings, Hamiltonians;
//! * [`grouping`]: commuting-group partitioning and the Clifford
//!   circuits that rotate each group to a product of `Z` strings;
//! * [`sim`]: a dense statevector simulator for the hardware-efficient
//!   ansatz, Clifford basis rotations, and shot sampling;
//! * [`evaluator`]: the three schemes, their semantic cost counters, and
//!   the measurement memory itself;
//! * [`vqe`]: a gradient-descent driver, random Ising instances, and a
//!   benchmark harness that pairs schemes on identical shot streams.
//!
//! Conventions: qubit 0 is the first character of a Pauli or bit string
//! and the least significant bit of packed masks. All numeric types are
//! generic over the scalar (`f32` or `f64`) through [`num::Real`]; the
//! aliases at the crate root fix `f64` for everyday use.
//!
//! ```
//! use memvqe::vqe;
//!
//! let h: memvqe::Hamiltonian = vqe::generate_ising(2, 7).unwrap();
//! let mut cfg: memvqe::VqeConfig = vqe::VqeConfig::new(2, 2);
//! cfg.shot_schedule = vqe::ShotSchedule::Linear { c: 50 };
//! let record = vqe::run_vqe(&h, &cfg).unwrap();
//! assert_eq!(record.iterations.len(), 2);
//! assert!(record.memory_entries > 0);
//! ```

pub mod evaluator;
pub mod grouping;
pub mod num;
pub mod pauli;
pub mod sim;
pub mod vqe;

pub use evaluator::{
    eval_bitstring, eval_hamiltonian, eval_mm, eval_naive, eval_sorted, expected_distinct,
    EvalError, EvalStats, Scheme, DEFAULT_MEMORY_LIMIT,
};
pub use grouping::{
    group_hamiltonian, CliffordCircuit, CliffordGate, GroupingError, GroupingMode,
};
pub use num::Real;
pub use pauli::{BitString, PauliError, PauliString, MAX_QUBITS};
pub use sim::{prepare_state, AnsatzSpec, SampleSet, SimError, MAX_SIM_QUBITS};
pub use vqe::{
    benchmark_suite, best_measured_state, derive_seed, exact_energy, generate_ising,
    initial_guess, parameter_shift_gradient, run_vqe, BenchmarkConfig, BenchmarkReport,
    EvalMode, ShotSchedule, VqeError,
};

pub type PauliTerm = pauli::PauliTerm<f64>;
pub type Hamiltonian = pauli::Hamiltonian<f64>;
pub type CommutingGroup = grouping::CommutingGroup<f64>;
pub type GroupedHamiltonian = grouping::GroupedHamiltonian<f64>;
pub type StateVector = sim::StateVector<f64>;
pub type MeasurementMemory = evaluator::MeasurementMemory<f64>;
pub type GroupExpectation = evaluator::GroupExpectation<f64>;
pub type VqeConfig = vqe::VqeConfig<f64>;
pub type RunRecord = vqe::RunRecord<f64>;
pub type IterationRecord = vqe::IterationRecord<f64>;
pub type BenchmarkRun = vqe::BenchmarkRun;
pub type BenchmarkSummary = vqe::BenchmarkSummary;
