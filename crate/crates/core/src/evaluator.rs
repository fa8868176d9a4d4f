//! Expectation-value estimation from measurement shots.
//!
//! Three interchangeable schemes estimate a group expectation from the
//! same sample set and agree to floating-point reassociation error:
//!
//! * `naive` evaluates the group eigenvalue for every shot,
//! * `sorted` histograms the shots first and evaluates each distinct bit
//!   string once,
//! * `mm` keeps a per-group dictionary of bit-string eigenvalues that
//!   persists across calls, so repeated strings are dictionary lookups
//!   regardless of which evaluation they first appeared in.
//!
//! Every scheme reports [`EvalStats`] whose counters are incremented at
//! semantic events (probe, compare, evaluate) rather than measured from
//! hash internals. Weighting probes and compares by `N` and evaluations
//! by `N * T_k` makes the counters reproduce the per-evaluation cost
//! models exactly: `L(N + N T_k) + (m - L) 2N` for `sorted` and
//! `(L - l)(N + N T_k) + (m - L + l) 2N` for `mm` on a sample with `L`
//! distinct strings of which `l` were already memorized.

use crate::grouping::{CommutingGroup, GroupedHamiltonian};
use crate::num::{real, Real};
use crate::pauli::BitString;
use crate::sim::SampleSet;
use indexmap::IndexMap;
use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::time::Instant;
use thiserror::Error;

/// Entry cap across all groups; hit only by runaway configurations.
pub const DEFAULT_MEMORY_LIMIT: usize = 1 << 26;

#[derive(Debug, Error, PartialEq)]
pub enum EvalError {
    #[error("sample set is empty")]
    EmptySampleSet,
    #[error("sample set is for {got} qubits, group expects {expected}")]
    QubitCountMismatch { expected: usize, got: usize },
    #[error("{groups} groups but {samples} sample sets")]
    GroupCountMismatch { groups: usize, samples: usize },
    #[error("sample set {position} is labeled group {label}")]
    GroupIndexMismatch { position: usize, label: usize },
    #[error("group index {index} out of range for memory with {num_groups} groups")]
    GroupIndexOutOfRange { index: usize, num_groups: usize },
    #[error("scheme mm needs a measurement memory")]
    MissingMemory,
    #[error("measurement memory limit of {limit} entries exceeded")]
    MemoryLimitExceeded { limit: usize },
}

/// How shots are turned into an expectation estimate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    Naive,
    Sorted,
    Mm,
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Scheme::Naive => "naive",
            Scheme::Sorted => "sorted",
            Scheme::Mm => "mm",
        })
    }
}

impl std::str::FromStr for Scheme {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "naive" => Ok(Scheme::Naive),
            "sorted" => Ok(Scheme::Sorted),
            "mm" => Ok(Scheme::Mm),
            other => Err(format!("unknown scheme {other:?} (expected naive, sorted or mm)")),
        }
    }
}

/// Semantic cost counters for one or more evaluations.
///
/// `distinct_seen` counts the strings a scheme had to treat as new: all
/// `m` for `naive`, the histogram size `L` for `sorted`, and the
/// first-ever strings `L - l` for `mm` (the persistent dictionary makes a
/// per-call `L` unobservable without extra bookkeeping the scheme does
/// not need).
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct EvalStats {
    pub hash_probes: u64,
    pub string_compares: u64,
    pub group_evals: u64,
    pub shots_seen: u64,
    pub distinct_seen: u64,
    pub memory_hits: u64,
    /// Seconds spent inside the evaluation routine (post-processing only;
    /// state preparation and sampling happen before).
    pub wall_time: f64,
}

impl EvalStats {
    pub fn merge(&mut self, other: &EvalStats) {
        self.hash_probes += other.hash_probes;
        self.string_compares += other.string_compares;
        self.group_evals += other.group_evals;
        self.shots_seen += other.shots_seen;
        self.distinct_seen += other.distinct_seen;
        self.memory_hits += other.memory_hits;
        self.wall_time += other.wall_time;
    }

    /// Total word operations under the cost model: probes and compares
    /// touch `N`-bit strings, evaluations touch `terms` Z masks of `N`
    /// bits each.
    pub fn weighted_cost(&self, n_qubits: usize, terms: usize) -> u64 {
        let n = n_qubits as u64;
        let t = terms as u64;
        self.hash_probes * n + self.string_compares * n + self.group_evals * n * t
    }
}

/// Expectation estimate for one group plus its cost counters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroupExpectation<T> {
    pub value: T,
    pub stats: EvalStats,
}

/// Per-group dictionaries of memoized bit-string eigenvalues.
///
/// Keys are the packed bit strings themselves. Entries are never evicted;
/// a configurable cap guards against runaway memory use.
#[derive(Clone, Debug)]
pub struct MeasurementMemory<T> {
    tables: Vec<HashMap<BitString, T>>,
    max_entries: usize,
    total_entries: usize,
}

impl<T: Real> MeasurementMemory<T> {
    pub fn new(num_groups: usize) -> Self {
        Self::with_limit(num_groups, DEFAULT_MEMORY_LIMIT)
    }

    pub fn with_limit(num_groups: usize, max_entries: usize) -> Self {
        MeasurementMemory {
            tables: vec![HashMap::new(); num_groups],
            max_entries,
            total_entries: 0,
        }
    }

    pub fn num_groups(&self) -> usize {
        self.tables.len()
    }

    /// Total memorized entries across all groups.
    pub fn len(&self) -> usize {
        self.total_entries
    }

    pub fn is_empty(&self) -> bool {
        self.total_entries == 0
    }

    pub fn group_len(&self, group: usize) -> usize {
        self.tables[group].len()
    }

    pub fn get(&self, group: usize, b: BitString) -> Option<T> {
        self.tables.get(group)?.get(&b).copied()
    }

    /// Smallest memorized eigenvalue of a group, ties broken by bit
    /// string so the answer does not depend on hash order.
    pub fn min_entry(&self, group: usize) -> Option<(BitString, T)> {
        self.tables.get(group)?.iter().map(|(b, v)| (*b, *v)).min_by(
            |(ba, va), (bb, vb)| {
                va.partial_cmp(vb)
                    .expect("finite eigenvalues")
                    .then(ba.cmp(bb))
            },
        )
    }

    fn check_group(&self, group: usize) -> Result<(), EvalError> {
        if group >= self.tables.len() {
            return Err(EvalError::GroupIndexOutOfRange {
                index: group,
                num_groups: self.tables.len(),
            });
        }
        Ok(())
    }

    fn lookup_or_insert(
        &mut self,
        group: usize,
        b: BitString,
        value: impl FnOnce() -> T,
    ) -> Result<(T, bool), EvalError> {
        match self.tables[group].entry(b) {
            Entry::Occupied(e) => Ok((*e.get(), true)),
            Entry::Vacant(slot) => {
                if self.total_entries >= self.max_entries {
                    return Err(EvalError::MemoryLimitExceeded { limit: self.max_entries });
                }
                self.total_entries += 1;
                let v = value();
                slot.insert(v);
                Ok((v, false))
            }
        }
    }
}

/// Eigenvalue of the diagonalized group on one bit string:
/// `sum_j c_j (-1)^popcount(z_j & b)`.
pub fn eval_bitstring<T: Real>(group: &CommutingGroup<T>, b: BitString) -> T {
    let bits = b.bits();
    let mut acc = T::zero();
    for term in &group.diagonal_terms {
        debug_assert!(term.pauli.is_z_string());
        if (term.pauli.z_bits() & bits).count_ones() & 1 == 0 {
            acc += term.coeff;
        } else {
            acc -= term.coeff;
        }
    }
    acc
}

fn check_samples<T: Real>(group: &CommutingGroup<T>, samples: &SampleSet) -> Result<(), EvalError> {
    if samples.shots.is_empty() {
        return Err(EvalError::EmptySampleSet);
    }
    let expected = group.basis_circuit.n_qubits();
    if samples.n_qubits != expected {
        return Err(EvalError::QubitCountMismatch { expected, got: samples.n_qubits });
    }
    Ok(())
}

/// Evaluates the group eigenvalue for every shot.
pub fn eval_naive<T: Real>(
    group: &CommutingGroup<T>,
    samples: &SampleSet,
) -> Result<GroupExpectation<T>, EvalError> {
    check_samples(group, samples)?;
    let start = Instant::now();
    let m = samples.shots.len();
    let inv_m = T::one() / real::<T>(m as f64);
    let mut value = T::zero();
    for &shot in &samples.shots {
        value += eval_bitstring(group, shot) * inv_m;
    }
    let stats = EvalStats {
        group_evals: m as u64,
        shots_seen: m as u64,
        distinct_seen: m as u64,
        wall_time: start.elapsed().as_secs_f64(),
        ..EvalStats::default()
    };
    Ok(GroupExpectation { value, stats })
}

/// Histograms the shots, then evaluates each distinct string once.
pub fn eval_sorted<T: Real>(
    group: &CommutingGroup<T>,
    samples: &SampleSet,
) -> Result<GroupExpectation<T>, EvalError> {
    check_samples(group, samples)?;
    let start = Instant::now();
    let m = samples.shots.len();
    let inv_m = T::one() / real::<T>(m as f64);
    let mut stats = EvalStats { shots_seen: m as u64, ..EvalStats::default() };
    let mut histogram: IndexMap<BitString, u64> = IndexMap::with_capacity(m.min(1 << 12));
    for &shot in &samples.shots {
        stats.hash_probes += 1;
        match histogram.entry(shot) {
            indexmap::map::Entry::Occupied(mut e) => {
                stats.string_compares += 1;
                *e.get_mut() += 1;
            }
            indexmap::map::Entry::Vacant(slot) => {
                slot.insert(1);
            }
        }
    }
    stats.distinct_seen = histogram.len() as u64;
    let mut value = T::zero();
    for (&b, &count) in &histogram {
        stats.group_evals += 1;
        value += eval_bitstring(group, b) * real::<T>(count as f64) * inv_m;
    }
    stats.wall_time = start.elapsed().as_secs_f64();
    Ok(GroupExpectation { value, stats })
}

/// Looks every shot up in the persistent memory, evaluating and storing
/// only strings never seen before. Accumulates in shot order with weight
/// `1/m`, exactly like [`eval_naive`], so the two schemes agree bit for
/// bit on identical shots.
pub fn eval_mm<T: Real>(
    group: &CommutingGroup<T>,
    samples: &SampleSet,
    memory: &mut MeasurementMemory<T>,
) -> Result<GroupExpectation<T>, EvalError> {
    check_samples(group, samples)?;
    memory.check_group(samples.group_index)?;
    let start = Instant::now();
    let m = samples.shots.len();
    let inv_m = T::one() / real::<T>(m as f64);
    let mut stats = EvalStats { shots_seen: m as u64, ..EvalStats::default() };
    let mut value = T::zero();
    for &shot in &samples.shots {
        stats.hash_probes += 1;
        let (eig, hit) =
            memory.lookup_or_insert(samples.group_index, shot, || eval_bitstring(group, shot))?;
        if hit {
            stats.string_compares += 1;
            stats.memory_hits += 1;
        } else {
            stats.group_evals += 1;
            stats.distinct_seen += 1;
        }
        value += eig * inv_m;
    }
    stats.wall_time = start.elapsed().as_secs_f64();
    Ok(GroupExpectation { value, stats })
}

/// Exact expectation from measurement probabilities instead of shots.
pub fn eval_exact<T: Real>(
    group: &CommutingGroup<T>,
    probabilities: &[(BitString, T)],
) -> GroupExpectation<T> {
    let start = Instant::now();
    let mut value = T::zero();
    let mut evals = 0u64;
    for &(b, p) in probabilities {
        evals += 1;
        value += eval_bitstring(group, b) * p;
    }
    let stats = EvalStats {
        group_evals: evals,
        distinct_seen: evals,
        wall_time: start.elapsed().as_secs_f64(),
        ..EvalStats::default()
    };
    GroupExpectation { value, stats }
}

/// Estimates the full Hamiltonian expectation from per-group sample sets,
/// summing group estimates and the identity offset. Sample set `k` must
/// be labeled for group `k`; scheme `mm` requires a memory whose group
/// count matches.
pub fn eval_hamiltonian<T: Real>(
    gh: &GroupedHamiltonian<T>,
    samples: &[SampleSet],
    mut memory: Option<&mut MeasurementMemory<T>>,
    scheme: Scheme,
) -> Result<(T, EvalStats), EvalError> {
    if samples.len() != gh.num_groups() {
        return Err(EvalError::GroupCountMismatch {
            groups: gh.num_groups(),
            samples: samples.len(),
        });
    }
    if scheme == Scheme::Mm && memory.is_none() {
        return Err(EvalError::MissingMemory);
    }
    let mut value = gh.identity_offset();
    let mut stats = EvalStats::default();
    for (k, (group, sample)) in gh.groups().iter().zip(samples).enumerate() {
        if sample.group_index != k {
            return Err(EvalError::GroupIndexMismatch { position: k, label: sample.group_index });
        }
        let result = match scheme {
            Scheme::Naive => eval_naive(group, sample)?,
            Scheme::Sorted => eval_sorted(group, sample)?,
            Scheme::Mm => eval_mm(group, sample, memory.as_deref_mut().expect("checked above"))?,
        };
        value += result.value;
        stats.merge(&result.stats);
    }
    Ok((value, stats))
}

/// Exact-probability counterpart of [`eval_hamiltonian`].
pub fn eval_hamiltonian_exact<T: Real>(
    gh: &GroupedHamiltonian<T>,
    probabilities: &[Vec<(BitString, T)>],
) -> Result<(T, EvalStats), EvalError> {
    if probabilities.len() != gh.num_groups() {
        return Err(EvalError::GroupCountMismatch {
            groups: gh.num_groups(),
            samples: probabilities.len(),
        });
    }
    let mut value = gh.identity_offset();
    let mut stats = EvalStats::default();
    for (group, probs) in gh.groups().iter().zip(probabilities) {
        let result = eval_exact(group, probs);
        value += result.value;
        stats.merge(&result.stats);
    }
    Ok((value, stats))
}

/// Expected number of distinct strings when drawing `m` uniform samples
/// from `2^n_qubits` outcomes: `2^N (1 - (1 - 2^-N)^m)`.
pub fn expected_distinct(n_qubits: usize, m: u64) -> f64 {
    let pool = (n_qubits as f64).exp2();
    let p = (-(n_qubits as f64)).exp2();
    -pool * f64::exp_m1(m as f64 * f64::ln_1p(-p))
}
