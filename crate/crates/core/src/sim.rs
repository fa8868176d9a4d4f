//! Dense statevector simulation of the ansatz and measurement circuits.
//!
//! Amplitudes are stored indexed by basis state, with bit `i` of the index
//! holding qubit `i`. The gate set is exactly what the rest of the crate
//! needs: RY and RZ rotations for the ansatz, and the Clifford gates that
//! basis-change circuits are made of.

use crate::grouping::{CliffordCircuit, CliffordGate};
use crate::num::{real, to_f64, Real};
use crate::pauli::BitString;
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Dense simulation becomes unreasonable well before the packing limit.
pub const MAX_SIM_QUBITS: usize = 24;

#[derive(Debug, Error, PartialEq)]
pub enum SimError {
    #[error("cannot simulate {requested} qubits (limit {MAX_SIM_QUBITS})")]
    TooManyQubits { requested: usize },
    #[error("ansatz takes {expected} parameters, got {got}")]
    WrongParameterCount { expected: usize, got: usize },
}

/// Hardware-efficient ansatz: an RY rotation on every qubit, a CNOT chain
/// `0->1, 1->2, ...`, then a second RY layer. `2 * n_qubits` parameters,
/// first layer first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnsatzSpec {
    pub n_qubits: usize,
}

impl AnsatzSpec {
    pub fn new(n_qubits: usize) -> Self {
        AnsatzSpec { n_qubits }
    }

    pub fn n_params(&self) -> usize {
        2 * self.n_qubits
    }
}

/// Shots drawn from one state in one measurement basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleSet {
    pub n_qubits: usize,
    /// Which commuting group the basis belongs to; informational.
    pub group_index: usize,
    /// Seed the shots were drawn with.
    pub seed: u64,
    pub shots: Vec<BitString>,
}

/// Normalized pure state on up to [`MAX_SIM_QUBITS`] qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<T> {
    n_qubits: usize,
    amps: Vec<Complex<T>>,
}

impl<T: Real> StateVector<T> {
    /// The all-zeros computational basis state.
    pub fn zero_state(n_qubits: usize) -> Result<Self, SimError> {
        if n_qubits == 0 || n_qubits > MAX_SIM_QUBITS {
            return Err(SimError::TooManyQubits { requested: n_qubits });
        }
        let mut amps = vec![Complex::new(T::zero(), T::zero()); 1 << n_qubits];
        amps[0] = Complex::new(T::one(), T::zero());
        Ok(StateVector { n_qubits, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn norm(&self) -> T {
        self.amps
            .iter()
            .fold(T::zero(), |acc, a| acc + a.norm_sqr())
            .sqrt()
    }

    fn for_each_pair(&mut self, qubit: usize, mut f: impl FnMut(&mut Complex<T>, &mut Complex<T>)) {
        debug_assert!(qubit < self.n_qubits);
        let step = 1 << qubit;
        for chunk in self.amps.chunks_mut(2 * step) {
            let (lo, hi) = chunk.split_at_mut(step);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                f(a, b);
            }
        }
    }

    pub fn apply_ry(&mut self, qubit: usize, theta: T) {
        let half = theta / real::<T>(2.0);
        let (sin, cos) = (half.sin(), half.cos());
        self.for_each_pair(qubit, |a, b| {
            let na = a.scale(cos) - b.scale(sin);
            let nb = a.scale(sin) + b.scale(cos);
            *a = na;
            *b = nb;
        });
    }

    pub fn apply_rz(&mut self, qubit: usize, theta: T) {
        let half = theta / real::<T>(2.0);
        let lo = Complex::new(half.cos(), -half.sin());
        let hi = Complex::new(half.cos(), half.sin());
        self.for_each_pair(qubit, |a, b| {
            *a = *a * lo;
            *b = *b * hi;
        });
    }

    pub fn apply_h(&mut self, qubit: usize) {
        let inv_sqrt2 = real::<T>(std::f64::consts::FRAC_1_SQRT_2);
        self.for_each_pair(qubit, |a, b| {
            let na = (*a + *b).scale(inv_sqrt2);
            let nb = (*a - *b).scale(inv_sqrt2);
            *a = na;
            *b = nb;
        });
    }

    /// Phase gate `S = diag(1, i)`.
    pub fn apply_phase(&mut self, qubit: usize) {
        let i = Complex::new(T::zero(), T::one());
        self.for_each_pair(qubit, |_, b| *b = *b * i);
    }

    /// Inverse phase gate `diag(1, -i)`.
    pub fn apply_phase_dag(&mut self, qubit: usize) {
        let mi = Complex::new(T::zero(), -T::one());
        self.for_each_pair(qubit, |_, b| *b = *b * mi);
    }

    pub fn apply_cnot(&mut self, control: usize, target: usize) {
        debug_assert!(control != target);
        let cb = 1usize << control;
        let tb = 1usize << target;
        for idx in 0..self.amps.len() {
            if idx & cb != 0 && idx & tb == 0 {
                self.amps.swap(idx, idx | tb);
            }
        }
    }

    pub fn apply_cz(&mut self, a: usize, b: usize) {
        debug_assert!(a != b);
        let mask = (1usize << a) | (1usize << b);
        for (idx, amp) in self.amps.iter_mut().enumerate() {
            if idx & mask == mask {
                *amp = -*amp;
            }
        }
    }

    /// Applies a basis-change circuit, first gate first.
    pub fn apply_clifford(&mut self, circuit: &CliffordCircuit) {
        assert_eq!(circuit.n_qubits(), self.n_qubits, "qubit count mismatch");
        for &gate in circuit.gates() {
            match gate {
                CliffordGate::Hadamard(q) => self.apply_h(q),
                CliffordGate::Phase(q) => self.apply_phase(q),
                CliffordGate::PhaseDag(q) => self.apply_phase_dag(q),
                CliffordGate::Cnot { control, target } => self.apply_cnot(control, target),
                CliffordGate::Cz(a, b) => self.apply_cz(a, b),
            }
        }
    }

    /// Computational-basis measurement probabilities for every basis state
    /// with nonzero amplitude, in basis order.
    pub fn exact_probabilities(&self) -> Vec<(BitString, T)> {
        self.amps
            .iter()
            .enumerate()
            .filter_map(|(idx, a)| {
                let p = a.norm_sqr();
                (p > T::zero()).then(|| (BitString::new(self.n_qubits, idx as u64), p))
            })
            .collect()
    }

    /// Draws `m` measurement shots by inverting the cumulative
    /// distribution with a binary search per shot. Reproducible from the
    /// seed alone.
    pub fn sample(&self, m: usize, seed: u64) -> SampleSet {
        let mut cumulative = Vec::with_capacity(self.amps.len());
        let mut acc = 0.0f64;
        for a in &self.amps {
            acc += to_f64(a.norm_sqr());
            cumulative.push(acc);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shots = (0..m)
            .map(|_| {
                let u: f64 = rng.random::<f64>() * acc;
                let idx = cumulative.partition_point(|&c| c <= u).min(self.amps.len() - 1);
                BitString::new(self.n_qubits, idx as u64)
            })
            .collect();
        SampleSet { n_qubits: self.n_qubits, group_index: 0, seed, shots }
    }
}

/// Runs the ansatz on the all-zeros state.
pub fn prepare_state<T: Real>(
    ansatz: &AnsatzSpec,
    params: &[T],
) -> Result<StateVector<T>, SimError> {
    if params.len() != ansatz.n_params() {
        return Err(SimError::WrongParameterCount {
            expected: ansatz.n_params(),
            got: params.len(),
        });
    }
    let n = ansatz.n_qubits;
    let mut state = StateVector::zero_state(n)?;
    for q in 0..n {
        state.apply_ry(q, params[q]);
    }
    for q in 0..n.saturating_sub(1) {
        state.apply_cnot(q, q + 1);
    }
    for q in 0..n {
        state.apply_ry(q, params[n + q]);
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouping::CliffordGate;
    use approx::assert_relative_eq;

    fn amp(state: &StateVector<f64>, idx: usize) -> Complex<f64> {
        state.amplitudes()[idx]
    }

    #[test]
    fn zero_parameters_leave_the_zero_state() {
        let state = prepare_state(&AnsatzSpec::new(1), &[0.0, 0.0]).unwrap();
        assert_relative_eq!(amp(&state, 0).re, 1.0, max_relative = 1e-15);
    }

    #[test]
    fn pi_rotation_flips_to_one() {
        let state = prepare_state(&AnsatzSpec::new(1), &[std::f64::consts::PI, 0.0]).unwrap();
        assert!(amp(&state, 0).norm() < 1e-15);
        assert_relative_eq!(amp(&state, 1).re, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn half_pi_on_first_qubit_entangles_through_the_chain() {
        let state =
            prepare_state(&AnsatzSpec::new(2), &[std::f64::consts::FRAC_PI_2, 0.0, 0.0, 0.0])
                .unwrap();
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        assert_relative_eq!(amp(&state, 0).re, inv_sqrt2, epsilon = 1e-12);
        assert!(amp(&state, 1).norm() < 1e-12);
        assert!(amp(&state, 2).norm() < 1e-12);
        assert_relative_eq!(amp(&state, 3).re, inv_sqrt2, epsilon = 1e-12);
    }

    #[test]
    fn wrong_parameter_count_is_rejected() {
        assert_eq!(
            prepare_state(&AnsatzSpec::new(2), &[0.0; 3]).unwrap_err(),
            SimError::WrongParameterCount { expected: 4, got: 3 }
        );
    }

    #[test]
    fn qubit_ceiling_is_enforced() {
        assert_eq!(
            StateVector::<f64>::zero_state(MAX_SIM_QUBITS + 1).unwrap_err(),
            SimError::TooManyQubits { requested: 25 }
        );
    }

    #[test]
    fn empty_circuit_is_identity() {
        let mut state = prepare_state(&AnsatzSpec::new(2), &[0.3, -0.8, 0.1, 0.9]).unwrap();
        let before = state.clone();
        state.apply_clifford(&CliffordCircuit::new(2));
        assert_eq!(state, before);
    }

    #[test]
    fn hadamard_then_cnot_builds_a_bell_state() {
        let mut state = StateVector::<f64>::zero_state(2).unwrap();
        let mut circuit = CliffordCircuit::new(2);
        circuit.push(CliffordGate::Hadamard(0));
        circuit.push(CliffordGate::Cnot { control: 0, target: 1 });
        state.apply_clifford(&circuit);
        let probs = state.exact_probabilities();
        assert_eq!(probs.len(), 2);
        assert_eq!(probs[0].0.bits(), 0b00);
        assert_relative_eq!(probs[0].1, 0.5, epsilon = 1e-12);
        assert_eq!(probs[1].0.bits(), 0b11);
        assert_relative_eq!(probs[1].1, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn phase_and_its_inverse_cancel() {
        let mut state = prepare_state(&AnsatzSpec::new(2), &[0.4, 1.1, -0.2, 0.7]).unwrap();
        let before = state.clone();
        state.apply_phase(1);
        state.apply_phase_dag(1);
        assert!(state
            .amplitudes()
            .iter()
            .zip(before.amplitudes())
            .all(|(a, b)| (a - b).norm() < 1e-15));
    }

    #[test]
    fn rz_changes_phases_not_probabilities() {
        let mut state = prepare_state(&AnsatzSpec::new(1), &[0.9, 0.0]).unwrap();
        let before = state.exact_probabilities();
        state.apply_rz(0, 0.37);
        let after = state.exact_probabilities();
        for ((_, p), (_, q)) in before.iter().zip(after.iter()) {
            assert_relative_eq!(p, q, epsilon = 1e-12);
        }
    }

    #[test]
    fn sampling_is_deterministic_per_seed() {
        let state = prepare_state(&AnsatzSpec::new(3), &[0.8, 0.3, 0.5, 0.1, 0.2, 0.9]).unwrap();
        let a = state.sample(200, 42);
        let b = state.sample(200, 42);
        let c = state.sample(200, 43);
        assert_eq!(a.shots, b.shots);
        assert_ne!(a.shots, c.shots);
        assert_eq!(a.seed, 42);
        assert_eq!(a.shots.len(), 200);
    }

    #[test]
    fn basis_states_sample_themselves() {
        let state = prepare_state(&AnsatzSpec::new(2), &[std::f64::consts::PI; 4]).unwrap();
        // Two pi-pulses per qubit interleaved with the chain: work out the
        // outcome from the probabilities instead of hardcoding it.
        let probs = state.exact_probabilities();
        let dominant = probs
            .iter()
            .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        assert_relative_eq!(dominant.1, 1.0, epsilon = 1e-12);
        let shots = state.sample(50, 7).shots;
        assert!(shots.iter().all(|b| *b == dominant.0));
    }

    #[test]
    fn uniform_state_samples_uniformly() {
        let mut state = StateVector::<f64>::zero_state(3).unwrap();
        for q in 0..3 {
            state.apply_h(q);
        }
        let m = 100_000usize;
        let shots = state.sample(m, 11).shots;
        let mut counts = [0usize; 8];
        for b in shots {
            counts[b.bits() as usize] += 1;
        }
        let expected = m as f64 / 8.0;
        let chi2: f64 = counts
            .iter()
            .map(|&c| {
                let d = c as f64 - expected;
                d * d / expected
            })
            .sum();
        // 0.999 quantile of chi-squared with 7 degrees of freedom.
        assert!(chi2 < 24.32, "chi2 = {chi2}");
    }

    #[test]
    fn exact_probabilities_sum_to_one() {
        let state = prepare_state(&AnsatzSpec::new(3), &[0.3, 1.2, -0.4, 0.8, 0.05, 2.2]).unwrap();
        let total: f64 = state.exact_probabilities().iter().map(|(_, p)| p).sum();
        assert_relative_eq!(total, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn f32_states_normalize_too() {
        let state = prepare_state(&AnsatzSpec::new(2), &[0.3f32, 0.4, 0.5, 0.6]).unwrap();
        assert!((state.norm() - 1.0f32).abs() < 1e-6);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn ansatz_preserves_the_norm(
                n in 1usize..=5,
                raw in proptest::collection::vec(-3.2f64..3.2, 10)
            ) {
                let ansatz = AnsatzSpec::new(n);
                let state = prepare_state(&ansatz, &raw[..ansatz.n_params()]).unwrap();
                prop_assert!((state.norm() - 1.0).abs() < 1e-10);
            }

            #[test]
            fn clifford_gates_preserve_the_norm(
                n in 2usize..=4,
                gates in proptest::collection::vec((0u8..5, 0usize..4, 0usize..4), 0..20)
            ) {
                let mut state = StateVector::<f64>::zero_state(n).unwrap();
                state.apply_h(0);
                state.apply_ry(n - 1, 0.7);
                let mut circuit = CliffordCircuit::new(n);
                for (kind, a, b) in gates {
                    let a = a % n;
                    let b = b % n;
                    let gate = match kind {
                        0 => CliffordGate::Hadamard(a),
                        1 => CliffordGate::Phase(a),
                        2 => CliffordGate::PhaseDag(a),
                        3 if a != b => CliffordGate::Cnot { control: a, target: b },
                        _ if a != b => CliffordGate::Cz(a, b),
                        _ => CliffordGate::Hadamard(a),
                    };
                    circuit.push(gate);
                }
                state.apply_clifford(&circuit);
                prop_assert!((state.norm() - 1.0).abs() < 1e-10);
            }
        }
    }
}
