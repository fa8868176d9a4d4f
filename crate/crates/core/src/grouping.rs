//! Partitioning a Hamiltonian into simultaneously measurable groups.
//!
//! Two compatibility relations are supported: qubit-wise commutation and
//! general commutation. Grouping is a greedy first-fit pass over the terms
//! in descending coefficient magnitude, which keeps the construction
//! deterministic and cheap while staying close to the minimum clique cover
//! on the instances that matter here.
//!
//! Each group carries a Clifford basis-change circuit that conjugates all
//! of its members to Z strings, plus the conjugated (diagonal) terms with
//! the conjugation signs folded into the coefficients. Identity terms are
//! stripped before grouping and reported as a constant offset.

use crate::num::Real;
use crate::pauli::{Hamiltonian, PauliString, PauliTerm};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GroupingError {
    #[error("cannot diagonalize an empty group")]
    EmptyGroup,
    #[error("terms {a} and {b} do not commute")]
    NonCommutingPair { a: String, b: String },
    #[error("group mixes register widths: {a} vs {b} qubits")]
    MixedQubitCounts { a: usize, b: usize },
}

/// Compatibility relation used to form groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupingMode {
    /// Equal-or-identity factors on every qubit.
    QubitWise,
    /// Full operator commutation.
    General,
}

impl std::fmt::Display for GroupingMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GroupingMode::QubitWise => "qwc",
            GroupingMode::General => "gc",
        })
    }
}

impl std::str::FromStr for GroupingMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "qwc" => Ok(GroupingMode::QubitWise),
            "gc" => Ok(GroupingMode::General),
            other => Err(format!("unknown grouping mode {other:?} (expected qwc or gc)")),
        }
    }
}

/// One gate of a basis-change circuit.
///
/// `PhaseDag` is the inverse phase gate; it shows up when rotating a Y
/// factor into the computational basis and saves spelling out three
/// `Phase` gates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CliffordGate {
    Hadamard(usize),
    Phase(usize),
    PhaseDag(usize),
    Cnot { control: usize, target: usize },
    Cz(usize, usize),
}

/// Gate list applied first gate first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordCircuit {
    n_qubits: usize,
    gates: Vec<CliffordGate>,
}

impl CliffordCircuit {
    pub fn new(n_qubits: usize) -> Self {
        CliffordCircuit { n_qubits, gates: Vec::new() }
    }

    pub fn push(&mut self, gate: CliffordGate) {
        let ok = match gate {
            CliffordGate::Hadamard(q) | CliffordGate::Phase(q) | CliffordGate::PhaseDag(q) => {
                q < self.n_qubits
            }
            CliffordGate::Cnot { control, target } => {
                control < self.n_qubits && target < self.n_qubits && control != target
            }
            CliffordGate::Cz(a, b) => a < self.n_qubits && b < self.n_qubits && a != b,
        };
        assert!(ok, "gate {gate:?} out of range for {} qubits", self.n_qubits);
        self.gates.push(gate);
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[CliffordGate] {
        &self.gates
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Image of `p` under conjugation by this circuit, `U p U†`, returned
    /// as a phaseless string and a separate sign.
    pub fn conjugate(&self, p: &PauliString) -> (PauliString, i32) {
        assert_eq!(p.n_qubits(), self.n_qubits, "qubit count mismatch");
        let mut x = p.x_bits();
        let mut z = p.z_bits();
        let mut sign = 1i32;
        for &gate in &self.gates {
            match gate {
                CliffordGate::Hadamard(q) => {
                    let bit = 1u64 << q;
                    if x & bit != 0 && z & bit != 0 {
                        sign = -sign;
                    }
                    let xq = x & bit;
                    let zq = z & bit;
                    x = x & !bit | zq;
                    z = z & !bit | xq;
                }
                CliffordGate::Phase(q) => {
                    let bit = 1u64 << q;
                    if x & bit != 0 && z & bit != 0 {
                        sign = -sign;
                    }
                    z ^= x & bit;
                }
                CliffordGate::PhaseDag(q) => {
                    let bit = 1u64 << q;
                    if x & bit != 0 && z & bit == 0 {
                        sign = -sign;
                    }
                    z ^= x & bit;
                }
                CliffordGate::Cnot { control, target } => {
                    let cb = 1u64 << control;
                    let tb = 1u64 << target;
                    let xc = x & cb != 0;
                    let zc = z & cb != 0;
                    let xt = x & tb != 0;
                    let zt = z & tb != 0;
                    if xc && zt && xt == zc {
                        sign = -sign;
                    }
                    if xc {
                        x ^= tb;
                    }
                    if zt {
                        z ^= cb;
                    }
                }
                CliffordGate::Cz(a, b) => {
                    let ab = 1u64 << a;
                    let bb = 1u64 << b;
                    let xa = x & ab != 0;
                    let za = z & ab != 0;
                    let xb = x & bb != 0;
                    let zb = z & bb != 0;
                    if xa && xb && za != zb {
                        sign = -sign;
                    }
                    if xb {
                        z ^= ab;
                    }
                    if xa {
                        z ^= bb;
                    }
                }
            }
        }
        (PauliString::from_masks(self.n_qubits, x, z), sign)
    }
}

/// Set of mutually compatible terms with its measurement basis.
///
/// `diagonal_terms[i]` is the image of `terms[i]` under the basis circuit,
/// a Z string whose coefficient includes the conjugation sign.
#[derive(Clone, Debug, PartialEq)]
pub struct CommutingGroup<T> {
    pub terms: Vec<PauliTerm<T>>,
    pub basis_circuit: CliffordCircuit,
    pub diagonal_terms: Vec<PauliTerm<T>>,
}

/// Grouped form of a Hamiltonian.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupedHamiltonian<T> {
    n_qubits: usize,
    mode: GroupingMode,
    groups: Vec<CommutingGroup<T>>,
    identity_offset: T,
}

impl<T: Real> GroupedHamiltonian<T> {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn mode(&self) -> GroupingMode {
        self.mode
    }

    pub fn groups(&self) -> &[CommutingGroup<T>] {
        &self.groups
    }

    pub fn num_groups(&self) -> usize {
        self.groups.len()
    }

    /// Coefficient of the identity term, added to every expectation value.
    pub fn identity_offset(&self) -> T {
        self.identity_offset
    }
}

fn compatible(mode: GroupingMode, a: &PauliString, b: &PauliString) -> bool {
    match mode {
        GroupingMode::QubitWise => a.qubit_wise_commutes(b),
        GroupingMode::General => a.commutes(b),
    }
}

/// Greedy first-fit grouping.
///
/// Terms are visited in descending coefficient magnitude (ties by original
/// position) and join the first group they are compatible with as a
/// clique. Identity terms become the constant offset.
pub fn group_hamiltonian<T: Real>(
    h: &Hamiltonian<T>,
    mode: GroupingMode,
) -> Result<GroupedHamiltonian<T>, GroupingError> {
    let mut identity_offset = T::zero();
    let mut order: Vec<&PauliTerm<T>> = Vec::with_capacity(h.num_terms());
    for term in h.terms() {
        if term.pauli.is_identity() {
            identity_offset += term.coeff;
        } else {
            order.push(term);
        }
    }
    order.sort_by(|a, b| {
        b.coeff
            .abs()
            .partial_cmp(&a.coeff.abs())
            .expect("finite coefficients")
    });

    let mut members: Vec<Vec<PauliTerm<T>>> = Vec::new();
    for term in order {
        let slot = members
            .iter()
            .position(|g| g.iter().all(|m| compatible(mode, &term.pauli, &m.pauli)));
        match slot {
            Some(i) => members[i].push(*term),
            None => members.push(vec![*term]),
        }
    }

    let mut groups = Vec::with_capacity(members.len());
    for terms in members {
        let (basis_circuit, diagonal_terms) = diagonalize_group(&terms, h.n_qubits())?;
        groups.push(CommutingGroup { terms, basis_circuit, diagonal_terms });
    }
    Ok(GroupedHamiltonian { n_qubits: h.n_qubits(), mode, groups, identity_offset })
}

/// Builds the basis-change circuit for a set of mutually commuting terms
/// and returns it with the diagonalized terms.
///
/// Qubit-wise commuting groups only need single-qubit rotations: H for an
/// X factor, then inverse phase followed by H for a Y factor. General
/// groups go through Gaussian elimination on the symplectic tableau: CNOTs
/// reduce the X block to one pivot per qubit column (lowest qubit first),
/// Phase and CZ gates then cancel the Z entries on the pivot qubits, and a
/// final H layer on the pivots turns the remaining X pivots into Z.
pub fn diagonalize_group<T: Real>(
    terms: &[PauliTerm<T>],
    n_qubits: usize,
) -> Result<(CliffordCircuit, Vec<PauliTerm<T>>), GroupingError> {
    if terms.is_empty() {
        return Err(GroupingError::EmptyGroup);
    }
    for t in terms {
        if t.pauli.n_qubits() != n_qubits {
            return Err(GroupingError::MixedQubitCounts {
                a: n_qubits,
                b: t.pauli.n_qubits(),
            });
        }
    }
    for (i, a) in terms.iter().enumerate() {
        for b in &terms[i + 1..] {
            if !a.pauli.commutes(&b.pauli) {
                return Err(GroupingError::NonCommutingPair {
                    a: a.pauli.to_string(),
                    b: b.pauli.to_string(),
                });
            }
        }
    }

    let qubit_wise = terms.iter().enumerate().all(|(i, a)| {
        terms[i + 1..].iter().all(|b| a.pauli.qubit_wise_commutes(&b.pauli))
    });
    let circuit = if qubit_wise {
        qubit_wise_basis(terms, n_qubits)
    } else {
        symplectic_basis(terms, n_qubits)
    };

    let diagonal_terms = terms
        .iter()
        .map(|t| {
            let (image, sign) = circuit.conjugate(&t.pauli);
            assert!(
                image.is_z_string(),
                "basis circuit failed to diagonalize {} (image {})",
                t.pauli,
                image
            );
            let coeff = if sign < 0 { -t.coeff } else { t.coeff };
            PauliTerm::new(image, coeff)
        })
        .collect();
    Ok((circuit, diagonal_terms))
}

fn qubit_wise_basis<T: Real>(terms: &[PauliTerm<T>], n_qubits: usize) -> CliffordCircuit {
    let mut circuit = CliffordCircuit::new(n_qubits);
    for q in 0..n_qubits {
        let bit = 1u64 << q;
        // All non-identity factors on q agree, so the first one decides.
        let factor = terms
            .iter()
            .map(|t| (t.pauli.x_bits() & bit != 0, t.pauli.z_bits() & bit != 0))
            .find(|&(x, z)| x || z);
        match factor {
            Some((true, false)) => circuit.push(CliffordGate::Hadamard(q)),
            Some((true, true)) => {
                circuit.push(CliffordGate::PhaseDag(q));
                circuit.push(CliffordGate::Hadamard(q));
            }
            _ => {}
        }
    }
    circuit
}

/// Phaseless tableau row.
#[derive(Clone, Copy)]
struct Row {
    x: u64,
    z: u64,
}

fn symplectic_basis<T: Real>(terms: &[PauliTerm<T>], n_qubits: usize) -> CliffordCircuit {
    let mut rows: Vec<Row> = terms
        .iter()
        .map(|t| Row { x: t.pauli.x_bits(), z: t.pauli.z_bits() })
        .collect();

    // Row reduce the X block; row sums correspond to products of group
    // members, which leaves the generated group unchanged.
    let mut pivots: Vec<usize> = Vec::new();
    let mut next = 0usize;
    for col in 0..n_qubits {
        let bit = 1u64 << col;
        let Some(hit) = (next..rows.len()).find(|&i| rows[i].x & bit != 0) else {
            continue;
        };
        rows.swap(next, hit);
        let pivot_row = rows[next];
        for (j, row) in rows.iter_mut().enumerate() {
            if j != next && row.x & bit != 0 {
                row.x ^= pivot_row.x;
                row.z ^= pivot_row.z;
            }
        }
        pivots.push(col);
        next += 1;
    }

    let mut circuit = CliffordCircuit::new(n_qubits);
    let mut emit = |rows: &mut Vec<Row>, gate: CliffordGate| {
        for row in rows.iter_mut() {
            match gate {
                CliffordGate::Cnot { control, target } => {
                    let cb = 1u64 << control;
                    let tb = 1u64 << target;
                    if row.x & cb != 0 {
                        row.x ^= tb;
                    }
                    if row.z & tb != 0 {
                        row.z ^= cb;
                    }
                }
                CliffordGate::Phase(q) => {
                    row.z ^= row.x & (1u64 << q);
                }
                CliffordGate::Cz(a, b) => {
                    let ab = 1u64 << a;
                    let bb = 1u64 << b;
                    if row.x & bb != 0 {
                        row.z ^= ab;
                    }
                    if row.x & ab != 0 {
                        row.z ^= bb;
                    }
                }
                CliffordGate::Hadamard(q) => {
                    let bit = 1u64 << q;
                    let xq = row.x & bit;
                    let zq = row.z & bit;
                    row.x = row.x & !bit | zq;
                    row.z = row.z & !bit | xq;
                }
                CliffordGate::PhaseDag(q) => {
                    row.z ^= row.x & (1u64 << q);
                }
            }
        }
        circuit.push(gate);
    };

    // Make each pivot row's X part a single bit at its pivot column.
    for (i, &col) in pivots.iter().enumerate() {
        for target in 0..n_qubits {
            if target != col && rows[i].x & (1u64 << target) != 0 {
                emit(&mut rows, CliffordGate::Cnot { control: col, target });
            }
        }
    }
    // Commutation now confines Z support on pivot columns to the pivot
    // rows themselves, as a symmetric pattern the Phase/CZ layer cancels.
    for (i, &col) in pivots.iter().enumerate() {
        if rows[i].z & (1u64 << col) != 0 {
            emit(&mut rows, CliffordGate::Phase(col));
        }
    }
    for i in 0..pivots.len() {
        for j in i + 1..pivots.len() {
            if rows[i].z & (1u64 << pivots[j]) != 0 {
                emit(&mut rows, CliffordGate::Cz(pivots[i], pivots[j]));
            }
        }
    }
    for &col in &pivots {
        emit(&mut rows, CliffordGate::Hadamard(col));
    }

    debug_assert!(rows.iter().all(|r| r.x == 0), "X block not eliminated");
    circuit
}

/// Checks a grouping against its source Hamiltonian: every intra-group
/// pair must satisfy the mode's relation, the groups must partition the
/// non-identity terms exactly, and the offset must equal the identity
/// coefficient.
pub fn validate_grouping<T: Real>(gh: &GroupedHamiltonian<T>, h: &Hamiltonian<T>) -> bool {
    if gh.n_qubits() != h.n_qubits() {
        return false;
    }
    for group in gh.groups() {
        if group.terms.is_empty() {
            return false;
        }
        if group.terms.len() != group.diagonal_terms.len() {
            return false;
        }
        for (i, a) in group.terms.iter().enumerate() {
            for b in &group.terms[i + 1..] {
                if !compatible(gh.mode(), &a.pauli, &b.pauli) {
                    return false;
                }
            }
        }
    }

    let mut expected: std::collections::HashMap<PauliString, T> = std::collections::HashMap::new();
    let mut expected_offset = T::zero();
    for term in h.terms() {
        if term.pauli.is_identity() {
            expected_offset += term.coeff;
        } else {
            expected.insert(term.pauli, term.coeff);
        }
    }
    for group in gh.groups() {
        for term in &group.terms {
            match expected.remove(&term.pauli) {
                Some(coeff) if coeff == term.coeff => {}
                _ => return false,
            }
        }
    }
    expected.is_empty() && expected_offset == gh.identity_offset()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::Hamiltonian;

    fn ps(text: &str) -> PauliString {
        PauliString::parse(text, text.len()).unwrap()
    }

    fn term(text: &str, coeff: f64) -> PauliTerm<f64> {
        PauliTerm::new(ps(text), coeff)
    }

    fn ham(n: usize, terms: Vec<PauliTerm<f64>>) -> Hamiltonian<f64> {
        Hamiltonian::new(n, "test", terms).unwrap()
    }

    #[test]
    fn single_x_gets_a_hadamard() {
        let (circuit, diag) = diagonalize_group(&[term("X", 2.0)], 1).unwrap();
        assert_eq!(circuit.gates(), &[CliffordGate::Hadamard(0)]);
        assert_eq!(diag, vec![term("Z", 2.0)]);
    }

    #[test]
    fn single_y_gets_phase_dag_then_hadamard() {
        let (circuit, diag) = diagonalize_group(&[term("Y", 1.0)], 1).unwrap();
        assert_eq!(
            circuit.gates(),
            &[CliffordGate::PhaseDag(0), CliffordGate::Hadamard(0)]
        );
        assert_eq!(diag, vec![term("Z", 1.0)]);
    }

    #[test]
    fn z_strings_need_no_gates() {
        let (circuit, diag) =
            diagonalize_group(&[term("ZZ", 1.0), term("ZI", -0.5)], 2).unwrap();
        assert!(circuit.is_empty());
        assert_eq!(diag, vec![term("ZZ", 1.0), term("ZI", -0.5)]);
    }

    #[test]
    fn xx_zz_yy_diagonalize_together() {
        let terms = vec![term("XX", 1.0), term("ZZ", 1.0), term("YY", 1.0)];
        let (circuit, diag) = diagonalize_group(&terms, 2).unwrap();
        for d in &diag {
            assert!(d.pauli.is_z_string(), "image {} not diagonal", d.pauli);
        }
        // The group multiplication table must survive conjugation:
        // XX * YY = -ZZ, so the signed images must multiply the same way.
        let (ixx, sxx) = circuit.conjugate(&ps("XX"));
        let (iyy, syy) = circuit.conjugate(&ps("YY"));
        let (izz, szz) = circuit.conjugate(&ps("ZZ"));
        let product = ixx.z_bits() ^ iyy.z_bits();
        assert_eq!(product, izz.z_bits());
        assert_eq!(sxx * syy, -szz);
    }

    #[test]
    fn non_commuting_terms_are_rejected() {
        let err = diagonalize_group(&[term("X", 1.0), term("Z", 1.0)], 1).unwrap_err();
        assert_eq!(
            err,
            GroupingError::NonCommutingPair { a: "X".into(), b: "Z".into() }
        );
    }

    #[test]
    fn empty_group_is_rejected() {
        let terms: Vec<PauliTerm<f64>> = Vec::new();
        assert_eq!(diagonalize_group(&terms, 1).unwrap_err(), GroupingError::EmptyGroup);
    }

    #[test]
    fn greedy_qwc_grouping_matches_brute_force_on_three_terms() {
        // Z0 + X0 + Z0Z1: {Z0, Z0Z1} fit together, X0 cannot join either.
        let h = ham(2, vec![term("ZI", 1.0), term("XI", 0.8), term("ZZ", 0.6)]);
        let gh = group_hamiltonian(&h, GroupingMode::QubitWise).unwrap();
        assert_eq!(gh.num_groups(), 2);
        assert!(validate_grouping(&gh, &h));

        // Brute force over all 5 partitions of 3 elements: the smallest
        // number of valid qubit-wise cliques is 2.
        let paulis = [ps("ZI"), ps("XI"), ps("ZZ")];
        let partitions: [&[&[usize]]; 5] = [
            &[&[0, 1, 2]],
            &[&[0, 1], &[2]],
            &[&[0, 2], &[1]],
            &[&[1, 2], &[0]],
            &[&[0], &[1], &[2]],
        ];
        let valid = |block: &[usize]| {
            block.iter().enumerate().all(|(i, &a)| {
                block[i + 1..]
                    .iter()
                    .all(|&b| paulis[a].qubit_wise_commutes(&paulis[b]))
            })
        };
        let best = partitions
            .iter()
            .filter(|p| p.iter().all(|b| valid(b)))
            .map(|p| p.len())
            .min()
            .unwrap();
        assert_eq!(best, 2);
    }

    #[test]
    fn all_z_hamiltonian_is_one_group_in_both_modes() {
        let h = ham(3, vec![term("ZZI", 0.3), term("ZIZ", -0.2), term("IZZ", 0.1), term("ZII", 0.9)]);
        for mode in [GroupingMode::QubitWise, GroupingMode::General] {
            let gh = group_hamiltonian(&h, mode).unwrap();
            assert_eq!(gh.num_groups(), 1);
            assert!(gh.groups()[0].basis_circuit.is_empty());
            assert!(validate_grouping(&gh, &h));
        }
    }

    #[test]
    fn identity_terms_become_the_offset() {
        let h = ham(2, vec![term("II", -0.7), term("ZI", 1.0)]);
        let gh = group_hamiltonian(&h, GroupingMode::QubitWise).unwrap();
        assert_eq!(gh.identity_offset(), -0.7);
        assert_eq!(gh.num_groups(), 1);
        assert!(validate_grouping(&gh, &h));
    }

    #[test]
    fn general_mode_merges_what_qubit_wise_cannot() {
        let h = ham(2, vec![term("XX", 1.0), term("ZZ", 0.9), term("YY", 0.8)]);
        let qwc = group_hamiltonian(&h, GroupingMode::QubitWise).unwrap();
        let gc = group_hamiltonian(&h, GroupingMode::General).unwrap();
        assert_eq!(qwc.num_groups(), 3);
        assert_eq!(gc.num_groups(), 1);
    }

    #[test]
    fn grouping_is_deterministic() {
        let h = ham(
            3,
            vec![
                term("XXI", 0.4),
                term("ZZI", 0.4),
                term("IZZ", -0.4),
                term("YIX", 0.2),
                term("ZII", 0.1),
            ],
        );
        let a = group_hamiltonian(&h, GroupingMode::General).unwrap();
        let b = group_hamiltonian(&h, GroupingMode::General).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn validate_rejects_missing_terms() {
        let h = ham(2, vec![term("ZI", 1.0), term("XI", 0.5)]);
        let partial = ham(2, vec![term("ZI", 1.0)]);
        let gh = group_hamiltonian(&partial, GroupingMode::QubitWise).unwrap();
        assert!(!validate_grouping(&gh, &h));
        assert!(validate_grouping(&gh, &partial));
    }

    #[test]
    fn conjugation_signs_multiply_like_the_group() {
        // S maps Y to -X; PhaseDag maps X to -Y.
        let mut s = CliffordCircuit::new(1);
        s.push(CliffordGate::Phase(0));
        assert_eq!(s.conjugate(&ps("Y")), (ps("X"), -1));
        assert_eq!(s.conjugate(&ps("X")), (ps("Y"), 1));
        assert_eq!(s.conjugate(&ps("Z")), (ps("Z"), 1));

        let mut sdg = CliffordCircuit::new(1);
        sdg.push(CliffordGate::PhaseDag(0));
        assert_eq!(sdg.conjugate(&ps("X")), (ps("Y"), -1));
        assert_eq!(sdg.conjugate(&ps("Y")), (ps("X"), 1));
    }

    #[test]
    fn random_commuting_sets_diagonalize() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;

        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.random_range(1..=4usize);
            let mask = (1u64 << n) - 1;
            // Random Z strings conjugated by a random Clifford circuit
            // stay mutually commuting.
            let mut scramble = CliffordCircuit::new(n);
            for _ in 0..rng.random_range(0..12) {
                let q = rng.random_range(0..n);
                let gate = match rng.random_range(0..4) {
                    0 => CliffordGate::Hadamard(q),
                    1 => CliffordGate::Phase(q),
                    2 if n > 1 => {
                        let mut t = rng.random_range(0..n);
                        while t == q {
                            t = rng.random_range(0..n);
                        }
                        CliffordGate::Cnot { control: q, target: t }
                    }
                    _ if n > 1 => {
                        let mut b = rng.random_range(0..n);
                        while b == q {
                            b = rng.random_range(0..n);
                        }
                        CliffordGate::Cz(q, b)
                    }
                    _ => CliffordGate::Hadamard(q),
                };
                scramble.push(gate);
            }
            let terms: Vec<PauliTerm<f64>> = (0..rng.random_range(1..=6))
                .map(|_| {
                    let z = rng.random_range(0..=mask);
                    let (image, sign) =
                        scramble.conjugate(&PauliString::from_masks(n, 0, z));
                    PauliTerm::new(image, if sign < 0 { -1.0 } else { 1.0 })
                })
                .collect();
            for (i, a) in terms.iter().enumerate() {
                for b in &terms[i + 1..] {
                    assert!(a.pauli.commutes(&b.pauli));
                }
            }
            let (_, diag) = diagonalize_group(&terms, n).unwrap();
            assert!(diag.iter().all(|d| d.pauli.is_z_string()));
        }
    }
}
