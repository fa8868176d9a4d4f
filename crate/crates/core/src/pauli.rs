//! Bit-packed Pauli strings, weighted terms and Hamiltonians.
//!
//! A Pauli string on `N` qubits is stored as two `u64` masks following the
//! symplectic convention: bit `i` of `x_bits` (`z_bits`) is set when the
//! factor on qubit `i` contains an X (Z) component. `X = (1,0)`,
//! `Y = (1,1)`, `Z = (0,1)`, `I = (0,0)`. Bit `i` always refers to qubit
//! `i`, and text forms are written with qubit 0 as the first character.
//!
//! Phases are deliberately not part of [`PauliString`]; code that
//! conjugates strings by Clifford gates tracks the resulting sign
//! separately.

use crate::num::Real;
use thiserror::Error;

/// Hard cap imposed by the single-word packing.
pub const MAX_QUBITS: usize = 64;

#[derive(Debug, Error, PartialEq)]
pub enum PauliError {
    #[error("qubit count {requested} out of range (1..={MAX_QUBITS})")]
    QubitCountOutOfRange { requested: usize },
    #[error("pauli text has {got} characters, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid pauli character {ch:?} at position {pos} (expected I, X, Y or Z)")]
    InvalidCharacter { pos: usize, ch: char },
    #[error("invalid bit character {ch:?} at position {pos} (expected 0 or 1)")]
    InvalidBit { pos: usize, ch: char },
    #[error("{pauli} is not a Z string; eigenvalues on bit strings are only defined for diagonal paulis")]
    NotDiagonal { pauli: String },
    #[error("coefficient of {pauli} is not finite")]
    NonFiniteCoefficient { pauli: String },
    #[error("term acts on {got} qubits but the hamiltonian has {expected}")]
    QubitCountMismatch { expected: usize, got: usize },
}

fn check_qubit_count(n: usize) -> Result<(), PauliError> {
    if n == 0 || n > MAX_QUBITS {
        return Err(PauliError::QubitCountOutOfRange { requested: n });
    }
    Ok(())
}

/// Measurement outcome on `n_qubits` qubits, packed into a word.
///
/// Used both as a sampled shot and as the key type for memoized
/// eigenvalues, so it is `Copy`, hashable and cheap to compare.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    n_qubits: u16,
    bits: u64,
}

impl BitString {
    /// Builds from a packed word; bit `i` is the outcome of qubit `i`.
    pub fn new(n_qubits: usize, bits: u64) -> Self {
        check_qubit_count(n_qubits).expect("valid qubit count");
        assert!(
            n_qubits == MAX_QUBITS || bits < (1u64 << n_qubits),
            "bits {bits:#x} out of range for {n_qubits} qubits"
        );
        BitString { n_qubits: n_qubits as u16, bits }
    }

    pub fn zeros(n_qubits: usize) -> Self {
        BitString::new(n_qubits, 0)
    }

    /// Parses text written qubit 0 first, e.g. `"10"` has qubit 0 set.
    pub fn parse(text: &str) -> Result<Self, PauliError> {
        check_qubit_count(text.len())?;
        let mut bits = 0u64;
        for (pos, ch) in text.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << pos,
                _ => return Err(PauliError::InvalidBit { pos, ch }),
            }
        }
        Ok(BitString { n_qubits: text.len() as u16, bits })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits as usize
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn bit(&self, qubit: usize) -> bool {
        assert!(qubit < self.n_qubits());
        self.bits >> qubit & 1 == 1
    }
}

impl std::fmt::Display for BitString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for q in 0..self.n_qubits() {
            f.write_str(if self.bits >> q & 1 == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Tensor product of single-qubit Pauli factors, without a phase.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliString {
    n_qubits: u16,
    x_bits: u64,
    z_bits: u64,
}

impl PauliString {
    pub fn identity(n_qubits: usize) -> Self {
        check_qubit_count(n_qubits).expect("valid qubit count");
        PauliString { n_qubits: n_qubits as u16, x_bits: 0, z_bits: 0 }
    }

    /// Builds from symplectic masks.
    pub fn from_masks(n_qubits: usize, x_bits: u64, z_bits: u64) -> Self {
        check_qubit_count(n_qubits).expect("valid qubit count");
        let live = if n_qubits == MAX_QUBITS { u64::MAX } else { (1u64 << n_qubits) - 1 };
        assert!(
            x_bits & !live == 0 && z_bits & !live == 0,
            "mask bits set beyond qubit {n_qubits}"
        );
        PauliString { n_qubits: n_qubits as u16, x_bits, z_bits }
    }

    /// Parses text such as `"XIZ"`, qubit 0 first, checking the expected
    /// register width.
    pub fn parse(text: &str, n_qubits: usize) -> Result<Self, PauliError> {
        check_qubit_count(n_qubits)?;
        if text.chars().count() != n_qubits {
            return Err(PauliError::LengthMismatch {
                expected: n_qubits,
                got: text.chars().count(),
            });
        }
        let mut x_bits = 0u64;
        let mut z_bits = 0u64;
        for (pos, ch) in text.chars().enumerate() {
            match ch {
                'I' => {}
                'X' => x_bits |= 1 << pos,
                'Y' => {
                    x_bits |= 1 << pos;
                    z_bits |= 1 << pos;
                }
                'Z' => z_bits |= 1 << pos,
                _ => return Err(PauliError::InvalidCharacter { pos, ch }),
            }
        }
        Ok(PauliString { n_qubits: n_qubits as u16, x_bits, z_bits })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits as usize
    }

    pub fn x_bits(&self) -> u64 {
        self.x_bits
    }

    pub fn z_bits(&self) -> u64 {
        self.z_bits
    }

    pub fn is_identity(&self) -> bool {
        self.x_bits == 0 && self.z_bits == 0
    }

    /// Number of non-identity factors.
    pub fn weight(&self) -> u32 {
        (self.x_bits | self.z_bits).count_ones()
    }

    /// True when the two strings commute as operators.
    ///
    /// The symplectic inner product `a.x * b.z + a.z * b.x` has even parity
    /// exactly for commuting pairs.
    pub fn commutes(&self, other: &PauliString) -> bool {
        assert_eq!(self.n_qubits, other.n_qubits, "qubit count mismatch");
        let overlap = (self.x_bits & other.z_bits) ^ (self.z_bits & other.x_bits);
        overlap.count_ones() & 1 == 0
    }

    /// True when every qubit's factors are equal or at least one is the
    /// identity. Implies [`commutes`](Self::commutes).
    pub fn qubit_wise_commutes(&self, other: &PauliString) -> bool {
        assert_eq!(self.n_qubits, other.n_qubits, "qubit count mismatch");
        let both = (self.x_bits | self.z_bits) & (other.x_bits | other.z_bits);
        let differ = (self.x_bits ^ other.x_bits) | (self.z_bits ^ other.z_bits);
        both & differ == 0
    }

    /// True when the string contains only I and Z factors.
    pub fn is_z_string(&self) -> bool {
        self.x_bits == 0
    }

    /// Eigenvalue of a Z string on a computational basis state:
    /// `(-1)^popcount(z_bits & b)`.
    ///
    /// This is the evaluation primitive behind every expectation estimate,
    /// so the happy path is a mask and a popcount.
    pub fn z_string_eigenvalue(&self, b: BitString) -> Result<i32, PauliError> {
        if !self.is_z_string() {
            return Err(PauliError::NotDiagonal { pauli: self.to_string() });
        }
        assert_eq!(self.n_qubits(), b.n_qubits(), "qubit count mismatch");
        Ok(if (self.z_bits & b.bits()).count_ones() & 1 == 0 { 1 } else { -1 })
    }
}

impl std::fmt::Display for PauliString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for q in 0..self.n_qubits() {
            let x = self.x_bits >> q & 1 == 1;
            let z = self.z_bits >> q & 1 == 1;
            f.write_str(match (x, z) {
                (false, false) => "I",
                (true, false) => "X",
                (true, true) => "Y",
                (false, true) => "Z",
            })?;
        }
        Ok(())
    }
}

impl std::fmt::Debug for PauliString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PauliString({self})")
    }
}

/// Pauli string with a real coefficient.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PauliTerm<T> {
    pub pauli: PauliString,
    pub coeff: T,
}

impl<T: Real> PauliTerm<T> {
    pub fn new(pauli: PauliString, coeff: T) -> Self {
        PauliTerm { pauli, coeff }
    }
}

/// Real linear combination of Pauli strings on a fixed register.
///
/// Construction merges duplicate strings by adding their coefficients and
/// drops terms whose merged coefficient is exactly zero, so the term list
/// always holds unique strings with nonzero finite coefficients, in first
/// occurrence order.
#[derive(Clone, Debug, PartialEq)]
pub struct Hamiltonian<T> {
    n_qubits: usize,
    name: String,
    terms: Vec<PauliTerm<T>>,
}

impl<T: Real> Hamiltonian<T> {
    pub fn new(
        n_qubits: usize,
        name: impl Into<String>,
        terms: impl IntoIterator<Item = PauliTerm<T>>,
    ) -> Result<Self, PauliError> {
        check_qubit_count(n_qubits)?;
        let mut merged: indexmap::IndexMap<PauliString, T> = indexmap::IndexMap::new();
        for term in terms {
            if term.pauli.n_qubits() != n_qubits {
                return Err(PauliError::QubitCountMismatch {
                    expected: n_qubits,
                    got: term.pauli.n_qubits(),
                });
            }
            if !term.coeff.is_finite() {
                return Err(PauliError::NonFiniteCoefficient { pauli: term.pauli.to_string() });
            }
            *merged.entry(term.pauli).or_insert_with(T::zero) += term.coeff;
        }
        let terms = merged
            .into_iter()
            .filter(|(_, c)| *c != T::zero())
            .map(|(pauli, coeff)| PauliTerm { pauli, coeff })
            .collect();
        Ok(Hamiltonian { n_qubits, name: name.into(), terms })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn terms(&self) -> &[PauliTerm<T>] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(text: &str) -> PauliString {
        PauliString::parse(text, text.len()).unwrap()
    }

    #[test]
    fn parse_packs_x_and_z_masks() {
        let p = ps("II");
        assert!(p.is_identity());

        let p = ps("XZ");
        assert_eq!(p.x_bits(), 0b01);
        assert_eq!(p.z_bits(), 0b10);

        let p = ps("Y");
        assert_eq!(p.x_bits(), 1);
        assert_eq!(p.z_bits(), 1);
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert_eq!(
            PauliString::parse("XZ", 3),
            Err(PauliError::LengthMismatch { expected: 3, got: 2 })
        );
        assert_eq!(
            PauliString::parse("AB", 2),
            Err(PauliError::InvalidCharacter { pos: 0, ch: 'A' })
        );
        assert!(matches!(
            PauliString::parse("", 0),
            Err(PauliError::QubitCountOutOfRange { .. })
        ));
    }

    #[test]
    fn display_round_trips() {
        for text in ["I", "XYZI", "ZZZZ", "IXIY"] {
            assert_eq!(ps(text).to_string(), text);
        }
    }

    #[test]
    fn text_form_puts_qubit_zero_first() {
        let p = ps("XI");
        assert_eq!(p.x_bits(), 0b01, "first character is qubit 0");
    }

    #[test]
    fn commutation_examples() {
        assert!(!ps("X").commutes(&ps("Z")));
        assert!(ps("XI").commutes(&ps("IZ")));
        assert!(ps("XX").commutes(&ps("ZZ")));
    }

    #[test]
    fn qubit_wise_commutation_examples() {
        assert!(ps("ZI").qubit_wise_commutes(&ps("ZZ")));
        assert!(!ps("X").qubit_wise_commutes(&ps("Z")));
        // Commuting globally but not qubit-wise.
        let a = ps("XX");
        let b = ps("ZZ");
        assert!(!a.qubit_wise_commutes(&b));
        assert!(a.commutes(&b));
    }

    #[test]
    fn z_string_eigenvalue_examples() {
        let zz = ps("ZZ");
        assert_eq!(zz.z_string_eigenvalue(BitString::parse("00").unwrap()), Ok(1));
        assert_eq!(zz.z_string_eigenvalue(BitString::parse("10").unwrap()), Ok(-1));
        assert_eq!(ps("Z").z_string_eigenvalue(BitString::new(1, 1)), Ok(-1));
        assert!(matches!(
            ps("X").z_string_eigenvalue(BitString::new(1, 0)),
            Err(PauliError::NotDiagonal { .. })
        ));
    }

    #[test]
    fn bitstring_text_and_bits_agree() {
        let b = BitString::parse("10").unwrap();
        assert_eq!(b.bits(), 0b01);
        assert!(b.bit(0));
        assert!(!b.bit(1));
        assert_eq!(b.to_string(), "10");
    }

    #[test]
    fn hamiltonian_merges_duplicates_and_drops_zeros() {
        let h = Hamiltonian::new(
            2,
            "merge",
            vec![
                PauliTerm::new(ps("ZI"), 0.5),
                PauliTerm::new(ps("ZI"), 0.25),
                PauliTerm::new(ps("XX"), 1.0),
                PauliTerm::new(ps("XX"), -1.0),
            ],
        )
        .unwrap();
        assert_eq!(h.num_terms(), 1);
        assert_eq!(h.terms()[0].pauli, ps("ZI"));
        assert_eq!(h.terms()[0].coeff, 0.75);
    }

    #[test]
    fn hamiltonian_rejects_bad_terms() {
        assert!(matches!(
            Hamiltonian::new(2, "w", vec![PauliTerm::new(ps("ZZZ"), 1.0)]),
            Err(PauliError::QubitCountMismatch { expected: 2, got: 3 })
        ));
        assert!(matches!(
            Hamiltonian::new(1, "n", vec![PauliTerm::new(ps("Z"), f64::NAN)]),
            Err(PauliError::NonFiniteCoefficient { .. })
        ));
    }

    #[test]
    fn hamiltonian_works_with_f32_coefficients() {
        let h = Hamiltonian::<f32>::new(1, "single", vec![PauliTerm::new(ps("Z"), 0.5f32)])
            .unwrap();
        assert_eq!(h.terms()[0].coeff, 0.5f32);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_pauli(n: usize) -> impl Strategy<Value = PauliString> {
            let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
            (0..=mask, 0..=mask).prop_map(move |(x, z)| PauliString::from_masks(n, x, z))
        }

        proptest! {
            #[test]
            fn commutes_is_symmetric_and_reflexive(
                (a, b) in (1usize..=10).prop_flat_map(|n| (arb_pauli(n), arb_pauli(n)))
            ) {
                prop_assert!(a.commutes(&a));
                prop_assert_eq!(a.commutes(&b), b.commutes(&a));
            }

            #[test]
            fn qubit_wise_commutation_implies_commutation(
                (a, b) in (1usize..=10).prop_flat_map(|n| (arb_pauli(n), arb_pauli(n)))
            ) {
                if a.qubit_wise_commutes(&b) {
                    prop_assert!(a.commutes(&b));
                }
            }

            #[test]
            fn text_round_trip(a in (1usize..=16).prop_flat_map(arb_pauli)) {
                let text = a.to_string();
                prop_assert_eq!(PauliString::parse(&text, a.n_qubits()).unwrap(), a);
            }
        }
    }
}
