//! Plain-text Hamiltonian files.
//!
//! ```text
//! # comment, blank lines ignored
//! name h2-sto3g
//! qubits 4
//! term -9.7066268167628450e-2 IIII
//! term 1.7141282644776884e-1 ZIII
//! ```
//!
//! `qubits` must precede any `term`; `name` is optional and defaults to
//! "unnamed". Duplicate Pauli strings merge by coefficient addition on
//! parse and exact-zero results are dropped, so parsing is idempotent.
//! [`write_hamiltonian`] serializes coefficients with 17 significant
//! digits, which round-trips every finite double exactly.

use memvqe::pauli::PauliError;
use memvqe::{Hamiltonian, PauliString, PauliTerm};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: unknown directive {word:?}")]
    UnknownDirective { line: usize, word: String },
    #[error("line {line}: malformed {what}")]
    Malformed { line: usize, what: &'static str },
    #[error("line {line}: bad coefficient {text:?}")]
    BadCoefficient { line: usize, text: String },
    #[error("line {line}: {source}")]
    BadPauli { line: usize, source: PauliError },
    #[error("line {line}: duplicate {directive} directive")]
    Duplicate { line: usize, directive: &'static str },
    #[error("line {line}: term before qubits directive")]
    TermBeforeQubits { line: usize },
    #[error("missing qubits directive")]
    MissingQubits,
    #[error(transparent)]
    Invalid(#[from] PauliError),
}

pub fn parse_hamiltonian(text: &str) -> Result<Hamiltonian, FormatError> {
    use FormatError::*;
    let mut name: Option<String> = None;
    let mut qubits: Option<usize> = None;
    let mut terms: Vec<PauliTerm> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut parts = trimmed.split_whitespace();
        let directive = parts.next().expect("line is non-empty");
        match directive {
            "name" => {
                if name.is_some() {
                    return Err(Duplicate { line, directive: "name" });
                }
                let value = parts.collect::<Vec<_>>().join(" ");
                if value.is_empty() {
                    return Err(Malformed { line, what: "name directive" });
                }
                name = Some(value);
            }
            "qubits" => {
                if qubits.is_some() {
                    return Err(Duplicate { line, directive: "qubits" });
                }
                let value = parts.next().ok_or(Malformed { line, what: "qubits directive" })?;
                if parts.next().is_some() {
                    return Err(Malformed { line, what: "qubits directive" });
                }
                qubits = Some(value.parse().map_err(|_| Malformed { line, what: "qubit count" })?);
            }
            "term" => {
                let n = qubits.ok_or(TermBeforeQubits { line })?;
                let coeff_text = parts.next().ok_or(Malformed { line, what: "term directive" })?;
                let pauli_text = parts.next().ok_or(Malformed { line, what: "term directive" })?;
                if parts.next().is_some() {
                    return Err(Malformed { line, what: "term directive" });
                }
                let coeff: f64 = coeff_text
                    .parse()
                    .map_err(|_| BadCoefficient { line, text: coeff_text.to_string() })?;
                let pauli =
                    PauliString::parse(pauli_text, n).map_err(|source| BadPauli { line, source })?;
                terms.push(PauliTerm::new(pauli, coeff));
            }
            other => return Err(UnknownDirective { line, word: other.to_string() }),
        }
    }
    let n = qubits.ok_or(MissingQubits)?;
    Ok(Hamiltonian::new(n, name.as_deref().unwrap_or("unnamed"), terms)?)
}

pub fn write_hamiltonian(h: &Hamiltonian) -> String {
    let mut out = String::new();
    writeln!(out, "name {}", h.name()).unwrap();
    writeln!(out, "qubits {}", h.n_qubits()).unwrap();
    for t in h.terms() {
        writeln!(out, "term {:.16e} {}", t.coeff, t.pauli).unwrap();
    }
    out
}
