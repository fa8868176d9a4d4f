//! Dense complex matrix routines for checking quantum operators the slow way.
//!
//! Everything here works on explicit `2^n x 2^n` matrices, so it is only
//! usable for a handful of qubits. That is the point: these routines are
//! deliberately naive reference implementations, kept free of any bit
//! packing or memoization, so test suites can compare optimized code
//! against them.
//!
//! Basis convention: basis state index `b` assigns bit `i` of `b` to qubit
//! `i`, i.e. qubit 0 is the least significant bit.

use num_complex::Complex64;

pub type C = Complex64;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// Row-major square complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMat {
    pub dim: usize,
    pub a: Vec<C>,
}

impl CMat {
    pub fn zeros(dim: usize) -> Self {
        CMat { dim, a: vec![C::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = CMat::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = c(1.0, 0.0);
        }
        m
    }

    pub fn dagger(&self) -> CMat {
        let mut m = CMat::zeros(self.dim);
        for r in 0..self.dim {
            for col in 0..self.dim {
                m[(col, r)] = self[(r, col)].conj();
            }
        }
        m
    }

    pub fn mul(&self, rhs: &CMat) -> CMat {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut m = CMat::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let v = self[(r, k)];
                if v.norm_sqr() == 0.0 {
                    continue;
                }
                for col in 0..n {
                    m[(r, col)] += v * rhs[(k, col)];
                }
            }
        }
        m
    }

    pub fn add_scaled(&mut self, rhs: &CMat, factor: C) {
        assert_eq!(self.dim, rhs.dim);
        for (x, y) in self.a.iter_mut().zip(rhs.a.iter()) {
            *x += factor * y;
        }
    }

    pub fn matvec(&self, v: &[C]) -> Vec<C> {
        assert_eq!(self.dim, v.len());
        let mut out = vec![c(0.0, 0.0); self.dim];
        for r in 0..self.dim {
            let mut acc = c(0.0, 0.0);
            for col in 0..self.dim {
                acc += self[(r, col)] * v[col];
            }
            out[r] = acc;
        }
        out
    }

    /// Conjugation `U * self * U†`.
    pub fn conjugated_by(&self, u: &CMat) -> CMat {
        u.mul(self).mul(&u.dagger())
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        for r in 0..self.dim {
            for col in 0..self.dim {
                if r != col && self[(r, col)].norm() > tol {
                    return false;
                }
            }
        }
        true
    }

    pub fn diagonal(&self) -> Vec<C> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    pub fn max_abs_diff(&self, rhs: &CMat) -> f64 {
        assert_eq!(self.dim, rhs.dim);
        self.a
            .iter()
            .zip(rhs.a.iter())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }
}

impl std::ops::Index<(usize, usize)> for CMat {
    type Output = C;
    fn index(&self, (r, col): (usize, usize)) -> &C {
        &self.a[r * self.dim + col]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (r, col): (usize, usize)) -> &mut C {
        &mut self.a[r * self.dim + col]
    }
}

pub fn inner(u: &[C], v: &[C]) -> C {
    u.iter().zip(v.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// `<psi| M |psi>`.
pub fn expectation(m: &CMat, psi: &[C]) -> C {
    inner(psi, &m.matvec(psi))
}

fn single_qubit(u: [[C; 2]; 2]) -> CMat {
    let mut m = CMat::zeros(2);
    for r in 0..2 {
        for col in 0..2 {
            m[(r, col)] = u[r][col];
        }
    }
    m
}

pub fn pauli_1q(label: char) -> CMat {
    let zero = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    match label {
        'I' => CMat::identity(2),
        'X' => single_qubit([[zero, one], [one, zero]]),
        'Y' => single_qubit([[zero, c(0.0, -1.0)], [c(0.0, 1.0), zero]]),
        'Z' => single_qubit([[one, zero], [zero, -one]]),
        other => panic!("not a Pauli label: {other}"),
    }
}

/// Embed a single-qubit operator on qubit `q` of an `n`-qubit register.
pub fn embed_1q(u: &CMat, q: usize, n: usize) -> CMat {
    assert_eq!(u.dim, 2);
    assert!(q < n);
    let dim = 1 << n;
    let mask = 1usize << q;
    let mut m = CMat::zeros(dim);
    for col in 0..dim {
        let cb = (col & mask != 0) as usize;
        for rb in 0..2 {
            let v = u[(rb, cb)];
            if v.norm_sqr() == 0.0 {
                continue;
            }
            let row = (col & !mask) | (rb << q);
            m[(row, col)] = v;
        }
    }
    m
}

/// Matrix of a Pauli string written qubit 0 first ("XZ" = X on qubit 0, Z on qubit 1).
pub fn pauli_string_matrix(s: &str, n: usize) -> CMat {
    assert_eq!(s.chars().count(), n);
    let mut m = CMat::identity(1 << n);
    for (q, label) in s.chars().enumerate() {
        if label != 'I' {
            m = embed_1q(&pauli_1q(label), q, n).mul(&m);
        }
    }
    m
}

/// Weighted sum of Pauli string matrices.
pub fn operator_matrix(terms: &[(f64, &str)], n: usize) -> CMat {
    let mut m = CMat::zeros(1 << n);
    for (coeff, s) in terms {
        m.add_scaled(&pauli_string_matrix(s, n), c(*coeff, 0.0));
    }
    m
}

/// Gates understood by the reference circuit builder.
#[derive(Clone, Copy, Debug)]
pub enum RefGate {
    H(usize),
    S(usize),
    Sdg(usize),
    Cnot { control: usize, target: usize },
    Cz(usize, usize),
    Ry(usize, f64),
    Rz(usize, f64),
}

pub fn gate_matrix(gate: RefGate, n: usize) -> CMat {
    let dim = 1 << n;
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    match gate {
        RefGate::H(q) => {
            let u = single_qubit([
                [c(inv_sqrt2, 0.0), c(inv_sqrt2, 0.0)],
                [c(inv_sqrt2, 0.0), c(-inv_sqrt2, 0.0)],
            ]);
            embed_1q(&u, q, n)
        }
        RefGate::S(q) => {
            let u = single_qubit([[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, 1.0)]]);
            embed_1q(&u, q, n)
        }
        RefGate::Sdg(q) => {
            let u = single_qubit([[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, -1.0)]]);
            embed_1q(&u, q, n)
        }
        RefGate::Ry(q, theta) => {
            let (sin, cos) = (theta / 2.0).sin_cos();
            let u = single_qubit([[c(cos, 0.0), c(-sin, 0.0)], [c(sin, 0.0), c(cos, 0.0)]]);
            embed_1q(&u, q, n)
        }
        RefGate::Rz(q, theta) => {
            let half = theta / 2.0;
            let u = single_qubit([
                [c(half.cos(), -half.sin()), c(0.0, 0.0)],
                [c(0.0, 0.0), c(half.cos(), half.sin())],
            ]);
            embed_1q(&u, q, n)
        }
        RefGate::Cnot { control, target } => {
            assert!(control != target && control < n && target < n);
            let mut m = CMat::zeros(dim);
            for col in 0..dim {
                let row = if col & (1 << control) != 0 { col ^ (1 << target) } else { col };
                m[(row, col)] = c(1.0, 0.0);
            }
            m
        }
        RefGate::Cz(a, b) => {
            assert!(a != b && a < n && b < n);
            let mut m = CMat::zeros(dim);
            for col in 0..dim {
                let sign = if col & (1 << a) != 0 && col & (1 << b) != 0 { -1.0 } else { 1.0 };
                m[(col, col)] = c(sign, 0.0);
            }
            m
        }
    }
}

/// Unitary of a gate list applied in order (first gate acts first).
pub fn circuit_matrix(gates: &[RefGate], n: usize) -> CMat {
    let mut m = CMat::identity(1 << n);
    for &g in gates {
        m = gate_matrix(g, n).mul(&m);
    }
    m
}

pub fn apply_circuit(gates: &[RefGate], psi: &[C]) -> Vec<C> {
    let n = psi.len().trailing_zeros() as usize;
    assert_eq!(1 << n, psi.len());
    let mut v = psi.to_vec();
    for &g in gates {
        v = gate_matrix(g, n).matvec(&v);
    }
    v
}
