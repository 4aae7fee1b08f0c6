//! Dense reference implementations built from Kronecker products. Slow and
//! obvious on purpose; they share no code with the library's bit-twiddling
//! kernels.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use seqopt_core::{AnsatzCircuit, Mat2, Observable, Pauli, PauliSum, StateVector};

pub type C = Complex64;

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn dense2(m: &Mat2) -> DMatrix<C> {
    DMatrix::from_fn(2, 2, |r, k| m.m[r][k])
}

pub fn pauli_dense(p: Pauli) -> DMatrix<C> {
    let z = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    match p {
        Pauli::I => DMatrix::from_row_slice(2, 2, &[one, z, z, one]),
        Pauli::X => DMatrix::from_row_slice(2, 2, &[z, one, one, z]),
        Pauli::Y => DMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
        Pauli::Z => DMatrix::from_row_slice(2, 2, &[one, z, z, -one]),
    }
}

/// Qubit 0 is the leftmost tensor factor.
pub fn kron_all(factors: &[DMatrix<C>]) -> DMatrix<C> {
    let mut acc = DMatrix::from_element(1, 1, c(1.0, 0.0));
    for f in factors {
        acc = acc.kronecker(f);
    }
    acc
}

pub fn embed_single(m: &Mat2, qubit: usize, n: usize) -> DMatrix<C> {
    let factors: Vec<_> = (0..n)
        .map(|q| if q == qubit { dense2(m) } else { pauli_dense(Pauli::I) })
        .collect();
    kron_all(&factors)
}

pub fn cz_dense(a: usize, b: usize, n: usize) -> DMatrix<C> {
    let dim = 1 << n;
    DMatrix::from_fn(dim, dim, |r, k| {
        if r != k {
            return c(0.0, 0.0);
        }
        let bit = |q: usize| (r >> (n - 1 - q)) & 1;
        if bit(a) == 1 && bit(b) == 1 {
            c(-1.0, 0.0)
        } else {
            c(1.0, 0.0)
        }
    })
}

pub fn sum_dense(sum: &PauliSum) -> DMatrix<C> {
    let n = sum.n_qubits();
    let mut h = DMatrix::zeros(1 << n, 1 << n);
    for t in sum.terms() {
        let factors: Vec<_> = t.letters().iter().map(|&p| pauli_dense(p)).collect();
        h += kron_all(&factors) * c(t.coefficient(), 0.0);
    }
    h
}

pub fn observable_dense(obs: &Observable) -> DMatrix<C> {
    match obs {
        Observable::PauliSum(s) => sum_dense(s),
        Observable::Projector { target } => {
            let v = to_dvec(target);
            -(&v * v.adjoint())
        }
    }
}

pub fn to_dvec(s: &StateVector) -> DVector<C> {
    DVector::from_column_slice(s.amplitudes())
}

pub fn expectation_dense(h: &DMatrix<C>, v: &DVector<C>) -> f64 {
    (v.adjoint() * h * v)[(0, 0)].re
}

/// Full circuit unitary applied to |0…0⟩, gate by gate as dense matrices.
pub fn circuit_state_dense(circ: &AnsatzCircuit) -> DVector<C> {
    let n = circ.n_qubits();
    let mut v = DVector::zeros(1 << n);
    v[0] = c(1.0, 0.0);
    for (d, g) in circ.slots().iter().enumerate() {
        let q = d % n;
        v = embed_single(&g.matrix(), q, n) * v;
        if q == n - 1 {
            for &(a, b) in circ.entangler() {
                v = cz_dense(a, b, n) * v;
            }
        }
    }
    v
}

/// Smallest eigenvalue of a Hermitian matrix via nalgebra.
pub fn dense_ground(h: &DMatrix<C>) -> f64 {
    h.clone().symmetric_eigen().eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min)
}

pub fn random_pauli_sum<R: Rng>(n: usize, terms: usize, rng: &mut R) -> PauliSum {
    let letters = ['I', 'X', 'Y', 'Z'];
    let mut s = String::new();
    for k in 0..terms {
        let word: String = (0..n).map(|_| letters[rng.random_range(0..4)]).collect();
        let coeff: f64 = rng.random_range(-1.0..1.0);
        if k > 0 {
            s.push_str(" + ");
        }
        s.push_str(&format!("{coeff}*{word}"));
    }
    s.parse().unwrap()
}

pub fn max_diff(a: &DVector<C>, b: &[C]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
