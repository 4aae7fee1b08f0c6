//! Lowest eigenvalue of a Pauli-sum Hamiltonian.
//!
//! Lanczos with full reorthogonalization on the matrix-free `H v` product,
//! followed by Sturm-sequence bisection on the tridiagonal projection. For
//! dimensions up to 64 the Krylov space is run to completion, which makes the
//! answer exact up to rounding.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by std float methods when std is linked
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::observable::{Observable, PauliSum};
use crate::{Error, Result};

/// Largest register the ground-energy oracle handles.
pub const MAX_GROUND_QUBITS: usize = 12;

const MAX_KRYLOV: usize = 400;
const STAGNATION_TOL: f64 = 1e-13;
const STAGNATION_RUN: usize = 6;

/// Smallest eigenvalue of `obs`, which must be a Pauli sum on at most 12 qubits.
pub fn exact_ground_energy(obs: &Observable) -> Result<f64> {
    match obs {
        Observable::PauliSum(sum) => ground_energy(sum),
        Observable::Projector { .. } => Err(Error::Capability(
            "ground energy of a projector is -1 by construction; pass a Pauli sum".into(),
        )),
    }
}

pub fn ground_energy(sum: &PauliSum) -> Result<f64> {
    let n = sum.n_qubits();
    if n > MAX_GROUND_QUBITS {
        return Err(Error::Capability(alloc::format!(
            "ground energy oracle is limited to {MAX_GROUND_QUBITS} qubits, got {n}"
        )));
    }
    let dim = 1usize << n;
    let max_k = dim.min(MAX_KRYLOV);

    // fixed-seed start vector: overlaps every symmetry sector almost surely
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_1a2c_705);
    let mut v: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
        .collect();
    normalize(&mut v);

    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(max_k);
    let mut alpha: Vec<f64> = Vec::with_capacity(max_k);
    let mut beta: Vec<f64> = Vec::with_capacity(max_k);
    let mut w = vec![Complex64::new(0.0, 0.0); dim];
    let mut history: Vec<f64> = Vec::new();

    loop {
        sum.apply(&v, &mut w);
        let a = dot(&v, &w).re;
        alpha.push(a);
        basis.push(v.clone());
        // full reorthogonalization, applied twice
        for _ in 0..2 {
            for q in &basis {
                let c = dot(q, &w);
                for (wi, qi) in w.iter_mut().zip(q) {
                    *wi -= c * qi;
                }
            }
        }
        let b = norm(&w);

        let lowest = lowest_tridiagonal(&alpha, &beta);
        history.push(lowest);
        let k = alpha.len();
        if k == max_k || b < 1e-12 {
            return Ok(lowest);
        }
        if k > STAGNATION_RUN && dim > 64 {
            let recent = &history[history.len() - STAGNATION_RUN..];
            let spread = recent.iter().fold(0.0_f64, |m, x| m.max((x - lowest).abs()));
            if spread < STAGNATION_TOL * lowest.abs().max(1.0) {
                return Ok(lowest);
            }
        }
        beta.push(b);
        for (vi, wi) in v.iter_mut().zip(&w) {
            *vi = wi / b;
        }
    }
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

fn normalize(a: &mut [Complex64]) {
    let n = norm(a);
    a.iter_mut().for_each(|x| *x /= n);
}

/// Number of eigenvalues of the symmetric tridiagonal matrix strictly below `x`.
fn sturm_count(alpha: &[f64], beta: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut d = 1.0;
    for i in 0..alpha.len() {
        let off = if i == 0 { 0.0 } else { beta[i - 1] * beta[i - 1] };
        d = alpha[i] - x - if i == 0 { 0.0 } else { off / d };
        if d == 0.0 {
            d = f64::EPSILON * (alpha[i].abs() + x.abs()).max(f64::MIN_POSITIVE);
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

fn lowest_tridiagonal(alpha: &[f64], beta: &[f64]) -> f64 {
    // Gershgorin bounds
    let k = alpha.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..k {
        let left = if i > 0 { beta[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < k { beta[i].abs() } else { 0.0 };
        lo = lo.min(alpha[i] - left - right);
        hi = hi.max(alpha[i] + left + right);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(alpha, beta, mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}
