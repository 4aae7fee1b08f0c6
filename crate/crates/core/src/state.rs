//! Pure-state simulation of `n` qubits.
//!
//! Qubit 0 is the top wire of the circuit and maps to the most significant bit
//! of the basis index, so qubit `k` of an `n`-qubit register is bit `n - 1 - k`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by std float methods when std is linked
use num_traits::Float;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::mat2::Mat2;
use crate::{Error, Result};

/// Largest register the simulator accepts.
pub const MAX_QUBITS: usize = 20;

const UNITARY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0⟩` on `n` qubits.
    pub fn zero_state(n: usize) -> Result<Self> {
        check_width(n)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Ok(StateVector {
            n_qubits: n,
            amplitudes,
        })
    }

    /// Builds a state from raw amplitudes, normalizing them.
    pub fn from_amplitudes(mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::Config(alloc::format!(
                "amplitude count {len} is not a power of two >= 2"
            )));
        }
        let n = len.trailing_zeros() as usize;
        check_width(n)?;
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::Invariant("state has zero or non-finite norm".into()));
        }
        for a in amplitudes.iter_mut() {
            *a /= norm;
        }
        Ok(StateVector {
            n_qubits: n,
            amplitudes,
        })
    }

    /// Gaussian random state: real and imaginary parts of every entry drawn from
    /// N(0, 1), then normalized.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        check_width(n)?;
        let amplitudes = (0..1usize << n)
            .map(|_| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                Complex64::new(re, im)
            })
            .collect();
        StateVector::from_amplitudes(amplitudes)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    fn bit_of(&self, qubit: usize) -> usize {
        self.n_qubits - 1 - qubit
    }

    fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit >= self.n_qubits {
            return Err(Error::Index(alloc::format!(
                "qubit {qubit} out of range for {} qubits",
                self.n_qubits
            )));
        }
        Ok(())
    }

    /// Applies a single-qubit unitary in place, pairwise over the amplitudes the
    /// target bit distinguishes.
    pub fn apply_single_qubit(&mut self, gate: &Mat2, qubit: usize) -> Result<()> {
        self.check_qubit(qubit)?;
        gate.ensure_unitary(UNITARY_TOL)?;
        self.apply_single_qubit_unchecked(gate, qubit);
        Ok(())
    }

    pub(crate) fn apply_single_qubit_unchecked(&mut self, gate: &Mat2, qubit: usize) {
        let stride = 1usize << self.bit_of(qubit);
        let [[a, b], [c, d]] = gate.m;
        let dim = self.amplitudes.len();
        let mut base = 0;
        while base < dim {
            for lo in base..base + stride {
                let hi = lo + stride;
                let x0 = self.amplitudes[lo];
                let x1 = self.amplitudes[hi];
                self.amplitudes[lo] = a * x0 + b * x1;
                self.amplitudes[hi] = c * x0 + d * x1;
            }
            base += 2 * stride;
        }
    }

    /// Controlled-Z: negates every amplitude whose two bits are both set.
    pub fn apply_cz(&mut self, control: usize, target: usize) -> Result<()> {
        self.check_qubit(control)?;
        self.check_qubit(target)?;
        if control == target {
            return Err(Error::Index(alloc::format!(
                "controlled-Z needs distinct qubits, got {control} twice"
            )));
        }
        self.apply_cz_unchecked(control, target);
        Ok(())
    }

    pub(crate) fn apply_cz_unchecked(&mut self, control: usize, target: usize) {
        let mask = (1usize << self.bit_of(control)) | (1usize << self.bit_of(target));
        for (idx, amp) in self.amplitudes.iter_mut().enumerate() {
            if idx & mask == mask {
                *amp = -*amp;
            }
        }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::Shape {
                expected: self.n_qubits,
                actual: other.n_qubits,
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|⟨a|b⟩|²`, clamped to `[0, 1]`.
    pub fn fidelity(&self, other: &StateVector) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr().clamp(0.0, 1.0))
    }

    /// `√(1 − F)` for pure states.
    pub fn trace_distance(&self, other: &StateVector) -> Result<f64> {
        let f = self.fidelity(other)?;
        Ok((1.0 - f).max(0.0).sqrt().clamp(0.0, 1.0))
    }
}

fn check_width(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::Config(alloc::format!(
            "qubit count {n} outside 1..={MAX_QUBITS}"
        )));
    }
    Ok(())
}
