//! Free quaternion selection: the cost as a function of the gate's unit
//! quaternion is `qᵀ S q` for a real symmetric 4×4 matrix `S`.

use core::f64::consts::FRAC_1_SQRT_2;

use rand::Rng;

use crate::circuit::AnsatzCircuit;
use crate::gates::{quaternion_matrix_unchecked, GateParam, Quaternion};
use crate::jacobi::lowest_eigenpair_sym;
use crate::oracle::CostOracle;
use crate::Result;

/// Evaluations consumed by one quaternion step.
pub const FQS_EVALS: u64 = 10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SMatrix(pub [[f64; 4]; 4]);

impl SMatrix {
    pub fn quadratic_form(&self, q: &Quaternion) -> f64 {
        let mut acc = 0.0;
        for r in 0..4 {
            for c in 0..4 {
                acc += q.0[r] * self.0[r][c] * q.0[c];
            }
        }
        acc
    }

    /// `(λ_min, unit eigenvector)`.
    pub fn lowest_eigenpair(&self) -> Result<(f64, Quaternion)> {
        let (lambda, v) = lowest_eigenpair_sym(&self.0)?;
        Ok((lambda, Quaternion::normalized(v)?))
    }
}

/// Builds `S` from the four basis quaternions (diagonal) and the six
/// normalized pairwise sums (off-diagonal). Fails before evaluating anything
/// if fewer than ten evaluations remain.
pub fn fqs_build_s_matrix<R: Rng>(
    circuit: &AnsatzCircuit,
    d: usize,
    oracle: &mut CostOracle<'_, R>,
) -> Result<SMatrix> {
    circuit.slot(d)?;
    oracle.ensure(FQS_EVALS)?;
    let prefix = circuit.prefix_state(d)?;
    let mut eval = |q: [f64; 4]| {
        let gate = quaternion_matrix_unchecked(&Quaternion(q));
        oracle.evaluate(&circuit.complete_with(&prefix, d, &gate))
    };
    let mut s = [[0.0; 4]; 4];
    for mu in 0..4 {
        s[mu][mu] = eval(Quaternion::basis(mu).0)?;
    }
    for mu in 0..4 {
        for nu in (mu + 1)..4 {
            let mut q = [0.0; 4];
            q[mu] = FRAC_1_SQRT_2;
            q[nu] = FRAC_1_SQRT_2;
            let mid = eval(q)?;
            let off = mid - 0.5 * (s[mu][mu] + s[nu][nu]);
            s[mu][nu] = off;
            s[nu][mu] = off;
        }
    }
    Ok(SMatrix(s))
}

/// Replaces slot `d` (whatever its form) by the quaternion minimizing
/// `qᵀ S q`; returns `λ_min(S)`.
pub fn fqs_step<R: Rng>(
    circuit: &mut AnsatzCircuit,
    d: usize,
    oracle: &mut CostOracle<'_, R>,
) -> Result<f64> {
    let s = fqs_build_s_matrix(circuit, d, oracle)?;
    let (lambda, q) = s.lowest_eigenpair()?;
    circuit.set_slot(d, GateParam::Quat(q))?;
    Ok(lambda)
}
