//! Free-axis selection: the cost of a π-rotation `−i(n·σ)` is the quadratic
//! form `nᵀ R n` of a real symmetric 3×3 matrix, minimized by its lowest
//! eigenvector.

use core::f64::consts::FRAC_1_SQRT_2;

use rand::Rng;

use crate::circuit::AnsatzCircuit;
use crate::gates::{Axis3, GateParam};
use crate::jacobi::lowest_eigenpair_sym;
use crate::oracle::CostOracle;
use crate::{Error, Result};

/// Evaluations consumed by one axis step.
pub const FRAXIS_EVALS: u64 = 6;

/// Probes the cost at the three coordinate axes and the three pairwise
/// bisectors and assembles `R`.
pub fn fraxis_matrix<R: Rng>(
    circuit: &AnsatzCircuit,
    d: usize,
    oracle: &mut CostOracle<'_, R>,
) -> Result<[[f64; 3]; 3]> {
    circuit.slot(d)?;
    oracle.ensure(FRAXIS_EVALS)?;
    let prefix = circuit.prefix_state(d)?;
    let mut eval = |n: [f64; 3]| {
        let gate = GateParam::Axis(Axis3(n)).matrix();
        oracle.evaluate(&circuit.complete_with(&prefix, d, &gate))
    };
    let mut r = [[0.0; 3]; 3];
    for k in 0..3 {
        r[k][k] = eval(Axis3::basis(k).0)?;
    }
    for j in 0..3 {
        for k in (j + 1)..3 {
            let mut n = [0.0; 3];
            n[j] = FRAC_1_SQRT_2;
            n[k] = FRAC_1_SQRT_2;
            let mid = eval(n)?;
            let off = mid - 0.5 * (r[j][j] + r[k][k]);
            r[j][k] = off;
            r[k][j] = off;
        }
    }
    Ok(r)
}

/// Moves the axis of slot `d` to the lowest eigenvector of `R`; returns the
/// predicted post-step cost `λ_min(R)`.
pub fn fraxis_step<R: Rng>(
    circuit: &mut AnsatzCircuit,
    d: usize,
    oracle: &mut CostOracle<'_, R>,
) -> Result<f64> {
    let param = circuit.slot(d)?;
    if !matches!(param, GateParam::Axis(_)) {
        return Err(Error::Representation {
            slot: d,
            found: param.kind(),
            expected: "axis",
        });
    }
    let r = fraxis_matrix(circuit, d, oracle)?;
    let (lambda, n) = lowest_eigenpair_sym(&r)?;
    circuit.set_slot(d, GateParam::Axis(Axis3::normalized(n)?))?;
    Ok(lambda)
}
