//! Gradient baseline: parameter-shift gradients with per-slot Adam updates.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

#[allow(unused_imports)] // shadowed by std float methods when std is linked
use num_traits::Float;
use rand::Rng;

use crate::circuit::AnsatzCircuit;
use crate::oracle::CostOracle;
use crate::{Error, Result};

/// Evaluations consumed by one parameter-shift derivative.
pub const PARAMETER_SHIFT_EVALS: u64 = 2;

/// Adam moments, kept per slot and carried across sweeps.
#[derive(Debug, Clone, PartialEq)]
pub struct AdamState {
    pub learning_rate: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
    m: Vec<f64>,
    v: Vec<f64>,
    t: Vec<i32>,
}

impl AdamState {
    pub fn new(n_slots: usize, learning_rate: f64) -> Self {
        AdamState {
            learning_rate,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
            m: vec![0.0; n_slots],
            v: vec![0.0; n_slots],
            t: vec![0; n_slots],
        }
    }

    /// Bias-corrected Adam increment for slot `d` given its gradient.
    pub fn update(&mut self, d: usize, grad: f64) -> f64 {
        self.t[d] += 1;
        self.m[d] = self.beta1 * self.m[d] + (1.0 - self.beta1) * grad;
        self.v[d] = self.beta2 * self.v[d] + (1.0 - self.beta2) * grad * grad;
        let m_hat = self.m[d] / (1.0 - self.beta1.powi(self.t[d]));
        let v_hat = self.v[d] / (1.0 - self.beta2.powi(self.t[d]));
        -self.learning_rate * m_hat / (v_hat.sqrt() + self.epsilon)
    }
}

/// `(⟨M⟩(θ + π/2) − ⟨M⟩(θ − π/2)) / 2` for an angle slot.
pub fn parameter_shift_gradient<R: Rng>(
    circuit: &AnsatzCircuit,
    d: usize,
    oracle: &mut CostOracle<'_, R>,
) -> Result<f64> {
    let param = *circuit.slot(d)?;
    let theta = param.angle().ok_or(Error::Representation {
        slot: d,
        found: param.kind(),
        expected: "fixed-angle or haar-angle",
    })?;
    oracle.ensure(PARAMETER_SHIFT_EVALS)?;
    let prefix = circuit.prefix_state(d)?;
    let mut eval = |t: f64| {
        let gate = param.with_angle(t).expect("angle variant").matrix();
        oracle.evaluate(&circuit.complete_with(&prefix, d, &gate))
    };
    let plus = eval(theta + FRAC_PI_2)?;
    let minus = eval(theta - FRAC_PI_2)?;
    Ok(0.5 * (plus - minus))
}

/// One gradient evaluation plus one Adam update on slot `d`.
pub fn adam_step<R: Rng>(
    circuit: &mut AnsatzCircuit,
    d: usize,
    adam: &mut AdamState,
    oracle: &mut CostOracle<'_, R>,
) -> Result<f64> {
    let grad = parameter_shift_gradient(circuit, d, oracle)?;
    let param = *circuit.slot(d)?;
    let theta = param.angle().expect("checked by the gradient");
    let next = param.with_angle(theta + adam.update(d, grad)).expect("angle variant");
    circuit.set_slot(d, next)?;
    Ok(grad)
}
