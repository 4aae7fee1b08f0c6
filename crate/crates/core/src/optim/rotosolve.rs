//! Closed-form single-angle minimization.
//!
//! For a gate `cos(θ/2) I − i sin(θ/2) G` with `G² = I` the cost is exactly
//! `A sin(θ + B) + C`, so three evaluations pin down the whole landscape.

use core::f64::consts::FRAC_PI_2;

#[allow(unused_imports)] // shadowed by std float methods when std is linked
use num_traits::Float;
use rand::Rng;

use crate::circuit::AnsatzCircuit;
use crate::gates::wrap_angle;
use crate::oracle::CostOracle;
use crate::{Error, Result};

/// Evaluations consumed by one angle step.
pub const ROTOSOLVE_EVALS: u64 = 3;

/// `⟨M⟩(θ) = amplitude · sin(θ + phase) + offset`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SinusoidFit {
    pub amplitude: f64,
    pub phase: f64,
    pub offset: f64,
}

impl SinusoidFit {
    pub fn value(&self, theta: f64) -> f64 {
        self.amplitude * (theta + self.phase).sin() + self.offset
    }

    /// Minimizer in `(−π, π]`.
    pub fn argmin(&self) -> f64 {
        wrap_angle(-FRAC_PI_2 - self.phase)
    }

    pub fn min(&self) -> f64 {
        self.offset - self.amplitude
    }
}

/// Fits the sinusoid through `⟨M⟩` sampled at `φ`, `φ + π/2` and `φ − π/2`.
///
/// A flat landscape gives `amplitude = 0` and `phase = −φ` (from `atan2(0, 0) = 0`).
pub fn fit_sinusoid(m_phi: f64, m_plus: f64, m_minus: f64, phi: f64) -> SinusoidFit {
    let y = 2.0 * m_phi - m_plus - m_minus;
    let x = m_plus - m_minus;
    SinusoidFit {
        amplitude: 0.5 * (y * y + x * x).sqrt(),
        phase: y.atan2(x) - phi,
        offset: 0.5 * (m_plus + m_minus),
    }
}

/// Optimizes the angle of slot `d` (fixed or Haar-conjugated generator) in place.
///
/// Returns the fitted landscape; its [`SinusoidFit::min`] is the predicted
/// post-step cost.
pub fn rotosolve_step<R: Rng>(
    circuit: &mut AnsatzCircuit,
    d: usize,
    oracle: &mut CostOracle<'_, R>,
) -> Result<SinusoidFit> {
    let param = *circuit.slot(d)?;
    if param.angle().is_none() {
        return Err(Error::Representation {
            slot: d,
            found: param.kind(),
            expected: "fixed-angle or haar-angle",
        });
    }
    oracle.ensure(ROTOSOLVE_EVALS)?;
    let prefix = circuit.prefix_state(d)?;
    let mut eval = |theta: f64| {
        let gate = param.with_angle(theta).expect("angle variant").matrix();
        oracle.evaluate(&circuit.complete_with(&prefix, d, &gate))
    };
    // φ = 0
    let m0 = eval(0.0)?;
    let m_plus = eval(FRAC_PI_2)?;
    let m_minus = eval(-FRAC_PI_2)?;
    let fit = fit_sinusoid(m0, m_plus, m_minus, 0.0);
    let best = param.with_angle(fit.argmin()).expect("angle variant");
    circuit.set_slot(d, best)?;
    Ok(fit)
}
