//! Sweeps over the slot grid and the hybrid schedules that pick an optimizer
//! per gate or per sweep.

use core::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::AnsatzCircuit;
use crate::gates::GateParam;
use crate::oracle::{CostOracle, EvalBudget};
use crate::{Error, Result};

use super::adam::{adam_step, AdamState, PARAMETER_SHIFT_EVALS};
use super::fqs::{fqs_step, FQS_EVALS};
use super::fraxis::{fraxis_step, FRAXIS_EVALS};
use super::rotosolve::{rotosolve_step, ROTOSOLVE_EVALS};

/// Which single-gate update a slot receives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StepKind {
    /// Angle step on the slot as it is.
    Rotosolve,
    /// Angle step after converting the slot to the conjugated-generator form.
    RotosolveHaar,
    Fraxis,
    Fqs,
    Adam,
}

impl StepKind {
    /// Circuit evaluations one step consumes.
    pub fn evaluations(self) -> u64 {
        match self {
            StepKind::Rotosolve | StepKind::RotosolveHaar => ROTOSOLVE_EVALS,
            StepKind::Fraxis => FRAXIS_EVALS,
            StepKind::Fqs => FQS_EVALS,
            StepKind::Adam => PARAMETER_SHIFT_EVALS,
        }
    }
}

/// Which algorithm runs on every N-th sweep in the iteration-specific hybrid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IterationHybrid {
    /// FQS every N-th sweep, Rotosolve-Haar otherwise.
    FqsEveryN,
    /// Rotosolve-Haar every N-th sweep, FQS otherwise.
    RotoHaarEveryN,
}

/// How a sweep ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepStatus {
    Complete,
    /// The budget could not cover the step for this slot; earlier slots keep
    /// their updates.
    Truncated { slot: usize },
}

impl fmt::Display for SweepStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SweepStatus::Complete => f.write_str("complete"),
            SweepStatus::Truncated { slot } => write!(f, "truncated at slot {slot}"),
        }
    }
}

/// Runs one step of the given kind on slot `d`, converting the slot's
/// representation first where the step needs it.
pub fn gate_step<R: Rng>(
    kind: StepKind,
    circuit: &mut AnsatzCircuit,
    d: usize,
    oracle: &mut CostOracle<'_, R>,
    adam: Option<&mut AdamState>,
) -> Result<()> {
    oracle.ensure(kind.evaluations())?;
    match kind {
        StepKind::Rotosolve => rotosolve_step(circuit, d, oracle).map(|_| ()),
        StepKind::RotosolveHaar => {
            let param = *circuit.slot(d)?;
            if !matches!(param, GateParam::HaarAngle(_)) {
                circuit.set_slot(d, GateParam::HaarAngle(param.to_haar_angle()?))?;
            }
            rotosolve_step(circuit, d, oracle).map(|_| ())
        }
        StepKind::Fraxis => fraxis_step(circuit, d, oracle).map(|_| ()),
        StepKind::Fqs => fqs_step(circuit, d, oracle).map(|_| ()),
        StepKind::Adam => {
            let adam = adam.ok_or_else(|| Error::Config("Adam step without Adam state".into()))?;
            adam_step(circuit, d, adam, oracle).map(|_| ())
        }
    }
}

/// Visits every slot once in layer-major order, top wire first.
///
/// `choose` picks the step for each slot; `observe` sees the circuit and the
/// budget after every completed step. Budget exhaustion ends the sweep with
/// [`SweepStatus::Truncated`]; any other error is returned.
pub fn sweep<R: Rng>(
    circuit: &mut AnsatzCircuit,
    oracle: &mut CostOracle<'_, R>,
    mut adam: Option<&mut AdamState>,
    mut choose: impl FnMut(usize) -> StepKind,
    mut observe: impl FnMut(&AnsatzCircuit, &EvalBudget),
) -> Result<SweepStatus> {
    for d in 0..circuit.n_slots() {
        let kind = choose(d);
        match gate_step(kind, circuit, d, oracle, adam.as_deref_mut()) {
            Ok(()) => observe(circuit, oracle.budget()),
            Err(Error::Budget { .. }) => return Ok(SweepStatus::Truncated { slot: d }),
            Err(e) => return Err(e),
        }
    }
    Ok(SweepStatus::Complete)
}

/// Per-gate coin flip: Rotosolve-Haar with probability `p`, FQS otherwise.
pub fn gate_specific_choice<G: Rng + ?Sized>(p: f64, rng: &mut G) -> StepKind {
    let r: f64 = rng.random();
    if r < p {
        StepKind::RotosolveHaar
    } else {
        StepKind::Fqs
    }
}

/// The algorithm used for the whole of sweep `i` (1-based).
pub fn iteration_specific_choice(which: IterationHybrid, n: u32, i: u64) -> StepKind {
    let every_nth = i % u64::from(n) == 0;
    match (which, every_nth) {
        (IterationHybrid::FqsEveryN, true) | (IterationHybrid::RotoHaarEveryN, false) => StepKind::Fqs,
        (IterationHybrid::FqsEveryN, false) | (IterationHybrid::RotoHaarEveryN, true) => {
            StepKind::RotosolveHaar
        }
    }
}

pub fn gate_specific_sweep<R: Rng, G: Rng + ?Sized>(
    circuit: &mut AnsatzCircuit,
    p: f64,
    rng: &mut G,
    oracle: &mut CostOracle<'_, R>,
    observe: impl FnMut(&AnsatzCircuit, &EvalBudget),
) -> Result<SweepStatus> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Config(alloc::format!("probability {p} outside [0, 1]")));
    }
    sweep(circuit, oracle, None, |_| gate_specific_choice(p, rng), observe)
}

pub fn iteration_specific_sweep<R: Rng>(
    circuit: &mut AnsatzCircuit,
    n: u32,
    i: u64,
    which: IterationHybrid,
    oracle: &mut CostOracle<'_, R>,
    observe: impl FnMut(&AnsatzCircuit, &EvalBudget),
) -> Result<SweepStatus> {
    if n == 0 || i == 0 {
        return Err(Error::Config(alloc::format!(
            "iteration hybrid needs N >= 1 and i >= 1, got N = {n}, i = {i}"
        )));
    }
    let kind = iteration_specific_choice(which, n, i);
    sweep(circuit, oracle, None, |_| kind, observe)
}

pub fn adam_parameter_shift_sweep<R: Rng>(
    circuit: &mut AnsatzCircuit,
    adam: &mut AdamState,
    oracle: &mut CostOracle<'_, R>,
    observe: impl FnMut(&AnsatzCircuit, &EvalBudget),
) -> Result<SweepStatus> {
    sweep(circuit, oracle, Some(adam), |_| StepKind::Adam, observe)
}
