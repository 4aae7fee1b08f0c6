//! One seeded optimization run: initialize the ansatz for an algorithm, sweep
//! until the shared evaluation budget runs out, and record the cost after every
//! gate update.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by std float methods when std is linked
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::AnsatzCircuit;
use crate::gates::{haar_random_u2, matrix_to_quaternion, random_angle, Axis3, GateParam, Generator, HaarAngleGate};
use crate::hamiltonians::{h2_hamiltonian, heisenberg_1d, heisenberg_2d, projector_cost};
use crate::observable::Observable;
use crate::optim::adam::AdamState;
use crate::optim::schedule::{gate_specific_choice, iteration_specific_choice, sweep, IterationHybrid, StepKind, SweepStatus};
use crate::oracle::{CostOracle, EvalBudget, ShotMode};
use crate::state::StateVector;
use crate::{Error, Result};

/// Rotosolve sweeps that define the shared evaluation budget.
pub const DEFAULT_BUDGET_SWEEPS: u64 = 50;
pub const DEFAULT_ADAM_LR: f64 = 0.1;

// independent ChaCha streams carved out of one trial seed
const STREAM_INIT: u64 = 0;
const STREAM_SCHEDULE: u64 = 1;
const STREAM_SHOTS: u64 = 2;
const STREAM_TARGET: u64 = 3;

pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Algorithm {
    Adam { lr: f64 },
    Rotosolve,
    RotosolveHaar,
    Fraxis,
    Fqs,
    GateHybrid { p: f64 },
    IterHybridFqs { n: u32 },
    IterHybridRotoHaar { n: u32 },
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Adam { .. } => "adam",
            Algorithm::Rotosolve => "rotosolve",
            Algorithm::RotosolveHaar => "rotosolve_haar",
            Algorithm::Fraxis => "fraxis",
            Algorithm::Fqs => "fqs",
            Algorithm::GateHybrid { .. } => "gate_hybrid",
            Algorithm::IterHybridFqs { .. } => "iter_hybrid_fqs",
            Algorithm::IterHybridRotoHaar { .. } => "iter_hybrid_rotohaar",
        }
    }

    /// `p`, `N` or the learning rate; `None` for the plain algorithms.
    pub fn hyperparam(&self) -> Option<f64> {
        match *self {
            Algorithm::Adam { lr } => Some(lr),
            Algorithm::GateHybrid { p } => Some(p),
            Algorithm::IterHybridFqs { n } | Algorithm::IterHybridRotoHaar { n } => Some(f64::from(n)),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Algorithm::Adam { lr } if !(lr.is_finite() && lr > 0.0) => {
                Err(Error::Config(alloc::format!("learning rate {lr} must be positive")))
            }
            Algorithm::GateHybrid { p } if !(0.0..=1.0).contains(&p) => {
                Err(Error::Config(alloc::format!("probability p = {p} outside [0, 1]")))
            }
            Algorithm::IterHybridFqs { n: 0 } | Algorithm::IterHybridRotoHaar { n: 0 } => {
                Err(Error::Config("N must be at least 1".into()))
            }
            _ => Ok(()),
        }
    }

    /// Expected circuit evaluations per gate under this algorithm's schedule.
    pub fn expected_evals_per_gate(&self) -> f64 {
        match *self {
            Algorithm::Adam { .. } => 2.0,
            Algorithm::Rotosolve | Algorithm::RotosolveHaar => 3.0,
            Algorithm::Fraxis => 6.0,
            Algorithm::Fqs => 10.0,
            Algorithm::GateHybrid { p } => 3.0 * p + 10.0 * (1.0 - p),
            Algorithm::IterHybridFqs { n } => (3.0 * f64::from(n - 1) + 10.0) / f64::from(n),
            Algorithm::IterHybridRotoHaar { n } => (10.0 * f64::from(n - 1) + 3.0) / f64::from(n),
        }
    }

    /// Initial gate for one slot.
    pub fn initial_gate<R: Rng + ?Sized>(&self, rng: &mut R) -> GateParam {
        match self {
            Algorithm::Adam { .. } | Algorithm::Rotosolve => GateParam::FixedAngle {
                theta: random_angle(rng),
                generator: Generator::ALL[rng.random_range(0..3)],
            },
            Algorithm::Fraxis => GateParam::Axis(Axis3::random(rng)),
            Algorithm::Fqs => {
                let u = haar_random_u2(rng);
                // strip the U(1) phase so the quaternion is read off an SU(2) element
                let phase = u.det().sqrt();
                let su = u.scale(Complex64::new(1.0, 0.0) / phase);
                GateParam::Quat(matrix_to_quaternion(&su).expect("Haar sample is unitary"))
            }
            Algorithm::RotosolveHaar
            | Algorithm::GateHybrid { .. }
            | Algorithm::IterHybridFqs { .. }
            | Algorithm::IterHybridRotoHaar { .. } => GateParam::HaarAngle(HaarAngleGate {
                theta: random_angle(rng),
                conjugator: haar_random_u2(rng),
            }),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algorithm::Adam { lr } => write!(f, "adam({lr})"),
            Algorithm::GateHybrid { p } => write!(f, "gate_hybrid({p})"),
            Algorithm::IterHybridFqs { n } => write!(f, "iter_hybrid_fqs({n})"),
            Algorithm::IterHybridRotoHaar { n } => write!(f, "iter_hybrid_rotohaar({n})"),
            other => f.write_str(other.name()),
        }
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    /// Accepts `fqs`, `adam`, `adam(0.05)`, `gate_hybrid(0.4)`, `iter_hybrid_fqs(2)`, ….
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, arg) = match s.split_once('(') {
            Some((name, rest)) => {
                let arg = rest
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Config(alloc::format!("unbalanced parenthesis in {s:?}")))?;
                (name.trim(), Some(arg.trim()))
            }
            None => (s, None),
        };
        let float = |a: Option<&str>| -> Result<f64> {
            a.ok_or_else(|| Error::Config(alloc::format!("{name} needs a parameter")))?
                .parse()
                .map_err(|_| Error::Config(alloc::format!("bad parameter in {s:?}")))
        };
        let int = |a: Option<&str>| -> Result<u32> {
            a.ok_or_else(|| Error::Config(alloc::format!("{name} needs a parameter")))?
                .parse()
                .map_err(|_| Error::Config(alloc::format!("bad parameter in {s:?}")))
        };
        let no_arg = |alg: Algorithm| -> Result<Algorithm> {
            match arg {
                None => Ok(alg),
                Some(_) => Err(Error::Config(alloc::format!("{name} takes no parameter"))),
            }
        };
        let alg = match name {
            "adam" => Algorithm::Adam {
                lr: if arg.is_some() { float(arg)? } else { DEFAULT_ADAM_LR },
            },
            "rotosolve" => no_arg(Algorithm::Rotosolve)?,
            "rotosolve_haar" => no_arg(Algorithm::RotosolveHaar)?,
            "fraxis" => no_arg(Algorithm::Fraxis)?,
            "fqs" => no_arg(Algorithm::Fqs)?,
            "gate_hybrid" => Algorithm::GateHybrid { p: float(arg)? },
            "iter_hybrid_fqs" => Algorithm::IterHybridFqs { n: int(arg)? },
            "iter_hybrid_rotohaar" => Algorithm::IterHybridRotoHaar { n: int(arg)? },
            other => return Err(Error::Config(alloc::format!("unknown algorithm {other:?}"))),
        };
        alg.validate()?;
        Ok(alg)
    }
}

impl TryFrom<String> for Algorithm {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Algorithm> for String {
    fn from(a: Algorithm) -> String {
        a.to_string()
    }
}

/// Benchmark cost functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Problem {
    Heisenberg1d { n: usize },
    Heisenberg2d { rows: usize, cols: usize },
    H2,
    /// Overlap with a Gaussian random target, redrawn for every trial.
    RandomState { n: usize },
}

impl Problem {
    pub fn n_qubits(&self) -> usize {
        match *self {
            Problem::Heisenberg1d { n } | Problem::RandomState { n } => n,
            Problem::Heisenberg2d { rows, cols } => rows * cols,
            Problem::H2 => 4,
        }
    }

    /// Observable for the trial with this seed (J = h = 1 for the spin models).
    pub fn observable(&self, seed: u64) -> Result<Observable> {
        match *self {
            Problem::Heisenberg1d { n } => heisenberg_1d(n, 1.0, 1.0),
            Problem::Heisenberg2d { rows, cols } => heisenberg_2d(rows, cols, 1.0, 1.0),
            Problem::H2 => Ok(h2_hamiltonian()),
            Problem::RandomState { n } => {
                projector_cost(StateVector::random(n, &mut stream_rng(seed, STREAM_TARGET))?)
            }
        }
    }

    /// Reported metric for a cost value: the cost itself, or the trace
    /// distance `√(1 + ⟨M⟩)` for the overlap task.
    pub fn metric(&self, cost: f64) -> f64 {
        match self {
            Problem::RandomState { .. } => (1.0 + cost).max(0.0).sqrt().min(1.0),
            _ => cost,
        }
    }

    pub fn metric_name(&self) -> &'static str {
        match self {
            Problem::RandomState { .. } => "trace_distance",
            _ => "energy",
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Problem::Heisenberg1d { n } => write!(f, "heisenberg1d({n})"),
            Problem::Heisenberg2d { rows, cols } => write!(f, "heisenberg2d({rows}x{cols})"),
            Problem::H2 => f.write_str("h2"),
            Problem::RandomState { n } => write!(f, "random_state({n})"),
        }
    }
}

/// Everything one trial needs besides its seed and observable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialConfig {
    pub algorithm: Algorithm,
    pub n_qubits: usize,
    pub layers: usize,
    pub shots: ShotMode,
    /// Budget = 3 · L · n · `budget_sweeps` circuit evaluations.
    pub budget_sweeps: u64,
}

impl TrialConfig {
    pub fn new(algorithm: Algorithm, n_qubits: usize, layers: usize, shots: ShotMode) -> Self {
        TrialConfig {
            algorithm,
            n_qubits,
            layers,
            shots,
            budget_sweeps: DEFAULT_BUDGET_SWEEPS,
        }
    }

    pub fn evaluation_limit(&self) -> u64 {
        3 * (self.layers * self.n_qubits) as u64 * self.budget_sweeps
    }

    pub fn validate(&self) -> Result<()> {
        self.algorithm.validate()?;
        if self.n_qubits == 0 || self.n_qubits > crate::state::MAX_QUBITS {
            return Err(Error::Config(alloc::format!("{} qubits", self.n_qubits)));
        }
        if self.layers == 0 {
            return Err(Error::Config("layers must be at least 1".into()));
        }
        if self.budget_sweeps == 0 {
            return Err(Error::Config("budget_sweeps must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub evals_used: u64,
    pub cost: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialTrace {
    pub seed: u64,
    pub algorithm: Algorithm,
    /// The first record is the initial circuit at zero evaluations; the rest
    /// follow every completed gate update.
    pub records: Vec<TraceRecord>,
    pub sweeps_completed: u64,
    /// Set when the final sweep stopped part-way because the budget ran out.
    pub truncated: bool,
    pub final_circuit: AnsatzCircuit,
}

impl TrialTrace {
    pub fn final_cost(&self) -> f64 {
        self.records.last().map(|r| r.cost).unwrap_or(f64::NAN)
    }

    pub fn evals_used(&self) -> u64 {
        self.records.last().map(|r| r.evals_used).unwrap_or(0)
    }
}

/// Random initial circuit for `config.algorithm`, drawn from the trial's init stream.
pub fn initial_circuit(config: &TrialConfig, seed: u64) -> Result<AnsatzCircuit> {
    let mut rng = stream_rng(seed, STREAM_INIT);
    AnsatzCircuit::from_fn(config.n_qubits, config.layers, |_| config.algorithm.initial_gate(&mut rng))
}

/// Runs one trial until the evaluation budget is exhausted.
pub fn run_trial(obs: &Observable, config: &TrialConfig, seed: u64) -> Result<TrialTrace> {
    config.validate()?;
    if obs.n_qubits() != config.n_qubits {
        return Err(Error::Shape {
            expected: config.n_qubits,
            actual: obs.n_qubits(),
        });
    }
    let mut circuit = initial_circuit(config, seed)?;
    let mut schedule_rng = stream_rng(seed, STREAM_SCHEDULE);
    let mut oracle = CostOracle::new(
        obs,
        config.shots,
        EvalBudget::new(config.evaluation_limit()),
        stream_rng(seed, STREAM_SHOTS),
    );
    let mut adam = match config.algorithm {
        Algorithm::Adam { lr } => Some(AdamState::new(circuit.n_slots(), lr)),
        _ => None,
    };

    let mut records = Vec::new();
    records.push(TraceRecord {
        evals_used: 0,
        cost: oracle.exact_cost(&circuit)?,
    });
    let mut sweeps_completed = 0;
    let mut truncated = false;
    let mut failure = None;
    let cheapest = min_step_cost(config.algorithm);

    while oracle.budget().remaining() >= cheapest {
        let i = sweeps_completed + 1;
        let alg = config.algorithm;
        let choose = |_d: usize| -> StepKind {
            match alg {
                Algorithm::Adam { .. } => StepKind::Adam,
                Algorithm::Rotosolve => StepKind::Rotosolve,
                Algorithm::RotosolveHaar => StepKind::RotosolveHaar,
                Algorithm::Fraxis => StepKind::Fraxis,
                Algorithm::Fqs => StepKind::Fqs,
                Algorithm::GateHybrid { p } => gate_specific_choice(p, &mut schedule_rng),
                Algorithm::IterHybridFqs { n } => iteration_specific_choice(IterationHybrid::FqsEveryN, n, i),
                Algorithm::IterHybridRotoHaar { n } => {
                    iteration_specific_choice(IterationHybrid::RotoHaarEveryN, n, i)
                }
            }
        };
        let observe = |c: &AnsatzCircuit, b: &EvalBudget| match obs.expectation(&c.state()) {
            Ok(cost) => records.push(TraceRecord {
                evals_used: b.used(),
                cost,
            }),
            Err(e) => failure = Some(e),
        };
        let status = sweep(&mut circuit, &mut oracle, adam.as_mut(), choose, observe)?;
        if let Some(e) = failure.take() {
            return Err(e);
        }
        match status {
            SweepStatus::Complete => sweeps_completed += 1,
            SweepStatus::Truncated { .. } => {
                truncated = true;
                break;
            }
        }
    }

    Ok(TrialTrace {
        seed,
        algorithm: config.algorithm,
        records,
        sweeps_completed,
        truncated,
        final_circuit: circuit,
    })
}

fn min_step_cost(alg: Algorithm) -> u64 {
    match alg {
        Algorithm::Adam { .. } => StepKind::Adam.evaluations(),
        Algorithm::Fraxis => StepKind::Fraxis.evaluations(),
        Algorithm::Fqs => StepKind::Fqs.evaluations(),
        Algorithm::GateHybrid { p } if p == 0.0 => StepKind::Fqs.evaluations(),
        _ => StepKind::Rotosolve.evaluations(),
    }
}
