//! Budgeted cost evaluation.
//!
//! Every call that could run on hardware (one full estimate of `⟨M⟩`) goes
//! through [`CostOracle::evaluate`] and consumes one unit of the
//! [`EvalBudget`]. Instrumentation reads use [`CostOracle::exact_cost`] and are
//! free.

use core::fmt;
use core::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::AnsatzCircuit;
use crate::observable::Observable;
use crate::state::StateVector;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ShotModeRepr", into = "ShotModeRepr")]
pub enum ShotMode {
    Exact,
    /// Binomial sampling with this many shots per Pauli term.
    Shots(u64),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ShotModeRepr {
    Count(u64),
    Word(alloc::string::String),
}

impl TryFrom<ShotModeRepr> for ShotMode {
    type Error = Error;
    fn try_from(r: ShotModeRepr) -> Result<Self> {
        match r {
            ShotModeRepr::Count(0) => Err(Error::Config("shots must be at least 1".into())),
            ShotModeRepr::Count(k) => Ok(ShotMode::Shots(k)),
            ShotModeRepr::Word(w) => w.parse(),
        }
    }
}

impl From<ShotMode> for ShotModeRepr {
    fn from(m: ShotMode) -> Self {
        match m {
            ShotMode::Exact => ShotModeRepr::Word("exact".into()),
            ShotMode::Shots(k) => ShotModeRepr::Count(k),
        }
    }
}

impl FromStr for ShotMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("exact") {
            return Ok(ShotMode::Exact);
        }
        match s.parse::<u64>() {
            Ok(0) | Err(_) => Err(Error::Config(alloc::format!(
                "shots must be 'exact' or a positive integer, got {s:?}"
            ))),
            Ok(k) => Ok(ShotMode::Shots(k)),
        }
    }
}

impl fmt::Display for ShotMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShotMode::Exact => f.write_str("exact"),
            ShotMode::Shots(k) => write!(f, "{k}"),
        }
    }
}

/// Count of circuit evaluations against a hard limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalBudget {
    used: u64,
    limit: u64,
}

impl EvalBudget {
    pub fn new(limit: u64) -> Self {
        EvalBudget { used: 0, limit }
    }

    pub fn unlimited() -> Self {
        EvalBudget::new(u64::MAX)
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn remaining(&self) -> u64 {
        self.limit - self.used
    }

    /// Fails without side effects unless `k` more evaluations fit.
    pub fn ensure(&self, k: u64) -> Result<()> {
        if self.remaining() < k {
            return Err(Error::Budget {
                used: self.used,
                limit: self.limit,
                requested: k,
            });
        }
        Ok(())
    }

    fn consume(&mut self) -> Result<()> {
        self.ensure(1)?;
        self.used += 1;
        Ok(())
    }
}

/// `⟨M⟩` evaluator bound to one observable, one shot model and one budget.
#[derive(Debug, Clone)]
pub struct CostOracle<'a, R> {
    obs: &'a Observable,
    mode: ShotMode,
    budget: EvalBudget,
    rng: R,
}

impl<'a, R: Rng> CostOracle<'a, R> {
    /// `rng` drives shot sampling only.
    pub fn new(obs: &'a Observable, mode: ShotMode, budget: EvalBudget, rng: R) -> Self {
        CostOracle {
            obs,
            mode,
            budget,
            rng,
        }
    }

    pub fn observable(&self) -> &Observable {
        self.obs
    }

    pub fn mode(&self) -> ShotMode {
        self.mode
    }

    pub fn budget(&self) -> &EvalBudget {
        &self.budget
    }

    pub fn ensure(&self, k: u64) -> Result<()> {
        self.budget.ensure(k)
    }

    /// One budgeted estimate of `⟨M⟩` on `state`.
    pub fn evaluate(&mut self, state: &StateVector) -> Result<f64> {
        self.budget.consume()?;
        match self.mode {
            ShotMode::Exact => self.obs.expectation(state),
            ShotMode::Shots(k) => self.obs.estimate_with_shots(state, k, &mut self.rng),
        }
    }

    /// One budgeted estimate of the full circuit's cost.
    pub fn cost(&mut self, circuit: &AnsatzCircuit) -> Result<f64> {
        self.evaluate(&circuit.state())
    }

    /// Exact cost for instrumentation; never touches the budget.
    pub fn exact_cost(&self, circuit: &AnsatzCircuit) -> Result<f64> {
        self.obs.expectation(&circuit.state())
    }
}
