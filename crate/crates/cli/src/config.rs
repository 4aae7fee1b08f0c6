use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use seqopt_core::trial::DEFAULT_BUDGET_SWEEPS;
use seqopt_core::{Algorithm, Problem, ShotMode, TrialConfig};

use crate::error::{HarnessError, Result};

/// One experiment: every listed algorithm runs `trials` seeded trials on the
/// same problem under the same evaluation limit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub problem: Problem,
    pub layers: usize,
    /// A single `"algorithm"` entry is accepted as a one-element list.
    #[serde(alias = "algorithm", deserialize_with = "one_or_many")]
    pub algorithms: Vec<Algorithm>,
    pub trials: u64,
    pub shots: ShotMode,
    #[serde(default)]
    pub base_seed: u64,
    #[serde(default = "default_output")]
    pub output: PathBuf,
    #[serde(default = "default_budget_sweeps")]
    pub budget_sweeps: u64,
}

fn one_or_many<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Vec<Algorithm>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum OneOrMany {
        One(Algorithm),
        Many(Vec<Algorithm>),
    }
    Ok(match OneOrMany::deserialize(d)? {
        OneOrMany::One(a) => vec![a],
        OneOrMany::Many(v) => v,
    })
}

fn default_output() -> PathBuf {
    PathBuf::from("out")
}

fn default_budget_sweeps() -> u64 {
    DEFAULT_BUDGET_SWEEPS
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(HarnessError::io(path))?;
        let cfg: ExperimentConfig = serde_json::from_str(&text).map_err(|source| HarnessError::Json {
            path: path.to_path_buf(),
            source,
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.problem.n_qubits();
        if n == 0 || n > seqopt_core::MAX_QUBITS {
            return Err(HarnessError::config("problem", format!("{n} qubits")));
        }
        if self.layers == 0 {
            return Err(HarnessError::config("layers", "must be at least 1"));
        }
        if self.trials == 0 {
            return Err(HarnessError::config("trials", "must be at least 1"));
        }
        if self.budget_sweeps == 0 {
            return Err(HarnessError::config("budget_sweeps", "must be at least 1"));
        }
        if self.algorithms.is_empty() {
            return Err(HarnessError::config("algorithms", "list is empty"));
        }
        for a in &self.algorithms {
            a.validate()
                .map_err(|e| HarnessError::config("algorithms", format!("{a}: {e}")))?;
        }
        if self.base_seed.checked_add(self.trials - 1).is_none() {
            return Err(HarnessError::config("base_seed", "base_seed + trials overflows u64"));
        }
        Ok(())
    }

    pub fn trial_config(&self, algorithm: Algorithm) -> TrialConfig {
        TrialConfig {
            algorithm,
            n_qubits: self.problem.n_qubits(),
            layers: self.layers,
            shots: self.shots,
            budget_sweeps: self.budget_sweeps,
        }
    }

    /// Shared evaluation limit, `3 · L · n · budget_sweeps`.
    pub fn evaluation_limit(&self) -> u64 {
        3 * (self.layers * self.problem.n_qubits()) as u64 * self.budget_sweeps
    }
}
