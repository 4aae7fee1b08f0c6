//! Multi-trial experiment runner and its on-disk artifacts.

use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use seqopt_core::{run_trial, Algorithm, Problem, TrialTrace};

use crate::config::ExperimentConfig;
use crate::error::{HarnessError, Result};
use crate::presets::reference_ground_energy;
use crate::summary::{mean_curve, mean_std, relative_error, uniform_grid, TraceRow};

pub const CURVE_POINTS: usize = 101;

#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub trial: u64,
    pub trace: TrialTrace,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmSummary {
    pub algorithm: Algorithm,
    pub name: String,
    pub hyperparam: Option<f64>,
    pub trials: usize,
    pub final_mean: f64,
    pub final_std: f64,
    pub relative_error: Option<f64>,
    pub truncated_trials: usize,
    pub grid: Vec<u64>,
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSummary {
    pub problem: Problem,
    /// `energy`, or `trace_distance` for the overlap task.
    pub metric: String,
    pub evaluation_limit: u64,
    pub reference_ground_energy: Option<f64>,
    pub algorithms: Vec<AlgorithmSummary>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    /// Per algorithm, in config order; trials in index order.
    pub outcomes: Vec<(Algorithm, Vec<TrialOutcome>)>,
    pub summary: ExperimentSummary,
}

impl ExperimentResult {
    /// Trace rows with the problem's reported metric in the `cost` column.
    pub fn rows(&self) -> Vec<TraceRow> {
        let problem = self.config.problem;
        let mut rows = Vec::new();
        for (alg, trials) in &self.outcomes {
            for t in trials {
                rows.extend(t.trace.records.iter().map(|r| TraceRow {
                    trial: t.trial,
                    algorithm: alg.name().to_string(),
                    hyperparam: alg.hyperparam(),
                    evals_used: r.evals_used,
                    cost: problem.metric(r.cost),
                }));
            }
        }
        rows
    }
}

/// Runs every (algorithm, trial) pair. Trial `k` uses seed `base_seed + k`
/// for all algorithms, so random-state targets are shared across algorithms
/// within a trial index but differ between trials.
pub fn run_experiment(config: &ExperimentConfig, parallel: usize) -> Result<ExperimentResult> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallel.max(1))
        .build()
        .map_err(|e| HarnessError::config("parallel", e.to_string()))?;

    let jobs: Vec<(usize, u64)> = (0..config.algorithms.len())
        .flat_map(|a| (0..config.trials).map(move |k| (a, k)))
        .collect();
    let traces: Vec<TrialTrace> = pool.install(|| {
        jobs.par_iter()
            .map(|&(a, k)| {
                let seed = config.base_seed + k;
                let obs = config.problem.observable(seed)?;
                Ok(run_trial(&obs, &config.trial_config(config.algorithms[a]), seed)?)
            })
            .collect::<Result<Vec<_>>>()
    })?;

    let mut outcomes: Vec<(Algorithm, Vec<TrialOutcome>)> =
        config.algorithms.iter().map(|&a| (a, Vec::new())).collect();
    for (&(a, k), trace) in jobs.iter().zip(traces) {
        outcomes[a].1.push(TrialOutcome { trial: k, trace });
    }

    let reference = reference_ground_energy(&config.problem)?;
    let limit = config.evaluation_limit();
    let grid = uniform_grid(limit, CURVE_POINTS);
    let algorithms = outcomes
        .iter()
        .map(|(alg, trials)| {
            let curves: Vec<Vec<(u64, f64)>> = trials
                .iter()
                .map(|t| {
                    t.trace
                        .records
                        .iter()
                        .map(|r| (r.evals_used, config.problem.metric(r.cost)))
                        .collect()
                })
                .collect();
            let (mean, std) = mean_curve(&curves, &grid);
            let finals: Vec<f64> = trials.iter().map(|t| config.problem.metric(t.trace.final_cost())).collect();
            let (final_mean, final_std) = mean_std(&finals);
            AlgorithmSummary {
                algorithm: *alg,
                name: alg.name().to_string(),
                hyperparam: alg.hyperparam(),
                trials: trials.len(),
                final_mean,
                final_std,
                relative_error: reference.map(|g| relative_error(final_mean, g)),
                truncated_trials: trials.iter().filter(|t| t.trace.truncated).count(),
                grid: grid.clone(),
                mean,
                std,
            }
        })
        .collect();

    Ok(ExperimentResult {
        config: config.clone(),
        outcomes,
        summary: ExperimentSummary {
            problem: config.problem,
            metric: config.problem.metric_name().to_string(),
            evaluation_limit: limit,
            reference_ground_energy: reference,
            algorithms,
        },
    })
}

/// Writes `traces.csv`, `summary.json` and `config.json` into `dir`.
pub fn write_artifacts(result: &ExperimentResult, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(HarnessError::io(dir))?;

    let csv_path = dir.join("traces.csv");
    let mut w = csv::Writer::from_path(&csv_path).map_err(|e| csv_io(&csv_path, e))?;
    for row in result.rows() {
        w.serialize(row).map_err(|e| csv_io(&csv_path, e))?;
    }
    w.flush().map_err(HarnessError::io(&csv_path))?;

    write_json(&dir.join("summary.json"), &result.summary)?;
    write_json(&dir.join("config.json"), &result.config)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|source| HarnessError::Json {
        path: path.to_path_buf(),
        source,
    })?;
    fs::write(path, text + "\n").map_err(HarnessError::io(path))
}

pub(crate) fn csv_io(path: &Path, e: csv::Error) -> HarnessError {
    let source = match e.into_kind() {
        csv::ErrorKind::Io(io) => io,
        other => std::io::Error::other(format!("{other:?}")),
    };
    HarnessError::Io {
        path: path.to_path_buf(),
        source,
    }
}
