//! Ready-made configurations for the benchmark suite.

use std::path::PathBuf;

use seqopt_core::trial::DEFAULT_BUDGET_SWEEPS;
use seqopt_core::{Algorithm, Problem, ShotMode};

use crate::config::ExperimentConfig;
use crate::error::{HarnessError, Result};

pub const PRESETS: [&str; 8] = [
    "heisenberg1d-5q",
    "heisenberg1d-6q",
    "heisenberg1d-10q",
    "heisenberg2d-2x3",
    "heisenberg2d-3x5",
    "h2",
    "random-4q",
    "random-5q",
];

/// Baselines plus every hybrid setting used in the comparison plots.
pub fn full_algorithm_set() -> Vec<Algorithm> {
    let mut v = vec![
        Algorithm::Adam { lr: 0.1 },
        Algorithm::Rotosolve,
        Algorithm::RotosolveHaar,
        Algorithm::Fraxis,
        Algorithm::Fqs,
    ];
    v.extend([0.2, 0.4, 0.6, 0.8].map(|p| Algorithm::GateHybrid { p }));
    v.extend([2, 3, 4].map(|n| Algorithm::IterHybridFqs { n }));
    v.extend([3, 4, 5].map(|n| Algorithm::IterHybridRotoHaar { n }));
    v
}

pub fn preset(name: &str) -> Result<ExperimentConfig> {
    let (problem, layers, trials, algorithms) = match name {
        "heisenberg1d-5q" => (
            Problem::Heisenberg1d { n: 5 },
            5,
            20,
            vec![
                Algorithm::Rotosolve,
                Algorithm::RotosolveHaar,
                Algorithm::Fraxis,
                Algorithm::Fqs,
                Algorithm::GateHybrid { p: 0.5 },
                Algorithm::IterHybridFqs { n: 2 },
            ],
        ),
        "heisenberg1d-6q" => (Problem::Heisenberg1d { n: 6 }, 10, 20, full_algorithm_set()),
        "heisenberg1d-10q" => (Problem::Heisenberg1d { n: 10 }, 10, 20, full_algorithm_set()),
        "heisenberg2d-2x3" => (Problem::Heisenberg2d { rows: 2, cols: 3 }, 10, 20, full_algorithm_set()),
        "heisenberg2d-3x5" => (Problem::Heisenberg2d { rows: 3, cols: 5 }, 10, 20, full_algorithm_set()),
        "h2" => (Problem::H2, 5, 20, full_algorithm_set()),
        "random-4q" => (Problem::RandomState { n: 4 }, 2, 30, full_algorithm_set()),
        "random-5q" => (Problem::RandomState { n: 5 }, 5, 30, full_algorithm_set()),
        other => return Err(HarnessError::UnknownPreset(other.to_string())),
    };
    Ok(ExperimentConfig {
        problem,
        layers,
        algorithms,
        trials,
        shots: ShotMode::Shots(8192),
        base_seed: 0,
        output: PathBuf::from("out").join(name),
        budget_sweeps: DEFAULT_BUDGET_SWEEPS,
    })
}

/// Ground energies beyond the reach of the in-crate eigensolver.
const TABULATED_GROUND: [(Problem, f64); 1] = [(Problem::Heisenberg2d { rows: 3, cols: 5 }, -34.5505)];

/// Reference ground energy for relative-error reporting: computed exactly up
/// to the solver's size limit, tabulated above it, `None` for the overlap task.
pub fn reference_ground_energy(problem: &Problem) -> Result<Option<f64>> {
    if let Some(&(_, e)) = TABULATED_GROUND.iter().find(|(p, _)| p == problem) {
        return Ok(Some(e));
    }
    match problem {
        Problem::RandomState { .. } => Ok(None),
        p if p.n_qubits() > seqopt_core::MAX_GROUND_QUBITS => Ok(None),
        p => Ok(Some(seqopt_core::exact_ground_energy(&p.observable(0)?)?)),
    }
}
