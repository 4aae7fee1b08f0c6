//! Experiment harness around `seqopt-core`: JSON configs, seeded multi-trial
//! runs on a worker pool, trace CSVs and summaries.

pub mod config;
pub mod error;
pub mod experiment;
pub mod fidelity;
pub mod presets;
pub mod summary;

pub use config::ExperimentConfig;
pub use error::{HarnessError, Result};
pub use experiment::{run_experiment, write_artifacts, ExperimentResult, ExperimentSummary};
pub use fidelity::{gate_fidelity_study, histograms, FidelityRecord, Histogram};
pub use presets::{preset, reference_ground_energy, PRESETS};
pub use summary::{summarize, SummaryRow};
