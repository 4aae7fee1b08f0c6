//! Single-gate optimizers and the sweep schedules built on them.

pub mod adam;
pub mod fqs;
pub mod fraxis;
pub mod rotosolve;
pub mod schedule;

pub use adam::{adam_step, parameter_shift_gradient, AdamState, PARAMETER_SHIFT_EVALS};
pub use fqs::{fqs_build_s_matrix, fqs_step, SMatrix, FQS_EVALS};
pub use fraxis::{fraxis_matrix, fraxis_step, FRAXIS_EVALS};
pub use rotosolve::{fit_sinusoid, rotosolve_step, SinusoidFit, ROTOSOLVE_EVALS};
pub use schedule::{
    adam_parameter_shift_sweep, gate_specific_choice, gate_specific_sweep, gate_step, iteration_specific_choice,
    iteration_specific_sweep, sweep, IterationHybrid, StepKind, SweepStatus,
};
