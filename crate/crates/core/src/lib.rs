//! Sequential single-qubit-gate optimization of variational quantum circuits
//! on a dense statevector simulator.
//!
//! The crate is `no_std` with `alloc`. A slot in the ansatz can be an angle
//! about a fixed Pauli generator, an angle about a Haar-conjugated generator,
//! a rotation axis with fixed angle π, or a full SU(2) element written as a
//! unit quaternion. Each has a matching closed-form optimizer in [`optim`],
//! and [`trial`] strings them together under a shared evaluation budget.

#![no_std]

extern crate alloc;

pub mod circuit;
pub mod error;
pub mod gates;
pub mod ground;
pub mod hamiltonians;
pub mod jacobi;
pub mod mat2;
pub mod observable;
pub mod optim;
pub mod oracle;
pub mod state;
pub mod trial;

pub use circuit::{brick_entangler, AnsatzCircuit};
pub use error::{Error, Result};
pub use gates::{
    angle_gate, angles_to_quaternion, axis_from_spherical, decompose_unitary, haar_random_u2, matrix_to_quaternion,
    quaternion_to_matrix, Axis3, GateParam, Generator, HaarAngleGate, Quaternion,
};
pub use ground::{exact_ground_energy, ground_energy, MAX_GROUND_QUBITS};
pub use hamiltonians::{h2_hamiltonian, heisenberg, heisenberg_1d, heisenberg_2d, projector_cost, LatticeGraph};
pub use mat2::Mat2;
pub use num_complex::Complex64;
pub use observable::{Observable, Pauli, PauliSum, PauliTerm};
pub use oracle::{CostOracle, EvalBudget, ShotMode};
pub use state::{StateVector, MAX_QUBITS};
pub use trial::{run_trial, Algorithm, Problem, TraceRecord, TrialConfig, TrialTrace};
