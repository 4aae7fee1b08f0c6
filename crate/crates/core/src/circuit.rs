//! Layered hardware-efficient ansatz: one single-qubit slot per wire, followed
//! by a brick of controlled-Z gates, repeated `L` times.

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::gates::GateParam;
use crate::mat2::Mat2;
use crate::state::StateVector;
use crate::{Error, Result};

/// Controlled-Z brick: `(0,1), (2,3), …` then `(1,2), (3,4), …`.
pub fn brick_entangler(n_qubits: usize) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = (0..n_qubits.saturating_sub(1))
        .step_by(2)
        .map(|q| (q, q + 1))
        .collect();
    pairs.extend((1..n_qubits.saturating_sub(1)).step_by(2).map(|q| (q, q + 1)));
    pairs
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnsatzCircuit {
    n_qubits: usize,
    layers: usize,
    /// Layer-major: slot `l * n + q` acts on qubit `q` in layer `l`.
    slots: Vec<GateParam>,
    entangler: Vec<(usize, usize)>,
}

impl AnsatzCircuit {
    pub fn new(n_qubits: usize, layers: usize, slots: Vec<GateParam>) -> Result<Self> {
        if n_qubits == 0 || n_qubits > crate::state::MAX_QUBITS {
            return Err(Error::Config(alloc::format!("{n_qubits} qubits")));
        }
        if layers == 0 {
            return Err(Error::Config("ansatz needs at least one layer".into()));
        }
        if slots.len() != n_qubits * layers {
            return Err(Error::Config(alloc::format!(
                "{} slots for a {layers}x{n_qubits} grid",
                slots.len()
            )));
        }
        for s in &slots {
            s.validate()?;
        }
        Ok(AnsatzCircuit {
            n_qubits,
            layers,
            slots,
            entangler: brick_entangler(n_qubits),
        })
    }

    /// Builds the slot grid from a per-slot initializer.
    pub fn from_fn(n_qubits: usize, layers: usize, mut init: impl FnMut(usize) -> GateParam) -> Result<Self> {
        let slots = (0..n_qubits * layers).map(&mut init).collect();
        AnsatzCircuit::new(n_qubits, layers, slots)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn layers(&self) -> usize {
        self.layers
    }

    pub fn n_slots(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[GateParam] {
        &self.slots
    }

    pub fn slot(&self, d: usize) -> Result<&GateParam> {
        self.slots
            .get(d)
            .ok_or_else(|| Error::Index(alloc::format!("slot {d} of {}", self.slots.len())))
    }

    pub fn entangler(&self) -> &[(usize, usize)] {
        &self.entangler
    }

    pub fn set_slot(&mut self, d: usize, p: GateParam) -> Result<()> {
        p.validate()?;
        let n = self.slots.len();
        let slot = self
            .slots
            .get_mut(d)
            .ok_or_else(|| Error::Index(alloc::format!("slot {d} of {n}")))?;
        *slot = p;
        Ok(())
    }

    /// Output state `U(θ)|0…0⟩`.
    pub fn state(&self) -> StateVector {
        let mut s = StateVector::zero_state(self.n_qubits).expect("width validated at construction");
        self.run(&mut s, 0, self.slots.len(), None);
        s
    }

    /// State just before slot `d` acts.
    pub fn prefix_state(&self, d: usize) -> Result<StateVector> {
        self.slot(d)?;
        let mut s = StateVector::zero_state(self.n_qubits).expect("width validated at construction");
        self.run(&mut s, 0, d, None);
        Ok(s)
    }

    /// Finishes the circuit from `prefix` (as returned by [`prefix_state`]) with
    /// slot `d` replaced by `gate`.
    ///
    /// [`prefix_state`]: AnsatzCircuit::prefix_state
    pub fn complete_with(&self, prefix: &StateVector, d: usize, gate: &Mat2) -> StateVector {
        let mut s = prefix.clone();
        self.run(&mut s, d, self.slots.len(), Some((d, gate)));
        s
    }

    /// Applies slots `from..to` in order, inserting the entangler after the last
    /// slot of each layer.
    fn run(&self, s: &mut StateVector, from: usize, to: usize, replace: Option<(usize, &Mat2)>) {
        for d in from..to {
            let q = d % self.n_qubits;
            match replace {
                Some((r, gate)) if r == d => s.apply_single_qubit_unchecked(gate, q),
                _ => s.apply_single_qubit_unchecked(&self.slots[d].matrix(), q),
            }
            if q == self.n_qubits - 1 {
                for &(a, b) in &self.entangler {
                    s.apply_cz_unchecked(a, b);
                }
            }
        }
    }
}
