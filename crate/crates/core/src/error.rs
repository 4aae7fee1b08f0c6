use alloc::string::String;

/// Errors raised by the simulator, the gate parameterizations and the optimizers.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("index error: {0}")]
    Index(String),
    #[error("shape mismatch: expected {expected} qubits, got {actual}")]
    Shape { expected: usize, actual: usize },
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("slot {slot} holds a {found} parameter, expected {expected}")]
    Representation {
        slot: usize,
        found: &'static str,
        expected: &'static str,
    },
    #[error("evaluation budget exhausted: {used} of {limit} used, {requested} more requested")]
    Budget {
        used: u64,
        limit: u64,
        requested: u64,
    },
    #[error("capability exceeded: {0}")]
    Capability(String),
}

pub type Result<T> = core::result::Result<T, Error>;
