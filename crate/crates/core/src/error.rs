use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),

    #[error("Cayley-Dickson level {level} exceeds the cap of {max}")]
    CayleyDicksonCap { level: u32, max: u32 },

    #[error("Clifford square must be -1, 0 or +1, got {0}")]
    InvalidCliffordSquare(i64),

    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),

    #[error("invalid involution: {0}")]
    InvalidInvolution(String),

    #[error("operands belong to different algebras (`{left}` vs `{right}`)")]
    AlgebraMismatch { left: String, right: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unknown activation `{0}`")]
    UnknownActivation(String),

    #[error("activation `{activation}` cannot act on dimension {dim}")]
    IncompatibleActivation { activation: String, dim: usize },

    #[error("index {index} out of range for {len} neurons")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("state of neuron {neuron} is not in the activation's state set")]
    InvalidState { neuron: usize },

    #[error("transition graph would have {nodes} nodes, cap is {cap}")]
    NodeCapExceeded { nodes: u128, cap: usize },

    #[error("state set of `{0}` is infinite")]
    InfiniteStateSet(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
