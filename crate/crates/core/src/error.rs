use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what}: requested {requested}, limit {limit}")]
    Capacity {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("qubit {qubit} out of range for a {num_qubits}-qubit register")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },

    #[error("qubit {0} used more than once in a single gate")]
    OverlappingQubits(usize),

    #[error("{controls}-controlled X needs {needed} scratch qubits, got {available}")]
    InsufficientScratch {
        controls: usize,
        needed: usize,
        available: usize,
    },

    #[error("post-selection has zero norm (probability {probability:e})")]
    ZeroNorm { probability: f64 },

    #[error("duplicate pattern {0}")]
    DuplicatePattern(String),

    #[error("width mismatch: expected {expected} bits, found {found}")]
    WidthMismatch { expected: usize, found: usize },

    #[error("unknown {class} token '{token}'; candidates: {}", candidates.join(", "))]
    UnknownToken {
        class: String,
        token: String,
        candidates: Vec<String>,
    },

    #[error("model format: {0}")]
    Format(String),
}
