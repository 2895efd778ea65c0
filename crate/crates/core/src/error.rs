use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("dimension {requested} exceeds the cap of {cap}")]
    Capacity { requested: usize, cap: usize },

    #[error("non-finite value at position {0}")]
    NonFinite(usize),

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error(
        "theta = {theta} gives d = {d:.6e}, but d^2 >= 1 is required; \
         admissible theta (mod pi): |theta| <= pi/6 or |theta - pi/2| <= pi/6"
    )]
    Domain { theta: f64, d: f64 },

    #[error("invalid involution: {0}")]
    InvalidInvolution(String),

    #[error("matrix is not unitary (residual {residual:e})")]
    NotUnitary { residual: f64 },

    #[error("matrix is not Hermitian (residual {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("invalid qubit subset: {0}")]
    InvalidSubset(String),

    #[error("outcome {outcome} on qubit {qubit} has zero probability ({probability:e})")]
    ZeroProbability {
        qubit: usize,
        outcome: u8,
        probability: f64,
    },

    #[error("invalid bit string: {0:?}")]
    InvalidBitString(String),

    #[error("unknown gate {0:?}")]
    UnknownGate(String),

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("generator b{index} is out of range for {strands} strands")]
    IndexOutOfRange { index: usize, strands: usize },

    #[error("zero exponent at position {position}")]
    ZeroExponent { position: usize },

    #[error("incompatible representation: {0}")]
    Incompatible(String),
}
