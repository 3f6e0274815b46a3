use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series has zero constant term and is not invertible")]
    ZeroConstantTerm,
    #[error("inner series of a composition (or f of a Riordan pair) must have zero constant term")]
    NonzeroLowTerm,
    #[error("coefficient {requested} requested but series is only known up to degree {available:?}")]
    TruncationExceeded {
        requested: usize,
        available: Option<usize>,
    },
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{name}` at byte {offset} (only `z` and `C` are defined)")]
    ReservedName { name: String, offset: usize },
    #[error("divisor has zero constant term modulo 2")]
    DivisorNotUnit,
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),
    #[error("graph order must be at least 1")]
    EmptyGraph,
    #[error("decomposition requires [z^1]f = 1")]
    DecompositionHypothesisFailed,
    #[error("decomposition block {block} differs between extraction and generating-function formula")]
    FormulaMismatch { block: &'static str },
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("part V_{part} of the log-partition is not an independent set")]
    PartitionNotIndependent { part: usize },
    #[error("order {n} exceeds the exact-search cap {cap}")]
    SizeCapExceeded { n: usize, cap: usize },
    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },
    #[error("vertex subset must be nonempty and proper")]
    EmptyOrFullSubset,
    #[error("edge counts disagree between induced subgraph ({direct}) and generating-function route ({formula}) for {which}")]
    RouteMismatch {
        which: &'static str,
        direct: usize,
        formula: usize,
    },
    #[error("sigma(B) by block count ({direct}) differs from the generating-function sum ({formula})")]
    SigmaMismatch { direct: usize, formula: usize },
    #[error("classification routes disagree on `{label}`")]
    ClassificationMismatch { label: &'static str },
    #[error("test vector is zero")]
    ZeroVector,
    #[error("internal assertion failed: {0}")]
    AssertionFailure(String),
    #[error("matrix dimensions do not match: {0}")]
    Dimension(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("json error: {0}")]
    Json(String),
}

impl Error {
    /// Errors that can only arise from an implementation defect (two independent
    /// computations of the same object disagreeing).
    pub fn is_internal_inconsistency(&self) -> bool {
        matches!(
            self,
            Error::FormulaMismatch { .. }
                | Error::RouteMismatch { .. }
                | Error::SigmaMismatch { .. }
                | Error::ClassificationMismatch { .. }
                | Error::PartitionNotIndependent { .. }
                | Error::AssertionFailure(_)
        )
    }

    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::ReservedName { .. }
                | Error::UnknownFamily(_)
                | Error::EmptyGraph
                | Error::Io(_)
                | Error::Json(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
