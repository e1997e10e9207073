use thiserror::Error;

/// Errors raised by path synthesis, hull construction and the solvers built on them.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid process spec: {0}")]
    InvalidSpec(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("contract violation: {0}")]
    ContractViolation(String),
    #[error("time {time} is outside the horizon [{t0}, {t1}]")]
    OutOfHorizon { time: f64, t0: f64, t1: f64 },
    #[error("simulation failed at node {node}: {reason}")]
    SimulationFailure { node: usize, reason: String },
    #[error("undefined distance: {0}")]
    UndefinedDistance(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("stale event: {0}")]
    StaleEvent(String),
    #[error("unknown experiment id: {0}")]
    UnknownExperiment(String),
    #[error("malformed config: {0}")]
    MalformedConfig(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::MalformedConfig(e.to_string())
    }
}
