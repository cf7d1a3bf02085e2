use thiserror::Error;

use crate::circuit::Violation;
use crate::pauli::PauliError;

/// A located error from one of the line-based text formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }
}

/// Errors from the library operations above the Pauli layer.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error("invalid ICM circuit: {}", join(.0))]
    Invalid(Vec<Violation>),
    #[error("specification: {0}")]
    Spec(String),
    #[error("transform: {0}")]
    Transform(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{n} qubits exceeds the simulation cap of {cap}")]
    SizeCap { n: usize, cap: usize },
    #[error("{0}")]
    Simulation(String),
}

fn join(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
