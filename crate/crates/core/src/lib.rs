//! Specifications for fault-tolerant quantum circuits in ICM form
//! (initialisations, CNOTs, measurements).
//!
//! A reference circuit yields a [`spec::Specification`]: the stabiliser
//! truth table of its CNOT network, the ancilla initialisations and the
//! measurement rules. [`verify::verify`] checks an untrusted candidate
//! against one. [`oracle`] is a dense simulator used to cross-check
//! everything on small inputs.

pub mod circuit;
pub mod cli;
pub mod compile;
pub mod error;
pub mod frame;
pub mod gates;
pub mod oracle;
pub mod pauli;
pub mod spec;
pub mod table;
pub mod transform;
pub mod verify;
