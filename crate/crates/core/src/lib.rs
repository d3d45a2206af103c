//! Clifford+T synthesis by diagonalization.
//!
//! The crate approximates small (1-3 qubit) unitaries by searching for
//! discrete Clifford+T words `L`, `R` such that `L · U† · R` is close to a
//! diagonal unitary, then implements the residual diagonal analytically with
//! CNOT + R_Z ladders. On top of the synthesis core sits an OpenQASM 2.0
//! transpiler that partitions circuits into 2-3 qubit blocks, synthesizes
//! each block, and reports non-Clifford resource counts together with the
//! accumulated approximation error.

pub mod anneal;
pub mod diagonal;
mod error;
pub mod gates;
pub mod matrix;
pub mod qasm;
pub mod rz;
pub mod transpile;

pub use error::{Error, Result};
