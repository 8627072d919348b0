//! Exact computation of generalized Green functions and 2-parameter Green
//! functions for finite reductive groups at small rank, covering Spin8(q)
//! with q odd and its Levi subgroups of type A1+A1+A1.
//!
//! Everything is computed in exact arithmetic over Q[q], extended by the
//! involutive sign indeterminates a10, a22, a27 and by case splits on the
//! residue of q mod 4. The pipeline:
//!
//! 1. [`coxeter`] builds the small finite Coxeter groups (A1 products, B2,
//!    D4) with conjugacy classes and rational character tables.
//! 2. [`groupdata`] holds root data, unipotent class catalogs, and the
//!    blocks of the generalized Springer correspondence.
//! 3. [`greenfn`] runs the orthogonality-driven unitriangular decomposition
//!    per block, assembles the Green function tables, and transfers the
//!    Levi's tables through the SL2 x SL2 x SL2 covering.
//! 4. [`twoparam`] inverts the Levi table, identifies induced functions,
//!    solves for 2-parameter Green functions, and resolves the sign
//!    indeterminates from positivity and integrality.
//! 5. [`render`] emits the tables in a fixed ASCII layout, checked
//!    bit-exactly against golden files.

pub mod cli;
pub mod coxeter;
pub mod greenfn;
pub mod groupdata;
pub mod render;
pub mod symring;
pub mod twoparam;

use std::fmt;

/// Crate-wide error type.
#[derive(Debug, Clone)]
pub enum Error {
    /// Exact-arithmetic violations: division by zero, inexact division,
    /// unassigned or leftover sign indeterminates.
    Arithmetic(String),
    /// Malformed textual or JSON input.
    Parse(String),
    /// Invalid or non-finite Coxeter data.
    Coxeter(String),
    /// Inconsistent shipped data (catalogs, Springer maps, coverings).
    Data(String),
    /// The unitriangular decomposition failed at a pivot.
    Decomposition(String),
    /// A verification (orthogonality, norms, counts) failed.
    Validation(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Arithmetic(m) => write!(f, "arithmetic error: {m}"),
            Error::Parse(m) => write!(f, "parse error: {m}"),
            Error::Coxeter(m) => write!(f, "coxeter error: {m}"),
            Error::Data(m) => write!(f, "data error: {m}"),
            Error::Decomposition(m) => write!(f, "decomposition error: {m}"),
            Error::Validation(m) => write!(f, "validation failure: {m}"),
        }
    }
}

impl std::error::Error for Error {}
