//! Finite lattices, congruence lattices, and the combinatorics of
//! congruence-preserving extensions and dimension functions.

pub mod bits;
pub mod congruence;
pub mod constructions;
pub mod diagram;
pub mod dimension;
pub mod error;
pub mod format;
pub mod geometry;
pub mod order;
mod search;
pub mod support;
pub mod variety;
pub mod verify;

pub use error::{LatticeError, Result};
pub use order::{FiniteLattice, FinitePoset};
