//! Finite fields, subspace lattices and matricial algebras.

pub mod field;
pub mod matricial;
pub mod subspace;

pub use field::FiniteField;
pub use matricial::{k0_of_matricial, matricial_ideal_lattice, GroupWithUnitSignature, MatricialSignature};
pub use subspace::{gaussian_count, subspace_lattice, Subspace, SubspaceLattice};
