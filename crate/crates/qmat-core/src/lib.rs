//! q-matroids over prime fields: subspace lattices, rank backends, cyclic
//! flats, Whitney functions, cloud/flock polynomials and configurations.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod analysis;
pub mod axioms;
pub mod condense;
pub mod error;
pub mod field;
pub mod gauss;
pub mod invariants;
pub mod lattice;
pub mod lift;
pub mod matroid;
pub mod poly;
pub mod subspace;
pub mod suite;
pub mod transforms;
pub mod universe;

pub use analysis::Analysis;
pub use error::Error;
pub use field::{ExtElement, ExtensionField, PrimeField};
pub use lattice::LabeledLattice;
pub use matroid::QMatroid;
pub use poly::{BivariatePoly, UnivariatePoly, Var};
pub use subspace::{Ambient, Subspace};
pub use universe::{RankTable, Universe};

/// Largest ground dimension enumerated unless a caller asks for more.
pub const DEFAULT_MAX_N: u32 = 8;
