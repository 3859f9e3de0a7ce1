//! Exact integer linear algebra: Smith normal form, lattices, homology of
//! free complexes and invariants of maps between abelian groups.

pub mod abgroup;
pub mod homology;
pub mod integer;
pub mod lattice;
pub mod matrix;
pub mod snf;

pub use abgroup::{map_invariants, FgAbGroup, FgAbMap, MapError, MapInvariants, Presentation};
pub use homology::{homology_at, ComplexError, FreeComplex, Homology};
pub use integer::{Integer, Overflow};
pub use lattice::{in_span, kernel_basis, solve_in_basis, span_basis};
pub use matrix::{IntMatrix, Matrix};
pub use snf::{smith_normal_form, Smith};
