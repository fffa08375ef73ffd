//! Exact computations for toric varieties: lattices, polytopes, cones and fans,
//! mixed volumes, binomial Gröbner bases and sparse polynomial root counts.

pub mod bigfloat;
pub mod cones;
pub mod dd;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod lp;
pub mod polytope;
pub mod sparse;
pub mod toric;
pub mod volume;

pub use error::{Error, Result};
pub use lattice::{
    affine_hyperplane_witness, hermite_form, integral_affine_span_is_full, kernel_basis,
    lattice_rank_index, lift, IntMatrix, IntVector, SupportSet,
};
