//! Sparse polynomial systems: parsing, Newton polytopes, root-count bounds, facial
//! systems and a bivariate solver for checking the counts.

pub mod bkk;
pub mod polynomial;
pub mod solve;
pub mod univariate;

pub use bkk::{
    bernstein_bound, facial_systems, genericity_check, initial_form, kushnirenko_bound,
    newton_polytope, FaceStatus, FacialCheck, FacialSystem, GenericityReport, Verdict,
};
pub use polynomial::{parse_polynomial, PolySystem, SparsePolynomial};
pub use solve::{count_with_multiplicity, solve_bivariate, TorusSolution, DEFAULT_TOL};
