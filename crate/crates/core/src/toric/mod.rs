//! Toric ideals: binomials, term orders, Gröbner bases, Hilbert functions and semigroup data.

pub mod binomial;
pub mod groebner;
pub mod maps;
pub mod order;
pub mod semigroup;

pub use binomial::{
    binomial_membership, coincident_combination, factor_primitive, is_homogeneous, Binomial,
    CoincidentCombination,
};
pub use groebner::{
    binomial_groebner, positive_grading, toric_groebner, toric_groebner_from_lattice,
    toric_groebner_with, GroebnerBasis, GroebnerConfig,
};
pub use order::TermOrder;
pub use semigroup::{hilbert_function, hilbert_polynomial, semigroup_gap_data, sumset_sizes, GapData};
pub use maps::{monomial_map_eval, monomial_map_eval_complex, moment_map_eval, moment_map_eval_complex};
