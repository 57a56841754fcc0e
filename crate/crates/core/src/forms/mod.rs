//! The hypergeometric construction: `F(t)`, its partial fractions, the form
//! families and the integer coefficient matrix.

pub mod family;
pub mod params;
pub mod partial_fractions;
pub mod periodic;
pub mod ratfunc;

pub use family::{build_u1_v1, FormFamily, SMatrix};
pub use params::Params;
pub use partial_fractions::{
    check_denominators, partial_fractions_product, partial_fractions_solve, PartialFractionTable,
};
pub use periodic::{common_field, fourier_hat, PeriodicFunction, ValueSpec};
pub use ratfunc::{build_f, check_well_poised_symmetry, FactoredRationalFunction};
