//! Linear forms in values of Dirichlet L-functions and Hurwitz zeta functions,
//! built from a hypergeometric rational function and certified by exact arithmetic.

pub mod analytic;
pub mod checks;
pub mod error;
pub mod exact;
pub mod forms;
pub mod pade;
pub mod pipeline;

pub use error::{Error, Result};
