//! Exact arithmetic: rationals, integers, polynomials, series and cyclotomic fields.

pub mod coeff;
pub mod cyclo;
pub mod integer;
pub mod laurent;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod series;

pub use coeff::{Coefficient, FieldCoefficient};
pub use cyclo::{cyclotomic_min_poly, CycloField, CycloNumber};
pub use laurent::LaurentPoly;
pub use poly::DensePoly;
pub use rational::Rational;
pub use series::{series_log_at_one, TruncatedSeries};
