//! Ball-arithmetic evaluation of zeta, L- and polylogarithm values, the series
//! `S_0`, `S_inf` at roots of unity, and numeric checks of the linear forms.

pub mod ball;
pub mod elementary;
pub mod hurwitz;
pub mod lambda;
pub mod lvalue;
pub mod series;

pub use ball::{Ball, ComplexBall, NumericValue, PrecisionContext};
pub use hurwitz::{bernoulli_numbers, hurwitz_zeta};
pub use lambda::{growth_study, identity_tolerance, lambda_check, lambda_check_with, GrowthRow, GrowthTable, LinearFormReport, LinearFormValue};
pub use lvalue::{eval_polylog, l_value, UnitRoot};
pub use series::{eval_s_derivative, residue_sums, side_sums, ResidueSums, Side};
