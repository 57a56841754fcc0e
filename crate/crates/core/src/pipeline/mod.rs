//! Bounds and elimination: `alpha`, `beta`, the dimension bounds, the primorial plan, the
//! combined function `g` and the `N = D` specialization.

pub mod bounds;
pub mod elimination;
pub mod fsz;

pub use bounds::{
    alpha_beta, alpha_beta_prec, sci_from_log, siegel_lower_bound, theorem1_bound, theorem1_r, BoundParams,
    BoundReport, SiegelFit, SiegelSample, Theorem1Bound,
};
pub use elimination::{
    build_g, check_g_identity, default_exponents, primorial_d, relation_residuals, solve_w, EliminationPlan,
    GIdentity, GIdentityReport, PlanSizes,
};
pub use fsz::{fsz_equivalence, fsz_tolerance, FszInstance, FszOutcome, FszReport};
