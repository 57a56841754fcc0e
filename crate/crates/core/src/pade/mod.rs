//! Padé approximation checks: vanishing orders, the differential system, and the
//! factorisation `[s_{k,i}] = M P` with its rank.

pub mod matrices;
pub mod orders;
pub mod system;

pub use matrices::{
    basis_hash, build_m, build_p, column_space_basis, has_zero_row, rank_over_cyclotomic,
    s_column_space, verify_product,
};
pub use orders::{check_order_at_infinity, check_order_at_unity, check_order_at_zero};
pub use system::{check_transfer, transfer_operator_apply, SystemMatrix};
