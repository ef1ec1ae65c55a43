//! Hurwitz vectors over `D_n`: evaluation, membership, ν-types, the genus formula and enumeration.

mod enumerate;
mod nu;
mod vector;

pub(crate) use enumerate::{check_budget, HsSearch};
pub use enumerate::{enumerate_hs, for_each_hs, DEFAULT_BUDGET};
pub use nu::{hurwitz_genus, is_admissible, is_valid_order, nu_type, sigma_set, valid_orders, NuType, SigmaSet};
pub use vector::{HsFailure, HurwitzVector};

pub fn evaluate(v: &HurwitzVector) -> crate::group::DihedralElement {
    v.evaluate()
}

pub fn is_hurwitz_system(v: &HurwitzVector) -> std::result::Result<(), HsFailure> {
    v.check_hurwitz()
}
