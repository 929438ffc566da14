//! Exact copositivity tests for small symmetric matrices and certification
//! of linear maps that preserve the copositive cone.
//!
//! A linear map on symmetric matrices sends the copositive cone onto itself
//! exactly when it is a monomial congruence `x -> m^T x m` with `m` a
//! nonnegative monomial matrix. [`preserver::certify_preserver`] decides
//! this for a concrete operator and, when the answer is negative, searches
//! for a copositive matrix whose image (or preimage) is not copositive.

pub mod copositivity;
pub mod dense;
pub mod error;
pub mod preserver;
pub mod scalar;
pub mod symspace;

pub use copositivity::{
    boundary_status, is_copositive, kernel_residual, simplex_minimize, zero_support_rays, ConeKind, ConeStatus,
    KernelRay, SimplexMinimum, Support,
};
pub use error::{Error, Result};
pub use scalar::{Rational, Scalar};
pub use symspace::{basis_len, devectorize, vectorize, ExactOp, LinOp, SymBasisIndex, SymMatrix};
