//! Exact dense linear algebra over the rationals.

mod matrix;
mod scalar;
mod subspace;

pub use matrix::{rank, solve, Echelon, Matrix};
pub use scalar::{ParseScalarError, Scalar};
pub use subspace::{
    contains, image_basis, kernel_basis, quotient_dim, subspace_intersection, subspace_sum,
    Subspace,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("subspace is not contained in the ambient subspace")]
    NotASubspace,
}
