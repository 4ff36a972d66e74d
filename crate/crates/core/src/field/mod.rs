//! Exact coefficients (`Q` and `Q(√d)`) and the linear algebra built on them.

mod matrix;
mod scalar;

pub use matrix::{mat_det, mat_kernel, mat_solve, sym_signature, Inertia, Matrix};
pub use scalar::{FieldDesc, Scalar};
