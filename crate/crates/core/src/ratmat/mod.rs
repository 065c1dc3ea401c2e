//! Matrices over scalars, polynomials and rational functions.

mod poly_mat;
mod rat_mat;
mod scalar_mat;

pub(crate) use poly_mat::smith_valuations;
pub use poly_mat::{local_smith, MatPoly, PolyMat};
pub use rat_mat::RatMat;
pub use scalar_mat::{
    fmt_vec, is_zero_vec, solve_linear, vec_add, vec_scale, vec_sub, LinSolveResult, ScalarMat, Vector,
};
