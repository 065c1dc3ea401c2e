//! Exact scalars, polynomials and rational functions over the Gaussian rationals.

mod poly;
mod ratfun;
mod scalar;

pub use poly::Poly;
pub use ratfun::RatFun;
pub use scalar::{q, GaussianRational};
