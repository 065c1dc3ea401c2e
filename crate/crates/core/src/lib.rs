//! Exact computation of eigenvalues, generalized Jordan chains and root
//! functions of rational matrix-valued functions `Q(z)`, with applications to
//! linear constant-coefficient ODE systems and reciprocal nonlinear systems.
//!
//! All arithmetic is over the Gaussian rationals Q(i). Points whose
//! coordinates are not in Q(i) are located numerically and labeled as such.

pub mod algebra;
pub mod error;
pub mod ingest;
pub mod jordan;
pub mod odes;
pub mod ratmat;
pub mod spectra;

#[cfg(test)]
mod testutil;

pub use algebra::{q, GaussianRational, Poly, RatFun};
pub use error::{Error, Result};
