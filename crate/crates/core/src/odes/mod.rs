//! Exponential solutions of linear constant-coefficient systems and of
//! reciprocal systems `sum a / u_m^{(k)} = 0`.
//!
//! Polynomials in this module are in the time variable `t`.

mod linear;
mod numeric;
mod recip;

pub use linear::{linear_solution, verify_linear_residual, ExpPolySolution};
pub use numeric::{numeric_equation_residuals, numeric_residual_linear, numeric_residual_recip};
pub use recip::{
    assoc_matrix, derivative_numerators, find_recip_solutions, recip_solution, verify_recip_candidate,
    ExpRationalSolution, RecipFinding, RecipTerm, ReciprocalSystem,
};
