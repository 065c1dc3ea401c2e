//! Floating-point residuals at sample times, computed from Taylor data
//! rather than the closed forms used by the exact verifiers.

use num_complex::Complex64;
use num_traits::Zero;

use super::{ExpPolySolution, ExpRationalSolution, ReciprocalSystem};
use crate::algebra::{GaussianRational, Poly, RatFun};
use crate::error::{Error, Result};
use crate::ratmat::MatPoly;

fn binomial(n: usize, k: usize) -> GaussianRational {
    let mut c = GaussianRational::from_int(1);
    for i in 0..k {
        c = c * GaussianRational::from_frac((n - i) as i64, (i + 1) as i64);
    }
    c
}

fn factorial(n: usize) -> GaussianRational {
    (1..=n).fold(GaussianRational::from_int(1), |acc, i| {
        acc * GaussianRational::from_int(i as i64)
    })
}

fn exp_factor(alpha: &GaussianRational, t: &GaussianRational) -> Complex64 {
    (alpha.to_complex() * t.to_complex()).exp()
}

/// `d^j/dt^j` of a function at `t` from its Taylor coefficients there, exact.
fn exp_product_derivs(alpha: &GaussianRational, taylor: &[GaussianRational], order: usize) -> Vec<GaussianRational> {
    (0..=order)
        .map(|k| {
            (0..=k).fold(GaussianRational::zero(), |acc, j| {
                acc + binomial(k, j) * alpha.pow((k - j) as u32) * factorial(j) * taylor[j].clone()
            })
        })
        .collect()
}

/// Largest `|sum a / u_m^{(k)}(t)|` over equations and samples, exponential included.
pub fn numeric_residual_recip(
    sys: &ReciprocalSystem,
    cand: &ExpRationalSolution,
    samples: &[GaussianRational],
) -> Result<f64> {
    Ok(numeric_equation_residuals(sys, cand, samples)?
        .into_iter()
        .fold(0.0, f64::max))
}

/// Per equation, the largest residual magnitude over the samples.
pub fn numeric_equation_residuals(
    sys: &ReciprocalSystem,
    cand: &ExpRationalSolution,
    samples: &[GaussianRational],
) -> Result<Vec<f64>> {
    let order = sys.terms().iter().map(|t| t.order).max().unwrap_or(0);
    let mut worst = vec![0.0f64; sys.n()];
    for t in samples {
        let mut derivs = Vec::with_capacity(cand.p.len());
        for p in &cand.p {
            if p.eval(t).is_zero() {
                return Err(Error::SampleAtSingularity { t: t.to_string() });
            }
            let recip = RatFun::new(Poly::one(), p.clone())?;
            let taylor = recip.taylor_coeffs(t, order)?;
            derivs.push(exp_product_derivs(&cand.alpha, &taylor, order));
        }
        let e = exp_factor(&cand.alpha, t);
        let mut r = vec![Complex64::new(0.0, 0.0); sys.n()];
        for term in sys.terms() {
            let d = &derivs[term.unknown][term.order];
            if d.is_zero() {
                return Err(Error::SampleAtSingularity { t: t.to_string() });
            }
            r[term.equation] += term.coeff.to_complex() / (d.to_complex() * e);
        }
        for (w, x) in worst.iter_mut().zip(&r) {
            *w = w.max(x.norm());
        }
    }
    Ok(worst)
}

/// Largest `|sum_j A_j u^{(j)}(t)|` over components and samples.
pub fn numeric_residual_linear(l: &MatPoly, sol: &ExpPolySolution, samples: &[GaussianRational]) -> Result<f64> {
    if sol.p.len() != l.cols() {
        return Err(Error::DimensionMismatch {
            expected: l.cols(),
            found: sol.p.len(),
        });
    }
    let order = l.degree();
    let mut worst: f64 = 0.0;
    for t in samples {
        let e = exp_factor(&sol.alpha, t);
        let derivs: Vec<Vec<GaussianRational>> = sol
            .p
            .iter()
            .map(|p| {
                let shifted = p.shift(t);
                let taylor: Vec<GaussianRational> = (0..=order).map(|k| shifted.coeff(k)).collect();
                exp_product_derivs(&sol.alpha, &taylor, order)
            })
            .collect();
        for i in 0..l.rows() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, a) in l.coeffs().iter().enumerate() {
                for (c, d) in derivs.iter().enumerate() {
                    acc += a.get(i, c).to_complex() * d[j].to_complex();
                }
            }
            worst = worst.max((acc * e).norm());
        }
    }
    Ok(worst)
}
