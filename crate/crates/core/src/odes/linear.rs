use crate::algebra::{GaussianRational, Poly};
use crate::error::{Error, Result};
use crate::jordan::JordanChain;
use crate::ratmat::MatPoly;

/// `u(t) = P(t) e^{alpha t}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpPolySolution {
    pub alpha: GaussianRational,
    pub p: Vec<Poly>,
}

/// `P(t) = sum_j t^{k-1-j} / (k-1-j)! phi_j` for a chain of length `k`.
pub fn linear_solution(l: &MatPoly, chain: &JordanChain) -> Result<ExpPolySolution> {
    let n = l.cols();
    let k = chain.len();
    let mut p = vec![Poly::zero(); n];
    let mut fact = GaussianRational::from_int(1);
    // j = k-1-e, e = power of t
    for e in 0..k {
        if e > 0 {
            fact = fact * GaussianRational::from_int(e as i64);
        }
        let phi = &chain.vectors[k - 1 - e];
        if phi.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: phi.len(),
            });
        }
        let scale = fact.inv().expect("nonzero factorial");
        for (pi, c) in p.iter_mut().zip(phi) {
            *pi = &*pi + &Poly::monomial(c * &scale, e);
        }
    }
    Ok(ExpPolySolution {
        alpha: chain.alpha.clone(),
        p,
    })
}

/// `R(t)` with `sum_j A_j u^{(j)} = e^{alpha t} R(t)`, using
/// `(P e^{alpha t})^{(j)} = e^{alpha t} (D + alpha)^j P`.
pub fn verify_linear_residual(l: &MatPoly, sol: &ExpPolySolution) -> Result<Vec<Poly>> {
    if sol.p.len() != l.cols() {
        return Err(Error::DimensionMismatch {
            expected: l.cols(),
            found: sol.p.len(),
        });
    }
    let mut y = sol.p.clone();
    let mut r = vec![Poly::zero(); l.rows()];
    for (j, a) in l.coeffs().iter().enumerate() {
        if j > 0 {
            y = y.iter().map(|p| &p.derivative() + &p.scale(&sol.alpha)).collect();
        }
        for (i, ri) in r.iter_mut().enumerate() {
            for (c, yc) in y.iter().enumerate() {
                let aic = a.get(i, c);
                if !num_traits::Zero::is_zero(aic) {
                    *ri = &*ri + &yc.scale(aic);
                }
            }
        }
    }
    Ok(r)
}
