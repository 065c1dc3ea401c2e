use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::algebra::{GaussianRational, Poly};
use crate::error::{Error, Result};
use crate::ratmat::RatMat;
use crate::spectra::Provenance;

/// Relative singular-value threshold for rank decisions.
pub const DEFAULT_SVD_THRESHOLD: f64 = 1e-8;

/// A floating-point chain at an approximate eigenvalue.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericChain {
    pub alpha: Complex64,
    pub vectors: Vec<Vec<Complex64>>,
    pub provenance: Provenance,
}

fn to_complex(p: &Poly) -> Vec<Complex64> {
    p.coeffs().iter().map(GaussianRational::to_complex).collect()
}

/// Coefficients of `p(w + alpha)` in `w`.
fn shift(coeffs: &[Complex64], alpha: Complex64) -> Vec<Complex64> {
    let mut c = coeffs.to_vec();
    let n = c.len();
    for k in 0..n {
        for j in (k..n - 1).rev() {
            let next = c[j + 1];
            c[j] += alpha * next;
        }
    }
    c
}

fn taylor(num: &[Complex64], den: &[Complex64], alpha: Complex64, order: usize) -> Vec<Complex64> {
    let n = shift(num, alpha);
    let d = shift(den, alpha);
    let mut out: Vec<Complex64> = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut acc = n.get(k).copied().unwrap_or_default();
        for j in 1..=k.min(d.len() - 1) {
            acc -= d[j] * out[k - j];
        }
        out.push(acc / d[0]);
    }
    out
}

/// Greedy chain at a floating-point point; rank decisions use singular values
/// below `threshold * sigma_max`, consistency a relative residual of the same size.
pub fn numeric_chain(q: &RatMat, alpha: Complex64, max_len: usize, threshold: f64) -> Result<NumericChain> {
    let (r, c) = (q.rows(), q.cols());
    let mut taylors = Vec::with_capacity(r * c);
    let scale = alpha.norm().max(1.0);
    for (idx, f) in q.entries().iter().enumerate() {
        let den = to_complex(f.den());
        let (d0, _) = horner(&den, alpha);
        let den_size: f64 = den.iter().map(|x| x.norm()).sum::<f64>() * scale.powi(den.len() as i32);
        if d0.norm() <= threshold * den_size {
            return Err(Error::EntryPole {
                row: idx / c,
                col: idx % c,
            });
        }
        taylors.push(taylor(&to_complex(f.num()), &den, alpha, max_len));
    }
    let derivs: Vec<DMatrix<Complex64>> = (0..=max_len)
        .map(|p| DMatrix::from_fn(r, c, |i, j| taylors[i * c + j][p]))
        .collect();
    let svd = derivs[0].clone().svd(true, true);
    let sigma_max = svd.singular_values.max();
    let (imin, &smin) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty matrix");
    if smin > threshold * sigma_max.max(1.0) {
        return Err(Error::NotAnEigenvalue {
            alpha: alpha.to_string(),
        });
    }
    let v_t = svd.v_t.as_ref().expect("requested");
    let phi0: Vec<Complex64> = v_t.row(imin).iter().map(|x| x.conj()).collect();
    let mut vectors = vec![phi0];
    while vectors.len() < max_len {
        let j = vectors.len();
        let mut rhs = DVector::<Complex64>::zeros(r);
        for p in 1..=j {
            rhs -= &derivs[p] * DVector::from_column_slice(&vectors[j - p]);
        }
        let eps = threshold * sigma_max.max(1.0);
        let x = svd
            .solve(&rhs, eps)
            .map_err(|_| Error::ConvergenceFailure { iterations: 0 })?;
        let resid = (&derivs[0] * &x - &rhs).norm();
        if resid > threshold * rhs.norm().max(1.0) {
            break;
        }
        vectors.push(x.iter().copied().collect());
    }
    Ok(NumericChain {
        alpha,
        vectors,
        provenance: Provenance::Numeric,
    })
}

fn horner(coeffs: &[Complex64], x: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}
