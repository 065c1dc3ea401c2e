use num_traits::Zero;

use crate::algebra::{GaussianRational, Poly, RatFun};
use crate::error::{Error, Result};
use crate::ratmat::{is_zero_vec, vec_add, RatMat, Vector};
use crate::spectra::{char_function, rational_roots};

/// One fraction `coeff / u_unknown^{(order)}` in equation `equation`, indices zero-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecipTerm {
    pub equation: usize,
    pub unknown: usize,
    pub order: usize,
    pub coeff: GaussianRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReciprocalSystem {
    n: usize,
    terms: Vec<RecipTerm>,
}

impl ReciprocalSystem {
    pub fn new(n: usize, terms: Vec<RecipTerm>) -> Result<Self> {
        for t in &terms {
            for idx in [t.equation, t.unknown] {
                if idx >= n {
                    return Err(Error::IndexOutOfRange {
                        index: idx as i64 + 1,
                        bound: n,
                    });
                }
            }
            if t.coeff.is_zero() {
                return Err(Error::Schema(format!(
                    "zero coefficient in equation {} for unknown {}",
                    t.equation + 1,
                    t.unknown + 1
                )));
            }
        }
        Ok(Self { n, terms })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[RecipTerm] {
        &self.terms
    }

    fn max_order(&self) -> usize {
        self.terms.iter().map(|t| t.order).max().unwrap_or(0)
    }
}

/// `u_i = e^{alpha t} / p_i(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpRationalSolution {
    pub alpha: GaussianRational,
    pub p: Vec<Poly>,
}

/// `Q_{i,m}(z) = sum_k a_{imk} z^{-k}`, from substituting `u_m = e^{zt} / phi_m`.
pub fn assoc_matrix(sys: &ReciprocalSystem) -> RatMat {
    let mut q = RatMat::zeros(sys.n, sys.n);
    for t in &sys.terms {
        let term = RatFun::new(
            Poly::constant(t.coeff.clone()),
            Poly::monomial(GaussianRational::from_int(1), t.order),
        )
        .expect("nonzero denominator");
        let entry = q.get(t.equation, t.unknown) + &term;
        q.set(t.equation, t.unknown, entry);
    }
    q
}

/// The eigenpair solution `u_i = e^{alpha t} / phi_i`.
pub fn recip_solution(
    sys: &ReciprocalSystem,
    alpha: &GaussianRational,
    phi: &[GaussianRational],
) -> Result<ExpRationalSolution> {
    if phi.len() != sys.n {
        return Err(Error::DimensionMismatch {
            expected: sys.n,
            found: phi.len(),
        });
    }
    if let Some(index) = phi.iter().position(Zero::is_zero) {
        return Err(Error::ZeroComponent { index });
    }
    let q = assoc_matrix(sys).eval(alpha)?;
    if !is_zero_vec(&q.mul_vec(phi)?) {
        return Err(Error::NotAnEigenpair);
    }
    Ok(ExpRationalSolution {
        alpha: alpha.clone(),
        p: phi.iter().cloned().map(Poly::constant).collect(),
    })
}

/// `q_0..=q_order` with `(e^{alpha t}/p)^{(k)} = e^{alpha t} q_k / p^{k+1}`.
pub fn derivative_numerators(alpha: &GaussianRational, p: &Poly, order: usize) -> Vec<Poly> {
    let dp = p.derivative();
    let mut qs = vec![Poly::one()];
    for k in 0..order {
        let qk = &qs[k];
        let next = &(&qk.scale(alpha) * p)
            + &(&(&qk.derivative() * p) - &(qk * &dp).scale(&GaussianRational::from_int(k as i64 + 1)));
        qs.push(next);
    }
    qs
}

/// Residuals `R_i` with equation `i` equal to `e^{-alpha t} R_i(t)`; the
/// candidate solves equation `i` exactly when `R_i` vanishes.
pub fn verify_recip_candidate(sys: &ReciprocalSystem, cand: &ExpRationalSolution) -> Result<Vec<RatFun>> {
    if cand.p.len() != sys.n {
        return Err(Error::DimensionMismatch {
            expected: sys.n,
            found: cand.p.len(),
        });
    }
    if let Some(index) = cand.p.iter().position(Poly::is_zero) {
        return Err(Error::ZeroComponent { index });
    }
    let order = sys.max_order();
    let qs: Vec<Vec<Poly>> = cand
        .p
        .iter()
        .map(|p| derivative_numerators(&cand.alpha, p, order))
        .collect();
    let mut r = vec![RatFun::zero(); sys.n];
    for t in &sys.terms {
        let qk = &qs[t.unknown][t.order];
        if qk.is_zero() {
            return Err(Error::DegenerateDerivative {
                unknown: t.unknown,
                order: t.order,
            });
        }
        let p = &cand.p[t.unknown];
        let term = RatFun::new(p.pow(t.order as u32 + 1).scale(&t.coeff), qk.clone())?;
        r[t.equation] = &r[t.equation] + &term;
    }
    Ok(r)
}

/// One eigenvalue of the associated matrix and, when available, an
/// eigenvector with no zero component and its solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecipFinding {
    pub alpha: GaussianRational,
    pub eigenvectors: Vec<Vector>,
    pub solution: Option<ExpRationalSolution>,
}

/// Exact eigenvalues of the associated matrix at which it is holomorphic,
/// with an eigenpair solution where some kernel vector has all components nonzero.
///
/// Candidates tried: each kernel basis vector, then their sum.
pub fn find_recip_solutions(sys: &ReciprocalSystem) -> Result<Vec<RecipFinding>> {
    let q = assoc_matrix(sys);
    let chi = char_function(&q)?;
    let mut out = Vec::new();
    for (alpha, _) in rational_roots(chi.num())?.roots {
        let Ok(value) = q.eval(&alpha) else {
            continue;
        };
        let basis = value.nullspace();
        let mut candidates = basis.clone();
        if basis.len() > 1 {
            let zero = vec![GaussianRational::zero(); sys.n];
            candidates.push(basis.iter().fold(zero, |acc, b| vec_add(&acc, b)));
        }
        let solution = candidates
            .iter()
            .find(|v| v.iter().all(|c| !c.is_zero()))
            .map(|v| recip_solution(sys, &alpha, v))
            .transpose()?;
        out.push(RecipFinding {
            alpha,
            eigenvectors: basis,
            solution,
        });
    }
    Ok(out)
}
