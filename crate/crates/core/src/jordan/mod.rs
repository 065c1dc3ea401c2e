//! Jordan chains at holomorphy points, root functions and zero orders.
//!
//! A chain `phi_0, .., phi_{l-1}` at `alpha` satisfies
//! `sum_{p=0}^{j} D_p phi_{j-p} = 0` for `j < l`, where `D_p = Q^{(p)}(alpha) / p!`.

mod numeric;

use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{GaussianRational, Poly, RatFun};
use crate::error::{Error, Result};
use crate::ratmat::{
    fmt_vec, is_zero_vec, solve_linear, vec_add, vec_scale, LinSolveResult, RatMat, ScalarMat, Vector,
};
use crate::spectra::char_function;

pub use numeric::{numeric_chain, NumericChain, DEFAULT_SVD_THRESHOLD};

/// Upper bound reported by [`verify_zero_order`] when `Q phi` vanishes identically.
pub const ORDER_CAP: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanChain {
    pub alpha: GaussianRational,
    pub vectors: Vec<Vector>,
}

impl JordanChain {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Check the defining relations by direct substitution.
    pub fn satisfies(&self, derivs: &[ScalarMat]) -> Result<bool> {
        if self.vectors.first().is_none_or(|v| is_zero_vec(v)) {
            return Ok(false);
        }
        for j in 0..self.len() {
            let mut acc = vec![GaussianRational::zero(); derivs[0].rows()];
            for (p, d) in derivs.iter().enumerate().take(j + 1) {
                acc = vec_add(&acc, &d.mul_vec(&self.vectors[j - p])?);
            }
            if !is_zero_vec(&acc) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for JordanChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, v) in self.vectors.iter().enumerate() {
            if j > 0 {
                writeln!(f)?;
            }
            write!(f, "phi_{j} = {}", fmt_vec(v))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainStep {
    pub index: usize,
    /// `-sum_{p=1}^{j} D_p phi_{j-p}`.
    pub rhs: Vector,
    pub solution: LinSolveResult,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Termination {
    /// The next step has no solution for the vectors already chosen.
    Inconsistent(ChainStep),
    MaxLength,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreedyChain {
    pub chain: JordanChain,
    pub termination: Termination,
}

/// Vector polynomial `sum_s (z - alpha)^s coeffs[s]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootFunction {
    pub alpha: GaussianRational,
    pub coeffs: Vec<Vector>,
}

impl RootFunction {
    /// Components as polynomials in `z`.
    pub fn to_polys(&self) -> Vec<Poly> {
        let n = self.coeffs.first().map_or(0, Vec::len);
        (0..n)
            .map(|i| Poly::new(self.coeffs.iter().map(|c| c[i].clone()).collect()).unshift(&self.alpha))
            .collect()
    }

    /// Expand polynomial components around `alpha`.
    pub fn from_polys(alpha: &GaussianRational, polys: &[Poly]) -> Self {
        let shifted: Vec<Poly> = polys.iter().map(|p| p.shift(alpha)).collect();
        let len = shifted.iter().map(|p| p.coeffs().len()).max().unwrap_or(0).max(1);
        let coeffs = (0..len).map(|s| shifted.iter().map(|p| p.coeff(s)).collect()).collect();
        Self {
            alpha: alpha.clone(),
            coeffs,
        }
    }

    pub fn value_at_alpha(&self) -> &[GaussianRational] {
        &self.coeffs[0]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZeroOrder {
    pub ok: bool,
    /// Minimum valuation over nonzero components, [`ORDER_CAP`] if all vanish.
    pub exact_order: usize,
}

/// Refuse poles: `MixedPoint` if the function also has a zero there, else `EntryPole`.
pub fn holomorphy_guard(q: &RatMat, alpha: &GaussianRational) -> Result<()> {
    if let (_, Some((row, col))) = q.entry_pole_order(alpha) {
        if q.is_square() && q.local_exponents(alpha)?.iter().any(|&e| e > 0) {
            return Err(Error::MixedPoint {
                alpha: Box::new(alpha.clone()),
            });
        }
        return Err(Error::EntryPole { row, col });
    }
    Ok(())
}

/// `Q^{(p)}(alpha) / p!` for `p = 0..l`.
pub fn scaled_derivs_at(q: &RatMat, alpha: &GaussianRational, l: usize) -> Result<Vec<ScalarMat>> {
    holomorphy_guard(q, alpha)?;
    if l == 0 {
        return Ok(Vec::new());
    }
    let mut taylor = Vec::with_capacity(q.entries().len());
    for f in q.entries() {
        taylor.push(f.taylor_coeffs(alpha, l - 1)?);
    }
    (0..l)
        .map(|p| ScalarMat::new(q.rows(), q.cols(), taylor.iter().map(|t| t[p].clone()).collect()))
        .collect()
}

/// Solve step `j`: `D_0 phi_j = -sum_{p=1}^{j} D_p phi_{j-p}`.
pub fn chain_step(derivs: &[ScalarMat], existing: &[Vector], j: usize) -> Result<ChainStep> {
    if existing.len() != j {
        return Err(Error::DimensionMismatch {
            expected: j,
            found: existing.len(),
        });
    }
    if derivs.len() <= j {
        return Err(Error::DimensionMismatch {
            expected: j + 1,
            found: derivs.len(),
        });
    }
    let n = derivs[0].rows();
    let mut rhs = vec![GaussianRational::zero(); n];
    for p in 1..=j {
        rhs = vec_add(&rhs, &derivs[p].mul_vec(&existing[j - p])?);
    }
    let rhs = vec_scale(&rhs, &-GaussianRational::one());
    let solution = solve_linear(&derivs[0], &rhs)?;
    Ok(ChainStep {
        index: j,
        rhs,
        solution,
    })
}

fn require_eigenvalue(d0: &ScalarMat, alpha: &GaussianRational) -> Result<()> {
    if !d0.is_singular() {
        return Err(Error::NotAnEigenvalue {
            alpha: alpha.to_string(),
        });
    }
    Ok(())
}

/// Extend a chain one deterministic step at a time: `phi_0` is the first
/// nullspace basis vector, later vectors the particular solution with free
/// variables set to zero.
pub fn extend_chain_greedy(q: &RatMat, alpha: &GaussianRational, max_len: usize) -> Result<GreedyChain> {
    let derivs = scaled_derivs_at(q, alpha, max_len.max(1) + 1)?;
    require_eigenvalue(&derivs[0], alpha)?;
    let mut vectors = vec![derivs[0].nullspace().swap_remove(0)];
    let mut termination = Termination::MaxLength;
    while vectors.len() < max_len {
        let step = chain_step(&derivs, &vectors, vectors.len())?;
        match &step.solution.particular {
            Some(x) if step.solution.consistent => vectors.push(x.clone()),
            _ => {
                termination = Termination::Inconsistent(step);
                break;
            }
        }
    }
    Ok(GreedyChain {
        chain: JordanChain {
            alpha: alpha.clone(),
            vectors,
        },
        termination,
    })
}

/// Basis of the kernel of the block Toeplitz system of length `l`, grown one
/// level at a time. Each basis vector stacks `phi_0, .., phi_{l-1}`.
struct ChainSpace<'a> {
    derivs: &'a [ScalarMat],
    n: usize,
    level: usize,
    basis: Vec<Vector>,
}

impl<'a> ChainSpace<'a> {
    fn new(derivs: &'a [ScalarMat]) -> Self {
        let n = derivs[0].cols();
        Self {
            derivs,
            n,
            level: 1,
            basis: derivs[0].nullspace(),
        }
    }

    /// Dimension of the span of the `phi_0` blocks.
    fn head_rank(&self) -> usize {
        if self.basis.is_empty() {
            return 0;
        }
        let rows = self.basis.iter().map(|b| b[..self.n].to_vec()).collect();
        ScalarMat::from_rows(rows).expect("rectangular").rank()
    }

    fn grow(&mut self) -> Result<()> {
        let l = self.level;
        let n = self.n;
        let m = self.basis.len();
        let rows = self.derivs[0].rows();
        // [S | D_0] with S_b = sum_{p=1}^{l} D_p b_{l-p}.
        let mut system = ScalarMat::zeros(rows, m + n);
        for (c, b) in self.basis.iter().enumerate() {
            let mut s = vec![GaussianRational::zero(); rows];
            for p in 1..=l {
                s = vec_add(&s, &self.derivs[p].mul_vec(&b[(l - p) * n..(l - p + 1) * n])?);
            }
            for (r, v) in s.into_iter().enumerate() {
                system.set(r, c, v);
            }
        }
        for r in 0..rows {
            for c in 0..n {
                system.set(r, m + c, self.derivs[0].get(r, c).clone());
            }
        }
        let mut next = Vec::new();
        for k in system.nullspace() {
            let mut v = vec![GaussianRational::zero(); n * l];
            for (c, b) in self.basis.iter().enumerate() {
                if !k[c].is_zero() {
                    v = vec_add(&v, &vec_scale(b, &k[c]));
                }
            }
            v.extend_from_slice(&k[m..]);
            next.push(v);
        }
        self.basis = next;
        self.level += 1;
        Ok(())
    }

    fn witness(&self) -> Option<Vec<Vector>> {
        let b = self.basis.iter().find(|b| !is_zero_vec(&b[..self.n]))?;
        Some(b.chunks(self.n).map(<[GaussianRational]>::to_vec).collect())
    }
}

/// Derivatives and the order of `det Q` at `alpha`, which bounds every chain length.
fn chain_setup(q: &RatMat, alpha: &GaussianRational) -> Result<(Vec<ScalarMat>, usize)> {
    holomorphy_guard(q, alpha)?;
    let chi = char_function(q)?;
    let bound = chi.valuation_at(alpha).expect("nonzero").max(0) as usize;
    let derivs = scaled_derivs_at(q, alpha, bound + 2)?;
    require_eigenvalue(&derivs[0], alpha)?;
    Ok((derivs, bound))
}

/// Numbers of chains of each length: entry `l-1` is the number of partial
/// multiplicities that are at least `l`.
fn head_ranks(derivs: &[ScalarMat], bound: usize) -> Result<(Vec<usize>, Option<Vec<Vector>>)> {
    let mut space = ChainSpace::new(derivs);
    let mut ranks = Vec::new();
    let mut witness = None;
    loop {
        let r = space.head_rank();
        if r == 0 {
            break;
        }
        ranks.push(r);
        witness = space.witness();
        if space.level > bound {
            break;
        }
        space.grow()?;
    }
    Ok((ranks, witness))
}

/// Longest chain length over all admissible choices of earlier vectors.
pub fn max_partial_multiplicity(q: &RatMat, alpha: &GaussianRational) -> Result<usize> {
    Ok(maximal_chain(q, alpha)?.len())
}

/// A chain of maximal length, taken from the kernel of the full Toeplitz system.
pub fn maximal_chain(q: &RatMat, alpha: &GaussianRational) -> Result<JordanChain> {
    let (derivs, bound) = chain_setup(q, alpha)?;
    let (_, witness) = head_ranks(&derivs, bound)?;
    Ok(JordanChain {
        alpha: alpha.clone(),
        vectors: witness.expect("singular D_0 has a kernel"),
    })
}

/// All partial multiplicities at `alpha`, ascending.
pub fn partial_multiplicities(q: &RatMat, alpha: &GaussianRational) -> Result<Vec<usize>> {
    let (derivs, bound) = chain_setup(q, alpha)?;
    let (ranks, _) = head_ranks(&derivs, bound)?;
    let mut out = Vec::new();
    for (i, &r) in ranks.iter().enumerate().rev() {
        let longer = ranks.get(i + 1).copied().unwrap_or(0);
        out.extend(std::iter::repeat_n(i + 1, r - longer));
    }
    out.reverse();
    Ok(out)
}

pub fn build_root_function(chain: &JordanChain) -> RootFunction {
    RootFunction {
        alpha: chain.alpha.clone(),
        coeffs: chain.vectors.clone(),
    }
}

/// Minimum `(z - alpha)`-valuation over the nonzero components; `None` if all vanish.
pub fn vector_valuation(v: &[RatFun], alpha: &GaussianRational) -> Option<i64> {
    v.iter().filter_map(|f| f.valuation_at(alpha)).min()
}

/// `Q(z) phi(z)` as rational functions.
pub fn apply(q: &RatMat, phi: &RootFunction) -> Result<Vec<RatFun>> {
    let polys: Vec<RatFun> = phi.to_polys().into_iter().map(RatFun::from_poly).collect();
    q.mul_vec(&polys)
}

/// Whether `Q phi` vanishes to order at least `l` at `alpha`, by exact divisibility.
pub fn verify_zero_order(q: &RatMat, phi: &RootFunction, l: usize) -> Result<ZeroOrder> {
    if let (_, Some((row, col))) = q.entry_pole_order(&phi.alpha) {
        return Err(Error::EntryPole { row, col });
    }
    if phi.coeffs.is_empty() || is_zero_vec(phi.value_at_alpha()) {
        return Err(Error::ZeroEigenvectorCandidate);
    }
    let prod = apply(q, phi)?;
    let exact_order = vector_valuation(&prod, &phi.alpha).map_or(ORDER_CAP, |v| (v.max(0) as usize).min(ORDER_CAP));
    Ok(ZeroOrder {
        ok: exact_order >= l,
        exact_order,
    })
}
