use num_traits::Zero;

use super::ScalarMat;
use crate::algebra::{GaussianRational, Poly};
use crate::error::{Error, Result};

/// Matrix with polynomial entries, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMat {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

/// Matrix polynomial `A_l z^l + ... + A_1 z + A_0`, stored by coefficient matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatPoly {
    coeffs: Vec<ScalarMat>,
}

impl PolyMat {
    pub fn new(rows: usize, cols: usize, entries: Vec<Poly>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Self {
            rows: r,
            cols: c,
            entries,
        })
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![Poly::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = Poly::one();
        }
        Self {
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn diagonal(diag: Vec<Poly>) -> Self {
        let n = diag.len();
        let mut m = Self::new(n, n, vec![Poly::zero(); n * n]).expect("square");
        for (i, d) in diag.into_iter().enumerate() {
            m.entries[i * n + i] = d;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn mul(&self, other: &PolyMat) -> Result<PolyMat> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = vec![Poly::zero(); self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * other.get(k, j);
                    let slot = &mut out[i * other.cols + j];
                    *slot = &*slot + &t;
                }
            }
        }
        PolyMat::new(self.rows, other.cols, out)
    }

    pub fn eval(&self, x: &GaussianRational) -> ScalarMat {
        ScalarMat::new(self.rows, self.cols, self.entries.iter().map(|p| p.eval(x)).collect()).expect("shape preserved")
    }

    /// Fraction-free (Bareiss) determinant; every division is exact.
    pub fn determinant(&self) -> Result<Poly> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Poly::one());
        }
        let mut m: Vec<Vec<Poly>> = (0..n).map(|i| self.entries[i * n..(i + 1) * n].to_vec()).collect();
        let mut prev = Poly::one();
        let mut negate = false;
        for k in 0..n - 1 {
            // Lowest-degree nonzero pivot in the column keeps growth down.
            let pivot = (k..n).filter(|&i| !m[i][k].is_zero()).min_by_key(|&i| m[i][k].degree());
            let Some(p) = pivot else {
                return Ok(Poly::zero());
            };
            if p != k {
                m.swap(p, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = num.div_exact(&prev)?;
                }
                m[i][k] = Poly::zero();
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        Ok(if negate { -det } else { det })
    }

    /// Invariant factors `d_1 | d_2 | ... ` (monic; zero polynomials for rank deficiency).
    pub fn smith_invariants(&self) -> Vec<Poly> {
        let mut m = self.clone();
        let r = m.rows.min(m.cols);
        let mut diag = Vec::with_capacity(r);
        for t in 0..r {
            let Some((pi, pj)) = m.min_degree_entry(t) else {
                diag.extend(std::iter::repeat_n(Poly::zero(), r - t));
                break;
            };
            m.swap_rows(t, pi);
            m.swap_cols(t, pj);
            loop {
                m.normalize_pivot(t);
                let mut dirty = false;
                for i in t + 1..m.rows {
                    if m.get(i, t).is_zero() {
                        continue;
                    }
                    let (quot, rem) = m.get(i, t).divrem(m.get(t, t)).expect("nonzero pivot");
                    m.row_sub_multiple(i, t, &quot);
                    dirty |= !rem.is_zero();
                }
                for j in t + 1..m.cols {
                    if m.get(t, j).is_zero() {
                        continue;
                    }
                    let (quot, rem) = m.get(t, j).divrem(m.get(t, t)).expect("nonzero pivot");
                    m.col_sub_multiple(j, t, &quot);
                    dirty |= !rem.is_zero();
                }
                if dirty {
                    // A strictly smaller remainder now sits in row or column t.
                    let best = (t..m.rows)
                        .map(|i| (i, t))
                        .chain((t..m.cols).map(|j| (t, j)))
                        .filter(|&(i, j)| !m.get(i, j).is_zero())
                        .min_by_key(|&(i, j)| m.get(i, j).degree())
                        .expect("pivot is nonzero");
                    m.swap_rows(t, best.0);
                    m.swap_cols(t, best.1);
                    continue;
                }
                // Row and column are clear; enforce divisibility of the rest.
                let offender = (t + 1..m.rows)
                    .flat_map(|i| (t + 1..m.cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !m.get(t, t).divides(m.get(i, j)));
                match offender {
                    Some((i, _)) => m.row_add(t, i),
                    None => break,
                }
            }
            diag.push(m.get(t, t).monic());
        }
        diag
    }

    fn min_degree_entry(&self, t: usize) -> Option<(usize, usize)> {
        (t..self.rows)
            .flat_map(|i| (t..self.cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !self.get(i, j).is_zero())
            .min_by_key(|&(i, j)| self.get(i, j).degree())
    }

    fn normalize_pivot(&mut self, t: usize) {
        let inv = self.get(t, t).lead().inv().expect("nonzero pivot");
        for j in 0..self.cols {
            let v = self.get(t, j).scale(&inv);
            self.set(t, j, v);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row_i -= f * row_t
    fn row_sub_multiple(&mut self, i: usize, t: usize, f: &Poly) {
        for j in 0..self.cols {
            let v = self.get(i, j) - &(f * self.get(t, j));
            self.set(i, j, v);
        }
    }

    /// col_j -= f * col_t
    fn col_sub_multiple(&mut self, j: usize, t: usize, f: &Poly) {
        for i in 0..self.rows {
            let v = self.get(i, j) - &(f * self.get(i, t));
            self.set(i, j, v);
        }
    }

    /// row_t += row_i
    fn row_add(&mut self, t: usize, i: usize) {
        for j in 0..self.cols {
            let v = self.get(t, j) + self.get(i, j);
            self.set(t, j, v);
        }
    }
}

impl MatPoly {
    /// Leading zero coefficient matrices are dropped (the zero matrix keeps degree 0).
    pub fn new(mut coeffs: Vec<ScalarMat>) -> Result<Self> {
        let Some(first) = coeffs.first() else {
            return Err(Error::Schema("matrix polynomial needs at least one coefficient".into()));
        };
        let (r, c) = (first.rows(), first.cols());
        if let Some(bad) = coeffs.iter().find(|m| m.rows() != r || m.cols() != c) {
            return Err(Error::DimensionMismatch {
                expected: r * c,
                found: bad.rows() * bad.cols(),
            });
        }
        while coeffs.len() > 1 && coeffs.last().is_some_and(ScalarMat::is_zero) {
            coeffs.pop();
        }
        Ok(Self { coeffs })
    }

    pub fn from_poly_mat(m: &PolyMat) -> Self {
        let deg = m.entries.iter().filter_map(Poly::degree).max().unwrap_or(0);
        let coeffs = (0..=deg)
            .map(|k| {
                ScalarMat::new(m.rows, m.cols, m.entries.iter().map(|p| p.coeff(k)).collect()).expect("shape preserved")
            })
            .collect();
        Self::new(coeffs).expect("consistent shapes")
    }

    pub fn to_poly_mat(&self) -> PolyMat {
        let (r, c) = (self.rows(), self.cols());
        let entries = (0..r * c)
            .map(|idx| Poly::new(self.coeffs.iter().map(|a| a.get(idx / c, idx % c).clone()).collect()))
            .collect();
        PolyMat::new(r, c, entries).expect("shape preserved")
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ScalarMat] {
        &self.coeffs
    }

    pub fn rows(&self) -> usize {
        self.coeffs[0].rows()
    }

    pub fn cols(&self) -> usize {
        self.coeffs[0].cols()
    }

    /// `L^{(p)}(alpha) / p!`, computed from the coefficient matrices directly.
    pub fn scaled_derivative_at(&self, p: usize, alpha: &GaussianRational) -> ScalarMat {
        let mut acc = ScalarMat::zeros(self.rows(), self.cols());
        for (j, a) in self.coeffs.iter().enumerate().skip(p) {
            // d^p/dz^p z^j / p! = C(j, p) z^{j-p}
            let factor = &GaussianRational::from(binomial(j, p)) * &alpha.pow((j - p) as u32);
            if factor.is_zero() {
                continue;
            }
            acc = acc.add(&a.scale(&factor)).expect("same shape");
        }
        acc
    }

    pub fn eval(&self, alpha: &GaussianRational) -> ScalarMat {
        self.scaled_derivative_at(0, alpha)
    }
}

fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let mut acc: i64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i64 / (i + 1) as i64;
    }
    acc
}

/// Partial multiplicities of `n` at `alpha`: the positive `(z - alpha)`-valuations
/// of its invariant factors, ascending.
pub fn local_smith(n: &MatPoly, alpha: &GaussianRational) -> Result<Vec<usize>> {
    let m = n.to_poly_mat();
    if m.rows() != m.cols() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let inv = m.smith_invariants();
    if inv.iter().any(Poly::is_zero) {
        return Err(Error::SingularMatrixFunction);
    }
    let mut ks: Vec<usize> = inv
        .iter()
        .map(|d| d.valuation_at(alpha).expect("nonzero invariant factor"))
        .filter(|&k| k > 0)
        .collect();
    ks.sort_unstable();
    Ok(ks)
}

/// All `n` valuations (zeros included) of the invariant factors at `alpha`.
pub(crate) fn smith_valuations(m: &PolyMat, alpha: &GaussianRational) -> Result<Vec<usize>> {
    let inv = m.smith_invariants();
    if inv.iter().any(Poly::is_zero) {
        return Err(Error::SingularMatrixFunction);
    }
    Ok(inv.iter().map(|d| d.valuation_at(alpha).expect("nonzero")).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let m = PolyMat::from_rows(vec![
            vec![p(&[1, 1]), p(&[2]), p(&[0, 0, 1])],
            vec![p(&[0]), p(&[-1, 1]), p(&[3])],
            vec![p(&[0, 1]), p(&[1]), p(&[1, 0, 1])],
        ])
        .unwrap();
        let g = |i: usize, j: usize| m.get(i, j).clone();
        let cof = &(&g(0, 0) * &(&(&g(1, 1) * &g(2, 2)) - &(&g(1, 2) * &g(2, 1))))
            - &(&g(0, 1) * &(&(&g(1, 0) * &g(2, 2)) - &(&g(1, 2) * &g(2, 0))));
        let cof = &cof + &(&g(0, 2) * &(&(&g(1, 0) * &g(2, 1)) - &(&g(1, 1) * &g(2, 0))));
        assert_eq!(m.determinant().unwrap(), cof);
    }

    #[test]
    fn smith_of_diagonal() {
        let a = q(3, 1);
        let w = Poly::linear_factor(&a);
        let d = PolyMat::diagonal(vec![w.pow(2), w.clone(), Poly::one()]);
        let n = MatPoly::from_poly_mat(&d);
        assert_eq!(local_smith(&n, &a).unwrap(), vec![1, 2]);
        let inv = d.smith_invariants();
        assert_eq!(inv, vec![Poly::one(), w.clone(), w.pow(2)]);
    }

    #[test]
    fn smith_rejects_singular() {
        let d = PolyMat::diagonal(vec![Poly::one(), Poly::zero()]);
        assert_eq!(
            local_smith(&MatPoly::from_poly_mat(&d), &q(0, 1)),
            Err(Error::SingularMatrixFunction)
        );
    }

    #[test]
    fn smith_needs_divisibility_fix() {
        // diag(z, z-1) has invariant factors 1, z(z-1).
        let d = PolyMat::diagonal(vec![p(&[0, 1]), p(&[-1, 1])]);
        assert_eq!(d.smith_invariants(), vec![Poly::one(), p(&[0, -1, 1])]);
    }

    #[test]
    fn scaled_derivatives_of_matpoly() {
        // L(z) = A2 z^2 + A0; L'(2)/1! = 4 A2; L''(2)/2! = A2
        let a2 = ScalarMat::from_ints(&[&[1, 2], &[0, 1]]);
        let a0 = ScalarMat::from_ints(&[&[5, 0], &[1, 1]]);
        let zero = ScalarMat::zeros(2, 2);
        let l = MatPoly::new(vec![a0.clone(), zero, a2.clone()]).unwrap();
        assert_eq!(l.scaled_derivative_at(1, &q(2, 1)), a2.scale(&q(4, 1)));
        assert_eq!(l.scaled_derivative_at(2, &q(2, 1)), a2);
        assert_eq!(l.eval(&q(0, 1)), a0);
        assert_eq!(MatPoly::from_poly_mat(&l.to_poly_mat()), l);
    }
}
