use std::fmt;

use super::{MatPoly, PolyMat, ScalarMat};
use crate::algebra::{GaussianRational, Poly, RatFun};
use crate::error::{Error, Result};

/// Matrix over the rational-function field, row-major, all entries reduced.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    entries: Vec<RatFun>,
}

impl RatMat {
    pub fn new(rows: usize, cols: usize, entries: Vec<RatFun>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<RatFun>>) -> Result<Self> {
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

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![RatFun::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = RatFun::one();
        }
        m
    }

    pub fn from_poly_mat(m: &PolyMat) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.entries().iter().cloned().map(RatFun::from_poly).collect(),
        }
    }

    pub fn from_mat_poly(m: &MatPoly) -> Self {
        Self::from_poly_mat(&m.to_poly_mat())
    }

    pub fn from_scalar(m: &ScalarMat) -> Self {
        Self::from_rows(
            m.to_rows()
                .into_iter()
                .map(|r| r.into_iter().map(RatFun::constant).collect())
                .collect(),
        )
        .expect("rectangular")
    }

    /// `Some` if every entry is a polynomial.
    pub fn to_poly_mat(&self) -> Option<PolyMat> {
        self.entries.iter().all(RatFun::is_polynomial).then(|| {
            PolyMat::new(
                self.rows,
                self.cols,
                self.entries.iter().map(|f| f.num().clone()).collect(),
            )
            .expect("shape preserved")
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFun {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, f: RatFun) {
        self.entries[i * self.cols + j] = f;
    }

    pub fn entries(&self) -> &[RatFun] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[RatFun] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    fn map(&self, f: impl FnMut(&RatFun) -> RatFun) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        self.map(|f| f.scale(c))
    }

    pub fn scale_by(&self, g: &RatFun) -> Self {
        self.map(|f| f * g)
    }

    pub fn mul(&self, other: &RatMat) -> Result<RatMat> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = RatFun::zero();
                for k in 0..self.cols {
                    acc = &acc + &(self.get(i, k) * other.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// `Q(z) phi(z)` for a vector of rational functions.
    pub fn mul_vec(&self, phi: &[RatFun]) -> Result<Vec<RatFun>> {
        if phi.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: phi.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(phi)
                    .fold(RatFun::zero(), |acc, (a, x)| &acc + &(a * x))
            })
            .collect())
    }

    /// Entrywise evaluation; fails at the first entry with a pole at `alpha`.
    pub fn eval(&self, alpha: &GaussianRational) -> Result<ScalarMat> {
        let mut data = Vec::with_capacity(self.entries.len());
        for (idx, f) in self.entries.iter().enumerate() {
            match f.eval(alpha) {
                Ok(v) => data.push(v),
                Err(Error::PoleAtPoint { .. }) | Err(Error::RemovablePoint { .. }) => {
                    return Err(Error::EntryPole {
                        row: idx / self.cols,
                        col: idx % self.cols,
                    })
                }
                Err(e) => return Err(e),
            }
        }
        ScalarMat::new(self.rows, self.cols, data)
    }

    /// Entrywise `p`-fold derivative.
    pub fn derivative(&self, p: usize) -> Self {
        self.map(|f| f.nth_derivative(p))
    }

    /// Largest pole order of any entry at `alpha`, with the first entry attaining it.
    pub fn entry_pole_order(&self, alpha: &GaussianRational) -> (usize, Option<(usize, usize)>) {
        let mut best = (0, None);
        for (idx, f) in self.entries.iter().enumerate() {
            let m = f.pole_order_at(alpha);
            if m > best.0 {
                best = (m, Some((idx / self.cols, idx % self.cols)));
            }
        }
        best
    }

    /// Monic lcm of all entry denominators.
    pub fn common_denominator(&self) -> Poly {
        self.entries.iter().fold(Poly::one(), |acc, f| acc.lcm(f.den()))
    }

    /// `(N, d)` with `Q = N / d`, `d` the lcm of all denominators.
    pub fn clear_denominators(&self) -> (PolyMat, Poly) {
        let d = self.common_denominator();
        let entries = self
            .entries
            .iter()
            .map(|f| f.num() * &d.div_exact(f.den()).expect("lcm is a multiple"))
            .collect();
        (PolyMat::new(self.rows, self.cols, entries).expect("shape preserved"), d)
    }

    /// As [`RatMat::clear_denominators`], requiring `alpha` to be a point of holomorphy.
    pub fn clear_denominators_at(&self, alpha: &GaussianRational) -> Result<(MatPoly, Poly)> {
        if let (_, Some((row, col))) = self.entry_pole_order(alpha) {
            return Err(Error::EntryPole { row, col });
        }
        let (n, d) = self.clear_denominators();
        Ok((MatPoly::from_poly_mat(&n), d))
    }

    /// Exact determinant: clear each row by the lcm of its denominators, run
    /// Bareiss on the polynomial matrix, divide by the row multipliers.
    pub fn determinant(&self) -> Result<RatFun> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut multiplier = Poly::one();
        let mut entries = Vec::with_capacity(self.entries.len());
        for i in 0..self.rows {
            let row = self.row(i);
            let l = row.iter().fold(Poly::one(), |acc, f| acc.lcm(f.den()));
            entries.extend(
                row.iter()
                    .map(|f| f.num() * &l.div_exact(f.den()).expect("lcm is a multiple")),
            );
            multiplier = &multiplier * &l;
        }
        let det = PolyMat::new(self.rows, self.cols, entries)?.determinant()?;
        RatFun::new(det, multiplier)
    }

    /// Smith–McMillan exponents at a point: invariant-factor valuations of the
    /// cleared numerator minus the valuation of the common denominator. Positive
    /// entries are zero orders, negative entries pole orders.
    pub fn local_exponents(&self, alpha: &GaussianRational) -> Result<Vec<i64>> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let (n, d) = self.clear_denominators();
        let v = d.valuation_at(alpha).expect("nonzero denominator") as i64;
        let ks = super::smith_valuations(&n, alpha)?;
        let mut out: Vec<i64> = ks.into_iter().map(|k| k as i64 - v).collect();
        out.sort_unstable();
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RatFun::is_zero)
    }
}

impl fmt::Display for RatMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl fmt::Debug for RatMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
