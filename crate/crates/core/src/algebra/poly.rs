use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::GaussianRational;
use crate::error::{Error, Result};

/// Dense univariate polynomial over Q(i), ascending coefficients.
///
/// The zero polynomial is the empty coefficient vector; otherwise the last
/// coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<GaussianRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// From small integer coefficients, ascending.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| GaussianRational::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate itself.
    pub fn var() -> Self {
        Self::monomial(GaussianRational::one(), 1)
    }

    pub fn monomial(c: GaussianRational, k: usize) -> Self {
        let mut coeffs = vec![GaussianRational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `z - alpha`.
    pub fn linear_factor(alpha: &GaussianRational) -> Self {
        Self::new(vec![-alpha, GaussianRational::one()])
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<GaussianRational> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> GaussianRational {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lead(&self) -> GaussianRational {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.lead().inv() {
            Some(inv) => self.scale(&inv),
            None => Self::zero(),
        }
    }

    pub fn eval(&self, x: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &GaussianRational::from(k as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Division by `z - alpha`: quotient and remainder `p(alpha)`.
    pub fn synthetic_div(&self, alpha: &GaussianRational) -> (Self, GaussianRational) {
        if self.coeffs.is_empty() {
            return (Self::zero(), GaussianRational::zero());
        }
        let n = self.coeffs.len();
        let mut quot = vec![GaussianRational::zero(); n - 1];
        let mut carry = GaussianRational::zero();
        for k in (0..n).rev() {
            let v = &self.coeffs[k] + &(&carry * alpha);
            if k == 0 {
                carry = v;
            } else {
                quot[k - 1] = v.clone();
                carry = v;
            }
        }
        (Self::new(quot), carry)
    }

    /// Coefficients of `p(w + alpha)` in ascending powers of `w = z - alpha`.
    pub fn shift(&self, alpha: &GaussianRational) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len());
        let mut cur = self.clone();
        while !cur.is_zero() {
            let (q, r) = cur.synthetic_div(alpha);
            out.push(r);
            cur = q;
        }
        Self::new(out)
    }

    /// Inverse of [`Poly::shift`]: reinterpret coefficients in `z - alpha` as a polynomial in `z`.
    pub fn unshift(&self, alpha: &GaussianRational) -> Self {
        self.shift(&-alpha)
    }

    /// Multiplicity of `alpha` as a root; `None` for the zero polynomial.
    pub fn valuation_at(&self, alpha: &GaussianRational) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let mut cur = self.clone();
        let mut v = 0;
        loop {
            let (q, r) = cur.synthetic_div(alpha);
            if !r.is_zero() {
                return Some(v);
            }
            v += 1;
            cur = q;
        }
    }

    pub fn divrem(&self, b: &Poly) -> Result<(Poly, Poly)> {
        let db = b.degree().ok_or(Error::DivisionByZeroPoly)?;
        let inv_lead = b.lead().inv().expect("nonzero lead");
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![GaussianRational::zero(); rem.len() - db];
        for k in (db..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let c = &rem[k] * &inv_lead;
            for (j, bj) in b.coeffs.iter().enumerate() {
                let t = &c * bj;
                rem[k - db + j] -= &t;
            }
            quot[k - db] = c;
        }
        rem.truncate(db);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Quotient of a division known to be exact.
    pub fn div_exact(&self, b: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(b)?;
        debug_assert!(r.is_zero(), "inexact polynomial division");
        Ok(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        match other.divrem(self) {
            Ok((_, r)) => r.is_zero(),
            Err(_) => other.is_zero(),
        }
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a
    }

    /// Monic lcm; zero if either argument is zero.
    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(other);
        (self * &other.div_exact(&g).expect("gcd divides")).monic()
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_real())
    }

    /// Render with the given variable name, e.g. `-6 + z + z^2`.
    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg_real = c.re() < &BigRational::zero();
            let neg_imag = c.re().is_zero() && c.im() < &BigRational::zero();
            let (negative, mag) = if (c.is_real() && neg_real) || neg_imag {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let needs_parens = !mag.is_real() && !mag.re().is_zero();
            let coef = if needs_parens {
                format!("({mag})")
            } else {
                mag.to_string()
            };
            match k {
                0 => out.push_str(&coef),
                _ => {
                    if !mag.is_one() {
                        out.push_str(&coef);
                        out.push('*');
                    }
                    out.push_str(var);
                    if k > 1 {
                        out.push_str(&format!("^{k}"));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("z"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl From<GaussianRational> for Poly {
    fn from(c: GaussianRational) -> Self {
        Poly::constant(c)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            (0..n)
                .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn product_expands() {
        // (z-2)(z+3) = z^2 + z - 6
        assert_eq!(&p(&[-2, 1]) * &p(&[3, 1]), p(&[-6, 1, 1]));
    }

    #[test]
    fn gcd_is_monic_common_factor() {
        // gcd(z^2-4, z^2-4z+4) = z-2
        assert_eq!(p(&[-4, 0, 1]).gcd(&p(&[4, -4, 1])), p(&[-2, 1]));
        assert_eq!(p(&[0, 0, 3]).gcd(&p(&[0, 6])), p(&[0, 1]));
        assert!(Poly::zero().gcd(&Poly::zero()).is_zero());
    }

    #[test]
    fn additive_identity() {
        let a = p(&[1, -2, 5]);
        assert_eq!(&a + &Poly::zero(), a);
        assert!((&a - &a).is_zero());
        assert_eq!(Poly::new(vec![q(0, 1)]), Poly::zero());
    }

    #[test]
    fn divrem_contract() {
        let a = p(&[1, 2, 3, 4, 5]);
        let b = p(&[1, 0, 2]);
        let (qu, r) = a.divrem(&b).unwrap();
        assert!(r.degree().unwrap_or(0) < 2);
        assert_eq!(&(&qu * &b) + &r, a);
        assert_eq!(a.divrem(&Poly::zero()), Err(Error::DivisionByZeroPoly));
    }

    #[test]
    fn shift_and_valuation() {
        // (z-2)^2 (z+3)
        let f = &p(&[-2, 1]).pow(2) * &p(&[3, 1]);
        assert_eq!(f.valuation_at(&q(2, 1)), Some(2));
        assert_eq!(f.valuation_at(&q(-3, 1)), Some(1));
        assert_eq!(f.valuation_at(&q(0, 1)), Some(0));
        let s = f.shift(&q(2, 1));
        // w^2 (w + 5)
        assert_eq!(s, p(&[0, 0, 5, 1]));
        assert_eq!(s.unshift(&q(2, 1)), f);
    }

    #[test]
    fn rendering() {
        assert_eq!(p(&[-6, 1, 1]).to_string(), "-6 + z + z^2");
        assert_eq!(p(&[0, -1, 0, 3]).to_string(), "-z + 3*z^3");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(p(&[2, 2]).fmt_var("t"), "2 + 2*t");
    }
}
