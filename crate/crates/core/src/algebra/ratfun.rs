use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{GaussianRational, Poly};
use crate::error::{Error, Result};

/// Reduced rational function `num / den` over Q(i).
///
/// Invariants: `den` is monic, `gcd(num, den) = 1`, and zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g)?, den.div_exact(&g)?)
        };
        let inv = den.lead().inv().expect("nonzero denominator");
        Ok(Self {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn zero() -> Self {
        Self {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn var() -> Self {
        Self::from_poly(Poly::var())
    }

    pub fn from_poly(p: Poly) -> Self {
        Self {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The constant value, if the function is constant.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        (self.den.is_one() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn checked_div(&self, rhs: &RatFun) -> Result<RatFun> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZeroFunction);
        }
        RatFun::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn inv(&self) -> Result<RatFun> {
        RatFun::one().checked_div(self)
    }

    pub fn pow(&self, e: u32) -> RatFun {
        // Powers of a reduced fraction stay reduced.
        Self {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Quotient rule, then normalize.
    pub fn derivative(&self) -> RatFun {
        if self.den.is_one() {
            return Self::from_poly(self.num.derivative());
        }
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFun::new(num, &self.den * &self.den).expect("nonzero denominator")
    }

    pub fn nth_derivative(&self, p: usize) -> RatFun {
        (0..p).fold(self.clone(), |f, _| f.derivative())
    }

    pub fn eval(&self, x: &GaussianRational) -> Result<GaussianRational> {
        let d = self.den.eval(x);
        let n = self.num.eval(x);
        if d.is_zero() {
            return Err(if n.is_zero() {
                Error::RemovablePoint {
                    point: Box::new(x.clone()),
                }
            } else {
                Error::PoleAtPoint {
                    point: Box::new(x.clone()),
                }
            });
        }
        Ok(&n / &d)
    }

    /// Taylor coefficients `c_0..=c_order` at `alpha`, with `c_j = f^{(j)}(alpha) / j!`.
    ///
    /// Computed by shifting numerator and denominator to `w = z - alpha` and
    /// dividing the power series, so no factorials appear.
    pub fn taylor_coeffs(&self, alpha: &GaussianRational, order: usize) -> Result<Vec<GaussianRational>> {
        let den = self.den.shift(alpha);
        let d0 = den.coeff(0);
        if d0.is_zero() {
            return Err(if self.num.eval(alpha).is_zero() {
                Error::RemovablePoint {
                    point: Box::new(alpha.clone()),
                }
            } else {
                Error::PoleAtPoint {
                    point: Box::new(alpha.clone()),
                }
            });
        }
        let num = self.num.shift(alpha);
        let inv_d0 = d0.inv().expect("nonzero");
        let mut out: Vec<GaussianRational> = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut acc = num.coeff(k);
            for j in 1..=k.min(den.coeffs().len().saturating_sub(1)) {
                acc -= &(den.coeffs()[j].clone() * &out[k - j]);
            }
            out.push(&acc * &inv_d0);
        }
        Ok(out)
    }

    /// Order of `alpha` as a zero (positive) or pole (negative); `None` for the zero function.
    pub fn valuation_at(&self, alpha: &GaussianRational) -> Option<i64> {
        let vn = self.num.valuation_at(alpha)? as i64;
        let vd = self.den.valuation_at(alpha).expect("nonzero denominator") as i64;
        Some(vn - vd)
    }

    /// Multiplicity of `alpha` as a root of the denominator.
    pub fn pole_order_at(&self, alpha: &GaussianRational) -> usize {
        self.den.valuation_at(alpha).expect("nonzero denominator")
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.den.is_one() {
            return self.num.fmt_var(var);
        }
        let wrap = |p: &Poly| {
            let s = p.fmt_var(var);
            let atomic =
                p.coeffs().iter().filter(|c| !c.is_zero()).count() == 1 && !s.starts_with('-') && !s.contains(' ');
            if atomic {
                s
            } else {
                format!("({s})")
            }
        };
        format!("{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl Default for RatFun {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("z"))
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun({self})")
    }
}

impl From<Poly> for RatFun {
    fn from(p: Poly) -> Self {
        RatFun::from_poly(p)
    }
}

impl From<GaussianRational> for RatFun {
    fn from(c: GaussianRational) -> Self {
        RatFun::constant(c)
    }
}

impl<'a> Add<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFun::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero");
        }
        let g = self.den.gcd(&rhs.den);
        let left = rhs.den.div_exact(&g).expect("gcd divides");
        let right = self.den.div_exact(&g).expect("gcd divides");
        RatFun::new(&(&self.num * &left) + &(&rhs.num * &right), &self.den * &left).expect("nonzero")
    }
}

impl<'a> Sub<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFun::from_poly(&self.num * &rhs.num);
        }
        // Cross-cancel first to keep intermediate degrees small.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g1).expect("gcd divides");
        let n2 = rhs.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        RatFun::new(&n1 * &n2, &d1 * &d2).expect("nonzero")
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<RatFun> for RatFun {
            type Output = RatFun;
            fn $m(self, rhs: RatFun) -> RatFun {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a RatFun> for RatFun {
            type Output = RatFun;
            fn $m(self, rhs: &RatFun) -> RatFun {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);
