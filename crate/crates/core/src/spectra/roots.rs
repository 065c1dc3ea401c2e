use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::{GaussianRational, Poly};
use crate::error::{Error, Result};

/// Tolerances for the floating-point root finder.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericConfig {
    /// Bound on the relative residual `|p(r)| / sum |c_k| |r|^k`.
    pub residual_tol: f64,
    /// Roots closer than this are merged into one cluster.
    pub cluster_radius: f64,
    pub max_iter: usize,
}

impl Default for NumericConfig {
    fn default() -> Self {
        Self {
            residual_tol: 1e-10,
            cluster_radius: 1e-6,
            max_iter: 200,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalRoots {
    /// Distinct rational roots, ascending, with multiplicities.
    pub roots: Vec<(GaussianRational, usize)>,
    /// `p` divided by `prod (z - r)^m`; has no rational roots.
    pub remainder: Poly,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericRoot {
    pub value: Complex64,
    pub multiplicity: usize,
}

/// All roots of `p` lying in Q, found with the rational-root theorem.
///
/// For non-real coefficients only real rational roots are sought, as common
/// roots of the real and imaginary coefficient parts.
pub fn rational_roots(p: &Poly) -> Result<RationalRoots> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let real = real_part_gcd(p);
    let mut found: Vec<(GaussianRational, usize)> = Vec::new();
    if real.degree().unwrap_or(0) > 0 {
        let ints = primitive_integer_coeffs(&real);
        let mut candidates = Vec::new();
        let low = ints.iter().position(|c| !c.is_zero()).expect("nonzero polynomial");
        if low > 0 {
            candidates.push(BigRational::zero());
        }
        let trimmed = &ints[low..];
        if trimmed.len() > 1 {
            let a0 = trimmed[0].abs();
            let an = trimmed[trimmed.len() - 1].abs();
            let nums = divisors(&a0);
            let dens = divisors(&an);
            for n in &nums {
                for d in &dens {
                    if !n.gcd(d).is_one() {
                        continue;
                    }
                    let r = BigRational::new(n.clone(), d.clone());
                    candidates.push(-r.clone());
                    candidates.push(r);
                }
            }
        }
        candidates.sort();
        candidates.dedup();
        for c in candidates {
            let c = GaussianRational::real(c);
            if real.eval(&c).is_zero() {
                let m = p.valuation_at(&c).expect("nonzero polynomial");
                found.push((c, m));
            }
        }
    }
    let mut remainder = p.clone();
    for (r, m) in &found {
        for _ in 0..*m {
            remainder = remainder.synthetic_div(r).0;
        }
    }
    Ok(RationalRoots {
        roots: found,
        remainder,
    })
}

/// Real polynomial whose roots are exactly the real roots of `p`.
fn real_part_gcd(p: &Poly) -> Poly {
    if p.is_real() {
        return p.clone();
    }
    let re = Poly::new(
        p.coeffs()
            .iter()
            .map(|c| GaussianRational::real(c.re().clone()))
            .collect(),
    );
    let im = Poly::new(
        p.coeffs()
            .iter()
            .map(|c| GaussianRational::real(c.im().clone()))
            .collect(),
    );
    re.gcd(&im)
}

/// Integer coefficients with content removed, for a real polynomial.
fn primitive_integer_coeffs(p: &Poly) -> Vec<BigInt> {
    let l = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.re().denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c.re() * BigRational::from_integer(l.clone())).to_integer())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &content).collect()
}

const TRIAL_LIMIT: u64 = 1_000_000;

/// Positive divisors of `n > 0`. Factors by trial division up to 10^6; a
/// remaining cofactor is treated as prime.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut rest = n.clone();
    let mut factors: BTreeMap<BigInt, u32> = BTreeMap::new();
    let mut d = 2u64;
    while d <= TRIAL_LIMIT {
        let bd = BigInt::from(d);
        if &bd * &bd > rest {
            break;
        }
        while (&rest % &bd).is_zero() {
            rest /= &bd;
            *factors.entry(bd.clone()).or_default() += 1;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > BigInt::one() {
        *factors.entry(rest).or_default() += 1;
    }
    let mut divs = vec![BigInt::one()];
    for (prime, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for base in &divs {
            let mut pw = base.clone();
            for _ in 0..=e {
                next.push(pw.clone());
                pw *= &prime;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

/// Yun's square-free decomposition: `p = c * prod s_i^i` with each `s_i`
/// monic, square-free and pairwise coprime. Returns `(s_i, i)` for nonconstant `s_i`.
pub fn square_free_decomposition(p: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let p = p.monic();
    let dp = p.derivative();
    let a = p.gcd(&dp);
    let mut b = p.div_exact(&a).expect("gcd divides");
    let mut c = dp.div_exact(&a).expect("gcd divides");
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let s = b.gcd(&d);
        if s.degree().unwrap_or(0) > 0 {
            out.push((s.clone(), i));
        }
        b = b.div_exact(&s).expect("gcd divides");
        c = d.div_exact(&s).expect("gcd divides");
        d = &c - &b.derivative();
        i += 1;
    }
    out
}

/// Roots of `p` in floating point with multiplicity estimates.
///
/// Multiplicities come from an exact square-free decomposition; each
/// square-free factor is solved by Aberth iteration and polished by Newton
/// steps. Roots within `cluster_radius` of each other are merged.
pub fn numeric_roots(p: &Poly, cfg: &NumericConfig) -> Result<Vec<NumericRoot>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut raw = Vec::new();
    for (factor, mult) in square_free_decomposition(p) {
        let coeffs: Vec<Complex64> = factor.coeffs().iter().map(GaussianRational::to_complex).collect();
        for value in aberth(&coeffs, cfg)? {
            raw.push(NumericRoot {
                value,
                multiplicity: mult,
            });
        }
    }
    Ok(cluster(raw, cfg.cluster_radius))
}

/// Merge roots closer than `radius` (single linkage), summing multiplicities.
pub fn cluster(roots: Vec<NumericRoot>, radius: f64) -> Vec<NumericRoot> {
    let mut groups: Vec<Vec<NumericRoot>> = Vec::new();
    for r in roots {
        let hits: Vec<usize> = groups
            .iter()
            .enumerate()
            .filter(|(_, g)| g.iter().any(|x| (x.value - r.value).norm() <= radius))
            .map(|(i, _)| i)
            .collect();
        let mut merged = vec![r];
        for &i in hits.iter().rev() {
            merged.extend(groups.remove(i));
        }
        groups.push(merged);
    }
    let mut out: Vec<NumericRoot> = groups
        .into_iter()
        .map(|g| {
            let total: usize = g.iter().map(|r| r.multiplicity).sum();
            let centre = g
                .iter()
                .fold(Complex64::new(0.0, 0.0), |acc, r| acc + r.value * r.multiplicity as f64)
                / total as f64;
            NumericRoot {
                value: centre,
                multiplicity: total,
            }
        })
        .collect();
    out.sort_by(|a, b| {
        a.value
            .re
            .total_cmp(&b.value.re)
            .then(a.value.im.total_cmp(&b.value.im))
    });
    out
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

fn relative_residual(coeffs: &[Complex64], x: Complex64) -> f64 {
    let scale: f64 = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| c.norm() * x.norm().powi(k as i32))
        .sum();
    horner(coeffs, x).0.norm() / scale.max(f64::MIN_POSITIVE)
}

/// Simultaneous Aberth–Ehrlich iteration on a square-free polynomial.
fn aberth(coeffs: &[Complex64], cfg: &NumericConfig) -> Result<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    if n == 1 {
        return Ok(vec![-monic[0]]);
    }
    let radius = {
        let a0 = monic[0].norm();
        if a0 > 0.0 {
            a0.powf(1.0 / n as f64)
        } else {
            1.0
        }
    };
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    let mut converged = false;
    for _ in 0..cfg.max_iter {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let (p, dp) = horner(&monic, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| Complex64::new(1.0, 0.0) / (z[k] - z[j]))
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if step.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm() / z[k].norm().max(1.0));
            }
        }
        if max_step <= 1e-14 {
            converged = true;
            break;
        }
    }
    for r in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(&monic, *r);
            if dp.norm() == 0.0 {
                break;
            }
            let next = *r - p / dp;
            if relative_residual(&monic, next) <= relative_residual(&monic, *r) {
                *r = next;
            }
        }
    }
    let ok = z.iter().all(|&r| relative_residual(&monic, r) <= cfg.residual_tol);
    if !ok || (!converged && !z.iter().all(|&r| relative_residual(&monic, r) <= 1e-14)) {
        return Err(Error::ConvergenceFailure {
            iterations: cfg.max_iter,
        });
    }
    Ok(z)
}
