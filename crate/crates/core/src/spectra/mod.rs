//! Zeros, poles and entry poles of a square rational matrix function.

mod roots;

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;

use crate::algebra::{GaussianRational, Poly, RatFun};
use crate::error::{Error, Result};
use crate::ratmat::RatMat;

pub use roots::{
    cluster, numeric_roots, rational_roots, square_free_decomposition, NumericConfig, NumericRoot, RationalRoots,
};

/// `det Q(z)`, normalized.
pub fn char_function(q: &RatMat) -> Result<RatFun> {
    let chi = q.determinant()?;
    if chi.is_zero() {
        return Err(Error::SingularMatrixFunction);
    }
    Ok(chi)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Point {
    Exact(GaussianRational),
    Numeric(Complex64),
}

impl Point {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            Point::Exact(a) => a.to_complex(),
            Point::Numeric(z) => *z,
        }
    }

    pub fn as_exact(&self) -> Option<&GaussianRational> {
        match self {
            Point::Exact(a) => Some(a),
            Point::Numeric(_) => None,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Exact(a) => write!(f, "{a}"),
            Point::Numeric(z) if z.im == 0.0 => write!(f, "{:.12e}", z.re),
            Point::Numeric(z) => write!(
                f,
                "{:.12e} {} {:.12e}i",
                z.re,
                if z.im < 0.0 { '-' } else { '+' },
                z.im.abs()
            ),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    Zero,
    Pole,
    HolomorphicRegular,
    /// An entry pole at which the function also has a zero.
    MixedCandidate,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Zero => "zero",
            Classification::Pole => "pole",
            Classification::HolomorphicRegular => "holomorphic-regular",
            Classification::MixedCandidate => "mixed-candidate",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    Exact,
    Numeric,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Exact => "exact",
            Provenance::Numeric => "numeric",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZeroPoleReport {
    pub point: Point,
    pub chi_zero_order: usize,
    pub chi_pole_order: usize,
    /// Largest pole order of any entry at the point.
    pub entry_pole_order: usize,
    /// Smith–McMillan exponents, ascending; exact points only.
    pub local_exponents: Option<Vec<i64>>,
    pub classification: Classification,
    pub provenance: Provenance,
}

/// Classify an exact point against a precomputed characteristic function.
fn classify_with(q: &RatMat, chi: &RatFun, alpha: &GaussianRational) -> Result<ZeroPoleReport> {
    let v = chi.valuation_at(alpha).expect("nonzero characteristic function");
    let (entry, _) = q.entry_pole_order(alpha);
    let exps = q.local_exponents(alpha)?;
    let has_zero = exps.last().is_some_and(|&e| e > 0);
    let classification = match (entry > 0, has_zero) {
        (true, true) => Classification::MixedCandidate,
        (true, false) => Classification::Pole,
        (false, true) => Classification::Zero,
        (false, false) => Classification::HolomorphicRegular,
    };
    Ok(ZeroPoleReport {
        point: Point::Exact(alpha.clone()),
        chi_zero_order: v.max(0) as usize,
        chi_pole_order: (-v).max(0) as usize,
        entry_pole_order: entry,
        local_exponents: Some(exps),
        classification,
        provenance: Provenance::Exact,
    })
}

/// Report for a single exact point.
pub fn classify_point(q: &RatMat, alpha: &GaussianRational) -> Result<ZeroPoleReport> {
    let chi = char_function(q)?;
    classify_with(q, &chi, alpha)
}

fn cmp_exact(a: &GaussianRational, b: &GaussianRational) -> Ordering {
    a.re().cmp(b.re()).then_with(|| a.im().cmp(b.im()))
}

/// Distinct numeric roots of `p` after removing its rational roots.
fn numeric_part(p: &Poly, cfg: &NumericConfig) -> Result<Vec<NumericRoot>> {
    let rest = rational_roots(p)?.remainder;
    if rest.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    numeric_roots(&rest, cfg)
}

fn multiplicity_near(roots: &[NumericRoot], z: Complex64, radius: f64) -> usize {
    roots
        .iter()
        .filter(|r| (r.value - z).norm() <= radius)
        .map(|r| r.multiplicity)
        .max()
        .unwrap_or(0)
}

/// One report per distinct zero or pole of `det Q` and per entry-pole point.
/// Exact points come first in ascending order, then numeric ones.
///
/// Numeric points carry no local exponents; they are classified from the
/// orders of `det Q` alone, so a numeric entry pole is reported as mixed only
/// when `det Q` itself vanishes nearby.
pub fn zero_pole_report(q: &RatMat, cfg: &NumericConfig) -> Result<Vec<ZeroPoleReport>> {
    let chi = char_function(q)?;
    let mut exact: Vec<GaussianRational> = Vec::new();
    let mut polys: Vec<&Poly> = vec![chi.num(), chi.den()];
    polys.extend(q.entries().iter().map(RatFun::den));
    for p in &polys {
        for (r, _) in rational_roots(p)?.roots {
            exact.push(r);
        }
    }
    exact.sort_by(cmp_exact);
    exact.dedup();

    let mut out = Vec::new();
    for a in &exact {
        let rep = classify_with(q, &chi, a)?;
        if rep.classification != Classification::HolomorphicRegular {
            out.push(rep);
        }
    }

    let zeros = numeric_part(chi.num(), cfg)?;
    let poles = numeric_part(chi.den(), cfg)?;
    let mut entry_roots = Vec::new();
    for f in q.entries() {
        entry_roots.push(numeric_part(f.den(), cfg)?);
    }
    let mut all: Vec<NumericRoot> = zeros.iter().chain(&poles).copied().collect();
    for e in &entry_roots {
        all.extend(e.iter().copied());
    }
    let points = cluster(all, cfg.cluster_radius);
    for p in points {
        let z = p.value;
        let r = cfg.cluster_radius;
        let chi_zero_order = multiplicity_near(&zeros, z, r);
        let chi_pole_order = multiplicity_near(&poles, z, r);
        let entry_pole_order = entry_roots
            .iter()
            .map(|e| multiplicity_near(e, z, r))
            .max()
            .unwrap_or(0);
        let classification = match (entry_pole_order > 0, chi_zero_order > 0) {
            (true, true) => Classification::MixedCandidate,
            (true, false) => Classification::Pole,
            (false, true) => Classification::Zero,
            (false, false) => Classification::HolomorphicRegular,
        };
        out.push(ZeroPoleReport {
            point: Point::Numeric(z),
            chi_zero_order,
            chi_pole_order,
            entry_pole_order,
            local_exponents: None,
            classification,
            provenance: Provenance::Numeric,
        });
    }
    Ok(out)
}
