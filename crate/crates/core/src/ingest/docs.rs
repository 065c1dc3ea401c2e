//! JSON document formats for matrices, reciprocal systems, root functions,
//! chains and candidate solutions.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::parse::{parse_poly_in, parse_ratfun_in, parse_scalar};
use crate::algebra::{GaussianRational, Poly};
use crate::error::{Error, Result};
use crate::jordan::{JordanChain, RootFunction};
use crate::odes::{ExpRationalSolution, RecipTerm, ReciprocalSystem};
use crate::ratmat::{MatPoly, RatMat, Vector};

/// An exact value written either as a string expression or a JSON integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Literal {
    Int(i64),
    Text(String),
}

impl Literal {
    fn text(&self) -> String {
        match self {
            Literal::Int(n) => n.to_string(),
            Literal::Text(s) => s.clone(),
        }
    }
}

fn default_z() -> String {
    "z".into()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    #[serde(default = "default_z")]
    pub var: String,
    pub matrix: Vec<Vec<Literal>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDocument {
    pub m: i64,
    pub k: i64,
    pub a: Literal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecipSystemDocument {
    pub n: usize,
    pub equations: Vec<Vec<TermDocument>>,
}

/// Components of a root function as polynomials in `var`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootFunctionDocument {
    #[serde(default = "default_z")]
    pub var: String,
    pub phi: Vec<Literal>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainDocument {
    #[serde(default)]
    pub alpha: Option<Literal>,
    pub vectors: Vec<Vec<Literal>>,
}

/// `u_i = e^{alpha t} / p_i(t)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CandidateDocument {
    pub alpha: Literal,
    #[serde(default = "default_t")]
    pub var: String,
    pub p: Vec<Literal>,
}

fn default_t() -> String {
    "t".into()
}

/// Raw bytes of a file, with I/O failures mapped to `File` errors.
pub fn read_input(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| Error::File {
        path: path.display().to_string(),
        msg: e.to_string(),
    })
}

/// `sha256:<hex>` of the given bytes.
pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

fn from_json<T: for<'de> Deserialize<'de>>(bytes: &[u8]) -> Result<T> {
    serde_json::from_slice(bytes).map_err(|e| Error::Schema(e.to_string()))
}

fn entry_error(e: Error, row: usize, col: usize) -> Error {
    match e {
        Error::Syntax { pos, msg } => Error::Syntax {
            pos,
            msg: format!("entry ({}, {}): {msg}", row + 1, col + 1),
        },
        other => other,
    }
}

fn check_var(var: &str, expected: &str) -> Result<()> {
    if var != expected {
        return Err(Error::Schema(format!("variable must be `{expected}`, got `{var}`")));
    }
    Ok(())
}

impl MatrixDocument {
    pub fn to_matrix(&self) -> Result<RatMat> {
        check_var(&self.var, "z")?;
        let cols = self.matrix.first().map_or(0, Vec::len);
        if self.matrix.is_empty() || cols == 0 {
            return Err(Error::Schema("matrix must be nonempty".into()));
        }
        let mut rows = Vec::with_capacity(self.matrix.len());
        for (i, row) in self.matrix.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Schema(format!(
                    "ragged matrix: row {} has {} entries, expected {cols}",
                    i + 1,
                    row.len()
                )));
            }
            let mut parsed = Vec::with_capacity(cols);
            for (j, cell) in row.iter().enumerate() {
                parsed.push(parse_ratfun_in(&cell.text(), "z").map_err(|e| entry_error(e, i, j))?);
            }
            rows.push(parsed);
        }
        RatMat::from_rows(rows)
    }

    /// Canonical document for a matrix; parses back to an equal matrix.
    pub fn from_matrix(m: &RatMat) -> Self {
        Self {
            var: "z".into(),
            matrix: (0..m.rows())
                .map(|i| m.row(i).iter().map(|f| Literal::Text(f.fmt_var("z"))).collect())
                .collect(),
        }
    }
}

impl RecipSystemDocument {
    pub fn to_system(&self) -> Result<ReciprocalSystem> {
        if self.equations.len() != self.n {
            return Err(Error::Schema(format!(
                "expected {} equations, found {}",
                self.n,
                self.equations.len()
            )));
        }
        let mut terms = Vec::new();
        for (i, eq) in self.equations.iter().enumerate() {
            for t in eq {
                if t.m < 1 || t.m as usize > self.n {
                    return Err(Error::IndexOutOfRange {
                        index: t.m,
                        bound: self.n,
                    });
                }
                if t.k < 0 {
                    return Err(Error::Schema(format!("negative derivative order {}", t.k)));
                }
                let coeff = parse_scalar(&t.a.text())?;
                terms.push(RecipTerm {
                    equation: i,
                    unknown: t.m as usize - 1,
                    order: t.k as usize,
                    coeff,
                });
            }
        }
        ReciprocalSystem::new(self.n, terms)
    }
}

impl RootFunctionDocument {
    pub fn to_root_function(&self, alpha: &GaussianRational) -> Result<RootFunction> {
        check_var(&self.var, "z")?;
        let polys = self
            .phi
            .iter()
            .map(|s| parse_poly_in(&s.text(), "z"))
            .collect::<Result<Vec<Poly>>>()?;
        Ok(RootFunction::from_polys(alpha, &polys))
    }
}

fn parse_vector(v: &[Literal]) -> Result<Vector> {
    v.iter().map(|s| parse_scalar(&s.text())).collect()
}

impl ChainDocument {
    /// `alpha` from the flag; if the document names one too, they must agree.
    pub fn to_chain(&self, alpha: &GaussianRational) -> Result<JordanChain> {
        if let Some(a) = &self.alpha {
            if &parse_scalar(&a.text())? != alpha {
                return Err(Error::Schema(format!(
                    "chain document is for alpha = {}, not {alpha}",
                    a.text()
                )));
            }
        }
        if self.vectors.is_empty() {
            return Err(Error::Schema("chain must have at least one vector".into()));
        }
        let vectors = self
            .vectors
            .iter()
            .map(|v| parse_vector(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(JordanChain {
            alpha: alpha.clone(),
            vectors,
        })
    }
}

impl CandidateDocument {
    pub fn to_candidate(&self) -> Result<ExpRationalSolution> {
        let alpha = parse_scalar(&self.alpha.text())?;
        let p = self
            .p
            .iter()
            .map(|s| parse_poly_in(&s.text(), &self.var))
            .collect::<Result<Vec<_>>>()?;
        Ok(ExpRationalSolution { alpha, p })
    }
}

pub fn parse_matrix(bytes: &[u8]) -> Result<RatMat> {
    from_json::<MatrixDocument>(bytes)?.to_matrix()
}

pub fn load_matrix(path: &Path) -> Result<RatMat> {
    parse_matrix(&read_input(path)?)
}

/// A matrix document whose entries must all be polynomials.
pub fn parse_mat_poly(bytes: &[u8]) -> Result<MatPoly> {
    let m = parse_matrix(bytes)?;
    let p = m
        .to_poly_mat()
        .ok_or_else(|| Error::Schema("matrix polynomial entries must be polynomials".into()))?;
    Ok(MatPoly::from_poly_mat(&p))
}

pub fn parse_recip_system(bytes: &[u8]) -> Result<ReciprocalSystem> {
    from_json::<RecipSystemDocument>(bytes)?.to_system()
}

pub fn load_recip_system(path: &Path) -> Result<ReciprocalSystem> {
    parse_recip_system(&read_input(path)?)
}

pub fn parse_root_function(bytes: &[u8], alpha: &GaussianRational) -> Result<RootFunction> {
    from_json::<RootFunctionDocument>(bytes)?.to_root_function(alpha)
}

pub fn parse_chain(bytes: &[u8], alpha: &GaussianRational) -> Result<JordanChain> {
    from_json::<ChainDocument>(bytes)?.to_chain(alpha)
}

pub fn parse_candidate(bytes: &[u8]) -> Result<ExpRationalSolution> {
    from_json::<CandidateDocument>(bytes)?.to_candidate()
}
