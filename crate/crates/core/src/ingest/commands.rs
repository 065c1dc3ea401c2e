use std::path::{Path, PathBuf};

use super::docs::{
    digest, parse_candidate, parse_chain, parse_mat_poly, parse_matrix, parse_recip_system, parse_root_function,
    read_input,
};
use super::parse::parse_scalar;
use super::report::{
    AnalyzeResult, CandidateResult, ChainResult, ComplexValue, Exhaustive, InputRef, LinearResult, NumericCheck,
    PointRow, PointValue, RecipEigen, RecipResult, Report, Results, RootFunctionResult, SCHEMA,
};
use crate::algebra::{GaussianRational, Poly, RatFun};
use crate::error::{Error, Result};
use crate::jordan::{
    apply, build_root_function, extend_chain_greedy, max_partial_multiplicity, maximal_chain, numeric_chain,
    partial_multiplicities, verify_zero_order, JordanChain, RootFunction, Termination, DEFAULT_SVD_THRESHOLD,
};
use crate::odes::{
    assoc_matrix, find_recip_solutions, linear_solution, numeric_residual_linear, numeric_residual_recip,
    verify_linear_residual, verify_recip_candidate,
};
use crate::ratmat::{fmt_vec, RatMat};
use crate::spectra::{char_function, zero_pole_report, Classification, NumericConfig, Point};

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    Analyze {
        input: PathBuf,
    },
    Chain {
        input: PathBuf,
        alpha: String,
        max_len: usize,
        exhaustive: bool,
    },
    RootFn {
        input: PathBuf,
        alpha: String,
        max_len: usize,
        exhaustive: bool,
    },
    Verify {
        input: PathBuf,
        alpha: String,
        rootfn: PathBuf,
        order: usize,
    },
    OdeRecip {
        input: PathBuf,
        candidate: Option<PathBuf>,
    },
    OdeLinear {
        input: PathBuf,
        alpha: String,
        chain: PathBuf,
    },
}

/// Sample times for numeric cross-checks.
const SAMPLES: [(i64, i64); 3] = [(0, 1), (1, 2), (1, 1)];

fn samples() -> Vec<GaussianRational> {
    SAMPLES
        .iter()
        .map(|&(n, d)| GaussianRational::from_frac(n, d))
        .collect()
}

fn strings_z(fs: &[RatFun]) -> Vec<String> {
    fs.iter().map(|f| f.fmt_var("z")).collect()
}

fn strings_t(ps: &[Poly]) -> Vec<String> {
    ps.iter().map(|p| p.fmt_var("t")).collect()
}

fn vectors(v: &[Vec<GaussianRational>]) -> Vec<String> {
    v.iter().map(|x| fmt_vec(x)).collect()
}

struct Ctx {
    command: Vec<String>,
    inputs: Vec<InputRef>,
}

impl Ctx {
    fn new(command: Vec<String>) -> Self {
        Self {
            command,
            inputs: Vec::new(),
        }
    }

    fn read(&mut self, role: &str, path: &Path) -> Result<Vec<u8>> {
        let bytes = read_input(path)?;
        self.inputs.push(InputRef {
            role: role.into(),
            digest: digest(&bytes),
        });
        Ok(bytes)
    }

    fn finish(self, results: Results) -> Report {
        Report {
            schema: SCHEMA,
            version: env!("CARGO_PKG_VERSION"),
            command: self.command,
            input_digest: self.inputs[0].digest.clone(),
            inputs: self.inputs,
            results,
        }
    }
}

fn analyze(q: &RatMat, cfg: &NumericConfig) -> Result<AnalyzeResult> {
    let chi = char_function(q)?;
    let mut points = Vec::new();
    for r in zero_pole_report(q, cfg)? {
        let (point, numeric_chain_length) = match &r.point {
            Point::Exact(a) => (PointValue::Exact(a.to_string()), None),
            Point::Numeric(z) => {
                let len = if r.classification == Classification::Zero {
                    numeric_chain(q, *z, 8, DEFAULT_SVD_THRESHOLD)
                        .ok()
                        .map(|c| c.vectors.len())
                } else {
                    None
                };
                (PointValue::Numeric(ComplexValue { re: z.re, im: z.im }), len)
            }
        };
        let local_exponents = r.local_exponents.clone();
        points.push(PointRow {
            point,
            provenance: r.provenance.as_str(),
            classification: r.classification.as_str(),
            chi_zero_order: r.chi_zero_order,
            chi_pole_order: r.chi_pole_order,
            entry_pole_order: r.entry_pole_order,
            local_exponents,
            numeric_chain_length,
        });
    }
    Ok(AnalyzeResult {
        size: [q.rows(), q.cols()],
        det: chi.fmt_var("z"),
        points,
    })
}

fn chain_result(q: &RatMat, alpha: &GaussianRational, max_len: usize, exhaustive: bool) -> Result<ChainResult> {
    let greedy = extend_chain_greedy(q, alpha, max_len)?;
    let max = max_partial_multiplicity(q, alpha)?;
    let inconsistent_step = match &greedy.termination {
        Termination::Inconsistent(step) => Some(step.index),
        Termination::MaxLength => None,
    };
    let exhaustive = if exhaustive {
        Some(Exhaustive {
            partial_multiplicities: partial_multiplicities(q, alpha)?,
            maximal_chain: vectors(&maximal_chain(q, alpha)?.vectors),
        })
    } else {
        None
    };
    Ok(ChainResult {
        alpha: alpha.to_string(),
        provenance: "exact",
        chain: vectors(&greedy.chain.vectors),
        length: greedy.chain.len(),
        termination: if inconsistent_step.is_some() {
            "inconsistent"
        } else {
            "max-length"
        },
        inconsistent_step,
        max_partial_multiplicity: max,
        exhaustive,
    })
}

fn rootfn_result(q: &RatMat, phi: &RootFunction, order: usize) -> Result<RootFunctionResult> {
    let check = verify_zero_order(q, phi, order)?;
    let product = apply(q, phi)?;
    let phi_polys: Vec<RatFun> = phi.to_polys().into_iter().map(RatFun::from_poly).collect();
    Ok(RootFunctionResult {
        alpha: phi.alpha.to_string(),
        provenance: "exact",
        phi: strings_z(&phi_polys),
        product: strings_z(&product),
        requested_order: order,
        exact_order: check.exact_order,
        ok: check.ok,
    })
}

/// Execute a command and build its report. `numeric` controls the numeric root finder.
pub fn run(cmd: &Command, numeric: &NumericConfig) -> Result<Report> {
    match cmd {
        Command::Analyze { input } => {
            let mut ctx = Ctx::new(vec!["analyze".into()]);
            let q = parse_matrix(&ctx.read("matrix", input)?)?;
            let res = analyze(&q, numeric)?;
            Ok(ctx.finish(Results::Analyze(res)))
        }
        Command::Chain {
            input,
            alpha,
            max_len,
            exhaustive,
        } => {
            let mut echo = vec![
                "chain".into(),
                format!("--alpha={alpha}"),
                format!("--max-len={max_len}"),
            ];
            if *exhaustive {
                echo.push("--exhaustive".into());
            }
            let mut ctx = Ctx::new(echo);
            let q = parse_matrix(&ctx.read("matrix", input)?)?;
            let a = parse_scalar(alpha)?;
            Ok(ctx.finish(Results::Chain(chain_result(&q, &a, *max_len, *exhaustive)?)))
        }
        Command::RootFn {
            input,
            alpha,
            max_len,
            exhaustive,
        } => {
            let mut echo = vec![
                "rootfn".into(),
                format!("--alpha={alpha}"),
                format!("--max-len={max_len}"),
            ];
            if *exhaustive {
                echo.push("--exhaustive".into());
            }
            let mut ctx = Ctx::new(echo);
            let q = parse_matrix(&ctx.read("matrix", input)?)?;
            let a = parse_scalar(alpha)?;
            let chain: JordanChain = if *exhaustive {
                maximal_chain(&q, &a)?
            } else {
                extend_chain_greedy(&q, &a, *max_len)?.chain
            };
            let phi = build_root_function(&chain);
            Ok(ctx.finish(Results::RootFunction(rootfn_result(&q, &phi, chain.len())?)))
        }
        Command::Verify {
            input,
            alpha,
            rootfn,
            order,
        } => {
            let mut ctx = Ctx::new(vec![
                "verify".into(),
                format!("--alpha={alpha}"),
                format!("--order={order}"),
            ]);
            let q = parse_matrix(&ctx.read("matrix", input)?)?;
            let a = parse_scalar(alpha)?;
            let phi = parse_root_function(&ctx.read("root-function", rootfn)?, &a)?;
            Ok(ctx.finish(Results::RootFunction(rootfn_result(&q, &phi, *order)?)))
        }
        Command::OdeRecip { input, candidate } => {
            let mut echo = vec!["ode-recip".to_string()];
            if candidate.is_some() {
                echo.push("--candidate".into());
            }
            let mut ctx = Ctx::new(echo);
            let sys = parse_recip_system(&ctx.read("system", input)?)?;
            let q = assoc_matrix(&sys);
            let chi = char_function(&q)?;
            let mut eigen_solutions = Vec::new();
            for f in find_recip_solutions(&sys)? {
                let residual = match &f.solution {
                    Some(s) => Some(
                        verify_recip_candidate(&sys, s)?
                            .iter()
                            .map(|r| r.fmt_var("t"))
                            .collect(),
                    ),
                    None => None,
                };
                eigen_solutions.push(RecipEigen {
                    alpha: f.alpha.to_string(),
                    eigenvectors: vectors(&f.eigenvectors),
                    solution: f.solution.as_ref().map(|s| strings_t(&s.p)),
                    residual,
                });
            }
            let candidate = match candidate {
                Some(path) => {
                    let cand = parse_candidate(&ctx.read("candidate", path)?)?;
                    let residual = verify_recip_candidate(&sys, &cand)?;
                    let regular: Vec<GaussianRational> = samples()
                        .into_iter()
                        .filter(|t| numeric_residual_recip(&sys, &cand, std::slice::from_ref(t)).is_ok())
                        .collect();
                    let numeric = if regular.is_empty() {
                        None
                    } else {
                        Some(NumericCheck {
                            provenance: "numeric",
                            samples: regular.iter().map(ToString::to_string).collect(),
                            max_residual: numeric_residual_recip(&sys, &cand, &regular)?,
                        })
                    };
                    Some(CandidateResult {
                        alpha: cand.alpha.to_string(),
                        p: strings_t(&cand.p),
                        solves: residual.iter().map(RatFun::is_zero).collect(),
                        residual: residual.iter().map(|r| r.fmt_var("t")).collect(),
                        numeric,
                    })
                }
                None => None,
            };
            let matrix = (0..q.rows()).map(|i| strings_z(q.row(i))).collect();
            Ok(ctx.finish(Results::OdeRecip(RecipResult {
                provenance: "exact",
                matrix,
                det: chi.fmt_var("z"),
                eigen_solutions,
                candidate,
            })))
        }
        Command::OdeLinear { input, alpha, chain } => {
            let mut ctx = Ctx::new(vec!["ode-linear".into(), format!("--alpha={alpha}")]);
            let l = parse_mat_poly(&ctx.read("matrix-polynomial", input)?)?;
            let a = parse_scalar(alpha)?;
            let ch = parse_chain(&ctx.read("chain", chain)?, &a)?;
            if ch.vectors.iter().any(|v| v.len() != l.cols()) {
                return Err(Error::DimensionMismatch {
                    expected: l.cols(),
                    found: ch.vectors.iter().map(Vec::len).find(|&n| n != l.cols()).unwrap_or(0),
                });
            }
            let derivs: Vec<_> = (0..ch.len()).map(|p| l.scaled_derivative_at(p, &a)).collect();
            let chain_relations_hold = ch.satisfies(&derivs)?;
            let sol = linear_solution(&l, &ch)?;
            let residual = verify_linear_residual(&l, &sol)?;
            let ts = samples();
            let numeric = NumericCheck {
                provenance: "numeric",
                samples: ts.iter().map(ToString::to_string).collect(),
                max_residual: numeric_residual_linear(&l, &sol, &ts)?,
            };
            Ok(ctx.finish(Results::OdeLinear(LinearResult {
                alpha: a.to_string(),
                provenance: "exact",
                chain_relations_hold,
                p: strings_t(&sol.p),
                solves: residual.iter().all(Poly::is_zero),
                residual: strings_t(&residual),
                numeric,
            })))
        }
    }
}
