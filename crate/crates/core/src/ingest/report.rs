//! Command reports and their human and JSON renderings.
//!
//! Exact values are carried as strings; floats appear only in items tagged
//! with numeric provenance.

use std::fmt::Write as _;

use serde::Serialize;

pub const SCHEMA: &str = "rootchain.report/v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Human,
    Structured,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InputRef {
    pub role: String,
    pub digest: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub version: &'static str,
    /// Subcommand and its options, without file paths.
    pub command: Vec<String>,
    pub input_digest: String,
    pub inputs: Vec<InputRef>,
    pub results: Results,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Results {
    Analyze(AnalyzeResult),
    Chain(ChainResult),
    RootFunction(RootFunctionResult),
    OdeRecip(RecipResult),
    OdeLinear(LinearResult),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum PointValue {
    Exact(String),
    Numeric(ComplexValue),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointRow {
    pub point: PointValue,
    pub provenance: &'static str,
    pub classification: &'static str,
    pub chi_zero_order: usize,
    pub chi_pole_order: usize,
    pub entry_pole_order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub local_exponents: Option<Vec<i64>>,
    /// Length of the floating-point chain at numeric zeros.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numeric_chain_length: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalyzeResult {
    pub size: [usize; 2],
    pub det: String,
    pub points: Vec<PointRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Exhaustive {
    pub partial_multiplicities: Vec<usize>,
    pub maximal_chain: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainResult {
    pub alpha: String,
    pub provenance: &'static str,
    pub chain: Vec<String>,
    pub length: usize,
    /// `inconsistent` or `max-length`.
    pub termination: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inconsistent_step: Option<usize>,
    pub max_partial_multiplicity: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exhaustive: Option<Exhaustive>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootFunctionResult {
    pub alpha: String,
    pub provenance: &'static str,
    pub phi: Vec<String>,
    pub product: Vec<String>,
    pub requested_order: usize,
    pub exact_order: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NumericCheck {
    pub provenance: &'static str,
    pub samples: Vec<String>,
    pub max_residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RecipEigen {
    pub alpha: String,
    pub eigenvectors: Vec<String>,
    /// Denominators `p_i` of `u_i = e^{alpha t} / p_i`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solution: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CandidateResult {
    pub alpha: String,
    pub p: Vec<String>,
    pub residual: Vec<String>,
    pub solves: Vec<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numeric: Option<NumericCheck>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RecipResult {
    pub provenance: &'static str,
    pub matrix: Vec<Vec<String>>,
    pub det: String,
    pub eigen_solutions: Vec<RecipEigen>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub candidate: Option<CandidateResult>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LinearResult {
    pub alpha: String,
    pub provenance: &'static str,
    pub chain_relations_hold: bool,
    pub p: Vec<String>,
    pub residual: Vec<String>,
    pub solves: bool,
    pub numeric: NumericCheck,
}

fn human_vec(items: &[String]) -> String {
    format!("({})", items.join(", "))
}

/// Fixed 12-digit rendering; values that round to zero print without a sign.
fn fixed(x: f64) -> String {
    let s = format!("{x:.12}");
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => s,
    }
}

fn point_text(p: &PointValue) -> String {
    match p {
        PointValue::Exact(s) => s.clone(),
        PointValue::Numeric(c) if c.im == 0.0 => fixed(c.re),
        PointValue::Numeric(c) => format!(
            "{} {} {}i",
            fixed(c.re),
            if c.im < 0.0 { '-' } else { '+' },
            fixed(c.im.abs())
        ),
    }
}

fn render_points(out: &mut String, title: &str, empty: &str, rows: &[&PointRow], order: impl Fn(&PointRow) -> String) {
    if rows.is_empty() {
        let _ = writeln!(out, "{empty}");
        return;
    }
    let _ = writeln!(out, "{title}:");
    for r in rows {
        let _ = writeln!(out, "  z = {}  {}  [{}]", point_text(&r.point), order(r), r.provenance);
    }
}

fn render_analyze(out: &mut String, a: &AnalyzeResult) {
    let _ = writeln!(out, "det Q(z) = {}", a.det);
    let by = |c: &str| a.points.iter().filter(|p| p.classification == c).collect::<Vec<_>>();
    render_points(out, "zeros", "no zeros found", &by("zero"), |r| {
        let mut s = format!("order {}", r.chi_zero_order);
        if let Some(exps) = &r.local_exponents {
            let _ = write!(s, ", partial multiplicities {exps:?}");
        }
        if let Some(n) = r.numeric_chain_length {
            let _ = write!(s, ", chain length {n}");
        }
        s
    });
    render_points(out, "poles", "no poles found", &by("pole"), |r| {
        format!(
            "order {}, max entry pole order {}",
            r.chi_pole_order, r.entry_pole_order
        )
    });
    let mixed = by("mixed-candidate");
    if !mixed.is_empty() {
        render_points(out, "mixed zero/pole points", "", &mixed, |r| {
            match &r.local_exponents {
                Some(e) => format!("local exponents {e:?}, max entry pole order {}", r.entry_pole_order),
                None => format!("max entry pole order {}", r.entry_pole_order),
            }
        });
    }
}

fn render_chain(out: &mut String, c: &ChainResult) {
    let _ = writeln!(out, "alpha = {}", c.alpha);
    let _ = writeln!(out, "chain (length {}):", c.length);
    for (j, v) in c.chain.iter().enumerate() {
        let _ = writeln!(out, "  phi_{j} = {v}");
    }
    match c.inconsistent_step {
        Some(j) => {
            let _ = writeln!(out, "step {j} is inconsistent for the selected vectors");
        }
        None => {
            let _ = writeln!(out, "stopped at the length limit");
        }
    }
    let _ = writeln!(out, "max partial multiplicity: {}", c.max_partial_multiplicity);
    if let Some(e) = &c.exhaustive {
        let _ = writeln!(out, "partial multiplicities: {:?}", e.partial_multiplicities);
        let _ = writeln!(out, "maximal chain:");
        for (j, v) in e.maximal_chain.iter().enumerate() {
            let _ = writeln!(out, "  phi_{j} = {v}");
        }
    }
}

fn render_rootfn(out: &mut String, r: &RootFunctionResult) {
    let _ = writeln!(out, "alpha = {}", r.alpha);
    let _ = writeln!(out, "phi(z) = {}", human_vec(&r.phi));
    let _ = writeln!(out, "Q(z) phi(z) = {}", human_vec(&r.product));
    let _ = writeln!(
        out,
        "zero order {} (requested {}): {}",
        r.exact_order,
        r.requested_order,
        if r.ok { "ok" } else { "not satisfied" }
    );
}

fn render_numeric(out: &mut String, n: &NumericCheck) {
    let _ = writeln!(
        out,
        "numeric check at t = {}: max residual {:.3e}  [{}]",
        n.samples.join(", "),
        n.max_residual,
        n.provenance
    );
}

fn render_recip(out: &mut String, r: &RecipResult) {
    let rows: Vec<String> = r.matrix.iter().map(|row| format!("[{}]", row.join(", "))).collect();
    let _ = writeln!(out, "Q(z) = [{}]", rows.join(", "));
    let _ = writeln!(out, "det Q(z) = {}", r.det);
    if r.eigen_solutions.is_empty() {
        let _ = writeln!(out, "no zeros found");
    }
    for e in &r.eigen_solutions {
        let _ = writeln!(out, "alpha = {}: eigenvectors {}", e.alpha, e.eigenvectors.join(", "));
        match (&e.solution, &e.residual) {
            (Some(p), Some(res)) => {
                let parts: Vec<String> = p.iter().map(|pi| format!("e^({} t)/({pi})", e.alpha)).collect();
                let _ = writeln!(out, "  u(t) = {}", human_vec(&parts));
                let _ = writeln!(out, "  residual = {}", human_vec(res));
            }
            _ => {
                let _ = writeln!(out, "  no eigenvector with all components nonzero");
            }
        }
    }
    if let Some(c) = &r.candidate {
        let _ = writeln!(out, "candidate alpha = {}, p(t) = {}", c.alpha, human_vec(&c.p));
        for (i, (res, ok)) in c.residual.iter().zip(&c.solves).enumerate() {
            let verdict = if *ok { "satisfied" } else { "not satisfied" };
            let _ = writeln!(out, "  equation {}: R = {res}  ({verdict})", i + 1);
        }
        if let Some(n) = &c.numeric {
            render_numeric(out, n);
        }
    }
}

fn render_linear(out: &mut String, l: &LinearResult) {
    let _ = writeln!(out, "alpha = {}", l.alpha);
    let _ = writeln!(
        out,
        "chain relations: {}",
        if l.chain_relations_hold { "hold" } else { "fail" }
    );
    let _ = writeln!(out, "u(t) = {} e^({} t)", human_vec(&l.p), l.alpha);
    let _ = writeln!(out, "residual R(t) = {}", human_vec(&l.residual));
    let _ = writeln!(
        out,
        "{}",
        if l.solves {
            "solves the system"
        } else {
            "does not solve the system"
        }
    );
    render_numeric(out, &l.numeric);
}

/// Render a report; structured output is pretty-printed JSON with a trailing newline.
pub fn emit_report(report: &Report, format: Format) -> String {
    match format {
        Format::Structured => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Human => {
            let mut out = String::new();
            let _ = writeln!(out, "command: {}", report.command.join(" "));
            let _ = writeln!(out, "input: {}", report.input_digest);
            match &report.results {
                Results::Analyze(a) => render_analyze(&mut out, a),
                Results::Chain(c) => render_chain(&mut out, c),
                Results::RootFunction(r) => render_rootfn(&mut out, r),
                Results::OdeRecip(r) => render_recip(&mut out, r),
                Results::OdeLinear(l) => render_linear(&mut out, l),
            }
            out
        }
    }
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    code: &'a str,
    message: String,
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    schema: &'static str,
    version: &'static str,
    error: ErrorBody<'a>,
}

/// Structured rendering of a failure.
pub fn emit_error(err: &crate::Error) -> String {
    let r = ErrorReport {
        schema: SCHEMA,
        version: env!("CARGO_PKG_VERSION"),
        error: ErrorBody {
            code: err.code(),
            message: err.to_string(),
        },
    };
    let mut s = serde_json::to_string_pretty(&r).expect("error serializes");
    s.push('\n');
    s
}
