//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::error::Error as StdError;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rootchain::ingest::{load_matrix, load_recip_system, parse_candidate, parse_ratfun};
use rootchain::jordan::{
    apply, build_root_function, chain_step, extend_chain_greedy, max_partial_multiplicity, partial_multiplicities,
    scaled_derivs_at, vector_valuation, verify_zero_order, JordanChain, Termination,
};
use rootchain::odes::{
    assoc_matrix, linear_solution, numeric_equation_residuals, verify_linear_residual, verify_recip_candidate,
    ExpRationalSolution,
};
use rootchain::ratmat::{local_smith, MatPoly, PolyMat, RatMat, ScalarMat};
use rootchain::spectra::{char_function, numeric_roots, zero_pole_report, Classification, NumericConfig, Point};
use rootchain::{GaussianRational, Poly, RatFun};

type Check = Result<(), Box<dyn StdError>>;
type Part = fn(&mut ChaCha8Rng) -> Check;
type Criterion = (&'static str, fn() -> Check);

/// Instances per property family.
const PROPERTY_INSTANCES: usize = 500;
/// Random rational functions differentiated numerically.
const FD_FUNCTIONS: usize = 100;
/// Sample points per rational function.
const FD_POINTS: usize = 10;
/// Step of the five-point central difference.
const FD_STEP: f64 = 1e-3;
/// Relative agreement of exact and finite-difference derivatives.
const FD_REL_TOL: f64 = 1e-6;
/// Polynomials with known rational roots.
const ROOT_INSTANCES: usize = 200;
/// Distance between numeric and exact roots.
const ROOT_ABS_TOL: f64 = 1e-8;
/// Lower bound on the numeric residual of the rejected candidate.
const CANDIDATE_RESIDUAL_MIN: f64 = 0.1;
const SEED: u64 = 0x5eed_2024;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {{
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)*).into());
        }
    }};
}

fn g(n: i64) -> GaussianRational {
    GaussianRational::from_int(n)
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn rf(s: &str) -> RatFun {
    parse_ratfun(s).expect("valid literal")
}

fn rat_mat(rows: &[&[&str]]) -> RatMat {
    RatMat::from_rows(rows.iter().map(|r| r.iter().map(|s| rf(s)).collect()).collect()).expect("rectangular")
}

/// `(z - a)^k` as a polynomial.
fn lin_pow(a: &GaussianRational, k: u32) -> Poly {
    Poly::linear_factor(a).pow(k)
}

fn proportional(v: &[GaussianRational], w: &[GaussianRational]) -> bool {
    v.len() == w.len()
        && (0..v.len()).all(|i| (0..v.len()).all(|j| &v[i] * &w[j] == &v[j] * &w[i]))
        && v.iter().any(|x| !x.is_zero())
}

fn binom(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Taylor coefficient `p^{(j)}(a) / j!` straight from the monomial coefficients.
fn taylor_coeff(p: &Poly, a: &GaussianRational, j: usize) -> GaussianRational {
    let mut acc = GaussianRational::zero();
    for (k, c) in p.coeffs().iter().enumerate().skip(j) {
        acc += &(&(c * &g(binom(k, j))) * &a.pow((k - j) as u32));
    }
    acc
}

/// `Q^{(p)}(a) / p!` through repeated differentiation of each entry.
fn derivative_oracle(q: &RatMat, a: &GaussianRational, p: usize) -> Vec<Vec<GaussianRational>> {
    let mut fact = g(1);
    for i in 2..=p {
        fact = &fact * &g(i as i64);
    }
    (0..q.rows())
        .map(|i| {
            (0..q.cols())
                .map(|j| &q.get(i, j).nth_derivative(p).eval(a).expect("regular point") / &fact)
                .collect()
        })
        .collect()
}

fn mat_vec(m: &[Vec<GaussianRational>], v: &[GaussianRational]) -> Vec<GaussianRational> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(GaussianRational::zero(), |acc, (a, b)| &acc + &(a * b))
        })
        .collect()
}

/// `sum_{p<=j} T_p phi_{j-p} = 0` for every `j < len`, given Taylor coefficients `T_p`.
fn relations_hold(taylor: &[Vec<Vec<GaussianRational>>], phi: &[Vec<GaussianRational>]) -> bool {
    (0..phi.len()).all(|j| {
        let n = taylor[0].len();
        let mut acc = vec![GaussianRational::zero(); n];
        for p in 0..=j {
            for (a, b) in acc.iter_mut().zip(mat_vec(&taylor[p], &phi[j - p])) {
                *a += &b;
            }
        }
        acc.iter().all(Zero::is_zero)
    })
}

fn criterion_1() -> Check {
    let q = load_matrix(&fixture("worked_3x3.json"))?;
    let expected_det = RatFun::new(&lin_pow(&g(2), 2) * &lin_pow(&g(-3), 1), lin_pow(&g(3), 3))?;
    ensure!(q.determinant()? == expected_det, "det = {}", q.determinant()?);

    let rows: Vec<(GaussianRational, Classification, usize, usize)> = zero_pole_report(&q, &NumericConfig::default())?
        .into_iter()
        .map(|r| match r.point {
            Point::Exact(a) => Ok((a, r.classification, r.chi_zero_order, r.chi_pole_order)),
            Point::Numeric(z) => Err(format!("unexpected numeric point {z}")),
        })
        .collect::<Result<_, _>>()?;
    let expected = vec![
        (g(-3), Classification::Zero, 1, 0),
        (g(2), Classification::Zero, 2, 0),
        (g(3), Classification::Pole, 0, 3),
    ];
    ensure!(rows == expected, "zero/pole report {rows:?}");

    let greedy = extend_chain_greedy(&q, &g(2), 8)?;
    ensure!(greedy.chain.len() == 2, "chain length {}", greedy.chain.len());
    ensure!(
        proportional(&greedy.chain.vectors[0], &[g(1), g(0), g(0)]),
        "phi_0 = {:?}",
        greedy.chain.vectors[0]
    );
    let product = apply(&q, &build_root_function(&greedy.chain))?;
    let expected_product = vec![RatFun::zero(), rf("(z-2)^2/(z-3)"), RatFun::zero()];
    ensure!(product == expected_product, "Q phi = {product:?}");
    ensure!(
        matches!(&greedy.termination, Termination::Inconsistent(step) if step.index == 2),
        "termination {:?}",
        greedy.termination
    );
    ensure!(max_partial_multiplicity(&q, &g(2))? == 2, "max partial multiplicity");
    Ok(())
}

fn criterion_2() -> Check {
    let sys = load_recip_system(&fixture("recip_simple.json"))?;
    let q = assoc_matrix(&sys);
    let expected = rat_mat(&[&["2/z^2 + 1", "2/z^2 + 1/z"], &["-1/z^2 + 1/z", "1/z^2"]]);
    ensure!(q == expected, "Q = {q}");
    let chi = char_function(&q)?;
    ensure!(
        chi == RatFun::new(Poly::from_ints(&[4, -1]), lin_pow(&g(0), 4))?,
        "chi = {chi}"
    );
    let q4 = q.eval(&g(4))?;
    ensure!(
        q4.scale(&g(16)) == ScalarMat::from_ints(&[&[18, 6], &[3, 1]]),
        "16 Q(4) = {}",
        q4.scale(&g(16))
    );
    let kernel = q4.nullspace();
    ensure!(
        kernel.len() == 1 && proportional(&kernel[0], &[g(1), g(-3)]),
        "kernel {kernel:?}"
    );

    // u = (1, -1/3) e^{4t} means p = (1, -3).
    let cand = ExpRationalSolution {
        alpha: g(4),
        p: vec![Poly::constant(g(1)), Poly::constant(g(-3))],
    };
    let r = verify_recip_candidate(&sys, &cand)?;
    ensure!(r.iter().all(RatFun::is_zero), "R = {r:?}");
    // For constant p, 1/u_m^{(k)} = p_m e^{-4t} / 4^k.
    for eq in 0..2 {
        let direct = sys
            .terms()
            .iter()
            .filter(|t| t.equation == eq)
            .fold(GaussianRational::zero(), |acc, t| {
                &acc + &(&(&t.coeff * &cand.p[t.unknown].coeff(0)) / &g(4).pow(t.order as u32))
            });
        ensure!(
            direct.is_zero(),
            "direct substitution in equation {} gives {direct}",
            eq + 1
        );
    }
    Ok(())
}

fn criterion_3() -> Check {
    let sys = load_recip_system(&fixture("recip_double.json"))?;
    let q = assoc_matrix(&sys);
    let chi = char_function(&q)?;
    let expected_chi = RatFun::new(&lin_pow(&g(1), 2) * &lin_pow(&g(-2), 1), lin_pow(&g(0), 4))?;
    ensure!(chi == expected_chi, "chi = {chi}");
    ensure!(
        q.eval(&g(1))? == ScalarMat::from_ints(&[&[1, -2], &[0, 0]]),
        "Q(1) = {}",
        q.eval(&g(1))?
    );
    let dq = q.derivative(1).eval(&g(1))?;
    ensure!(dq == ScalarMat::from_ints(&[&[-1, 4], &[0, 0]]), "Q'(1) = {dq}");

    let phi0 = vec![g(2), g(1)];
    let derivs = scaled_derivs_at(&q, &g(1), 2)?;
    let step = chain_step(&derivs, std::slice::from_ref(&phi0), 1)?;
    let sol = &step.solution;
    ensure!(sol.consistent, "step 1 inconsistent");
    let particular = sol.particular.as_ref().ok_or("no particular solution")?;
    ensure!(
        particular[0] == &g(2) * &(&particular[1] - &g(1)),
        "particular {particular:?}"
    );
    ensure!(
        sol.nullspace_basis.len() == 1 && proportional(&sol.nullspace_basis[0], &[g(2), g(1)]),
        "nullspace {:?}",
        sol.nullspace_basis
    );
    let d0 = derivative_oracle(&q, &g(1), 0);
    let d1 = derivative_oracle(&q, &g(1), 1);
    let rhs: Vec<GaussianRational> = mat_vec(&d1, &phi0).iter().map(|x| -x).collect();
    for c in [g(0), g(1), g(-7), GaussianRational::from_frac(3, 2)] {
        let member = vec![&g(2) * &(&c - &g(1)), c.clone()];
        ensure!(mat_vec(&d0, &member) == rhs, "(2(c-1), c) fails at c = {c}");
    }

    let eigen = ExpRationalSolution {
        alpha: g(1),
        p: vec![Poly::constant(g(2)), Poly::constant(g(1))],
    };
    let r = verify_recip_candidate(&sys, &eigen)?;
    ensure!(r.iter().all(RatFun::is_zero), "eigen-solution residual {r:?}");

    let cand = parse_candidate(&std::fs::read(fixture("candidate_double.json"))?)?;
    ensure!(
        cand.alpha == g(1) && cand.p == vec![Poly::from_ints(&[2, 2]), Poly::from_ints(&[2, 1])],
        "candidate"
    );
    let r = verify_recip_candidate(&sys, &cand)?;
    ensure!(!r[0].is_zero(), "R_1 vanishes");
    let numeric = numeric_equation_residuals(&sys, &cand, &[g(1)])?;
    ensure!(numeric[0] > CANDIDATE_RESIDUAL_MIN, "numeric R_1(1) = {}", numeric[0]);
    Ok(())
}

fn criterion_4() -> Check {
    let q = load_matrix(&fixture("mixed_point.json"))?;
    match extend_chain_greedy(&q, &g(0), 8) {
        Err(e) => ensure!(e.code() == "MIXED_POINT", "error code {}", e.code()),
        Ok(c) => return Err(format!("chain accepted: {}", c.chain).into()),
    }
    let phis = [["1", "z", "0"], ["1", "0", "z^2"], ["1", "0", "0"]];
    for phi in phis {
        let v: Vec<RatFun> = phi.iter().map(|s| rf(s)).collect();
        let prod = q.mul_vec(&v)?;
        let val = vector_valuation(&prod, &g(0));
        ensure!(val.is_none_or(|k| k >= 1), "valuation of Q phi for {phi:?} is {val:?}");
        for f in &prod {
            ensure!(f.eval(&g(0))?.is_zero(), "Q phi for {phi:?} does not vanish at 0");
        }
    }
    Ok(())
}

fn random_alpha(rng: &mut ChaCha8Rng) -> GaussianRational {
    let re = GaussianRational::from_int(rng.random_range(-3..=3));
    if rng.random_bool(0.25) {
        &re + &(&GaussianRational::i() * &g(rng.random_range(-2..=2)))
    } else {
        re
    }
}

fn nonzero(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> i64 {
    loop {
        let v = rng.random_range(lo..=hi);
        if v != 0 {
            return v;
        }
    }
}

/// Random unimodular polynomial matrix and its inverse, built from elementary operations.
fn unimodular(rng: &mut ChaCha8Rng, n: usize, ops: usize, max_deg: usize) -> (PolyMat, PolyMat) {
    let mut m = PolyMat::identity(n);
    let mut inv = PolyMat::identity(n);
    for _ in 0..ops {
        let mut e = PolyMat::identity(n);
        let mut e_inv = PolyMat::identity(n);
        if n == 1 || rng.random_bool(0.2) {
            let i = rng.random_range(0..n);
            let s = GaussianRational::from_frac(nonzero(rng, -3, 3), nonzero(rng, 1, 3));
            e.set(i, i, Poly::constant(s.clone()));
            e_inv.set(i, i, Poly::constant(s.inv().expect("nonzero")));
        } else {
            let i = rng.random_range(0..n);
            let j = (i + rng.random_range(1..n)) % n;
            let deg = rng.random_range(0..=max_deg);
            let coeffs: Vec<i64> = (0..=deg).map(|_| rng.random_range(-2..=2)).collect();
            let p = Poly::from_ints(&coeffs);
            e.set(i, j, p.clone());
            e_inv.set(i, j, -&p);
        }
        m = m.mul(&e).expect("square");
        inv = e_inv.mul(&inv).expect("square");
    }
    (m, inv)
}

fn sorted_positive(ks: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = ks.iter().copied().filter(|&k| k > 0).collect();
    out.sort_unstable();
    out
}

/// Planted local structure `E diag((z - alpha)^{k_i} u_i) F`.
struct Planted {
    alpha: GaussianRational,
    ks: Vec<usize>,
    l: PolyMat,
    f_inv: PolyMat,
}

fn planted(rng: &mut ChaCha8Rng, max_k: usize, max_deg: usize, extra_zero: bool) -> Planted {
    let n = rng.random_range(1..=4);
    let alpha = random_alpha(rng);
    let mut ks: Vec<usize> = (0..n).map(|_| rng.random_range(0..=max_k)).collect();
    if ks.iter().all(|&k| k == 0) {
        ks[rng.random_range(0..n)] = rng.random_range(1..=max_k);
    }
    let other = &alpha + &g(nonzero(rng, -2, 2));
    let diag: Vec<Poly> = ks
        .iter()
        .map(|&k| {
            let d = lin_pow(&alpha, k as u32);
            if extra_zero && rng.random_bool(0.3) {
                &d * &Poly::linear_factor(&other)
            } else {
                d
            }
        })
        .collect();
    let (e, _) = unimodular(rng, n, 3, max_deg);
    let (f, f_inv) = unimodular(rng, n, 3, max_deg);
    let l = e.mul(&PolyMat::diagonal(diag)).and_then(|m| m.mul(&f)).expect("square");
    Planted { alpha, ks, l, f_inv }
}

fn criterion_5a(rng: &mut ChaCha8Rng) -> Check {
    for case in 0..PROPERTY_INSTANCES {
        let p = planted(rng, 3, 1, true);
        let expected = sorted_positive(&p.ks);
        let smith = local_smith(&MatPoly::from_poly_mat(&p.l), &p.alpha)?;
        ensure!(
            smith == expected,
            "case {case}: local_smith {smith:?}, planted {expected:?}"
        );
        let q = RatMat::from_poly_mat(&p.l);
        let pm = partial_multiplicities(&q, &p.alpha)?;
        ensure!(
            pm == expected,
            "case {case}: partial multiplicities {pm:?}, planted {expected:?}"
        );
        let max = max_partial_multiplicity(&q, &p.alpha)?;
        ensure!(
            max == *expected.last().expect("nonempty"),
            "case {case}: max {max}, planted {expected:?}"
        );
    }
    Ok(())
}

/// Random integer matrix with integer inverse.
fn unimodular_int(rng: &mut ChaCha8Rng, n: usize) -> (ScalarMat, ScalarMat) {
    let (m, inv) = unimodular(rng, n, 2 * n + 1, 0);
    let to_scalar = |p: &PolyMat| p.eval(&g(0));
    (to_scalar(&m), to_scalar(&inv))
}

struct JordanInstance {
    a: ScalarMat,
    s: ScalarMat,
    /// `(start, size, eigenvalue)` per block.
    blocks: Vec<(usize, usize, GaussianRational)>,
}

fn jordan_instance(rng: &mut ChaCha8Rng) -> JordanInstance {
    let n = rng.random_range(1..=4);
    let palette: Vec<GaussianRational> = (0..2).map(|_| random_alpha(rng)).collect();
    let mut blocks = Vec::new();
    let mut start = 0;
    while start < n {
        let size = rng.random_range(1..=n - start);
        blocks.push((start, size, palette[rng.random_range(0..palette.len())].clone()));
        start += size;
    }
    let mut j = ScalarMat::zeros(n, n);
    for (s, size, ev) in &blocks {
        for k in 0..*size {
            j.set(s + k, s + k, ev.clone());
            if k + 1 < *size {
                j.set(s + k, s + k + 1, g(1));
            }
        }
    }
    let (s, s_inv) = unimodular_int(rng, n);
    let a = s.mul(&j).and_then(|m| m.mul(&s_inv)).expect("square");
    JordanInstance { a, s, blocks }
}

/// `A - z I`.
fn shifted(a: &ScalarMat) -> RatMat {
    let mut q = RatMat::from_scalar(a);
    for i in 0..a.rows() {
        q.set(i, i, q.get(i, i) - &RatFun::var());
    }
    q
}

fn column(m: &ScalarMat, j: usize) -> Vec<GaussianRational> {
    (0..m.rows()).map(|i| m.get(i, j).clone()).collect()
}

fn criterion_5b(rng: &mut ChaCha8Rng) -> Check {
    for case in 0..PROPERTY_INSTANCES {
        let inst = jordan_instance(rng);
        let q = shifted(&inst.a);
        for (start, size, alpha) in &inst.blocks {
            let phis: Vec<Vec<GaussianRational>> = (0..*size).map(|k| column(&inst.s, start + k)).collect();
            let shifted_a: Vec<Vec<GaussianRational>> = (0..inst.a.rows())
                .map(|i| {
                    (0..inst.a.cols())
                        .map(|j| {
                            if i == j {
                                inst.a.get(i, j) - alpha
                            } else {
                                inst.a.get(i, j).clone()
                            }
                        })
                        .collect()
                })
                .collect();
            for k in 0..*size {
                let lhs = mat_vec(&shifted_a, &phis[k]);
                let rhs = if k == 0 {
                    vec![GaussianRational::zero(); phis[k].len()]
                } else {
                    phis[k - 1].clone()
                };
                ensure!(lhs == rhs, "case {case}: (A - alpha) phi_{k} != phi_{}", k as i64 - 1);
            }
            let chain = JordanChain {
                alpha: alpha.clone(),
                vectors: phis.clone(),
            };
            ensure!(
                chain.satisfies(&scaled_derivs_at(&q, alpha, *size)?)?,
                "case {case}: chain relations rejected"
            );
            let product = apply(&q, &build_root_function(&chain))?;
            let factor = RatFun::from_poly(-lin_pow(alpha, *size as u32));
            let expected: Vec<RatFun> = phis[size - 1].iter().map(|c| factor.scale(c)).collect();
            ensure!(product == expected, "case {case}: Q phi = {product:?}");
            let mut sizes: Vec<usize> = inst.blocks.iter().filter(|b| &b.2 == alpha).map(|b| b.1).collect();
            sizes.sort_unstable();
            let pm = partial_multiplicities(&q, alpha)?;
            ensure!(
                pm == sizes,
                "case {case}: partial multiplicities {pm:?}, block sizes {sizes:?}"
            );
        }
    }
    Ok(())
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<GaussianRational> {
    (0..n).map(|_| g(rng.random_range(-3..=3))).collect()
}

fn add_vec(a: &[GaussianRational], b: &[GaussianRational]) -> Vec<GaussianRational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Perturb one vector of a chain by a random nonzero offset.
fn perturb(rng: &mut ChaCha8Rng, phis: &mut [Vec<GaussianRational>]) {
    let j = rng.random_range(0..phis.len());
    let n = phis[j].len();
    let mut offset = random_vector(rng, n);
    if offset.iter().all(Zero::is_zero) {
        offset[rng.random_range(0..n)] = g(1);
    }
    phis[j] = add_vec(&phis[j], &offset);
}

fn poly_taylor(l: &PolyMat, a: &GaussianRational, p: usize) -> Vec<Vec<GaussianRational>> {
    (0..l.rows())
        .map(|i| (0..l.cols()).map(|j| taylor_coeff(l.get(i, j), a, p)).collect())
        .collect()
}

fn criterion_5c(rng: &mut ChaCha8Rng) -> Check {
    let (mut holds, mut fails) = (0, 0);
    for case in 0..PROPERTY_INSTANCES {
        let inst = jordan_instance(rng);
        let n = inst.a.rows();
        let (start, size, alpha) = inst.blocks[rng.random_range(0..inst.blocks.len())].clone();
        let len = rng.random_range(1..=size);
        let mut phis: Vec<Vec<GaussianRational>> = (0..len).map(|k| column(&inst.s, start + k)).collect();
        if rng.random_bool(0.5) {
            perturb(rng, &mut phis);
        }
        // L = M(z) (A - z I) with a random polynomial left factor.
        let (m, _) = unimodular(rng, n, 2, 1);
        let mut m = m;
        if rng.random_bool(0.3) {
            let i = rng.random_range(0..n);
            m.set(
                i,
                i,
                &m.get(i, i).clone() * &Poly::from_ints(&[rng.random_range(-2..=2), 1]),
            );
        }
        let base = shifted(&inst.a).to_poly_mat().expect("polynomial");
        let l = m.mul(&base).expect("square");
        let taylor: Vec<_> = (0..len).map(|p| poly_taylor(&l, &alpha, p)).collect();
        let oracle = relations_hold(&taylor, &phis);
        let chain = JordanChain {
            alpha: alpha.clone(),
            vectors: phis,
        };
        let lp = MatPoly::from_poly_mat(&l);
        let residual = verify_linear_residual(&lp, &linear_solution(&lp, &chain)?)?;
        let zero = residual.iter().all(Poly::is_zero);
        ensure!(
            zero == oracle,
            "case {case}: residual zero = {zero}, relations hold = {oracle}"
        );
        if oracle {
            holds += 1;
        } else {
            fails += 1;
        }
    }
    ensure!(
        holds >= 50 && fails >= 50,
        "one direction under-sampled: {holds} hold, {fails} fail"
    );
    Ok(())
}

fn criterion_5d(rng: &mut ChaCha8Rng) -> Check {
    let (mut holds, mut fails) = (0, 0);
    let mut case = 0;
    while case < PROPERTY_INSTANCES {
        let p = planted(rng, 2, 1, false);
        let n = p.ks.len();
        let pole = &p.alpha + &g(nonzero(rng, -2, 2));
        let q = RatMat::from_poly_mat(&p.l).scale_by(&RatFun::new(Poly::one(), Poly::linear_factor(&pole))?);
        let deg = q
            .entries()
            .iter()
            .map(|f| f.num().degree().unwrap_or(0).max(f.den().degree().unwrap_or(0)))
            .max();
        if deg.unwrap_or(0) > 4 {
            continue;
        }
        let candidates: Vec<usize> = (0..n).filter(|&i| p.ks[i] > 0).collect();
        let i = candidates[rng.random_range(0..candidates.len())];
        // Column i of F^{-1} is a root function of order k_i.
        let psi: Vec<Poly> = (0..n).map(|r| p.f_inv.get(r, i).clone()).collect();
        let len = if rng.random_bool(0.2) {
            p.ks[i] + 1
        } else {
            rng.random_range(1..=p.ks[i])
        };
        let mut phis: Vec<Vec<GaussianRational>> = (0..len)
            .map(|j| psi.iter().map(|c| taylor_coeff(c, &p.alpha, j)).collect())
            .collect();
        if rng.random_bool(0.4) {
            perturb(rng, &mut phis);
        }
        if phis[0].iter().all(Zero::is_zero) {
            continue;
        }
        let taylor: Vec<_> = (0..len).map(|k| derivative_oracle(&q, &p.alpha, k)).collect();
        let oracle = relations_hold(&taylor, &phis);
        let chain = JordanChain {
            alpha: p.alpha.clone(),
            vectors: phis,
        };
        let is_chain = chain.satisfies(&scaled_derivs_at(&q, &p.alpha, len)?)?;
        let order = verify_zero_order(&q, &build_root_function(&chain), len)?;
        ensure!(
            is_chain == oracle,
            "case {case}: chain test {is_chain}, oracle {oracle}"
        );
        ensure!(
            is_chain == order.ok,
            "case {case}: chain {is_chain}, zero order {} < {len}",
            order.exact_order
        );
        if oracle {
            holds += 1;
        } else {
            fails += 1;
        }
        case += 1;
    }
    ensure!(
        holds >= 50 && fails >= 50,
        "one direction under-sampled: {holds} hold, {fails} fail"
    );
    Ok(())
}

fn criterion_5() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let parts: [(&str, Part); 4] = [
        ("a", criterion_5a),
        ("b", criterion_5b),
        ("c", criterion_5c),
        ("d", criterion_5d),
    ];
    for (name, part) in parts {
        part(&mut rng).map_err(|e| format!("part ({name}): {e}"))?;
    }
    Ok(())
}

fn eval_f64(p: &Poly, x: Complex64) -> Complex64 {
    p.coeffs()
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c.to_complex())
}

fn eval_ratfun_f64(f: &RatFun, x: Complex64) -> Complex64 {
    eval_f64(f.num(), x) / eval_f64(f.den(), x)
}

fn random_poly(rng: &mut ChaCha8Rng, max_deg: usize) -> Poly {
    let deg = rng.random_range(0..=max_deg);
    let mut c: Vec<i64> = (0..=deg).map(|_| rng.random_range(-4..=4)).collect();
    c[deg] = nonzero(rng, -4, 4);
    Poly::from_ints(&c)
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    let mut case = 0;
    while case < FD_FUNCTIONS {
        let f = RatFun::new(random_poly(&mut rng, 4), random_poly(&mut rng, 3))?;
        let df = f.derivative();
        if df.is_zero() {
            continue;
        }
        let mut points = 0;
        while points < FD_POINTS {
            let x = Complex64::new(rng.random_range(-3.0..3.0), 0.0);
            if eval_f64(f.den(), x).norm() < 0.5 {
                continue;
            }
            let h = FD_STEP;
            let fd = (eval_ratfun_f64(&f, x - 2.0 * h) - 8.0 * eval_ratfun_f64(&f, x - h)
                + 8.0 * eval_ratfun_f64(&f, x + h)
                - eval_ratfun_f64(&f, x + 2.0 * h))
                / (12.0 * h);
            let exact = eval_ratfun_f64(&df, x);
            let rel = (fd - exact).norm() / exact.norm();
            ensure!(
                rel <= FD_REL_TOL,
                "case {case}: f = {f}, x = {}, relative error {rel:e}",
                x.re
            );
            points += 1;
        }
        case += 1;
    }

    let cfg = NumericConfig::default();
    for case in 0..ROOT_INSTANCES {
        let distinct = rng.random_range(1..=4);
        let mut roots: Vec<(GaussianRational, usize)> = Vec::new();
        while roots.len() < distinct {
            let mut r = GaussianRational::from_frac(rng.random_range(-8..=8), rng.random_range(1..=4));
            if rng.random_bool(0.25) {
                let im = GaussianRational::from_frac(nonzero(&mut rng, -4, 4), rng.random_range(1..=3));
                r = &r + &(&GaussianRational::i() * &im);
            }
            if roots.iter().all(|(s, _)| s != &r) {
                roots.push((r, rng.random_range(1..=3)));
            }
        }
        let p = roots
            .iter()
            .fold(Poly::one(), |acc, (r, m)| &acc * &lin_pow(r, *m as u32));
        let found = numeric_roots(&p, &cfg)?;
        ensure!(
            found.len() == roots.len(),
            "case {case}: {} numeric roots for {p}",
            found.len()
        );
        for (r, m) in &roots {
            let hit = found
                .iter()
                .find(|nr| (nr.value - r.to_complex()).norm() <= ROOT_ABS_TOL && nr.multiplicity == *m);
            ensure!(
                hit.is_some(),
                "case {case}: root {r} of multiplicity {m} not matched in {found:?}"
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 6] = [
        ("worked 3x3 example", criterion_1),
        ("reciprocal system, simple eigenvalue", criterion_2),
        ("reciprocal system, double eigenvalue", criterion_3),
        ("mixed point refusal", criterion_4),
        (
            "property suite (planted Smith, Jordan forms, linear ODE, root functions)",
            criterion_5,
        ),
        ("numeric cross-checks (finite differences, numeric roots)", criterion_6),
    ];
    let total = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS {}. {name} ({secs:.2}s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {}. {name} ({secs:.2}s): {e}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.2}s",
        criteria.len() - failed,
        criteria.len(),
        total.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
