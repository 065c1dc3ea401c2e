//! Matrices from the worked examples, shared by unit tests.

use crate::algebra::GaussianRational;
use crate::ingest::parse_ratfun;
use crate::odes::{RecipTerm, ReciprocalSystem};
use crate::ratmat::RatMat;

pub fn mat(rows: &[&[&str]]) -> RatMat {
    RatMat::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|s| parse_ratfun(s).unwrap()).collect())
            .collect(),
    )
    .unwrap()
}

pub fn worked_3x3() -> RatMat {
    mat(&[
        &["(z-2)/(z-3)", "1/(3-z)", "0"],
        &["0", "(z-2)/(z-3)", "1/(z-3)"],
        &["0", "0", "(z+3)/(z-3)"],
    ])
}

pub fn recip_simple_q() -> RatMat {
    mat(&[&["2/z^2 + 1", "2/z^2 + 1/z"], &["-1/z^2 + 1/z", "1/z^2"]])
}

pub fn recip_double_q() -> RatMat {
    mat(&[&["1/z", "-2/z^2"], &["1 - 2/z + 1/z^2", "1 - 2/z + 1/z^2"]])
}

pub fn mixed_point() -> RatMat {
    mat(&[&["z", "2", "-1"], &["0", "z-1", "-2"], &["0", "0", "3/z"]])
}

/// Terms as one-based `(equation, unknown, order, coefficient)`.
pub fn recip_system(n: usize, terms: &[(usize, usize, usize, i64)]) -> ReciprocalSystem {
    let terms = terms
        .iter()
        .map(|&(i, m, k, a)| RecipTerm {
            equation: i - 1,
            unknown: m - 1,
            order: k,
            coeff: GaussianRational::from_int(a),
        })
        .collect();
    ReciprocalSystem::new(n, terms).unwrap()
}

pub fn sys_simple() -> ReciprocalSystem {
    recip_system(
        2,
        &[
            (1, 1, 2, 2),
            (1, 1, 0, 1),
            (1, 2, 2, 2),
            (1, 2, 1, 1),
            (2, 1, 2, -1),
            (2, 1, 1, 1),
            (2, 2, 2, 1),
        ],
    )
}

pub fn sys_double() -> ReciprocalSystem {
    recip_system(
        2,
        &[
            (1, 1, 1, 1),
            (1, 2, 2, -2),
            (2, 1, 0, 1),
            (2, 1, 1, -2),
            (2, 1, 2, 1),
            (2, 2, 0, 1),
            (2, 2, 1, -2),
            (2, 2, 2, 1),
        ],
    )
}
