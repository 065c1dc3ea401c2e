//! Parsing, document formats, reports and command dispatch.

mod commands;
mod docs;
mod parse;
mod report;

pub use commands::{run, Command};
pub use docs::{
    digest, load_matrix, load_recip_system, parse_candidate, parse_chain, parse_mat_poly, parse_matrix,
    parse_recip_system, parse_root_function, CandidateDocument, ChainDocument, Literal, MatrixDocument,
    RecipSystemDocument, RootFunctionDocument, TermDocument,
};
pub use parse::{parse_poly_in, parse_ratfun, parse_ratfun_in, parse_scalar};
pub use report::{emit_error, emit_report, Format, Report, Results, SCHEMA};
