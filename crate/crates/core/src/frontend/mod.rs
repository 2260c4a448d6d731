//! Text formats and orchestration: expression parser, problem and report
//! files, and the full analysis pipeline behind the CLI.

pub mod cli;
mod parse;
mod problem;
mod report;

pub use parse::{parse_poly, parse_rational, ParseError};
pub use problem::{
    load_problem, parse_point, read_json, variable_context, DivisorProblem, FrontendError, ProblemFile, RationalText,
};
pub use report::{
    obtain_basis, run_analyze, BasisReport, FittingLevel, LevelEquality, PointReport, ReportFile, SpectralReport,
    Verdict, Verdicts,
};

#[cfg(test)]
mod tests;
