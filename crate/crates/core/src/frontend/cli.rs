//! The CLI subcommands as plain functions returning their standard output.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::problem::{load_problem, parse_field, parse_point, read_json, variable_context, FrontendError, RationalText};
use super::report::{fitting_levels, obtain_basis, run_analyze};
use crate::criteria::seh_at_point;
use crate::groebner::{groebner_basis, DEFAULT_BUDGET};
use crate::logderiv::fitting_chain;
use crate::poly::MonomialOrder;
use crate::spectral::{chevalley, RatMatrix};

pub const BUDGET_VAR: &str = "LOGDIV_BUDGET";

/// The reduction-step budget, from `LOGDIV_BUDGET` if set.
pub fn budget_from_env() -> Result<u64, FrontendError> {
    match std::env::var(BUDGET_VAR) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| FrontendError::schema(BUDGET_VAR, format!("`{s}` is not a non-negative integer"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

/// Input of `gb`: an ideal by generators.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealFile {
    pub variables: Vec<String>,
    pub generators: Vec<String>,
}

/// Input of `jordan`: a square matrix, rows of rationals.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub matrix: Vec<Vec<RationalText>>,
}

/// Returns the JSON report, and writes it to `out` when given.
pub fn analyze(path: &Path, out: Option<&Path>, budget: u64) -> Result<String, FrontendError> {
    let problem = load_problem(path, budget)?;
    let report = run_analyze(&problem, budget)?;
    let json = report.to_json();
    let Some(out) = out else {
        return Ok(json);
    };
    std::fs::write(out, &json).map_err(|e| FrontendError::IoError { path: out.display().to_string(), msg: e.to_string() })?;
    let v = &report.verdicts;
    let mut s = String::new();
    let value = v.lct.value.as_str().unwrap_or_default();
    writeln!(s, "{}: lct {value} [{}]", report.label, v.lct.reasons.join(", ")).unwrap();
    writeln!(s, "report written to {}", out.display()).unwrap();
    Ok(s)
}

pub fn check_basis(path: &Path, budget: u64) -> Result<String, FrontendError> {
    let problem = load_problem(path, budget)?;
    let (l, source) = obtain_basis(&problem, budget)?;
    let mut s = String::new();
    writeln!(s, "free: true ({source} basis)").unwrap();
    for (i, (d, alpha)) in l.basis().iter().zip(l.cofactors()).enumerate() {
        writeln!(s, "d{}: {d}", i + 1).unwrap();
        writeln!(s, "  cofactor: {alpha}").unwrap();
    }
    writeln!(s, "det A = ({})*f", l.unit()).unwrap();
    Ok(s)
}

pub fn fitting(path: &Path, level: Option<usize>, budget: u64) -> Result<String, FrontendError> {
    let problem = load_problem(path, budget)?;
    let (l, _) = obtain_basis(&problem, budget)?;
    let n = l.nvars();
    if let Some(k) = level {
        if k == 0 || k > n {
            return Err(FrontendError::schema("level", format!("expected 1..={n}, got {k}")));
        }
    }
    let chain = fitting_chain(&l, budget)?;
    let mut s = String::new();
    for lv in fitting_levels(&chain)?.into_iter().filter(|lv| level.is_none_or(|k| k == lv.k)) {
        writeln!(s, "I_{}: [{}]  dim D_{} = {}", lv.k, lv.minors_a.join(", "), lv.k - 1, lv.dim).unwrap();
        writeln!(s, "Ĩ_{}: [{}]  dim D̃_{} = {}", lv.k, lv.minors_atilde.join(", "), lv.k - 1, lv.dim_tilde).unwrap();
    }
    Ok(s)
}

pub fn seh(path: &Path, point: &str, budget: u64) -> Result<String, FrontendError> {
    let problem = load_problem(path, budget)?;
    let p = parse_point(point)?;
    let (l, _) = obtain_basis(&problem, budget)?;
    let r = seh_at_point(&l, &p)?;
    Ok(format!("seh: {}\nrank A: {}\nrank Ã: {}\n", r.seh, r.rank_a, r.rank_atilde))
}

pub fn jordan(path: &Path) -> Result<String, FrontendError> {
    let file: MatrixFile = read_json(path)?;
    let rows = file
        .matrix
        .iter()
        .map(|r| {
            r.iter()
                .map(|c| {
                    c.value().map_err(|source| FrontendError::SyntaxError { field: "matrix".into(), source })
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let m = RatMatrix::from_rows(rows).map_err(|e| FrontendError::schema("matrix", e.to_string()))?;
    let p = chevalley(&m)?;
    let show = |m: &RatMatrix| {
        m.rows()
            .iter()
            .map(|r| format!("  [{}]\n", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
            .collect::<String>()
    };
    Ok(format!("S:\n{}N:\n{}", show(&p.s), show(&p.n)))
}

pub fn gb(path: &Path, order: &str, budget: u64) -> Result<String, FrontendError> {
    let file: IdealFile = read_json(path)?;
    let ord = MonomialOrder::parse(order).ok_or_else(|| FrontendError::schema("order", format!("unknown order `{order}`")))?;
    if let MonomialOrder::Block(k) = ord {
        if k > file.variables.len() {
            return Err(FrontendError::schema("order", format!("block size {k} exceeds the number of variables")));
        }
    }
    let ctx = variable_context(&file.variables)?;
    let gens = file
        .generators
        .iter()
        .enumerate()
        .map(|(i, g)| parse_field(&format!("generators[{i}]"), g, &ctx))
        .collect::<Result<Vec<_>, _>>()?;
    let basis = groebner_basis(&ctx, &gens, ord, budget)?;
    Ok(basis.polys().iter().map(|p| format!("{p}\n")).collect())
}
