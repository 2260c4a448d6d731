use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::parse::{parse_poly, parse_rational, ParseError};
use crate::criteria::CriteriaError;
use crate::groebner::GroebnerError;
use crate::logderiv::{ensure_reduced, verify_free_basis, Derivation, LogDerivError};
use crate::poly::{Poly, Rational, VarContext};
use crate::spectral::SpectralError;

#[derive(Debug, Error)]
pub enum FrontendError {
    #[error("{path}: {msg}")]
    IoError { path: String, msg: String },
    #[error("{field}: {msg}")]
    SchemaError { field: String, msg: String },
    #[error("{field}: {source}")]
    SyntaxError { field: String, source: ParseError },
    #[error(transparent)]
    Derivation(#[from] LogDerivError),
    #[error(transparent)]
    Criteria(#[from] CriteriaError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

impl FrontendError {
    pub fn schema(field: &str, msg: impl Into<String>) -> FrontendError {
        FrontendError::SchemaError { field: field.into(), msg: msg.into() }
    }

    fn budget_exceeded(&self) -> bool {
        let groebner = |e: &GroebnerError| matches!(e, GroebnerError::BudgetExceeded { .. });
        match self {
            FrontendError::Groebner(e) => groebner(e),
            FrontendError::Derivation(LogDerivError::Groebner(e)) => groebner(e),
            FrontendError::Criteria(e) => e.is_budget_exceeded(),
            FrontendError::Spectral(SpectralError::Derivation(LogDerivError::Groebner(e))) => groebner(e),
            _ => false,
        }
    }

    /// Short name printed on the diagnostic stream.
    pub fn name(&self) -> &'static str {
        if self.budget_exceeded() {
            return "BudgetExceeded";
        }
        match self {
            FrontendError::IoError { .. } => "IoError",
            FrontendError::SchemaError { .. } => "SchemaError",
            FrontendError::SyntaxError { source, .. } => match source {
                ParseError::SyntaxError { .. } => "SyntaxError",
                ParseError::UnknownVariable(_) => "UnknownVariable",
                ParseError::ZeroDenominator => "ZeroDenominator",
            },
            FrontendError::Derivation(e) => match e {
                LogDerivError::NotReduced(_) => "NotReduced",
                LogDerivError::NotLogarithmic(_) => "NotLogarithmic",
                LogDerivError::DeterminantNotUnitMultiple => "DeterminantNotUnitMultiple",
                LogDerivError::ZeroEquation => "ZeroEquation",
                LogDerivError::PointNotOnDivisor => "PointNotOnDivisor",
                LogDerivError::NoFreeBasisFound { .. } => "NoFreeBasisFound",
                _ => "DerivationError",
            },
            FrontendError::Criteria(CriteriaError::PointNotOnDivisor) => "PointNotOnDivisor",
            FrontendError::Criteria(CriteriaError::PointDimension { .. }) => "PointDimension",
            FrontendError::Criteria(_) => "CriteriaError",
            FrontendError::Spectral(_) => "SpectralError",
            FrontendError::Groebner(_) => "GroebnerError",
        }
    }

    /// 2 for bad input, 3 for an exhausted step budget, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.budget_exceeded() {
            return 3;
        }
        match self {
            FrontendError::IoError { .. } | FrontendError::SchemaError { .. } | FrontendError::SyntaxError { .. } => 2,
            FrontendError::Derivation(
                LogDerivError::NotReduced(_)
                | LogDerivError::NotLogarithmic(_)
                | LogDerivError::DeterminantNotUnitMultiple
                | LogDerivError::ZeroEquation
                | LogDerivError::PointNotOnDivisor
                | LogDerivError::DimensionMismatch { .. },
            ) => 2,
            FrontendError::Criteria(CriteriaError::PointNotOnDivisor | CriteriaError::PointDimension { .. }) => 2,
            _ => 1,
        }
    }
}

/// A rational given either as a JSON integer or as text like `"-3/4"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalText {
    Int(i64),
    Text(String),
}

impl RationalText {
    pub fn value(&self) -> Result<Rational, ParseError> {
        match self {
            RationalText::Int(k) => Ok(Rational::from_integer((*k).into())),
            RationalText::Text(s) => parse_rational(s),
        }
    }
}

/// The on-disk problem description.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub variables: Vec<String>,
    pub f: String,
    /// Row `i` holds the coefficients of `δ_i`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derivations: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Vec<RationalText>>>,
    #[serde(default)]
    pub label: String,
}

#[derive(Clone, Debug)]
pub struct DivisorProblem {
    pub ctx: Arc<VarContext>,
    pub f: Poly,
    pub basis: Option<Vec<Derivation>>,
    pub points: Vec<Vec<Rational>>,
    pub label: String,
}

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Variable list checked for identifier syntax and duplicates.
pub fn variable_context(names: &[String]) -> Result<Arc<VarContext>, FrontendError> {
    if names.is_empty() {
        return Err(FrontendError::schema("variables", "at least one variable is required"));
    }
    if let Some(bad) = names.iter().find(|s| !valid_identifier(s)) {
        return Err(FrontendError::schema("variables", format!("`{bad}` is not an identifier")));
    }
    let mut seen = std::collections::HashSet::new();
    if let Some(dup) = names.iter().find(|s| !seen.insert(s.as_str())) {
        return Err(FrontendError::schema("variables", format!("duplicate variable `{dup}`")));
    }
    VarContext::new(names).map_err(|e| FrontendError::schema("variables", e.to_string()))
}

pub fn parse_field(field: &str, src: &str, ctx: &Arc<VarContext>) -> Result<Poly, FrontendError> {
    parse_poly(src, ctx).map_err(|source| FrontendError::SyntaxError { field: field.into(), source })
}

/// A point written `(a, b, …)` with rational coordinates.
pub fn parse_point(src: &str) -> Result<Vec<Rational>, FrontendError> {
    let inner = src
        .trim()
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| FrontendError::schema("point", "expected `(a, b, ...)`"))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|c| parse_rational(c).map_err(|source| FrontendError::SyntaxError { field: "point".into(), source }))
        .collect()
}

impl ProblemFile {
    /// Parses all expressions and validates the problem: `f` non-zero and
    /// reduced, the basis (if given) certified by Saito's criterion, points
    /// of the right length.
    pub fn into_problem(self, budget: u64) -> Result<DivisorProblem, FrontendError> {
        let ctx = variable_context(&self.variables)?;
        let n = ctx.nvars();
        let f = parse_field("f", &self.f, &ctx)?;
        if f.is_zero() {
            return Err(LogDerivError::ZeroEquation.into());
        }
        ensure_reduced(&f, budget)?;
        let basis = match self.derivations {
            None => None,
            Some(rows) => {
                if rows.len() != n {
                    return Err(FrontendError::schema("derivations", format!("expected {n} rows, got {}", rows.len())));
                }
                let mut ds = Vec::with_capacity(n);
                for (i, row) in rows.iter().enumerate() {
                    if row.len() != n {
                        return Err(FrontendError::schema(
                            "derivations",
                            format!("row {i} has {} entries, expected {n}", row.len()),
                        ));
                    }
                    let coeffs = row
                        .iter()
                        .map(|s| parse_field(&format!("derivations[{i}]"), s, &ctx))
                        .collect::<Result<Vec<_>, _>>()?;
                    ds.push(Derivation::new(&ctx, coeffs)?);
                }
                verify_free_basis(&f, &ds)?;
                Some(ds)
            }
        };
        let mut points = Vec::new();
        for (i, p) in self.points.unwrap_or_default().iter().enumerate() {
            if p.len() != n {
                return Err(FrontendError::schema("points", format!("point {i} has {} coordinates, expected {n}", p.len())));
            }
            let coords = p
                .iter()
                .map(|c| c.value().map_err(|source| FrontendError::SyntaxError { field: format!("points[{i}]"), source }))
                .collect::<Result<Vec<_>, _>>()?;
            points.push(coords);
        }
        Ok(DivisorProblem { ctx, f, basis, points, label: self.label })
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, FrontendError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| FrontendError::IoError { path: path.display().to_string(), msg: e.to_string() })?;
    serde_json::from_str(&text).map_err(|e| FrontendError::schema("file", e.to_string()))
}

pub fn load_problem(path: &Path, budget: u64) -> Result<DivisorProblem, FrontendError> {
    read_json::<ProblemFile>(path)?.into_problem(budget)
}
