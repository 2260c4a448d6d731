use std::path::PathBuf;

use super::*;
use crate::groebner::DEFAULT_BUDGET;
use crate::logderiv::LogDerivError;
use crate::poly::{rat, ratio};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(format!("{name}.json"))
}

fn problem(json: &str) -> Result<DivisorProblem, FrontendError> {
    serde_json::from_str::<ProblemFile>(json).unwrap().into_problem(DEFAULT_BUDGET)
}

#[test]
fn loads_corpus_files() {
    let p = load_problem(&corpus("ex42"), DEFAULT_BUDGET).unwrap();
    assert_eq!(p.ctx.nvars(), 5);
    assert_eq!(p.basis.as_ref().map(Vec::len), Some(5));
    assert_eq!(p.points.len(), 2);
    assert_eq!(p.f.to_string(), "-x*y^4 + 4*x^2*y^2*z - 8*x^3*y*t + 8*x^4*u");

    let p = load_problem(&corpus("curve_r32b"), DEFAULT_BUDGET).unwrap();
    assert_eq!(p.basis.as_ref().map(Vec::len), Some(2));

    let p = load_problem(&corpus("four_lines"), DEFAULT_BUDGET).unwrap();
    assert!(p.basis.is_none());
    assert_eq!(p.points[2], vec![rat(0), rat(0), ratio(-1, 2)]);
}

#[test]
fn schema_errors() {
    let err = problem(r#"{"variables": ["x", "x"], "f": "x"}"#).unwrap_err();
    assert!(matches!(&err, FrontendError::SchemaError { field, .. } if field == "variables"));
    assert_eq!((err.name(), err.exit_code()), ("SchemaError", 2));

    let err = problem(r#"{"variables": ["1x"], "f": "x"}"#).unwrap_err();
    assert!(matches!(&err, FrontendError::SchemaError { field, .. } if field == "variables"));

    let err = problem(r#"{"variables": ["x", "y"], "f": "x*y", "derivations": [["x", "0"]]}"#).unwrap_err();
    assert!(matches!(&err, FrontendError::SchemaError { field, .. } if field == "derivations"));

    let err = problem(r#"{"variables": ["x", "y"], "f": "x*y", "points": [[0]]}"#).unwrap_err();
    assert!(matches!(&err, FrontendError::SchemaError { field, .. } if field == "points"));

    assert!(serde_json::from_str::<ProblemFile>(r#"{"variables": ["x"], "f": "x", "extra": 1}"#).is_err());
}

#[test]
fn expression_and_validation_errors() {
    let err = problem(r#"{"variables": ["x"], "f": "x**2"}"#).unwrap_err();
    assert_eq!((err.name(), err.exit_code()), ("SyntaxError", 2));

    let err = problem(r#"{"variables": ["x"], "f": "x*w"}"#).unwrap_err();
    assert_eq!(err.name(), "UnknownVariable");

    let err = problem(r#"{"variables": ["x", "y"], "f": "x^2*y"}"#).unwrap_err();
    assert!(matches!(err, FrontendError::Derivation(LogDerivError::NotReduced(_))));
    assert_eq!(err.exit_code(), 2);

    let err = problem(r#"{"variables": ["x", "y"], "f": "x*y", "derivations": [["y", "0"], ["0", "y"]]}"#).unwrap_err();
    assert_eq!((err.name(), err.exit_code()), ("NotLogarithmic", 2));

    let err =
        problem(r#"{"variables": ["x", "y"], "f": "x*y", "derivations": [["x^2", "0"], ["0", "y"]]}"#).unwrap_err();
    assert_eq!(err.name(), "DeterminantNotUnitMultiple");
}

#[test]
fn points() {
    assert_eq!(parse_point("(0, 0, 1, 0, 1)").unwrap(), vec![rat(0), rat(0), rat(1), rat(0), rat(1)]);
    assert_eq!(parse_point(" (-1/2,3) ").unwrap(), vec![ratio(-1, 2), rat(3)]);
    assert!(parse_point("0, 1").is_err());
    assert!(parse_point("(0, x)").is_err());
}

#[test]
fn report_polynomials_round_trip() {
    let p = load_problem(&corpus("four_lines"), DEFAULT_BUDGET).unwrap();
    let r = run_analyze(&p, DEFAULT_BUDGET).unwrap();
    assert_eq!(parse_poly(&r.f, &p.ctx).unwrap(), p.f);
    let (l, _) = obtain_basis(&p, DEFAULT_BUDGET).unwrap();
    for (row, d) in r.basis.derivations.iter().zip(l.basis()) {
        let parsed: Vec<_> = row.iter().map(|s| parse_poly(s, &p.ctx).unwrap()).collect();
        assert_eq!(parsed, d.coeffs());
    }
    for (s, alpha) in r.basis.cofactors.iter().zip(l.cofactors()) {
        assert_eq!(&parse_poly(s, &p.ctx).unwrap(), alpha);
    }
    for level in &r.fitting {
        for g in level.minors_a.iter().chain(&level.minors_atilde) {
            assert_eq!(parse_poly(g, &p.ctx).unwrap().to_string(), *g);
        }
    }
}

#[test]
fn reports_are_deterministic_and_cited() {
    for name in ["ex42", "normal_crossing_2d"] {
        let p = load_problem(&corpus(name), DEFAULT_BUDGET).unwrap();
        let mut a = run_analyze(&p, DEFAULT_BUDGET).unwrap();
        let mut b = run_analyze(&p, DEFAULT_BUDGET).unwrap();
        a.timing_ms = 0;
        b.timing_ms = 0;
        assert_eq!(a.to_json(), b.to_json());
        let back: ReportFile = serde_json::from_str(&a.to_json()).unwrap();
        assert_eq!(back, a);
        let v = serde_json::to_value(&a.verdicts).unwrap();
        for (key, verdict) in v.as_object().unwrap() {
            assert!(!verdict["citations"].as_array().unwrap().is_empty(), "{key} has no citation");
        }
    }
}

#[test]
fn budget_exhaustion_maps_to_exit_code_three() {
    let p = load_problem(&corpus("four_lines"), DEFAULT_BUDGET).unwrap();
    let err = run_analyze(&p, 5).unwrap_err();
    assert_eq!((err.name(), err.exit_code()), ("BudgetExceeded", 3));
}
