use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::problem::{DivisorProblem, FrontendError};
use crate::criteria::{
    self, Analysis, ColonConsistency, LctStatus, Obstruction, Quasihomogeneity, Rule, SehAtPoint,
};
use crate::logderiv::{compute_log_basis, fitting_chain, verify_free_basis, FittingChain, LogBasis};
use crate::poly::{Poly, Rational};
use crate::spectral::linear_part;

/// A decided property: its value, why, and the result it rests on.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub value: Value,
    pub reasons: Vec<String>,
    pub citations: Vec<String>,
}

impl Verdict {
    fn new(value: impl Into<Value>, reasons: Vec<String>, citation: &str) -> Verdict {
        Verdict { value: value.into(), reasons, citations: vec![citation.to_string()] }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisReport {
    /// `"file"` or `"computed"`.
    pub source: String,
    pub derivations: Vec<Vec<String>>,
    pub cofactors: Vec<String>,
    pub unit: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FittingLevel {
    pub k: usize,
    /// Reduced degrevlex basis of the ideal of `k`-minors of `A`.
    pub minors_a: Vec<String>,
    pub minors_atilde: Vec<String>,
    /// `dim D_{k-1}` and `dim D̃_{k-1}`; `-1` for the empty set.
    pub dim: i64,
    pub dim_tilde: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelEquality {
    pub level: usize,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointReport {
    pub point: Vec<String>,
    pub seh: Option<bool>,
    pub rank_a: Option<usize>,
    pub rank_atilde: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdicts {
    pub free: Verdict,
    pub linear_free: Verdict,
    pub product_at_origin: Verdict,
    pub seh_on_d0: Verdict,
    pub seh_off_d0: Verdict,
    pub seh_everywhere: Verdict,
    pub seh_at_origin: Verdict,
    pub koszul: Verdict,
    pub weakly_koszul: Verdict,
    pub colon_consistency: Verdict,
    pub trace_obstruction: Verdict,
    pub nilpotent_span_obstruction: Verdict,
    pub quasihomogeneous: Verdict,
    pub lct: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub traces: Vec<String>,
    /// Row-major linear part of each basis element.
    pub linear_parts: Vec<Vec<Vec<String>>>,
    pub commuting_semisimple_lower_bound: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub label: String,
    pub variables: Vec<String>,
    pub f: String,
    pub basis: BasisReport,
    pub verdicts: Verdicts,
    pub per_level_equalities: Vec<LevelEquality>,
    pub germ_caveat: bool,
    pub points: Vec<PointReport>,
    pub fitting: Vec<FittingLevel>,
    pub spectral: SpectralReport,
    pub timing_ms: u64,
}

impl ReportFile {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

const SAITO: &str = "Saito's criterion: n logarithmic derivations form a basis iff det A is a unit times f";
const LINEAR_FREE: &str = "linear free divisor: a basis of linear derivations, f homogeneous of degree n";
const PRODUCT: &str = "a logarithmic derivation not vanishing at p splits off a smooth factor at p";
const STRATA: &str = "SEH on the rank strata: D̃_0 is empty and D̃_i = D_{i-1} for i ≥ 1";
const RANKS: &str = "pointwise SEH: rank Ã(p) = rank A(p) + 1";
const KOSZUL: &str = "Koszul-free iff dim D_i ≤ i for i ≤ n-3";
const WEAKLY_KOSZUL: &str = "weakly Koszul-free iff dim D̃_i ≤ i for i ≤ n-3";
const COLON: &str = "SEH outside D_0 gives √Ĩ_1 = √((∂_1 f, …, ∂_n f) : f)";
const QUASI: &str = "positive weights make f quasihomogeneous; their Euler field gives SEH at the origin";

fn render(p: &Poly) -> String {
    p.to_string()
}

fn render_all(ps: &[Poly]) -> Vec<String> {
    ps.iter().map(render).collect()
}

fn obstruction(o: Obstruction) -> &'static str {
    match o {
        Obstruction::Obstructed => "OBSTRUCTED",
        Obstruction::NotObstructed => "NOT_OBSTRUCTED",
        Obstruction::NotApplicable => "NOT_APPLICABLE",
    }
}

fn ranks(s: &SehAtPoint) -> Vec<String> {
    vec![format!("rank A = {}, rank Ã = {}", s.rank_a, s.rank_atilde)]
}

/// Certifies the supplied basis or computes one.
pub fn obtain_basis(problem: &DivisorProblem, budget: u64) -> Result<(LogBasis, &'static str), FrontendError> {
    Ok(match &problem.basis {
        Some(ds) => (verify_free_basis(&problem.f, ds)?, "file"),
        None => (compute_log_basis(&problem.f, budget)?, "computed"),
    })
}

pub fn run_analyze(problem: &DivisorProblem, budget: u64) -> Result<ReportFile, FrontendError> {
    let start = Instant::now();
    let (l, source) = obtain_basis(problem, budget)?;
    let chain = fitting_chain(&l, budget)?;
    let a = criteria::analyze(&l, &chain, &problem.points)?;
    let fitting = fitting_levels(&chain)?;
    let mut report = build_report(problem, &l, source, &a, fitting);
    report.timing_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

pub fn fitting_levels(chain: &FittingChain) -> Result<Vec<FittingLevel>, FrontendError> {
    (1..=chain.n())
        .map(|k| {
            Ok(FittingLevel {
                k,
                minors_a: render_all(chain.minors_a(k).gb()?.polys()),
                minors_atilde: render_all(chain.minors_atilde(k).gb()?.polys()),
                dim: chain.dims[k - 1],
                dim_tilde: chain.dims_tilde[k - 1],
            })
        })
        .collect()
}

fn build_report(
    problem: &DivisorProblem,
    l: &LogBasis,
    source: &str,
    a: &Analysis,
    fitting: Vec<FittingLevel>,
) -> ReportFile {
    let seh = &a.seh;
    let failed_levels: Vec<String> = seh
        .per_level_equalities
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(i, _)| format!("radicals of Ĩ_{} and I_{i} differ", i + 1))
        .collect();
    let quasi = match &a.quasihomogeneity {
        Quasihomogeneity::Weights { weights, degree } => Verdict::new(
            true,
            vec![format!(
                "weights ({}), degree {degree}",
                weights.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(", ")
            )],
            QUASI,
        ),
        Quasihomogeneity::Absent => Verdict::new(false, vec!["no strictly positive weights".into()], QUASI),
        Quasihomogeneity::Undecided => Verdict::new("UNDECIDED", vec!["weight system too large".into()], QUASI),
    };
    let colon = match a.colon {
        ColonConsistency::Consistent => "CONSISTENT",
        ColonConsistency::Inconsistent => "INCONSISTENT",
        ColonConsistency::PreconditionNotMet => "PRECONDITION_NOT_MET",
    };
    let lct = Verdict {
        value: match a.verdict.status {
            LctStatus::Holds => "HOLDS",
            LctStatus::Fails => "FAILS",
            LctStatus::Unknown => "UNKNOWN",
        }
        .into(),
        reasons: a.verdict.reasons.iter().map(|r| r.code().to_string()).collect(),
        citations: a.verdict.reasons.iter().map(|r| r.citation().to_string()).collect(),
    };
    let verdicts = Verdicts {
        free: Verdict::new(a.free, vec![format!("det A = ({})·f", render(l.unit()))], SAITO),
        linear_free: Verdict::new(a.linear_free, Vec::new(), LINEAR_FREE),
        product_at_origin: Verdict::new(a.product_at_origin, Vec::new(), PRODUCT),
        seh_on_d0: Verdict::new(seh.seh_on_d0, Vec::new(), STRATA),
        seh_off_d0: Verdict::new(seh.seh_off_d0, failed_levels.clone(), STRATA),
        seh_everywhere: Verdict::new(seh.seh_everywhere, failed_levels, STRATA),
        seh_at_origin: Verdict::new(a.seh_at_origin.seh, ranks(&a.seh_at_origin), RANKS),
        koszul: Verdict::new(a.koszul.koszul, Vec::new(), KOSZUL),
        weakly_koszul: Verdict::new(a.koszul.weakly_koszul, Vec::new(), WEAKLY_KOSZUL),
        colon_consistency: Verdict::new(colon, Vec::new(), COLON),
        trace_obstruction: Verdict::new(obstruction(a.trace), Vec::new(), Rule::F1.citation()),
        nilpotent_span_obstruction: Verdict::new(obstruction(a.nilpotent_span), Vec::new(), Rule::F5.citation()),
        quasihomogeneous: quasi,
        lct,
    };
    let points = a
        .points
        .iter()
        .map(|(p, r)| {
            let point = p.iter().map(Rational::to_string).collect();
            match r {
                Ok(s) => PointReport {
                    point,
                    seh: Some(s.seh),
                    rank_a: Some(s.rank_a),
                    rank_atilde: Some(s.rank_atilde),
                    error: None,
                },
                Err(e) => PointReport { point, seh: None, rank_a: None, rank_atilde: None, error: Some(e.to_string()) },
            }
        })
        .collect();
    let spectral = SpectralReport {
        traces: a.traces.iter().map(Rational::to_string).collect(),
        linear_parts: l
            .basis()
            .iter()
            .map(|d| linear_part(d).rows().iter().map(|r| r.iter().map(Rational::to_string).collect()).collect())
            .collect(),
        commuting_semisimple_lower_bound: a.commuting_semisimple_lower_bound,
    };
    ReportFile {
        label: problem.label.clone(),
        variables: problem.ctx.names().to_vec(),
        f: render(&problem.f),
        basis: BasisReport {
            source: source.to_string(),
            derivations: l.basis().iter().map(|d| render_all(d.coeffs())).collect(),
            cofactors: render_all(l.cofactors()),
            unit: render(l.unit()),
        },
        verdicts,
        per_level_equalities: seh
            .per_level_equalities
            .iter()
            .map(|&(level, equal)| LevelEquality { level, equal })
            .collect(),
        germ_caveat: seh.germ_caveat,
        points,
        fitting,
        spectral,
        timing_ms: 0,
    }
}
