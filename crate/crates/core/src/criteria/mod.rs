//! Decisions built on a certified basis and its Fitting chain: strong
//! Euler-homogeneity (pointwise and on the rank strata), Koszul flags,
//! colon-ideal consistency, linear-part obstructions and the three-valued
//! verdict on the logarithmic comparison theorem (LCT).
//!
//! Radical equalities are decided for affine varieties. For homogeneous
//! data this is the same as the germ statement at the origin; otherwise the
//! affected results carry `germ_caveat` and obstructions relying on them
//! are not asserted.

mod weights;

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::groebner::{GroebnerError, Ideal};
use crate::logderiv::{is_linear_free, is_product_at_point, saito_matrices, FittingChain, LogBasis, LogDerivError};
use crate::poly::{PolyError, Rational};
use crate::spectral::{self, linear_part, trace_of, SpectralError};

pub use weights::{quasihomogeneous_check, Quasihomogeneity, MAX_INEQUALITIES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriteriaError {
    #[error("point is not on the divisor")]
    PointNotOnDivisor,
    #[error("point has {got} coordinates, expected {expected}")]
    PointDimension { expected: usize, got: usize },
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Derivation(#[from] LogDerivError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

impl From<PolyError> for CriteriaError {
    fn from(e: PolyError) -> Self {
        CriteriaError::Derivation(e.into())
    }
}

impl CriteriaError {
    pub fn is_budget_exceeded(&self) -> bool {
        matches!(
            self,
            CriteriaError::Groebner(GroebnerError::BudgetExceeded { .. })
                | CriteriaError::Derivation(LogDerivError::Groebner(GroebnerError::BudgetExceeded { .. }))
                | CriteriaError::Spectral(SpectralError::Derivation(LogDerivError::Groebner(
                    GroebnerError::BudgetExceeded { .. }
                )))
        )
    }
}

/// Ranks of `A(p)` and `Ã(p)`; SEH at `p` iff `rank Ã(p) = rank A(p) + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SehAtPoint {
    pub seh: bool,
    pub rank_a: usize,
    pub rank_atilde: usize,
}

pub fn seh_at_point(l: &LogBasis, p: &[Rational]) -> Result<SehAtPoint, CriteriaError> {
    if p.len() != l.nvars() {
        return Err(CriteriaError::PointDimension { expected: l.nvars(), got: p.len() });
    }
    if !l.f().evaluate(p)?.is_zero() {
        return Err(CriteriaError::PointNotOnDivisor);
    }
    let (a, at) = saito_matrices(l);
    let rank_a = spectral::rank(&a.evaluate(p)?);
    let rank_atilde = spectral::rank(&at.evaluate(p)?);
    Ok(SehAtPoint { seh: rank_atilde == rank_a + 1, rank_a, rank_atilde })
}

/// Strong Euler-homogeneity on the strata of the Fitting chain.
///
/// `per_level_equalities[k]` is `(i, √Ĩ_{i+1} = √I_i)` for `i = 1..n-2`;
/// SEH holds off `D_0` iff all of them do.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SehClassification {
    pub seh_on_d0: bool,
    pub seh_off_d0: bool,
    pub seh_everywhere: bool,
    pub per_level_equalities: Vec<(usize, bool)>,
    pub germ_caveat: bool,
}

pub fn seh_classification(c: &FittingChain) -> Result<SehClassification, CriteriaError> {
    let n = c.n();
    let seh_on_d0 = !c.minors_atilde(1).contained_in_maximal();
    let levels: Vec<usize> = (1..n.saturating_sub(1)).collect();
    let per_level_equalities = levels
        .iter()
        .map(|&i| Ok((i, c.minors_atilde(i + 1).radical_equal(c.minors_a(i))?)))
        .collect::<Result<Vec<_>, CriteriaError>>()?;
    let germ_caveat =
        levels.iter().any(|&i| !c.minors_atilde(i + 1).is_homogeneous() || !c.minors_a(i).is_homogeneous());
    let seh_off_d0 = per_level_equalities.iter().all(|&(_, b)| b);
    Ok(SehClassification {
        seh_on_d0,
        seh_off_d0,
        seh_everywhere: seh_on_d0 && seh_off_d0,
        per_level_equalities,
        germ_caveat,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KoszulFlags {
    pub koszul: bool,
    pub weakly_koszul: bool,
}

/// `dim D_i ≤ i` (Koszul-free) and `dim D̃_i ≤ i` (weakly Koszul-free)
/// for `i = 0..n-3`.
pub fn koszul_check(c: &FittingChain) -> KoszulFlags {
    let top = c.n().saturating_sub(2);
    let bounded = |dims: &[i64]| (0..top).all(|i| dims[i] <= i as i64);
    KoszulFlags { koszul: bounded(&c.dims), weakly_koszul: bounded(&c.dims_tilde) }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColonConsistency {
    Consistent,
    Inconsistent,
    PreconditionNotMet,
}

/// With SEH off `D_0`, the cofactor ideal `Ĩ_1` and `(∂_1 f, …, ∂_n f) : f`
/// have the same radical.
pub fn colon_consistency(
    l: &LogBasis,
    c: &FittingChain,
    seh: &SehClassification,
) -> Result<ColonConsistency, CriteriaError> {
    if !seh.seh_off_d0 {
        return Ok(ColonConsistency::PreconditionNotMet);
    }
    let f = l.f();
    let partials = (0..f.nvars()).map(|i| f.partial_derivative(i)).collect::<Result<Vec<_>, _>>()?;
    let jac = Ideal::new(f.ctx(), partials)?.with_budget(c.minors_atilde(1).budget());
    let colon = jac.colon(f)?;
    Ok(if c.minors_atilde(1).radical_equal(&colon)? {
        ColonConsistency::Consistent
    } else {
        ColonConsistency::Inconsistent
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Obstruction {
    Obstructed,
    NotObstructed,
    NotApplicable,
}

fn origin(l: &LogBasis) -> Vec<Rational> {
    vec![Rational::zero(); l.nvars()]
}

/// A product at the origin has a non-singular basis element, so singular
/// logarithmic derivations are not just constant combinations of the basis.
fn product_at_origin(l: &LogBasis) -> Result<bool, CriteriaError> {
    if !l.f().constant_term().is_zero() {
        return Ok(false);
    }
    Ok(is_product_at_point(l, &origin(l))?)
}

/// Obstructed when every basis element has a traceless linear part: then
/// no singular logarithmic derivation has non-zero trace.
pub fn trace_obstruction(l: &LogBasis) -> Result<Obstruction, CriteriaError> {
    if product_at_origin(l)? {
        return Ok(Obstruction::NotApplicable);
    }
    Ok(if l.basis().iter().all(|d| trace_of(d).is_zero()) {
        Obstruction::Obstructed
    } else {
        Obstruction::NotObstructed
    })
}

/// Obstructed when the span of the basis linear parts is nilpotent: every
/// singular logarithmic derivation is then topologically nilpotent.
pub fn nilpotent_span_obstruction(l: &LogBasis) -> Result<Obstruction, CriteriaError> {
    if product_at_origin(l)? {
        return Ok(Obstruction::NotApplicable);
    }
    let parts: Vec<_> = l.basis().iter().map(linear_part).collect();
    Ok(if spectral::span_has_non_nilpotent(&parts)? {
        Obstruction::NotObstructed
    } else {
        Obstruction::Obstructed
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    F1,
    F2,
    F3,
    F4,
    F5,
    H1,
    /// No rule applied.
    NoObstruction,
    /// An obstruction was found but rests on affine checks of inhomogeneous data.
    GermCaveat,
}

impl Rule {
    pub fn code(self) -> &'static str {
        match self {
            Rule::F1 => "F1",
            Rule::F2 => "F2",
            Rule::F3 => "F3",
            Rule::F4 => "F4",
            Rule::F5 => "F5",
            Rule::H1 => "H1",
            Rule::NoObstruction => "NONE",
            Rule::GermCaveat => "CAVEAT",
        }
    }

    /// The theorem each rule rests on.
    pub fn citation(self) -> &'static str {
        match self {
            Rule::F1 => "trace obstruction: LCT requires a singular logarithmic derivation with non-zero trace",
            Rule::F2 => "Koszul-free divisors satisfying LCT are strongly Euler-homogeneous",
            Rule::F3 => "weakly Koszul-free divisors satisfying LCT are strongly Euler-homogeneous",
            Rule::F4 => "free divisors in dimension at most 4 satisfying LCT are strongly Euler-homogeneous",
            Rule::F5 => {
                "strongly Euler-homogeneous outside the origin with only topologically nilpotent singular \
                 logarithmic derivations: neither SEH at the origin nor LCT"
            }
            Rule::H1 => "linear free divisors in dimension at most 4 are locally quasihomogeneous, hence satisfy LCT",
            Rule::NoObstruction => "no obstruction found and no affirmation rule applies",
            Rule::GermCaveat => {
                "obstruction rests on affine radical checks of inhomogeneous data, which may differ from the germ"
            }
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LctStatus {
    Holds,
    Fails,
    Unknown,
}

impl fmt::Display for LctStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LctStatus::Holds => "HOLDS",
            LctStatus::Fails => "FAILS",
            LctStatus::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LctVerdict {
    pub status: LctStatus,
    pub reasons: Vec<Rule>,
}

/// Everything the verdict depends on.
#[derive(Clone, Debug)]
pub struct VerdictInputs {
    pub n: usize,
    pub trace: Obstruction,
    pub nilpotent_span: Obstruction,
    pub koszul: KoszulFlags,
    pub seh: SehClassification,
    /// `dim D̃_0 ≤ 0` and all per-level equalities.
    pub seh_outside_origin: bool,
    pub seh_at_origin: bool,
    pub linear_free: bool,
}

/// F-rules that depend on the affine SEH classification (F2–F4) are
/// dropped when it carries a germ caveat; if nothing else fires the verdict
/// is UNKNOWN with the caveat as reason.
pub fn lct_verdict(v: &VerdictInputs) -> LctVerdict {
    let not_seh = !v.seh.seh_everywhere;
    let mut fired = Vec::new();
    let mut caveated = false;
    if v.trace == Obstruction::Obstructed {
        fired.push(Rule::F1);
    }
    for (rule, cond) in [(Rule::F2, v.koszul.koszul), (Rule::F3, v.koszul.weakly_koszul), (Rule::F4, v.n <= 4)] {
        if cond && not_seh {
            if v.seh.germ_caveat {
                caveated = true;
            } else {
                fired.push(rule);
            }
        }
    }
    if v.nilpotent_span == Obstruction::Obstructed && v.seh_outside_origin && !v.seh_at_origin {
        if v.seh.germ_caveat {
            caveated = true;
        } else {
            fired.push(Rule::F5);
        }
    }
    if !fired.is_empty() {
        return LctVerdict { status: LctStatus::Fails, reasons: fired };
    }
    if v.linear_free && v.n <= 4 {
        return LctVerdict { status: LctStatus::Holds, reasons: vec![Rule::H1] };
    }
    let mut reasons = vec![Rule::NoObstruction];
    if caveated {
        reasons.push(Rule::GermCaveat);
    }
    LctVerdict { status: LctStatus::Unknown, reasons }
}

/// All criteria for one certified basis.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub free: bool,
    pub linear_free: bool,
    pub product_at_origin: bool,
    pub seh: SehClassification,
    pub seh_at_origin: SehAtPoint,
    pub points: Vec<(Vec<Rational>, Result<SehAtPoint, CriteriaError>)>,
    pub koszul: KoszulFlags,
    pub colon: ColonConsistency,
    pub trace: Obstruction,
    pub nilpotent_span: Obstruction,
    pub traces: Vec<Rational>,
    pub commuting_semisimple_lower_bound: usize,
    pub quasihomogeneity: Quasihomogeneity,
    pub verdict: LctVerdict,
}

pub fn analyze(l: &LogBasis, c: &FittingChain, points: &[Vec<Rational>]) -> Result<Analysis, CriteriaError> {
    let n = l.nvars();
    let (seh_colon, (linear, quasi)) = rayon::join(
        || -> Result<_, CriteriaError> {
            let seh = seh_classification(c)?;
            let colon = colon_consistency(l, c, &seh)?;
            Ok((seh, colon))
        },
        || (is_linear_free(l), quasihomogeneous_check(l.f())),
    );
    let (seh, colon) = seh_colon?;
    let linear_free = linear?;
    let product_at_origin = product_at_origin(l)?;
    let seh_at_origin = if l.f().constant_term().is_zero() {
        seh_at_point(l, &origin(l))?
    } else {
        // the origin is off the divisor: treat as trivially SEH there
        SehAtPoint { seh: true, rank_a: n, rank_atilde: n + 1 }
    };
    let points = points.iter().map(|p| (p.clone(), seh_at_point(l, p))).collect();
    let koszul = koszul_check(c);
    let trace = trace_obstruction(l)?;
    let nilpotent_span = nilpotent_span_obstruction(l)?;
    let parts: Vec<_> = l.basis().iter().map(linear_part).collect();
    let inputs = VerdictInputs {
        n,
        trace,
        nilpotent_span,
        koszul,
        seh_outside_origin: seh.seh_off_d0 && c.dims_tilde[0] <= 0,
        seh: seh.clone(),
        seh_at_origin: seh_at_origin.seh,
        linear_free,
    };
    Ok(Analysis {
        free: true,
        linear_free,
        product_at_origin,
        seh,
        seh_at_origin,
        points,
        koszul,
        colon,
        trace,
        nilpotent_span,
        traces: l.basis().iter().map(trace_of).collect(),
        commuting_semisimple_lower_bound: spectral::commuting_semisimple_lower_bound(&parts)?,
        quasihomogeneity: quasi,
        verdict: lct_verdict(&inputs),
    })
}
