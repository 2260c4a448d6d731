//! Linear parts of singular derivations and what their matrices say:
//! traces, nilpotency, the additive Jordan–Chevalley decomposition,
//! weight decompositions and the nilpotency of a whole span.
//!
//! The linear part of `δ = Σ a_j ∂_j` is the matrix `A` with `A[i][j]` the
//! coefficient of `x_i` in `a_j`, so that its degree-preserving component
//! is `Σ A[i][j] x_i ∂_j`.

mod matrix;

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::groebner::GroebnerError;
use crate::logderiv::{Derivation, LogDerivError};
use crate::poly::{Monomial, Poly, Rational, VarContext};

pub use matrix::{rank, RatMatrix, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error("matrices of different sizes")]
    SizeMismatch,
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("derivation has a constant coefficient")]
    NotSingular,
    #[error("weight vector has {got} entries, expected {expected}")]
    WeightMismatch { expected: usize, got: usize },
    #[error("internal error: {0}")]
    InternalError(String),
    #[error(transparent)]
    Derivation(#[from] LogDerivError),
}

impl From<GroebnerError> for SpectralError {
    fn from(e: GroebnerError) -> Self {
        SpectralError::Derivation(e.into())
    }
}

/// `M = S + N` with `S` semisimple, `N` nilpotent and `SN = NS`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChevalleyPair {
    pub s: RatMatrix,
    pub n: RatMatrix,
}

pub fn linear_part(d: &Derivation) -> RatMatrix {
    let n = d.ctx().nvars();
    let mut m = RatMatrix::zero(n);
    for (j, a) in d.coeffs().iter().enumerate() {
        for i in 0..n {
            let c = a.coeff(&Monomial::var(n, i));
            if !c.is_zero() {
                m.set(i, j, c);
            }
        }
    }
    m
}

pub fn trace_of(d: &Derivation) -> Rational {
    linear_part(d).trace()
}

/// For a singular derivation: topologically nilpotent iff its linear part
/// is nilpotent.
pub fn is_top_nilpotent(d: &Derivation) -> Result<bool, SpectralError> {
    if !d.is_singular() {
        return Err(SpectralError::NotSingular);
    }
    Ok(linear_part(d).is_nilpotent())
}

/// Additive Jordan–Chevalley decomposition by Newton iteration on the
/// squarefree part `p` of the characteristic polynomial:
/// `A ← A - p(A)·p'(A)⁻¹` converges to `S` in `⌈log₂ n⌉ + 1` steps.
pub fn chevalley(m: &RatMatrix) -> Result<ChevalleyPair, SpectralError> {
    let n = m.size();
    if n == 0 {
        return Ok(ChevalleyPair { s: m.clone(), n: m.clone() });
    }
    let p = m.char_poly().squarefree_part();
    let dp = p.derivative();
    let max_iter = (usize::BITS - (n - 1).leading_zeros()) as usize + 1;
    let mut a = m.clone();
    for _ in 0..=max_iter {
        let pa = p.eval_matrix(&a);
        if pa.is_zero() {
            let nil = m.sub(&a);
            return Ok(ChevalleyPair { s: a, n: nil });
        }
        let inv = dp
            .eval_matrix(&a)
            .inverse()
            .ok_or_else(|| SpectralError::InternalError("p'(A) is singular".into()))?;
        a = a.sub(&pa.mul(&inv));
    }
    Err(SpectralError::InternalError("Newton iteration did not converge".into()))
}

/// Splits `f` by the weight `β·w` of each monomial `x^β`.
pub fn sigma_decompose(f: &Poly, w: &[Rational]) -> Result<BTreeMap<Rational, Poly>, SpectralError> {
    if w.len() != f.nvars() {
        return Err(SpectralError::WeightMismatch { expected: f.nvars(), got: w.len() });
    }
    let mut parts: BTreeMap<Rational, Vec<(Monomial, Rational)>> = BTreeMap::new();
    for (m, c) in f.terms() {
        let weight: Rational =
            m.exponents().iter().zip(w).map(|(&e, wi)| wi * Rational::from_integer(e.into())).sum();
        parts.entry(weight).or_default().push((m.clone(), c.clone()));
    }
    Ok(parts.into_iter().map(|(k, terms)| (k, Poly::from_terms(f.ctx(), terms))).collect())
}

/// The scalar `c` with `[σ, d] = c·d` for `σ = Σ w_i x_i ∂_i`, if any.
pub fn sigma_degree(d: &Derivation, w: &[Rational]) -> Result<Option<Rational>, SpectralError> {
    let sigma = Derivation::weighted_euler(d.ctx(), w)?;
    let b = sigma.lie_bracket(d)?;
    let Some((j, lead)) = d.coeffs().iter().enumerate().find(|(_, c)| !c.is_zero()) else {
        return Ok(if b.is_zero() { Some(Rational::zero()) } else { None });
    };
    let (m, c) = &lead.terms()[0];
    let ratio = b.coeffs()[j].coeff(m) / c;
    Ok(if b == d.scale(&ratio) { Some(ratio) } else { None })
}

/// Whether the ℚ-span of `ms` contains a non-nilpotent matrix.
///
/// With `M(t) = Σ t_i M_i` over fresh parameters, the span is nilpotent iff
/// every power trace `tr M(t)^k`, `k = 1..n`, vanishes identically
/// (characteristic zero; rational points are Zariski-dense).
pub fn span_has_non_nilpotent(ms: &[RatMatrix]) -> Result<bool, SpectralError> {
    let Some(first) = ms.first() else {
        return Ok(false);
    };
    let n = first.size();
    if ms.iter().any(|m| m.size() != n) {
        return Err(SpectralError::SizeMismatch);
    }
    if n == 0 {
        return Ok(false);
    }
    let names: Vec<String> = (1..=ms.len()).map(|i| format!("t{i}")).collect();
    let ctx = VarContext::new(&names).expect("distinct parameter names");
    let generic: Vec<Poly> = (0..n * n)
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            ms.iter().enumerate().fold(Poly::zero(&ctx), |acc, (k, m)| {
                let c = m.get(i, j);
                if c.is_zero() {
                    acc
                } else {
                    &acc + &Poly::var(&ctx, k).scale(c)
                }
            })
        })
        .collect();
    let mut power = generic.clone();
    for k in 1..=n {
        let tr = (0..n).fold(Poly::zero(&ctx), |acc, i| &acc + &power[i * n + i]);
        if !tr.is_zero() {
            return Ok(true);
        }
        if k < n {
            power = poly_mat_mul(&power, &generic, n, &ctx);
        }
    }
    Ok(false)
}

fn poly_mat_mul(a: &[Poly], b: &[Poly], n: usize, ctx: &std::sync::Arc<VarContext>) -> Vec<Poly> {
    let mut out = vec![Poly::zero(ctx); n * n];
    for i in 0..n {
        for k in 0..n {
            let x = &a[i * n + k];
            if x.is_zero() {
                continue;
            }
            for j in 0..n {
                let y = &b[k * n + j];
                if !y.is_zero() {
                    out[i * n + j] = &out[i * n + j] + &(x * y);
                }
            }
        }
    }
    out
}

/// Size of a greedily chosen family of pairwise commuting, non-zero
/// semisimple matrices among `ms` — a lower bound for the number of
/// commuting semisimple elements a generating set can contain.
pub fn commuting_semisimple_lower_bound(ms: &[RatMatrix]) -> Result<usize, SpectralError> {
    let mut chosen: Vec<&RatMatrix> = Vec::new();
    for m in ms {
        if m.is_zero() || !chevalley(m)?.n.is_zero() {
            continue;
        }
        if chosen.iter().all(|c| c.commutes_with(m)) && !chosen.contains(&m) {
            chosen.push(m);
        }
    }
    Ok(chosen.len())
}

/// `p(M) = 0` for a univariate `p`; used by invariant checks.
pub fn annihilates(p: &UniPoly, m: &RatMatrix) -> bool {
    p.eval_matrix(m).is_zero()
}

/// Convenience for callers holding integer data.
pub fn rat_matrix(rows: &[&[i64]]) -> RatMatrix {
    RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&k| Rational::from_integer(k.into())).collect()).collect())
        .expect("square rows")
}

impl ChevalleyPair {
    /// All defining properties, checked exactly against the input `m`.
    pub fn is_valid_for(&self, m: &RatMatrix) -> bool {
        let p = m.char_poly().squarefree_part();
        self.s.add(&self.n) == *m
            && self.s.commutes_with(&self.n)
            && self.n.pow(m.size() as u32).is_zero()
            && annihilates(&p, &self.s)
    }
}

#[cfg(test)]
mod tests;
