//! Logarithmic derivations of a divisor `D = V(f)`.
//!
//! A derivation `δ = Σ a_i ∂_i` is logarithmic along `D` when `δ(f) = α·f`
//! for some polynomial cofactor `α`. A free divisor has `n` such derivations
//! forming a basis; their coefficient matrix is the Saito matrix.

mod basis;
mod fitting;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::groebner::GroebnerError;
use crate::poly::{Poly, PolyError, Rational, VarContext};

pub use basis::{compute_log_basis, ensure_reduced, is_linear_free, saito_matrices, verify_free_basis, LogBasis};
pub use basis::{is_product_at_point, MAX_SUBSETS};
pub use fitting::{fitting_chain, FittingChain};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogDerivError {
    #[error("derivations live in different variable contexts")]
    ContextMismatch,
    #[error("expected {expected} entries, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("the equation is zero")]
    ZeroEquation,
    #[error("derivation {0} is not logarithmic")]
    NotLogarithmic(usize),
    #[error("det of the Saito matrix is not a unit multiple of f")]
    DeterminantNotUnitMultiple,
    #[error("point is not on the divisor")]
    PointNotOnDivisor,
    #[error("equation is not reduced: {0} divides it twice")]
    NotReduced(String),
    #[error("no free basis found among {candidates} candidates ({tried} subsets tried)")]
    NoFreeBasisFound { candidates: usize, tried: usize },
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `δ = Σ coeffs[i]·∂_i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Derivation {
    ctx: Arc<VarContext>,
    coeffs: Vec<Poly>,
}

impl Derivation {
    pub fn new(ctx: &Arc<VarContext>, coeffs: Vec<Poly>) -> Result<Derivation, LogDerivError> {
        if coeffs.len() != ctx.nvars() {
            return Err(LogDerivError::DimensionMismatch { expected: ctx.nvars(), got: coeffs.len() });
        }
        if coeffs.iter().any(|c| !crate::poly::same_ctx(c.ctx(), ctx)) {
            return Err(LogDerivError::ContextMismatch);
        }
        Ok(Derivation { ctx: ctx.clone(), coeffs })
    }

    pub fn zero(ctx: &Arc<VarContext>) -> Derivation {
        Derivation { ctx: ctx.clone(), coeffs: vec![Poly::zero(ctx); ctx.nvars()] }
    }

    /// `∂_i`.
    pub fn partial(ctx: &Arc<VarContext>, i: usize) -> Derivation {
        let mut d = Derivation::zero(ctx);
        d.coeffs[i] = Poly::one(ctx);
        d
    }

    /// The Euler field `Σ x_i ∂_i`.
    pub fn euler(ctx: &Arc<VarContext>) -> Derivation {
        Derivation { ctx: ctx.clone(), coeffs: (0..ctx.nvars()).map(|i| Poly::var(ctx, i)).collect() }
    }

    /// `Σ w_i x_i ∂_i`.
    pub fn weighted_euler(ctx: &Arc<VarContext>, weights: &[Rational]) -> Result<Derivation, LogDerivError> {
        if weights.len() != ctx.nvars() {
            return Err(LogDerivError::DimensionMismatch { expected: ctx.nvars(), got: weights.len() });
        }
        let coeffs = weights.iter().enumerate().map(|(i, w)| Poly::var(ctx, i).scale(w)).collect();
        Ok(Derivation { ctx: ctx.clone(), coeffs })
    }

    pub fn ctx(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    /// Vanishes at the origin (no constant coefficient).
    pub fn is_singular(&self) -> bool {
        self.coeffs.iter().all(|c| c.constant_term() == <Rational as num_traits::Zero>::zero())
    }

    pub fn scale(&self, c: &Rational) -> Derivation {
        Derivation { ctx: self.ctx.clone(), coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect() }
    }

    /// `g·δ` for a polynomial `g`.
    pub fn mul_poly(&self, g: &Poly) -> Derivation {
        Derivation { ctx: self.ctx.clone(), coeffs: self.coeffs.iter().map(|p| p * g).collect() }
    }

    pub fn checked_add(&self, other: &Derivation) -> Result<Derivation, LogDerivError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Derivation { ctx: self.ctx.clone(), coeffs })
    }

    pub fn checked_sub(&self, other: &Derivation) -> Result<Derivation, LogDerivError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Derivation { ctx: self.ctx.clone(), coeffs })
    }

    /// `δ(f) = Σ coeffs[i]·∂_i f`.
    pub fn apply(&self, f: &Poly) -> Result<Poly, LogDerivError> {
        if !crate::poly::same_ctx(f.ctx(), &self.ctx) {
            return Err(LogDerivError::ContextMismatch);
        }
        let mut acc = Poly::zero(&self.ctx);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let d = f.partial_derivative(i)?;
            if !d.is_zero() {
                acc = &acc + &(a * &d);
            }
        }
        Ok(acc)
    }

    /// `[a, b]` with `[a, b]_j = a(b_j) - b(a_j)`.
    pub fn lie_bracket(&self, other: &Derivation) -> Result<Derivation, LogDerivError> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| Ok(&self.apply(b)? - &other.apply(a)?))
            .collect::<Result<Vec<_>, LogDerivError>>()?;
        Ok(Derivation { ctx: self.ctx.clone(), coeffs })
    }

    fn check(&self, other: &Derivation) -> Result<(), LogDerivError> {
        if crate::poly::same_ctx(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(LogDerivError::ContextMismatch)
        }
    }
}

/// The cofactor `α` with `d(f) = α·f`, if `f` divides `d(f)`.
pub fn is_logarithmic(f: &Poly, d: &Derivation) -> Result<Option<Poly>, LogDerivError> {
    if f.is_zero() {
        return Err(LogDerivError::ZeroEquation);
    }
    let image = d.apply(f)?;
    match image.exact_divide(f) {
        Ok(q) => Ok(Some(q)),
        Err(PolyError::NotDivisible) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, name) in self.coeffs.iter().zip(self.ctx.names()) {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "d/d{name}")?;
            } else {
                write!(f, "({c})*d/d{name}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Derivation({self})")
    }
}

#[cfg(test)]
pub(crate) mod tests;
