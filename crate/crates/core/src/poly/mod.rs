//! Exact multivariate polynomials over the rationals.
//!
//! A [`Poly`] lives in a [`VarContext`] (an ordered list of variable names)
//! and keeps its terms in canonical form: no zero coefficients, sorted by
//! descending degrevlex. Two polynomials are equal iff their term lists are.

mod matrix;
mod monomial;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use matrix::PolyMatrix;
pub use monomial::{Monomial, MonomialOrder};
pub use num_rational::BigRational as Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials live in different variable contexts")]
    ContextMismatch,
    #[error("variable index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("dividend is not a multiple of the divisor")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("invalid variable context: {0}")]
    InvalidContext(String),
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Ordered, duplicate-free list of variable names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarContext {
    names: Vec<String>,
}

impl VarContext {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Arc<VarContext>, PolyError> {
        if names.is_empty() {
            return Err(PolyError::InvalidContext("no variables".into()));
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, a) in names.iter().enumerate() {
            if a.is_empty() {
                return Err(PolyError::InvalidContext("empty variable name".into()));
            }
            if names[..i].contains(a) {
                return Err(PolyError::InvalidContext(format!("duplicate variable `{a}`")));
            }
        }
        Ok(Arc::new(VarContext { names }))
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Context with one fresh variable prepended. The name never clashes
    /// with user identifiers, which cannot start with `_`.
    pub fn with_fresh_front(&self, hint: &str) -> Arc<VarContext> {
        let mut name = format!("_{hint}");
        let mut k = 0;
        while self.names.contains(&name) {
            k += 1;
            name = format!("_{hint}{k}");
        }
        let mut names = Vec::with_capacity(self.names.len() + 1);
        names.push(name);
        names.extend(self.names.iter().cloned());
        Arc::new(VarContext { names })
    }
}

/// Total degree; the zero polynomial has degree `MinusInfinity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    MinusInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::MinusInfinity => None,
        }
    }
}

#[derive(Clone)]
pub struct Poly {
    ctx: Arc<VarContext>,
    terms: Vec<(Monomial, Rational)>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && same_ctx(&self.ctx, &other.ctx)
    }
}

impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

#[inline]
pub(crate) fn same_ctx(a: &Arc<VarContext>, b: &Arc<VarContext>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Poly {
    pub fn zero(ctx: &Arc<VarContext>) -> Poly {
        Poly { ctx: ctx.clone(), terms: Vec::new() }
    }

    pub fn constant(ctx: &Arc<VarContext>, c: Rational) -> Poly {
        let n = ctx.nvars();
        Poly::monomial(ctx, Monomial::one(n), c)
    }

    pub fn one(ctx: &Arc<VarContext>) -> Poly {
        Poly::constant(ctx, Rational::one())
    }

    pub fn var(ctx: &Arc<VarContext>, i: usize) -> Poly {
        Poly::monomial(ctx, Monomial::var(ctx.nvars(), i), Rational::one())
    }

    pub fn monomial(ctx: &Arc<VarContext>, m: Monomial, c: Rational) -> Poly {
        debug_assert_eq!(m.nvars(), ctx.nvars());
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Poly { ctx: ctx.clone(), terms }
    }

    /// Builds a polynomial from arbitrary terms: merges duplicates, drops zeros, sorts.
    pub fn from_terms<I>(ctx: &Arc<VarContext>, terms: I) -> Poly
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ctx.nvars());
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Poly::from_map(ctx, acc)
    }

    fn from_map(ctx: &Arc<VarContext>, acc: HashMap<Monomial, Rational>) -> Poly {
        let mut terms: Vec<(Monomial, Rational)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| MonomialOrder::DegRevLex.cmp(&b.0, &a.0));
        Poly { ctx: ctx.clone(), terms }
    }

    pub fn ctx(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.ctx.nvars()
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn constant_term(&self) -> Rational {
        // the constant monomial is the smallest in any graded order, so it sits last
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Rational::zero(),
        }
    }

    /// Coefficient of a given monomial.
    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Degree {
        self.terms
            .first()
            .map(|(m, _)| Degree::Finite(m.degree()))
            .unwrap_or(Degree::MinusInfinity)
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => {
                let d = m0.degree();
                self.terms.iter().all(|(m, _)| m.degree() == d)
            }
        }
    }

    /// Component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        let terms = self.terms.iter().filter(|(m, _)| m.degree() == d).cloned().collect();
        Poly { ctx: self.ctx.clone(), terms }
    }

    pub fn involves_var(&self, i: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponents()[i] > 0)
    }

    /// Leading term with respect to `ord`.
    pub fn leading_term(&self, ord: MonomialOrder) -> Option<&(Monomial, Rational)> {
        if ord == MonomialOrder::DegRevLex {
            return self.terms.first();
        }
        self.terms.iter().max_by(|a, b| ord.cmp(&a.0, &b.0))
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_ctx(other)?;
        Ok(self.merge(other, |c| c.clone()))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_ctx(other)?;
        Ok(self.merge(other, |c| -c))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_ctx(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn check_ctx(&self, other: &Poly) -> Result<(), PolyError> {
        if same_ctx(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(PolyError::ContextMismatch)
        }
    }

    fn merge(&self, other: &Poly, map_other: impl Fn(&Rational) -> Rational) -> Poly {
        let ord = MonomialOrder::DegRevLex;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match ord.cmp(&a[i].0, &b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((b[j].0.clone(), map_other(&b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &a[i].1 + map_other(&b[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), map_other(c))));
        Poly { ctx: self.ctx.clone(), terms: out }
    }

    fn mul_unchecked(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.ctx);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        Poly::from_map(&self.ctx, acc)
    }

    /// Multiplication by a single term preserves the order of terms.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ctx);
        }
        let terms = self.terms.iter().map(|(t, d)| (t.mul(m), d * c)).collect();
        Poly { ctx: self.ctx.clone(), terms }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        self.mul_term(&Monomial::one(self.nvars()), c)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one(&self.ctx);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Makes the leading (degrevlex) coefficient one.
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn partial_derivative(&self, i: usize) -> Result<Poly, PolyError> {
        if i >= self.nvars() {
            return Err(PolyError::IndexOutOfRange(i));
        }
        let terms = self.terms.iter().filter(|(m, _)| m.exponents()[i] > 0).map(|(m, c)| {
            let e = m.exponents()[i];
            let mut m2 = m.clone();
            *m2.exponent_mut(i) -= 1;
            (m2, c * Rational::from_integer(e.into()))
        });
        Ok(Poly::from_terms(&self.ctx, terms))
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        if point.len() != self.nvars() {
            return Err(PolyError::DimensionMismatch { expected: self.nvars(), got: point.len() });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    if x.is_zero() {
                        v = Rational::zero();
                        break;
                    }
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Returns `q` with `self = q * g`, or `NotDivisible`.
    pub fn exact_divide(&self, g: &Poly) -> Result<Poly, PolyError> {
        self.check_ctx(g)?;
        let (lm_g, lc_g) = g.terms.first().ok_or(PolyError::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quot: Vec<(Monomial, Rational)> = Vec::new();
        while let Some((lm, lc)) = rem.terms.first() {
            let q = lm_g.quotient_of(lm).ok_or(PolyError::NotDivisible)?;
            let c = lc / lc_g;
            rem = &rem - &g.mul_term(&q, &c);
            quot.push((q, c));
        }
        // quotient terms come out in strictly decreasing order
        Ok(Poly { ctx: self.ctx.clone(), terms: quot })
    }

    /// The same polynomial viewed in `ctx`, whose last `self.nvars()` variables
    /// are this polynomial's variables.
    pub fn embed_back(&self, ctx: &Arc<VarContext>) -> Poly {
        let k = ctx.nvars() - self.nvars();
        let terms = self.terms.iter().map(|(m, c)| (m.shifted(k), c.clone()));
        Poly::from_terms(ctx, terms)
    }

    /// Inverse of [`Poly::embed_back`]; `None` if a dropped variable occurs.
    pub fn project_back(&self, ctx: &Arc<VarContext>) -> Option<Poly> {
        let k = self.nvars() - ctx.nvars();
        if self.terms.iter().any(|(m, _)| m.exponents()[..k].iter().any(|&e| e > 0)) {
            return None;
        }
        let terms = self.terms.iter().map(|(m, c)| (m.unshifted(k), c.clone())).collect();
        // order of the remaining exponents is unchanged by dropping leading zeros
        Some(Poly { ctx: ctx.clone(), terms })
    }

    /// Substitutes `x_i -> values[i]` (polynomials in a possibly different context).
    pub fn substitute(&self, values: &[Poly], target: &Arc<VarContext>) -> Poly {
        let mut acc = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (v, &e) in values.iter().zip(m.exponents()) {
                if e > 0 {
                    t = &t * &v.pow(e);
                }
            }
            acc = &acc + &t;
        }
        acc
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            /// Panics on context mismatch; use the `checked_*` variant for fallible use.
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).expect("polynomial context mismatch")
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Poly { ctx: self.ctx.clone(), terms }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Canonical rendering: descending degrevlex, explicit `*` and `^`,
/// coefficients as `a/b` or `a`, factors in context order.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let mut first = true;
            if m.is_one() || !a.is_one() {
                write!(f, "{a}")?;
                first = false;
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{}", self.ctx.names[i])?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}
