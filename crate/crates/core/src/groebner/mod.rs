//! Ideals of polynomial rings over the rationals and the Gröbner machinery
//! behind them: normal forms, elimination, intersection, colon ideals,
//! radical membership, Krull dimension and syzygies.

mod buchberger;
mod syzygy;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::poly::{Monomial, MonomialOrder, Poly, PolyError, Rational, VarContext};
use buchberger::{Elem, Steps, Term};

pub use syzygy::{syzygies, SyzygyVector};

/// Default limit on reduction steps per Gröbner computation.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("reduction step budget of {limit} exceeded")]
    BudgetExceeded { limit: u64 },
    #[error("ideals or polynomials live in different variable contexts")]
    ContextMismatch,
    #[error("colon by the zero polynomial")]
    DivisionByZero,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A reduced Gröbner basis for a fixed monomial order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ctx: Arc<VarContext>,
    order: MonomialOrder,
    polys: Vec<Poly>,
    elems: Vec<Elem<()>>,
}

impl GroebnerBasis {
    fn from_sorted(ctx: &Arc<VarContext>, order: MonomialOrder, sorted: Vec<Vec<Term>>) -> Self {
        let polys = sorted.iter().map(|t| buchberger::to_poly(ctx, t.clone())).collect();
        let elems = sorted.into_iter().map(|t| buchberger::make_elem(t, ())).collect();
        GroebnerBasis { ctx: ctx.clone(), order, polys, elems }
    }

    /// Wraps polynomials that already form a Gröbner basis for `order`.
    pub fn assume(ctx: &Arc<VarContext>, order: MonomialOrder, polys: &[Poly]) -> Self {
        let sorted = polys
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| buchberger::sort_terms(order, p.terms().to_vec()))
            .collect();
        Self::from_sorted(ctx, order, sorted)
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// True when the basis is `{1}`.
    pub fn is_unit(&self) -> bool {
        self.elems.len() == 1 && self.elems[0].lm().is_one()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elems.iter().map(|e| e.lm().clone()).collect()
    }

    pub fn normal_form(&self, f: &Poly) -> Result<Poly, GroebnerError> {
        if !crate::poly::same_ctx(f.ctx(), &self.ctx) {
            return Err(GroebnerError::ContextMismatch);
        }
        let active: Vec<usize> = (0..self.elems.len()).collect();
        let terms = buchberger::sort_terms(self.order, f.terms().to_vec());
        let mut steps = Steps::new(u64::MAX);
        let (r, _) = buchberger::reduce(terms, (), &self.elems, &active, self.order, true, &mut steps)?;
        Ok(buchberger::to_poly(&self.ctx, r))
    }

    pub fn contains(&self, f: &Poly) -> Result<bool, GroebnerError> {
        if self.is_unit() {
            return Ok(true);
        }
        Ok(self.normal_form(f)?.is_zero())
    }

    /// S-polynomial of basis elements `i` and `j` (monic leading terms).
    pub fn s_polynomial(&self, i: usize, j: usize) -> Poly {
        let a = &self.polys[i].monic();
        let b = &self.polys[j].monic();
        let (la, _) = a.leading_term(self.order).unwrap().clone();
        let (lb, _) = b.leading_term(self.order).unwrap().clone();
        let l = la.lcm(&lb);
        let one = Rational::one();
        &a.mul_term(&la.quotient_of(&l).unwrap(), &one) - &b.mul_term(&lb.quotient_of(&l).unwrap(), &one)
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn groebner_basis(
    ctx: &Arc<VarContext>,
    gens: &[Poly],
    order: MonomialOrder,
    budget: u64,
) -> Result<GroebnerBasis, GroebnerError> {
    if gens.iter().any(|g| !crate::poly::same_ctx(g.ctx(), ctx)) {
        return Err(GroebnerError::ContextMismatch);
    }
    let mut steps = Steps::new(budget);
    let inputs = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| (buchberger::sort_terms(order, g.terms().to_vec()), ()))
        .collect();
    let raw = buchberger::buchberger(inputs, order, &mut steps)?;
    let sorted = buchberger::interreduce(raw, order, &mut steps)?;
    Ok(GroebnerBasis::from_sorted(ctx, order, sorted))
}

/// Multivariate division remainder of `f` by a Gröbner basis.
pub fn normal_form(f: &Poly, basis: &GroebnerBasis) -> Result<Poly, GroebnerError> {
    basis.normal_form(f)
}

/// Monic greatest common divisor, via `gcd·lcm = a·b` and `(lcm) = (a) ∩ (b)`.
/// `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly, budget: u64) -> Result<Poly, GroebnerError> {
    if !crate::poly::same_ctx(a.ctx(), b.ctx()) {
        return Err(GroebnerError::ContextMismatch);
    }
    if a.is_zero() || b.is_zero() {
        return Ok(if a.is_zero() { b.monic() } else { a.monic() });
    }
    if a.is_constant() || b.is_constant() {
        return Ok(Poly::one(a.ctx()));
    }
    let ctx = a.ctx();
    let meet = Ideal::new(ctx, vec![a.clone()])?
        .with_budget(budget)
        .intersect(&Ideal::new(ctx, vec![b.clone()])?)?;
    let gb = meet.gb()?;
    debug_assert_eq!(gb.len(), 1, "intersection of principal ideals is principal");
    Ok((a * b).exact_divide(&gb.polys()[0])?.monic())
}

type GbCache = Arc<Mutex<HashMap<MonomialOrder, Arc<GroebnerBasis>>>>;

/// An ideal given by generators, with reduced Gröbner bases cached per order.
#[derive(Clone)]
pub struct Ideal {
    ctx: Arc<VarContext>,
    gens: Vec<Poly>,
    budget: u64,
    cache: GbCache,
}

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.gens.iter().map(|g| g.to_string())).finish()
    }
}

impl Ideal {
    /// Zero generators are dropped; duplicates (up to a scalar) are merged.
    pub fn new(ctx: &Arc<VarContext>, gens: Vec<Poly>) -> Result<Ideal, GroebnerError> {
        if gens.iter().any(|g| !crate::poly::same_ctx(g.ctx(), ctx)) {
            return Err(GroebnerError::ContextMismatch);
        }
        let mut seen = std::collections::HashSet::new();
        let gens = gens.into_iter().filter(|g| !g.is_zero() && seen.insert(g.monic())).collect();
        Ok(Ideal { ctx: ctx.clone(), gens, budget: DEFAULT_BUDGET, cache: Arc::default() })
    }

    pub fn unit(ctx: &Arc<VarContext>) -> Ideal {
        Ideal::new(ctx, vec![Poly::one(ctx)]).unwrap()
    }

    pub fn zero(ctx: &Arc<VarContext>) -> Ideal {
        Ideal::new(ctx, Vec::new()).unwrap()
    }

    /// The ideal generated by the variables.
    pub fn maximal(ctx: &Arc<VarContext>) -> Ideal {
        Ideal::new(ctx, (0..ctx.nvars()).map(|i| Poly::var(ctx, i)).collect()).unwrap()
    }

    pub fn with_budget(mut self, budget: u64) -> Ideal {
        self.budget = budget;
        self
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    fn derived(&self, ctx: &Arc<VarContext>, gens: Vec<Poly>) -> Ideal {
        Ideal::new(ctx, gens).expect("same context").with_budget(self.budget)
    }

    pub fn ctx(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    /// Non-zero generators; empty for the zero ideal.
    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    fn check(&self, other: &Ideal) -> Result<(), GroebnerError> {
        if crate::poly::same_ctx(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(GroebnerError::ContextMismatch)
        }
    }

    fn check_poly(&self, f: &Poly) -> Result<(), GroebnerError> {
        if crate::poly::same_ctx(&self.ctx, f.ctx()) {
            Ok(())
        } else {
            Err(GroebnerError::ContextMismatch)
        }
    }

    /// Reduced Gröbner basis for `order`, computed at most once per order
    /// (concurrent first calls may both compute; results are identical).
    pub fn groebner_basis(&self, order: MonomialOrder) -> Result<Arc<GroebnerBasis>, GroebnerError> {
        if let Some(gb) = self.cache.lock().unwrap().get(&order) {
            return Ok(gb.clone());
        }
        let gb = Arc::new(groebner_basis(&self.ctx, &self.gens, order, self.budget)?);
        self.cache.lock().unwrap().entry(order).or_insert_with(|| gb.clone());
        Ok(gb)
    }

    pub fn gb(&self) -> Result<Arc<GroebnerBasis>, GroebnerError> {
        self.groebner_basis(MonomialOrder::DegRevLex)
    }

    pub fn is_unit_ideal(&self) -> Result<bool, GroebnerError> {
        if self.gens.iter().any(|g| g.is_constant()) {
            return Ok(true);
        }
        Ok(self.gb()?.is_unit())
    }

    pub fn contains(&self, f: &Poly) -> Result<bool, GroebnerError> {
        self.check_poly(f)?;
        if f.is_zero() {
            return Ok(true);
        }
        if self.gens.iter().any(|g| g.is_constant()) {
            return Ok(true);
        }
        self.gb()?.contains(f)
    }

    /// Generator-wise inclusion `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Ideal) -> Result<bool, GroebnerError> {
        self.check(other)?;
        for g in &self.gens {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `f ∈ √I`, decided by `1 ∈ I + (1 - y f)` with a fresh variable `y`.
    /// Low powers of `f` are tried against the cached basis first.
    pub fn radical_contains(&self, f: &Poly) -> Result<bool, GroebnerError> {
        self.check_poly(f)?;
        if f.is_zero() {
            return Ok(true);
        }
        if f.is_constant() {
            return self.is_unit_ideal();
        }
        if self.is_zero_ideal() {
            return Ok(false);
        }
        let gb = self.gb()?;
        if gb.is_unit() {
            return Ok(true);
        }
        let mut power = f.clone();
        for _ in 0..3 {
            if gb.contains(&power)? {
                return Ok(true);
            }
            power = &power * f;
        }
        self.rabinowitsch(f)
    }

    fn rabinowitsch(&self, f: &Poly) -> Result<bool, GroebnerError> {
        let ext = self.ctx.with_fresh_front("y");
        let mut gens: Vec<Poly> = self.gb()?.polys().iter().map(|g| g.embed_back(&ext)).collect();
        let y = Poly::var(&ext, 0);
        gens.push(&Poly::one(&ext) - &(&y * &f.embed_back(&ext)));
        let gb = groebner_basis(&ext, &gens, MonomialOrder::DegRevLex, self.budget)?;
        Ok(gb.is_unit())
    }

    /// `√I = √J`, checked generator-wise in both directions.
    pub fn radical_equal(&self, other: &Ideal) -> Result<bool, GroebnerError> {
        self.check(other)?;
        Ok(self.radical_subset_of(other)? && other.radical_subset_of(self)?)
    }

    /// `I ⊆ √J`.
    pub fn radical_subset_of(&self, other: &Ideal) -> Result<bool, GroebnerError> {
        self.check(other)?;
        let gens = self.short_generators()?;
        let verdicts: Result<Vec<bool>, GroebnerError> = gens.par_iter().map(|g| other.radical_contains(g)).collect();
        Ok(verdicts?.into_iter().all(|b| b))
    }

    /// Whichever of the generators and the reduced degrevlex basis is shorter.
    fn short_generators(&self) -> Result<Vec<Poly>, GroebnerError> {
        if self.gens.len() <= 4 {
            return Ok(self.gens.clone());
        }
        let gb = self.gb()?;
        Ok(if gb.len() < self.gens.len() { gb.polys().to_vec() } else { self.gens.clone() })
    }

    /// True iff every generator vanishes at the origin, i.e. `I ⊆ (x_1, …, x_n)`.
    pub fn contained_in_maximal(&self) -> bool {
        self.gens.iter().all(|g| g.constant_term().is_zero())
    }

    /// `I ∩ Q[x_{k+1}, …, x_n]`, kept in the same context.
    pub fn eliminate(&self, k: usize) -> Result<Ideal, GroebnerError> {
        let gb = self.groebner_basis(MonomialOrder::Block(k))?;
        let gens = gb.polys().iter().filter(|p| (0..k).all(|i| !p.involves_var(i))).cloned().collect();
        Ok(self.derived(&self.ctx, gens))
    }

    /// `I ∩ J` by eliminating `t` from `t·I + (1 - t)·J`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal, GroebnerError> {
        self.check(other)?;
        if self.is_zero_ideal() || other.is_zero_ideal() {
            return Ok(self.derived(&self.ctx, Vec::new()));
        }
        let ext = self.ctx.with_fresh_front("t");
        let t = Poly::var(&ext, 0);
        let one_minus_t = &Poly::one(&ext) - &t;
        let mut gens: Vec<Poly> = self.gens.iter().map(|g| &t * &g.embed_back(&ext)).collect();
        gens.extend(other.gens.iter().map(|g| &one_minus_t * &g.embed_back(&ext)));
        let big = Ideal::new(&ext, gens)?.with_budget(self.budget);
        let elim = big.eliminate(1)?;
        let gens = elim
            .gens
            .iter()
            .map(|g| g.project_back(&self.ctx).expect("eliminated variable absent"))
            .collect();
        Ok(self.derived(&self.ctx, gens))
    }

    /// `I : f = { g | g·f ∈ I }`, as `(I ∩ (f)) / f`.
    pub fn colon(&self, f: &Poly) -> Result<Ideal, GroebnerError> {
        self.check_poly(f)?;
        if f.is_zero() {
            return Err(GroebnerError::DivisionByZero);
        }
        let principal = self.derived(&self.ctx, vec![f.clone()]);
        let meet = self.intersect(&principal)?;
        let gens = meet.gens.iter().map(|g| g.exact_divide(f)).collect::<Result<Vec<_>, _>>()?;
        Ok(self.derived(&self.ctx, gens))
    }

    /// Dimension of `V(I)`: the largest variable set containing the support of
    /// no leading monomial of the reduced degrevlex basis. `-1` for `I = (1)`.
    pub fn krull_dimension(&self) -> Result<i64, GroebnerError> {
        let n = self.ctx.nvars();
        if self.is_zero_ideal() {
            return Ok(n as i64);
        }
        let gb = self.gb()?;
        if gb.is_unit() {
            return Ok(-1);
        }
        let supports: Vec<u64> = gb.leading_monomials().iter().map(|m| m.support_mask()).collect();
        let mut best = 0i64;
        for set in 0u64..(1u64 << n) {
            let size = set.count_ones() as i64;
            if size > best && supports.iter().all(|s| s & !set != 0) {
                best = size;
            }
        }
        Ok(best)
    }

    /// All generators homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }
}
