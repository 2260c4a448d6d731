//! Syzygy modules via Schreyer's construction.
//!
//! For generators `g = (g_1, …, g_m)` a Gröbner basis `G = T·g` is computed
//! with its transformation matrix `T`. Every pair of `G` gives a syzygy of
//! `G` from the standard representation of its S-polynomial; pulling these
//! back through `T`, together with the rows of `I - R·T` (where `g = R·G`),
//! generates the syzygies of `g`.

use std::collections::HashSet;
use std::sync::Arc;

use num_traits::One;

use super::buchberger::{self, Elem, Repr, Steps};
use super::GroebnerError;
use crate::poly::{Monomial, MonomialOrder, Poly, Rational, VarContext};

/// A relation `Σ coords[j]·g[j] = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SyzygyVector {
    pub coords: Vec<Poly>,
}

impl SyzygyVector {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Poly::is_zero)
    }

    /// `Σ coords[j]·g[j]`.
    pub fn evaluate(&self, gens: &[Poly]) -> Poly {
        let ctx = gens[0].ctx();
        self.coords.iter().zip(gens).fold(Poly::zero(ctx), |acc, (c, g)| &acc + &(c * g))
    }

    /// Scales so the leading coefficient of the first non-zero coordinate is one.
    fn normalized(self) -> SyzygyVector {
        let lc = self.coords.iter().find(|c| !c.is_zero()).map(|c| c.terms()[0].1.clone());
        match lc {
            Some(lc) if !lc.is_one() => {
                let inv = lc.recip();
                SyzygyVector { coords: self.coords.iter().map(|c| c.scale(&inv)).collect() }
            }
            _ => self,
        }
    }
}

/// A generating set of the syzygy module of `gens` (not necessarily minimal).
pub fn syzygies(gens: &[Poly], budget: u64) -> Result<Vec<SyzygyVector>, GroebnerError> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let ctx = first.ctx().clone();
    if gens.iter().any(|g| !crate::poly::same_ctx(g.ctx(), &ctx)) {
        return Err(GroebnerError::ContextMismatch);
    }
    let m = gens.len();
    let ord = MonomialOrder::DegRevLex;
    let mut steps = Steps::new(budget);
    let mut out: Vec<SyzygyVector> = Vec::new();

    // zero generators contribute unit syzygies
    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            out.push(SyzygyVector { coords: Repr::unit(&ctx, m, i).0 });
        }
    }

    let inputs = gens
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_zero())
        .map(|(i, g)| (g.terms().to_vec(), Repr::unit(&ctx, m, i)))
        .collect::<Vec<_>>();
    if inputs.is_empty() {
        return Ok(out);
    }
    let raw = buchberger::buchberger(inputs, ord, &mut steps)?;
    let basis: Vec<Elem<Repr>> = raw.active.iter().map(|&k| raw.elems[k].clone()).collect();
    let s = basis.len();

    // quotient tracking relative to the basis elements themselves
    let unit_basis: Vec<Elem<Repr>> = basis
        .iter()
        .enumerate()
        .map(|(k, e)| buchberger::make_elem(e.terms.clone(), Repr::unit(&ctx, s, k)))
        .collect();
    let all: Vec<usize> = (0..s).collect();

    let pull_back = |coords_g: &[Poly]| -> Vec<Poly> {
        let mut v = vec![Poly::zero(&ctx); m];
        for (c, e) in coords_g.iter().zip(&basis) {
            if c.is_zero() {
                continue;
            }
            for (j, t) in e.track.0.iter().enumerate() {
                if !t.is_zero() {
                    v[j] = &v[j] + &(c * t);
                }
            }
        }
        v
    };

    for i in 0..s {
        for j in i + 1..s {
            let (a, b) = (&unit_basis[i], &unit_basis[j]);
            let l = a.lm().lcm(b.lm());
            let qa = a.lm().quotient_of(&l).unwrap();
            let qb = b.lm().quotient_of(&l).unwrap();
            let (spoly, track) = s_pair(&ctx, a, b, &qa, &qb, s, i, j);
            let (rem, track) = buchberger::reduce(spoly, track, &unit_basis, &all, ord, true, &mut steps)?;
            debug_assert!(rem.is_empty(), "S-polynomial of a Gröbner basis must reduce to zero");
            let coords = pull_back(&track.0);
            let v = SyzygyVector { coords };
            if !v.is_zero() {
                out.push(v);
            }
        }
    }

    // g_i - Σ_k r_ik G_k = 0  ⇒  e_i - r_i·T
    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let zero = Repr(vec![Poly::zero(&ctx); s]);
        let (rem, track) = buchberger::reduce(g.terms().to_vec(), zero, &unit_basis, &all, ord, true, &mut steps)?;
        debug_assert!(rem.is_empty());
        // track holds -r_i
        let mut coords = pull_back(&track.0);
        coords[i] = &coords[i] + &Poly::one(&ctx);
        let v = SyzygyVector { coords };
        if !v.is_zero() {
            out.push(v);
        }
    }

    let mut seen = HashSet::new();
    Ok(out.into_iter().map(SyzygyVector::normalized).filter(|v| seen.insert(v.clone())).collect())
}

#[allow(clippy::too_many_arguments)]
fn s_pair(
    ctx: &Arc<VarContext>,
    a: &Elem<Repr>,
    b: &Elem<Repr>,
    qa: &Monomial,
    qb: &Monomial,
    s: usize,
    i: usize,
    j: usize,
) -> (Vec<buchberger::Term>, Repr) {
    let one = Rational::one();
    let ord = MonomialOrder::DegRevLex;
    let left: Vec<_> = a.terms[1..].iter().map(|(t, c)| (t.mul(qa), c.clone())).collect();
    let right: Vec<_> = b.terms[1..].iter().map(|(t, c)| (t.mul(qb), c.clone())).collect();
    let lp = Poly::from_terms(ctx, left);
    let rp = Poly::from_terms(ctx, right);
    let terms = buchberger::sort_terms(ord, (&lp - &rp).into_terms());
    // the S-polynomial equals qa·G_i - qb·G_j
    let mut coords = vec![Poly::zero(ctx); s];
    coords[i] = Poly::monomial(ctx, qa.clone(), one.clone());
    coords[j] = Poly::monomial(ctx, qb.clone(), -one);
    (terms, Repr(coords))
}
