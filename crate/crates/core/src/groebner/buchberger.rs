//! Buchberger's algorithm over the rationals.
//!
//! Polynomials are handled as term vectors sorted descending in the working
//! order. Basis elements are kept monic. Pairs are pruned with the
//! Gebauer–Möller installation (coprime and chain criteria) and selected by
//! the normal strategy: the pair whose lcm is smallest in the working order,
//! ties broken by pair index. Selecting by total degree alone (or by sugar)
//! behaves badly for elimination orders, where coefficients explode.

use std::cmp::Ordering;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::GroebnerError;
use crate::poly::{Monomial, MonomialOrder, Poly, Rational, VarContext};

pub(crate) type Term = (Monomial, Rational);

/// Reduction step counter shared by one computation.
#[derive(Debug)]
pub(crate) struct Steps {
    used: u64,
    limit: u64,
}

impl Steps {
    pub(crate) fn new(limit: u64) -> Self {
        Steps { used: 0, limit }
    }

    #[inline]
    fn tick(&mut self) -> Result<(), GroebnerError> {
        self.used += 1;
        if self.used > self.limit {
            Err(GroebnerError::BudgetExceeded { limit: self.limit })
        } else {
            Ok(())
        }
    }
}

/// Bookkeeping that follows every reduction step. `()` tracks nothing;
/// [`Repr`] records the element as a combination of some fixed sequence.
pub(crate) trait Track: Clone {
    fn sub_scaled(&mut self, c: &Rational, m: &Monomial, other: &Self);
    fn scale(&mut self, c: &Rational);
}

impl Track for () {
    #[inline]
    fn sub_scaled(&mut self, _: &Rational, _: &Monomial, _: &Self) {}
    #[inline]
    fn scale(&mut self, _: &Rational) {}
}

#[derive(Clone, Debug)]
pub(crate) struct Repr(pub Vec<Poly>);

impl Repr {
    pub(crate) fn unit(ctx: &Arc<VarContext>, len: usize, k: usize) -> Repr {
        let mut v = vec![Poly::zero(ctx); len];
        v[k] = Poly::one(ctx);
        Repr(v)
    }
}

impl Track for Repr {
    fn sub_scaled(&mut self, c: &Rational, m: &Monomial, other: &Self) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            if !b.is_zero() {
                *a = &*a - &b.mul_term(m, c);
            }
        }
    }

    fn scale(&mut self, c: &Rational) {
        for a in &mut self.0 {
            *a = a.scale(c);
        }
    }
}

pub(crate) fn sort_terms(ord: MonomialOrder, mut terms: Vec<Term>) -> Vec<Term> {
    if ord != MonomialOrder::DegRevLex {
        terms.sort_unstable_by(|a, b| ord.cmp(&b.0, &a.0));
    }
    terms
}

pub(crate) fn to_poly(ctx: &Arc<VarContext>, terms: Vec<Term>) -> Poly {
    Poly::from_terms(ctx, terms)
}

/// `p - c * m * g`, with both inputs sorted descending.
fn sub_mul(p: &[Term], c: &Rational, m: &Monomial, g: &[Term], ord: MonomialOrder) -> Vec<Term> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let mut shifted: Option<Monomial> = None;
    while j < g.len() {
        let gm = shifted.get_or_insert_with(|| g[j].0.mul(m));
        if i < p.len() {
            match ord.cmp(&p[i].0, gm) {
                Ordering::Greater => {
                    out.push(p[i].clone());
                    i += 1;
                    continue;
                }
                Ordering::Equal => {
                    let v = &p[i].1 - c * &g[j].1;
                    if !v.is_zero() {
                        out.push((shifted.take().unwrap(), v));
                    } else {
                        shifted = None;
                    }
                    i += 1;
                    j += 1;
                    continue;
                }
                Ordering::Less => {}
            }
        }
        out.push((shifted.take().unwrap(), -(c * &g[j].1)));
        j += 1;
    }
    out.extend_from_slice(&p[i..]);
    out
}

fn mul_monomial(p: &[Term], m: &Monomial) -> Vec<Term> {
    p.iter().map(|(t, c)| (t.mul(m), c.clone())).collect()
}

#[derive(Clone, Debug)]
pub(crate) struct Elem<T> {
    pub terms: Vec<Term>,
    pub track: T,
    mask: u64,
}

impl<T> Elem<T> {
    pub(crate) fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }
}

/// Normalizes to a monic element. `terms` must be non-empty.
pub(crate) fn make_elem<T: Track>(terms: Vec<Term>, mut track: T) -> Elem<T> {
    let lc = terms[0].1.clone();
    let terms = if lc.is_one() {
        terms
    } else {
        let inv = lc.recip();
        track.scale(&inv);
        terms.into_iter().map(|(m, c)| (m, c * &inv)).collect()
    };
    let mask = terms[0].0.support_mask();
    Elem { terms, track, mask }
}

fn find_reducer<T>(lm: &Monomial, basis: &[Elem<T>], active: &[usize]) -> Option<usize> {
    let mask = lm.support_mask();
    active
        .iter()
        .copied()
        .find(|&k| basis[k].mask & !mask == 0 && basis[k].lm().divides(lm))
}

/// Reduces `p` by the active elements of `basis`. With `full`, every term
/// is reduced; otherwise only the leading term.
pub(crate) fn reduce<T: Track>(
    p: Vec<Term>,
    mut track: T,
    basis: &[Elem<T>],
    active: &[usize],
    ord: MonomialOrder,
    full: bool,
    steps: &mut Steps,
) -> Result<(Vec<Term>, T), GroebnerError> {
    let mut rem: Vec<Term> = Vec::new();
    let mut p = p;
    let mut start = 0;
    while start < p.len() {
        let (lm, lc) = &p[start];
        match find_reducer(lm, basis, active) {
            Some(k) => {
                steps.tick()?;
                let g = &basis[k];
                let q = g.lm().quotient_of(lm).expect("divisibility checked");
                let c = lc.clone();
                track.sub_scaled(&c, &q, &g.track);
                p = sub_mul(&p[start + 1..], &c, &q, &g.terms[1..], ord);
                start = 0;
            }
            None if full => {
                rem.push(p[start].clone());
                start += 1;
            }
            None => {
                rem.extend_from_slice(&p[start..]);
                return Ok((rem, track));
            }
        }
    }
    Ok((rem, track))
}

fn spoly<T: Track>(a: &Elem<T>, b: &Elem<T>, ord: MonomialOrder) -> (Vec<Term>, T) {
    let l = a.lm().lcm(b.lm());
    let qa = a.lm().quotient_of(&l).unwrap();
    let qb = b.lm().quotient_of(&l).unwrap();
    let left = mul_monomial(&a.terms[1..], &qa);
    let terms = sub_mul(&left, &Rational::one(), &qb, &b.terms[1..], ord);
    // qa * track_a - qb * track_b
    let mut track = a.track.clone();
    track.sub_scaled(&Rational::one(), &Monomial::one(qa.nvars()), &a.track);
    track.sub_scaled(&-Rational::one(), &qa, &a.track);
    track.sub_scaled(&Rational::one(), &qb, &b.track);
    (terms, track)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Output of [`buchberger`]: all produced elements plus the indices that
/// form a minimal Gröbner basis.
pub(crate) struct RawBasis<T> {
    pub elems: Vec<Elem<T>>,
    pub active: Vec<usize>,
}

/// Gebauer–Möller installation of the new element `h`.
fn update<T>(basis: &[Elem<T>], active: &mut Vec<usize>, pairs: &mut Vec<Pair>, h: usize) {
    let hm = basis[h].lm().clone();
    let cand: Vec<(usize, Monomial)> = active.iter().map(|&g| (g, hm.lcm(basis[g].lm()))).collect();

    // chain criterion among the new pairs
    let mut keep: Vec<(usize, Monomial)> = Vec::new();
    for (idx, (g, l)) in cand.iter().enumerate() {
        let coprime = hm.is_coprime(basis[*g].lm());
        let dominated = cand[idx + 1..].iter().any(|(_, l2)| l2.divides(l))
            || keep.iter().any(|(_, l2)| l2.divides(l));
        if coprime || !dominated {
            keep.push((*g, l.clone()));
        }
    }
    // coprime leading monomials: the S-polynomial reduces to zero
    keep.retain(|(g, _)| !hm.is_coprime(basis[*g].lm()));

    pairs.retain(|p| {
        !(hm.divides(&p.lcm) && hm.lcm(basis[p.i].lm()) != p.lcm && hm.lcm(basis[p.j].lm()) != p.lcm)
    });
    for (g, l) in keep {
        let (i, j) = if g < h { (g, h) } else { (h, g) };
        pairs.push(Pair { i, j, lcm: l });
    }
    active.retain(|&g| !hm.divides(basis[g].lm()));
    active.push(h);
}

pub(crate) fn buchberger<T: Track>(
    inputs: Vec<(Vec<Term>, T)>,
    ord: MonomialOrder,
    steps: &mut Steps,
) -> Result<RawBasis<T>, GroebnerError> {
    let mut basis: Vec<Elem<T>> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut inputs: Vec<(Vec<Term>, T)> = inputs.into_iter().filter(|(t, _)| !t.is_empty()).collect();
    inputs.sort_by(|a, b| ord.cmp(&a.0[0].0, &b.0[0].0));
    for (terms, track) in inputs {
        let (terms, track) = reduce(terms, track, &basis, &active, ord, true, steps)?;
        if terms.is_empty() {
            continue;
        }
        let e = make_elem(terms, track);
        if e.lm().is_one() {
            return Ok(unit_basis(e));
        }
        basis.push(e);
        let h = basis.len() - 1;
        update(&basis, &mut active, &mut pairs, h);
    }

    while !pairs.is_empty() {
        let best = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| ord.cmp(&a.lcm, &b.lcm).then((a.i, a.j).cmp(&(b.i, b.j))))
            .map(|(k, _)| k)
            .unwrap();
        let pair = pairs.swap_remove(best);
        let (s, track) = spoly(&basis[pair.i], &basis[pair.j], ord);
        let (r, track) = reduce(s, track, &basis, &active, ord, true, steps)?;
        if r.is_empty() {
            continue;
        }
        let e = make_elem(r, track);
        if e.lm().is_one() {
            return Ok(unit_basis(e));
        }
        basis.push(e);
        let h = basis.len() - 1;
        update(&basis, &mut active, &mut pairs, h);
    }
    Ok(RawBasis { elems: basis, active })
}

fn unit_basis<T>(e: Elem<T>) -> RawBasis<T> {
    RawBasis { elems: vec![e], active: vec![0] }
}

/// Reduced Gröbner basis from a minimal one: tails are fully reduced and the
/// result is sorted by descending leading monomial.
pub(crate) fn interreduce(
    raw: RawBasis<()>,
    ord: MonomialOrder,
    steps: &mut Steps,
) -> Result<Vec<Vec<Term>>, GroebnerError> {
    let RawBasis { elems, mut active } = raw;
    active.sort_by(|&a, &b| ord.cmp(elems[b].lm(), elems[a].lm()));
    let mut out = Vec::with_capacity(active.len());
    for (pos, &k) in active.iter().enumerate() {
        let others: Vec<usize> = active.iter().copied().enumerate().filter(|&(q, _)| q != pos).map(|(_, i)| i).collect();
        let e = &elems[k];
        let (tail, _) = reduce(e.terms[1..].to_vec(), (), &elems, &others, ord, true, steps)?;
        let mut terms = Vec::with_capacity(tail.len() + 1);
        terms.push(e.terms[0].clone());
        terms.extend(tail);
        out.push(terms);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn sub_mul_cancels_matching_terms() {
        let ord = MonomialOrder::DegRevLex;
        let p = vec![(m(&[1, 1]), rat(2)), (m(&[0, 1]), rat(1))];
        let g = vec![(m(&[0, 1]), rat(1)), (m(&[0, 0]), rat(3))];
        // p - 2 * x * g = 2xy + y - 2xy - 6x = -6x + y
        let r = sub_mul(&p, &rat(2), &m(&[1, 0]), &g, ord);
        assert_eq!(r, vec![(m(&[1, 0]), rat(-6)), (m(&[0, 1]), rat(1))]);
    }
}
