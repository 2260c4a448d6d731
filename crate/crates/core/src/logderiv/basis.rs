use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use num_traits::Zero;

use super::{is_logarithmic, Derivation, LogDerivError};
use crate::groebner::{self, syzygies};
use crate::poly::{Poly, PolyError, PolyMatrix};

/// Upper bound on the number of `n`-subsets tried by [`compute_log_basis`].
pub const MAX_SUBSETS: usize = 500;

/// A basis of logarithmic derivations certified by Saito's criterion.
#[derive(Clone, Debug)]
pub struct LogBasis {
    f: Poly,
    basis: Vec<Derivation>,
    cofactors: Vec<Poly>,
    unit: Poly,
}

impl LogBasis {
    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn basis(&self) -> &[Derivation] {
        &self.basis
    }

    /// `basis[i](f) = cofactors[i]·f`.
    pub fn cofactors(&self) -> &[Poly] {
        &self.cofactors
    }

    /// `det A / f`; non-zero at the origin.
    pub fn unit(&self) -> &Poly {
        &self.unit
    }

    pub fn nvars(&self) -> usize {
        self.f.nvars()
    }
}

/// `A[i][j] = δ_i(x_j)` and `Ã = (A | -α)`.
pub fn saito_matrices(l: &LogBasis) -> (PolyMatrix, PolyMatrix) {
    let ctx = l.f.ctx();
    let a_rows: Vec<Vec<Poly>> = l.basis.iter().map(|d| d.coeffs().to_vec()).collect();
    let at_rows: Vec<Vec<Poly>> = a_rows
        .iter()
        .zip(&l.cofactors)
        .map(|(row, alpha)| {
            let mut r = row.clone();
            r.push(-alpha);
            r
        })
        .collect();
    let a = PolyMatrix::from_rows(ctx, a_rows).expect("n derivations of length n");
    let at = PolyMatrix::from_rows(ctx, at_rows).expect("rows of equal length");
    (a, at)
}

/// Checks that `ds` are logarithmic and that `det A = u·f` with `u(0) ≠ 0`.
pub fn verify_free_basis(f: &Poly, ds: &[Derivation]) -> Result<LogBasis, LogDerivError> {
    if f.is_zero() {
        return Err(LogDerivError::ZeroEquation);
    }
    let n = f.nvars();
    if ds.len() != n {
        return Err(LogDerivError::DimensionMismatch { expected: n, got: ds.len() });
    }
    let mut cofactors = Vec::with_capacity(n);
    for (i, d) in ds.iter().enumerate() {
        match is_logarithmic(f, d)? {
            Some(alpha) => cofactors.push(alpha),
            None => return Err(LogDerivError::NotLogarithmic(i)),
        }
    }
    let rows: Vec<Vec<Poly>> = ds.iter().map(|d| d.coeffs().to_vec()).collect();
    let det = PolyMatrix::from_rows(f.ctx(), rows)?.det()?;
    let unit = match det.exact_divide(f) {
        Ok(u) => u,
        Err(PolyError::NotDivisible) => return Err(LogDerivError::DeterminantNotUnitMultiple),
        Err(e) => return Err(e.into()),
    };
    if unit.constant_term().is_zero() {
        return Err(LogDerivError::DeterminantNotUnitMultiple);
    }
    Ok(LogBasis { f: f.clone(), basis: ds.to_vec(), cofactors, unit })
}

/// Product structure at `p`: some basis derivation does not vanish there.
pub fn is_product_at_point(l: &LogBasis, p: &[crate::poly::Rational]) -> Result<bool, LogDerivError> {
    if !l.f.evaluate(p)?.is_zero() {
        return Err(LogDerivError::PointNotOnDivisor);
    }
    for d in &l.basis {
        for c in d.coeffs() {
            if !c.evaluate(p)?.is_zero() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Fails with `NotReduced` unless `gcd(f, ∂_1 f, …, ∂_n f)` is constant.
///
/// A repeated factor `p² | f` divides every partial derivative; conversely
/// a common factor of `f` and all its partials is a repeated factor.
pub fn ensure_reduced(f: &Poly, budget: u64) -> Result<(), LogDerivError> {
    if f.is_zero() {
        return Err(LogDerivError::ZeroEquation);
    }
    let mut g = f.monic();
    for i in 0..f.nvars() {
        if g.is_constant() {
            return Ok(());
        }
        let d = f.partial_derivative(i)?;
        if d.is_zero() {
            continue;
        }
        g = groebner::gcd(&g, &d, budget)?;
    }
    if g.is_constant() {
        Ok(())
    } else {
        Err(LogDerivError::NotReduced(g.to_string()))
    }
}

/// A free basis of `Der(-log f)` taken from the syzygies of
/// `(∂_1 f, …, ∂_n f, -f)`: the first `n` coordinates of a syzygy form a
/// logarithmic derivation. Candidate `n`-subsets are tried in order of
/// increasing total degree until one passes Saito's criterion.
pub fn compute_log_basis(f: &Poly, budget: u64) -> Result<LogBasis, LogDerivError> {
    ensure_reduced(f, budget)?;
    let ctx = f.ctx();
    let n = f.nvars();
    let mut gens = (0..n).map(|i| f.partial_derivative(i)).collect::<Result<Vec<_>, _>>()?;
    gens.push(-f);
    let syz = syzygies(&gens, budget)?;

    let mut seen = HashSet::new();
    let mut cands: Vec<(u32, usize, String, Derivation)> = Vec::new();
    for v in syz {
        let d = Derivation::new(ctx, v.coords[..n].to_vec())?;
        if d.is_zero() {
            continue;
        }
        let d = normalize(d);
        if seen.insert(d.clone()) {
            let deg = d.coeffs().iter().filter_map(|c| c.degree().finite()).max().unwrap_or(0);
            let len = d.coeffs().iter().map(Poly::num_terms).sum();
            cands.push((deg, len, d.to_string(), d));
        }
    }
    cands.sort_by(|a, b| (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)));
    let cands: Vec<(u32, Derivation)> = cands.into_iter().map(|(deg, _, _, d)| (deg, d)).collect();
    let m = cands.len();
    if m < n {
        return Err(LogDerivError::NoFreeBasisFound { candidates: m, tried: 0 });
    }

    let weight = |idx: &[usize]| idx.iter().map(|&i| cands[i].0).sum::<u32>();
    let mut heap = BinaryHeap::new();
    let mut visited = HashSet::new();
    let start: Vec<usize> = (0..n).collect();
    heap.push(Reverse((weight(&start), start.clone())));
    visited.insert(start);
    let mut tried = 0;
    while let Some(Reverse((_, idx))) = heap.pop() {
        if tried == MAX_SUBSETS {
            break;
        }
        tried += 1;
        let ds: Vec<Derivation> = idx.iter().map(|&i| cands[i].1.clone()).collect();
        match verify_free_basis(f, &ds) {
            Ok(l) => return Ok(l),
            Err(LogDerivError::DeterminantNotUnitMultiple) => {}
            Err(e) => return Err(e),
        }
        for p in 0..n {
            let bound = if p + 1 < n { idx[p + 1] } else { m };
            if idx[p] + 1 < bound {
                let mut next = idx.clone();
                next[p] += 1;
                if visited.insert(next.clone()) {
                    heap.push(Reverse((weight(&next), next)));
                }
            }
        }
    }
    Err(LogDerivError::NoFreeBasisFound { candidates: m, tried })
}

/// Scales so the first non-zero coefficient has leading coefficient one.
fn normalize(d: Derivation) -> Derivation {
    let lc = d.coeffs().iter().find(|c| !c.is_zero()).map(|c| c.terms()[0].1.clone());
    match lc {
        Some(lc) => d.scale(&lc.recip()),
        None => d,
    }
}

/// All basis coefficients are linear forms. When they are, `f` must be
/// homogeneous of degree `n` and the Euler field must lie in the span;
/// both are checked, and a failure of either makes the answer `false`.
pub fn is_linear_free(l: &LogBasis) -> Result<bool, LogDerivError> {
    let linear = l
        .basis
        .iter()
        .flat_map(|d| d.coeffs())
        .all(|c| c.is_zero() || (c.is_homogeneous() && c.degree().finite() == Some(1)));
    if !linear {
        return Ok(false);
    }
    let n = l.nvars();
    if !l.f.is_homogeneous() || l.f.degree().finite() != Some(n as u32) {
        return Ok(false);
    }
    Ok(in_span(l, &Derivation::euler(l.f.ctx()))?)
}

/// `χ ∈ Σ 𝒪·δ_i`: solve `c·A = χ` by Cramer's rule, `c = χ·adj(A) / det(A)`.
pub(crate) fn in_span(l: &LogBasis, chi: &Derivation) -> Result<bool, PolyError> {
    let (a, _) = saito_matrices(l);
    let det = a.det()?;
    let adj = a.adjugate()?;
    let n = l.nvars();
    for j in 0..n {
        let mut s = Poly::zero(l.f.ctx());
        for k in 0..n {
            s = &s + &(&chi.coeffs()[k] * adj.get(k, j));
        }
        match s.exact_divide(&det) {
            Ok(_) => {}
            Err(PolyError::NotDivisible) => return Ok(false),
            Err(e) => return Err(e),
        }
    }
    Ok(true)
}
