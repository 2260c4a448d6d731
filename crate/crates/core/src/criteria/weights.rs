//! Positive weights making a polynomial quasihomogeneous.
//!
//! The weights `w` with `β·w = 1` for every exponent `β` of `f` form an
//! affine space `w0 + N·λ`; strict positivity is decided by Fourier–Motzkin
//! elimination on `λ`, tracking strict and non-strict bounds exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::{Poly, Rational};

/// Give up (and report [`Quasihomogeneity::Undecided`]) past this many
/// inequalities at any elimination stage.
pub const MAX_INEQUALITIES: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Quasihomogeneity {
    /// Integer weights with gcd one, and the weighted degree of `f`.
    Weights { weights: Vec<BigInt>, degree: BigInt },
    Absent,
    Undecided,
}

impl Quasihomogeneity {
    pub fn weights(&self) -> Option<(&[BigInt], &BigInt)> {
        match self {
            Quasihomogeneity::Weights { weights, degree } => Some((weights, degree)),
            _ => None,
        }
    }
}

pub fn quasihomogeneous_check(f: &Poly) -> Quasihomogeneity {
    if f.is_constant() {
        return Quasihomogeneity::Absent;
    }
    let n = f.nvars();
    let rows: Vec<Vec<Rational>> = f
        .terms()
        .iter()
        .map(|(m, _)| m.exponents().iter().map(|&e| Rational::from_integer(e.into())).collect())
        .collect();
    if rows.iter().any(|r| r.iter().all(Zero::is_zero)) {
        // a constant term has weighted degree 0
        return Quasihomogeneity::Absent;
    }
    if f.is_homogeneous() {
        let d = f.degree().finite().expect("non-zero");
        return Quasihomogeneity::Weights { weights: vec![BigInt::one(); n], degree: d.into() };
    }
    let Some((w0, null)) = solve_affine(&rows, n) else {
        return Quasihomogeneity::Absent;
    };
    match positive_point(&w0, &null) {
        Positive::Found(w) => integer_weights(&w),
        Positive::None => Quasihomogeneity::Absent,
        Positive::TooLarge => Quasihomogeneity::Undecided,
    }
}

/// Particular solution of `rows·w = 1` and a basis of the null space,
/// or `None` if the system is inconsistent.
fn solve_affine(rows: &[Vec<Rational>], n: usize) -> Option<(Vec<Rational>, Vec<Vec<Rational>>)> {
    let mut a: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| {
            let mut r = r.clone();
            r.push(Rational::one());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][col].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][col].is_zero() {
                let factor = a[i][col].clone();
                for j in 0..=n {
                    let s = &a[r][j] * &factor;
                    a[i][j] -= s;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut w0 = vec![Rational::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        w0[c] = a[i][n].clone();
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let null = free
        .iter()
        .map(|&fc| {
            let mut v = vec![Rational::zero(); n];
            v[fc] = Rational::one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -a[i][fc].clone();
            }
            v
        })
        .collect();
    Some((w0, null))
}

/// `a·λ + b > 0` (or `≥ 0` when not strict).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Ineq {
    a: Vec<Rational>,
    b: Rational,
    strict: bool,
}

enum Positive {
    Found(Vec<Rational>),
    None,
    TooLarge,
}

fn positive_point(w0: &[Rational], null: &[Vec<Rational>]) -> Positive {
    let n = w0.len();
    let d = null.len();
    let start: Vec<Ineq> = (0..n)
        .map(|i| Ineq { a: null.iter().map(|v| v[i].clone()).collect(), b: w0[i].clone(), strict: true })
        .collect();
    // stages[k] involves only λ_0..λ_{k-1}
    let mut stages = vec![Vec::new(); d + 1];
    stages[d] = start;
    for k in (0..d).rev() {
        let (mut lower, mut upper, mut keep) = (Vec::new(), Vec::new(), Vec::new());
        for q in &stages[k + 1] {
            if q.a[k].is_positive() {
                lower.push(q);
            } else if q.a[k].is_negative() {
                upper.push(q);
            } else {
                keep.push(q.clone());
            }
        }
        if lower.len() * upper.len() + keep.len() > MAX_INEQUALITIES {
            return Positive::TooLarge;
        }
        for lo in &lower {
            for up in &upper {
                // (-up.a_k)·lo + lo.a_k·up cancels λ_k; both factors positive
                let (s, t) = (-up.a[k].clone(), lo.a[k].clone());
                let a = lo.a.iter().zip(&up.a).map(|(x, y)| x * &s + y * &t).collect();
                keep.push(Ineq { a, b: &lo.b * &s + &up.b * &t, strict: lo.strict || up.strict });
            }
        }
        keep.iter_mut().for_each(normalize);
        keep.sort();
        keep.dedup();
        stages[k] = keep;
    }
    let feasible = stages[0].iter().all(|q| if q.strict { q.b.is_positive() } else { !q.b.is_negative() });
    if !feasible {
        return Positive::None;
    }
    let mut lambda: Vec<Rational> = Vec::with_capacity(d);
    for k in 0..d {
        let (mut lo, mut hi): (Option<Rational>, Option<Rational>) = (None, None);
        for q in &stages[k + 1] {
            let rest: Rational = q.b.clone() + (0..k).map(|j| &q.a[j] * &lambda[j]).sum::<Rational>();
            let ak = &q.a[k];
            if ak.is_positive() {
                let v = -rest / ak;
                lo = Some(lo.map_or(v.clone(), |l: Rational| l.max(v)));
            } else if ak.is_negative() {
                let v = rest / -ak;
                hi = Some(hi.map_or(v.clone(), |h: Rational| h.min(v)));
            }
        }
        let x = match (lo, hi) {
            (None, None) => Rational::zero(),
            (Some(l), None) => l + Rational::one(),
            (None, Some(h)) => h - Rational::one(),
            (Some(l), Some(h)) if l == h => l,
            (Some(l), Some(h)) => (l + h) / Rational::from_integer(2.into()),
        };
        lambda.push(x);
    }
    let w: Vec<Rational> =
        (0..n).map(|i| &w0[i] + null.iter().zip(&lambda).map(|(v, l)| &v[i] * l).sum::<Rational>()).collect();
    debug_assert!(w.iter().all(Signed::is_positive));
    Positive::Found(w)
}

/// Scales so the largest absolute coefficient is one.
fn normalize(q: &mut Ineq) {
    let m = q.a.iter().chain(std::iter::once(&q.b)).map(|x| x.abs()).max().unwrap_or_default();
    if !m.is_zero() {
        let inv = m.recip();
        q.a.iter_mut().for_each(|x| *x *= &inv);
        q.b *= &inv;
    }
}

/// `w` with `β·w = 1` rescaled to coprime integer weights and degree.
fn integer_weights(w: &[Rational]) -> Quasihomogeneity {
    let l = w.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<BigInt> = w.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = scaled.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    Quasihomogeneity::Weights { weights: scaled.iter().map(|x| x / &g).collect(), degree: l / g }
}
