use std::fmt;

use num_traits::{One, Zero};

use super::SpectralError;
use crate::poly::Rational;

/// Square matrix over ℚ, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn new(n: usize, entries: Vec<Rational>) -> Result<RatMatrix, SpectralError> {
        if entries.len() != n * n {
            return Err(SpectralError::NotSquare { rows: n, cols: entries.len().checked_div(n).unwrap_or(0) });
        }
        Ok(RatMatrix { n, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<RatMatrix, SpectralError> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(SpectralError::NotSquare { rows: n, cols: bad.len() });
        }
        Ok(RatMatrix { n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn zero(n: usize) -> RatMatrix {
        RatMatrix { n, entries: vec![Rational::zero(); n * n] }
    }

    pub fn identity(n: usize) -> RatMatrix {
        let mut m = RatMatrix::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    /// `E_ij`: one at `(i, j)`, zero elsewhere.
    pub fn unit(n: usize, i: usize, j: usize) -> RatMatrix {
        let mut m = RatMatrix::zero(n);
        m.entries[i * n + j] = Rational::one();
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.entries.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> Rational {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.n, other.n);
        RatMatrix { n: self.n, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.n, other.n);
        RatMatrix { n: self.n, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &Rational) -> RatMatrix {
        RatMatrix { n: self.n, entries: self.entries.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = RatMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> RatMatrix {
        let mut acc = RatMatrix::identity(self.n);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn commutes_with(&self, other: &RatMatrix) -> bool {
        self.mul(other) == other.mul(self)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.pow(self.n as u32).is_zero()
    }

    pub fn rank(&self) -> usize {
        rank(&self.rows())
    }

    /// Exact inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Option<RatMatrix> {
        let n = self.n;
        let mut a = self.rows();
        let mut inv = RatMatrix::identity(n).rows();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].recip();
            for j in 0..n {
                a[col][j] *= &p;
                inv[col][j] *= &p;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let factor = a[r][col].clone();
                    for j in 0..n {
                        let (s, t) = (&a[col][j] * &factor, &inv[col][j] * &factor);
                        a[r][j] -= s;
                        inv[r][j] -= t;
                    }
                }
            }
        }
        Some(RatMatrix { n, entries: inv.into_iter().flatten().collect() })
    }

    /// Characteristic polynomial `det(λI - M)` by the Faddeev–LeVerrier
    /// recurrence, coefficients from the constant term up.
    pub fn char_poly(&self) -> UniPoly {
        let n = self.n;
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        let mut m = RatMatrix::zero(n);
        let mut c_prev = Rational::one();
        for k in 1..=n {
            // M_k = A·M_{k-1} + c_{n-k+1}·I, c_{n-k} = -tr(A·M_k)/k
            m = self.mul(&m).add(&RatMatrix::identity(n).scale(&c_prev));
            let c = -self.mul(&m).trace() / Rational::from_integer(k.into());
            coeffs[n - k] = c.clone();
            c_prev = c;
        }
        UniPoly::new(coeffs)
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = self.rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        write!(f, "{rows:?}")
    }
}

/// Rank of a rectangular rational matrix by Gaussian elimination.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut a: Vec<Vec<Rational>> = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..cols {
        let Some(pivot) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, pivot);
        let p = a[r][col].recip();
        for i in r + 1..a.len() {
            if a[i][col].is_zero() {
                continue;
            }
            let factor = &a[i][col] * &p;
            for j in col..cols {
                let s = &a[r][j] * &factor;
                a[i][j] -= s;
            }
        }
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

/// Univariate polynomial over ℚ, coefficients from the constant term up,
/// without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly(Vec<Rational>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> UniPoly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.0.iter().enumerate().skip(1).map(|(k, c)| c * Rational::from_integer(k.into())).collect(),
        )
    }

    pub fn monic(&self) -> UniPoly {
        match self.0.last() {
            Some(lc) => UniPoly(self.0.iter().map(|c| c / lc).collect()),
            None => self.clone(),
        }
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc = d.0[dd].clone();
        let mut r = self.0.clone();
        let mut q = vec![Rational::zero(); r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = r.last().unwrap() / &lc;
            for (i, di) in d.0.iter().enumerate() {
                r[k + i] -= &c * di;
            }
            q[k] = c;
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (UniPoly::new(q), UniPoly::new(r))
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p / gcd(p, p')`.
    pub fn squarefree_part(&self) -> UniPoly {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// `p(M)` by Horner's rule.
    pub fn eval_matrix(&self, m: &RatMatrix) -> RatMatrix {
        let n = m.size();
        let mut acc = RatMatrix::zero(n);
        for c in self.0.iter().rev() {
            acc = acc.mul(m).add(&RatMatrix::identity(n).scale(c));
        }
        acc
    }
}
