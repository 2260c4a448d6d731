use std::collections::HashMap;
use std::sync::Arc;

use super::{Poly, PolyError, Rational, VarContext};

/// Dense row-major matrix of polynomials sharing one context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    ctx: Arc<VarContext>,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn new(ctx: &Arc<VarContext>, rows: usize, cols: usize, entries: Vec<Poly>) -> Result<Self, PolyError> {
        if entries.len() != rows * cols {
            return Err(PolyError::DimensionMismatch { expected: rows * cols, got: entries.len() });
        }
        if entries.iter().any(|e| !super::same_ctx(e.ctx(), ctx)) {
            return Err(PolyError::ContextMismatch);
        }
        Ok(PolyMatrix { ctx: ctx.clone(), rows, cols, entries })
    }

    pub fn from_rows(ctx: &Arc<VarContext>, rows: Vec<Vec<Poly>>) -> Result<Self, PolyError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(PolyError::DimensionMismatch { expected: c, got: rows.iter().map(Vec::len).max().unwrap_or(0) });
        }
        PolyMatrix::new(ctx, r, c, rows.into_iter().flatten().collect())
    }

    pub fn ctx(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        PolyMatrix { ctx: self.ctx.clone(), rows: self.cols, cols: self.rows, entries }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let entries = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone()))
            .collect();
        PolyMatrix { ctx: self.ctx.clone(), rows: rows.len(), cols: cols.len(), entries }
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Vec<Vec<Rational>>, PolyError> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|e| e.evaluate(point)).collect())
            .collect()
    }

    /// Exact determinant by Laplace expansion along rows, memoized over the
    /// set of columns already used.
    pub fn det(&self) -> Result<Poly, PolyError> {
        if self.rows != self.cols {
            return Err(PolyError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Poly::one(&self.ctx));
        }
        assert!(n <= 24, "determinant of a {n}x{n} polynomial matrix is out of range");
        let mut memo: HashMap<u32, Poly> = HashMap::new();
        Ok(self.det_rec(0, 0, &mut memo))
    }

    fn det_rec(&self, row: usize, used: u32, memo: &mut HashMap<u32, Poly>) -> Poly {
        let n = self.rows;
        if row == n {
            return Poly::one(&self.ctx);
        }
        if let Some(p) = memo.get(&used) {
            return p.clone();
        }
        let mut acc = Poly::zero(&self.ctx);
        let mut free_index = 0;
        for j in 0..n {
            if used & (1 << j) != 0 {
                continue;
            }
            let entry = self.get(row, j);
            if !entry.is_zero() {
                let minor = self.det_rec(row + 1, used | (1 << j), memo);
                if !minor.is_zero() {
                    let term = entry * &minor;
                    acc = if free_index % 2 == 0 { &acc + &term } else { &acc - &term };
                }
            }
            free_index += 1;
        }
        memo.insert(used, acc.clone());
        acc
    }

    /// Determinant by cofactor expansion along the first column, without
    /// memoization. Independent route used to cross-check [`PolyMatrix::det`].
    pub fn det_by_columns(&self) -> Result<Poly, PolyError> {
        if self.rows != self.cols {
            return Err(PolyError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Poly::one(&self.ctx));
        }
        let mut acc = Poly::zero(&self.ctx);
        let cols: Vec<usize> = (1..n).collect();
        for i in 0..n {
            let e = self.get(i, 0);
            if e.is_zero() {
                continue;
            }
            let rows: Vec<usize> = (0..n).filter(|&r| r != i).collect();
            let minor = self.submatrix(&rows, &cols).det_by_columns()?;
            let term = e * &minor;
            acc = if i % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        Ok(acc)
    }

    /// Adjugate (transpose of the cofactor matrix) of a square matrix.
    pub fn adjugate(&self) -> Result<PolyMatrix, PolyError> {
        if self.rows != self.cols {
            return Err(PolyError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut entries = vec![Poly::zero(&self.ctx); n * n];
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != i).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                let m = self.submatrix(&rows, &cols).det()?;
                entries[j * n + i] = if (i + j) % 2 == 0 { m } else { -m };
            }
        }
        Ok(PolyMatrix { ctx: self.ctx.clone(), rows: n, cols: n, entries })
    }

    /// Non-zero order-`k` minors, in lexicographic order of (row subset, column subset).
    pub fn minors(&self, k: usize) -> Vec<Poly> {
        use itertools::Itertools;
        if k == 0 || k > self.rows.min(self.cols) {
            return Vec::new();
        }
        let mut out = Vec::new();
        for rs in (0..self.rows).combinations(k) {
            for cs in (0..self.cols).combinations(k) {
                let m = self.submatrix(&rs, &cs).det().expect("square by construction");
                if !m.is_zero() {
                    out.push(m);
                }
            }
        }
        out
    }
}
