use rayon::prelude::*;

use super::basis::{saito_matrices, LogBasis};
use super::LogDerivError;
use crate::groebner::Ideal;
use crate::poly::PolyMatrix;

/// Ideals of minors of the Saito matrix `A` and the extended matrix `Ã`.
///
/// `i[k-1]` is generated by the order-`k` minors of `A` and cuts out
/// `D_{k-1} = {rank A ≤ k-1}`; likewise `itilde[k-1]` for `Ã`.
/// `dims[k]` is `dim D_k`, `dims_tilde[k]` is `dim D̃_k` (`-1` when empty).
#[derive(Clone, Debug)]
pub struct FittingChain {
    pub i: Vec<Ideal>,
    pub itilde: Vec<Ideal>,
    pub dims: Vec<i64>,
    pub dims_tilde: Vec<i64>,
}

impl FittingChain {
    pub fn n(&self) -> usize {
        self.i.len()
    }

    /// `I_k` for `1 ≤ k ≤ n`.
    pub fn minors_a(&self, k: usize) -> &Ideal {
        &self.i[k - 1]
    }

    /// `Ĩ_k` for `1 ≤ k ≤ n`.
    pub fn minors_atilde(&self, k: usize) -> &Ideal {
        &self.itilde[k - 1]
    }
}

pub fn fitting_chain(l: &LogBasis, budget: u64) -> Result<FittingChain, LogDerivError> {
    let (a, at) = saito_matrices(l);
    let n = l.nvars();
    let ideals_of = |m: &PolyMatrix| -> Result<Vec<Ideal>, LogDerivError> {
        (1..=n)
            .into_par_iter()
            .map(|k| Ok(Ideal::new(m.ctx(), m.minors(k))?.with_budget(budget)))
            .collect()
    };
    let (i, itilde) = rayon::join(|| ideals_of(&a), || ideals_of(&at));
    let (i, itilde) = (i?, itilde?);
    let dims_of = |ideals: &[Ideal]| -> Result<Vec<i64>, LogDerivError> {
        ideals.par_iter().map(|id| Ok(id.krull_dimension()?)).collect()
    };
    let (dims, dims_tilde) = rayon::join(|| dims_of(&i), || dims_of(&itilde));
    Ok(FittingChain { i, itilde, dims: dims?, dims_tilde: dims_tilde? })
}
