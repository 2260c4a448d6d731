//! Exact computations with free divisors over the rationals: polynomial and
//! ideal arithmetic, logarithmic derivations and their Saito matrices,
//! Fitting-ideal criteria, linear-part spectral tools, and the analysis
//! pipeline behind the `logdiv` binary.

pub mod criteria;
pub mod frontend;
pub mod groebner;
pub mod logderiv;
pub mod poly;
pub mod spectral;
