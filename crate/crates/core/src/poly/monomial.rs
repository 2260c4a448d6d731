use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// Exponent vector of a monomial `x^e = x_1^e_1 * ... * x_n^e_n`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[u32; 10]>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(SmallVec::from_elem(0, n))
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut m = Self::one(n);
        m.0[i] = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bit `i` is set when variable `i` occurs (variables beyond 63 fold onto bit 63).
    pub fn support_mask(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |acc, (i, _)| acc | (1u64 << i.min(63)))
    }

    /// Exponent vector with `k` zero exponents inserted in front.
    pub fn shifted(&self, k: usize) -> Monomial {
        let mut v: SmallVec<[u32; 10]> = SmallVec::from_elem(0, k);
        v.extend_from_slice(&self.0);
        Monomial(v)
    }

    /// Drops the first `k` exponents. Caller guarantees they are zero.
    pub fn unshifted(&self, k: usize) -> Monomial {
        Monomial(SmallVec::from_slice(&self.0[k..]))
    }

    pub(crate) fn exponent_mut(&mut self, i: usize) -> &mut u32 {
        &mut self.0[i]
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{:?}", self.0.as_slice())
    }
}

/// Monomial orders supported by the Gröbner engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    GrLex,
    DegRevLex,
    /// Degrevlex on the first `k` variables, ties broken by degrevlex on the rest.
    /// Eliminates the first `k` variables.
    Block(usize),
}

impl Default for MonomialOrder {
    fn default() -> Self {
        MonomialOrder::DegRevLex
    }
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            // smaller exponent in the last differing variable is larger
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        match *self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrLex => {
                let da: u32 = a.iter().sum();
                let db: u32 = b.iter().sum();
                da.cmp(&db).then_with(|| a.cmp(b))
            }
            MonomialOrder::DegRevLex => degrevlex(a, b),
            MonomialOrder::Block(k) => {
                let k = k.min(a.len());
                degrevlex(&a[..k], &b[..k]).then_with(|| degrevlex(&a[k..], &b[k..]))
            }
        }
    }

    /// Parses `lex`, `grlex`, `degrevlex` (alias `grevlex`) or `block:k`.
    pub fn parse(name: &str) -> Option<MonomialOrder> {
        match name {
            "lex" => Some(MonomialOrder::Lex),
            "grlex" | "deglex" => Some(MonomialOrder::GrLex),
            "degrevlex" | "grevlex" | "drl" => Some(MonomialOrder::DegRevLex),
            _ => {
                let k = name.strip_prefix("block:").or_else(|| name.strip_prefix("block"))?;
                k.trim_start_matches(['(', ':']).trim_end_matches(')').parse().ok().map(MonomialOrder::Block)
            }
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::GrLex => write!(f, "grlex"),
            MonomialOrder::DegRevLex => write!(f, "degrevlex"),
            MonomialOrder::Block(k) => write!(f, "block:{k}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn degrevlex_basic() {
        let o = MonomialOrder::DegRevLex;
        // x*y^4 > x^2*y^2*z > x^3*y*t > x^4*u  (x>y>z>t>u)
        let a = m(&[1, 4, 0, 0, 0]);
        let b = m(&[2, 2, 1, 0, 0]);
        let c = m(&[3, 1, 0, 1, 0]);
        let d = m(&[4, 0, 0, 0, 1]);
        assert_eq!(o.cmp(&a, &b), Ordering::Greater);
        assert_eq!(o.cmp(&b, &c), Ordering::Greater);
        assert_eq!(o.cmp(&c, &d), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 0, 1]), &m(&[2, 0, 0])), Ordering::Less);
    }

    #[test]
    fn lex_and_block() {
        assert_eq!(MonomialOrder::Lex.cmp(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
        // block(1): any power of the first variable beats the rest
        let o = MonomialOrder::Block(1);
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 7, 3])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 1, 0]), &m(&[0, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn parse_orders() {
        assert_eq!(MonomialOrder::parse("block:2"), Some(MonomialOrder::Block(2)));
        assert_eq!(MonomialOrder::parse("degrevlex"), Some(MonomialOrder::DegRevLex));
        assert_eq!(MonomialOrder::parse("nope"), None);
    }

    fn orders() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![
            Just(MonomialOrder::Lex),
            Just(MonomialOrder::GrLex),
            Just(MonomialOrder::DegRevLex),
            (0usize..4).prop_map(MonomialOrder::Block),
        ]
    }

    proptest! {
        #[test]
        fn orders_are_multiplicative_and_total(
            ord in orders(),
            a in prop::collection::vec(0u32..4, 4),
            b in prop::collection::vec(0u32..4, 4),
            c in prop::collection::vec(0u32..4, 4),
        ) {
            let (a, b, c) = (m(&a), m(&b), m(&c));
            let ab = ord.cmp(&a, &b);
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            prop_assert_eq!(ord.cmp(&a.mul(&c), &b.mul(&c)), ab);
            prop_assert_eq!(ord.cmp(&b, &a), ab.reverse());
            // 1 is the minimum (well-order)
            prop_assert_ne!(ord.cmp(&Monomial::one(4), &a), Ordering::Greater);
        }
    }
}
