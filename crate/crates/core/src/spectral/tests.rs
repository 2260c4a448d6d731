use proptest::prelude::*;

use super::*;
use crate::frontend::parse_poly;
use crate::logderiv::tests::{curve, der, quintic};
use crate::poly::{rat, ratio};

fn w(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&k| rat(k)).collect()
}

#[test]
fn linear_parts_of_the_quintic_basis() {
    let (_, _, ds) = quintic();
    assert_eq!(linear_part(&ds[0]), RatMatrix::identity(5));
    let mut shift = RatMatrix::zero(5);
    for i in 0..4 {
        shift.set(i, i + 1, rat(1));
    }
    assert_eq!(linear_part(&ds[2]), shift);
    assert_eq!(trace_of(&ds[0]), rat(5));
    // -4 + 1 + 6 + 11 + 16
    assert_eq!(trace_of(&ds[1]), rat(30));
    assert!(is_top_nilpotent(&ds[2]).unwrap());
    assert!(!is_top_nilpotent(&ds[0]).unwrap());
}

#[test]
fn curve_basis_has_no_linear_part() {
    let (c, _, ds) = curve();
    for d in &ds {
        assert!(linear_part(d).is_zero());
        assert!(is_top_nilpotent(d).unwrap());
    }
    assert_eq!(trace_of(&Derivation::zero(&c)), rat(0));
    assert_eq!(is_top_nilpotent(&Derivation::partial(&c, 0)), Err(SpectralError::NotSingular));
}

#[test]
fn characteristic_polynomials() {
    let m = rat_matrix(&[&[0, 1], &[-1, 0]]);
    assert_eq!(m.char_poly(), UniPoly::new(w(&[1, 0, 1])));
    let j = rat_matrix(&[&[2, 1, 0], &[0, 2, 0], &[0, 0, 3]]);
    // (λ-2)^2 (λ-3) = λ^3 - 7λ^2 + 16λ - 12
    assert_eq!(j.char_poly(), UniPoly::new(w(&[-12, 16, -7, 1])));
    assert_eq!(j.char_poly().squarefree_part(), UniPoly::new(w(&[6, -5, 1])));
}

#[test]
fn chevalley_examples() {
    let d = rat_matrix(&[&[2, 0], &[0, -1]]);
    let p = chevalley(&d).unwrap();
    assert_eq!((p.s.clone(), p.n.is_zero()), (d, true));

    let jb = rat_matrix(&[&[1, 1], &[0, 1]]);
    let p = chevalley(&jb).unwrap();
    assert_eq!(p.s, RatMatrix::identity(2));
    assert_eq!(p.n, RatMatrix::unit(2, 0, 1));

    let rot = rat_matrix(&[&[0, 1], &[-1, 0]]);
    let p = chevalley(&rot).unwrap();
    assert_eq!(p.s, rot);
    assert!(p.n.is_zero());

    // non-diagonal Jordan structure: S is not the diagonal of M
    let m = rat_matrix(&[&[3, 1, 2], &[0, 3, 1], &[0, 0, 5]]);
    let p = chevalley(&m).unwrap();
    assert!(p.is_valid_for(&m));
    assert!(!p.n.is_zero());
}

#[test]
fn ranks() {
    assert_eq!(rank(&[w(&[1, 2, 3]), w(&[2, 4, 6])]), 1);
    assert_eq!(rank(&[w(&[0, 0]), w(&[0, 0])]), 0);
    assert_eq!(rank(&[w(&[0, 1, 0]), w(&[1, 0, 0]), w(&[1, 1, 0])]), 2);
    assert_eq!(RatMatrix::identity(4).rank(), 4);
}

#[test]
fn weight_decomposition() {
    let c = crate::poly::VarContext::new(&["x", "y"]).unwrap();
    let f = parse_poly("x^2 + x*y + y^2", &c).unwrap();
    let parts = sigma_decompose(&f, &w(&[1, -1])).unwrap();
    let expect: Vec<(Rational, Poly)> = vec![
        (rat(-2), parse_poly("y^2", &c).unwrap()),
        (rat(0), parse_poly("x*y", &c).unwrap()),
        (rat(2), parse_poly("x^2", &c).unwrap()),
    ];
    assert_eq!(parts.into_iter().collect::<Vec<_>>(), expect);

    let parts = sigma_decompose(&f, &w(&[1, 1])).unwrap();
    assert_eq!(parts.len(), 1);
    assert_eq!(parts[&rat(2)], f);
    assert!(sigma_decompose(&Poly::zero(&c), &w(&[1, 1])).unwrap().is_empty());
}

#[test]
fn bracket_degrees() {
    let c = crate::poly::VarContext::new(&["x", "y"]).unwrap();
    assert_eq!(sigma_degree(&der(&c, &["y", "0"]), &w(&[1, -1])).unwrap(), Some(rat(-2)));
    let sigma = Derivation::weighted_euler(&c, &w(&[1, -1])).unwrap();
    assert_eq!(sigma_degree(&sigma, &w(&[1, -1])).unwrap(), Some(rat(0)));
    assert_eq!(sigma_degree(&der(&c, &["1", "1"]), &w(&[1, 2])).unwrap(), None);
    assert_eq!(sigma_degree(&der(&c, &["x^2", "0"]), &[ratio(1, 2), rat(1)]).unwrap(), Some(ratio(1, 2)));
}

#[test]
fn nilpotent_spans() {
    let e = |i, j| RatMatrix::unit(3, i, j);
    assert!(span_has_non_nilpotent(&[RatMatrix::unit(2, 0, 1), RatMatrix::unit(2, 1, 0)]).unwrap());
    assert!(!span_has_non_nilpotent(&[e(0, 1), e(0, 2), e(1, 2)]).unwrap());
    let (_, _, ds) = quintic();
    let parts: Vec<RatMatrix> = ds.iter().map(linear_part).collect();
    assert!(span_has_non_nilpotent(&parts).unwrap());
    let (_, _, ds) = curve();
    let parts: Vec<RatMatrix> = ds.iter().map(linear_part).collect();
    assert!(!span_has_non_nilpotent(&parts).unwrap());
    assert!(!span_has_non_nilpotent(&[]).unwrap());
    assert_eq!(span_has_non_nilpotent(&[e(0, 1), RatMatrix::unit(2, 0, 1)]), Err(SpectralError::SizeMismatch));
}

#[test]
fn commuting_semisimple_count() {
    let (_, _, ds) = quintic();
    let parts: Vec<RatMatrix> = ds.iter().map(linear_part).collect();
    // identity and diag(-4, 1, 6, 11, 16) commute; the rest are nilpotent
    assert_eq!(commuting_semisimple_lower_bound(&parts).unwrap(), 2);
}

fn arb_matrix() -> impl Strategy<Value = RatMatrix> {
    (1usize..=5).prop_flat_map(|n| {
        prop::collection::vec(-3i64..=3, n * n)
            .prop_map(move |v| RatMatrix::new(n, v.into_iter().map(rat).collect()).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn chevalley_invariants(m in arb_matrix()) {
        let p = chevalley(&m).unwrap();
        prop_assert_eq!(p.s.add(&p.n), m.clone());
        prop_assert!(p.s.commutes_with(&p.n));
        prop_assert!(p.n.pow(m.size() as u32).is_zero());
        prop_assert!(annihilates(&m.char_poly().squarefree_part(), &p.s));
        // S is already semisimple
        prop_assert!(chevalley(&p.s).unwrap().n.is_zero());
    }

    #[test]
    fn char_poly_annihilates(m in arb_matrix()) {
        prop_assert!(annihilates(&m.char_poly(), &m));
    }

    #[test]
    fn single_matrix_span(m in arb_matrix()) {
        prop_assert_eq!(span_has_non_nilpotent(&[m.clone()]).unwrap(), !m.is_nilpotent());
    }

    #[test]
    fn trace_is_linear(a in -3i64..=3, b in -3i64..=3, i in 0usize..3, j in 0usize..3) {
        let (c, _, ds) = quintic();
        let _ = c;
        let combo = ds[i].scale(&rat(a)).checked_add(&ds[j].scale(&rat(b))).unwrap();
        prop_assert_eq!(trace_of(&combo), rat(a) * trace_of(&ds[i]) + rat(b) * trace_of(&ds[j]));
    }

    #[test]
    fn weight_components_are_eigenvectors(f in crate::poly::tests::arb_poly(crate::poly::tests::ctx(&["x", "y", "z"]), 3, 5),
                                          wv in prop::collection::vec(-3i64..=3, 3)) {
        let wts = w(&wv);
        let parts = sigma_decompose(&f, &wts).unwrap();
        let sum = parts.values().fold(Poly::zero(f.ctx()), |acc, p| &acc + p);
        prop_assert_eq!(sum, f.clone());
        let sigma = Derivation::weighted_euler(f.ctx(), &wts).unwrap();
        for (c, p) in &parts {
            prop_assert_eq!(sigma.apply(p).unwrap(), p.scale(c));
        }
    }
}
