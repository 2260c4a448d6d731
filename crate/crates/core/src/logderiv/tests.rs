use std::sync::Arc;

use num_traits::Zero;
use proptest::prelude::*;

use super::*;
use crate::frontend::parse_poly;
use crate::groebner::{Ideal, DEFAULT_BUDGET};
use crate::poly::tests::arb_poly;
use crate::poly::{rat, ratio, PolyMatrix, VarContext};

pub(crate) fn der(ctx: &Arc<VarContext>, coeffs: &[&str]) -> Derivation {
    Derivation::new(ctx, coeffs.iter().map(|s| parse_poly(s, ctx).unwrap()).collect()).unwrap()
}

/// The linear free divisor in five variables and its linear basis.
pub(crate) fn quintic() -> (Arc<VarContext>, Poly, Vec<Derivation>) {
    let c = VarContext::new(&["x", "y", "z", "t", "u"]).unwrap();
    let f = parse_poly("x*(8*x^3*u - y*(8*t*x^2 - 4*x*y*z + y^3))", &c).unwrap();
    let ds = vec![
        der(&c, &["x", "y", "z", "t", "u"]),
        der(&c, &["-4*x", "y", "6*z", "11*t", "16*u"]),
        der(&c, &["0", "x", "y", "z", "t"]),
        der(&c, &["0", "0", "2*x", "y", "0"]),
        der(&c, &["0", "0", "0", "x", "y"]),
    ];
    (c, f, ds)
}

/// The plane curve `x^4 + y^5 + x y^4` and a basis with no linear part.
pub(crate) fn curve() -> (Arc<VarContext>, Poly, Vec<Derivation>) {
    let c = VarContext::new(&["x", "y"]).unwrap();
    let f = parse_poly("x^4 + y^5 + x*y^4", &c).unwrap();
    let ds = vec![
        der(&c, &["4*x^2 + 5*x*y", "3*x*y + 4*y^2"]),
        der(&c, &["16*x*y^2 + 4*y^3 - 125*x*y", "12*y^3 - 4*x^2 + 5*x*y - 100*y^2"]),
    ];
    (c, f, ds)
}

pub(crate) fn crossing() -> (Arc<VarContext>, Poly, Vec<Derivation>) {
    let c = VarContext::new(&["x", "y"]).unwrap();
    let f = parse_poly("x*y", &c).unwrap();
    (c.clone(), f, vec![der(&c, &["x", "0"]), der(&c, &["0", "y"])])
}

fn ideal(c: &Arc<VarContext>, gens: &[&str]) -> Ideal {
    Ideal::new(c, gens.iter().map(|s| parse_poly(s, c).unwrap()).collect()).unwrap()
}

fn point(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&k| rat(k)).collect()
}

#[test]
fn apply_on_the_quintic() {
    let (c, f, ds) = quintic();
    assert_eq!(ds[0].apply(&f).unwrap(), f.scale(&rat(5)));
    for d in &ds[1..] {
        assert!(d.apply(&f).unwrap().is_zero());
    }
    let y = Poly::var(&c, 1);
    assert!(Derivation::partial(&c, 0).apply(&y).unwrap().is_zero());
}

#[test]
fn brackets() {
    let c = VarContext::new(&["x", "y"]).unwrap();
    let x_dx = der(&c, &["x", "0"]);
    let dx = Derivation::partial(&c, 0);
    assert_eq!(x_dx.lie_bracket(&dx).unwrap(), dx.scale(&rat(-1)));
    assert!(x_dx.lie_bracket(&x_dx).unwrap().is_zero());
    let e = der(&c, &["0", "x"]);
    let f = der(&c, &["y", "0"]);
    assert_eq!(e.lie_bracket(&f).unwrap(), der(&c, &["x", "-y"]));
}

#[test]
fn cofactors() {
    let (c, f, ds) = curve();
    let alpha = is_logarithmic(&f, &ds[0]).unwrap().unwrap();
    assert_eq!(alpha, parse_poly("16*x + 20*y", &c).unwrap());
    // independent check: δ(f) - α f expands to zero
    assert!((&ds[0].apply(&f).unwrap() - &(&alpha * &f)).is_zero());

    let (c, f, ds) = crossing();
    assert!(is_logarithmic(&f, &ds[0]).unwrap().unwrap().is_one());
    let g = Poly::var(&c, 0);
    assert_eq!(is_logarithmic(&g, &Derivation::partial(&c, 0)).unwrap(), None);
}

#[test]
fn saito_matrices_of_small_bases() {
    let (c, f, ds) = quintic();
    let l = verify_free_basis(&f, &ds).unwrap();
    let (a, at) = saito_matrices(&l);
    assert_eq!((a.rows(), a.cols(), at.cols()), (5, 5, 6));
    let last: Vec<Poly> = (0..5).map(|i| at.get(i, 5).clone()).collect();
    let expect: Vec<Poly> = [-5, 0, 0, 0, 0].iter().map(|&k| Poly::constant(&c, rat(k))).collect();
    assert_eq!(last, expect);
    assert_eq!(a.get(1, 2), &parse_poly("6*z", &c).unwrap());

    let (c, f, ds) = crossing();
    let l = verify_free_basis(&f, &ds).unwrap();
    let (a, at) = saito_matrices(&l);
    let x = Poly::var(&c, 0);
    let y = Poly::var(&c, 1);
    let zero = Poly::zero(&c);
    assert_eq!(a, PolyMatrix::from_rows(&c, vec![vec![x, zero.clone()], vec![zero, y]]).unwrap());
    assert_eq!(at.get(0, 2), &Poly::constant(&c, rat(-1)));
    assert_eq!(at.get(1, 2), &Poly::constant(&c, rat(-1)));
}

#[test]
fn saito_criterion() {
    let (c, f, ds) = quintic();
    let l = verify_free_basis(&f, &ds).unwrap();
    assert!(l.unit().is_constant());
    // cofactor expansion along the first column, divided by f
    let rows: Vec<Vec<Poly>> = ds.iter().map(|d| d.coeffs().to_vec()).collect();
    let det = PolyMatrix::from_rows(&c, rows).unwrap().det_by_columns().unwrap();
    assert_eq!(det.exact_divide(&f).unwrap(), *l.unit());
    assert_eq!(l.cofactors()[0], Poly::constant(&c, rat(5)));

    let (c, f, ds) = crossing();
    let l = verify_free_basis(&f, &ds).unwrap();
    assert!(l.unit().is_one());
    let bad = vec![ds[0].clone(), der(&c, &["0", "x*y"])];
    assert_eq!(verify_free_basis(&f, &bad).unwrap_err(), LogDerivError::DeterminantNotUnitMultiple);
    let not_log = vec![ds[0].clone(), Derivation::partial(&c, 1)];
    assert_eq!(verify_free_basis(&f, &not_log).unwrap_err(), LogDerivError::NotLogarithmic(1));
    assert!(matches!(verify_free_basis(&f, &ds[..1]), Err(LogDerivError::DimensionMismatch { .. })));
}

#[test]
fn products_at_points() {
    let (_, f, ds) = quintic();
    let l = verify_free_basis(&f, &ds).unwrap();
    assert!(!is_product_at_point(&l, &point(&[0, 0, 0, 0, 0])).unwrap());
    assert!(is_product_at_point(&l, &point(&[0, 0, 1, 0, 1])).unwrap());
    assert_eq!(is_product_at_point(&l, &point(&[1, 0, 0, 0, 1])), Err(LogDerivError::PointNotOnDivisor));

    let (_, f, ds) = crossing();
    let l = verify_free_basis(&f, &ds).unwrap();
    assert!(is_product_at_point(&l, &point(&[0, 1])).unwrap());
}

#[test]
fn quintic_fitting_chain() {
    let (c, f, ds) = quintic();
    let l = verify_free_basis(&f, &ds).unwrap();
    let ch = fitting_chain(&l, DEFAULT_BUDGET).unwrap();
    // D_3 = Sing D = {x = y = 0}, D̃_4 ⊊ D: values from an independent CAS run
    assert_eq!(ch.dims, vec![0, 1, 2, 3, 4]);
    assert_eq!(ch.dims_tilde, vec![-1, 0, 1, 3, 3]);
    assert!(ch.minors_atilde(1).is_unit_ideal().unwrap());
    let m = ideal(&c, &["x", "y", "z", "t", "u"]);
    assert!(ch.minors_atilde(2).radical_equal(&m).unwrap());
    assert!(ch.minors_a(1).radical_equal(&m).unwrap());
    let xyzt = ideal(&c, &["x", "y", "z", "t"]);
    assert!(ch.minors_a(2).radical_equal(&xyzt).unwrap());
    assert!(ch.minors_atilde(3).radical_equal(&xyzt).unwrap());
    assert!(ch.minors_atilde(4).radical_equal(&ideal(&c, &["x", "y"])).unwrap());
    let d2 = ideal(&c, &["x", "y", "z"]).intersect(&ideal(&c, &["x", "y", "t^2 - 2*u*z"])).unwrap();
    assert!(ch.minors_a(3).radical_equal(&d2).unwrap());
    assert!(!ch.minors_atilde(4).radical_equal(ch.minors_a(3)).unwrap());
    assert!(ch.minors_a(5).radical_equal(&Ideal::new(&c, vec![f]).unwrap()).unwrap());
}

#[test]
fn crossing_fitting_chain() {
    let (c, f, ds) = crossing();
    let l = verify_free_basis(&f, &ds).unwrap();
    let ch = fitting_chain(&l, DEFAULT_BUDGET).unwrap();
    assert_eq!(ch.minors_a(1).generators(), ideal(&c, &["x", "y"]).generators());
    assert!(ch.minors_atilde(1).is_unit_ideal().unwrap());
    assert_eq!(ch.dims, vec![0, 1]);
    assert_eq!(ch.dims_tilde, vec![-1, 0]);
}

fn assert_chain_inclusions(ch: &FittingChain) {
    let n = ch.n();
    for k in 1..=n {
        if k < n {
            assert!(ch.minors_a(k + 1).is_subset_of(ch.minors_a(k)).unwrap());
            assert!(ch.minors_atilde(k + 1).is_subset_of(ch.minors_atilde(k)).unwrap());
            assert!(ch.minors_atilde(k + 1).is_subset_of(ch.minors_a(k)).unwrap());
        }
        assert!(ch.minors_a(k).is_subset_of(ch.minors_atilde(k)).unwrap());
    }
}

#[test]
fn chain_inclusions() {
    for (_, f, ds) in [quintic(), curve(), crossing()] {
        let l = verify_free_basis(&f, &ds).unwrap();
        assert_chain_inclusions(&fitting_chain(&l, DEFAULT_BUDGET).unwrap());
    }
}

#[test]
fn computed_bases() {
    let (c, f, _) = crossing();
    let l = compute_log_basis(&f, DEFAULT_BUDGET).unwrap();
    assert_eq!(l.basis().len(), 2);
    let (_, _, ds) = crossing();
    let given = verify_free_basis(&f, &ds).unwrap();
    for d in l.basis() {
        assert!(basis::in_span(&given, d).unwrap());
    }
    let _ = c;

    let (_, f, ds) = curve();
    let computed = compute_log_basis(&f, DEFAULT_BUDGET).unwrap();
    let given = verify_free_basis(&f, &ds).unwrap();
    for d in computed.basis() {
        assert!(basis::in_span(&given, d).unwrap());
    }
    for d in given.basis() {
        assert!(basis::in_span(&computed, d).unwrap());
    }
}

#[test]
fn four_lines_basis() {
    let c = VarContext::new(&["x", "y", "z"]).unwrap();
    let f = parse_poly("x*y*(x + y)*(x + y*z)", &c).unwrap();
    let l = compute_log_basis(&f, DEFAULT_BUDGET).unwrap();
    assert_eq!(l.basis().len(), 3);
    assert!(!l.unit().constant_term().is_zero());
}

#[test]
fn reducedness() {
    let c = VarContext::new(&["x", "y"]).unwrap();
    let f = parse_poly("x^2*y + x^3", &c).unwrap();
    assert!(matches!(ensure_reduced(&f, DEFAULT_BUDGET), Err(LogDerivError::NotReduced(_))));
    assert!(matches!(compute_log_basis(&f, DEFAULT_BUDGET), Err(LogDerivError::NotReduced(_))));
    assert!(ensure_reduced(&parse_poly("x*y*(x - y)", &c).unwrap(), DEFAULT_BUDGET).is_ok());
    let (_, g, _) = curve();
    assert!(ensure_reduced(&g, DEFAULT_BUDGET).is_ok());
}

#[test]
fn linear_freeness() {
    let (_, f, ds) = quintic();
    let l = verify_free_basis(&f, &ds).unwrap();
    assert!(is_linear_free(&l).unwrap());
    assert_eq!(f.degree().finite(), Some(5));

    let (_, f, ds) = curve();
    assert!(!is_linear_free(&verify_free_basis(&f, &ds).unwrap()).unwrap());

    let (c, f, ds) = crossing();
    let l = verify_free_basis(&f, &ds).unwrap();
    assert!(is_linear_free(&l).unwrap());
    assert!(basis::in_span(&l, &Derivation::euler(&c)).unwrap());
}

#[test]
fn weighted_euler_field() {
    let c = VarContext::new(&["x", "y"]).unwrap();
    let s = Derivation::weighted_euler(&c, &[ratio(1, 2), rat(3)]).unwrap();
    assert_eq!(s, der(&c, &["1/2*x", "3*y"]));
}

fn arb_der(c: Arc<VarContext>) -> impl Strategy<Value = Derivation> {
    let n = c.nvars();
    prop::collection::vec(arb_poly(c.clone(), 2, 3), n).prop_map(move |v| Derivation::new(&c, v).unwrap())
}

fn c2() -> Arc<VarContext> {
    VarContext::new(&["x", "y"]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn apply_is_a_derivation(d in arb_der(c2()), f in arb_poly(c2(), 3, 3), g in arb_poly(c2(), 3, 3)) {
        let lhs = d.apply(&(&f * &g)).unwrap();
        let rhs = &(&f * &d.apply(&g).unwrap()) + &(&g * &d.apply(&f).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_is_a_lie_bracket(a in arb_der(c2()), b in arb_der(c2()), e in arb_der(c2())) {
        let ab = a.lie_bracket(&b).unwrap();
        prop_assert_eq!(ab.scale(&rat(-1)), b.lie_bracket(&a).unwrap());
        let jacobi = a.lie_bracket(&b.lie_bracket(&e).unwrap()).unwrap()
            .checked_add(&b.lie_bracket(&e.lie_bracket(&a).unwrap()).unwrap()).unwrap()
            .checked_add(&e.lie_bracket(&ab).unwrap()).unwrap();
        prop_assert!(jacobi.is_zero());
    }
}
