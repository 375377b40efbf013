use proptest::prelude::*;

use super::{quon_matrix_units, ExchangeAlgebra, NormalElement, OscillatorError, Strategy as Order};
use super::{differential_realization, lambda_decoloration_check, quon_realization};
use crate::algebra::{AlgebraBuilder, Element, Kind, Matrix, MatrixRep};
use crate::constructions::{build_color_gl, build_mat_order3, clifford_factor, clifford_tensor_gl, tensor_clifford, ColorGlSpec};
use crate::factor::Bicharacter;
use crate::grading::{AbelianGroup, GradingMap};

fn super_z2() -> Bicharacter {
    Bicharacter::new(AbelianGroup::cyclic(2), 2, vec![vec![1]]).unwrap()
}

fn one(q: &ExchangeAlgebra) -> NormalElement {
    q.one()
}

#[test]
fn quon_contractions() {
    let q = ExchangeAlgebra::quon(&[2]).unwrap();
    assert_eq!(q.normalize_labels(&["a_1", "a^1"]).unwrap(), one(&q));
    assert!(q.normalize_labels(&["a_1", "a^2"]).unwrap().is_zero());
    assert_eq!(q.normalize_labels(&["a^1", "a_1"]).unwrap(), q.multiply(&q.named("a^1").unwrap(), &q.named("a_1").unwrap()));
    assert_eq!(q.normalize_labels(&["a^1", "a_1"]).unwrap().len(), 1);
    assert_eq!(q.normalize_labels(&["a_1", "a^1", "a_2", "a^2"]).unwrap(), one(&q));
    // same-kind letters are free
    let ab = q.normalize_labels(&["a^2", "a^1"]).unwrap();
    assert_ne!(ab, q.normalize_labels(&["a^1", "a^2"]).unwrap());
    assert!(matches!(q.normalize_labels(&["b_1"]), Err(OscillatorError::UnknownGenerator(_))));
}

#[test]
fn quon_families_do_not_contract() {
    let q = ExchangeAlgebra::quon(&[1, 1]).unwrap();
    assert!(q.normalize_labels(&["a0_1", "a1^1"]).unwrap().is_zero());
    assert_eq!(q.normalize_labels(&["a1_1", "a1^1"]).unwrap(), one(&q));
}

#[test]
fn quon_multiply_examples() {
    let q = ExchangeAlgebra::quon(&[3]).unwrap();
    let w = |l: &[&str]| q.normalize_labels(l).unwrap();
    assert_eq!(q.multiply(&w(&["a^1", "a_2"]), &w(&["a^2", "a_3"])), w(&["a^1", "a_3"]));
    assert!(q.multiply(&w(&["a^1", "a_2"]), &w(&["a^1", "a_3"])).is_zero());
    let x = w(&["a^3", "a^1", "a_2"]);
    assert_eq!(q.multiply(&q.one(), &x), x);
}

#[test]
fn matrix_units_multiply_like_matrices() {
    for n in 1..=4 {
        let (q, e) = quon_matrix_units(n).unwrap();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let expect = if j == k { e[i][l].clone() } else { NormalElement::zero() };
                        assert_eq!(q.multiply(&e[i][j], &e[k][l]), expect);
                    }
                }
            }
        }
    }
}

#[test]
fn lambda_odd_squares_vanish() {
    let z2 = AbelianGroup::cyclic(2);
    let lam = ExchangeAlgebra::lambda(&super_z2(), &[z2.element(&[1]).unwrap()], 1, 2).unwrap();
    assert!(lam.self_square_zero(0));
    assert!(lam.normalize_labels(&["θ^(1)_1", "θ^(1)_1"]).unwrap().is_zero());

    let lam = ExchangeAlgebra::lambda(&super_z2(), &[z2.element(&[1]).unwrap()], 2, 2).unwrap();
    let ba = lam.normalize_labels(&["θ^(1)_2", "θ^(1)_1"]).unwrap();
    assert_eq!(ba, lam.normalize_labels(&["θ^(1)_1", "θ^(1)_2"]).unwrap().neg());
}

#[test]
fn fermionic_oscillator_rewriting() {
    let g = AbelianGroup::trivial();
    let osc = ExchangeAlgebra::color_oscillator(&Bicharacter::trivial(g.clone()), &[g.zero()], 1, 1).unwrap();
    // ∂θ∂ = ∂ − θ∂∂ = ∂
    assert_eq!(osc.normalize_labels(&["∂_1", "θ^1", "∂_1"]).unwrap(), osc.named("∂_1").unwrap());
    assert!(osc.self_square_zero(0));

    let bos = ExchangeAlgebra::color_oscillator(&Bicharacter::trivial(g.clone()), &[g.zero()], -1, 1).unwrap();
    assert!(!bos.self_square_zero(0));
    // ∂θ = 1 + θ∂ for bosons
    let mut expect = bos.one();
    expect.add_assign(&bos.normalize_labels(&["θ^1", "∂_1"]).unwrap());
    assert_eq!(bos.normalize_labels(&["∂_1", "θ^1"]).unwrap(), expect);
}

#[test]
fn exchange_coefficients_are_inverse_pairs() {
    let factor = clifford_factor(3, 2).unwrap();
    let gr = factor.group().enumerate();
    let osc = ExchangeAlgebra::color_oscillator(&factor, &gr, 1, 1).unwrap();
    let n = osc.len() as u32;
    for x in 0..n {
        for y in 0..n {
            if osc.generators()[x as usize].kind == osc.generators()[y as usize].kind {
                let c = osc.exchange_coefficient(x, y).unwrap() * osc.exchange_coefficient(y, x).unwrap();
                assert!(c.is_one());
            }
        }
    }
}

fn sl2() -> (crate::algebra::GradedAlgebra, MatrixRep) {
    let g = AbelianGroup::trivial();
    let mut b = AlgebraBuilder::new(Kind::ColorLie, 1, g.clone(), Bicharacter::trivial(g.clone()), 1).unwrap();
    let h = b.add_basis("h", 0, g.zero());
    let e = b.add_basis("e", 0, g.zero());
    let f = b.add_basis("f", 0, g.zero());
    let l = b.root_order();
    let s = |k: i64, i: usize| Element::basis(i, l).scaled(&crate::scalar::CycloScalar::from_int(l, k));
    b.set_bracket(h, e, s(2, e));
    b.set_bracket(e, h, s(-2, e));
    b.set_bracket(h, f, s(-2, f));
    b.set_bracket(f, h, s(2, f));
    b.set_bracket(e, f, s(1, h));
    b.set_bracket(f, e, s(-1, h));
    let a = b.build().unwrap();
    let mut mh = Matrix::zeros(2);
    mh.set(0, 0, crate::scalar::CycloScalar::from_int(l, 1));
    mh.set(1, 1, crate::scalar::CycloScalar::from_int(l, -1));
    let rep = MatrixRep {
        dimension: 2,
        zf_grades: vec![0; 2],
        degrees: GradingMap::constant(&g, 2),
        matrices: vec![mh, Matrix::unit(2, 0, 1, l), Matrix::unit(2, 1, 0, l)],
    };
    (a, rep)
}

#[test]
fn differential_realizations() {
    let spec = ColorGlSpec::enumerated(vec![1, 1], super_z2()).unwrap();
    let (a, rep) = build_color_gl(&spec).unwrap();
    for eps in [1, -1] {
        let r = differential_realization(&a, &rep, eps).unwrap();
        assert!(r.report.passed(), "{}", r.report);
        assert_eq!(r.report.checks_run, 4 * 2 + 4 * 2 + 16);
    }

    let (a, rep) = sl2();
    for eps in [1, -1] {
        let r = differential_realization(&a, &rep, eps).unwrap();
        assert!(r.report.passed(), "{}", r.report);
    }

    let zero = MatrixRep {
        dimension: 1,
        zf_grades: vec![0],
        degrees: GradingMap::constant(a.group(), 1),
        matrices: vec![Matrix::zeros(1); 3],
    };
    let r = differential_realization(&a, &zero, 1).unwrap();
    assert!(r.elements.iter().all(|m| m.is_zero()));
    assert!(r.report.passed());
}

#[test]
fn differential_realization_rejects_misgraded_reps() {
    let spec = ColorGlSpec::enumerated(vec![1, 1], super_z2()).unwrap();
    let (a, mut rep) = build_color_gl(&spec).unwrap();
    rep.degrees = GradingMap::constant(a.group(), 2);
    assert!(matches!(differential_realization(&a, &rep, 1), Err(OscillatorError::GradingMismatch(_))));
}

#[test]
fn differential_realization_detects_a_bad_rep() {
    let (a, mut rep) = sl2();
    rep.matrices[1] = rep.matrices[1].scaled(&a.scalar(2));
    let r = differential_realization(&a, &rep, -1).unwrap();
    assert!(!r.report.passed());
    assert_eq!(r.report.counterexamples[0].identity, "[|M_a,M_b|] = C_ab^c M_c");
}

#[test]
fn quon_realizations() {
    for el in [true, false] {
        let (a, rep) = build_mat_order3(1, 1, 1, el).unwrap();
        let r = quon_realization(&a, &rep).unwrap();
        assert!(r.report.passed(), "{}", r.report);
    }
    let (a, rep) = build_mat_order3(2, 1, 1, true).unwrap();
    assert!(quon_realization(&a, &rep).unwrap().report.passed());

    let spec = ColorGlSpec::enumerated(vec![1, 1, 1], Bicharacter::trivial(AbelianGroup::cyclic(3))).unwrap();
    let (a, rep) = build_color_gl(&spec).unwrap();
    let r = quon_realization(&a, &rep).unwrap();
    assert!(r.report.passed(), "{}", r.report);

    // a one-dimensional algebra acting by a scalar
    let g = AbelianGroup::trivial();
    let mut b = AlgebraBuilder::new(Kind::ColorLie, 1, g.clone(), Bicharacter::trivial(g.clone()), 1).unwrap();
    b.add_basis("x", 0, g.zero());
    let a = b.build().unwrap();
    let rep = MatrixRep {
        dimension: 1,
        zf_grades: vec![0],
        degrees: GradingMap::constant(&g, 1),
        matrices: vec![Matrix::identity(1, 2).scaled(&a.scalar(5))],
    };
    let r = quon_realization(&a, &rep).unwrap();
    assert!(r.report.passed());
    assert_eq!(r.algebra.show(&r.elements[0]), "5*a^1 a_1");
}

#[test]
fn quon_realization_blocks_follow_v0_v2_v1() {
    let (a, rep) = build_mat_order3(1, 1, 1, true).unwrap();
    let r = quon_realization(&a, &rep).unwrap();
    let labels: Vec<&str> = r.algebra.generators().iter().map(|g| g.label.as_str()).collect();
    assert_eq!(labels, ["a0^1", "a2^1", "a1^1", "a0_1", "a2_1", "a1_1"]);
    let y = a.index_of("Y1_2").unwrap();
    assert_eq!(r.algebra.show(&r.elements[y]), "a0^1 a1_1");
}

#[test]
fn quon_realization_rejects_missing_zf_grading() {
    let (a, mut rep) = build_mat_order3(1, 1, 1, true).unwrap();
    rep.zf_grades = vec![0; 3];
    assert!(matches!(quon_realization(&a, &rep), Err(OscillatorError::MissingZfGrading(_))));
}

#[test]
fn lambda_decoloration() {
    let g = AbelianGroup::trivial();
    let gl1 = build_color_gl(&ColorGlSpec::enumerated(vec![1], Bicharacter::trivial(g.clone())).unwrap()).unwrap().0;
    let a = tensor_clifford(&gl1, 3, 2).unwrap();
    let r = lambda_decoloration_check(&a, 3).unwrap();
    assert!(r.passed(), "{r}");
    assert_eq!(r.checks_run, 81 + 729);

    let a = clifford_tensor_gl(&ColorGlSpec::enumerated(vec![1, 1], super_z2()).unwrap()).unwrap();
    let r = lambda_decoloration_check(&a, 3).unwrap();
    assert!(r.passed(), "{r}");

    let gl2 = build_color_gl(&ColorGlSpec::enumerated(vec![2], Bicharacter::trivial(g)).unwrap()).unwrap().0;
    let r = lambda_decoloration_check(&tensor_clifford(&gl2, 3, 2).unwrap(), 3).unwrap();
    assert!(r.passed(), "{r}");
    assert_eq!(r.checks_run, 36 * 36 + 36 * 36 * 36);

    let (sl, _) = sl2();
    assert!(lambda_decoloration_check(&sl, 3).unwrap().passed());
    assert!(matches!(lambda_decoloration_check(&sl, 2), Err(OscillatorError::InvalidParameter(_))));
}

#[test]
fn lambda_decoloration_sees_broken_constants() {
    let (a, _) = sl2();
    let mut b = a.to_builder();
    let (e, f) = (a.index_of("e").unwrap(), a.index_of("f").unwrap());
    b.set_bracket(e, f, a.element("h").unwrap().scaled(&a.scalar(2)));
    let bad = b.build().unwrap();
    let r = lambda_decoloration_check(&bad, 3).unwrap();
    assert!(!r.passed());
    assert_eq!(r.counterexamples[0].identity, "antisymmetry [u,v] = -[v,u]");
}

fn arb_word(n: u32, len: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..n, 0..=len)
}

fn exchange_algebras() -> Vec<ExchangeAlgebra> {
    let factor = clifford_factor(3, 2).unwrap();
    let g = factor.group().clone();
    let gr = vec![g.element(&[1, 0]).unwrap(), g.element(&[0, 1]).unwrap(), g.element(&[1, 1]).unwrap()];
    let z2 = AbelianGroup::cyclic(2);
    let sup = vec![z2.zero(), z2.element(&[1]).unwrap(), z2.element(&[1]).unwrap()];
    vec![
        ExchangeAlgebra::color_oscillator(&factor, &gr, 1, 1).unwrap(),
        ExchangeAlgebra::color_oscillator(&factor, &gr, -1, 1).unwrap(),
        ExchangeAlgebra::color_oscillator(&super_z2(), &sup, 1, 1).unwrap(),
        ExchangeAlgebra::color_oscillator(&super_z2(), &sup, -1, 1).unwrap(),
        ExchangeAlgebra::lambda(&factor, &gr, 2, 1).unwrap(),
        ExchangeAlgebra::lambda(&super_z2(), &z2.enumerate(), 3, 1).unwrap(),
        ExchangeAlgebra::quon(&[2, 1]).unwrap(),
    ]
}

fn element(q: &ExchangeAlgebra, words: &[(Vec<u32>, i64)]) -> NormalElement {
    let mut out = NormalElement::zero();
    for (w, c) in words {
        let w: Vec<u32> = w.iter().map(|&x| x % q.len() as u32).collect();
        out.add_assign(&q.normalize(&w, crate::scalar::CycloScalar::from_int(q.root_order(), *c)).unwrap());
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normal_forms_are_confluent(which in 0usize..7, w in arb_word(64, 12)) {
        let q = &exchange_algebras()[which];
        let w: Vec<u32> = w.iter().map(|&x| x % q.len() as u32).collect();
        let c = crate::scalar::CycloScalar::one(q.root_order());
        let left = q.normalize_with(&w, c.clone(), Order::Leftmost).unwrap();
        let right = q.normalize_with(&w, c, Order::Rightmost).unwrap();
        prop_assert!(left.terms().all(|(w, _)| q.is_normal(w)));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn multiply_is_associative(
        which in 0usize..7,
        x in prop::collection::vec((arb_word(64, 4), -3i64..4), 1..3),
        y in prop::collection::vec((arb_word(64, 4), -3i64..4), 1..3),
        z in prop::collection::vec((arb_word(64, 4), -3i64..4), 1..3),
    ) {
        let q = &exchange_algebras()[which];
        let (x, y, z) = (element(q, &x), element(q, &y), element(q, &z));
        prop_assert_eq!(q.multiply(&q.multiply(&x, &y), &z), q.multiply(&x, &q.multiply(&y, &z)));
    }

    #[test]
    fn quon_bilinears_compose_like_matrices(
        n in 1usize..5,
        p in prop::collection::vec(-2i64..3, 16),
        r in prop::collection::vec(-2i64..3, 16),
    ) {
        let (q, e) = quon_matrix_units(n).unwrap();
        let l = q.root_order();
        let mat = |v: &[i64]| {
            let mut m = Matrix::zeros(n);
            for i in 0..n {
                for j in 0..n {
                    m.set(i, j, crate::scalar::CycloScalar::from_int(l, v[i * 4 + j]));
                }
            }
            m
        };
        let elem = |m: &Matrix| {
            let mut out = NormalElement::zero();
            for (i, j, c) in m.entries() {
                out.add_scaled(&e[i][j], c);
            }
            out
        };
        let (mp, mr) = (mat(&p), mat(&r));
        prop_assert_eq!(q.multiply(&elem(&mp), &elem(&mr)), elem(&mp.mul(&mr)));
    }
}
