use std::collections::BTreeMap;

use proptest::prelude::*;

use super::*;
use crate::factor::Bicharacter;

fn int(l: u32, n: i64) -> CycloScalar {
    CycloScalar::from_int(l, n)
}

fn el(l: u32, terms: &[(usize, i64)]) -> Element {
    Element::from_terms(terms.iter().map(|&(k, c)| (k, int(l, c))))
}

/// sl(2) with [h,e] = 2e, [h,f] = -2f, [e,f] = h, over the trivial group.
fn sl2() -> GradedAlgebra {
    let g = AbelianGroup::trivial();
    let mut b = AlgebraBuilder::new(Kind::ColorLie, 1, g.clone(), Bicharacter::trivial(g.clone()), 1).unwrap();
    let l = b.root_order();
    let (h, e, f) = (
        b.add_basis("h", 0, g.zero()),
        b.add_basis("e", 0, g.zero()),
        b.add_basis("f", 0, g.zero()),
    );
    for (x, y, v) in [(h, e, el(l, &[(e, 2)])), (h, f, el(l, &[(f, -2)])), (e, f, el(l, &[(h, 1)]))] {
        b.set_bracket(x, y, v.clone());
        b.set_bracket(y, x, v.neg());
    }
    b.build().unwrap()
}

fn matrix_units(n: usize) -> AssociativeAlgebra {
    let g = AbelianGroup::trivial();
    let basis = (0..n * n)
        .map(|k| BasisElement {
            label: format!("E{}{}", k / n + 1, k % n + 1),
            zf_grade: 0,
            degree: g.zero(),
        })
        .collect();
    let mut product = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                product.insert((i * n + j, j * n + k), Element::basis(i * n + k, 2));
            }
        }
    }
    AssociativeAlgebra::new(g, 1, 2, basis, product).unwrap()
}

#[test]
fn sl2_brackets_and_jacobi() {
    let a = sl2();
    let (h, e, f) = (a.element("h").unwrap(), a.element("e").unwrap(), a.element("f").unwrap());
    assert_eq!(a.bracket(&e, &f).unwrap(), h);
    assert_eq!(a.bracket(&f, &e).unwrap(), h.neg());
    assert_eq!(a.bracket(&h, &Element::zero()).unwrap(), Element::zero());
    assert!(check_symmetries(&a, None).passed());
    let rep = check_jacobi(&a, None);
    assert!(rep.passed(), "{rep}");
    assert_eq!(rep.checks_run, 27);
}

#[test]
fn corrupted_sl2_reports_a_witness() {
    let a = sl2();
    let mut b = a.to_builder();
    let l = a.root_order();
    // [h,e] = 3e breaks Jacobi but keeps antisymmetry
    b.set_bracket(0, 1, el(l, &[(1, 3)]));
    b.set_bracket(1, 0, el(l, &[(1, -3)]));
    let bad = b.build().unwrap();
    assert!(check_symmetries(&bad, None).passed());
    let rep = check_jacobi(&bad, None);
    assert!(!rep.passed());
    assert_eq!(rep.counterexamples[0].identity, "jacobi x,y,z");

    // an antisymmetry violation is caught before Jacobi runs
    let mut b = a.to_builder();
    b.set_bracket(1, 0, el(l, &[(1, 2)]));
    let bad = b.build().unwrap();
    let rep = check_jacobi(&bad, None);
    assert!(rep.counterexamples[0].identity.starts_with("symmetry precondition"));
}

#[test]
fn adjoint_of_sl2_is_a_representation() {
    let a = sl2();
    let r = adjoint_embedding(&a).unwrap();
    assert!(check_representation(&a, &r, None).unwrap().passed());
    // ad h is diagonal with eigenvalues 0, 2, -2 on (h, e, f)
    let ad_h = &r.matrices[0];
    assert_eq!(ad_h.get(1, 1), Some(&int(a.root_order(), 2)));
    assert_eq!(ad_h.get(2, 2), Some(&int(a.root_order(), -2)));
    assert_eq!(ad_h.entries().count(), 2);
}

#[test]
fn zero_rep_passes_only_when_brackets_vanish() {
    let a = sl2();
    let mut r = adjoint_embedding(&a).unwrap();
    for m in &mut r.matrices {
        *m = Matrix::zeros(3);
    }
    assert!(check_representation(&a, &r, None).unwrap().passed());
    // ρ(e) ≠ 0 but ρ(h) = 0 violates ρ([h,e]) = [ρ(h),ρ(e)] only through 2ρ(e)
    r.matrices[1] = Matrix::unit(3, 0, 1, a.root_order());
    assert!(!check_representation(&a, &r, None).unwrap().passed());
}

#[test]
fn gl2_from_matrix_units() {
    let assoc = matrix_units(2);
    let g = AbelianGroup::trivial();
    let a = from_associative(Kind::ColorLie, Bicharacter::trivial(g), &assoc).unwrap();
    let (e12, e21, e11, e22) = (
        a.element("E12").unwrap(),
        a.element("E21").unwrap(),
        a.element("E11").unwrap(),
        a.element("E22").unwrap(),
    );
    let mut h = e11.clone();
    h.sub_assign(&e22);
    assert_eq!(a.bracket(&e12, &e21).unwrap(), h);
    assert!(check_jacobi(&a, None).passed());
}

#[test]
fn one_dimensional_associative_algebra_is_abelian() {
    let g = AbelianGroup::trivial();
    let basis = vec![BasisElement {
        label: "u".into(),
        zf_grade: 0,
        degree: g.zero(),
    }];
    let product = BTreeMap::from([((0, 0), Element::basis(0, 2))]);
    let assoc = AssociativeAlgebra::new(g.clone(), 1, 2, basis, product).unwrap();
    let a = from_associative(Kind::ColorLie, Bicharacter::trivial(g), &assoc).unwrap();
    assert_eq!(a.bilinear_entries().count(), 0);
}

#[test]
fn non_associative_table_is_rejected() {
    let g = AbelianGroup::trivial();
    let basis: Vec<BasisElement> = ["a", "b"]
        .iter()
        .map(|s| BasisElement {
            label: s.to_string(),
            zf_grade: 0,
            degree: g.zero(),
        })
        .collect();
    // a·a = b, everything else zero except b·a = a
    let product = BTreeMap::from([((0, 0), Element::basis(1, 2)), ((1, 0), Element::basis(0, 2))]);
    let err = AssociativeAlgebra::new(g, 1, 2, basis, product).unwrap_err();
    assert!(matches!(err, AlgebraError::NotAssociative(w) if w == ["a", "a", "a"]));
}

#[test]
fn ungraded_product_is_rejected() {
    let g = AbelianGroup::cyclic(2);
    let basis = vec![
        BasisElement {
            label: "u".into(),
            zf_grade: 0,
            degree: g.zero(),
        },
        BasisElement {
            label: "v".into(),
            zf_grade: 0,
            degree: g.element(&[1]).unwrap(),
        },
    ];
    let product = BTreeMap::from([((1, 1), Element::basis(1, 2))]);
    let err = AssociativeAlgebra::new(g, 1, 2, basis, product).unwrap_err();
    assert!(matches!(err, AlgebraError::NotGraded(_)));
}

#[test]
fn load_time_validation() {
    let g = AbelianGroup::cyclic(2);
    let n = Bicharacter::new(g.clone(), 2, vec![vec![1]]).unwrap();
    let mut b = AlgebraBuilder::new(Kind::ColorLieSuper, 1, g.clone(), n.clone(), 1).unwrap();
    let x = b.add_basis("x", 0, g.zero());
    let y = b.add_basis("y", 0, g.element(&[1]).unwrap());
    let mut bad = b.clone();
    bad.set_bracket(x, y, Element::basis(x, 2));
    assert!(matches!(bad.build(), Err(AlgebraError::DegreeMismatch(_))));

    let mut bad = b.clone();
    bad.add_basis("x", 0, g.zero());
    assert!(matches!(bad.build(), Err(AlgebraError::DuplicateLabel(_))));

    let mut bad = b.clone();
    bad.add_basis("z", 1, g.zero());
    assert!(matches!(bad.build(), Err(AlgebraError::GradeMismatch(_))));

    // a super factor cannot carry the plain color kind
    let mut bad = b.clone();
    bad.set_kind(Kind::ColorLie);
    assert!(matches!(bad.build(), Err(AlgebraError::KindMismatch(_))));

    assert!(b.build().is_ok());
}

#[test]
fn unknown_labels_and_indices() {
    let a = sl2();
    assert!(matches!(a.element("k"), Err(AlgebraError::UnknownBasisElement(_))));
    let stray = Element::basis(7, a.root_order());
    assert!(matches!(a.bracket(&stray, &stray), Err(AlgebraError::UnknownBasisElement(_))));
}

#[test]
fn elementary_extraction_of_elementary_algebra_is_identity() {
    // g_0 = <x>, g_1 = <y>, {y,y,y} = x, everything else zero
    let g = AbelianGroup::trivial();
    let mut b = AlgebraBuilder::new(Kind::LieOrderF, 3, g.clone(), Bicharacter::trivial(g.clone()), 1).unwrap();
    let x = b.add_basis("x", 0, g.zero());
    let y = b.add_basis("y", 1, g.zero());
    b.set_f_bracket(vec![y, y, y], Element::basis(x, 2));
    let a = b.build().unwrap();
    assert!(check_jacobi(&a, None).passed());
    assert_eq!(extract_elementary(&a, 1).unwrap(), a);
    assert!(matches!(extract_elementary(&a, 2), Err(AlgebraError::EmptyComponent(2))));
}

#[test]
fn f_bracket_rejects_wrong_grades() {
    let g = AbelianGroup::trivial();
    let mut b = AlgebraBuilder::new(Kind::LieOrderF, 3, g.clone(), Bicharacter::trivial(g.clone()), 1).unwrap();
    let x = b.add_basis("x", 0, g.zero());
    let y = b.add_basis("y", 1, g.zero());
    let z = b.add_basis("z", 2, g.zero());
    let a = b.build().unwrap();
    let e = |k| Element::basis(k, 2);
    assert!(matches!(a.f_bracket(&[e(x), e(y), e(y)]), Err(AlgebraError::GradeMismatch(_))));
    assert!(matches!(a.f_bracket(&[e(y), e(z), e(y)]), Err(AlgebraError::GradeMismatch(_))));
    assert_eq!(a.f_bracket(&[e(z), e(z), e(z)]).unwrap(), Element::zero());
}

fn small_element(dim: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, dim)
}

proptest! {
    #[test]
    fn bracket_is_bilinear(x in small_element(3), x2 in small_element(3), y in small_element(3)) {
        let a = sl2();
        let l = a.root_order();
        let mk = |v: &[i64]| el(l, &v.iter().copied().enumerate().collect::<Vec<_>>());
        let (x, x2, y) = (mk(&x), mk(&x2), mk(&y));
        let mut sum = x.clone();
        sum.add_assign(&x2);
        let mut rhs = a.bracket(&x, &y).unwrap();
        rhs.add_assign(&a.bracket(&x2, &y).unwrap());
        prop_assert_eq!(a.bracket(&sum, &y).unwrap(), rhs);
    }
}
