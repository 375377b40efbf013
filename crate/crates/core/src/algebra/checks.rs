//! Exhaustive validators for the symmetry laws and Jacobi identities.

use super::{in_bilinear_domain, AlgebraBuilder, AlgebraError, Element, GradedAlgebra, Kind};
use crate::report::{sweep, Counterexample, Mismatch, SweepOutcome, VerificationReport};

/// Runs `check` over the mixed-radix space `radices`; `decode` turns a
/// radix tuple into basis indices (used for witnesses).
pub(crate) fn run<D, C>(
    a: &GradedAlgebra,
    name: &str,
    radices: &[usize],
    budget: Option<u64>,
    decode: D,
    check: C,
) -> SweepOutcome
where
    D: Fn(&[usize]) -> Vec<usize> + Sync,
    C: Fn(&[usize]) -> Option<(Element, Element)> + Sync,
{
    sweep(
        name,
        radices,
        budget,
        |t| {
            let idx = decode(t);
            check(&idx).map(|(l, r)| Mismatch {
                lhs: a.show(&l),
                rhs: a.show(&r),
            })
        },
        |t| decode(t).into_iter().map(|i| a.label(i).to_string()).collect(),
    )
}

/// Sweep over the cartesian product of basis-index lists.
pub(crate) fn run_slots<C>(a: &GradedAlgebra, name: &str, slots: &[&[usize]], budget: Option<u64>, check: C) -> SweepOutcome
where
    C: Fn(&[usize]) -> Option<(Element, Element)> + Sync,
{
    let radices: Vec<usize> = slots.iter().map(|s| s.len()).collect();
    run(
        a,
        name,
        &radices,
        budget,
        |t| t.iter().zip(slots).map(|(&i, s)| s[i]).collect(),
        check,
    )
}

fn differ(lhs: Element, rhs: Element) -> Option<(Element, Element)> {
    (lhs != rhs).then_some((lhs, rhs))
}

/// Ordered pairs on which the bilinear bracket is defined.
pub(crate) fn bilinear_domain(a: &GradedAlgebra) -> Vec<(usize, usize)> {
    let n = a.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if in_bilinear_domain(a.f(), a.basis()[i].zf_grade, a.basis()[j].zf_grade) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Nonzero Z_F grades that actually occur in the basis.
pub(crate) fn active_grades(a: &GradedAlgebra) -> Vec<u32> {
    (1..a.f()).filter(|&g| !a.grade_indices(g).is_empty()).collect()
}

pub(crate) fn grade_suffix(a: &GradedAlgebra, g: u32) -> String {
    if active_grades(a).len() > 1 || g != 1 {
        format!(" (grade {g})")
    } else {
        String::new()
    }
}

/// Bilinear and F-ary symmetry laws with the commutation factor, plus a
/// re-check of degree compatibility of every stored constant.
pub fn check_symmetries(a: &GradedAlgebra, budget: Option<u64>) -> VerificationReport {
    let mut report = VerificationReport::new("symmetries");

    let bil: Vec<((usize, usize), Element)> = a.bilinear_entries().map(|(k, v)| (*k, v.clone())).collect();
    let fary: Vec<(Vec<usize>, Element)> = a.f_ary_entries().map(|(k, v)| (k.clone(), v.clone())).collect();
    let total = bil.len() + fary.len();
    let expected = |k: usize| -> (u32, crate::grading::GroupElement) {
        if k < bil.len() {
            let (i, j) = bil[k].0;
            let (bi, bj) = (&a.basis()[i], &a.basis()[j]);
            ((bi.zf_grade + bj.zf_grade) % a.f(), a.group().add_unchecked(&bi.degree, &bj.degree))
        } else {
            let args = &fary[k - bil.len()].0;
            let deg = args
                .iter()
                .fold(a.group().zero(), |d, &i| a.group().add_unchecked(&d, &a.basis()[i].degree));
            (0, deg)
        }
    };
    let args_of = |k: usize| -> Vec<usize> {
        if k < bil.len() {
            vec![bil[k].0 .0, bil[k].0 .1]
        } else {
            fary[k - bil.len()].0.clone()
        }
    };
    report.record(sweep(
        "degree compatibility",
        &[total],
        budget,
        |t| {
            let k = t[0];
            let value = if k < bil.len() { &bil[k].1 } else { &fary[k - bil.len()].1 };
            let (zf, deg) = expected(k);
            let bad = Element::from_terms(
                value
                    .terms()
                    .filter(|(i, _)| a.basis()[*i].zf_grade != zf || a.basis()[*i].degree != deg)
                    .map(|(i, c)| (i, c.clone())),
            );
            (!bad.is_zero()).then(|| Mismatch {
                lhs: a.show(&bad),
                rhs: "0".into(),
            })
        },
        |t| args_of(t[0]).into_iter().map(|i| a.label(i).to_string()).collect(),
    ));

    let pairs = bilinear_domain(a);
    report.record(run(
        a,
        "[|x,y|] = -N(a,b)[|y,x|]",
        &[pairs.len()],
        budget,
        |t| vec![pairs[t[0]].0, pairs[t[0]].1],
        |idx| {
            let (i, j) = (idx[0], idx[1]);
            let lhs = a.bracket_basis(i, j).cloned().unwrap_or_default();
            let rhs = match a.bracket_basis(j, i) {
                Some(v) => v.scaled(&-a.n_value(i, j)),
                None => Element::zero(),
            };
            differ(lhs, rhs)
        },
    ));

    if a.f() >= 2 {
        let f = a.f() as usize;
        for g in active_grades(a) {
            let list = a.grade_indices(g);
            let slots = vec![list; f];
            let name = format!("{{|..y_k,y_k+1..|}} = N(a_k,a_k+1){{|..y_k+1,y_k..|}}{}", grade_suffix(a, g));
            report.record(run_slots(a, &name, &slots, budget, |t| {
                let lhs = a.f_bracket_basis(t).cloned().unwrap_or_default();
                let mut s = t.to_vec();
                for k in 0..f - 1 {
                    s.swap(k, k + 1);
                    let rhs = match a.f_bracket_basis(&s) {
                        Some(v) => v.scaled(a.n_value(t[k], t[k + 1])),
                        None => Element::zero(),
                    };
                    s.swap(k, k + 1);
                    if rhs != lhs {
                        return Some((lhs, rhs));
                    }
                }
                None
            }));
        }
    }
    report
}

/// Jacobi identities appropriate to the algebra's kind.
///
/// The symmetry laws are a precondition: if [`check_symmetries`] fails, the
/// returned report fails with its first counterexample and no Jacobi sweep
/// is run.
pub fn check_jacobi(a: &GradedAlgebra, budget: Option<u64>) -> VerificationReport {
    let mut report = VerificationReport::new("jacobi");
    let sym = check_symmetries(a, budget);
    if !sym.passed() {
        let first = sym.counterexamples[0].clone();
        report.record_single(
            "symmetry precondition",
            Some(Counterexample {
                identity: format!("symmetry precondition: {}", first.identity),
                ..first
            }),
        );
        return report;
    }

    // [|x,[|y,z|]|] = [|[|x,y|],z|] + N(a,b)[|y,[|x,z|]|]
    let color_jacobi = |t: &[usize]| {
        let (x, y, z) = (t[0], t[1], t[2]);
        let lhs = match a.bracket_basis(y, z) {
            Some(v) => a.br_left(x, v),
            None => Element::zero(),
        };
        let mut rhs = match a.bracket_basis(x, y) {
            Some(v) => a.br_right(v, z),
            None => Element::zero(),
        };
        if let Some(v) = a.bracket_basis(x, z) {
            rhs.add_scaled(&a.br_left(y, v), a.n_value(x, y));
        }
        differ(lhs, rhs)
    };

    if a.f() == 1 {
        let all: Vec<usize> = (0..a.dim()).collect();
        report.record(run_slots(a, "jacobi x,y,z", &[&all, &all, &all], budget, color_jacobi));
        return report;
    }

    let f = a.f() as usize;
    let g0 = a.grade_indices(0);
    let nonzero: Vec<usize> = (0..a.dim()).filter(|&i| a.basis()[i].zf_grade != 0).collect();
    report.record(run_slots(a, "jacobi X,X,X", &[g0, g0, g0], budget, color_jacobi));
    report.record(run_slots(a, "jacobi X,X,Y", &[g0, g0, &nonzero], budget, color_jacobi));

    for g in active_grades(a) {
        let list = a.grade_indices(g);
        let suffix = grade_suffix(a, g);

        // [|X,{|Y_1..Y_F|}|] = Σ_k Π_{j<k} N(a,b_j) {|..,[|X,Y_k|],..|}
        let mut slots: Vec<&[usize]> = vec![g0];
        slots.extend(std::iter::repeat_n(list, f));
        report.record(run_slots(a, &format!("derivation X,{{|Y..Y|}}{suffix}"), &slots, budget, |t| {
            let (x, ys) = (t[0], &t[1..]);
            let lhs = match a.f_bracket_basis(ys) {
                Some(v) => a.br_left(x, v),
                None => Element::zero(),
            };
            let mut rhs = Element::zero();
            let mut w = 0u32;
            for k in 0..f {
                if let Some(v) = a.bracket_basis(x, ys[k]) {
                    rhs.add_scaled(&a.fb_slot(ys, k, v), a.zeta(w));
                }
                w += a.nexp(x, ys[k]);
            }
            differ(lhs, rhs)
        }));

        // Σ_k c_k [|Y_k, {|Y_k+1 .. Y_k-1|}|] = 0 with c_k = Π_{j<k} N(a_j, Σ_{i≠j} a_i)
        let slots = vec![list; f + 1];
        report.record(run_slots(a, &format!("cyclic Y,{{|Y..Y|}}{suffix}"), &slots, budget, |t| {
            let mut sum = Element::zero();
            let mut w = 0u32;
            let mut rest = vec![0usize; f];
            for k in 0..=f {
                for (s, slot) in rest.iter_mut().enumerate() {
                    *slot = t[(k + 1 + s) % (f + 1)];
                }
                if let Some(v) = a.f_bracket_basis(&rest) {
                    sum.add_scaled(&a.br_left(t[k], v), a.zeta(w));
                }
                for (i, &ti) in t.iter().enumerate() {
                    if i != k {
                        w += a.nexp(t[k], ti);
                    }
                }
            }
            (!sum.is_zero()).then(|| (sum, Element::zero()))
        }));
    }
    report
}

/// Truncates an order-F algebra to g_0 ⊕ g_i, relabelling g_i as grade 1.
pub fn extract_elementary(a: &GradedAlgebra, i: u32) -> Result<GradedAlgebra, AlgebraError> {
    if !matches!(a.kind(), Kind::LieOrderF | Kind::ColorOrder3) || a.f() < 2 {
        return Err(AlgebraError::UnsupportedKind(format!(
            "extract_elementary needs an algebra of order F >= 2, got {} with F = {}",
            a.kind(),
            a.f()
        )));
    }
    if i == 0 || i >= a.f() {
        return Err(AlgebraError::GradeMismatch(format!("grade {i} is not in 1..{}", a.f())));
    }
    if a.grade_indices(i).is_empty() {
        return Err(AlgebraError::EmptyComponent(i));
    }
    let mut b = AlgebraBuilder::new(a.kind(), a.f(), a.group().clone(), a.factor().clone(), a.root_order())?;
    let mut map = vec![usize::MAX; a.dim()];
    for (k, e) in a.basis().iter().enumerate() {
        if e.zf_grade == 0 || e.zf_grade == i {
            map[k] = b.add_basis(e.label.clone(), if e.zf_grade == 0 { 0 } else { 1 }, e.degree.clone());
        }
    }
    let keep = |k: usize| map[k] != usize::MAX;
    for (&(p, q), v) in a.bilinear_entries() {
        if keep(p) && keep(q) {
            b.set_bracket(map[p], map[q], v.reindex(|k| map[k]));
        }
    }
    for (args, v) in a.f_ary_entries() {
        if args.iter().all(|&k| keep(k)) {
            b.set_f_bracket(args.iter().map(|&k| map[k]).collect(), v.reindex(|k| map[k]));
        }
    }
    b.build()
}

/// Checks that the linear map e_k ↦ images[k] intertwines all brackets of
/// `a` with those of `b`.
pub fn check_homomorphism(
    a: &GradedAlgebra,
    b: &GradedAlgebra,
    images: &[Element],
    budget: Option<u64>,
) -> Result<VerificationReport, AlgebraError> {
    if images.len() != a.dim() {
        return Err(AlgebraError::DimensionMismatch(format!(
            "{} images for a {}-dimensional algebra",
            images.len(),
            a.dim()
        )));
    }
    let phi = |v: &Element| {
        let mut out = Element::zero();
        for (k, c) in v.terms() {
            out.add_scaled(&images[k], c);
        }
        out
    };
    let shown = |r: Result<Element, AlgebraError>| match r {
        Ok(v) => b.show(&v),
        Err(e) => format!("<{e}>"),
    };
    let witness = |idx: Vec<usize>| idx.into_iter().map(|i| a.label(i).to_string()).collect::<Vec<_>>();
    let mut report = VerificationReport::new("homomorphism");
    let pairs = bilinear_domain(a);
    report.record(sweep(
        "phi([|x,y|]) = [|phi(x),phi(y)|]",
        &[pairs.len()],
        budget,
        |t| {
            let (i, j) = pairs[t[0]];
            let lhs = phi(&a.bracket_basis(i, j).cloned().unwrap_or_default());
            let rhs = b.bracket(&images[i], &images[j]);
            (rhs.as_ref() != Ok(&lhs)).then(|| Mismatch {
                lhs: b.show(&lhs),
                rhs: shown(rhs),
            })
        },
        |t| witness(vec![pairs[t[0]].0, pairs[t[0]].1]),
    ));
    if a.f() >= 2 {
        for g in active_grades(a) {
            let list = a.grade_indices(g);
            let radices = vec![list.len(); a.f() as usize];
            report.record(sweep(
                &format!("phi({{|..|}}) = {{|phi(..)|}}{}", grade_suffix(a, g)),
                &radices,
                budget,
                |t| {
                    let args: Vec<usize> = t.iter().map(|&k| list[k]).collect();
                    let lhs = phi(&a.f_bracket_basis(&args).cloned().unwrap_or_default());
                    let imgs: Vec<Element> = args.iter().map(|&k| images[k].clone()).collect();
                    let rhs = b.f_bracket(&imgs);
                    (rhs.as_ref() != Ok(&lhs)).then(|| Mismatch {
                        lhs: b.show(&lhs),
                        rhs: shown(rhs),
                    })
                },
                |t| witness(t.iter().map(|&k| list[k]).collect()),
            ));
        }
    }
    Ok(report)
}
