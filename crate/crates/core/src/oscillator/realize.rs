//! Realizations of graded algebras inside exchange algebras, each checked by
//! exact normal-form computation.

use std::collections::BTreeMap;

use super::{ExchangeAlgebra, NormalElement, OscillatorError};
use crate::algebra::{
    active_grades, bilinear_domain, grade_suffix, in_bilinear_domain, weighted_orderings, Element, GradedAlgebra,
    Matrix, MatrixRep,
};
use crate::grading::GroupElement;
use crate::report::{sweep, Mismatch, VerificationReport};
use crate::scalar::CycloScalar;

/// The image of every basis element and the verification of the defining
/// relations.
#[derive(Debug, Clone)]
pub struct Realization {
    pub algebra: ExchangeAlgebra,
    pub elements: Vec<NormalElement>,
    pub report: VerificationReport,
}

impl Realization {
    /// Σ_k c_k 𝓜_k for an algebra element.
    pub fn image(&self, x: &Element) -> NormalElement {
        let mut out = NormalElement::zero();
        for (k, c) in x.terms() {
            out.add_scaled(&self.elements[k], c);
        }
        out
    }
}

fn lifted_matrices(r: &MatrixRep, l: u32) -> Result<Vec<Matrix>, OscillatorError> {
    r.matrices
        .iter()
        .map(|m| m.lift(l))
        .collect::<Result<_, _>>()
        .map_err(|e| OscillatorError::GradingMismatch(format!("matrix entries: {e}")))
}

fn mismatch(q: &ExchangeAlgebra, lhs: &NormalElement, rhs: &NormalElement) -> Option<Mismatch> {
    (lhs != rhs).then(|| Mismatch {
        lhs: q.show(lhs),
        rhs: q.show(rhs),
    })
}

/// 𝓜_α = θ^i (M_α)_i^j ∂_j in the color oscillator algebra, verifying
///
/// - 𝓜θ^i − N(a, −gr i) θ^i𝓜 = θ^j (M)_j^i,
/// - 𝓜∂_i − N(a, gr i) ∂_i𝓜 = −N(gr j − gr i, gr i) (M)_i^j ∂_j,
/// - 𝓜_α𝓜_β − N(a, b) 𝓜_β𝓜_α = C_{αβ}^γ 𝓜_γ.
pub fn differential_realization(a: &GradedAlgebra, r: &MatrixRep, epsilon: i8) -> Result<Realization, OscillatorError> {
    if a.f() != 1 {
        return Err(OscillatorError::Algebra(crate::algebra::AlgebraError::KindMismatch(format!(
            "differential realization needs a color Lie (super)algebra, got {}",
            a.kind().name()
        ))));
    }
    r.validate_shape(a)?;
    let gr = r.degrees.degrees().to_vec();
    let osc = ExchangeAlgebra::color_oscillator(a.factor(), &gr, epsilon, a.root_order())?;
    let l = osc.root_order();
    let a = &a.lifted(l)?;
    let mats = lifted_matrices(r, l)?;
    let g = a.group();
    let d = r.dimension;
    for (k, m) in mats.iter().enumerate() {
        for (i, j, _) in m.entries() {
            if g.sub_unchecked(&gr[j], &gr[i]) != a.basis()[k].degree {
                return Err(OscillatorError::GradingMismatch(format!(
                    "entry ({}, {}) of the matrix of {} needs degree gr({}) - gr({}) = {} but the element has degree {}",
                    i + 1,
                    j + 1,
                    a.label(k),
                    j + 1,
                    i + 1,
                    g.sub_unchecked(&gr[j], &gr[i]),
                    a.basis()[k].degree
                )));
            }
        }
    }
    let n = |x: &GroupElement, y: &GroupElement| CycloScalar::root_of_unity(l, a.factor().exponent_in(x, y, l) as i64);
    let theta = |i: usize| osc.letter(i as u32);
    let partial = |i: usize| osc.letter((d + i) as u32);
    let elements: Vec<NormalElement> = mats
        .iter()
        .map(|m| {
            let mut out = NormalElement::zero();
            for (i, j, c) in m.entries() {
                out.add_scaled(&osc.multiply(&theta(i), &partial(j)), c);
            }
            out
        })
        .collect();

    let mut report = VerificationReport::new("differential realization");
    let deg = |k: usize| &a.basis()[k].degree;
    let label = |k: usize| a.label(k).to_string();
    report.record(sweep(
        "[|M,θ^i|] = θ^j M_j^i",
        &[a.dim(), d],
        None,
        |t| {
            let (k, i) = (t[0], t[1]);
            let lhs = osc.commutator(&elements[k], &theta(i), &n(deg(k), &g.neg_unchecked(&gr[i])));
            let mut rhs = NormalElement::zero();
            for j in 0..d {
                if let Some(c) = mats[k].get(j, i) {
                    rhs.add_scaled(&theta(j), c);
                }
            }
            mismatch(&osc, &lhs, &rhs)
        },
        |t| vec![label(t[0]), format!("θ^{}", t[1] + 1)],
    ));
    report.record(sweep(
        "[|M,∂_i|] = -N(gr j - gr i, gr i) M_i^j ∂_j",
        &[a.dim(), d],
        None,
        |t| {
            let (k, i) = (t[0], t[1]);
            let lhs = osc.commutator(&elements[k], &partial(i), &n(deg(k), &gr[i]));
            let mut rhs = NormalElement::zero();
            for j in 0..d {
                if let Some(c) = mats[k].get(i, j) {
                    let w = -(c * &n(&g.sub_unchecked(&gr[j], &gr[i]), &gr[i]));
                    rhs.add_scaled(&partial(j), &w);
                }
            }
            mismatch(&osc, &lhs, &rhs)
        },
        |t| vec![label(t[0]), format!("∂_{}", t[1] + 1)],
    ));
    report.record(sweep(
        "[|M_a,M_b|] = C_ab^c M_c",
        &[a.dim(), a.dim()],
        None,
        |t| {
            let (x, y) = (t[0], t[1]);
            let lhs = osc.commutator(&elements[x], &elements[y], a.n_value(x, y));
            let mut rhs = NormalElement::zero();
            if let Some(v) = a.bracket_basis(x, y) {
                for (k, c) in v.terms() {
                    rhs.add_scaled(&elements[k], c);
                }
            }
            mismatch(&osc, &lhs, &rhs)
        },
        |t| vec![label(t[0]), label(t[1])],
    ));
    Ok(Realization {
        algebra: osc,
        elements,
        report,
    })
}

/// Position of Z_F grade g in the block order V_0, V_{F−1}, …, V_1.
fn block_rank(g: u32, f: u32) -> u32 {
    if g == 0 {
        0
    } else {
        f - g
    }
}

/// 𝓜 = Σ a^I (M)_I^J a_J with one q = 0 quon family per Z_F block of the
/// carrier space (blocks ordered V_0, V_{F−1}, …, V_1), verifying every
/// bilinear constant and every F-ary constant through the N-weighted
/// symmetrized product.
pub fn quon_realization(a: &GradedAlgebra, r: &MatrixRep) -> Result<Realization, OscillatorError> {
    r.validate_shape(a)?;
    let f = a.f();
    let l = a.root_order();
    let mats = lifted_matrices(r, l)?;
    let g = a.group();
    for (k, m) in mats.iter().enumerate() {
        for (i, j, _) in m.entries() {
            let zf = (r.zf_grades[j] + f - r.zf_grades[i]) % f;
            if zf != a.basis()[k].zf_grade {
                return Err(OscillatorError::MissingZfGrading(format!(
                    "entry ({}, {}) of the matrix of {} joins vector grades {} and {}, not a shift by {}",
                    i + 1,
                    j + 1,
                    a.label(k),
                    r.zf_grades[i],
                    r.zf_grades[j],
                    a.basis()[k].zf_grade
                )));
            }
            if g.sub_unchecked(r.degrees.degree(j), r.degrees.degree(i)) != a.basis()[k].degree {
                return Err(OscillatorError::GradingMismatch(format!(
                    "entry ({}, {}) of the matrix of {} does not match its degree {}",
                    i + 1,
                    j + 1,
                    a.label(k),
                    a.basis()[k].degree
                )));
            }
        }
    }

    // new position → old index, blocks in order V_0, V_{F−1}, …, V_1
    let mut order: Vec<usize> = (0..r.dimension).collect();
    order.sort_by_key(|&i| (block_rank(r.zf_grades[i], f), i));
    let mut sizes = Vec::new();
    let mut names = Vec::new();
    let mut zf = Vec::new();
    for rank in 0..f {
        let grade = if rank == 0 { 0 } else { f - rank };
        let n = order.iter().filter(|&&i| r.zf_grades[i] == grade).count();
        if n > 0 {
            sizes.push(n);
            names.push(grade.to_string());
            zf.push(grade);
        }
    }
    let q = ExchangeAlgebra::quon_named(&sizes, &names, &zf, l)?;
    let total = r.dimension;
    let elements: Vec<NormalElement> = mats
        .iter()
        .map(|m| {
            let mut out = NormalElement::zero();
            for (pi, &i) in order.iter().enumerate() {
                for (pj, &j) in order.iter().enumerate() {
                    if let Some(c) = m.get(i, j) {
                        let w = q.multiply(&q.letter(pi as u32), &q.letter((total + pj) as u32));
                        out.add_scaled(&w, c);
                    }
                }
            }
            out
        })
        .collect();

    let mut report = VerificationReport::new("quon realization");
    let label = |k: usize| a.label(k).to_string();
    let combo = |v: Option<&Element>| {
        let mut out = NormalElement::zero();
        if let Some(v) = v {
            for (k, c) in v.terms() {
                out.add_scaled(&elements[k], c);
            }
        }
        out
    };
    let pairs = bilinear_domain(a);
    report.record(sweep(
        "[|x,y|] = C_xy^z M_z",
        &[pairs.len()],
        None,
        |t| {
            let (x, y) = pairs[t[0]];
            let lhs = q.commutator(&elements[x], &elements[y], a.n_value(x, y));
            mismatch(&q, &lhs, &combo(a.bracket_basis(x, y)))
        },
        |t| vec![label(pairs[t[0]].0), label(pairs[t[0]].1)],
    ));
    if f >= 2 {
        for grade in active_grades(a) {
            let list = a.grade_indices(grade);
            let radices = vec![list.len(); f as usize];
            report.record(sweep(
                &format!("{{|y..y|}} = Q_y..y^x M_x{}", grade_suffix(a, grade)),
                &radices,
                None,
                |t| {
                    let args: Vec<usize> = t.iter().map(|&k| list[k]).collect();
                    let lhs = weighted_orderings(
                        a,
                        &args,
                        q.one(),
                        |x, y| q.multiply(x, y),
                        NormalElement::zero(),
                        |s, x, c| s.add_scaled(x, c),
                        |k| elements[k].clone(),
                    );
                    mismatch(&q, &lhs, &combo(a.f_bracket_basis(&args)))
                },
                |t| t.iter().map(|&k| label(list[k])).collect(),
            ));
        }
    }
    Ok(Realization {
        algebra: q,
        elements,
        report,
    })
}

/// An element of Λ ⊗ g: basis index → Λ coefficient.
type Hull = BTreeMap<usize, NormalElement>;

struct LambdaHull<'a> {
    a: &'a GradedAlgebra,
    lam: ExchangeAlgebra,
    /// generator index of θ^{−deg x}_1 for every basis element x
    first: Vec<u32>,
    multiplicity: usize,
}

impl LambdaHull<'_> {
    /// θ_p ⊗ e_{t[p]} for each slot, with the k-th repeat of a degree using
    /// θ_{k mod multiplicity}.
    fn lift(&self, t: &[usize]) -> Vec<Hull> {
        let mut out = Vec::with_capacity(t.len());
        for (p, &x) in t.iter().enumerate() {
            let deg = &self.a.basis()[x].degree;
            let k = t[..p].iter().filter(|&&y| &self.a.basis()[y].degree == deg).count() % self.multiplicity;
            let mut h = Hull::new();
            h.insert(x, self.lam.letter(self.first[x] + k as u32));
            out.push(h);
        }
        out
    }

    fn push_element(&self, coeff: &NormalElement, v: &Element, out: &mut Hull) {
        for (k, c) in v.terms() {
            let entry = out.entry(k).or_default();
            entry.add_scaled(coeff, c);
            if entry.is_zero() {
                out.remove(&k);
            }
        }
    }

    /// [θ⊗X, ψ⊗Y] = θψ ⊗ [|X,Y|]; None when some pair lies outside the
    /// bilinear domain.
    fn bracket(&self, u: &Hull, v: &Hull) -> Option<Hull> {
        let mut out = Hull::new();
        for (&x, th) in u {
            for (&y, ps) in v {
                let (gx, gy) = (self.a.basis()[x].zf_grade, self.a.basis()[y].zf_grade);
                if !in_bilinear_domain(self.a.f(), gx, gy) {
                    return None;
                }
                if let Some(val) = self.a.bracket_basis(x, y) {
                    self.push_element(&self.lam.multiply(th, ps), val, &mut out);
                }
            }
        }
        Some(out)
    }

    /// {θ_1⊗Y_1, …} = θ_1⋯θ_F ⊗ {|Y_1, …|}.
    fn f_bracket(&self, us: &[Hull]) -> Hull {
        let mut out = Hull::new();
        let mut stack: Vec<(Vec<usize>, NormalElement)> = vec![(Vec::new(), self.lam.one())];
        for u in us {
            let mut next = Vec::new();
            for (args, coeff) in &stack {
                for (&x, th) in u {
                    let mut args = args.clone();
                    args.push(x);
                    next.push((args, self.lam.multiply(coeff, th)));
                }
            }
            stack = next;
        }
        for (args, coeff) in stack {
            if let Some(val) = self.a.f_bracket_basis(&args) {
                self.push_element(&coeff, val, &mut out);
            }
        }
        out
    }

    fn add(&self, acc: &mut Hull, x: &Hull) {
        for (k, c) in x {
            let entry = acc.entry(*k).or_default();
            entry.add_assign(c);
            if entry.is_zero() {
                acc.remove(k);
            }
        }
    }

    fn show(&self, x: &Hull) -> String {
        if x.is_empty() {
            return "0".into();
        }
        x.iter()
            .map(|(k, c)| format!("({})⊗{}", self.lam.show(c), self.a.label(*k)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    fn differ(&self, lhs: &Hull, rhs: &Hull) -> Option<Mismatch> {
        (lhs != rhs).then(|| Mismatch {
            lhs: self.show(lhs),
            rhs: self.show(rhs),
        })
    }
}

/// Verifies that the degree-zero part of Λ ⊗ g is an ordinary Lie algebra
/// (or Lie algebra of order F): plain antisymmetry, the cyclic Jacobi
/// identity, full symmetry of the F-ary bracket and the order-F Jacobi
/// identities, all with trivial commutation factor.
pub fn lambda_decoloration_check(a: &GradedAlgebra, multiplicity: usize) -> Result<VerificationReport, OscillatorError> {
    if multiplicity < 3 {
        return Err(OscillatorError::InvalidParameter(format!(
            "multiplicity must be at least 3, got {multiplicity}"
        )));
    }
    let g = a.group();
    let mut degrees: Vec<GroupElement> = a.basis().iter().map(|b| g.neg_unchecked(&b.degree)).collect();
    degrees.sort_by_key(|d| g.index_of(d));
    degrees.dedup();
    let lam = ExchangeAlgebra::lambda(a.factor(), &degrees, multiplicity, a.root_order())?;
    let a = &a.lifted(lam.root_order())?;
    let first = a
        .basis()
        .iter()
        .map(|b| {
            let pos = degrees.iter().position(|d| *d == g.neg_unchecked(&b.degree)).expect("degree listed");
            (pos * multiplicity) as u32
        })
        .collect();
    let h = LambdaHull {
        a,
        lam,
        first,
        multiplicity,
    };
    let label = |t: &[usize]| t.iter().map(|&k| a.label(k).to_string()).collect::<Vec<_>>();
    let mut report = VerificationReport::new("lambda decoloration");

    let pairs = bilinear_domain(a);
    report.record(sweep(
        "antisymmetry [u,v] = -[v,u]",
        &[pairs.len()],
        None,
        |t| {
            let (x, y) = pairs[t[0]];
            let u = h.lift(&[x, y]);
            let lhs = h.bracket(&u[0], &u[1]).unwrap_or_default();
            let mut rhs = Hull::new();
            if let Some(v) = h.bracket(&u[1], &u[0]) {
                for (k, c) in v {
                    rhs.insert(k, c.neg());
                }
            }
            h.differ(&lhs, &rhs)
        },
        |t| label(&[pairs[t[0]].0, pairs[t[0]].1]),
    ));

    let jacobi = |t: &[usize]| {
        let u = h.lift(t);
        let mut sum = Hull::new();
        for k in 0..3 {
            let (x, y, z) = (&u[k], &u[(k + 1) % 3], &u[(k + 2) % 3]);
            let inner = h.bracket(y, z).expect("inner bracket defined");
            h.add(&mut sum, &h.bracket(x, &inner).expect("outer bracket defined"));
        }
        h.differ(&sum, &Hull::new())
    };
    let radix = |s: &[&[usize]]| s.iter().map(|l| l.len()).collect::<Vec<_>>();
    let pick = |s: &[&[usize]], t: &[usize]| t.iter().zip(s).map(|(&i, l)| l[i]).collect::<Vec<_>>();
    let mut slotted = |name: &str, slots: &[&[usize]], check: &(dyn Fn(&[usize]) -> Option<Mismatch> + Sync)| {
        report.record(sweep(name, &radix(slots), None, |t| check(&pick(slots, t)), |t| label(&pick(slots, t))));
    };

    if a.f() == 1 {
        let all: Vec<usize> = (0..a.dim()).collect();
        slotted("jacobi u,v,w", &[&all, &all, &all], &jacobi);
        return Ok(report);
    }

    let f = a.f() as usize;
    let g0 = a.grade_indices(0);
    let nonzero: Vec<usize> = (0..a.dim()).filter(|&i| a.basis()[i].zf_grade != 0).collect();
    slotted("jacobi X,X,X", &[g0, g0, g0], &jacobi);
    slotted("jacobi X,X,Y", &[g0, g0, &nonzero], &jacobi);

    for grade in active_grades(a) {
        let list = a.grade_indices(grade);
        let suffix = grade_suffix(a, grade);

        let symmetric = |t: &[usize]| {
            let u = h.lift(t);
            let base = h.f_bracket(&u);
            (0..f - 1).find_map(|p| {
                let mut v = u.clone();
                v.swap(p, p + 1);
                h.differ(&base, &h.f_bracket(&v))
            })
        };
        slotted(&format!("symmetry {{u..u}}{suffix}"), &vec![list; f], &symmetric);

        // [u_0, {u_1..u_F}] = Σ_k {u_1..[u_0,u_k]..u_F}
        let derivation = |t: &[usize]| {
            let u = h.lift(t);
            let lhs = h.bracket(&u[0], &h.f_bracket(&u[1..])).expect("defined");
            let mut rhs = Hull::new();
            for k in 1..=f {
                let mut v = u[1..].to_vec();
                v[k - 1] = h.bracket(&u[0], &u[k]).expect("defined");
                h.add(&mut rhs, &h.f_bracket(&v));
            }
            h.differ(&lhs, &rhs)
        };
        let mut slots: Vec<&[usize]> = vec![g0];
        slots.extend(std::iter::repeat_n(list, f));
        slotted(&format!("derivation X,{{Y..Y}}{suffix}"), &slots, &derivation);

        // Σ_k [u_k, {u_k+1 .. u_k−1}] = 0
        let cyclic = |t: &[usize]| {
            let u = h.lift(t);
            let mut sum = Hull::new();
            for k in 0..=f {
                let rest: Vec<Hull> = (1..=f).map(|s| u[(k + s) % (f + 1)].clone()).collect();
                if let Some(v) = h.bracket(&u[k], &h.f_bracket(&rest)) {
                    h.add(&mut sum, &v);
                }
            }
            h.differ(&sum, &Hull::new())
        };
        slotted(&format!("cyclic Y,{{Y..Y}}{suffix}"), &vec![list; f + 1], &cyclic);
    }
    Ok(report)
}
