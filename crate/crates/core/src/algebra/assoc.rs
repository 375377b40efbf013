//! Associative graded algebras and the brackets they induce.

use std::collections::BTreeMap;

use super::checks::active_grades;
use super::rep::weighted_orderings;
use super::{in_bilinear_domain, AlgebraBuilder, AlgebraError, BasisElement, Element, GradedAlgebra, Kind};
use crate::factor::CommutationFactor;
use crate::grading::AbelianGroup;
use crate::report::{sweep, Mismatch};

/// A Z_F × Γ graded associative algebra given by its product table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociativeAlgebra {
    group: AbelianGroup,
    f: u32,
    root_order: u32,
    basis: Vec<BasisElement>,
    product: BTreeMap<(usize, usize), Element>,
}

impl AssociativeAlgebra {
    /// Validates gradedness and associativity of the table.
    pub fn new(
        group: AbelianGroup,
        f: u32,
        root_order: u32,
        basis: Vec<BasisElement>,
        product: BTreeMap<(usize, usize), Element>,
    ) -> Result<Self, AlgebraError> {
        if f == 0 {
            return Err(AlgebraError::GradeMismatch("F must be positive".into()));
        }
        for b in &basis {
            group.check(&b.degree)?;
            if b.zf_grade >= f {
                return Err(AlgebraError::GradeMismatch(format!("{} has grade {} >= F", b.label, b.zf_grade)));
            }
        }
        let n = basis.len();
        let mut table = BTreeMap::new();
        for ((i, j), v) in product {
            if i >= n || j >= n {
                return Err(AlgebraError::UnknownBasisElement(format!("product index ({i},{j})")));
            }
            let v = v.lift(root_order).map_err(|e| AlgebraError::RootOrder(e.to_string()))?;
            let zf = (basis[i].zf_grade + basis[j].zf_grade) % f;
            let deg = group.add_unchecked(&basis[i].degree, &basis[j].degree);
            for (k, _) in v.terms() {
                let b = basis
                    .get(k)
                    .ok_or_else(|| AlgebraError::UnknownBasisElement(format!("index {k} in a product")))?;
                if b.zf_grade != zf || b.degree != deg {
                    return Err(AlgebraError::NotGraded(format!(
                        "{}*{} has a component along {}",
                        basis[i].label, basis[j].label, b.label
                    )));
                }
            }
            if !v.is_zero() {
                table.insert((i, j), v);
            }
        }
        let alg = AssociativeAlgebra {
            group,
            f,
            root_order,
            basis,
            product: table,
        };
        let out = sweep(
            "associativity",
            &[n, n, n],
            None,
            |t| {
                let (x, y, z) = (t[0], t[1], t[2]);
                let lhs = alg.mul_vb(&alg.mul_bb(x, y), z);
                let rhs = alg.mul_bv(x, &alg.mul_bb(y, z));
                (lhs != rhs).then(|| Mismatch {
                    lhs: String::new(),
                    rhs: String::new(),
                })
            },
            |t| t.iter().map(|&k| alg.basis[k].label.clone()).collect(),
        );
        if let Some(c) = out.counterexample {
            return Err(AlgebraError::NotAssociative(c.witness));
        }
        Ok(alg)
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn root_order(&self) -> u32 {
        self.root_order
    }

    pub fn product_entries(&self) -> impl Iterator<Item = (&(usize, usize), &Element)> {
        self.product.iter()
    }

    fn mul_bb(&self, i: usize, j: usize) -> Element {
        self.product.get(&(i, j)).cloned().unwrap_or_default()
    }

    fn mul_vb(&self, v: &Element, j: usize) -> Element {
        let mut out = Element::zero();
        for (k, c) in v.terms() {
            if let Some(p) = self.product.get(&(k, j)) {
                out.add_scaled(p, c);
            }
        }
        out
    }

    fn mul_bv(&self, i: usize, v: &Element) -> Element {
        let mut out = Element::zero();
        for (k, c) in v.terms() {
            if let Some(p) = self.product.get(&(i, k)) {
                out.add_scaled(p, c);
            }
        }
        out
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        let mut out = Element::zero();
        for (j, c) in y.terms() {
            out.add_scaled(&self.mul_vb(x, j), c);
        }
        out
    }
}

/// Brackets induced by an associative product:
/// [|x,y|] = xy − N(a,b)yx, and for F ≥ 2 the F-ary bracket
/// Σ_π w(π) y_π1⋯y_πF over all orderings, weighted by N over reversed pairs
/// (the plain symmetrized product when N is trivial).
pub fn from_associative(
    kind: Kind,
    factor: CommutationFactor,
    assoc: &AssociativeAlgebra,
) -> Result<GradedAlgebra, AlgebraError> {
    let f = assoc.f;
    let mut b = AlgebraBuilder::new(kind, f, assoc.group.clone(), factor, assoc.root_order)?;
    for e in &assoc.basis {
        b.add_basis(e.label.clone(), e.zf_grade, e.degree.clone());
    }
    // a scratch algebra with no constants supplies N and ζ tables
    let shell = b.clone().build()?;
    let l = shell.root_order();
    let lift = |v: Element| v.lift(l).expect("root order divides the algebra's");
    let n = assoc.basis.len();
    for i in 0..n {
        for j in 0..n {
            if !in_bilinear_domain(f, assoc.basis[i].zf_grade, assoc.basis[j].zf_grade) {
                continue;
            }
            let mut v = lift(assoc.mul_bb(i, j));
            v.add_scaled(&lift(assoc.mul_bb(j, i)), &-shell.n_value(i, j));
            b.set_bracket(i, j, v);
        }
    }
    if f >= 2 {
        for g in active_grades(&shell) {
            let list = shell.grade_indices(g).to_vec();
            let mut t = vec![0usize; f as usize];
            loop {
                let args: Vec<usize> = t.iter().map(|&k| list[k]).collect();
                // products are built left to right; `None` stands for the unit
                let value = weighted_orderings(
                    &shell,
                    &args,
                    None::<Element>,
                    |x, y| match (x, y) {
                        (None, y) => y.clone(),
                        (Some(x), Some(y)) => Some(assoc.mul(x, y)),
                        (x, None) => x.clone(),
                    },
                    Some(Element::zero()),
                    |s, p, c| {
                        if let (Some(s), Some(p)) = (s.as_mut(), p.as_ref()) {
                            s.add_scaled(p, c);
                        }
                    },
                    |k| Some(Element::basis(k, assoc.root_order)),
                )
                .unwrap_or_default();
                b.set_f_bracket(args, lift(value));
                // next tuple
                let mut pos = t.len();
                loop {
                    if pos == 0 {
                        break;
                    }
                    pos -= 1;
                    t[pos] += 1;
                    if t[pos] < list.len() {
                        break;
                    }
                    t[pos] = 0;
                }
                if t.iter().all(|&k| k == 0) {
                    break;
                }
            }
        }
    }
    b.build()
}
