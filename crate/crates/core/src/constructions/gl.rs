use std::collections::BTreeMap;

use crate::algebra::{AlgebraBuilder, AlgebraError, AssociativeAlgebra, BasisElement, Element, GradedAlgebra, Kind, Matrix, MatrixRep};
use crate::factor::CommutationFactor;
use crate::grading::{AbelianGroup, GradingMap, GroupElement};
use crate::scalar::CycloScalar;

/// Block sizes m_1..m_n with one group degree per block, and a factor N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorGlSpec {
    pub sizes: Vec<usize>,
    pub degrees: Vec<GroupElement>,
    pub factor: CommutationFactor,
}

impl ColorGlSpec {
    pub fn new(sizes: Vec<usize>, degrees: Vec<GroupElement>, factor: CommutationFactor) -> Result<Self, AlgebraError> {
        if sizes.len() != degrees.len() {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{} block sizes but {} block degrees",
                sizes.len(),
                degrees.len()
            )));
        }
        for d in &degrees {
            factor.group().check(d)?;
        }
        Ok(ColorGlSpec { sizes, degrees, factor })
    }

    /// Blocks take the group elements in enumeration order, as many as there are sizes.
    pub fn enumerated(sizes: Vec<usize>, factor: CommutationFactor) -> Result<Self, AlgebraError> {
        let all = factor.group().enumerate();
        if sizes.len() > all.len() {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{} blocks but the group has only {} elements",
                sizes.len(),
                all.len()
            )));
        }
        let degrees = all.into_iter().take(sizes.len()).collect();
        ColorGlSpec::new(sizes, degrees, factor)
    }

    pub fn group(&self) -> &AbelianGroup {
        self.factor.group()
    }

    pub fn dim(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// gr(i) for every vector index.
    pub fn index_degrees(&self) -> Vec<GroupElement> {
        self.sizes
            .iter()
            .zip(&self.degrees)
            .flat_map(|(&m, d)| std::iter::repeat_n(d.clone(), m))
            .collect()
    }
}

pub(crate) fn n_scalar(factor: &CommutationFactor, a: &GroupElement, b: &GroupElement, l: u32) -> CycloScalar {
    CycloScalar::root_of_unity(l, factor.exponent_in(a, b, l) as i64)
}

/// Color general linear algebra on E^p_q with deg E^p_q = gr(q) − gr(p) and
/// [|E^p_q, E^r_s|] = δ^r_q E^p_s − N(gr(q)−gr(p), gr(s)−gr(r)) δ^p_s E^r_q,
/// together with its defining representation.
pub fn build_color_gl(spec: &ColorGlSpec) -> Result<(GradedAlgebra, MatrixRep), AlgebraError> {
    let group = spec.group().clone();
    let kind = Kind::color_for(&spec.factor)?;
    let mut b = AlgebraBuilder::new(kind, 1, group.clone(), spec.factor.clone(), 1)?;
    let l = b.root_order();
    let gr = spec.index_degrees();
    let m = gr.len();
    let deg = |p: usize, q: usize| group.sub_unchecked(&gr[q], &gr[p]);
    for p in 0..m {
        for q in 0..m {
            b.add_basis(format!("E{}_{}", p + 1, q + 1), 0, deg(p, q));
        }
    }
    let one = CycloScalar::one(l);
    for p in 0..m {
        for q in 0..m {
            for r in 0..m {
                for s in 0..m {
                    let mut v = Element::zero();
                    if r == q {
                        v.add_term(p * m + s, &one);
                    }
                    if p == s {
                        v.add_term(r * m + q, &-n_scalar(&spec.factor, &deg(p, q), &deg(r, s), l));
                    }
                    if !v.is_zero() {
                        b.set_bracket(p * m + q, r * m + s, v);
                    }
                }
            }
        }
    }
    let a = b.build()?;
    let matrices = (0..m * m).map(|k| Matrix::unit(m, k / m, k % m, l)).collect();
    let rep = MatrixRep {
        dimension: m,
        zf_grades: vec![0; m],
        degrees: GradingMap::new(&group, gr)?,
        matrices,
    };
    Ok((a, rep))
}

/// Matrix units e_I^J over indices carrying a Z_F grade and a group degree;
/// e_I^J has grade zf(J) − zf(I) and degree deg(J) − deg(I). Basis order is
/// by grade, then row-major.
pub(crate) fn matrix_unit_algebra(
    group: &AbelianGroup,
    f: u32,
    root_order: u32,
    zf: &[u32],
    deg: &[GroupElement],
    label: impl Fn(usize, usize, u32) -> String,
) -> Result<AssociativeAlgebra, AlgebraError> {
    let m = zf.len();
    let grade = |i: usize, j: usize| (zf[j] + f - zf[i] % f) % f;
    let mut units: Vec<(u32, usize, usize)> = (0..m)
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .map(|(i, j)| (grade(i, j), i, j))
        .collect();
    units.sort();
    let mut position = vec![vec![0; m]; m];
    let mut basis = Vec::with_capacity(units.len());
    for (k, &(g, i, j)) in units.iter().enumerate() {
        position[i][j] = k;
        basis.push(BasisElement {
            label: label(i, j, g),
            zf_grade: g,
            degree: group.sub_unchecked(&deg[j], &deg[i]),
        });
    }
    let mut product = BTreeMap::new();
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                product.insert((position[i][j], position[j][k]), Element::basis(position[i][k], root_order));
            }
        }
    }
    AssociativeAlgebra::new(group.clone(), f, root_order, basis, product)
}

/// The matrix algebra behind [`build_color_gl`], with the same basis.
pub fn color_gl_associative(spec: &ColorGlSpec) -> Result<AssociativeAlgebra, AlgebraError> {
    let gr = spec.index_degrees();
    let l = crate::algebra::natural_root_order(spec.group(), &spec.factor);
    matrix_unit_algebra(spec.group(), 1, l, &vec![0; gr.len()], &gr, |p, q, _| format!("E{}_{}", p + 1, q + 1))
}
