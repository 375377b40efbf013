//! Graded algebras stored as structure-constant tables.
//!
//! A [`GradedAlgebra`] carries a bilinear bracket and, for algebras of order
//! F ≥ 2, an F-ary bracket. Both are stored sparsely on basis indices for
//! every ordered argument tuple, so symmetry laws are checked rather than
//! assumed.

mod assoc;
mod checks;
mod element;
mod rep;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::factor::{parity_split, validate_factor, CommutationFactor, FactorError};
use crate::grading::{AbelianGroup, GradingError, GroupElement};
use crate::scalar::{lcm_all, CycloScalar};

pub use assoc::{from_associative, AssociativeAlgebra};
pub use checks::{check_homomorphism, check_jacobi, check_symmetries, extract_elementary};
pub use element::Element;
pub use rep::{adjoint_embedding, check_representation, Matrix, MatrixRep};
pub(crate) use checks::{active_grades, bilinear_domain, grade_suffix};
pub(crate) use rep::weighted_orderings;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("unknown basis element {0}")]
    UnknownBasisElement(String),
    #[error("duplicate basis label {0}")]
    DuplicateLabel(String),
    #[error("grade mismatch: {0}")]
    GradeMismatch(String),
    #[error("degree compatibility violated: {0}")]
    DegreeMismatch(String),
    #[error("kind mismatch: {0}")]
    KindMismatch(String),
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error(transparent)]
    Grading(#[from] GradingError),
    #[error("root order: {0}")]
    RootOrder(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("no basis elements of Z_F grade {0}")]
    EmptyComponent(u32),
    #[error("product is not associative on ({})", .0.join(", "))]
    NotAssociative(Vec<String>),
    #[error("product is not graded: {0}")]
    NotGraded(String),
    #[error("unsupported kind: {0}")]
    UnsupportedKind(String),
    #[error("multiplier mismatch: {0}")]
    MultiplierMismatch(String),
    #[error("unsupported representation: {0}")]
    UnsupportedRep(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    ColorLie,
    ColorLieSuper,
    LieOrderF,
    ColorOrder3,
}

impl Kind {
    /// ColorLie or ColorLieSuper, according to whether N(a,a) = −1 occurs.
    pub fn color_for(factor: &CommutationFactor) -> Result<Kind, FactorError> {
        Ok(if parity_split(factor)?.is_super() {
            Kind::ColorLieSuper
        } else {
            Kind::ColorLie
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::ColorLie => "ColorLie",
            Kind::ColorLieSuper => "ColorLieSuper",
            Kind::LieOrderF => "LieOrderF",
            Kind::ColorOrder3 => "ColorOrder3",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisElement {
    pub label: String,
    pub zf_grade: u32,
    pub degree: GroupElement,
}

/// Accumulates basis and constants, then validates everything in [`AlgebraBuilder::build`].
#[derive(Debug, Clone)]
pub struct AlgebraBuilder {
    kind: Kind,
    f: u32,
    group: AbelianGroup,
    factor: CommutationFactor,
    root_order: u32,
    basis: Vec<BasisElement>,
    bilinear: BTreeMap<(usize, usize), Element>,
    f_ary: BTreeMap<Vec<usize>, Element>,
}

/// Smallest root order able to hold ±1, every group character and N itself.
pub fn natural_root_order(group: &AbelianGroup, factor: &CommutationFactor) -> u32 {
    lcm_all(
        std::iter::once(2)
            .chain(group.orders().iter().copied())
            .chain(std::iter::once(factor.root_order())),
    )
}

impl AlgebraBuilder {
    /// `min_root_order` forces constants to live in a larger cyclotomic field
    /// (it is merged by lcm with the natural order).
    pub fn new(
        kind: Kind,
        f: u32,
        group: AbelianGroup,
        factor: CommutationFactor,
        min_root_order: u32,
    ) -> Result<Self, AlgebraError> {
        if factor.group() != &group {
            return Err(AlgebraError::KindMismatch(format!(
                "factor is defined on {} but the algebra is graded by {}",
                factor.group(),
                group
            )));
        }
        let root_order = lcm_all([natural_root_order(&group, &factor), min_root_order.max(1)]);
        Ok(AlgebraBuilder {
            kind,
            f,
            group,
            factor,
            root_order,
            basis: Vec::new(),
            bilinear: BTreeMap::new(),
            f_ary: BTreeMap::new(),
        })
    }

    pub fn root_order(&self) -> u32 {
        self.root_order
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn factor(&self) -> &CommutationFactor {
        &self.factor
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn set_kind(&mut self, kind: Kind) {
        self.kind = kind;
    }

    pub fn set_factor(&mut self, factor: CommutationFactor) {
        self.factor = factor;
    }

    pub fn add_basis(&mut self, label: impl Into<String>, zf_grade: u32, degree: GroupElement) -> usize {
        self.basis.push(BasisElement {
            label: label.into(),
            zf_grade,
            degree,
        });
        self.basis.len() - 1
    }

    /// Sets [|e_i, e_j|]; a zero value clears the entry.
    pub fn set_bracket(&mut self, i: usize, j: usize, value: Element) {
        if value.is_zero() {
            self.bilinear.remove(&(i, j));
        } else {
            self.bilinear.insert((i, j), value);
        }
    }

    pub fn set_f_bracket(&mut self, args: Vec<usize>, value: Element) {
        if value.is_zero() {
            self.f_ary.remove(&args);
        } else {
            self.f_ary.insert(args, value);
        }
    }

    pub fn bracket(&self, i: usize, j: usize) -> Option<&Element> {
        self.bilinear.get(&(i, j))
    }

    pub fn f_bracket(&self, args: &[usize]) -> Option<&Element> {
        self.f_ary.get(args)
    }

    pub fn bilinear_entries(&self) -> impl Iterator<Item = (&(usize, usize), &Element)> {
        self.bilinear.iter()
    }

    pub fn f_ary_entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Element)> {
        self.f_ary.iter()
    }

    pub fn build(self) -> Result<GradedAlgebra, AlgebraError> {
        let AlgebraBuilder {
            kind,
            f,
            group,
            factor,
            root_order,
            basis,
            bilinear,
            f_ary,
        } = self;
        validate_kind(kind, f, &factor)?;
        let mut index = HashMap::with_capacity(basis.len());
        for (i, b) in basis.iter().enumerate() {
            if b.label.is_empty() {
                return Err(AlgebraError::UnknownBasisElement("empty label".into()));
            }
            if index.insert(b.label.clone(), i).is_some() {
                return Err(AlgebraError::DuplicateLabel(b.label.clone()));
            }
            if b.zf_grade >= f {
                return Err(AlgebraError::GradeMismatch(format!(
                    "{} has Z_F grade {} but F = {f}",
                    b.label, b.zf_grade
                )));
            }
            group.check(&b.degree)?;
        }
        let dim = basis.len();
        let lift = |e: Element| -> Result<Element, AlgebraError> {
            e.lift(root_order)
                .map_err(|e| AlgebraError::RootOrder(format!("constant not expressible over root order {root_order}: {e}")))
        };
        let check_value = |value: &Element, zf: u32, degree: &GroupElement, what: &dyn Fn() -> String| {
            for (k, _) in value.terms() {
                let b = basis
                    .get(k)
                    .ok_or_else(|| AlgebraError::UnknownBasisElement(format!("index {k} in {}", what())))?;
                if b.zf_grade != zf || &b.degree != degree {
                    return Err(AlgebraError::DegreeMismatch(format!(
                        "{} has a component along {} (grade {}, degree {}) but must lie in grade {zf}, degree {degree}",
                        what(),
                        b.label,
                        b.zf_grade,
                        b.degree
                    )));
                }
            }
            Ok(())
        };

        let mut bil = BTreeMap::new();
        for ((i, j), value) in bilinear {
            let (bi, bj) = match (basis.get(i), basis.get(j)) {
                (Some(a), Some(b)) => (a, b),
                _ => return Err(AlgebraError::UnknownBasisElement(format!("bracket index ({i},{j})"))),
            };
            if !in_bilinear_domain(f, bi.zf_grade, bj.zf_grade) {
                return Err(AlgebraError::GradeMismatch(format!(
                    "[|{},{}|] pairs two elements of nonzero Z_F grade",
                    bi.label, bj.label
                )));
            }
            let value = lift(value)?;
            let what = || format!("[|{},{}|]", bi.label, bj.label);
            check_value(&value, (bi.zf_grade + bj.zf_grade) % f, &group.add_unchecked(&bi.degree, &bj.degree), &what)?;
            if !value.is_zero() {
                bil.insert((i, j), value);
            }
        }

        let mut fary = BTreeMap::new();
        if f < 2 && !f_ary.is_empty() {
            return Err(AlgebraError::GradeMismatch("F-ary constants require F >= 2".into()));
        }
        for (args, value) in f_ary {
            if args.len() != f as usize {
                return Err(AlgebraError::GradeMismatch(format!("F-ary bracket needs {f} arguments, got {}", args.len())));
            }
            let mut degree = group.zero();
            let mut grade = None;
            for &a in &args {
                let b = basis
                    .get(a)
                    .ok_or_else(|| AlgebraError::UnknownBasisElement(format!("F-ary index {a}")))?;
                if b.zf_grade == 0 || grade.is_some_and(|g| g != b.zf_grade) {
                    return Err(AlgebraError::GradeMismatch(format!(
                        "F-ary bracket arguments must share one nonzero Z_F grade ({})",
                        args.iter().map(|&k| basis[k].label.as_str()).collect::<Vec<_>>().join(",")
                    )));
                }
                grade = Some(b.zf_grade);
                degree = group.add_unchecked(&degree, &b.degree);
            }
            let value = lift(value)?;
            let what = || {
                format!(
                    "{{|{}|}}",
                    args.iter().map(|&k| basis[k].label.as_str()).collect::<Vec<_>>().join(",")
                )
            };
            check_value(&value, 0, &degree, &what)?;
            if !value.is_zero() {
                fary.insert(args, value);
            }
        }

        let lifted = factor.lifted(lcm_all([root_order, factor.root_order()]));
        debug_assert_eq!(lifted.root_order(), root_order);
        let mut nexp = vec![0u32; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                nexp[i * dim + j] = lifted.exponent(&basis[i].degree, &basis[j].degree);
            }
        }
        let zeta = (0..root_order as i64).map(|k| CycloScalar::root_of_unity(root_order, k)).collect();
        let mut by_grade = vec![Vec::new(); f as usize];
        for (i, b) in basis.iter().enumerate() {
            by_grade[b.zf_grade as usize].push(i);
        }
        Ok(GradedAlgebra {
            kind,
            f,
            group,
            factor,
            root_order,
            basis,
            index,
            bilinear: bil,
            f_ary: fary,
            nexp,
            zeta,
            by_grade,
        })
    }
}

fn validate_kind(kind: Kind, f: u32, factor: &CommutationFactor) -> Result<(), AlgebraError> {
    let report = validate_factor(factor);
    if !report.passed() {
        let c = &report.counterexamples[0];
        return Err(AlgebraError::Factor(FactorError::InvalidFactor(format!(
            "{} fails on ({})",
            c.identity,
            c.witness.join(", ")
        ))));
    }
    let is_super = parity_split(factor)?.is_super();
    match kind {
        Kind::ColorLie | Kind::ColorLieSuper if f != 1 => {
            Err(AlgebraError::KindMismatch(format!("{kind} requires F = 1, got {f}")))
        }
        Kind::ColorLie if is_super => Err(AlgebraError::KindMismatch(
            "factor has N(a,a) = -1 for some a; use ColorLieSuper".into(),
        )),
        Kind::ColorLieSuper if !is_super => Err(AlgebraError::KindMismatch(
            "factor has N(a,a) = 1 everywhere; use ColorLie".into(),
        )),
        Kind::LieOrderF if f == 0 => Err(AlgebraError::KindMismatch("F must be positive".into())),
        Kind::LieOrderF if !factor.is_trivial() => Err(AlgebraError::KindMismatch(
            "a Lie algebra of order F has a trivial commutation factor".into(),
        )),
        Kind::ColorOrder3 if f != 3 => Err(AlgebraError::KindMismatch(format!("ColorOrder3 requires F = 3, got {f}"))),
        _ => Ok(()),
    }
}

/// Pairs on which the bilinear bracket is defined: everything for F = 1,
/// otherwise pairs with at least one element of grade 0.
pub(crate) fn in_bilinear_domain(f: u32, gi: u32, gj: u32) -> bool {
    f == 1 || gi == 0 || gj == 0
}

/// An immutable, validated graded algebra.
#[derive(Debug, Clone)]
pub struct GradedAlgebra {
    kind: Kind,
    f: u32,
    group: AbelianGroup,
    factor: CommutationFactor,
    root_order: u32,
    basis: Vec<BasisElement>,
    index: HashMap<String, usize>,
    bilinear: BTreeMap<(usize, usize), Element>,
    f_ary: BTreeMap<Vec<usize>, Element>,
    /// exponent of N(deg i, deg j) over ζ_L, row-major
    nexp: Vec<u32>,
    zeta: Vec<CycloScalar>,
    by_grade: Vec<Vec<usize>>,
}

impl PartialEq for GradedAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.f == other.f
            && self.group == other.group
            && self.root_order == other.root_order
            && self.nexp == other.nexp
            && self.basis == other.basis
            && self.bilinear == other.bilinear
            && self.f_ary == other.f_ary
    }
}

impl Eq for GradedAlgebra {}

impl GradedAlgebra {
    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn factor(&self) -> &CommutationFactor {
        &self.factor
    }

    pub fn root_order(&self) -> u32 {
        self.root_order
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }

    /// Basis indices of Z_F grade `g`, in basis order.
    pub fn grade_indices(&self, g: u32) -> &[usize] {
        self.by_grade.get(g as usize).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn bilinear_entries(&self) -> impl Iterator<Item = (&(usize, usize), &Element)> {
        self.bilinear.iter()
    }

    pub fn f_ary_entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Element)> {
        self.f_ary.iter()
    }

    /// Copy of the algebra's data, ready for modification and re-validation.
    /// The same algebra with scalars re-expressed in Q(ζ_order).
    pub fn lifted(&self, order: u32) -> Result<GradedAlgebra, AlgebraError> {
        let l = crate::scalar::lcm_all([order, self.root_order]);
        if l != order {
            return Err(AlgebraError::RootOrder(format!("{order} is not a multiple of {}", self.root_order)));
        }
        let up = |v: &Element| v.clone().lift(l).map_err(|e| AlgebraError::RootOrder(e.to_string()));
        let mut b = self.to_builder();
        b.root_order = l;
        for (k, v) in &self.bilinear {
            b.bilinear.insert(*k, up(v)?);
        }
        for (k, v) in &self.f_ary {
            b.f_ary.insert(k.clone(), up(v)?);
        }
        b.build()
    }

    pub fn to_builder(&self) -> AlgebraBuilder {
        AlgebraBuilder {
            kind: self.kind,
            f: self.f,
            group: self.group.clone(),
            factor: self.factor.clone(),
            root_order: self.root_order,
            basis: self.basis.clone(),
            bilinear: self.bilinear.clone(),
            f_ary: self.f_ary.clone(),
        }
    }

    pub fn scalar(&self, n: i64) -> CycloScalar {
        CycloScalar::from_int(self.root_order, n)
    }

    /// Basis element by label as an algebra element.
    pub fn element(&self, label: &str) -> Result<Element, AlgebraError> {
        let i = self
            .index_of(label)
            .ok_or_else(|| AlgebraError::UnknownBasisElement(label.to_string()))?;
        Ok(Element::basis(i, self.root_order))
    }

    /// ζ_L^k.
    pub(crate) fn zeta(&self, k: u32) -> &CycloScalar {
        &self.zeta[(k % self.root_order) as usize]
    }

    /// Exponent of N(deg e_i, deg e_j) over ζ_L.
    pub(crate) fn nexp(&self, i: usize, j: usize) -> u32 {
        self.nexp[i * self.basis.len() + j]
    }

    /// N(deg e_i, deg e_j) as a scalar.
    pub fn n_value(&self, i: usize, j: usize) -> &CycloScalar {
        self.zeta(self.nexp(i, j))
    }

    pub(crate) fn bracket_basis(&self, i: usize, j: usize) -> Option<&Element> {
        self.bilinear.get(&(i, j))
    }

    pub(crate) fn f_bracket_basis(&self, args: &[usize]) -> Option<&Element> {
        self.f_ary.get(args)
    }

    /// [|e_i, v|] without domain checks.
    pub(crate) fn br_left(&self, i: usize, v: &Element) -> Element {
        let mut out = Element::zero();
        for (k, c) in v.terms() {
            if let Some(b) = self.bracket_basis(i, k) {
                out.add_scaled(b, c);
            }
        }
        out
    }

    /// [|v, e_j|] without domain checks.
    pub(crate) fn br_right(&self, v: &Element, j: usize) -> Element {
        let mut out = Element::zero();
        for (k, c) in v.terms() {
            if let Some(b) = self.bracket_basis(k, j) {
                out.add_scaled(b, c);
            }
        }
        out
    }

    /// {|…|} on basis indices with the argument in `slot` replaced by `v`.
    pub(crate) fn fb_slot(&self, args: &[usize], slot: usize, v: &Element) -> Element {
        let mut out = Element::zero();
        let mut t = args.to_vec();
        for (k, c) in v.terms() {
            t[slot] = k;
            if let Some(b) = self.f_bracket_basis(&t) {
                out.add_scaled(b, c);
            }
        }
        out
    }

    fn check_support(&self, x: &Element) -> Result<(), AlgebraError> {
        match x.terms().find(|(k, _)| *k >= self.dim()) {
            Some((k, _)) => Err(AlgebraError::UnknownBasisElement(format!("index {k}"))),
            None => Ok(()),
        }
    }

    /// Bilinear extension of the stored bracket.
    pub fn bracket(&self, x: &Element, y: &Element) -> Result<Element, AlgebraError> {
        self.check_support(x)?;
        self.check_support(y)?;
        let mut out = Element::zero();
        for (i, a) in x.terms() {
            for (j, b) in y.terms() {
                let (gi, gj) = (self.basis[i].zf_grade, self.basis[j].zf_grade);
                if !in_bilinear_domain(self.f, gi, gj) {
                    return Err(AlgebraError::GradeMismatch(format!(
                        "[|{},{}|] is not defined (both of nonzero Z_F grade)",
                        self.label(i),
                        self.label(j)
                    )));
                }
                if let Some(v) = self.bracket_basis(i, j) {
                    out.add_scaled(v, &(a * b));
                }
            }
        }
        Ok(out)
    }

    /// Multilinear extension of the stored F-ary bracket.
    pub fn f_bracket(&self, args: &[Element]) -> Result<Element, AlgebraError> {
        if self.f < 2 || args.len() != self.f as usize {
            return Err(AlgebraError::GradeMismatch(format!(
                "{} takes {} arguments in its F-ary bracket, got {}",
                self.kind,
                if self.f < 2 { 0 } else { self.f },
                args.len()
            )));
        }
        let mut grade = None;
        for x in args {
            self.check_support(x)?;
            for (k, _) in x.terms() {
                let g = self.basis[k].zf_grade;
                if g == 0 || grade.is_some_and(|h| h != g) {
                    return Err(AlgebraError::GradeMismatch(format!(
                        "{} is not in the common nonzero grade of the F-ary bracket",
                        self.label(k)
                    )));
                }
                grade = Some(g);
            }
        }
        let mut out = Element::zero();
        let mut t = vec![0usize; args.len()];
        let mut coeff = vec![CycloScalar::one(self.root_order)];
        self.expand(args, 0, &mut t, &mut coeff, &mut out);
        Ok(out)
    }

    fn expand(&self, args: &[Element], pos: usize, t: &mut [usize], coeff: &mut Vec<CycloScalar>, out: &mut Element) {
        if pos == args.len() {
            if let Some(v) = self.f_bracket_basis(t) {
                out.add_scaled(v, coeff.last().unwrap());
            }
            return;
        }
        for (k, c) in args[pos].terms() {
            t[pos] = k;
            let next = coeff.last().unwrap() * c;
            coeff.push(next);
            self.expand(args, pos + 1, t, coeff, out);
            coeff.pop();
        }
    }

    /// Human-readable form of an element using basis labels.
    pub fn show(&self, x: &Element) -> String {
        x.display_with(|k| self.basis.get(k).map(|b| b.label.clone()).unwrap_or_else(|| format!("#{k}")))
    }
}

#[cfg(test)]
mod tests;
