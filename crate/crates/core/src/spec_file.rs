//! Versioned JSON files for algebras, their representations and the
//! associative tables accepted by [`from_associative`](crate::algebra::from_associative).
//!
//! Scalars are lists of terms `{num, den, zeta_pow}` meaning
//! Σ (num/den)·ζ_L^zeta_pow; numerators and denominators that do not fit in
//! 64 bits are written as decimal strings. Bases are referenced by label.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{
    AlgebraBuilder, AlgebraError, AssociativeAlgebra, BasisElement, Element, GradedAlgebra, Kind, Matrix, MatrixRep,
};
use crate::factor::{Bicharacter, CommutationFactor, FactorError};
use crate::grading::{AbelianGroup, GradingError, GradingMap, GroupElement};
use crate::scalar::{CycloScalar, Rational};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format version {0} (expected {FORMAT_VERSION})")]
    Version(u32),
    #[error("unknown basis label {0}")]
    UnknownLabel(String),
    #[error("invalid scalar: {0}")]
    Scalar(String),
    #[error("invalid representation: {0}")]
    Representation(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error(transparent)]
    Grading(#[from] GradingError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Integer {
    Small(i64),
    Big(String),
}

impl Integer {
    fn from_big(n: &BigInt) -> Self {
        match n.to_i64() {
            Some(v) => Integer::Small(v),
            None => Integer::Big(n.to_string()),
        }
    }

    fn to_big(&self) -> Result<BigInt, SpecError> {
        match self {
            Integer::Small(v) => Ok(BigInt::from(*v)),
            Integer::Big(s) => s.parse().map_err(|_| SpecError::Scalar(format!("not an integer: {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub num: Integer,
    pub den: Integer,
    pub zeta_pow: u32,
}

pub type ScalarSpec = Vec<Term>;

pub fn scalar_to_spec(c: &CycloScalar) -> ScalarSpec {
    c.terms()
        .into_iter()
        .map(|(n, d, k)| Term {
            num: Integer::from_big(&n),
            den: Integer::from_big(&d),
            zeta_pow: k,
        })
        .collect()
}

pub fn scalar_from_spec(order: u32, terms: &[Term]) -> Result<CycloScalar, SpecError> {
    let mut parts = Vec::with_capacity(terms.len());
    for t in terms {
        let r = Rational::from_bigints(t.num.to_big()?, t.den.to_big()?)
            .ok_or_else(|| SpecError::Scalar("zero denominator".into()))?;
        parts.push((r, t.zeta_pow as i64));
    }
    Ok(CycloScalar::from_terms(order, parts))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub orders: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorSpec {
    pub root_order: u32,
    pub exponents: Vec<Vec<i64>>,
}

impl FactorSpec {
    pub fn from_bicharacter(b: &Bicharacter) -> Self {
        FactorSpec {
            root_order: b.root_order(),
            exponents: b.exponents().to_vec(),
        }
    }

    pub fn to_bicharacter(&self, group: &AbelianGroup) -> Result<Bicharacter, SpecError> {
        Ok(Bicharacter::new(group.clone(), self.root_order, self.exponents.clone())?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisSpec {
    pub label: String,
    pub zf_grade: u32,
    pub degree: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub basis: String,
    pub scalar: ScalarSpec,
}

pub type ElementSpec = Vec<ComponentSpec>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BilinearEntry {
    pub left: String,
    pub right: String,
    pub value: ElementSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FAryEntry {
    pub args: Vec<String>,
    pub value: ElementSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixEntry {
    pub row: usize,
    pub col: usize,
    pub scalar: ScalarSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixSpec {
    pub element: String,
    pub entries: Vec<MatrixEntry>,
}

/// Carrier-space gradings (0-based indices) and one sparse matrix per basis element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepSpec {
    pub dimension: usize,
    pub zf_grades: Vec<u32>,
    pub degrees: Vec<Vec<u32>>,
    pub matrices: Vec<MatrixSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpecFile {
    pub version: u32,
    pub kind: Kind,
    #[serde(rename = "F")]
    pub f: u32,
    pub root_order: u32,
    pub group: GroupSpec,
    pub factor: FactorSpec,
    pub basis: Vec<BasisSpec>,
    pub bilinear: Vec<BilinearEntry>,
    pub f_ary: Vec<FAryEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representation: Option<RepSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplier: Option<FactorSpec>,
}

fn basis_spec(b: &BasisElement) -> BasisSpec {
    BasisSpec {
        label: b.label.clone(),
        zf_grade: b.zf_grade,
        degree: b.degree.residues().to_vec(),
    }
}

fn element_spec(v: &Element, label: impl Fn(usize) -> String) -> ElementSpec {
    v.terms()
        .map(|(k, c)| ComponentSpec {
            basis: label(k),
            scalar: scalar_to_spec(c),
        })
        .collect()
}

struct Labels(HashMap<String, usize>);

impl Labels {
    fn new(basis: &[BasisSpec]) -> Self {
        Labels(basis.iter().enumerate().map(|(k, b)| (b.label.clone(), k)).collect())
    }

    fn get(&self, label: &str) -> Result<usize, SpecError> {
        self.0.get(label).copied().ok_or_else(|| SpecError::UnknownLabel(label.to_string()))
    }

    fn element(&self, order: u32, v: &[ComponentSpec]) -> Result<Element, SpecError> {
        let mut out = Element::zero();
        for c in v {
            out.add_term(self.get(&c.basis)?, &scalar_from_spec(order, &c.scalar)?);
        }
        Ok(out)
    }
}

fn group_element(group: &AbelianGroup, residues: &[u32]) -> Result<GroupElement, SpecError> {
    let r: Vec<i64> = residues.iter().map(|&x| x as i64).collect();
    let g = group.element(&r)?;
    if g.residues() != residues {
        return Err(SpecError::Grading(GradingError::ElementOutOfGroup {
            element: format!("{residues:?}"),
            group: group.to_string(),
        }));
    }
    Ok(g)
}

impl AlgebraSpecFile {
    pub fn from_algebra(a: &GradedAlgebra) -> Self {
        let label = |k: usize| a.label(k).to_string();
        AlgebraSpecFile {
            version: FORMAT_VERSION,
            kind: a.kind(),
            f: a.f(),
            root_order: a.root_order(),
            group: GroupSpec {
                orders: a.group().orders().to_vec(),
            },
            factor: FactorSpec::from_bicharacter(a.factor()),
            basis: a.basis().iter().map(basis_spec).collect(),
            bilinear: a
                .bilinear_entries()
                .map(|(&(i, j), v)| BilinearEntry {
                    left: label(i),
                    right: label(j),
                    value: element_spec(v, label),
                })
                .collect(),
            f_ary: a
                .f_ary_entries()
                .map(|(args, v)| FAryEntry {
                    args: args.iter().map(|&k| label(k)).collect(),
                    value: element_spec(v, label),
                })
                .collect(),
            representation: None,
            multiplier: None,
        }
    }

    /// Attaches `r`, writing its entries in the algebra's cyclotomic field.
    pub fn with_representation(mut self, a: &GradedAlgebra, r: &MatrixRep) -> Result<Self, SpecError> {
        let l = a.root_order();
        let mut matrices = Vec::with_capacity(r.matrices.len());
        for (k, m) in r.matrices.iter().enumerate() {
            let m = m.lift(l).map_err(|e| SpecError::Representation(e.to_string()))?;
            matrices.push(MatrixSpec {
                element: a.label(k).to_string(),
                entries: m
                    .entries()
                    .map(|(row, col, c)| MatrixEntry {
                        row,
                        col,
                        scalar: scalar_to_spec(c),
                    })
                    .collect(),
            });
        }
        self.representation = Some(RepSpec {
            dimension: r.dimension,
            zf_grades: r.zf_grades.clone(),
            degrees: r.degrees.degrees().iter().map(|d| d.residues().to_vec()).collect(),
            matrices,
        });
        Ok(self)
    }

    pub fn with_multiplier(mut self, sigma: &Bicharacter) -> Self {
        self.multiplier = Some(FactorSpec::from_bicharacter(sigma));
        self
    }

    pub fn group(&self) -> Result<AbelianGroup, SpecError> {
        Ok(AbelianGroup::new(self.group.orders.clone())?)
    }

    pub fn factor(&self) -> Result<CommutationFactor, SpecError> {
        self.factor.to_bicharacter(&self.group()?)
    }

    pub fn to_algebra(&self) -> Result<GradedAlgebra, SpecError> {
        let group = self.group()?;
        let factor = self.factor()?;
        let mut b = AlgebraBuilder::new(self.kind, self.f, group.clone(), factor, self.root_order)?;
        if b.root_order() != self.root_order {
            return Err(SpecError::Algebra(AlgebraError::RootOrder(format!(
                "root order {} cannot hold the factor and group characters (needs a multiple of {})",
                self.root_order,
                b.root_order()
            ))));
        }
        let l = self.root_order;
        for e in &self.basis {
            b.add_basis(e.label.clone(), e.zf_grade, group_element(&group, &e.degree)?);
        }
        let labels = Labels::new(&self.basis);
        for e in &self.bilinear {
            b.set_bracket(labels.get(&e.left)?, labels.get(&e.right)?, labels.element(l, &e.value)?);
        }
        for e in &self.f_ary {
            let args = e.args.iter().map(|s| labels.get(s)).collect::<Result<Vec<_>, _>>()?;
            b.set_f_bracket(args, labels.element(l, &e.value)?);
        }
        Ok(b.build()?)
    }

    /// The stored representation, checked for shape against `a`.
    pub fn representation(&self, a: &GradedAlgebra) -> Result<Option<MatrixRep>, SpecError> {
        let Some(r) = &self.representation else {
            return Ok(None);
        };
        let group = a.group();
        let degrees = r
            .degrees
            .iter()
            .map(|d| group_element(group, d))
            .collect::<Result<Vec<_>, _>>()?;
        let mut matrices = vec![Matrix::zeros(r.dimension); a.dim()];
        let mut seen = vec![false; a.dim()];
        for m in &r.matrices {
            let k = a
                .index_of(&m.element)
                .ok_or_else(|| SpecError::UnknownLabel(m.element.clone()))?;
            if std::mem::replace(&mut seen[k], true) {
                return Err(SpecError::Representation(format!("two matrices for {}", m.element)));
            }
            for e in &m.entries {
                if e.row >= r.dimension || e.col >= r.dimension {
                    return Err(SpecError::Representation(format!(
                        "entry ({}, {}) of {} outside dimension {}",
                        e.row, e.col, m.element, r.dimension
                    )));
                }
                matrices[k].set(e.row, e.col, scalar_from_spec(a.root_order(), &e.scalar)?);
            }
        }
        let rep = MatrixRep {
            dimension: r.dimension,
            zf_grades: r.zf_grades.clone(),
            degrees: GradingMap::new(group, degrees)?,
            matrices,
        };
        rep.validate_shape(a)?;
        Ok(Some(rep))
    }

    pub fn multiplier(&self) -> Result<Option<Bicharacter>, SpecError> {
        self.multiplier.as_ref().map(|m| m.to_bicharacter(&self.group()?)).transpose()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("spec files serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, SpecError> {
        let version: Versioned = serde_json::from_str(text)?;
        if version.version != FORMAT_VERSION {
            return Err(SpecError::Version(version.version));
        }
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Deserialize)]
struct Versioned {
    version: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductEntry {
    pub left: String,
    pub right: String,
    pub value: ElementSpec,
}

/// An associative Z_F × Γ graded product table, plus the kind and factor of
/// the bracket algebra to derive from it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssociativeSpecFile {
    pub version: u32,
    pub kind: Kind,
    #[serde(rename = "F")]
    pub f: u32,
    pub root_order: u32,
    pub group: GroupSpec,
    pub factor: FactorSpec,
    pub basis: Vec<BasisSpec>,
    pub product: Vec<ProductEntry>,
}

impl AssociativeSpecFile {
    pub fn from_associative(kind: Kind, factor: &CommutationFactor, a: &AssociativeAlgebra) -> Self {
        let label = |k: usize| a.basis()[k].label.clone();
        AssociativeSpecFile {
            version: FORMAT_VERSION,
            kind,
            f: a.f(),
            root_order: a.root_order(),
            group: GroupSpec {
                orders: a.group().orders().to_vec(),
            },
            factor: FactorSpec::from_bicharacter(factor),
            basis: a.basis().iter().map(basis_spec).collect(),
            product: a
                .product_entries()
                .map(|(&(i, j), v)| ProductEntry {
                    left: label(i),
                    right: label(j),
                    value: element_spec(v, label),
                })
                .collect(),
        }
    }

    pub fn to_associative(&self) -> Result<(Kind, CommutationFactor, AssociativeAlgebra), SpecError> {
        let group = AbelianGroup::new(self.group.orders.clone())?;
        let factor = self.factor.to_bicharacter(&group)?;
        let basis = self
            .basis
            .iter()
            .map(|b| {
                Ok(BasisElement {
                    label: b.label.clone(),
                    zf_grade: b.zf_grade,
                    degree: group_element(&group, &b.degree)?,
                })
            })
            .collect::<Result<Vec<_>, SpecError>>()?;
        let labels = Labels::new(&self.basis);
        if labels.0.len() != self.basis.len() {
            return Err(SpecError::Algebra(AlgebraError::DuplicateLabel("in associative basis".into())));
        }
        let mut product = BTreeMap::new();
        for e in &self.product {
            let key = (labels.get(&e.left)?, labels.get(&e.right)?);
            if product.insert(key, labels.element(self.root_order, &e.value)?).is_some() {
                return Err(SpecError::Algebra(AlgebraError::DuplicateLabel(format!(
                    "product {}*{} given twice",
                    e.left, e.right
                ))));
            }
        }
        let a = AssociativeAlgebra::new(group, self.f, self.root_order, basis, product)?;
        Ok((self.kind, factor, a))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("spec files serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, SpecError> {
        let version: Versioned = serde_json::from_str(text)?;
        if version.version != FORMAT_VERSION {
            return Err(SpecError::Version(version.version));
        }
        Ok(serde_json::from_str(text)?)
    }
}
