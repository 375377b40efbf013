//! Sparse exact matrices, matrix representations and their verification.

use std::collections::BTreeMap;
use std::fmt;

use super::checks::{active_grades, bilinear_domain};
use super::{AlgebraError, Element, GradedAlgebra, Kind};
use crate::grading::GradingMap;
use crate::report::{sweep, Mismatch, VerificationReport};
use crate::scalar::CycloScalar;

/// Square matrix over Q(ζ_L) stored row by row, zero entries omitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    rows: Vec<BTreeMap<usize, CycloScalar>>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            rows: vec![BTreeMap::new(); n],
        }
    }

    pub fn identity(n: usize, root_order: u32) -> Self {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            m.set(i, i, CycloScalar::one(root_order));
        }
        m
    }

    /// Matrix unit with a one at (row, col).
    pub fn unit(n: usize, row: usize, col: usize, root_order: u32) -> Self {
        let mut m = Matrix::zeros(n);
        m.set(row, col, CycloScalar::one(root_order));
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&CycloScalar> {
        self.rows[r].get(&c)
    }

    pub fn set(&mut self, r: usize, c: usize, v: CycloScalar) {
        assert!(r < self.n && c < self.n, "matrix index out of range");
        if v.is_zero() {
            self.rows[r].remove(&c);
        } else {
            self.rows[r].insert(c, v);
        }
    }

    fn add_at(&mut self, r: usize, c: usize, v: &CycloScalar) {
        if v.is_zero() {
            return;
        }
        let row = &mut self.rows[r];
        match row.get_mut(&c) {
            Some(slot) => {
                *slot += v;
                if slot.is_zero() {
                    row.remove(&c);
                }
            }
            None => {
                row.insert(c, v.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BTreeMap::is_empty)
    }

    /// Nonzero entries as (row, col, value) in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &CycloScalar)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(&c, v)| (r, c, v)))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n, "matrix dimensions differ");
        let mut out = Matrix::zeros(self.n);
        for (r, row) in self.rows.iter().enumerate() {
            for (&k, a) in row {
                for (&c, b) in &other.rows[k] {
                    out.add_at(r, c, &(a * b));
                }
            }
        }
        out
    }

    /// self += c · other
    pub fn add_scaled(&mut self, other: &Matrix, c: &CycloScalar) {
        assert_eq!(self.n, other.n, "matrix dimensions differ");
        for (r, col, v) in other.entries() {
            self.add_at(r, col, &(v * c));
        }
    }

    pub fn scaled(&self, c: &CycloScalar) -> Matrix {
        let mut out = Matrix::zeros(self.n);
        out.add_scaled(self, c);
        out
    }

    /// Kronecker product self ⊗ other.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let m = other.n;
        let mut out = Matrix::zeros(self.n * m);
        for (r, c, a) in self.entries() {
            for (r2, c2, b) in other.entries() {
                out.set(r * m + r2, c * m + c2, a * b);
            }
        }
        out
    }

    pub fn pow(&self, e: u32, root_order: u32) -> Matrix {
        let mut out = Matrix::identity(self.n, root_order);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn lift(&self, order: u32) -> Result<Matrix, crate::scalar::ScalarError> {
        let mut out = Matrix::zeros(self.n);
        for (r, c, v) in self.entries() {
            out.set(r, c, v.lift(order)?);
        }
        Ok(out)
    }

    /// Simultaneous row/column permutation: new index `perm[i]` for old index i.
    pub fn permuted(&self, perm: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.n);
        for (r, c, v) in self.entries() {
            out.set(perm[r], perm[c], v.clone());
        }
        out
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.entries().map(|(r, c, v)| format!("({r},{c}): {v}")).collect();
        write!(f, "{{{}}}", parts.join("; "))
    }
}

/// Matrices ρ(e_k) for every basis element, with Z_F and Γ gradings of the
/// carrier space.
///
/// Entry (r, c) of ρ(e_k) may be nonzero only when deg(c) − deg(r) = deg(e_k)
/// and zf(c) − zf(r) ≡ zf(e_k) mod F, i.e. E^r_c carries degree
/// gr(c) − gr(r) as in the color general linear algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixRep {
    pub dimension: usize,
    pub zf_grades: Vec<u32>,
    pub degrees: GradingMap,
    pub matrices: Vec<Matrix>,
}

impl MatrixRep {
    pub fn image(&self, x: &Element) -> Matrix {
        let mut out = Matrix::zeros(self.dimension);
        for (k, c) in x.terms() {
            out.add_scaled(&self.matrices[k], c);
        }
        out
    }

    pub fn validate_shape(&self, a: &GradedAlgebra) -> Result<(), AlgebraError> {
        if self.matrices.len() != a.dim() {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{} matrices for a {}-dimensional algebra",
                self.matrices.len(),
                a.dim()
            )));
        }
        if self.zf_grades.len() != self.dimension || self.degrees.len() != self.dimension {
            return Err(AlgebraError::DimensionMismatch(format!(
                "grading maps have lengths {} and {} but the representation has dimension {}",
                self.zf_grades.len(),
                self.degrees.len(),
                self.dimension
            )));
        }
        if let Some(m) = self.matrices.iter().find(|m| m.dim() != self.dimension) {
            return Err(AlgebraError::DimensionMismatch(format!(
                "matrix of size {} in a representation of dimension {}",
                m.dim(),
                self.dimension
            )));
        }
        if let Some(&g) = self.zf_grades.iter().find(|&&g| g >= a.f()) {
            return Err(AlgebraError::GradeMismatch(format!("vector Z_F grade {g} >= F = {}", a.f())));
        }
        for d in self.degrees.degrees() {
            a.group().check(d)?;
        }
        Ok(())
    }
}

/// N-weighted sum over all orderings π of ρ(y_π1)⋯ρ(y_πF); the weight of
/// π is the product of N(a_i, a_j) over pairs i < j that π reverses.
pub(crate) fn weighted_orderings<T, M, Z>(
    a: &GradedAlgebra,
    args: &[usize],
    one: T,
    mul: M,
    zero: T,
    mut add_scaled: Z,
    value: impl Fn(usize) -> T,
) -> T
where
    T: Clone,
    M: Fn(&T, &T) -> T,
    Z: FnMut(&mut T, &T, &CycloScalar),
{
    let mut sum = zero;
    for perm in permutations(args.len()) {
        let mut w = 0u32;
        for p in 0..perm.len() {
            for q in p + 1..perm.len() {
                if perm[p] > perm[q] {
                    w += a.nexp(args[perm[q]], args[perm[p]]);
                }
            }
        }
        let mut prod = one.clone();
        for &k in &perm {
            prod = mul(&prod, &value(args[k]));
        }
        add_scaled(&mut sum, &prod, a.zeta(w));
    }
    sum
}

/// All permutations of 0..n in lexicographic order.
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
}

/// Checks the grading pattern of every matrix and the representation axioms
/// for every stored bracket.
pub fn check_representation(
    a: &GradedAlgebra,
    r: &MatrixRep,
    budget: Option<u64>,
) -> Result<VerificationReport, AlgebraError> {
    r.validate_shape(a)?;
    let l = a.root_order();
    let mats: Vec<Matrix> = r
        .matrices
        .iter()
        .map(|m| m.lift(l))
        .collect::<Result<_, _>>()
        .map_err(|e| AlgebraError::RootOrder(e.to_string()))?;
    let g = a.group();
    let f = a.f();
    let image = |x: &Element| {
        let mut out = Matrix::zeros(r.dimension);
        for (k, c) in x.terms() {
            out.add_scaled(&mats[k], c);
        }
        out
    };
    let label = |k: usize| a.label(k).to_string();
    let mut report = VerificationReport::new("representation");

    report.record(sweep(
        "matrix grading",
        &[a.dim()],
        budget,
        |t| {
            let k = t[0];
            let b = &a.basis()[k];
            let bad: Vec<String> = mats[k]
                .entries()
                .filter(|&(row, col, _)| {
                    g.sub_unchecked(r.degrees.degree(col), r.degrees.degree(row)) != b.degree
                        || (r.zf_grades[col] + f - r.zf_grades[row]) % f != b.zf_grade
                })
                .map(|(row, col, v)| format!("({row},{col}): {v}"))
                .collect();
            (!bad.is_empty()).then(|| Mismatch {
                lhs: bad.join("; "),
                rhs: format!("entries of degree {} and Z_F grade {}", b.degree, b.zf_grade),
            })
        },
        |t| vec![label(t[0])],
    ));

    let pairs = bilinear_domain(a);
    report.record(sweep(
        "rho([|x,y|]) = rho(x)rho(y) - N(a,b)rho(y)rho(x)",
        &[pairs.len()],
        budget,
        |t| {
            let (i, j) = pairs[t[0]];
            let lhs = image(&a.bracket_basis(i, j).cloned().unwrap_or_default());
            let mut rhs = mats[i].mul(&mats[j]);
            rhs.add_scaled(&mats[j].mul(&mats[i]), &-a.n_value(i, j));
            (lhs != rhs).then(|| Mismatch {
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            })
        },
        |t| vec![label(pairs[t[0]].0), label(pairs[t[0]].1)],
    ));

    if f >= 2 {
        let identity = Matrix::identity(r.dimension, l);
        for grade in active_grades(a) {
            let list = a.grade_indices(grade);
            let name = if matches!(a.kind(), Kind::LieOrderF) && a.factor().is_trivial() {
                "rho({y..}) = sum over orderings of products"
            } else {
                "rho({|y..|}) = N-weighted sum over orderings"
            };
            let name = if active_grades(a).len() > 1 || grade != 1 {
                format!("{name} (grade {grade})")
            } else {
                name.to_string()
            };
            report.record(sweep(
                &name,
                &vec![list.len(); f as usize],
                budget,
                |t| {
                    let args: Vec<usize> = t.iter().map(|&k| list[k]).collect();
                    let lhs = image(&a.f_bracket_basis(&args).cloned().unwrap_or_default());
                    let rhs = weighted_orderings(
                        a,
                        &args,
                        identity.clone(),
                        |x, y| x.mul(y),
                        Matrix::zeros(r.dimension),
                        |s, p, c| s.add_scaled(p, c),
                        |k| mats[k].clone(),
                    );
                    (lhs != rhs).then(|| Mismatch {
                        lhs: lhs.to_string(),
                        rhs: rhs.to_string(),
                    })
                },
                |t| t.iter().map(|&k| label(list[k])).collect(),
            ));
        }
    }
    Ok(report)
}

/// Adjoint matrices (ad e_α)_{γβ} = C_{αβ}^γ of a color Lie (super)algebra.
///
/// With the (col − row) degree convention the carrier space is graded by the
/// negated basis degrees.
pub fn adjoint_embedding(a: &GradedAlgebra) -> Result<MatrixRep, AlgebraError> {
    if !matches!(a.kind(), Kind::ColorLie | Kind::ColorLieSuper) {
        return Err(AlgebraError::UnsupportedKind(format!(
            "adjoint embedding needs a color Lie (super)algebra, got {}",
            a.kind()
        )));
    }
    let n = a.dim();
    let mut matrices = vec![Matrix::zeros(n); n];
    for (&(alpha, beta), v) in a.bilinear_entries() {
        for (gamma, c) in v.terms() {
            matrices[alpha].set(gamma, beta, c.clone());
        }
    }
    let degrees = a.basis().iter().map(|b| a.group().neg_unchecked(&b.degree)).collect();
    Ok(MatrixRep {
        dimension: n,
        zf_grades: vec![0; n],
        degrees: GradingMap::new(a.group(), degrees)?,
        matrices,
    })
}
