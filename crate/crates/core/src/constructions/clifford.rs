use std::collections::BTreeMap;

use crate::algebra::{AlgebraBuilder, AlgebraError, AssociativeAlgebra, BasisElement, Element, GradedAlgebra, Kind, Matrix, MatrixRep};
use crate::factor::{Bicharacter, CommutationFactor};
use crate::grading::{AbelianGroup, GradingMap, GroupElement};
use crate::scalar::CycloScalar;

/// Generalized Clifford algebra C_n^p: e_i^n = 1, e_i e_j = q e_j e_i for
/// i < j, q = ζ_n, with monomial basis e_1^{a_1}⋯e_p^{a_p} indexed by Z_n^p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordAlgebra {
    pub n: u32,
    pub p: usize,
    pub algebra: AssociativeAlgebra,
}

impl CliffordAlgebra {
    pub fn group(&self) -> &AbelianGroup {
        self.algebra.group()
    }

    /// Basis position of the monomial with exponents `a`.
    pub fn index_of(&self, a: &[u32]) -> usize {
        a.iter().fold(0usize, |acc, &x| acc * self.n as usize + (x % self.n) as usize)
    }

    /// Basis position of the generator e_i (0-based).
    pub fn generator(&self, i: usize) -> usize {
        let mut a = vec![0; self.p];
        a[i] = 1;
        self.index_of(&a)
    }
}

/// Exponent k of q^k = q^{−Σ_{i>j} a_i c_j}, the phase in e_a e_c = q^k e_{a+c}.
pub fn clifford_phase(n: u32, a: &[u32], c: &[u32]) -> u32 {
    let n = n as i64;
    let mut k = 0i64;
    for i in 0..a.len() {
        for j in 0..i {
            k -= a[i] as i64 * c[j] as i64;
        }
    }
    k.rem_euclid(n) as u32
}

/// N(a,b) = q^{Σ_{i<j}(a_i b_j − a_j b_i)} on Z_n^p.
pub fn clifford_factor(n: u32, p: usize) -> Result<CommutationFactor, AlgebraError> {
    let group = AbelianGroup::new(vec![n; p])?;
    let exps = (0..p)
        .map(|i| (0..p).map(|j| (j as i64 - i as i64).signum()).collect())
        .collect();
    Ok(Bicharacter::new(group, n, exps)?)
}

fn monomial_label(a: &[u32]) -> String {
    let parts: Vec<String> = a.iter().map(|x| x.to_string()).collect();
    format!("e_{}", parts.join("_"))
}

fn exponent_vectors(group: &AbelianGroup) -> Vec<Vec<u32>> {
    group.enumerate().into_iter().map(|g| g.residues().to_vec()).collect()
}

/// The algebra C_n^p together with the matrix representation for p ≤ 2:
/// ρ(e) = σ_1 for p = 1, and ρ_1 = σ_1 ⊗ 1, ρ_2 = σ_2 ⊗ σ_1 for p = 2, where
/// σ_1 is the cyclic shift and σ_2 = diag(1, q, …, q^{n−1}).
///
/// The representation is graded so that it is also a representation of the
/// color Lie algebra obtained from C_n^p with [`clifford_factor`].
pub fn build_generalized_clifford(
    n: u32,
    p: usize,
) -> Result<(CliffordAlgebra, Result<MatrixRep, AlgebraError>), AlgebraError> {
    if n == 0 || p == 0 {
        return Err(AlgebraError::DimensionMismatch("C_n^p needs n >= 1 and p >= 1".into()));
    }
    let group = AbelianGroup::new(vec![n; p])?;
    let l = n;
    let exps = exponent_vectors(&group);
    let basis = exps
        .iter()
        .map(|a| BasisElement {
            label: monomial_label(a),
            zf_grade: 0,
            degree: GroupElement::from_residues(a.clone()),
        })
        .collect();
    let mut product = BTreeMap::new();
    let index = |a: &[u32]| a.iter().fold(0usize, |acc, &x| acc * n as usize + (x % n) as usize);
    for a in &exps {
        for c in &exps {
            let sum: Vec<u32> = a.iter().zip(c).map(|(x, y)| (x + y) % n).collect();
            let coeff = CycloScalar::root_of_unity(l, clifford_phase(n, a, c) as i64);
            product.insert((index(a), index(c)), Element::from_terms([(index(&sum), coeff)]));
        }
    }
    let algebra = AssociativeAlgebra::new(group.clone(), 1, l, basis, product)?;
    let cl = CliffordAlgebra { n, p, algebra };
    let rep = clifford_rep(&cl);
    Ok((cl, rep))
}

fn shift(n: usize, l: u32) -> Matrix {
    let mut m = Matrix::zeros(n);
    for i in 0..n {
        m.set(i, (i + 1) % n, CycloScalar::one(l));
    }
    m
}

fn clock(n: usize, l: u32) -> Matrix {
    let mut m = Matrix::zeros(n);
    for i in 0..n {
        m.set(i, i, CycloScalar::root_of_unity(l, i as i64));
    }
    m
}

fn clifford_rep(cl: &CliffordAlgebra) -> Result<MatrixRep, AlgebraError> {
    let n = cl.n as usize;
    let l = cl.n;
    let group = cl.group().clone();
    let (gens, degrees): (Vec<Matrix>, Vec<GroupElement>) = match cl.p {
        1 => (vec![shift(n, l)], (0..n as u32).map(|i| GroupElement::from_residues(vec![i])).collect()),
        2 => {
            let s1 = shift(n, l);
            let rho1 = s1.kron(&Matrix::identity(n, l));
            let rho2 = clock(n, l).kron(&s1);
            let degrees = (0..n as u32)
                .flat_map(|i| (0..n as u32).map(move |j| GroupElement::from_residues(vec![i, j])))
                .collect();
            (vec![rho1, rho2], degrees)
        }
        p => {
            return Err(AlgebraError::UnsupportedRep(format!(
                "matrix representation is provided for p <= 2, not p = {p}"
            )))
        }
    };
    let dim = gens[0].dim();
    let matrices = exponent_vectors(&group)
        .iter()
        .map(|a| {
            a.iter()
                .zip(&gens)
                .fold(Matrix::identity(dim, l), |acc, (&k, g)| acc.mul(&g.pow(k, l)))
        })
        .collect();
    Ok(MatrixRep {
        dimension: dim,
        zf_grades: vec![0; dim],
        degrees: GradingMap::new(&group, degrees)?,
        matrices,
    })
}

/// C_n^p ⊗ g for a Lie algebra or a Lie algebra of order 3 with trivial factor.
///
/// Basis T^{(a)} = e_a ⊗ T; constants become
/// [|T^{(a)}, T'^{(c)}|] = φ(a,c)[T,T']^{(a+c)} and
/// {|T^{(a)}, T'^{(b)}, T''^{(c)}|} = φ(a,b)φ(a+b,c){T,T',T''}^{(a+b+c)}
/// with e_a e_c = φ(a,c) e_{a+c}. The grading group is Γ_g × Z_n^p.
pub fn tensor_clifford(base: &GradedAlgebra, n: u32, p: usize) -> Result<GradedAlgebra, AlgebraError> {
    let kind = match (base.kind(), base.f()) {
        (Kind::ColorLie, 1) => Kind::ColorLie,
        (Kind::LieOrderF, 3) => Kind::ColorOrder3,
        (k, f) => {
            return Err(AlgebraError::UnsupportedKind(format!(
                "tensor_clifford needs a Lie algebra or a Lie algebra of order 3, got {k} with F = {f}"
            )))
        }
    };
    if !base.factor().is_trivial() {
        return Err(AlgebraError::UnsupportedKind("tensor_clifford needs a trivial commutation factor".into()));
    }
    let cf = clifford_factor(n, p)?;
    let cgroup = cf.group().clone();
    let group = base.group().product(&cgroup);
    let r = base.group().rank();
    let exps = (0..r + p)
        .map(|i| {
            (0..r + p)
                .map(|j| if i >= r && j >= r { cf.exponents()[i - r][j - r] } else { 0 })
                .collect()
        })
        .collect();
    let factor = Bicharacter::new(group.clone(), n, exps)?;
    let mut b = AlgebraBuilder::new(kind, base.f(), group.clone(), factor, base.root_order())?;
    let l = b.root_order();
    let monos = exponent_vectors(&cgroup);
    let d = base.dim();
    let pos = |a: &[u32], k: usize| {
        let m = a.iter().fold(0usize, |acc, &x| acc * n as usize + (x % n) as usize);
        m * d + k
    };
    for a in &monos {
        let suffix: Vec<String> = a.iter().map(|x| x.to_string()).collect();
        for e in base.basis() {
            let mut res = e.degree.residues().to_vec();
            res.extend_from_slice(a);
            b.add_basis(
                format!("{}^({})", e.label, suffix.join(",")),
                e.zf_grade,
                GroupElement::from_residues(res),
            );
        }
    }
    let add = |a: &[u32], c: &[u32]| -> Vec<u32> { a.iter().zip(c).map(|(x, y)| (x + y) % n).collect() };
    let phase = |k: u32| CycloScalar::root_of_unity(l, (k * (l / n)) as i64);
    let lift = |v: &Element| v.clone().lift(l).expect("base root order divides the tensor's");
    for (&(i, j), v) in base.bilinear_entries() {
        let v = lift(v);
        for a in &monos {
            for c in &monos {
                let s = add(a, c);
                let val = v.reindex(|k| pos(&s, k)).scaled(&phase(clifford_phase(n, a, c)));
                b.set_bracket(pos(a, i), pos(c, j), val);
            }
        }
    }
    for (args, v) in base.f_ary_entries() {
        let v = lift(v);
        for a in &monos {
            for c in &monos {
                let ac = add(a, c);
                let k1 = clifford_phase(n, a, c);
                for e in &monos {
                    let s = add(&ac, e);
                    let k = (k1 + clifford_phase(n, &ac, e)) % n;
                    let val = v.reindex(|t| pos(&s, t)).scaled(&phase(k));
                    b.set_f_bracket(vec![pos(a, args[0]), pos(c, args[1]), pos(e, args[2])], val);
                }
            }
        }
    }
    b.build()
}
