use std::collections::BTreeMap;

use super::gl::{matrix_unit_algebra, n_scalar, ColorGlSpec};
use crate::algebra::{
    extract_elementary, from_associative, natural_root_order, AlgebraBuilder, AlgebraError, AssociativeAlgebra,
    BasisElement, Element, GradedAlgebra, Kind, Matrix, MatrixRep,
};
use crate::factor::{Bicharacter, CommutationFactor};
use crate::grading::{AbelianGroup, GradingMap, GroupElement};
use crate::scalar::{lcm_all, CycloScalar};

const LETTERS: [&str; 3] = ["X", "Y", "Z"];

fn unit_label(i: usize, j: usize, g: u32) -> String {
    format!("{}{}_{}", LETTERS[g as usize], i + 1, j + 1)
}

fn block_of(sizes: &[usize]) -> Vec<u32> {
    sizes
        .iter()
        .enumerate()
        .flat_map(|(k, &m)| std::iter::repeat_n(k as u32, m))
        .collect()
}

/// The full block matrix algebra behind mat(m_1,m_2,m_3), graded by
/// block(J) − block(I) mod 3, with the basis of [`build_mat_order3`].
pub fn mat_associative(m1: usize, m2: usize, m3: usize) -> Result<AssociativeAlgebra, AlgebraError> {
    let zf = block_of(&[m1, m2, m3]);
    let g = AbelianGroup::trivial();
    let deg = vec![g.zero(); zf.len()];
    matrix_unit_algebra(&g, 3, 2, &zf, &deg, unit_label)
}

/// mat(m_1,m_2,m_3) (or its elementary part) as a Lie algebra of order 3:
/// [X_I^J, W_K^L] = δ^J_K W_I^L − δ^L_I W_K^J and the six-term trilinear
/// brackets of Y's and of Z's, with the defining representation.
pub fn build_mat_order3(
    m1: usize,
    m2: usize,
    m3: usize,
    elementary: bool,
) -> Result<(GradedAlgebra, MatrixRep), AlgebraError> {
    let zf = block_of(&[m1, m2, m3]);
    let m = zf.len();
    let g = AbelianGroup::trivial();
    let mut b = AlgebraBuilder::new(Kind::LieOrderF, 3, g.clone(), Bicharacter::trivial(g.clone()), 1)?;
    let l = b.root_order();
    let grade = |i: usize, j: usize| (zf[j] + 3 - zf[i]) % 3;
    let mut units: Vec<(u32, usize, usize)> = (0..m)
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .map(|(i, j)| (grade(i, j), i, j))
        .filter(|&(gr, _, _)| !(elementary && gr == 2))
        .collect();
    units.sort();
    let mut pos = vec![vec![usize::MAX; m]; m];
    for &(gr, i, j) in &units {
        pos[i][j] = b.add_basis(unit_label(i, j, gr), gr, g.zero());
    }
    let one = CycloScalar::one(l);
    let unit = |i: usize, j: usize| Element::basis(pos[i][j], l);

    for &(gx, i, j) in units.iter().filter(|u| u.0 == 0) {
        for &(_, k, q) in &units {
            let mut v = Element::zero();
            if j == k {
                v.add_term(pos[i][q], &one);
            }
            if q == i {
                v.add_term(pos[k][j], &-&one);
            }
            debug_assert_eq!(gx, 0);
            if !v.is_zero() {
                b.set_bracket(pos[k][q], pos[i][j], v.neg());
                b.set_bracket(pos[i][j], pos[k][q], v);
            }
        }
    }

    for gr in [1u32, 2] {
        let list: Vec<(usize, usize)> = units.iter().filter(|u| u.0 == gr).map(|u| (u.1, u.2)).collect();
        for &(i, j) in &list {
            for &(k, q) in &list {
                for &(r, n) in &list {
                    // {Y_I^J, Y_K^L, Y_M^N} with (K,L) = (k,q), (M,N) = (r,n)
                    let mut v = Element::zero();
                    let terms = [
                        (j == k && q == r, (i, n)),
                        (n == i && j == k, (r, q)),
                        (q == r && n == i, (k, j)),
                        (j == r && n == k, (i, q)),
                        (n == k && q == i, (r, j)),
                        (q == i && j == r, (k, n)),
                    ];
                    for (hit, (s, t)) in terms {
                        if hit {
                            v.add_assign(&unit(s, t));
                        }
                    }
                    if !v.is_zero() {
                        b.set_f_bracket(vec![pos[i][j], pos[k][q], pos[r][n]], v);
                    }
                }
            }
        }
    }
    let a = b.build()?;
    let matrices = units.iter().map(|&(_, i, j)| Matrix::unit(m, i, j, l)).collect();
    let rep = MatrixRep {
        dimension: m,
        zf_grades: zf,
        degrees: GradingMap::constant(&g, m),
        matrices,
    };
    Ok((a, rep))
}

fn eta(mu: usize, nu: usize) -> i64 {
    match (mu, nu) {
        _ if mu != nu => 0,
        (0, 0) => 1,
        _ => -1,
    }
}

/// The elementary Lie algebra of order 3 Iso_3(1, D−1): Poincaré algebra
/// L_{μν} (μ < ν), P_μ plus a vector module V_μ with
/// {V_μ, V_ν, V_ρ} = η_{μν}P_ρ + η_{μρ}P_ν + η_{ρν}P_μ, η = diag(1,−1,…,−1).
pub fn build_iso3_poincare(d: usize) -> Result<GradedAlgebra, AlgebraError> {
    if d < 2 {
        return Err(AlgebraError::DimensionMismatch("the Poincare algebra needs D >= 2".into()));
    }
    let g = AbelianGroup::trivial();
    let mut b = AlgebraBuilder::new(Kind::LieOrderF, 3, g.clone(), Bicharacter::trivial(g.clone()), 1)?;
    let l = b.root_order();
    let mut lpos = vec![vec![usize::MAX; d]; d];
    for mu in 0..d {
        for nu in mu + 1..d {
            lpos[mu][nu] = b.add_basis(format!("L{mu}_{nu}"), 0, g.zero());
        }
    }
    let p: Vec<usize> = (0..d).map(|mu| b.add_basis(format!("P{mu}"), 0, g.zero())).collect();
    let v: Vec<usize> = (0..d).map(|mu| b.add_basis(format!("V{mu}"), 1, g.zero())).collect();
    let c = |n: i64| CycloScalar::from_int(l, n);
    // L_{μν} with L_{νμ} = −L_{μν}
    let lterm = |out: &mut Element, mu: usize, nu: usize, k: i64| {
        if k == 0 || mu == nu {
            return;
        }
        if mu < nu {
            out.add_term(lpos[mu][nu], &c(k));
        } else {
            out.add_term(lpos[nu][mu], &c(-k));
        }
    };
    let set = |b: &mut AlgebraBuilder, x: usize, y: usize, val: Element| {
        if !val.is_zero() {
            b.set_bracket(y, x, val.neg());
            b.set_bracket(x, y, val);
        }
    };
    for mu in 0..d {
        for nu in mu + 1..d {
            let x = lpos[mu][nu];
            for rho in 0..d {
                for sigma in rho + 1..d {
                    let mut val = Element::zero();
                    lterm(&mut val, rho, mu, eta(nu, sigma));
                    lterm(&mut val, rho, nu, -eta(mu, sigma));
                    lterm(&mut val, mu, sigma, eta(nu, rho));
                    lterm(&mut val, nu, sigma, -eta(mu, rho));
                    set(&mut b, x, lpos[rho][sigma], val);
                }
                for target in [&p, &v] {
                    let mut val = Element::zero();
                    val.add_term(target[mu], &c(eta(nu, rho)));
                    val.add_term(target[nu], &c(-eta(mu, rho)));
                    set(&mut b, x, target[rho], val);
                }
            }
        }
    }
    for mu in 0..d {
        for nu in 0..d {
            for rho in 0..d {
                let mut val = Element::zero();
                val.add_term(p[rho], &c(eta(mu, nu)));
                val.add_term(p[nu], &c(eta(mu, rho)));
                val.add_term(p[mu], &c(eta(rho, nu)));
                if !val.is_zero() {
                    b.set_f_bracket(vec![v[mu], v[nu], v[rho]], val);
                }
            }
        }
    }
    b.build()
}

/// g_0 ⊕ ad(g_0) as a Lie algebra of order 3: [J_a, J_b] = f_ab^c J_c,
/// [J_a, A_b] = f_ab^c A_c and {A_a, A_b, A_c} = g_ab J_c + g_ac J_b + g_bc J_a
/// with g_ab = Tr(ad J_a ad J_b).
pub fn build_adjoint_order3(g0: &GradedAlgebra) -> Result<GradedAlgebra, AlgebraError> {
    if g0.kind() != Kind::ColorLie || g0.f() != 1 || !g0.factor().is_trivial() {
        return Err(AlgebraError::UnsupportedKind(format!(
            "adjoint3 needs an ordinary Lie algebra, got {} with F = {}",
            g0.kind(),
            g0.f()
        )));
    }
    let n = g0.dim();
    let mut b = AlgebraBuilder::new(Kind::LieOrderF, 3, g0.group().clone(), g0.factor().clone(), g0.root_order())?;
    let l = b.root_order();
    let j: Vec<usize> = g0.basis().iter().map(|e| b.add_basis(format!("J{}", e.label), 0, e.degree.clone())).collect();
    let a: Vec<usize> = g0.basis().iter().map(|e| b.add_basis(format!("A{}", e.label), 1, e.degree.clone())).collect();
    let lift = |v: &Element| v.clone().lift(l).expect("root order divides");
    for (&(x, y), v) in g0.bilinear_entries() {
        let v = lift(v);
        b.set_bracket(j[x], j[y], v.reindex(|k| j[k]));
        b.set_bracket(j[x], a[y], v.reindex(|k| a[k]));
        b.set_bracket(a[y], j[x], v.reindex(|k| a[k]).neg());
    }
    // C[x][y] = [e_x, e_y]
    let mut c: Vec<Vec<Element>> = vec![vec![Element::zero(); n]; n];
    for (&(x, y), v) in g0.bilinear_entries() {
        c[x][y] = lift(v);
    }
    let zero = CycloScalar::zero(l);
    let mut killing = vec![vec![zero.clone(); n]; n];
    for x in 0..n {
        for y in 0..n {
            let mut t = zero.clone();
            for beta in 0..n {
                for (gamma, cx) in c[x][beta].terms() {
                    if let Some(cy) = c[y][gamma].coeff(beta) {
                        t += &(cx * cy);
                    }
                }
            }
            killing[x][y] = t;
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let mut v = Element::zero();
                v.add_term(j[z], &killing[x][y]);
                v.add_term(j[y], &killing[x][z]);
                v.add_term(j[x], &killing[y][z]);
                if !v.is_zero() {
                    b.set_f_bracket(vec![a[x], a[y], a[z]], v);
                }
            }
        }
    }
    b.build()
}

/// ⟨1, e⟩ ⊗ gl({m}_{Γ,N}) as an elementary color Lie algebra of order 3,
/// with X^p_q = 1 ⊗ E^p_q, Y^p_q = e ⊗ E^p_q and the N-weighted six-term
/// trilinear bracket of the Y's.
pub fn clifford_tensor_gl(spec: &ColorGlSpec) -> Result<GradedAlgebra, AlgebraError> {
    let group = spec.group().clone();
    let nf = &spec.factor;
    let mut b = AlgebraBuilder::new(Kind::ColorOrder3, 3, group.clone(), nf.clone(), 1)?;
    let l = b.root_order();
    let gr = spec.index_degrees();
    let m = gr.len();
    let deg = |p: usize, q: usize| group.sub_unchecked(&gr[q], &gr[p]);
    for (letter, zf) in [("X", 0), ("Y", 1)] {
        for p in 0..m {
            for q in 0..m {
                b.add_basis(format!("{letter}{}_{}", p + 1, q + 1), zf, deg(p, q));
            }
        }
    }
    let x = |p: usize, q: usize| p * m + q;
    let y = |p: usize, q: usize| m * m + p * m + q;
    let nn = |a: &GroupElement, c: &GroupElement| n_scalar(nf, a, c, l);
    let one = CycloScalar::one(l);
    for p in 0..m {
        for q in 0..m {
            for r in 0..m {
                for s in 0..m {
                    // δ^r_q E^p_s − N(..) δ^p_s E^r_q, placed in X or Y
                    let value = |to: &dyn Fn(usize, usize) -> usize| {
                        let mut v = Element::zero();
                        if r == q {
                            v.add_term(to(p, s), &one);
                        }
                        if p == s {
                            v.add_term(to(r, q), &-nn(&deg(p, q), &deg(r, s)));
                        }
                        v
                    };
                    let vx = value(&x);
                    let vy = value(&y);
                    if !vx.is_zero() {
                        b.set_bracket(x(p, q), x(r, s), vx);
                        b.set_bracket(x(p, q), y(r, s), vy.clone());
                        b.set_bracket(y(p, q), x(r, s), vy);
                    }
                }
            }
        }
    }
    for p in 0..m {
        for q in 0..m {
            let a = deg(p, q);
            for r in 0..m {
                for s in 0..m {
                    let bb = deg(r, s);
                    let nab = nn(&a, &bb);
                    for t in 0..m {
                        for u in 0..m {
                            let c = deg(t, u);
                            let (nac, nbc) = (nn(&a, &c), nn(&bb, &c));
                            let mut v = Element::zero();
                            if q == r && s == t {
                                v.add_term(x(p, u), &one);
                            }
                            if s == t && u == p {
                                v.add_term(x(r, q), &(&nab * &nac));
                            }
                            if u == p && q == r {
                                v.add_term(x(t, s), &(&nac * &nbc));
                            }
                            if q == t && u == r {
                                v.add_term(x(p, s), &nbc);
                            }
                            if s == p && q == t {
                                v.add_term(x(r, u), &nab);
                            }
                            if u == r && s == p {
                                v.add_term(x(t, q), &(&(&nab * &nac) * &nbc));
                            }
                            if !v.is_zero() {
                                b.set_f_bracket(vec![y(p, q), y(r, s), y(t, u)], v);
                            }
                        }
                    }
                }
            }
        }
    }
    b.build()
}

/// C_3^1 ⊗ M_m with the Γ-grading of gl({m}_{Γ,N}): basis X = 1 ⊗ E,
/// Y = e ⊗ E, Z = e² ⊗ E of Z_3 grades 0, 1, 2.
pub fn clifford3_tensor_associative(spec: &ColorGlSpec) -> Result<AssociativeAlgebra, AlgebraError> {
    let group = spec.group().clone();
    let l = natural_root_order(&group, &spec.factor);
    let gr = spec.index_degrees();
    let m = gr.len();
    let idx = |i: usize, p: usize, q: usize| i * m * m + p * m + q;
    let mut basis = Vec::with_capacity(3 * m * m);
    for (i, letter) in LETTERS.iter().enumerate() {
        for p in 0..m {
            for q in 0..m {
                basis.push(BasisElement {
                    label: format!("{letter}{}_{}", p + 1, q + 1),
                    zf_grade: i as u32,
                    degree: group.sub_unchecked(&gr[q], &gr[p]),
                });
            }
        }
    }
    let mut product = BTreeMap::new();
    for i in 0..3 {
        for j in 0..3 {
            for p in 0..m {
                for q in 0..m {
                    for s in 0..m {
                        product.insert((idx(i, p, q), idx(j, q, s)), Element::basis(idx((i + j) % 3, p, s), l));
                    }
                }
            }
        }
    }
    AssociativeAlgebra::new(group, 3, l, basis, product)
}

/// The elementary block algebra built from three color general linear
/// algebras over Γ_1 × Γ_2 × Γ_3 with N = N_1 N_2 N_3: diagonal blocks
/// X, off-diagonal blocks (1,2), (2,3), (3,1) as Y.
pub fn triple_gl(specs: &[ColorGlSpec; 3]) -> Result<GradedAlgebra, AlgebraError> {
    let group = specs[0].group().product(specs[1].group()).product(specs[2].group());
    let l = lcm_all(specs.iter().map(|s| s.factor.root_order()));
    let ranks: Vec<usize> = specs.iter().map(|s| s.group().rank()).collect();
    let total: usize = ranks.iter().sum();
    let mut exps = vec![vec![0i64; total]; total];
    let mut off = 0;
    for s in specs {
        let f = s.factor.lifted(l);
        for (i, row) in f.exponents().iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                exps[off + i][off + j] = e;
            }
        }
        off += s.group().rank();
    }
    let factor: CommutationFactor = Bicharacter::new(group.clone(), l, exps)?;
    let mut zf = Vec::new();
    let mut deg = Vec::new();
    let mut off = 0;
    for (k, s) in specs.iter().enumerate() {
        for d in s.index_degrees() {
            let mut res = vec![0u32; total];
            res[off..off + d.residues().len()].copy_from_slice(d.residues());
            zf.push(k as u32);
            deg.push(GroupElement::from_residues(res));
        }
        off += ranks[k];
    }
    let lnat = natural_root_order(&group, &factor);
    let assoc = matrix_unit_algebra(&group, 3, lnat, &zf, &deg, unit_label)?;
    let full = from_associative(Kind::ColorOrder3, factor, &assoc)?;
    extract_elementary(&full, 1)
}
