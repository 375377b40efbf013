use crate::algebra::{AlgebraBuilder, AlgebraError, Element, GradedAlgebra, Kind};
use crate::factor::{
    bicharacter_multiplier, n_plus, parity_split, sign_factor, validate_multiplier, Bicharacter, CommutationFactor,
    Multiplier,
};
use crate::grading::GroupElement;
use crate::scalar::{lcm_all, CycloScalar};

/// The triangular bicharacter multiplier of N₊.
pub fn default_multiplier(n: &CommutationFactor) -> Result<Multiplier, AlgebraError> {
    Ok(bicharacter_multiplier(&n_plus(n)?)?)
}

/// Rescales every constant: bilinear by σ(−a,−b), F-ary by
/// Π_k σ(−(a_1+⋯+a_k), −a_{k+1}); with `inverse` the reciprocals are used.
fn rescale(
    a: &GradedAlgebra,
    sigma: &Multiplier,
    inverse: bool,
    kind: Kind,
    factor: CommutationFactor,
) -> Result<GradedAlgebra, AlgebraError> {
    if sigma.group() != a.group() {
        return Err(AlgebraError::MultiplierMismatch(format!(
            "multiplier is defined on {} but the algebra is graded by {}",
            sigma.group(),
            a.group()
        )));
    }
    let l = lcm_all([a.root_order(), sigma.root_order(), factor.root_order()]);
    let g = a.group();
    let mut b = AlgebraBuilder::new(kind, a.f(), g.clone(), factor, l)?;
    let l = b.root_order();
    for e in a.basis() {
        b.add_basis(e.label.clone(), e.zf_grade, e.degree.clone());
    }
    let s = |x: &GroupElement, y: &GroupElement| -> i64 {
        let k = sigma.exponent_in(&g.neg_unchecked(x), &g.neg_unchecked(y), l) as i64;
        if inverse {
            -k
        } else {
            k
        }
    };
    let deg = |i: usize| &a.basis()[i].degree;
    let scale = |v: &Element, k: i64| -> Element {
        v.clone()
            .lift(l)
            .expect("root order divides")
            .scaled(&CycloScalar::root_of_unity(l, k))
    };
    for (&(i, j), v) in a.bilinear_entries() {
        b.set_bracket(i, j, scale(v, s(deg(i), deg(j))));
    }
    for (args, v) in a.f_ary_entries() {
        let mut k = 0i64;
        let mut acc = deg(args[0]).clone();
        for &x in &args[1..] {
            k += s(&acc, deg(x));
            acc = g.add_unchecked(&acc, deg(x));
        }
        b.set_f_bracket(args.clone(), scale(v, k));
    }
    b.build()
}

/// Replaces the commutation factor by its pure sign part (−1)^{|a||b|}.
///
/// Output kinds: ColorLie → ColorLie with trivial factor, ColorLieSuper →
/// ColorLieSuper with the sign factor, ColorOrder3 → LieOrderF when no odd
/// degrees exist and ColorOrder3 with the sign factor otherwise.
pub fn decolor(a: &GradedAlgebra, sigma: &Multiplier) -> Result<GradedAlgebra, AlgebraError> {
    let np = n_plus(a.factor())?;
    let check = validate_multiplier(sigma, Some(&np));
    if let Some(c) = check.counterexamples.first() {
        return Err(AlgebraError::MultiplierMismatch(format!(
            "{} fails at ({}): {} vs {}",
            c.identity,
            c.witness.join(", "),
            c.lhs,
            c.rhs
        )));
    }
    let is_super = parity_split(a.factor())?.is_super();
    let factor = if is_super {
        sign_factor(a.factor())?
    } else {
        Bicharacter::trivial(a.group().clone())
    };
    let kind = match a.kind() {
        Kind::ColorLie | Kind::ColorLieSuper => a.kind(),
        Kind::ColorOrder3 if is_super => Kind::ColorOrder3,
        Kind::ColorOrder3 | Kind::LieOrderF => Kind::LieOrderF,
    };
    rescale(a, sigma, false, kind, factor)
}

/// Inverse of [`decolor`]: rescales by σ^{-1} and installs `factor` and `kind`.
pub fn recolor(
    a: &GradedAlgebra,
    sigma: &Multiplier,
    factor: CommutationFactor,
    kind: Kind,
) -> Result<GradedAlgebra, AlgebraError> {
    rescale(a, sigma, true, kind, factor)
}
