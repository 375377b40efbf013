//! Normal ordering in exchange algebras: color oscillators θ^i/∂_i, the
//! Λ-variables θ^a_k and q = 0 quons a^i/a_i.
//!
//! Words are rewritten with three kinds of rules until no rule applies:
//! swapping an out-of-order pair of the same kind by its exchange
//! coefficient, killing a repeated self-square-zero letter, and contracting
//! a lowering letter against a following raising letter. Canonical order is
//! all raising letters before all lowering letters, each run sorted by
//! generator index (quon letters of the same kind never commute, so their
//! runs stay as written).

mod realize;

use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;
use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::factor::{validate_factor, CommutationFactor, FactorError};
use crate::grading::{GradingError, GroupElement};
use crate::scalar::{lcm_all, CycloScalar};

pub use realize::{differential_realization, lambda_decoloration_check, quon_realization, Realization};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OscillatorError {
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("invalid commutation factor: {0}")]
    InvalidFactor(String),
    #[error("grading mismatch: {0}")]
    GradingMismatch(String),
    #[error("missing Z_F grading: {0}")]
    MissingZfGrading(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl From<FactorError> for OscillatorError {
    fn from(e: FactorError) -> Self {
        OscillatorError::InvalidFactor(e.to_string())
    }
}

impl From<GradingError> for OscillatorError {
    fn from(e: GradingError) -> Self {
        OscillatorError::GradingMismatch(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GeneratorKind {
    Raising,
    Lowering,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub kind: GeneratorKind,
    pub degree: GroupElement,
    pub zf_grade: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    ColorOscillator { epsilon: i8 },
    Lambda { multiplicity: usize },
    Quon,
}

/// Rewriting strategy for [`ExchangeAlgebra::normalize_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

pub type Word = SmallVec<[u32; 8]>;

/// Generators with their exchange and contraction data.
///
/// `exchange[x][y] = Some(c)` means x y = c · y x (for lowering x and raising
/// y this is the term accompanying the contraction); `None` means the pair
/// is never reordered.
#[derive(Debug, Clone)]
pub struct ExchangeAlgebra {
    flavor: Flavor,
    root_order: u32,
    generators: Vec<Generator>,
    index: BTreeMap<String, u32>,
    exchange: Vec<Vec<Option<CycloScalar>>>,
    contraction: Vec<Vec<CycloScalar>>,
    self_square_zero: Vec<bool>,
}

impl ExchangeAlgebra {
    fn assemble(
        flavor: Flavor,
        root_order: u32,
        generators: Vec<Generator>,
        exchange: Vec<Vec<Option<CycloScalar>>>,
        contraction: Vec<Vec<CycloScalar>>,
        self_square_zero: Vec<bool>,
    ) -> Result<Self, OscillatorError> {
        let mut index = BTreeMap::new();
        for (k, g) in generators.iter().enumerate() {
            if index.insert(g.label.clone(), k as u32).is_some() {
                return Err(OscillatorError::InvalidParameter(format!("duplicate generator {}", g.label)));
            }
        }
        Ok(ExchangeAlgebra {
            flavor,
            root_order,
            generators,
            index,
            exchange,
            contraction,
            self_square_zero,
        })
    }

    /// θ^i of degree −gr(i) and ∂_i of degree gr(i) with
    /// θ^iθ^j = −εN(gr i, gr j)θ^jθ^i, ∂_i∂_j = −εN(gr i, gr j)∂_j∂_i and
    /// ∂_iθ^j = δ_i^j − εN(gr i, −gr j)θ^j∂_i.
    pub fn color_oscillator(
        factor: &CommutationFactor,
        gr: &[GroupElement],
        epsilon: i8,
        min_root_order: u32,
    ) -> Result<Self, OscillatorError> {
        if epsilon != 1 && epsilon != -1 {
            return Err(OscillatorError::InvalidParameter(format!("epsilon must be +1 or -1, got {epsilon}")));
        }
        let checked = validate_factor(factor);
        if let Some(c) = checked.counterexamples.first() {
            return Err(OscillatorError::InvalidFactor(format!("{} at ({})", c.identity, c.witness.join(", "))));
        }
        let g = factor.group();
        for d in gr {
            g.check(d)?;
        }
        let l = lcm_all([2, factor.root_order(), min_root_order.max(1)]);
        let d = gr.len();
        let n = |a: &GroupElement, b: &GroupElement| CycloScalar::root_of_unity(l, factor.exponent_in(a, b, l) as i64);
        let eps = CycloScalar::from_int(l, epsilon as i64);
        let mut generators = Vec::with_capacity(2 * d);
        for (i, a) in gr.iter().enumerate() {
            generators.push(Generator {
                label: format!("θ^{}", i + 1),
                kind: GeneratorKind::Raising,
                degree: g.neg_unchecked(a),
                zf_grade: 0,
            });
        }
        for (i, a) in gr.iter().enumerate() {
            generators.push(Generator {
                label: format!("∂_{}", i + 1),
                kind: GeneratorKind::Lowering,
                degree: a.clone(),
                zf_grade: 0,
            });
        }
        let mut exchange = vec![vec![None; 2 * d]; 2 * d];
        let mut contraction = vec![vec![CycloScalar::zero(l); 2 * d]; 2 * d];
        for i in 0..d {
            for j in 0..d {
                let same = -(&eps * &n(&gr[i], &gr[j]));
                exchange[i][j] = Some(same.clone());
                exchange[d + i][d + j] = Some(same);
                exchange[d + i][j] = Some(-(&eps * &n(&gr[i], &g.neg_unchecked(&gr[j]))));
                if i == j {
                    contraction[d + i][j] = CycloScalar::one(l);
                }
            }
        }
        let self_square_zero = (0..2 * d)
            .map(|k| {
                let a = &gr[k % d];
                !(CycloScalar::one(l) + &eps * &n(a, a)).is_zero()
            })
            .collect();
        Self::assemble(Flavor::ColorOscillator { epsilon }, l, generators, exchange, contraction, self_square_zero)
    }

    /// Raising generators θ^a_k, k = 1..multiplicity, for each listed degree a,
    /// with θ^a_i θ^b_j = N^{-1}(a,b) θ^b_j θ^a_i.
    pub fn lambda(
        factor: &CommutationFactor,
        degrees: &[GroupElement],
        multiplicity: usize,
        min_root_order: u32,
    ) -> Result<Self, OscillatorError> {
        if multiplicity == 0 {
            return Err(OscillatorError::InvalidParameter("multiplicity must be at least 1".into()));
        }
        let checked = validate_factor(factor);
        if let Some(c) = checked.counterexamples.first() {
            return Err(OscillatorError::InvalidFactor(format!("{} at ({})", c.identity, c.witness.join(", "))));
        }
        let g = factor.group();
        let l = lcm_all([2, factor.root_order(), min_root_order.max(1)]);
        let mut generators = Vec::new();
        for a in degrees {
            g.check(a)?;
            let name: Vec<String> = a.residues().iter().map(|r| r.to_string()).collect();
            for k in 0..multiplicity {
                generators.push(Generator {
                    label: format!("θ^({})_{}", name.join(","), k + 1),
                    kind: GeneratorKind::Raising,
                    degree: a.clone(),
                    zf_grade: 0,
                });
            }
        }
        let m = generators.len();
        let mut exchange = vec![vec![None; m]; m];
        for x in 0..m {
            for y in 0..m {
                let e = factor.exponent_in(&generators[x].degree, &generators[y].degree, l) as i64;
                exchange[x][y] = Some(CycloScalar::root_of_unity(l, -e));
            }
        }
        let self_square_zero = generators
            .iter()
            .map(|x| (CycloScalar::one(l) + CycloScalar::root_of_unity(l, factor.exponent_in(&x.degree, &x.degree, l) as i64)).is_zero())
            .collect();
        let contraction = vec![vec![CycloScalar::zero(l); m]; m];
        Self::assemble(Flavor::Lambda { multiplicity }, l, generators, exchange, contraction, self_square_zero)
    }

    /// One q = 0 quon family per entry of `sizes`: a^i (raising), a_i
    /// (lowering) with a_i a^j = δ_i^j inside a family and 0 across families.
    /// Family k is labelled by `names[k]` (defaults to k).
    pub fn quon(sizes: &[usize]) -> Result<Self, OscillatorError> {
        let names: Vec<String> = (0..sizes.len()).map(|k| k.to_string()).collect();
        Self::quon_named(sizes, &names, &vec![0; sizes.len()], 2)
    }

    pub(crate) fn quon_named(sizes: &[usize], names: &[String], zf: &[u32], l: u32) -> Result<Self, OscillatorError> {
        let total: usize = sizes.iter().sum();
        let mut generators = Vec::with_capacity(2 * total);
        for kind in [GeneratorKind::Raising, GeneratorKind::Lowering] {
            for (f, &n) in sizes.iter().enumerate() {
                for i in 0..n {
                    let label = match (kind, sizes.len()) {
                        (GeneratorKind::Raising, 1) => format!("a^{}", i + 1),
                        (GeneratorKind::Lowering, 1) => format!("a_{}", i + 1),
                        (GeneratorKind::Raising, _) => format!("a{}^{}", names[f], i + 1),
                        (GeneratorKind::Lowering, _) => format!("a{}_{}", names[f], i + 1),
                    };
                    generators.push(Generator {
                        label,
                        kind,
                        degree: GroupElement::from_residues(vec![]),
                        zf_grade: zf[f],
                    });
                }
            }
        }
        let m = 2 * total;
        let exchange = vec![vec![None; m]; m];
        let mut contraction = vec![vec![CycloScalar::zero(l); m]; m];
        for i in 0..total {
            contraction[total + i][i] = CycloScalar::one(l);
        }
        Self::assemble(Flavor::Quon, l, generators, exchange, contraction, vec![false; m])
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn root_order(&self) -> u32 {
        self.root_order
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generator_index(&self, label: &str) -> Result<u32, OscillatorError> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| OscillatorError::UnknownGenerator(label.to_string()))
    }

    pub fn exchange_coefficient(&self, x: u32, y: u32) -> Option<&CycloScalar> {
        self.exchange[x as usize][y as usize].as_ref()
    }

    pub fn contraction(&self, x: u32, y: u32) -> &CycloScalar {
        &self.contraction[x as usize][y as usize]
    }

    pub fn self_square_zero(&self, x: u32) -> bool {
        self.self_square_zero[x as usize]
    }

    pub fn one(&self) -> NormalElement {
        NormalElement::scalar(CycloScalar::one(self.root_order))
    }

    /// The single letter `x` as an element (already normal).
    pub fn letter(&self, x: u32) -> NormalElement {
        let mut w = Word::new();
        w.push(x);
        NormalElement::from_word(w, CycloScalar::one(self.root_order))
    }

    pub fn named(&self, label: &str) -> Result<NormalElement, OscillatorError> {
        Ok(self.letter(self.generator_index(label)?))
    }

    fn kind(&self, x: u32) -> GeneratorKind {
        self.generators[x as usize].kind
    }

    /// Whether the adjacent pair x y can be rewritten.
    fn is_redex(&self, x: u32, y: u32) -> bool {
        match (self.kind(x), self.kind(y)) {
            (GeneratorKind::Lowering, GeneratorKind::Raising) => true,
            (GeneratorKind::Raising, GeneratorKind::Lowering) => false,
            _ if x == y => self.self_square_zero(x),
            _ => x > y && self.exchange_coefficient(x, y).is_some(),
        }
    }

    pub fn is_normal(&self, w: &[u32]) -> bool {
        w.windows(2).all(|p| !self.is_redex(p[0], p[1]))
    }

    /// Applies the rule at position p, pushing the resulting terms.
    fn rewrite(&self, w: &Word, c: &CycloScalar, p: usize, out: &mut impl FnMut(Word, CycloScalar)) {
        let (x, y) = (w[p], w[p + 1]);
        let swapped = |w: &Word| {
            let mut s = w.clone();
            s.swap(p, p + 1);
            s
        };
        match (self.kind(x), self.kind(y)) {
            (GeneratorKind::Lowering, GeneratorKind::Raising) => {
                let delta = self.contraction(x, y);
                if !delta.is_zero() {
                    let mut s = w.clone();
                    s.drain(p..p + 2);
                    out(s, c * delta);
                }
                if let Some(e) = self.exchange_coefficient(x, y) {
                    out(swapped(w), c * e);
                }
            }
            _ if x == y => {}
            _ => {
                let e = self.exchange_coefficient(x, y).expect("redex has an exchange rule");
                out(swapped(w), c * e);
            }
        }
    }

    /// Rewrites c·w to normal form with the leftmost-redex strategy.
    pub fn normalize(&self, w: &[u32], c: CycloScalar) -> Result<NormalElement, OscillatorError> {
        self.normalize_with(w, c, Strategy::Leftmost)
    }

    pub fn normalize_labels(&self, labels: &[&str]) -> Result<NormalElement, OscillatorError> {
        let w: Vec<u32> = labels.iter().map(|l| self.generator_index(l)).collect::<Result<_, _>>()?;
        self.normalize(&w, CycloScalar::one(self.root_order))
    }

    pub fn normalize_with(&self, w: &[u32], c: CycloScalar, strategy: Strategy) -> Result<NormalElement, OscillatorError> {
        if let Some(&x) = w.iter().find(|&&x| x as usize >= self.generators.len()) {
            return Err(OscillatorError::UnknownGenerator(format!("#{x}")));
        }
        let c = c.lift(self.root_order).map_err(|_| {
            OscillatorError::InvalidParameter(format!(
                "coefficient lives in Q(ζ_{}) but the algebra uses Q(ζ_{})",
                c.root_order(),
                self.root_order
            ))
        })?;
        Ok(self.normalize_all([(Word::from_slice(w), c)], strategy))
    }

    fn normalize_all(&self, start: impl IntoIterator<Item = (Word, CycloScalar)>, strategy: Strategy) -> NormalElement {
        let mut pending: BTreeMap<Word, CycloScalar> = BTreeMap::new();
        let mut result = NormalElement::zero();
        let push = |pending: &mut BTreeMap<Word, CycloScalar>, w: Word, c: CycloScalar| {
            if c.is_zero() {
                return;
            }
            match pending.entry(w) {
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += &c;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
            }
        };
        for (w, c) in start {
            push(&mut pending, w, c);
        }
        while let Some((w, c)) = pending.pop_last() {
            let redex = match strategy {
                Strategy::Leftmost => (0..w.len().saturating_sub(1)).find(|&p| self.is_redex(w[p], w[p + 1])),
                Strategy::Rightmost => (0..w.len().saturating_sub(1)).rev().find(|&p| self.is_redex(w[p], w[p + 1])),
            };
            match redex {
                None => result.add_word(w, &c),
                Some(p) => {
                    let mut out = Vec::new();
                    self.rewrite(&w, &c, p, &mut |w, c| out.push((w, c)));
                    for (w, c) in out {
                        push(&mut pending, w, c);
                    }
                }
            }
        }
        result
    }

    /// Σ over term pairs of normalize(concatenation).
    pub fn multiply(&self, x: &NormalElement, y: &NormalElement) -> NormalElement {
        let mut start = Vec::with_capacity(x.terms.len() * y.terms.len());
        for (u, a) in &x.terms {
            for (v, b) in &y.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                start.push((w, a * b));
            }
        }
        self.normalize_all(start, Strategy::Leftmost)
    }

    /// Product of several elements, left to right.
    pub fn product(&self, xs: &[&NormalElement]) -> NormalElement {
        xs.iter().fold(self.one(), |acc, x| self.multiply(&acc, x))
    }

    /// x·y − c·y·x.
    pub fn commutator(&self, x: &NormalElement, y: &NormalElement, c: &CycloScalar) -> NormalElement {
        let mut out = self.multiply(x, y);
        out.add_scaled(&self.multiply(y, x), &-c);
        out
    }

    pub fn show(&self, x: &NormalElement) -> String {
        x.display_with(|k| self.generators[k as usize].label.clone())
    }
}

/// Linear combination of normal words; the empty word is the unit.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NormalElement {
    terms: BTreeMap<Word, CycloScalar>,
}

impl NormalElement {
    pub fn zero() -> Self {
        NormalElement::default()
    }

    pub fn scalar(c: CycloScalar) -> Self {
        NormalElement::from_word(Word::new(), c)
    }

    fn from_word(w: Word, c: CycloScalar) -> Self {
        let mut out = NormalElement::zero();
        out.add_word(w, &c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &CycloScalar)> + '_ {
        self.terms.iter().map(|(w, c)| (w.as_slice(), c))
    }

    pub fn coeff(&self, w: &[u32]) -> Option<&CycloScalar> {
        self.terms.get(w)
    }

    fn add_word(&mut self, w: Word, c: &CycloScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &NormalElement, c: &CycloScalar) {
        for (w, d) in &other.terms {
            self.add_word(w.clone(), &(d * c));
        }
    }

    pub fn add_assign(&mut self, other: &NormalElement) {
        for (w, d) in &other.terms {
            self.add_word(w.clone(), d);
        }
    }

    pub fn scaled(&self, c: &CycloScalar) -> NormalElement {
        let mut out = NormalElement::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> NormalElement {
        NormalElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn display_with(&self, label: impl Fn(u32) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let name: Vec<String> = w.iter().map(|&x| label(x)).collect();
                let name = name.join(" ");
                match (name.is_empty(), c) {
                    (true, c) => format!("{c}"),
                    (false, c) if c.is_one() => name,
                    (false, c) if (-c).is_one() => format!("-{name}"),
                    (false, c) if c.as_rational().is_some() => format!("{c}*{name}"),
                    (false, c) => format!("({c})*{name}"),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for NormalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(|x| format!("#{x}")))
    }
}

/// e^i_j = a^i a_j in a single quon family of size n, as a row-major n×n table.
pub fn quon_matrix_units(n: usize) -> Result<(ExchangeAlgebra, Vec<Vec<NormalElement>>), OscillatorError> {
    if n == 0 {
        return Err(OscillatorError::InvalidParameter("n must be at least 1".into()));
    }
    let q = ExchangeAlgebra::quon(&[n])?;
    let units = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| q.multiply(&q.letter(i as u32), &q.letter((n + j) as u32)))
                .collect()
        })
        .collect();
    Ok((q, units))
}

#[cfg(test)]
mod tests;
