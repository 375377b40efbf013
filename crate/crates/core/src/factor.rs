//! Commutation factors N(a,b) = ζ_L^{aᵀBb}, their parity splitting and
//! bicharacter multipliers σ(a,b) = ζ_L^{aᵀSb}.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grading::{AbelianGroup, GradingError, GroupElement};
use crate::report::{sweep, Mismatch, VerificationReport};
use crate::scalar::{lcm_all, CycloScalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error(transparent)]
    Grading(#[from] GradingError),
    #[error("exponent matrix must be {rank}x{rank}")]
    Shape { rank: usize },
    #[error("root order must be positive")]
    InvalidRootOrder,
    #[error("invalid commutation factor: {0}")]
    InvalidFactor(String),
    #[error("multiplier does not split N+: {0}")]
    NoBicharacterMultiplier(String),
}

/// Bicharacter on a finite abelian group given by an exponent matrix over ζ_L.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bicharacter {
    group: AbelianGroup,
    root_order: u32,
    exponents: Vec<Vec<i64>>,
}

impl Bicharacter {
    pub fn new(group: AbelianGroup, root_order: u32, exponents: Vec<Vec<i64>>) -> Result<Self, FactorError> {
        if root_order == 0 {
            return Err(FactorError::InvalidRootOrder);
        }
        let rank = group.rank();
        if exponents.len() != rank || exponents.iter().any(|row| row.len() != rank) {
            return Err(FactorError::Shape { rank });
        }
        let l = root_order as i64;
        let exponents = exponents
            .into_iter()
            .map(|row| row.into_iter().map(|e| e.rem_euclid(l)).collect())
            .collect();
        Ok(Bicharacter {
            group,
            root_order,
            exponents,
        })
    }

    pub fn trivial(group: AbelianGroup) -> Self {
        let rank = group.rank();
        Bicharacter {
            group,
            root_order: 1,
            exponents: vec![vec![0; rank]; rank],
        }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn root_order(&self) -> u32 {
        self.root_order
    }

    pub fn exponents(&self) -> &[Vec<i64>] {
        &self.exponents
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().flatten().all(|&e| e == 0)
    }

    /// Same bicharacter expressed over ζ_M for a multiple M of the root order.
    pub fn lifted(&self, order: u32) -> Self {
        assert!(order % self.root_order == 0, "lift target must be a multiple of the root order");
        let m = (order / self.root_order) as i64;
        Bicharacter {
            group: self.group.clone(),
            root_order: order,
            exponents: self.exponents.iter().map(|r| r.iter().map(|e| e * m).collect()).collect(),
        }
    }

    /// aᵀBb reduced mod L.
    pub fn exponent(&self, a: &GroupElement, b: &GroupElement) -> u32 {
        let l = self.root_order as i64;
        let mut acc = 0i64;
        for (i, &ai) in a.residues().iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.residues().iter().enumerate() {
                acc = (acc + self.exponents[i][j] * ai as i64 % l * bj as i64) % l;
            }
        }
        acc.rem_euclid(l) as u32
    }

    pub fn evaluate(&self, a: &GroupElement, b: &GroupElement) -> Result<CycloScalar, FactorError> {
        self.group.check(a)?;
        self.group.check(b)?;
        Ok(CycloScalar::root_of_unity(self.root_order, self.exponent(a, b) as i64))
    }

    /// Value ζ_M^{k} with the exponent rescaled to a multiple M of the root order.
    pub fn exponent_in(&self, a: &GroupElement, b: &GroupElement, order: u32) -> u32 {
        self.exponent(a, b) * (order / self.root_order)
    }
}

/// A commutation factor; axioms are checked by [`validate_factor`], not on construction.
pub type CommutationFactor = Bicharacter;
/// A multiplier σ used for decoloration.
pub type Multiplier = Bicharacter;

fn show(e: &GroupElement) -> String {
    e.to_string()
}

fn power_label(l: u32, k: u32) -> String {
    CycloScalar::root_of_unity(l, k as i64).to_string()
}

/// Exhaustively checks the commutation-factor axioms and N(a,a) = ±1.
pub fn validate_factor(n: &CommutationFactor) -> VerificationReport {
    let l = n.root_order;
    let els = n.group.enumerate();
    let g = &n.group;
    let k = els.len();
    let w2 = |t: &[usize]| vec![show(&els[t[0]]), show(&els[t[1]])];
    let w3 = |t: &[usize]| vec![show(&els[t[0]]), show(&els[t[1]]), show(&els[t[2]])];
    let mut report = VerificationReport::new("commutation factor");

    report.record(sweep(
        "N(a,b)N(b,a)=1",
        &[k, k],
        None,
        |t| {
            let (a, b) = (&els[t[0]], &els[t[1]]);
            let e = (n.exponent(a, b) + n.exponent(b, a)) % l;
            (e != 0).then(|| Mismatch {
                lhs: power_label(l, e),
                rhs: "1".into(),
            })
        },
        w2,
    ));
    report.record(sweep(
        "N(a,b+c)=N(a,b)N(a,c)",
        &[k, k, k],
        None,
        |t| {
            let (a, b, c) = (&els[t[0]], &els[t[1]], &els[t[2]]);
            let lhs = n.exponent(a, &g.add_unchecked(b, c));
            let rhs = (n.exponent(a, b) + n.exponent(a, c)) % l;
            (lhs != rhs).then(|| Mismatch {
                lhs: power_label(l, lhs),
                rhs: power_label(l, rhs),
            })
        },
        w3,
    ));
    report.record(sweep(
        "N(a+b,c)=N(a,c)N(b,c)",
        &[k, k, k],
        None,
        |t| {
            let (a, b, c) = (&els[t[0]], &els[t[1]], &els[t[2]]);
            let lhs = n.exponent(&g.add_unchecked(a, b), c);
            let rhs = (n.exponent(a, c) + n.exponent(b, c)) % l;
            (lhs != rhs).then(|| Mismatch {
                lhs: power_label(l, lhs),
                rhs: power_label(l, rhs),
            })
        },
        w3,
    ));
    report.record(sweep(
        "N(a,a)=+-1",
        &[k],
        None,
        |t| {
            let a = &els[t[0]];
            let e = n.exponent(a, a);
            (2 * e % l != 0).then(|| Mismatch {
                lhs: power_label(l, e),
                rhs: "1 or -1".into(),
            })
        },
        |t| vec![show(&els[t[0]])],
    ));
    report
}

/// Z_2 grading Γ = Γ0 ⊕ Γ1 induced by N(a,a) = (−1)^{|a|}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParitySplit {
    /// w_i = 1 when the i-th generator is odd; parity(a) = Σ w_i a_i mod 2.
    weights: Vec<u32>,
}

impl ParitySplit {
    pub fn parity(&self, a: &GroupElement) -> u32 {
        a.residues().iter().zip(&self.weights).map(|(r, w)| r * w).sum::<u32>() % 2
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// True when Γ1 is nonempty (the superalgebra case).
    pub fn is_super(&self) -> bool {
        self.weights.iter().any(|&w| w == 1)
    }
}

pub fn parity_split(n: &CommutationFactor) -> Result<ParitySplit, FactorError> {
    let l = n.root_order;
    let g = &n.group;
    let mut weights = Vec::with_capacity(g.rank());
    for i in 0..g.rank() {
        let b = n.exponents[i][i] as u32;
        let w = if b == 0 {
            0
        } else if l % 2 == 0 && b == l / 2 {
            1
        } else {
            return Err(FactorError::InvalidFactor(format!(
                "N(e{i},e{i}) = {} is not +-1",
                power_label(l, b)
            )));
        };
        weights.push(w);
    }
    let split = ParitySplit { weights };
    // N(a,a) is determined by the diagonal only when B + Bᵀ vanishes mod L
    for a in g.enumerate() {
        let expect = if split.parity(&a) == 1 { l / 2 } else { 0 };
        if n.exponent(&a, &a) != expect {
            return Err(FactorError::InvalidFactor(format!(
                "N({a},{a}) = {} disagrees with the generator parities",
                power_label(l, n.exponent(&a, &a))
            )));
        }
    }
    Ok(split)
}

/// N₊(a,b) = (−1)^{|a||b|} N(a,b).
pub fn n_plus(n: &CommutationFactor) -> Result<CommutationFactor, FactorError> {
    let split = parity_split(n)?;
    if !split.is_super() {
        return Ok(n.clone());
    }
    let half = (n.root_order / 2) as i64;
    let w = &split.weights;
    let exps = n
        .exponents
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, &b)| b + half * (w[i] * w[j]) as i64)
                .collect()
        })
        .collect();
    Bicharacter::new(n.group.clone(), n.root_order, exps)
}

/// The sign factor (−1)^{|a||b|} alone, over the same root order as `n`.
pub fn sign_factor(n: &CommutationFactor) -> Result<CommutationFactor, FactorError> {
    let split = parity_split(n)?;
    let half = (n.root_order / 2) as i64;
    let w = &split.weights;
    let rank = n.group.rank();
    let exps = (0..rank)
        .map(|i| (0..rank).map(|j| half * (w[i] * w[j]) as i64).collect())
        .collect();
    Bicharacter::new(n.group.clone(), n.root_order, exps)
}

/// Triangular splitting S of N₊ with σ(a,b)/σ(b,a) = N₊^{-1}(a,b).
pub fn bicharacter_multiplier(n_plus: &CommutationFactor) -> Result<Multiplier, FactorError> {
    let rank = n_plus.group.rank();
    let l = n_plus.root_order as i64;
    let mut s = vec![vec![0i64; rank]; rank];
    for (i, row) in s.iter_mut().enumerate() {
        let d = n_plus.exponents[i][i].rem_euclid(l);
        if d != 0 {
            return Err(FactorError::NoBicharacterMultiplier(format!(
                "N+(e{i},e{i}) = {} != 1",
                power_label(n_plus.root_order, d as u32)
            )));
        }
        for (j, slot) in row.iter_mut().enumerate().take(i) {
            *slot = -n_plus.exponents[i][j];
        }
    }
    let sigma = Bicharacter::new(n_plus.group.clone(), n_plus.root_order, s)?;
    let orders = n_plus.group.orders();
    for i in 0..rank {
        for j in 0..rank {
            let e = sigma.exponents[i][j];
            if (orders[i] as i64 * e) % l != 0 || (orders[j] as i64 * e) % l != 0 {
                return Err(FactorError::NoBicharacterMultiplier(format!(
                    "S[{i}][{j}] is not well defined on Z_{} x Z_{}",
                    orders[i], orders[j]
                )));
            }
        }
    }
    Ok(sigma)
}

/// Exhaustive check of the multiplier identities, plus the ratio condition
/// σ(a,b)σ(b,a)^{-1} = N₊^{-1}(a,b) when `n_plus` is given.
pub fn validate_multiplier(sigma: &Multiplier, n_plus: Option<&CommutationFactor>) -> VerificationReport {
    let l = match n_plus {
        Some(np) => lcm_all([sigma.root_order, np.root_order]),
        None => sigma.root_order,
    };
    let g = &sigma.group;
    let els = g.enumerate();
    let k = els.len();
    let s = |a: &GroupElement, b: &GroupElement| sigma.exponent_in(a, b, l);
    let add = |a: &GroupElement, b: &GroupElement| g.add_unchecked(a, b);
    let w3 = |t: &[usize]| vec![show(&els[t[0]]), show(&els[t[1]]), show(&els[t[2]])];
    let cmp = |lhs: u32, rhs: u32| {
        (lhs % l != rhs % l).then(|| Mismatch {
            lhs: power_label(l, lhs % l),
            rhs: power_label(l, rhs % l),
        })
    };
    let mut report = VerificationReport::new("multiplier");
    report.record(sweep(
        "sigma(a,b+c)sigma(b,c)=sigma(a,b)sigma(a+b,c)",
        &[k, k, k],
        None,
        |t| {
            let (a, b, c) = (&els[t[0]], &els[t[1]], &els[t[2]]);
            cmp(s(a, &add(b, c)) + s(b, c), s(a, b) + s(&add(a, b), c))
        },
        w3,
    ));
    // σ(a,b+c)σ(a,b)^{-1}σ(a,c)^{-1}, written additively in exponents
    let defect = |a: &GroupElement, b: &GroupElement, c: &GroupElement| {
        (s(a, &add(b, c)) + 2 * l - s(a, b) - s(a, c)) % l
    };
    let defect_rev = |a: &GroupElement, b: &GroupElement, c: &GroupElement| {
        (s(&add(b, c), a) + 2 * l - s(b, a) - s(c, a)) % l
    };
    report.record(sweep(
        "multiplier commutation condition",
        &[k, k, k],
        None,
        |t| {
            let (a, b, c) = (&els[t[0]], &els[t[1]], &els[t[2]]);
            cmp(defect(a, b, c), defect_rev(a, b, c))
        },
        w3,
    ));
    report.record(sweep(
        "multiplier cyclic invariance",
        &[k, k, k],
        None,
        |t| {
            let (a, b, c) = (&els[t[0]], &els[t[1]], &els[t[2]]);
            let d = defect(a, b, c);
            cmp(d, defect(b, c, a)).or_else(|| cmp(d, defect(c, a, b)))
        },
        w3,
    ));
    if let Some(np) = n_plus {
        report.record(sweep(
            "sigma(a,b)/sigma(b,a)=N+(a,b)^-1",
            &[k, k],
            None,
            |t| {
                let (a, b) = (&els[t[0]], &els[t[1]]);
                let lhs = (s(a, b) + l - s(b, a)) % l;
                let rhs = (l - np.exponent_in(a, b, l)) % l;
                cmp(lhs, rhs)
            },
            |t| vec![show(&els[t[0]]), show(&els[t[1]])],
        ));
    }
    report
}
