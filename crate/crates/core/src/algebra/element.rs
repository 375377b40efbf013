use std::collections::BTreeMap;

use crate::scalar::{CycloScalar, ScalarError};

/// Finite linear combination of basis elements, indexed by basis position.
///
/// Zero coefficients are never stored, so structural equality is equality
/// of vectors.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<usize, CycloScalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn basis(i: usize, root_order: u32) -> Self {
        let mut e = Element::zero();
        e.terms.insert(i, CycloScalar::one(root_order));
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (usize, CycloScalar)>>(terms: I) -> Self {
        let mut e = Element::zero();
        for (i, c) in terms {
            e.add_term(i, &c);
        }
        e
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

    pub fn terms(&self) -> impl Iterator<Item = (usize, &CycloScalar)> + '_ {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn coeff(&self, i: usize) -> Option<&CycloScalar> {
        self.terms.get(&i)
    }

    pub fn add_term(&mut self, i: usize, c: &CycloScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&i) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&i);
                }
            }
            None => {
                self.terms.insert(i, c.clone());
            }
        }
    }

    /// self += c · other
    pub fn add_scaled(&mut self, other: &Element, c: &CycloScalar) {
        if c.is_zero() {
            return;
        }
        let one = c.is_one();
        for (k, v) in other.terms() {
            if one {
                self.add_term(k, v);
            } else {
                self.add_term(k, &(v * c));
            }
        }
    }

    pub fn add_assign(&mut self, other: &Element) {
        for (k, v) in other.terms() {
            self.add_term(k, v);
        }
    }

    pub fn sub_assign(&mut self, other: &Element) {
        for (k, v) in other.terms() {
            self.add_term(k, &-v);
        }
    }

    pub fn scaled(&self, c: &CycloScalar) -> Element {
        if c.is_one() {
            return self.clone();
        }
        let mut out = Element::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> Element {
        Element {
            terms: self.terms.iter().map(|(&k, v)| (k, -v)).collect(),
        }
    }

    /// Re-expresses all coefficients over a multiple of their root order.
    pub fn lift(self, order: u32) -> Result<Element, ScalarError> {
        if self.terms.values().all(|c| c.root_order() == order) {
            return Ok(self);
        }
        let mut out = Element::zero();
        for (k, c) in self.terms {
            out.terms.insert(k, c.lift(order)?);
        }
        Ok(out)
    }

    /// Applies an index map to every basis position.
    pub fn reindex(&self, map: impl Fn(usize) -> usize) -> Element {
        let mut out = Element::zero();
        for (k, c) in self.terms() {
            out.add_term(map(k), c);
        }
        out
    }

    pub fn display_with(&self, label: impl Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(k, c)| {
                let name = label(k);
                if c.is_one() {
                    name
                } else if (-c).is_one() {
                    format!("-{name}")
                } else if c.as_rational().is_some() {
                    format!("{c}*{name}")
                } else {
                    format!("({c})*{name}")
                }
            })
            .collect();
        parts.join(" + ")
    }
}
