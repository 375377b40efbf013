//! Finite abelian grading groups Z_{n1} × … × Z_{np} and grading maps.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradingError {
    #[error("element {element} does not belong to group {group}")]
    ElementOutOfGroup { element: String, group: String },
    #[error("block sizes must be positive")]
    EmptyBlocks,
    #[error("{sizes} block sizes but {degrees} block degrees")]
    BlockCountMismatch { sizes: usize, degrees: usize },
    #[error("group orders must be positive")]
    InvalidOrder,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    orders: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(Vec<u32>);

impl GroupElement {
    /// Raw residues; membership in a group is checked where the element is used.
    pub fn from_residues(residues: Vec<u32>) -> Self {
        GroupElement(residues)
    }

    pub fn residues(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

impl AbelianGroup {
    pub fn new(orders: Vec<u32>) -> Result<Self, GradingError> {
        if orders.iter().any(|&n| n == 0) {
            return Err(GradingError::InvalidOrder);
        }
        Ok(AbelianGroup { orders })
    }

    pub fn trivial() -> Self {
        AbelianGroup { orders: Vec::new() }
    }

    pub fn cyclic(n: u32) -> Self {
        Self::new(vec![n]).expect("cyclic group order must be positive")
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn size(&self) -> u64 {
        self.orders.iter().map(|&n| n as u64).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.iter().all(|&n| n == 1)
    }

    /// Direct product, components of `self` first.
    pub fn product(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut orders = self.orders.clone();
        orders.extend_from_slice(&other.orders);
        AbelianGroup { orders }
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.orders.len()])
    }

    /// Element with arbitrary integer residues, reduced into range.
    pub fn element(&self, residues: &[i64]) -> Result<GroupElement, GradingError> {
        if residues.len() != self.orders.len() {
            return Err(self.out_of_group(&format!("{residues:?}")));
        }
        Ok(GroupElement(
            residues
                .iter()
                .zip(&self.orders)
                .map(|(&r, &n)| r.rem_euclid(n as i64) as u32)
                .collect(),
        ))
    }

    pub fn contains(&self, a: &GroupElement) -> bool {
        a.0.len() == self.orders.len() && a.0.iter().zip(&self.orders).all(|(&r, &n)| r < n)
    }

    pub fn check(&self, a: &GroupElement) -> Result<(), GradingError> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(self.out_of_group(&a.to_string()))
        }
    }

    fn out_of_group(&self, element: &str) -> GradingError {
        GradingError::ElementOutOfGroup {
            element: element.to_string(),
            group: self.to_string(),
        }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GradingError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_unchecked(a, b))
    }

    pub(crate) fn add_unchecked(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.orders)
                .map(|((&x, &y), &n)| (x + y) % n)
                .collect(),
        )
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement, GradingError> {
        self.check(a)?;
        Ok(self.neg_unchecked(a))
    }

    pub(crate) fn neg_unchecked(&self, a: &GroupElement) -> GroupElement {
        GroupElement(a.0.iter().zip(&self.orders).map(|(&x, &n)| (n - x) % n).collect())
    }

    pub(crate) fn sub_unchecked(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add_unchecked(a, &self.neg_unchecked(b))
    }

    /// All elements in lexicographic order of residues.
    pub fn enumerate(&self) -> Vec<GroupElement> {
        let mut out = vec![Vec::with_capacity(self.orders.len())];
        for &n in &self.orders {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..n).map(move |r| {
                        let mut v = prefix.clone();
                        v.push(r);
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(GroupElement).collect()
    }

    /// Position of `a` in [`AbelianGroup::enumerate`] order.
    pub fn index_of(&self, a: &GroupElement) -> usize {
        a.0.iter()
            .zip(&self.orders)
            .fold(0usize, |acc, (&r, &n)| acc * n as usize + r as usize)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "{{0}}");
        }
        let parts: Vec<String> = self.orders.iter().map(|n| format!("Z_{n}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Degrees attached to the indices 0..n of a vector space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingMap {
    degrees: Vec<GroupElement>,
}

impl GradingMap {
    pub fn new(group: &AbelianGroup, degrees: Vec<GroupElement>) -> Result<Self, GradingError> {
        for d in &degrees {
            group.check(d)?;
        }
        Ok(GradingMap { degrees })
    }

    pub fn constant(group: &AbelianGroup, n: usize) -> Self {
        GradingMap {
            degrees: vec![group.zero(); n],
        }
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn degree(&self, i: usize) -> &GroupElement {
        &self.degrees[i]
    }

    pub fn degrees(&self) -> &[GroupElement] {
        &self.degrees
    }
}

/// Lays out consecutive blocks of indices, block k carrying `block_degrees[k]`.
pub fn block_grading(
    group: &AbelianGroup,
    block_sizes: &[usize],
    block_degrees: &[GroupElement],
) -> Result<GradingMap, GradingError> {
    if block_sizes.len() != block_degrees.len() {
        return Err(GradingError::BlockCountMismatch {
            sizes: block_sizes.len(),
            degrees: block_degrees.len(),
        });
    }
    if block_sizes.is_empty() || block_sizes.contains(&0) {
        return Err(GradingError::EmptyBlocks);
    }
    let mut degrees = Vec::new();
    for (&m, d) in block_sizes.iter().zip(block_degrees) {
        group.check(d)?;
        degrees.extend(std::iter::repeat_n(d.clone(), m));
    }
    Ok(GradingMap { degrees })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(g: &AbelianGroup, r: &[i64]) -> GroupElement {
        g.element(r).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let g = AbelianGroup::new(vec![3, 3]).unwrap();
        assert_eq!(g.add(&el(&g, &[1, 2]), &el(&g, &[2, 2])).unwrap(), el(&g, &[0, 1]));
        let z3 = AbelianGroup::cyclic(3);
        assert_eq!(z3.neg(&el(&z3, &[1])).unwrap(), el(&z3, &[2]));
        let v = AbelianGroup::new(vec![2, 2]).unwrap();
        let listed: Vec<Vec<u32>> = v.enumerate().iter().map(|e| e.residues().to_vec()).collect();
        assert_eq!(listed, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn mismatched_lengths_are_rejected() {
        let g = AbelianGroup::new(vec![3, 3]).unwrap();
        let z3 = AbelianGroup::cyclic(3);
        assert!(matches!(
            g.add(&el(&z3, &[1]), &el(&g, &[0, 0])),
            Err(GradingError::ElementOutOfGroup { .. })
        ));
        assert!(g.element(&[1]).is_err());
    }

    #[test]
    fn group_axioms_exhaustive() {
        for orders in [vec![3, 3], vec![2, 4], vec![3, 3, 3, 3], vec![], vec![1, 5]] {
            let g = AbelianGroup::new(orders).unwrap();
            let all = g.enumerate();
            assert_eq!(all.len() as u64, g.size());
            let zero = g.zero();
            for (i, a) in all.iter().enumerate() {
                assert_eq!(g.index_of(a), i);
                assert_eq!(g.add(a, &zero).unwrap(), *a);
                assert_eq!(g.add(a, &g.neg(a).unwrap()).unwrap(), zero);
                for b in &all {
                    let ab = g.add(a, b).unwrap();
                    assert_eq!(ab, g.add(b, a).unwrap());
                    if all.len() <= 81 {
                        for c in &all {
                            assert_eq!(g.add(&ab, c).unwrap(), g.add(a, &g.add(b, c).unwrap()).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn block_layout() {
        let z3 = AbelianGroup::cyclic(3);
        let degs: Vec<GroupElement> = (0..3).map(|k| el(&z3, &[k])).collect();
        let map = block_grading(&z3, &[1, 1, 1], &degs).unwrap();
        assert_eq!(map.degrees(), &degs[..]);
        let map = block_grading(&z3, &[2, 1], &degs[1..]).unwrap();
        assert_eq!(map.degrees(), &[degs[1].clone(), degs[1].clone(), degs[2].clone()]);
        let map = block_grading(&z3, &[3], &degs[..1]).unwrap();
        assert!(map.degrees().iter().all(|d| *d == z3.zero()));
        assert_eq!(block_grading(&z3, &[2, 0], &degs[..2]), Err(GradingError::EmptyBlocks));
    }
}
