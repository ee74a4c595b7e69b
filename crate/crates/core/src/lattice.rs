//! A fully materialized `T_n^S` with its Hasse diagram.
//!
//! Elements are the valid bracket vectors of the family, sorted
//! lexicographically. Componentwise order refines lexicographic order, so
//! element indices are already a linear extension.

use std::collections::HashMap;

use crate::bracket_b::{self, enumerate, BracketVectorB};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::quotient_bds::{self, in_tns_vector, project, BdsSubset};

#[derive(Clone, Debug)]
pub struct TamariLattice {
    n: usize,
    s: BdsSubset,
    elements: Vec<BracketVectorB>,
    index: HashMap<BracketVectorB, usize>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
}

impl TamariLattice {
    pub fn new(n: usize, s: BdsSubset, exec: Exec) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroSize);
        }
        if s.n() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: s.n(),
            });
        }
        let elements: Vec<BracketVectorB> = enumerate(n)
            .into_iter()
            .filter(|v| in_tns_vector(v, &s))
            .collect();
        let index: HashMap<BracketVectorB, usize> = elements
            .iter()
            .enumerate()
            .map(|(k, v)| (v.clone(), k))
            .collect();
        let upper: Vec<Vec<usize>> = exec.map(&elements, |v| {
            let mut up: Vec<usize> = if s.is_empty() {
                v.upper_covers().iter().map(|c| index[c]).collect()
            } else {
                quotient_bds::upper_covers_s(v, &s)
                    .iter()
                    .map(|c| index[c])
                    .collect()
            };
            up.sort_unstable();
            up
        });
        let mut lower = vec![Vec::new(); elements.len()];
        for (a, ups) in upper.iter().enumerate() {
            for &b in ups {
                lower[b].push(a);
            }
        }
        Ok(TamariLattice {
            n,
            s,
            elements,
            index,
            upper,
            lower,
        })
    }

    /// The type-B lattice `T_n^B`.
    pub fn type_b(n: usize) -> Result<Self> {
        Self::new(n, BdsSubset::empty(n), Exec::default())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn subset(&self) -> &BdsSubset {
        &self.s
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[BracketVectorB] {
        &self.elements
    }

    pub fn element(&self, k: usize) -> &BracketVectorB {
        &self.elements[k]
    }

    pub fn index_of(&self, v: &BracketVectorB) -> Result<usize> {
        self.index
            .get(v)
            .copied()
            .ok_or_else(|| Error::UnknownElement(v.to_string()))
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.elements[a].leq(&self.elements[b])
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.index[&bracket_b::meet(&self.elements[a], &self.elements[b])]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.index[&project(
            &bracket_b::join(&self.elements[a], &self.elements[b]),
            &self.s,
        )]
    }

    pub fn upper_covers(&self, a: usize) -> &[usize] {
        &self.upper[a]
    }

    pub fn lower_covers(&self, a: usize) -> &[usize] {
        &self.lower[a]
    }

    pub fn covers(&self, a: usize, b: usize) -> bool {
        self.upper[a].binary_search(&b).is_ok()
    }

    /// Hasse edges `(a, b)` with `a ⋖ b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|a| self.upper[a].iter().map(move |&b| (a, b)))
            .collect()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.len() - 1
    }

    /// Indices of `[y, z]`, ascending.
    pub fn interval(&self, y: usize, z: usize) -> Vec<usize> {
        (y..=z)
            .filter(|&c| self.leq(y, c) && self.leq(c, z))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_lattices() {
        let one = TamariLattice::type_b(1).unwrap();
        assert_eq!(one.len(), 2);
        assert_eq!(one.edges(), vec![(0, 1)]);
        let three = TamariLattice::type_b(3).unwrap();
        assert_eq!(three.len(), 20);
        assert_eq!(three.element(three.bottom()), &BracketVectorB::bottom(3));
        assert_eq!(three.element(three.top()), &BracketVectorB::top(3));
        for (a, b) in three.edges() {
            assert!(a < b && three.leq(a, b));
        }
        let seq = TamariLattice::new(4, BdsSubset::empty(4), Exec::Sequential).unwrap();
        let par = TamariLattice::new(4, BdsSubset::empty(4), Exec::Parallel).unwrap();
        assert_eq!(seq.edges(), par.edges());
    }

    #[test]
    fn quotient_top_and_bottom() {
        let s = BdsSubset::new(3, [3]).unwrap();
        let l = TamariLattice::new(3, s, Exec::Sequential).unwrap();
        assert_eq!(l.len(), 18);
        assert_eq!(l.element(l.top()), &BracketVectorB::top(3));
        let degenerate =
            TamariLattice::new(1, BdsSubset::new(1, [1]).unwrap(), Exec::Sequential).unwrap();
        assert_eq!(degenerate.len(), 1);
        assert!(TamariLattice::new(3, BdsSubset::empty(2), Exec::Sequential).is_err());
    }
}
