//! The congruence `~_S` on type-B triangulations and its quotient lattice.
//!
//! Two vectors are equivalent when they differ at a single `k` in `S`, one
//! holding `n-1` there and the other `∞`. A class has at most two members
//! and its top lies in `T_n^S`, so the quotient is modelled directly on the
//! vectors with no `n-1` at a position of `S`.

use std::fmt;

use crate::bracket_b::{self, enumerate, BracketVectorB, ExtNat, Fin, Inf};
use crate::error::{Error, Result};
use crate::tri_b::TriangulationB;

pub use crate::noncross::BdsSubset;

/// Triangle test: `T` contains both `i, i+1, (i+1)‾` and `ī, i+1, (i+1)‾`.
pub fn has_diameter_triangles(t: &TriangulationB, i: usize) -> bool {
    let n = t.n();
    let (ib, next, nextb) = (n + i, i, n + i + 1);
    t.has_triangle(i - 1, next, nextb) && t.has_triangle(ib, next, nextb)
}

pub fn in_tns(t: &TriangulationB, s: &BdsSubset) -> bool {
    !s.members().iter().any(|&i| has_diameter_triangles(t, i))
}

pub fn in_tns_vector(v: &BracketVectorB, s: &BdsSubset) -> bool {
    let n = v.n();
    !s.members().iter().any(|&i| v.get(i) == ExtNat::fin(n - 1))
}

/// The top of the class of `v`.
pub fn project(v: &BracketVectorB, s: &BdsSubset) -> BracketVectorB {
    let n = v.n();
    s.members()
        .iter()
        .filter(|&&k| v.get(k) == ExtNat::fin(n - 1))
        .fold(v.clone(), |acc, &k| {
            acc.with_entry(k, Inf)
                .expect("n-1 can always be raised to ∞")
        })
}

/// Every member of the class containing `v`, ascending.
pub fn class_of(v: &BracketVectorB, s: &BdsSubset) -> Vec<BracketVectorB> {
    let top = project(v, s);
    let n = top.n();
    let mut out: Vec<BracketVectorB> = s
        .members()
        .iter()
        .filter(|&&k| top.get(k) == Inf)
        .filter_map(|&k| top.with_entry(k, Fin((n - 1) as u8)))
        .filter(|w| project(w, s) == top)
        .collect();
    out.push(top);
    out.sort();
    out
}

pub fn equivalent(a: &BracketVectorB, b: &BracketVectorB, s: &BdsSubset) -> bool {
    project(a, s) == project(b, s)
}

pub fn enumerate_s(n: usize, s: &BdsSubset) -> Vec<BracketVectorB> {
    enumerate(n)
        .into_iter()
        .filter(|v| in_tns_vector(v, s))
        .collect()
}

fn require(v: &BracketVectorB, s: &BdsSubset) -> Result<()> {
    if in_tns_vector(v, s) {
        Ok(())
    } else {
        Err(Error::NotInSubfamily(v.to_string()))
    }
}

pub fn meet_s(a: &BracketVectorB, b: &BracketVectorB, s: &BdsSubset) -> Result<BracketVectorB> {
    require(a, s)?;
    require(b, s)?;
    Ok(bracket_b::meet(a, b))
}

pub fn join_s(a: &BracketVectorB, b: &BracketVectorB, s: &BdsSubset) -> Result<BracketVectorB> {
    require(a, s)?;
    require(b, s)?;
    Ok(project(&bracket_b::join(a, b), s))
}

/// Upper covers of `a` in `T_n^S`, ascending.
pub fn upper_covers_s(a: &BracketVectorB, s: &BdsSubset) -> Vec<BracketVectorB> {
    let mut candidates: Vec<BracketVectorB> =
        a.upper_covers().iter().map(|c| project(c, s)).collect();
    candidates.sort();
    candidates.dedup();
    let minimal: Vec<BracketVectorB> = candidates
        .iter()
        .filter(|&x| !candidates.iter().any(|y| y != x && y.leq(x)))
        .cloned()
        .collect();
    minimal
}

pub fn covers_s(a: &BracketVectorB, b: &BracketVectorB, s: &BdsSubset) -> bool {
    in_tns_vector(a, s) && in_tns_vector(b, s) && upper_covers_s(a, s).contains(b)
}

/// For an S-cover that is not a B-cover, the element `Z'` of the class of
/// `b` with `a ⋖ Z' ⋖ b` in the type-B lattice.
pub fn interpolant(
    a: &BracketVectorB,
    b: &BracketVectorB,
    s: &BdsSubset,
) -> Option<BracketVectorB> {
    if !covers_s(a, b, s) || bracket_b::covers(a, b) {
        return None;
    }
    class_of(b, s)
        .into_iter()
        .find(|z| z != b && bracket_b::covers(a, z) && bracket_b::covers(z, b))
}

/// A type-B triangulation known to lie in `T_n^S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TriangulationBds {
    triangulation: TriangulationB,
    s: BdsSubset,
}

impl TriangulationBds {
    pub fn new(triangulation: TriangulationB, s: BdsSubset) -> Result<Self> {
        if s.n() != triangulation.n() {
            return Err(Error::LengthMismatch {
                expected: triangulation.n(),
                got: s.n(),
            });
        }
        if !in_tns(&triangulation, &s) {
            return Err(Error::NotInSubfamily(triangulation.to_string()));
        }
        Ok(TriangulationBds { triangulation, s })
    }

    pub fn triangulation(&self) -> &TriangulationB {
        &self.triangulation
    }

    pub fn subset(&self) -> &BdsSubset {
        &self.s
    }
}

impl fmt::Display for TriangulationBds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in BD^{}", self.triangulation, self.s)
    }
}
