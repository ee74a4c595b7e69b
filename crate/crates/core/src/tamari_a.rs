//! The classical Tamari lattice on triangulations of the (n+3)-gon.
//!
//! Used to cross-check the type-B machinery and for the bijection to
//! classical noncrossing partitions.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mesh;
use crate::polygon::{crosses, order_a, Chord};
use crate::tri_b::ChordColor;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TriangulationA {
    n: usize,
    chords: Vec<Chord>,
}

/// An (n+1)-tuple with `0 <= r_i <= i-1` and the spacing condition.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct BracketVectorA(Vec<usize>);

/// A noncrossing partition of `1..=n+1`, blocks sorted by least element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct NoncrossingPartitionA {
    pub n: usize,
    pub blocks: Vec<Vec<usize>>,
}

impl fmt::Display for NoncrossingPartitionA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(""))
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

fn ring(n: usize) -> Vec<usize> {
    (0..order_a(n)).collect()
}

impl TriangulationA {
    pub fn new(n: usize, chords: impl IntoIterator<Item = Chord>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroSize);
        }
        let order = order_a(n);
        let mut chords: Vec<Chord> = chords.into_iter().collect();
        chords.sort_unstable();
        chords.dedup();
        for &c in &chords {
            if c.hi() >= order {
                return Err(Error::VertexOutOfRange {
                    index: c.hi(),
                    order,
                });
            }
            if c.is_polygon_edge(order) {
                return Err(Error::PolygonEdge(format!("{}-{}", c.lo(), c.hi())));
            }
        }
        if chords.len() != n {
            return Err(Error::InvalidTriangulation(format!(
                "expected {n} internal chords, got {}",
                chords.len()
            )));
        }
        for (k, &a) in chords.iter().enumerate() {
            if let Some(&b) = chords[k + 1..].iter().find(|&&b| crosses(a, b)) {
                return Err(Error::InvalidTriangulation(format!(
                    "chords {}-{} and {}-{} cross",
                    a.lo(),
                    a.hi(),
                    b.lo(),
                    b.hi()
                )));
            }
        }
        Ok(TriangulationA { n, chords })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn chords(&self) -> &[Chord] {
        &self.chords
    }

    pub fn has_chord(&self, c: Chord) -> bool {
        self.chords.binary_search(&c).is_ok()
    }

    fn quad_of(&self, c: Chord) -> Result<[usize; 4]> {
        let order = order_a(self.n);
        if c.is_polygon_edge(order) {
            return Err(Error::PolygonEdge(format!("{}-{}", c.lo(), c.hi())));
        }
        if !self.has_chord(c) {
            return Err(Error::NotAChord(format!("{}-{}", c.lo(), c.hi())));
        }
        let [x, y] = mesh::apexes(&ring(self.n), &self.chords, c)
            .ok_or_else(|| Error::InvalidTriangulation("chord without quadrilateral".into()))?;
        Ok([c.lo(), c.hi(), x, y])
    }

    /// Green iff the chord touches the largest vertex of its quadrilateral.
    pub fn color(&self, c: Chord) -> Result<ChordColor> {
        let quad = self.quad_of(c)?;
        let top = *quad.iter().max().unwrap();
        Ok(if c.contains(top) {
            ChordColor::Green
        } else {
            ChordColor::Red
        })
    }

    pub fn red_chords(&self) -> Vec<Chord> {
        self.chords
            .iter()
            .copied()
            .filter(|&c| self.color(c) == Ok(ChordColor::Red))
            .collect()
    }

    pub fn flip(&self, c: Chord) -> Result<Self> {
        let quad = self.quad_of(c)?;
        let d = Chord::new(quad[2], quad[3])?;
        let mut chords: Vec<Chord> = self.chords.iter().copied().filter(|&x| x != c).collect();
        chords.push(d);
        chords.sort_unstable();
        Ok(TriangulationA { n: self.n, chords })
    }

    /// Triangulations obtained by flipping one green chord; these cover `self`.
    pub fn green_flips(&self) -> Vec<Self> {
        let mut out: Vec<_> = self
            .chords
            .iter()
            .filter(|&&c| self.color(c) == Ok(ChordColor::Green))
            .map(|&c| self.flip(c).expect("internal chord"))
            .collect();
        out.sort();
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let chords: Vec<[usize; 2]> = self.chords.iter().map(|c| [c.lo(), c.hi()]).collect();
        serde_json::json!({ "n": self.n, "chords": chords })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        #[derive(Deserialize)]
        struct Wire {
            n: usize,
            chords: Vec<[usize; 2]>,
        }
        let w: Wire = serde_json::from_value(value.clone())
            .map_err(|e| Error::MalformedJson(e.to_string()))?;
        let chords = w
            .chords
            .iter()
            .map(|[a, b]| Chord::new(*a, *b))
            .collect::<Result<Vec<_>>>()?;
        TriangulationA::new(w.n, chords)
    }
}

pub fn covers_by_flip_a(s: &TriangulationA, t: &TriangulationA) -> bool {
    s.n == t.n && s.green_flips().iter().any(|x| x == t)
}

fn spacing_ok(r: &[usize]) -> bool {
    (1..r.len()).all(|j| (0..j).all(|i| r[j] < j - i || r[i] <= r[j] - (j - i)))
}

impl BracketVectorA {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::ZeroSize);
        }
        let n = entries.len() - 1;
        for (k, &x) in entries.iter().enumerate() {
            if x > k {
                return Err(Error::EntryOutOfRange {
                    position: k + 1,
                    value: x,
                    n,
                });
            }
        }
        if !spacing_ok(&entries) {
            return Err(Error::InvalidVectorA("spacing condition fails".into()));
        }
        Ok(BracketVectorA(entries))
    }

    /// Size parameter: the vector has `n + 1` entries.
    pub fn n(&self) -> usize {
        self.0.len() - 1
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for BracketVectorA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `r_i = i - 1 - v_i` with `v_i` the least vertex joined to `i`.
pub fn encode_a(t: &TriangulationA) -> BracketVectorA {
    let entries = (1..=t.n + 1)
        .map(|i| {
            let least = t
                .chords
                .iter()
                .filter_map(|c| c.other(i))
                .filter(|&v| v < i)
                .min()
                .unwrap_or(i - 1);
            i - 1 - least.min(i - 1)
        })
        .collect();
    BracketVectorA(entries)
}

pub fn decode_a(r: &BracketVectorA) -> TriangulationA {
    let n = r.n();
    let reds: Vec<Chord> =
        r.0.iter()
            .enumerate()
            .filter(|(_, &x)| x > 0)
            .map(|(k, &x)| Chord::from_sorted(k - x, k + 1))
            .collect();
    let mut chords = reds.clone();
    for region in mesh::split_regions(ring(n), &reds) {
        let top = *region.last().expect("non-empty region");
        chords.extend(
            region
                .iter()
                .filter(|&&v| v != top)
                .map(|&v| Chord::from_sorted(v, top))
                .filter(|&c| !mesh::is_boundary(&region, c)),
        );
    }
    TriangulationA::new(n, chords).expect("valid bracket vectors decode")
}

pub fn leq_a(a: &BracketVectorA, b: &BracketVectorA) -> bool {
    a.0.len() == b.0.len() && a.0.iter().zip(&b.0).all(|(x, y)| x <= y)
}

/// Componentwise minimum; it is always a valid vector.
pub fn meet_a(a: &BracketVectorA, b: &BracketVectorA) -> BracketVectorA {
    let min = a.0.iter().zip(&b.0).map(|(x, y)| *x.min(y)).collect();
    BracketVectorA::new(min).expect("componentwise min stays valid")
}

pub fn join_a(a: &BracketVectorA, b: &BracketVectorA) -> BracketVectorA {
    let max: Vec<usize> = a.0.iter().zip(&b.0).map(|(x, y)| *x.max(y)).collect();
    up_a(&max).expect("componentwise max satisfies the range condition")
}

/// Least valid vector above `x`, for `x` with `x_i <= i-1`.
pub fn up_a(x: &[usize]) -> Result<BracketVectorA> {
    if x.len() < 2 {
        return Err(Error::ZeroSize);
    }
    let mut g: Vec<usize> = Vec::with_capacity(x.len());
    for (k, &xi) in x.iter().enumerate() {
        if xi > k {
            return Err(Error::EntryOutOfRange {
                position: k + 1,
                value: xi,
                n: x.len() - 1,
            });
        }
        let v = (1..=xi.min(k)).map(|j| g[k - j] + j).fold(xi, usize::max);
        g.push(v);
    }
    BracketVectorA::new(g)
}

pub fn enumerate_a(n: usize) -> Vec<BracketVectorA> {
    fn rec(len: usize, prefix: &mut Vec<usize>, out: &mut Vec<BracketVectorA>) {
        let j = prefix.len();
        if j == len {
            out.push(BracketVectorA(prefix.clone()));
            return;
        }
        for x in 0..=j {
            if (0..j).all(|i| x < j - i || prefix[i] <= x - (j - i)) {
                prefix.push(x);
                rec(len, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n + 1, &mut Vec::new(), &mut out);
    out
}

/// Cut the circle along the red chords, each pulled slightly inward so
/// both endpoints fall on the side holding the top edge; blocks are the
/// resulting groups among `1..=n+1`.
pub fn psi_a(t: &TriangulationA) -> NoncrossingPartitionA {
    let n = t.n;
    let reds = t.red_chords();
    let mut groups: BTreeMap<Vec<bool>, Vec<usize>> = BTreeMap::new();
    for v in 1..=n + 1 {
        let signature: Vec<bool> = reds.iter().map(|c| c.lo() < v && v < c.hi()).collect();
        groups.entry(signature).or_default().push(v);
    }
    let mut blocks: Vec<Vec<usize>> = groups.into_values().collect();
    blocks.sort();
    NoncrossingPartitionA { n, blocks }
}

pub fn is_noncrossing_a(p: &NoncrossingPartitionA) -> bool {
    let m = p.n + 1;
    let mut block_of = vec![usize::MAX; m + 1];
    for (k, b) in p.blocks.iter().enumerate() {
        for &x in b {
            if x == 0 || x > m || block_of[x] != usize::MAX {
                return false;
            }
            block_of[x] = k;
        }
    }
    if block_of[1..].contains(&usize::MAX) {
        return false;
    }
    for a in 1..=m {
        for b in a + 1..=m {
            for c in b + 1..=m {
                for d in c + 1..=m {
                    if block_of[a] == block_of[c]
                        && block_of[b] == block_of[d]
                        && block_of[a] != block_of[b]
                    {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_a() -> TriangulationA {
        decode_a(&BracketVectorA::new(vec![0, 0, 0, 2, 4]).unwrap())
    }

    #[test]
    fn sample_a_encoding() {
        let t = sample_a();
        let expected: Vec<Chord> = [(1, 4), (0, 5), (2, 4), (1, 5)]
            .iter()
            .map(|&(a, b)| Chord::new(a, b).unwrap())
            .collect();
        let mut expected = expected;
        expected.sort();
        assert_eq!(t.chords(), &expected[..]);
        assert_eq!(encode_a(&t).entries(), &[0, 0, 0, 2, 4]);
        let mut reds = t.red_chords();
        reds.sort();
        assert_eq!(
            reds,
            vec![Chord::new(0, 5).unwrap(), Chord::new(1, 4).unwrap()]
        );
        assert_eq!(psi_a(&t).blocks, vec![vec![1, 4], vec![2, 3], vec![5]]);
    }

    #[test]
    fn fans() {
        for n in 1..=5 {
            let from_zero =
                TriangulationA::new(n, (2..=n + 1).map(|v| Chord::new(0, v).unwrap())).unwrap();
            let r = encode_a(&from_zero);
            assert_eq!(r.entries(), (0..=n).collect::<Vec<_>>().as_slice());
            let from_top =
                TriangulationA::new(n, (1..=n).map(|v| Chord::new(v, n + 2).unwrap())).unwrap();
            assert!(encode_a(&from_top).entries().iter().all(|&x| x == 0));
            for &c in from_top.chords() {
                assert_eq!(from_top.color(c).unwrap(), ChordColor::Green);
            }
            // no red chords: nothing separates the vertices
            assert_eq!(
                psi_a(&from_top).blocks,
                vec![(1..=n + 1).collect::<Vec<_>>()]
            );
            assert_eq!(psi_a(&from_zero).blocks.len(), n + 1);
        }
    }

    #[test]
    fn counts_are_catalan() {
        let catalan = [2, 5, 14, 42, 132, 429];
        for (n, &c) in (1..=6).zip(&catalan) {
            assert_eq!(enumerate_a(n).len(), c);
        }
    }

    #[test]
    fn round_trips_and_bijection() {
        for n in 1..=5 {
            let all = enumerate_a(n);
            let mut images = Vec::new();
            for r in &all {
                let t = decode_a(r);
                assert_eq!(&encode_a(&t), r);
                let p = psi_a(&t);
                assert!(is_noncrossing_a(&p));
                images.push(p);
            }
            images.sort();
            images.dedup();
            assert_eq!(images.len(), all.len());
        }
    }

    #[test]
    fn meet_and_join_examples() {
        let a = BracketVectorA::new(vec![0, 0, 0, 2, 4]).unwrap();
        let fan = BracketVectorA::new(vec![0, 1, 2, 3, 4]).unwrap();
        assert_eq!(meet_a(&a, &fan), a);
        let zero = BracketVectorA::new(vec![0; 5]).unwrap();
        assert_eq!(join_a(&a, &zero), a);
        assert!(leq_a(&zero, &a) && leq_a(&a, &fan));
    }

    #[test]
    fn flip_covers_match_bracket_covers() {
        for n in 1..=4 {
            for r in enumerate_a(n) {
                let t = decode_a(&r);
                for u in t.green_flips() {
                    let s = encode_a(&u);
                    assert!(leq_a(&r, &s) && r != s);
                    assert!(covers_by_flip_a(&t, &u));
                }
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(BracketVectorA::new(vec![1, 0]).is_err());
        assert!(BracketVectorA::new(vec![0, 1, 1]).is_err());
        assert!(up_a(&[0, 2]).is_err());
        assert!(
            TriangulationA::new(2, [Chord::new(0, 2).unwrap(), Chord::new(1, 3).unwrap()]).is_err()
        );
        let t = sample_a();
        assert_eq!(TriangulationA::from_json(&t.to_json()).unwrap(), t);
    }
}
