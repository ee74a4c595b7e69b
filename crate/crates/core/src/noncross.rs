//! Type-B noncrossing partitions and the bijection with type-B triangulations.
//!
//! A partition is stored over polygon indices: unbarred `k` is index `k-1`,
//! barred `k` is index `n+k`. The two vertices labelled `n+1` never occur.
//! Index order is then the cyclic order `1..n, 1̄..n̄` on the 2n-point circle.

use std::collections::BTreeMap;
use std::fmt;

use serde::Deserialize;

use crate::bracket_b::{decode, BracketVectorB, ExtNat, Fin, Inf};
use crate::error::{Error, Result};
use crate::polygon::{label_of, order_b, symmetric_partner, Chord, ChordKind, VertexB};
use crate::tri_b::TriangulationB;

/// The subset `S` of `[n]` selecting the family `BD_n^S`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BdsSubset {
    n: usize,
    members: Vec<usize>,
}

impl BdsSubset {
    pub fn new(n: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if let Some(&value) = members.iter().find(|&&k| k == 0 || k > n) {
            return Err(Error::SubsetOutOfRange { value, n });
        }
        Ok(BdsSubset { n, members })
    }

    pub fn empty(n: usize) -> Self {
        BdsSubset {
            n,
            members: Vec::new(),
        }
    }

    /// Parse `"1,3"`; the empty string is the empty set.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let members = text
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::MalformedSubset(text.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, members)
    }

    /// All `2^n` subsets, ordered by bitmask.
    pub fn all(n: usize) -> Vec<Self> {
        (0u32..1 << n)
            .map(|mask| BdsSubset {
                n,
                members: (1..=n).filter(|k| mask >> (k - 1) & 1 == 1).collect(),
            })
            .collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, k: usize) -> bool {
        self.members.binary_search(&k).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }
}

impl fmt::Display for BdsSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members.iter().map(|k| k.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NoncrossingPartitionB {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

fn is_point(v: usize, n: usize) -> bool {
    v < order_b(n) && v != n && v != 2 * n + 1
}

fn bar(v: usize, n: usize) -> usize {
    (v + n + 1) % order_b(n)
}

/// The 2n points of the circle in cyclic order.
fn points(n: usize) -> impl Iterator<Item = usize> {
    (0..n).chain(n + 1..=2 * n)
}

impl NoncrossingPartitionB {
    /// Build from blocks of polygon indices, checking symmetry and noncrossing.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let p = Self::normalized(n, blocks)?;
        if !is_noncrossing_b(&p) {
            return Err(Error::InvalidPartition(format!(
                "{p} is not a symmetric noncrossing partition"
            )));
        }
        Ok(p)
    }

    fn normalized(n: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroSize);
        }
        let mut seen = vec![false; order_b(n)];
        for b in &mut blocks {
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            b.sort_unstable();
            for &v in b.iter() {
                if !is_point(v, n) {
                    return Err(Error::InvalidPartition(format!(
                        "index {v} is not a point for n = {n}"
                    )));
                }
                if seen[v] {
                    return Err(Error::InvalidPartition(format!(
                        "{} appears twice",
                        label_of(v, n)
                    )));
                }
                seen[v] = true;
            }
        }
        if let Some(v) = points(n).find(|&v| !seen[v]) {
            return Err(Error::InvalidPartition(format!(
                "{} is missing",
                label_of(v, n)
            )));
        }
        blocks.sort();
        Ok(NoncrossingPartitionB { n, blocks })
    }

    /// Parse blocks of signed tokens such as `["1", "-2"]`.
    pub fn from_tokens(n: usize, blocks: &[Vec<String>]) -> Result<Self> {
        let blocks = blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|t| {
                        let v = VertexB::parse_token(t, n)?.index();
                        if is_point(v, n) {
                            Ok(v)
                        } else {
                            Err(Error::BadVertexLabel(t.clone()))
                        }
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, blocks)
    }

    pub fn singletons(n: usize) -> Self {
        NoncrossingPartitionB {
            n,
            blocks: points(n).map(|v| vec![v]).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn token_blocks(&self) -> Vec<Vec<String>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&v| label_of(v, self.n).to_string()).collect())
            .collect()
    }

    fn block_of(&self) -> Vec<usize> {
        let mut out = vec![usize::MAX; order_b(self.n)];
        for (k, b) in self.blocks.iter().enumerate() {
            for &v in b {
                out[v] = k;
            }
        }
        out
    }

    /// Swap barred and unbarred labels in every block.
    pub fn barred(&self) -> Self {
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&v| bar(v, self.n)).collect())
            .collect();
        Self::normalized(self.n, blocks).expect("barring preserves a partition")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "n": self.n, "blocks": self.token_blocks() })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        #[derive(Deserialize)]
        struct Wire {
            n: usize,
            blocks: Vec<Vec<String>>,
        }
        let w: Wire = serde_json::from_value(value.clone())
            .map_err(|e| Error::MalformedJson(e.to_string()))?;
        Self::from_tokens(w.n, &w.blocks)
    }
}

impl fmt::Display for NoncrossingPartitionB {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.token_blocks().iter().map(|b| b.join(" ")).collect();
        write!(f, "{{{}}}", parts.join(" | "))
    }
}

/// Symmetric under barring, and no two blocks interleave on the circle.
pub fn is_noncrossing_b(p: &NoncrossingPartitionB) -> bool {
    let n = p.n;
    let block_of = p.block_of();
    if points(n).any(|v| block_of[v] == usize::MAX) {
        return false;
    }
    // barring must map blocks onto blocks
    for b in &p.blocks {
        let image = block_of[bar(b[0], n)];
        if b.iter().any(|&v| block_of[bar(v, n)] != image) {
            return false;
        }
    }
    let pts: Vec<usize> = points(n).collect();
    let m = pts.len();
    for a in 0..m {
        for b in a + 1..m {
            if block_of[pts[a]] == block_of[pts[b]] {
                continue;
            }
            for c in b + 1..m {
                if block_of[pts[c]] != block_of[pts[a]] {
                    continue;
                }
                if pts[c + 1..]
                    .iter()
                    .any(|&d| block_of[d] == block_of[pts[b]])
                {
                    return false;
                }
            }
        }
    }
    true
}

/// Indices on the side of a perturbed red chord away from the erased vertex
/// `n+1` that lies outside it.
fn cut_side(c: Chord, n: usize) -> std::ops::Range<usize> {
    match c.kind(n) {
        ChordKind::Mixed => c.lo()..c.hi(),
        _ => c.lo() + 1..c.hi(),
    }
}

pub fn psi(t: &TriangulationB) -> NoncrossingPartitionB {
    let n = t.n();
    let cuts: Vec<_> = t.red_set().into_iter().map(|c| cut_side(c, n)).collect();
    let mut groups: BTreeMap<Vec<bool>, Vec<usize>> = BTreeMap::new();
    for v in points(n) {
        groups
            .entry(cuts.iter().map(|r| r.contains(&v)).collect())
            .or_default()
            .push(v);
    }
    NoncrossingPartitionB::normalized(n, groups.into_values().collect())
        .expect("regions partition the points")
}

fn splits_a_block(c: Chord, n: usize, block_of: &[usize], blocks: usize) -> bool {
    let side = cut_side(c, n);
    let mut seen = vec![[false; 2]; blocks];
    for v in points(n) {
        seen[block_of[v]][usize::from(side.contains(&v))] = true;
    }
    seen.iter().any(|s| s[0] && s[1])
}

/// Bracket vector of the triangulation mapped to `p`.
///
/// Coordinates are chosen left to right. A candidate value fixes `C_i`,
/// which must not separate two points of a block; the survivors are
/// checked against `psi` at the end.
pub fn psi_inverse_vector(p: &NoncrossingPartitionB) -> Result<BracketVectorB> {
    let n = p.n;
    let order = order_b(n);
    let block_of = p.block_of();
    let blocks = p.blocks.len();
    let compatible = |c: Chord| {
        !splits_a_block(c, n, &block_of, blocks)
            && !splits_a_block(symmetric_partner(c, n), n, &block_of, blocks)
    };
    let first_chord = |prefix: &[ExtNat], x: ExtNat| -> Option<Chord> {
        let i = prefix.len() + 1;
        let at = i - 1;
        match x {
            Fin(0) => None,
            Fin(d) => Some(Chord::from_sorted(
                at.min((at + order - d as usize - 1) % order),
                at.max((at + order - d as usize - 1) % order),
            )),
            Inf => {
                let j = (1..i)
                    .find(|&j| match prefix[j - 1] {
                        Inf => true,
                        Fin(y) => y as usize + i >= n + j,
                    })
                    .unwrap_or(i);
                Some(Chord::from_sorted(at, n + j))
            }
        }
    };
    fn rec(
        n: usize,
        prefix: &mut Vec<ExtNat>,
        step: &dyn Fn(&[ExtNat], ExtNat) -> bool,
        done: &dyn Fn(&[ExtNat]) -> bool,
    ) -> bool {
        if prefix.len() == n {
            return done(prefix);
        }
        for x in ExtNat::range(n) {
            if step(prefix, x) {
                prefix.push(x);
                if rec(n, prefix, step, done) {
                    return true;
                }
                prefix.pop();
            }
        }
        false
    }
    let step = |prefix: &[ExtNat], x: ExtNat| {
        let j = prefix.len();
        let spaced = match x.finite() {
            None => true,
            Some(rj) => (0..j).all(|i| rj < j - i || prefix[i] <= ExtNat::fin(rj - (j - i))),
        };
        spaced && first_chord(prefix, x).is_none_or(compatible)
    };
    let done = |r: &[ExtNat]| match BracketVectorB::new(r.to_vec()) {
        Ok(v) => &psi(&decode(&v)) == p,
        Err(_) => false,
    };
    let mut prefix = Vec::with_capacity(n);
    if rec(n, &mut prefix, &step, &done) {
        Ok(BracketVectorB::new_unchecked(prefix))
    } else {
        Err(Error::InvalidPartition(format!("{p} has no preimage")))
    }
}

pub fn psi_inverse(p: &NoncrossingPartitionB) -> Result<TriangulationB> {
    if !is_noncrossing_b(p) {
        return Err(Error::InvalidPartition(format!(
            "{p} is not a symmetric noncrossing partition"
        )));
    }
    Ok(decode(&psi_inverse_vector(p)?))
}

/// No block is exactly `{i, ī}` for `i` in `s`.
pub fn in_bds(p: &NoncrossingPartitionB, s: &BdsSubset) -> bool {
    let n = p.n;
    !p.blocks
        .iter()
        .any(|b| b.len() == 2 && b[0] < n && b[1] == b[0] + n + 1 && s.contains(b[0] + 1))
}

/// Every symmetric noncrossing partition of the 2n points, found by
/// enumerating all noncrossing partitions of the circle and keeping the
/// symmetric ones.
pub fn enumerate_nc_b(n: usize) -> Vec<NoncrossingPartitionB> {
    let pts: Vec<usize> = points(n).collect();
    let m = pts.len();
    // assign[k] = block number of point k, in restricted growth form
    fn rec(
        k: usize,
        m: usize,
        assign: &mut Vec<usize>,
        open: &mut Vec<usize>,
        blocks: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == m {
            out.push(assign.clone());
            return;
        }
        // a new block
        open.push(blocks);
        assign.push(blocks);
        rec(k + 1, m, assign, open, blocks + 1, out);
        assign.pop();
        open.pop();
        // rejoin an open block; everything opened after it is closed for good
        for depth in (0..open.len()).rev() {
            let b = open[depth];
            let closed: Vec<usize> = open.drain(depth + 1..).collect();
            assign.push(b);
            rec(k + 1, m, assign, open, blocks, out);
            assign.pop();
            open.extend(closed);
        }
    }
    let mut raw = Vec::new();
    rec(
        0,
        m,
        &mut Vec::with_capacity(m),
        &mut Vec::new(),
        0,
        &mut raw,
    );
    let half = m / 2;
    let mut out: Vec<NoncrossingPartitionB> = raw
        .into_iter()
        .filter(|a| {
            let image = |k: usize| a[(k + half) % m];
            // the bar map must send each block onto one block, bijectively
            let mut map = vec![usize::MAX; m];
            (0..m).all(|k| {
                let slot = &mut map[a[k]];
                if *slot == usize::MAX {
                    *slot = image(k);
                    true
                } else {
                    *slot == image(k)
                }
            })
        })
        .map(|a| {
            let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); a.iter().max().map_or(0, |x| x + 1)];
            for (k, &b) in a.iter().enumerate() {
                blocks[b].push(pts[k]);
            }
            NoncrossingPartitionB::normalized(n, blocks).expect("complete assignment")
        })
        .collect();
    out.sort();
    out
}
