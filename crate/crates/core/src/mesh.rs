//! Triangulations of a convex region given as a cyclic vertex list.
//!
//! A ring is a list of polygon indices sorted ascending, which is always a
//! valid cyclic order for points on a circle. Chord lists are kept sorted so
//! membership is a binary search.

use crate::polygon::Chord;

pub(crate) fn position(ring: &[usize], v: usize) -> Option<usize> {
    ring.binary_search(&v).ok()
}

/// True when `c` joins two cyclically consecutive vertices of `ring`.
pub(crate) fn is_boundary(ring: &[usize], c: Chord) -> bool {
    match (position(ring, c.lo()), position(ring, c.hi())) {
        (Some(p), Some(q)) => q - p == 1 || (p == 0 && q == ring.len() - 1),
        _ => false,
    }
}

pub(crate) fn adjacent(ring: &[usize], chords: &[Chord], a: usize, b: usize) -> bool {
    if a == b {
        return false;
    }
    let c = Chord::from_sorted(a.min(b), a.max(b));
    is_boundary(ring, c) || chords.binary_search(&c).is_ok()
}

/// The two vertices completing the triangles on either side of `c`.
///
/// Returns `None` when `c` is a boundary edge of the ring or the chord set
/// does not triangulate the ring around `c`.
pub(crate) fn apexes(ring: &[usize], chords: &[Chord], c: Chord) -> Option<[usize; 2]> {
    let p = position(ring, c.lo())?;
    let q = position(ring, c.hi())?;
    if is_boundary(ring, c) {
        return None;
    }
    let find = |side: &mut dyn Iterator<Item = &usize>| {
        side.copied()
            .find(|&v| adjacent(ring, chords, v, c.lo()) && adjacent(ring, chords, v, c.hi()))
    };
    let inner = find(&mut ring[p + 1..q].iter())?;
    let outer = find(&mut ring[q + 1..].iter().chain(ring[..p].iter()))?;
    Some([inner, outer])
}

/// Cut `ring` along every chord of `cuts` lying inside it. The cuts must be
/// pairwise noncrossing. Returned regions are sorted rings.
pub(crate) fn split_regions(ring: Vec<usize>, cuts: &[Chord]) -> Vec<Vec<usize>> {
    let mut done = Vec::new();
    let mut pending = vec![ring];
    while let Some(ring) = pending.pop() {
        let cut = cuts.iter().find(|c| {
            position(&ring, c.lo()).is_some()
                && position(&ring, c.hi()).is_some()
                && !is_boundary(&ring, **c)
        });
        match cut {
            None => done.push(ring),
            Some(c) => {
                let p = position(&ring, c.lo()).unwrap();
                let q = position(&ring, c.hi()).unwrap();
                let inner = ring[p..=q].to_vec();
                let mut outer: Vec<usize> =
                    ring[q..].iter().chain(ring[..=p].iter()).copied().collect();
                outer.sort_unstable();
                pending.push(inner);
                pending.push(outer);
            }
        }
    }
    done.sort();
    done
}

/// Every triangulation of the convex region `ring`, each as a sorted chord list.
#[cfg(test)]
pub fn triangulations(ring: &[usize]) -> Vec<Vec<Chord>> {
    fn rec(ring: &[usize]) -> Vec<Vec<Chord>> {
        let m = ring.len();
        if m < 3 {
            return vec![Vec::new()];
        }
        // the triangle on the edge (ring[0], ring[m-1]) has apex ring[k]
        let mut out = Vec::new();
        for k in 1..m - 1 {
            let left = rec(&ring[..=k]);
            let right = rec(&ring[k..]);
            for l in &left {
                for r in &right {
                    let mut chords = l.clone();
                    chords.extend_from_slice(r);
                    if k > 1 {
                        chords.push(Chord::from_sorted(ring[0], ring[k]));
                    }
                    if k < m - 2 {
                        chords.push(Chord::from_sorted(ring[k], ring[m - 1]));
                    }
                    out.push(chords);
                }
            }
        }
        out
    }
    let mut all = rec(ring);
    for t in &mut all {
        t.sort_unstable();
    }
    all
}
