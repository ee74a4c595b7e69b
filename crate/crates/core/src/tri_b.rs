//! Centrally symmetric triangulations of the (2n+2)-gon.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::mesh;
use crate::polygon::{crosses, label_of, order_b, symmetric_partner, Chord, ChordKind, VertexB};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChordColor {
    Red,
    Green,
}

/// A centrally symmetric triangulation, stored as its sorted internal chords.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TriangulationB {
    n: usize,
    chords: Vec<Chord>,
}

/// The convex hull of some polygon vertices, as a sorted ring of indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Region {
    n: usize,
    vertices: Vec<usize>,
}

/// What the clockwise scan at vertex `i` finds: a chord of the
/// triangulation, or the edge segment to the counter-clockwise neighbour.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Link {
    Edge { from: usize, to: usize },
    Chord(Chord),
}

impl Link {
    pub fn as_chord(self) -> Option<Chord> {
        match self {
            Link::Chord(c) => Some(c),
            Link::Edge { .. } => None,
        }
    }

    /// The endpoint other than `from` (vertex index).
    pub fn far_end(self, from: usize) -> usize {
        match self {
            Link::Edge { to, .. } => to,
            Link::Chord(c) => c.other(from).expect("link starts at its vertex"),
        }
    }

    /// Pure or mixed, classifying edge segments by their endpoints as well.
    pub fn kind(self, n: usize) -> ChordKind {
        match self {
            Link::Chord(c) => c.kind(n),
            Link::Edge { from, to } => Chord::from_sorted(from.min(to), from.max(to)).kind(n),
        }
    }
}

impl Region {
    pub fn new(n: usize, mut vertices: Vec<usize>) -> Result<Self> {
        let order = order_b(n);
        if let Some(&bad) = vertices.iter().find(|&&v| v >= order) {
            return Err(Error::VertexOutOfRange { index: bad, order });
        }
        vertices.sort_unstable();
        vertices.dedup();
        Ok(Region { n, vertices })
    }

    pub fn whole(n: usize) -> Self {
        Region {
            n,
            vertices: (0..order_b(n)).collect(),
        }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> Vec<String> {
        self.vertices
            .iter()
            .map(|&v| label_of(v, self.n).to_string())
            .collect()
    }

    /// Color of chord `c` of a triangulation `chords` of this region.
    pub fn color_in(&self, chords: &[Chord], c: Chord) -> Result<ChordColor> {
        let quad = self.quad_in(chords, c)?;
        Ok(color_in_quad(c, &quad.vertices, self.n))
    }

    pub fn quad_in(&self, chords: &[Chord], c: Chord) -> Result<Region> {
        if mesh::is_boundary(&self.vertices, c) {
            return Err(Error::PolygonEdge(c.display_b(self.n)));
        }
        if chords.binary_search(&c).is_err() {
            return Err(Error::NotAChord(c.display_b(self.n)));
        }
        let [x, y] = mesh::apexes(&self.vertices, chords, c).ok_or_else(|| {
            Error::InvalidTriangulation(format!("no quadrilateral around {}", c.display_b(self.n)))
        })?;
        Region::new(self.n, vec![c.lo(), c.hi(), x, y])
    }
}

/// Red/green rule on the quadrilateral `quad` (vertex indices) around `c`.
pub(crate) fn color_in_quad(c: Chord, quad: &[usize], n: usize) -> ChordColor {
    let lo = label_of(c.lo(), n);
    let hi = label_of(c.hi(), n);
    let others = quad
        .iter()
        .filter(|&&v| !c.contains(v))
        .map(|&v| label_of(v, n));
    let red = if c.kind(n).is_pure() {
        let top = lo.value.max(hi.value);
        others
            .into_iter()
            .any(|l| l.barred == lo.barred && l.value > top)
    } else {
        let (u, b) = if lo.barred { (hi, lo) } else { (lo, hi) };
        others
            .into_iter()
            .any(|l| (!l.barred && l.value > u.value) || (l.barred && l.value > b.value))
    };
    if red {
        ChordColor::Red
    } else {
        ChordColor::Green
    }
}

/// The unique all-green triangulation of a region: fans to the largest
/// unbarred and largest barred vertex, joined by the chord between them.
pub fn green_complete(m: &Region) -> Vec<Chord> {
    let ring = &m.vertices;
    if ring.len() < 3 {
        return Vec::new();
    }
    let n = m.n;
    let unbarred: Vec<usize> = ring.iter().copied().filter(|&v| v <= n).collect();
    let barred: Vec<usize> = ring.iter().copied().filter(|&v| v > n).collect();
    let mut out = Vec::new();
    for side in [&unbarred, &barred] {
        if let Some(&top) = side.last() {
            out.extend(
                side.iter()
                    .filter(|&&v| v != top)
                    .map(|&v| Chord::from_sorted(v, top)),
            );
        }
    }
    if let (Some(&u), Some(&b)) = (unbarred.last(), barred.last()) {
        out.push(Chord::from_sorted(u, b));
    }
    out.retain(|&c| !mesh::is_boundary(ring, c));
    out.sort_unstable();
    out
}

impl TriangulationB {
    /// Validates maximality, noncrossing and half-turn symmetry.
    pub fn new(n: usize, chords: impl IntoIterator<Item = Chord>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroSize);
        }
        let order = order_b(n);
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
                return Err(Error::PolygonEdge(c.display_b(n)));
            }
        }
        if chords.len() != 2 * n - 1 {
            return Err(Error::InvalidTriangulation(format!(
                "expected {} internal chords, got {}",
                2 * n - 1,
                chords.len()
            )));
        }
        for (k, &a) in chords.iter().enumerate() {
            if let Some(&b) = chords[k + 1..].iter().find(|&&b| crosses(a, b)) {
                return Err(Error::InvalidTriangulation(format!(
                    "chords {} and {} cross",
                    a.display_b(n),
                    b.display_b(n)
                )));
            }
            if chords.binary_search(&symmetric_partner(a, n)).is_err() {
                return Err(Error::InvalidTriangulation(format!(
                    "not symmetric: partner of {} missing",
                    a.display_b(n)
                )));
            }
        }
        Ok(TriangulationB { n, chords })
    }

    pub(crate) fn from_sorted_unchecked(n: usize, chords: Vec<Chord>) -> Self {
        debug_assert!(chords.windows(2).all(|w| w[0] < w[1]));
        TriangulationB { n, chords }
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

    /// Joined by a chord or a polygon edge.
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        if a == b {
            return false;
        }
        let c = Chord::from_sorted(a.min(b), a.max(b));
        c.is_polygon_edge(order_b(self.n)) || self.has_chord(c)
    }

    pub fn has_triangle(&self, a: usize, b: usize, c: usize) -> bool {
        self.adjacent(a, b) && self.adjacent(b, c) && self.adjacent(a, c)
    }

    /// The quadrilateral formed by the two triangles adjacent to `c`.
    pub fn quad_of(&self, c: Chord) -> Result<Region> {
        Region::whole(self.n).quad_in(&self.chords, c)
    }

    pub fn color(&self, c: Chord) -> Result<ChordColor> {
        let quad = self.quad_of(c)?;
        Ok(color_in_quad(c, quad.vertices(), self.n))
    }

    /// Scan clockwise from 1̄ for the first vertex joined to `i`, stopping
    /// before the counter-clockwise neighbour of `i`.
    pub fn c_i(&self, i: usize) -> Link {
        assert!((1..=self.n).contains(&i), "c_i needs 1 <= i <= n");
        let order = order_b(self.n);
        let at = i - 1;
        let stop = (at + order - 1) % order;
        let mut v = self.n + 1;
        while v != stop {
            if self.has_chord(Chord::from_sorted(at.min(v), at.max(v))) {
                return Link::Chord(Chord::from_sorted(at.min(v), at.max(v)));
            }
            v = (v + 1) % order;
        }
        Link::Edge { from: at, to: stop }
    }

    /// Chord-valued `c_i` together with their symmetric partners.
    pub fn red_set(&self) -> Vec<Chord> {
        let mut reds = BTreeSet::new();
        for i in 1..=self.n {
            if let Some(c) = self.c_i(i).as_chord() {
                reds.insert(c);
                reds.insert(symmetric_partner(c, self.n));
            }
        }
        reds.into_iter().collect()
    }

    /// The unique triangulation whose red chords are exactly `reds`.
    pub fn from_red_set(n: usize, reds: &[Chord]) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroSize);
        }
        let order = order_b(n);
        let mut reds = reds.to_vec();
        reds.sort_unstable();
        reds.dedup();
        for (k, &a) in reds.iter().enumerate() {
            if a.hi() >= order {
                return Err(Error::VertexOutOfRange {
                    index: a.hi(),
                    order,
                });
            }
            if a.is_polygon_edge(order) {
                return Err(Error::PolygonEdge(a.display_b(n)));
            }
            if let Some(&b) = reds[k + 1..].iter().find(|&&b| crosses(a, b)) {
                return Err(Error::CrossingRedChords(a.display_b(n), b.display_b(n)));
            }
            if reds.binary_search(&symmetric_partner(a, n)).is_err() {
                return Err(Error::AsymmetricRedSet(a.display_b(n)));
            }
        }
        let mut chords = reds.clone();
        for ring in mesh::split_regions((0..order).collect(), &reds) {
            chords.extend(green_complete(&Region { n, vertices: ring }));
        }
        let t = TriangulationB::new(n, chords).map_err(|_| Error::UnrealizableRedSet)?;
        if t.red_set() != reds {
            return Err(Error::UnrealizableRedSet);
        }
        Ok(t)
    }

    /// Swap the symmetric pair {c, c̄} for the other diagonals of their
    /// quadrilaterals. A diameter is swapped on its own.
    pub fn flip(&self, c: Chord) -> Result<Self> {
        let n = self.n;
        let quad = self.quad_of(c)?;
        let others: Vec<usize> = quad
            .vertices()
            .iter()
            .copied()
            .filter(|&v| !c.contains(v))
            .collect();
        let d = Chord::from_sorted(others[0], others[1]);
        let partner = symmetric_partner(c, n);
        let mut chords: Vec<Chord> = self
            .chords
            .iter()
            .copied()
            .filter(|&x| x != c && x != partner)
            .collect();
        chords.push(d);
        chords.push(symmetric_partner(d, n));
        chords.sort_unstable();
        chords.dedup();
        let t = TriangulationB::from_sorted_unchecked(n, chords);
        debug_assert!(TriangulationB::new(n, t.chords.clone()).is_ok());
        Ok(t)
    }

    /// The diagonal that replaces `c` under `flip`.
    pub fn flipped_diagonal(&self, c: Chord) -> Result<Chord> {
        let quad = self.quad_of(c)?;
        let others: Vec<usize> = quad
            .vertices()
            .iter()
            .copied()
            .filter(|&v| !c.contains(v))
            .collect();
        Ok(Chord::from_sorted(others[0], others[1]))
    }

    /// One representative of each symmetric pair of chords.
    pub fn chord_pairs(&self) -> Vec<Chord> {
        self.chords
            .iter()
            .copied()
            .filter(|&c| c <= symmetric_partner(c, self.n))
            .collect()
    }

    /// Triangulations reached by flipping a green pair; these cover `self`.
    pub fn green_flips(&self) -> Vec<TriangulationB> {
        let mut out: Vec<_> = self
            .chord_pairs()
            .into_iter()
            .filter(|&c| self.color(c) == Ok(ChordColor::Green))
            .map(|c| self.flip(c).expect("internal chord"))
            .collect();
        out.sort();
        out
    }

    /// Bottom element: the all-green triangulation of the whole polygon.
    pub fn bottom(n: usize) -> Result<Self> {
        Self::from_red_set(n, &[])
    }

    pub fn to_json(&self) -> serde_json::Value {
        let chords: Vec<[String; 2]> = self.chords.iter().map(|c| c.tokens_b(self.n)).collect();
        serde_json::json!({ "n": self.n, "chords": chords })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let bad = |m: &str| Error::InvalidTriangulation(m.to_string());
        let n = value
            .get("n")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| bad("missing integer field \"n\""))? as usize;
        if n == 0 {
            return Err(Error::ZeroSize);
        }
        let list = value
            .get("chords")
            .and_then(|v| v.as_array())
            .ok_or_else(|| bad("missing array field \"chords\""))?;
        let mut chords = Vec::with_capacity(list.len());
        for item in list {
            let pair = item
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| bad("chord must be a two-element array"))?;
            let mut ends = [0usize; 2];
            for (slot, tok) in ends.iter_mut().zip(pair) {
                let tok = match tok {
                    serde_json::Value::String(s) => s.clone(),
                    serde_json::Value::Number(x) => x.to_string(),
                    _ => return Err(bad("vertex must be a string like \"3\" or \"-3\"")),
                };
                *slot = VertexB::parse_token(&tok, n)?.index();
            }
            chords.push(Chord::new(ends[0], ends[1])?);
        }
        TriangulationB::new(n, chords)
    }
}

impl fmt::Display for TriangulationB {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.chords.iter().map(|c| c.display_b(self.n)).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Bracket-order cover realized by a single green flip.
pub fn covers_by_flip(s: &TriangulationB, t: &TriangulationB) -> bool {
    s.n == t.n && s.green_flips().iter().any(|x| x == t)
}

/// All triangulations, found by breadth-first search over symmetric flips.
pub fn enumerate_by_flips(n: usize) -> Result<Vec<TriangulationB>> {
    let start = TriangulationB::bottom(n)?;
    let mut seen: HashSet<TriangulationB> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(t) = queue.pop_front() {
        for c in t.chord_pairs() {
            let next = t.flip(c)?;
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mut all: Vec<_> = seen.into_iter().collect();
    all.sort();
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::VertexB;

    fn v(tok: &str, n: usize) -> usize {
        VertexB::parse_token(tok, n).unwrap().index()
    }

    fn ch(a: &str, b: &str, n: usize) -> Chord {
        Chord::new(v(a, n), v(b, n)).unwrap()
    }

    fn top3() -> TriangulationB {
        let n = 3;
        TriangulationB::new(
            n,
            [
                ch("1", "-1", n),
                ch("2", "-1", n),
                ch("3", "-1", n),
                ch("1", "-2", n),
                ch("1", "-3", n),
            ],
        )
        .unwrap()
    }

    fn bottom3() -> TriangulationB {
        let n = 3;
        TriangulationB::new(
            n,
            [
                ch("1", "4", n),
                ch("2", "4", n),
                ch("-1", "-4", n),
                ch("-2", "-4", n),
                ch("4", "-4", n),
            ],
        )
        .unwrap()
    }

    /// Chord set read off the red chords 2-2̄ and 5-2 (plus partners)
    /// by completing each region greenly by hand.
    pub(crate) fn sample_b() -> TriangulationB {
        let n = 6;
        let pairs = [
            ("2", "-2"),
            ("2", "5"),
            ("-2", "-5"),
            ("3", "5"),
            ("-3", "-5"),
            ("2", "7"),
            ("5", "7"),
            ("7", "-2"),
            ("-2", "-7"),
            ("-5", "-7"),
            ("-7", "2"),
        ];
        TriangulationB::new(n, pairs.iter().map(|(a, b)| ch(a, b, n))).unwrap()
    }

    #[test]
    fn validation_rejects_bad_sets() {
        let n = 3;
        assert!(TriangulationB::new(n, [ch("1", "-1", n)]).is_err());
        // asymmetric
        let mut chords = bottom3().chords().to_vec();
        chords[0] = ch("1", "3", n);
        assert!(TriangulationB::new(n, chords).is_err());
        assert!(matches!(
            TriangulationB::new(n, [ch("1", "2", n)]),
            Err(Error::PolygonEdge(_))
        ));
    }

    #[test]
    fn quad_examples() {
        let n = 3;
        let q = top3().quad_of(ch("2", "-1", n)).unwrap();
        assert_eq!(q.labels(), ["1", "2", "3", "-1"]);
        assert!(matches!(
            top3().quad_of(ch("1", "2", n)),
            Err(Error::PolygonEdge(_))
        ));
        assert!(matches!(
            top3().quad_of(ch("2", "4", n)),
            Err(Error::NotAChord(_))
        ));
        let q = sample_b().quad_of(ch("5", "2", 6)).unwrap();
        assert_eq!(q.labels(), ["2", "3", "5", "7"]);
    }

    #[test]
    fn colors() {
        let n = 6;
        let f = sample_b();
        let reds = [("2", "-2"), ("2", "5"), ("-2", "-5")];
        for &c in f.chords() {
            let expected = if reds.iter().any(|(a, b)| ch(a, b, n) == c) {
                ChordColor::Red
            } else {
                ChordColor::Green
            };
            assert_eq!(f.color(c).unwrap(), expected, "{}", c.display_b(n));
        }
        for &c in bottom3().chords() {
            assert_eq!(bottom3().color(c).unwrap(), ChordColor::Green);
        }
        for &c in top3().chords() {
            assert_eq!(top3().color(c).unwrap(), ChordColor::Red);
        }
    }

    #[test]
    fn c_i_examples() {
        let f = sample_b();
        assert_eq!(f.c_i(2), Link::Chord(ch("2", "-2", 6)));
        assert_eq!(f.c_i(5), Link::Chord(ch("5", "2", 6)));
        for i in [1, 3, 4, 6] {
            assert!(f.c_i(i).as_chord().is_none(), "c_{i}");
        }
        assert_eq!(f.c_i(1), Link::Edge { from: 0, to: 13 });
        for i in 1..=3 {
            assert!(bottom3().c_i(i).as_chord().is_none());
        }
        let t = top3();
        assert_eq!(t.c_i(1), Link::Chord(ch("1", "-1", 3)));
        assert_eq!(t.c_i(2), Link::Chord(ch("2", "-1", 3)));
        assert_eq!(t.c_i(3), Link::Chord(ch("3", "-1", 3)));
    }

    #[test]
    fn red_sets() {
        assert!(bottom3().red_set().is_empty());
        assert_eq!(top3().red_set(), top3().chords());
        let f = sample_b();
        let mut expected = vec![ch("2", "-2", 6), ch("2", "5", 6), ch("-2", "-5", 6)];
        expected.sort();
        assert_eq!(f.red_set(), expected);
    }

    #[test]
    fn green_completion_examples() {
        let n = 3;
        let whole = green_complete(&Region::whole(n));
        assert_eq!(whole, bottom3().chords());
        let tri = Region::new(n, vec![v("1", n), v("2", n), v("3", n)]).unwrap();
        assert!(green_complete(&tri).is_empty());
        let quad = Region::new(n, vec![v("1", n), v("2", n), v("3", n), v("-1", n)]).unwrap();
        assert_eq!(green_complete(&quad), vec![ch("1", "3", n)]);
        assert!(green_complete(&Region::new(n, vec![0, 5]).unwrap()).is_empty());
    }

    #[test]
    fn red_set_round_trip_examples() {
        assert_eq!(TriangulationB::from_red_set(3, &[]).unwrap(), bottom3());
        assert_eq!(
            TriangulationB::from_red_set(3, top3().chords()).unwrap(),
            top3()
        );
        assert_eq!(
            TriangulationB::from_red_set(6, &sample_b().red_set()).unwrap(),
            sample_b()
        );
    }

    #[test]
    fn red_set_errors_are_distinct() {
        let n = 3;
        let crossing = [ch("1", "-1", n), ch("2", "-2", n)];
        assert!(matches!(
            TriangulationB::from_red_set(n, &crossing),
            Err(Error::CrossingRedChords(..))
        ));
        assert!(matches!(
            TriangulationB::from_red_set(n, &[ch("1", "3", n)]),
            Err(Error::AsymmetricRedSet(_))
        ));
        // a green chord of the bottom cannot be a red set on its own
        assert!(matches!(
            TriangulationB::from_red_set(n, &[ch("4", "-4", n)]),
            Err(Error::UnrealizableRedSet)
        ));
    }

    #[test]
    fn flips() {
        let n = 3;
        let b = bottom3();
        let d = ch("4", "-4", n);
        let t = b.flip(d).unwrap();
        let new = ch("1", "-1", n);
        assert!(t.has_chord(new) && !t.has_chord(d));
        assert_eq!(t.color(new).unwrap(), ChordColor::Red);
        assert_eq!(t.flip(new).unwrap(), b);
        assert_eq!(b.green_flips().len(), 3);
        assert!(b.green_flips().iter().all(|t| covers_by_flip(&b, t)));
        assert!(!covers_by_flip(&b, &b));
        assert!(b.flip(ch("1", "2", n)).is_err());
    }

    #[test]
    fn flip_reverses_colors() {
        for n in 1..=4 {
            for t in enumerate_by_flips(n).unwrap() {
                for c in t.chord_pairs() {
                    let d = t.flipped_diagonal(c).unwrap();
                    let s = t.flip(c).unwrap();
                    assert_ne!(t.color(c).unwrap(), s.color(d).unwrap());
                }
            }
        }
    }

    #[test]
    fn red_set_is_the_red_chords() {
        for n in 1..=5 {
            for t in enumerate_by_flips(n).unwrap() {
                let reds = t.red_set();
                for &c in t.chords() {
                    let expected = if reds.contains(&c) {
                        ChordColor::Red
                    } else {
                        ChordColor::Green
                    };
                    assert_eq!(t.color(c).unwrap(), expected);
                }
                assert_eq!(TriangulationB::from_red_set(n, &reds).unwrap(), t);
            }
        }
    }

    #[test]
    fn flip_enumeration_counts() {
        let expected = [2, 6, 20, 70, 252];
        for (n, &e) in (1..=5).zip(&expected) {
            assert_eq!(enumerate_by_flips(n).unwrap().len(), e);
        }
    }

    #[test]
    fn green_triangulation_is_unique_for_every_region() {
        // every region of the octagon, n = 3
        let n = 3;
        for mask in 0u32..(1 << 8) {
            if mask.count_ones() < 3 {
                continue;
            }
            let ring: Vec<usize> = (0..8).filter(|b| mask >> b & 1 == 1).collect();
            let region = Region::new(n, ring.clone()).unwrap();
            let all_green: Vec<_> = mesh::triangulations(&ring)
                .into_iter()
                .filter(|t| {
                    t.iter()
                        .all(|&c| region.color_in(t, c).unwrap() == ChordColor::Green)
                })
                .collect();
            assert_eq!(
                all_green,
                vec![green_complete(&region)],
                "region {:?}",
                region.labels()
            );
        }
    }

    #[test]
    fn json_round_trip() {
        let f = sample_b();
        let j = f.to_json();
        assert_eq!(TriangulationB::from_json(&j).unwrap(), f);
        let bad = serde_json::json!({"n": 3, "chords": [["1", "9"]]});
        assert!(TriangulationB::from_json(&bad).is_err());
    }
}
