//! Vertices and chords of the (2n+2)-gon and the (n+3)-gon.
//!
//! Everything is combinatorial: a vertex is its clockwise position on the
//! circle, and two chords cross when their endpoints interleave in cyclic
//! order. The barred/unbarred labels of the type-B polygon are a
//! presentation layer on top of the index.

use std::fmt;

use crate::error::{Error, Result};

/// Number of vertices of the type-B polygon for a given `n`.
pub fn order_b(n: usize) -> usize {
    2 * n + 2
}

/// Number of vertices of the type-A polygon for a given `n`.
pub fn order_a(n: usize) -> usize {
    n + 3
}

/// A vertex of the (2n+2)-gon, stored as its clockwise index in `0..2n+2`.
///
/// Index `k <= n` carries the unbarred label `k + 1`; index `k > n` carries
/// the barred label `k - n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexB(u8);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label {
    pub value: usize,
    pub barred: bool,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.barred {
            write!(f, "-{}", self.value)
        } else {
            write!(f, "{}", self.value)
        }
    }
}

impl VertexB {
    pub fn new(index: usize, n: usize) -> Result<Self> {
        let order = order_b(n);
        if index >= order {
            return Err(Error::VertexOutOfRange { index, order });
        }
        Ok(VertexB(index as u8))
    }

    pub fn unbarred(value: usize, n: usize) -> Result<Self> {
        Self::from_label(
            Label {
                value,
                barred: false,
            },
            n,
        )
    }

    pub fn barred(value: usize, n: usize) -> Result<Self> {
        Self::from_label(
            Label {
                value,
                barred: true,
            },
            n,
        )
    }

    pub fn from_label(label: Label, n: usize) -> Result<Self> {
        if label.value == 0 || label.value > n + 1 {
            return Err(Error::BadVertexLabel(label.to_string()));
        }
        let index = if label.barred {
            label.value + n
        } else {
            label.value - 1
        };
        Self::new(index, n)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn label(self, n: usize) -> Label {
        label_of(self.index(), n)
    }

    pub fn is_barred(self, n: usize) -> bool {
        self.index() > n
    }

    pub fn successor(self, n: usize) -> Self {
        VertexB(((self.index() + 1) % order_b(n)) as u8)
    }

    pub fn half_turn(self, n: usize) -> Self {
        VertexB(((self.index() + n + 1) % order_b(n)) as u8)
    }

    /// JSON token: `"j"` for unbarred `j`, `"-j"` for barred `j`.
    pub fn token(self, n: usize) -> String {
        self.label(n).to_string()
    }

    pub fn parse_token(token: &str, n: usize) -> Result<Self> {
        let bad = || Error::BadVertexLabel(token.to_string());
        let (digits, barred) = match token.strip_prefix('-') {
            Some(rest) => (rest, true),
            None => (token, false),
        };
        let value: usize = digits.parse().map_err(|_| bad())?;
        Self::from_label(Label { value, barred }, n).map_err(|_| bad())
    }
}

pub(crate) fn label_of(index: usize, n: usize) -> Label {
    if index <= n {
        Label {
            value: index + 1,
            barred: false,
        }
    } else {
        Label {
            value: index - n,
            barred: true,
        }
    }
}

/// A vertex of the (n+3)-gon, numbered clockwise from 0 to n+2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexA(u8);

impl VertexA {
    pub fn new(index: usize, n: usize) -> Result<Self> {
        let order = order_a(n);
        if index >= order {
            return Err(Error::VertexOutOfRange { index, order });
        }
        Ok(VertexA(index as u8))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChordKind {
    PureUnbarred,
    PureBarred,
    Mixed,
}

impl ChordKind {
    pub fn is_pure(self) -> bool {
        !matches!(self, ChordKind::Mixed)
    }
}

/// A straight segment between two distinct polygon vertices, endpoints
/// stored by index with `lo < hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chord {
    lo: u8,
    hi: u8,
}

impl Chord {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == b {
            return Err(Error::DegenerateChord(a));
        }
        Ok(Self::from_sorted(a.min(b), a.max(b)))
    }

    pub(crate) fn from_sorted(lo: usize, hi: usize) -> Self {
        debug_assert!(lo < hi);
        Chord {
            lo: lo as u8,
            hi: hi as u8,
        }
    }

    pub fn between(a: VertexB, b: VertexB) -> Result<Self> {
        Self::new(a.index(), b.index())
    }

    pub fn lo(self) -> usize {
        self.lo as usize
    }

    pub fn hi(self) -> usize {
        self.hi as usize
    }

    pub fn endpoints(self) -> (usize, usize) {
        (self.lo(), self.hi())
    }

    pub fn contains(self, v: usize) -> bool {
        self.lo() == v || self.hi() == v
    }

    pub fn other(self, v: usize) -> Option<usize> {
        if self.lo() == v {
            Some(self.hi())
        } else if self.hi() == v {
            Some(self.lo())
        } else {
            None
        }
    }

    /// Kind relative to the type-B labelling.
    pub fn kind(self, n: usize) -> ChordKind {
        match (self.lo() > n, self.hi() > n) {
            (false, false) => ChordKind::PureUnbarred,
            (true, true) => ChordKind::PureBarred,
            _ => ChordKind::Mixed,
        }
    }

    /// True when the endpoints are adjacent on a polygon with `order` vertices.
    pub fn is_polygon_edge(self, order: usize) -> bool {
        self.hi() - self.lo() == 1 || (self.lo() == 0 && self.hi() == order - 1)
    }

    pub fn is_diameter(self, n: usize) -> bool {
        self.hi() - self.lo() == n + 1
    }

    /// Type-B rendering, e.g. `2--5` for the chord joining 2 and 5̄.
    pub fn display_b(self, n: usize) -> String {
        format!("{}-{}", label_of(self.lo(), n), label_of(self.hi(), n))
    }

    pub fn tokens_b(self, n: usize) -> [String; 2] {
        [
            label_of(self.lo(), n).to_string(),
            label_of(self.hi(), n).to_string(),
        ]
    }
}

impl fmt::Display for Chord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}-#{}", self.lo, self.hi)
    }
}

/// Image of `c` under the half turn of the (2n+2)-gon.
pub fn symmetric_partner(c: Chord, n: usize) -> Chord {
    let order = order_b(n);
    let a = (c.lo() + n + 1) % order;
    let b = (c.hi() + n + 1) % order;
    Chord::from_sorted(a.min(b), a.max(b))
}

/// True iff the open segments intersect; chords sharing an endpoint never cross.
pub fn crosses(c1: Chord, c2: Chord) -> bool {
    let (a, b) = c1.endpoints();
    let (c, d) = c2.endpoints();
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

/// Counter-clockwise steps from `from` to `to` on the (2n+2)-gon.
pub fn ccw_distance(from: VertexB, to: VertexB, n: usize) -> usize {
    ccw_steps(from.index(), to.index(), order_b(n))
}

pub(crate) fn ccw_steps(from: usize, to: usize, order: usize) -> usize {
    (from + order - to) % order
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ub(v: usize, n: usize) -> VertexB {
        VertexB::unbarred(v, n).unwrap()
    }

    fn bb(v: usize, n: usize) -> VertexB {
        VertexB::barred(v, n).unwrap()
    }

    #[test]
    fn labels_round_trip() {
        let n = 3;
        for k in 0..order_b(n) {
            let v = VertexB::new(k, n).unwrap();
            assert_eq!(VertexB::from_label(v.label(n), n).unwrap(), v);
            assert_eq!(VertexB::parse_token(&v.token(n), n).unwrap(), v);
        }
        assert_eq!(ub(1, n).index(), 0);
        assert_eq!(ub(4, n).index(), 3);
        assert_eq!(bb(1, n).index(), 4);
        assert_eq!(bb(4, n).index(), 7);
        assert_eq!(bb(4, n).successor(n), ub(1, n));
        assert!(VertexB::parse_token("5", n).is_err());
        assert!(VertexB::parse_token("-0", n).is_err());
        assert!(VertexB::parse_token("x", n).is_err());
    }

    #[test]
    fn partner_examples() {
        let n = 3;
        let c = Chord::between(ub(1, n), ub(4, n)).unwrap();
        assert_eq!(
            symmetric_partner(c, n),
            Chord::between(bb(1, n), bb(4, n)).unwrap()
        );
        let d = Chord::between(ub(1, n), bb(1, n)).unwrap();
        assert_eq!(symmetric_partner(d, n), d);
        let n = 6;
        let c = Chord::between(ub(3, n), ub(4, n)).unwrap();
        assert_eq!(
            symmetric_partner(c, n),
            Chord::between(bb(3, n), bb(4, n)).unwrap()
        );
    }

    #[test]
    fn crossing_examples() {
        let n = 3;
        let c13 = Chord::between(ub(1, n), ub(3, n)).unwrap();
        let c24 = Chord::between(ub(2, n), ub(4, n)).unwrap();
        assert!(crosses(c13, c24));
        let c3b1 = Chord::between(ub(3, n), bb(1, n)).unwrap();
        assert!(!crosses(c13, c3b1));
        let d1 = Chord::between(ub(1, n), bb(1, n)).unwrap();
        let d2 = Chord::between(ub(2, n), bb(2, n)).unwrap();
        assert!(crosses(d1, d2));
    }

    #[test]
    fn distance_examples() {
        assert_eq!(ccw_distance(ub(4, 6), ub(2, 6), 6), 2);
        assert_eq!(ccw_distance(ub(3, 6), ub(3, 6), 6), 0);
        assert_eq!(ccw_distance(ub(1, 3), ub(2, 3), 3), 7);
    }

    #[test]
    fn kinds() {
        let n = 3;
        assert_eq!(
            Chord::between(ub(1, n), ub(3, n)).unwrap().kind(n),
            ChordKind::PureUnbarred
        );
        assert_eq!(
            Chord::between(bb(1, n), bb(3, n)).unwrap().kind(n),
            ChordKind::PureBarred
        );
        assert_eq!(
            Chord::between(ub(1, n), bb(3, n)).unwrap().kind(n),
            ChordKind::Mixed
        );
        assert!(Chord::new(2, 2).is_err());
        assert!(Chord::new(0, 7).unwrap().is_polygon_edge(8));
        assert!(Chord::new(3, 4).unwrap().is_polygon_edge(8));
        assert!(!Chord::new(0, 4).unwrap().is_polygon_edge(8));
    }

    fn chord_strategy() -> impl Strategy<Value = (usize, Chord)> {
        (1usize..7).prop_flat_map(|n| {
            let order = order_b(n);
            (Just(n), 0..order, 0..order)
                .prop_filter("distinct", |(_, a, b)| a != b)
                .prop_map(|(n, a, b)| (n, Chord::new(a, b).unwrap()))
        })
    }

    proptest! {
        #[test]
        fn partner_is_involution((n, c) in chord_strategy()) {
            prop_assert_eq!(symmetric_partner(symmetric_partner(c, n), n), c);
        }

        #[test]
        fn chord_never_crosses_its_partner((n, c) in chord_strategy()) {
            if !c.is_diameter(n) {
                prop_assert!(!crosses(c, symmetric_partner(c, n)));
            }
        }

        #[test]
        fn crossing_is_symmetric((n, c) in chord_strategy(), a in 0usize..16, b in 0usize..16) {
            let order = order_b(n);
            let (a, b) = (a % order, b % order);
            prop_assume!(a != b);
            let d = Chord::new(a, b).unwrap();
            prop_assert_eq!(crosses(c, d), crosses(d, c));
        }

        #[test]
        fn distances_sum_to_order(n in 1usize..8, a in 0usize..16, b in 0usize..16) {
            let order = order_b(n);
            let (a, b) = (a % order, b % order);
            prop_assume!(a != b);
            let (va, vb) = (VertexB::new(a, n).unwrap(), VertexB::new(b, n).unwrap());
            prop_assert_eq!(ccw_distance(va, vb, n) + ccw_distance(vb, va, n), order);
        }
    }
}
