//! Bracket-vector coordinates for the type-B Tamari lattice.
//!
//! Entry `r_i` records how far counter-clockwise the first red chord at
//! vertex `i` reaches, with `∞` once it crosses to the barred side. The
//! order is componentwise; joins and meets go through the closure maps
//! [`up`] and [`down`].

use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::polygon::{ccw_steps, order_b, symmetric_partner, Chord};
use crate::tri_b::{Link, TriangulationB};

/// A value in `[0, n-1] ∪ {∞}`; `∞` exceeds every integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNat {
    Fin(u8),
    Inf,
}

pub use ExtNat::{Fin, Inf};

impl ExtNat {
    pub fn fin(x: usize) -> Self {
        Fin(x as u8)
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Fin(x) => Some(x as usize),
            Inf => None,
        }
    }

    pub fn is_inf(self) -> bool {
        self == Inf
    }

    /// `∞ + k = ∞`.
    pub fn plus(self, k: usize) -> Self {
        match self {
            Fin(x) => Fin((x as usize + k) as u8),
            Inf => Inf,
        }
    }

    /// Collapse finite values `>= n` to `∞`.
    fn clamp(self, n: usize) -> Self {
        match self {
            Fin(x) if x as usize >= n => Inf,
            other => other,
        }
    }

    /// Every admissible value for size `n`, ascending.
    pub fn range(n: usize) -> impl Iterator<Item = ExtNat> + Clone {
        (0..n).map(ExtNat::fin).chain(std::iter::once(Inf))
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fin(x) => write!(f, "{x}"),
            Inf => f.write_str("inf"),
        }
    }
}

impl Serialize for ExtNat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Fin(x) => s.serialize_u8(*x),
            Inf => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtNat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = ExtNat;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a non-negative integer or \"inf\"")
            }
            fn visit_u64<E: de::Error>(self, x: u64) -> std::result::Result<ExtNat, E> {
                u8::try_from(x)
                    .map(Fin)
                    .map_err(|_| E::custom(format!("entry {x} is too large")))
            }
            fn visit_i64<E: de::Error>(self, x: i64) -> std::result::Result<ExtNat, E> {
                u64::try_from(x)
                    .map_err(|_| E::custom(format!("entry {x} is negative")))
                    .and_then(|x| self.visit_u64(x))
            }
            fn visit_str<E: de::Error>(self, s: &str) -> std::result::Result<ExtNat, E> {
                match s {
                    "inf" | "∞" => Ok(Inf),
                    _ => Err(E::custom(format!("unknown entry {s:?}"))),
                }
            }
        }
        d.deserialize_any(V)
    }
}

/// Which of the two defining conditions fails, with a 1-based witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `r_i <= r_j - (j - i)` fails although the right side is non-negative.
    Spacing { i: usize, j: usize },
    /// `∞ > r_i >= i` but `r_{n+i-r_i}` is finite.
    Diameter { i: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Spacing { i, j } => write!(f, "(i) fails for the pair ({i}, {j})"),
            Violation::Diameter { i } => write!(f, "(ii) fails at position {i}"),
        }
    }
}

/// An unconstrained n-tuple over `[0, n-1] ∪ {∞}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RawVector(pub Vec<ExtNat>);

impl RawVector {
    pub fn n(&self) -> usize {
        self.0.len()
    }

    fn check_range(&self) -> Result<()> {
        let n = self.n();
        if n == 0 {
            return Err(Error::ZeroSize);
        }
        for (k, e) in self.0.iter().enumerate() {
            if let Fin(x) = e {
                if *x as usize >= n {
                    return Err(Error::EntryOutOfRange {
                        position: k + 1,
                        value: *x as usize,
                        n,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn spacing_violation(&self) -> Option<Violation> {
        spacing_violation(&self.0)
    }

    pub fn diameter_violation(&self) -> Option<Violation> {
        diameter_violation(&self.0)
    }

    /// Satisfies condition (i).
    pub fn in_mi(&self) -> bool {
        self.spacing_violation().is_none()
    }

    /// Satisfies condition (ii).
    pub fn in_mii(&self) -> bool {
        self.diameter_violation().is_none()
    }

    /// Every tuple of length `n`, in lexicographic order.
    pub fn all(n: usize) -> Vec<RawVector> {
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<ExtNat>| {
                    ExtNat::range(n).map(move |e| {
                        let mut p = prefix.clone();
                        p.push(e);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(RawVector).collect()
    }
}

fn spacing_violation(r: &[ExtNat]) -> Option<Violation> {
    for j in 1..r.len() {
        if let Some(rj) = r[j].finite() {
            for (i, &ri) in r.iter().enumerate().take(j) {
                let gap = j - i;
                if rj >= gap && ri > ExtNat::fin(rj - gap) {
                    return Some(Violation::Spacing { i: i + 1, j: j + 1 });
                }
            }
        }
    }
    None
}

fn diameter_violation(r: &[ExtNat]) -> Option<Violation> {
    let n = r.len();
    for (k, e) in r.iter().enumerate() {
        let i = k + 1;
        if let Some(x) = e.finite() {
            if x >= i && !r[n + i - x - 1].is_inf() {
                return Some(Violation::Diameter { i });
            }
        }
    }
    None
}

/// Check both conditions; the first violation found is reported.
pub fn validate(v: &RawVector) -> std::result::Result<(), Violation> {
    match v.spacing_violation().or_else(|| v.diameter_violation()) {
        Some(x) => Err(x),
        None => Ok(()),
    }
}

/// A valid type-B bracket vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct BracketVectorB(Vec<ExtNat>);

impl<'de> Deserialize<'de> for BracketVectorB {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<ExtNat>::deserialize(d)?;
        BracketVectorB::new(entries).map_err(de::Error::custom)
    }
}

impl BracketVectorB {
    pub fn new(entries: Vec<ExtNat>) -> Result<Self> {
        let raw = RawVector(entries);
        raw.check_range()?;
        validate(&raw).map_err(Error::InvalidBracketVector)?;
        Ok(BracketVectorB(raw.0))
    }

    pub(crate) fn new_unchecked(entries: Vec<ExtNat>) -> Self {
        debug_assert!(BracketVectorB::new(entries.clone()).is_ok(), "{entries:?}");
        BracketVectorB(entries)
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let entries: Vec<ExtNat> =
            serde_json::from_str(text).map_err(|e| Error::MalformedJson(e.to_string()))?;
        Self::new(entries)
    }

    pub fn bottom(n: usize) -> Self {
        BracketVectorB(vec![Fin(0); n])
    }

    pub fn top(n: usize) -> Self {
        BracketVectorB(vec![Inf; n])
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[ExtNat] {
        &self.0
    }

    /// 1-based entry `r_i`.
    pub fn get(&self, i: usize) -> ExtNat {
        self.0[i - 1]
    }

    pub fn to_raw(&self) -> RawVector {
        RawVector(self.0.clone())
    }

    /// Same vector with position `i` (1-based) replaced, if still valid.
    pub fn with_entry(&self, i: usize, value: ExtNat) -> Option<Self> {
        let mut e = self.0.clone();
        e[i - 1] = value;
        let raw = RawVector(e);
        validate(&raw).ok().map(|_| BracketVectorB(raw.0))
    }

    pub fn leq(&self, other: &Self) -> bool {
        leq(self, other)
    }

    /// Positions (1-based) where the two vectors differ.
    pub fn differences(&self, other: &Self) -> Vec<usize> {
        (1..=self.n())
            .filter(|&i| self.get(i) != other.get(i))
            .collect()
    }

    /// `self ⋖ other`.
    pub fn covered_by(&self, other: &Self) -> bool {
        covers(self, other)
    }

    /// For each position, the least valid vector obtained by raising that
    /// position alone; these are exactly the upper covers.
    pub fn upper_covers(&self) -> Vec<Self> {
        let n = self.n();
        (1..=n)
            .filter_map(|i| {
                ExtNat::range(n)
                    .filter(|&x| x > self.get(i))
                    .find_map(|x| self.with_entry(i, x))
            })
            .collect()
    }

    /// The raised vector at a single position, if any.
    pub fn raise_at(&self, i: usize) -> Option<Self> {
        let n = self.n();
        ExtNat::range(n)
            .filter(|&x| x > self.get(i))
            .find_map(|x| self.with_entry(i, x))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain array")
    }
}

impl fmt::Display for BracketVectorB {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl std::ops::Deref for BracketVectorB {
    type Target = [ExtNat];
    fn deref(&self) -> &[ExtNat] {
        &self.0
    }
}

/// Componentwise order with `∞` maximal.
pub fn leq(a: &BracketVectorB, b: &BracketVectorB) -> bool {
    a.n() == b.n() && a.0.iter().zip(&b.0).all(|(x, y)| x <= y)
}

/// `a ⋖ b`: one differing coordinate and no valid vector strictly between.
pub fn covers(a: &BracketVectorB, b: &BracketVectorB) -> bool {
    if a.n() != b.n() || !leq(a, b) {
        return false;
    }
    let diff = a.differences(b);
    if diff.len() != 1 {
        return false;
    }
    let k = diff[0];
    let (lo, hi) = (a.get(k), b.get(k));
    !ExtNat::range(a.n())
        .filter(|&x| x > lo && x < hi)
        .any(|x| a.with_entry(k, x).is_some())
}

/// Bracket vector of a triangulation.
pub fn encode(t: &TriangulationB) -> BracketVectorB {
    let n = t.n();
    let order = order_b(n);
    let entries = (1..=n)
        .map(|i| {
            let at = i - 1;
            let far = t.c_i(i).far_end(at);
            let d = ccw_steps((at + order - 1) % order, far, order);
            if d < n {
                ExtNat::fin(d)
            } else {
                Inf
            }
        })
        .collect();
    BracketVectorB::new_unchecked(entries)
}

/// Recover each `C_i` from the vector alone.
pub fn first_links(r: &BracketVectorB) -> Vec<Link> {
    let n = r.n();
    let order = order_b(n);
    (1..=n)
        .map(|i| {
            let at = i - 1;
            match r.get(i) {
                Fin(0) => Link::Edge {
                    from: at,
                    to: (at + order - 1) % order,
                },
                Fin(x) => {
                    let far = (at + order - (x as usize + 1)) % order;
                    Link::Chord(Chord::new(at, far).expect("distinct"))
                }
                Inf => {
                    let j = (1..=n)
                        .find(|&j| match r.get(j) {
                            Inf => true,
                            Fin(x) => x as usize + i >= n + j,
                        })
                        .expect("r_i = ∞ itself qualifies");
                    Link::Chord(Chord::new(at, n + j).expect("distinct"))
                }
            }
        })
        .collect()
}

/// Triangulation with the given bracket vector.
pub fn decode(r: &BracketVectorB) -> TriangulationB {
    let n = r.n();
    let mut reds = Vec::new();
    for c in first_links(r).into_iter().filter_map(Link::as_chord) {
        reds.push(c);
        reds.push(symmetric_partner(c, n));
    }
    TriangulationB::from_red_set(n, &reds).expect("valid bracket vectors decode")
}

/// Least bracket vector above `f`, for `f` satisfying (ii).
pub fn up(f: &RawVector) -> Result<BracketVectorB> {
    f.check_range()?;
    if let Some(v) = f.diameter_violation() {
        return Err(Error::OutsideDomain(v));
    }
    let n = f.n();
    let mut g: Vec<ExtNat> = Vec::with_capacity(n);
    for (k, &fi) in f.0.iter().enumerate() {
        let i = k + 1;
        let value = match fi.finite() {
            None => Inf,
            Some(x) => (1..=x.min(i - 1))
                .map(|j| g[i - j - 1].plus(j))
                .fold(fi, ExtNat::max)
                .clamp(n),
        };
        g.push(value);
    }
    Ok(BracketVectorB::new_unchecked(g))
}

/// Greatest bracket vector below `f`, for `f` satisfying (i).
pub fn down(f: &RawVector) -> Result<BracketVectorB> {
    f.check_range()?;
    if let Some(v) = f.spacing_violation() {
        return Err(Error::OutsideDomain(v));
    }
    let n = f.n();
    let at = |m: usize| f.0[m - 1];
    let g = (1..=n)
        .map(|i| match at(i).finite() {
            Some(x) if x >= i && !at(n + i - x).is_inf() => {
                let y = (0..x)
                    .rev()
                    .find(|&y| y < i || at(n + i - y).is_inf())
                    .expect("y = 0 qualifies");
                ExtNat::fin(y)
            }
            _ => at(i),
        })
        .collect();
    Ok(BracketVectorB::new_unchecked(g))
}

pub fn meet(a: &BracketVectorB, b: &BracketVectorB) -> BracketVectorB {
    assert_eq!(a.n(), b.n(), "meet of vectors of different sizes");
    let min = RawVector(a.0.iter().zip(&b.0).map(|(x, y)| *x.min(y)).collect());
    down(&min).expect("componentwise min of valid vectors satisfies (i)")
}

pub fn join(a: &BracketVectorB, b: &BracketVectorB) -> BracketVectorB {
    assert_eq!(a.n(), b.n(), "join of vectors of different sizes");
    let max = RawVector(a.0.iter().zip(&b.0).map(|(x, y)| *x.max(y)).collect());
    up(&max).expect("componentwise max of valid vectors satisfies (ii)")
}

/// All valid vectors of size `n`, ascending lexicographically.
pub fn enumerate(n: usize) -> Vec<BracketVectorB> {
    fn rec(n: usize, prefix: &mut Vec<ExtNat>, out: &mut Vec<BracketVectorB>) {
        let j = prefix.len();
        if j == n {
            if diameter_violation(prefix).is_none() {
                out.push(BracketVectorB(prefix.clone()));
            }
            return;
        }
        for x in ExtNat::range(n) {
            let ok = match x.finite() {
                None => true,
                Some(rj) => (0..j).all(|i| {
                    let gap = j - i;
                    rj < gap || prefix[i] <= ExtNat::fin(rj - gap)
                }),
            };
            if ok {
                prefix.push(x);
                rec(n, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::VertexB;
    use crate::tri_b::enumerate_by_flips;
    use proptest::prelude::*;

    fn bv(s: &str) -> BracketVectorB {
        BracketVectorB::parse_json(s).unwrap()
    }

    fn raw(s: &str) -> RawVector {
        RawVector(serde_json::from_str(s).unwrap())
    }

    /// Minimum of valid vectors above `f` by scanning every valid vector.
    fn scan_up(f: &RawVector) -> Option<BracketVectorB> {
        let above: Vec<_> = enumerate(f.n())
            .into_iter()
            .filter(|g| f.0.iter().zip(g.iter()).all(|(x, y)| x <= y))
            .collect();
        above
            .iter()
            .find(|m| above.iter().all(|g| leq(m, g)))
            .cloned()
    }

    fn scan_down(f: &RawVector) -> Option<BracketVectorB> {
        let below: Vec<_> = enumerate(f.n())
            .into_iter()
            .filter(|g| g.iter().zip(&f.0).all(|(x, y)| x <= y))
            .collect();
        below
            .iter()
            .find(|m| below.iter().all(|g| leq(g, m)))
            .cloned()
    }

    #[test]
    fn validation_examples() {
        assert_eq!(validate(&raw(r#"[0,"inf",0,0,2,0]"#)), Ok(()));
        assert_eq!(validate(&raw("[1,0,0]")), Err(Violation::Diameter { i: 1 }));
        assert_eq!(validate(&raw("[0,0,0,0]")), Ok(()));
        assert_eq!(
            validate(&raw("[1,1,0]")),
            Err(Violation::Spacing { i: 1, j: 2 })
        );
        assert!(matches!(
            BracketVectorB::parse_json("[3,0,0]"),
            Err(Error::EntryOutOfRange { .. })
        ));
        assert!(matches!(
            BracketVectorB::parse_json("[1,0,0]"),
            Err(Error::InvalidBracketVector(_))
        ));
        assert!(BracketVectorB::parse_json("[0,").is_err());
    }

    #[test]
    fn encode_examples() {
        let n = 3;
        assert_eq!(
            encode(&TriangulationB::bottom(n).unwrap()),
            BracketVectorB::bottom(n)
        );
        let top = decode(&BracketVectorB::top(n));
        assert_eq!(encode(&top), BracketVectorB::top(n));
        let c1 = Chord::new(0, VertexB::barred(1, n).unwrap().index()).unwrap();
        assert_eq!(first_links(&BracketVectorB::top(n))[0], Link::Chord(c1));
        let f2 = decode(&bv(r#"[0,"inf",0,0,2,0]"#));
        assert_eq!(encode(&f2), bv(r#"[0,"inf",0,0,2,0]"#));
        assert_eq!(f2.red_set().len(), 3);
    }

    #[test]
    fn encode_decode_are_inverse() {
        for n in 1..=6 {
            let vectors = enumerate(n);
            for r in &vectors {
                assert_eq!(&encode(&decode(r)), r);
            }
            let mut from_tris: Vec<_> = enumerate_by_flips(n).unwrap().iter().map(encode).collect();
            from_tris.sort();
            assert_eq!(from_tris, vectors);
        }
    }

    #[test]
    fn enumeration_agrees_with_brute_force() {
        for n in 1..=4 {
            let brute: Vec<_> = RawVector::all(n)
                .into_iter()
                .filter(|v| validate(v).is_ok())
                .map(|v| BracketVectorB(v.0))
                .collect();
            assert_eq!(enumerate(n), brute);
        }
    }

    #[test]
    fn order_examples() {
        assert!(leq(&bv("[0,0,0]"), &bv(r#"["inf","inf","inf"]"#)));
        let (a, b) = (bv("[0,1,0]"), bv("[0,0,1]"));
        assert!(!leq(&a, &b) && !leq(&b, &a));
        assert!(leq(&a, &a));
    }

    #[test]
    fn cover_examples() {
        let z = bv("[0,0,0]");
        assert!(covers(&z, &bv(r#"["inf",0,0]"#)));
        assert!(!covers(&z, &bv(r#"[0,"inf",0]"#)));
        let mut ups = z.upper_covers();
        ups.sort();
        assert_eq!(
            ups,
            vec![bv("[0,0,1]"), bv("[0,1,0]"), bv(r#"["inf",0,0]"#)]
        );
        assert!(!covers(&z, &z));
    }

    #[test]
    fn up_down_examples() {
        assert_eq!(up(&raw("[0,1,1]")).unwrap(), bv("[0,1,2]"));
        assert_eq!(up(&raw("[0,0,0,0]")).unwrap(), bv("[0,0,0,0]"));
        assert_eq!(down(&raw("[1,0,0]")).unwrap(), bv("[0,0,0]"));
        assert_eq!(
            down(&raw(r#"["inf","inf","inf"]"#)).unwrap(),
            BracketVectorB::top(3)
        );
        assert!(matches!(up(&raw("[1,0,0]")), Err(Error::OutsideDomain(_))));
        assert!(matches!(
            down(&raw("[1,1,0]")),
            Err(Error::OutsideDomain(_))
        ));
        for r in enumerate(4) {
            assert_eq!(up(&r.to_raw()).unwrap(), r);
            assert_eq!(down(&r.to_raw()).unwrap(), r);
        }
    }

    #[test]
    fn closure_maps_match_scan() {
        for n in 1..=3 {
            for f in RawVector::all(n) {
                if f.in_mii() {
                    assert_eq!(Some(up(&f).unwrap()), scan_up(&f), "up {:?}", f);
                }
                if f.in_mi() {
                    assert_eq!(Some(down(&f).unwrap()), scan_down(&f), "down {:?}", f);
                }
            }
        }
    }

    #[test]
    fn meet_join_examples() {
        let (a, b) = (bv("[0,1,0]"), bv("[0,0,1]"));
        assert_eq!(join(&a, &b), bv("[0,1,2]"));
        assert_eq!(meet(&a, &b), bv("[0,0,0]"));
        for r in enumerate(3) {
            assert_eq!(meet(&r, &BracketVectorB::top(3)), r);
            assert_eq!(join(&r, &BracketVectorB::bottom(3)), r);
            assert_eq!(meet(&r, &r), r);
            assert_eq!(join(&r, &r), r);
        }
    }

    #[test]
    fn json_uses_inf_token() {
        let r = bv(r#"[0,"inf",0,0,2,0]"#);
        assert_eq!(serde_json::to_string(&r).unwrap(), r#"[0,"inf",0,0,2,0]"#);
        let back: BracketVectorB = serde_json::from_str(r#"[0,"inf",0,0,2,0]"#).unwrap();
        assert_eq!(back, r);
        assert!(serde_json::from_str::<BracketVectorB>("[1,0,0]").is_err());
        assert!(serde_json::from_str::<BracketVectorB>(r#"["oops"]"#).is_err());
    }

    fn valid_vector(n: usize) -> impl Strategy<Value = BracketVectorB> {
        let all = enumerate(n);
        (0..all.len()).prop_map(move |k| all[k].clone())
    }

    proptest! {
        #[test]
        fn lattice_laws_n5(a in valid_vector(5), b in valid_vector(5), c in valid_vector(5)) {
            prop_assert_eq!(meet(&a, &b), meet(&b, &a));
            prop_assert_eq!(join(&a, &b), join(&b, &a));
            prop_assert_eq!(meet(&meet(&a, &b), &c), meet(&a, &meet(&b, &c)));
            prop_assert_eq!(join(&join(&a, &b), &c), join(&a, &join(&b, &c)));
            prop_assert_eq!(meet(&a, &join(&a, &b)), a.clone());
            prop_assert_eq!(join(&a, &meet(&a, &b)), a.clone());
            prop_assert!(leq(&meet(&a, &b), &a) && leq(&a, &join(&a, &b)));
        }

        #[test]
        fn up_is_a_closure(v in proptest::collection::vec(0u8..5, 4)) {
            let f = RawVector(v.into_iter().map(|x| if x == 4 { Inf } else { Fin(x) }).collect());
            prop_assume!(f.in_mii());
            let g = up(&f).unwrap();
            prop_assert!(f.0.iter().zip(g.iter()).all(|(x, y)| x <= y));
            prop_assert_eq!(up(&g.to_raw()).unwrap(), g);
        }
    }
}
