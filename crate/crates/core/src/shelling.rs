//! Join irreducibles, the left-modular chain, the edge labelling built
//! from it, and what it says about intervals.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::bracket_b::{BracketVectorB, ExtNat, Fin, Inf};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::lattice::TamariLattice;
use crate::quotient_bds::{project, BdsSubset};

/// The join irreducible `W_{i,t}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Irreducible {
    pub i: usize,
    pub t: ExtNat,
}

/// Later positions come first; within a position, smaller `t` first.
impl Ord for Irreducible {
    fn cmp(&self, other: &Self) -> Ordering {
        other.i.cmp(&self.i).then(self.t.cmp(&other.t))
    }
}

impl PartialOrd for Irreducible {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Irreducible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W{},{}", self.i, self.t)
    }
}

impl Serialize for Irreducible {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Irreducible {
    pub fn vector(self, n: usize) -> BracketVectorB {
        let mut e = vec![Fin(0); n];
        e[self.i - 1] = self.t;
        if let Some(t) = self.t.finite() {
            if t >= self.i {
                e[n + self.i - t - 1] = Inf;
            }
        }
        BracketVectorB::new(e).expect("irreducibles are valid")
    }

    /// `S_{i,t}`: zeros before `i`, `t` at `i`, `∞` after.
    pub fn chain_element(self, n: usize) -> BracketVectorB {
        let e = (1..=n)
            .map(|k| match k.cmp(&self.i) {
                Ordering::Less => Fin(0),
                Ordering::Equal => self.t,
                Ordering::Greater => Inf,
            })
            .collect();
        BracketVectorB::new(e).expect("chain elements are valid")
    }
}

fn all_irreducibles(n: usize) -> Vec<Irreducible> {
    let mut out: Vec<Irreducible> = (1..=n)
        .flat_map(|i| {
            (1..n)
                .map(ExtNat::fin)
                .chain([Inf])
                .map(move |t| Irreducible { i, t })
        })
        .collect();
    out.sort();
    out
}

/// Join irreducibles of `T_n^S` in `≺` order.
pub fn join_irreducibles(n: usize, s: &BdsSubset) -> Vec<Irreducible> {
    let bottom = project(&BracketVectorB::bottom(n), s);
    all_irreducibles(n)
        .into_iter()
        .filter(|w| !(s.contains(w.i) && w.t == ExtNat::fin(n - 1)))
        .filter(|w| w.vector(n) != bottom)
        .collect()
}

/// `0̂ ⋖ S_{n,1} ⋖ … ⋖ S_{1,∞}`, merged under `~_S`.
pub fn left_modular_chain(n: usize, s: &BdsSubset) -> Vec<BracketVectorB> {
    let mut chain = vec![project(&BracketVectorB::bottom(n), s)];
    for w in all_irreducibles(n) {
        let x = project(&w.chain_element(n), s);
        if chain.last() != Some(&x) {
            chain.push(x);
        }
    }
    chain
}

/// `(y ∨ x) ∧ z = y ∨ (x ∧ z)` for all `y < z`.
pub fn is_left_modular(lat: &TamariLattice, x: usize) -> bool {
    (0..lat.len()).all(|y| {
        let yx = lat.join(y, x);
        (y + 1..lat.len())
            .filter(|&z| lat.leq(y, z))
            .all(|z| lat.meet(yx, z) == lat.join(y, lat.meet(x, z)))
    })
}

/// Edge labels of a lattice: each Hasse edge gets the `≺`-least
/// irreducible below its top and not below its bottom.
#[derive(Clone, Debug)]
pub struct Labelling<'a> {
    lat: &'a TamariLattice,
    irreducibles: Vec<Irreducible>,
    vectors: Vec<BracketVectorB>,
    labels: BTreeMap<(usize, usize), usize>,
}

impl<'a> Labelling<'a> {
    pub fn new(lat: &'a TamariLattice, exec: Exec) -> Self {
        let n = lat.n();
        let irreducibles = join_irreducibles(n, lat.subset());
        let vectors: Vec<BracketVectorB> = irreducibles.iter().map(|w| w.vector(n)).collect();
        let edges = lat.edges();
        let ranks = exec.map(&edges, |&(a, b)| {
            let (va, vb) = (lat.element(a), lat.element(b));
            vectors
                .iter()
                .position(|w| w.leq(vb) && !w.leq(va))
                .expect("some irreducible separates a cover")
        });
        let labels = edges.into_iter().zip(ranks).collect();
        Labelling {
            lat,
            irreducibles,
            vectors,
            labels,
        }
    }

    pub fn lattice(&self) -> &TamariLattice {
        self.lat
    }

    pub fn irreducibles(&self) -> &[Irreducible] {
        &self.irreducibles
    }

    /// Position in `≺` of the label of `a ⋖ b`.
    pub fn rank(&self, a: usize, b: usize) -> Option<usize> {
        self.labels.get(&(a, b)).copied()
    }

    pub fn label(&self, a: usize, b: usize) -> Result<Irreducible> {
        self.rank(a, b)
            .map(|r| self.irreducibles[r])
            .ok_or_else(|| {
                Error::NotACover(
                    self.lat.element(a).to_string(),
                    self.lat.element(b).to_string(),
                )
            })
    }

    /// The labelling read off the left-modular chain: the least `i` such that
    /// some irreducible first appearing at chain step `i` separates the edge.
    pub fn gamma(&self, chain: &[BracketVectorB], a: usize, b: usize) -> Option<usize> {
        let (va, vb) = (self.lat.element(a), self.lat.element(b));
        (1..chain.len()).find(|&i| {
            self.vectors
                .iter()
                .any(|w| w.leq(&chain[i]) && !w.leq(&chain[i - 1]) && w.leq(vb) && !w.leq(va))
        })
    }
}

/// Label of `a ⋖ b` by vectors.
pub fn el_label(
    lat: &TamariLattice,
    a: &BracketVectorB,
    b: &BracketVectorB,
) -> Result<Irreducible> {
    let (ia, ib) = (lat.index_of(a)?, lat.index_of(b)?);
    if !lat.covers(ia, ib) {
        return Err(Error::NotACover(a.to_string(), b.to_string()));
    }
    join_irreducibles(lat.n(), lat.subset())
        .into_iter()
        .find(|w| {
            let v = w.vector(lat.n());
            v.leq(b) && !v.leq(a)
        })
        .ok_or_else(|| Error::NotACover(a.to_string(), b.to_string()))
}

fn require_leq(lat: &TamariLattice, y: usize, z: usize) -> Result<()> {
    if lat.leq(y, z) {
        Ok(())
    } else {
        Err(Error::NotComparable(
            lat.element(y).to_string(),
            lat.element(z).to_string(),
        ))
    }
}

/// Every maximal chain of `[y, z]` whose labels strictly decrease going up,
/// found by exhaustive search.
pub fn decreasing_chains(lab: &Labelling, y: usize, z: usize) -> Result<Vec<Vec<usize>>> {
    let lat = lab.lattice();
    require_leq(lat, y, z)?;
    fn rec(
        lab: &Labelling,
        z: usize,
        path: &mut Vec<usize>,
        last: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        let cur = *path.last().unwrap();
        if cur == z {
            out.push(path.clone());
            return;
        }
        let lat = lab.lattice();
        for &w in lat.upper_covers(cur) {
            let r = lab.rank(cur, w).unwrap();
            if r < last && lat.leq(w, z) {
                path.push(w);
                rec(lab, z, path, r, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(lab, z, &mut vec![y], usize::MAX, &mut out);
    Ok(out)
}

/// The decreasing chain built greedily: always raise the first coordinate
/// where the current element differs from `z` as little as possible.
pub fn decreasing_chain_constructive(
    lab: &Labelling,
    y: usize,
    z: usize,
) -> Result<Option<Vec<usize>>> {
    let lat = lab.lattice();
    require_leq(lat, y, z)?;
    let target = lat.element(z);
    let mut chain = vec![y];
    let mut last = usize::MAX;
    let mut cur = y;
    while cur != z {
        let here = lat.element(cur);
        let k = here.differences(target)[0];
        let next = lat
            .upper_covers(cur)
            .iter()
            .copied()
            .find(|&w| lat.element(w).differences(here) == [k]);
        let Some(next) = next.filter(|&w| lat.leq(w, z)) else {
            return Ok(None);
        };
        let r = lab.rank(cur, next).unwrap();
        if r >= last {
            return Ok(None);
        }
        last = r;
        cur = next;
        chain.push(cur);
    }
    Ok(Some(chain))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Homotopy {
    Contractible,
    /// Dimension `-1` is the empty complex of a cover.
    Sphere {
        dim: i64,
    },
}

impl fmt::Display for Homotopy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Homotopy::Contractible => write!(f, "contractible"),
            Homotopy::Sphere { dim } => write!(f, "sphere of dimension {dim}"),
        }
    }
}

pub fn interval_homotopy(lab: &Labelling, y: usize, z: usize) -> Result<Homotopy> {
    Ok(match decreasing_chain_constructive(lab, y, z)? {
        Some(chain) => Homotopy::Sphere {
            dim: chain.len() as i64 - 3,
        },
        None => Homotopy::Contractible,
    })
}

pub fn mobius(lab: &Labelling, y: usize, z: usize) -> Result<i64> {
    Ok(match decreasing_chain_constructive(lab, y, z)? {
        Some(chain) if chain.len() % 2 == 1 => 1,
        Some(_) => -1,
        None => 0,
    })
}

/// Number of maximal chains of `[y, z]`.
pub fn count_maximal_chains(lat: &TamariLattice, y: usize, z: usize) -> u64 {
    let mut ways = vec![0u64; z - y + 1];
    ways[0] = 1;
    for c in y..=z {
        let w = ways[c - y];
        if w == 0 {
            continue;
        }
        for &d in lat.upper_covers(c) {
            if d <= z && lat.leq(d, z) {
                ways[d - y] += w;
            }
        }
    }
    ways[z - y]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalReport {
    pub interval: [BracketVectorB; 2],
    pub mobius: i64,
    pub homotopy: Homotopy,
    pub chains_checked: u64,
}

pub fn interval_report(lab: &Labelling, y: usize, z: usize) -> Result<IntervalReport> {
    let lat = lab.lattice();
    Ok(IntervalReport {
        interval: [lat.element(y).clone(), lat.element(z).clone()],
        mobius: mobius(lab, y, z)?,
        homotopy: interval_homotopy(lab, y, z)?,
        chains_checked: count_maximal_chains(lat, y, z),
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ElReport {
    pub intervals: usize,
    /// Intervals without exactly one weakly increasing maximal chain.
    pub not_unique: Vec<(usize, usize)>,
    /// Intervals whose lexicographically first chain is not increasing.
    pub not_first: Vec<(usize, usize)>,
}

impl ElReport {
    pub fn passed(&self) -> bool {
        self.not_unique.is_empty() && self.not_first.is_empty()
    }
}

/// Check the EL property for an arbitrary edge labelling.
pub fn verify_el_with<L, F>(lat: &TamariLattice, label: F, exec: Exec) -> ElReport
where
    L: Ord + Clone + Send + Sync,
    F: Fn(usize, usize) -> L + Sync + Send,
{
    let per_top = exec.map_range(lat.len(), |z| {
        let below: Vec<usize> = (0..=z).filter(|&c| lat.leq(c, z)).collect();
        // increasing[c]: first label -> number of weakly increasing chains c..z (capped)
        let mut increasing: BTreeMap<usize, Vec<(L, u8)>> = BTreeMap::new();
        let mut lexmin: BTreeMap<usize, Vec<L>> = BTreeMap::new();
        let mut not_unique = Vec::new();
        let mut not_first = Vec::new();
        for &c in below.iter().rev() {
            if c == z {
                lexmin.insert(c, Vec::new());
                continue;
            }
            let steps: Vec<(usize, L)> = lat
                .upper_covers(c)
                .iter()
                .filter(|&&w| lat.leq(w, z))
                .map(|&w| (w, label(c, w)))
                .collect();
            let mut inc: Vec<(L, u8)> = Vec::new();
            for (w, l) in &steps {
                let onward: u8 = if *w == z {
                    1
                } else {
                    increasing[w]
                        .iter()
                        .filter(|(m, _)| m >= l)
                        .map(|(_, k)| *k)
                        .fold(0u8, |a, b| a.saturating_add(b).min(2))
                };
                if onward > 0 {
                    inc.push((l.clone(), onward));
                }
            }
            let total = inc
                .iter()
                .map(|(_, k)| *k)
                .fold(0u8, |a, b| a.saturating_add(b).min(2));
            let least = steps
                .iter()
                .map(|(_, l)| l)
                .min()
                .expect("c < z has a cover below z")
                .clone();
            let best = steps
                .iter()
                .filter(|(_, l)| *l == least)
                .map(|(w, l)| {
                    let mut seq = vec![l.clone()];
                    seq.extend(lexmin[w].iter().cloned());
                    seq
                })
                .min()
                .unwrap();
            if total != 1 {
                not_unique.push((c, z));
            }
            if best.windows(2).any(|p| p[0] > p[1]) {
                not_first.push((c, z));
            }
            increasing.insert(c, inc);
            lexmin.insert(c, best);
        }
        (below.len() - 1, not_unique, not_first)
    });
    let mut report = ElReport::default();
    for (count, nu, nf) in per_top {
        report.intervals += count;
        report.not_unique.extend(nu);
        report.not_first.extend(nf);
    }
    report.not_unique.sort_unstable();
    report.not_first.sort_unstable();
    report
}

pub fn verify_el(lab: &Labelling, exec: Exec) -> ElReport {
    verify_el_with(lab.lattice(), |a, b| lab.rank(a, b).unwrap(), exec)
}
