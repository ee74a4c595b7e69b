//! Brute-force finite posets.
//!
//! Elements are opaque keys and the only input is a `leq` predicate, so
//! nothing here knows about bracket vectors. Everything is a scan over a
//! dense relation stored as bitset rows.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, k: usize) {
        self.0[k / 64] |= 1 << (k % 64);
    }

    fn get(&self, k: usize) -> bool {
        self.0[k / 64] >> (k % 64) & 1 == 1
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_subset(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + b)
            })
        })
    }
}

#[derive(Clone, Debug)]
pub struct FinitePoset<K> {
    keys: Vec<K>,
    index: HashMap<K, usize>,
    up: Vec<Bits>,
    down: Vec<Bits>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
    /// Indices sorted so that every element comes after everything below it.
    linear: Vec<usize>,
}

impl<K: Clone + Eq + Hash + Debug> FinitePoset<K> {
    /// Materialize `leq` on `keys` and check the partial order axioms.
    pub fn build(keys: Vec<K>, leq: impl Fn(&K, &K) -> bool) -> Result<Self> {
        let m = keys.len();
        let mut index = HashMap::with_capacity(m);
        for (k, key) in keys.iter().enumerate() {
            if index.insert(key.clone(), k).is_some() {
                return Err(Error::PosetAxiom(format!("{key:?} is listed twice")));
            }
        }
        let mut up = vec![Bits::new(m); m];
        let mut down = vec![Bits::new(m); m];
        for a in 0..m {
            for b in 0..m {
                if leq(&keys[a], &keys[b]) {
                    up[a].set(b);
                    down[b].set(a);
                }
            }
        }
        for a in 0..m {
            if !up[a].get(a) {
                return Err(Error::PosetAxiom(format!(
                    "{:?} is not below itself",
                    keys[a]
                )));
            }
            for b in up[a].ones() {
                if b != a && up[b].get(a) {
                    return Err(Error::PosetAxiom(format!(
                        "{:?} and {:?} are mutually below",
                        keys[a], keys[b]
                    )));
                }
                if !up[b].is_subset(&up[a]) {
                    let c = up[b].ones().find(|&c| !up[a].get(c)).unwrap();
                    return Err(Error::PosetAxiom(format!(
                        "{:?} <= {:?} <= {:?} but not {:?} <= {:?}",
                        keys[a], keys[b], keys[c], keys[a], keys[c]
                    )));
                }
            }
        }
        let mut linear: Vec<usize> = (0..m).collect();
        linear.sort_by_key(|&k| down[k].count());
        let mut upper_covers = vec![Vec::new(); m];
        let mut lower_covers = vec![Vec::new(); m];
        for a in 0..m {
            for b in up[a].ones() {
                if b != a && up[a].and(&down[b]).count() == 2 {
                    upper_covers[a].push(b);
                    lower_covers[b].push(a);
                }
            }
        }
        Ok(FinitePoset {
            keys,
            index,
            up,
            down,
            upper_covers,
            lower_covers,
            linear,
        })
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn keys(&self) -> &[K] {
        &self.keys
    }

    pub fn key(&self, k: usize) -> &K {
        &self.keys[k]
    }

    pub fn index_of(&self, key: &K) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].get(b)
    }

    pub fn upper_covers(&self, a: usize) -> &[usize] {
        &self.upper_covers[a]
    }

    pub fn lower_covers(&self, a: usize) -> &[usize] {
        &self.lower_covers[a]
    }

    /// Hasse diagram edges `(a, b)` with `a` covered by `b`.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|a| self.upper_covers[a].iter().map(move |&b| (a, b)))
            .collect()
    }

    pub fn bottom(&self) -> Option<usize> {
        (0..self.len()).find(|&k| self.up[k].count() == self.len())
    }

    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&k| self.down[k].count() == self.len())
    }

    fn greatest(&self, set: &Bits, below: &[Bits]) -> Option<usize> {
        let best = set.ones().max_by_key(|&k| below[k].count())?;
        set.is_subset(&below[best]).then_some(best)
    }

    /// Greatest common lower bound, if there is exactly one maximal one.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        self.greatest(&self.down[a].and(&self.down[b]), &self.down)
    }

    /// Least common upper bound, if there is exactly one minimal one.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        self.greatest(&self.up[a].and(&self.up[b]), &self.up)
    }

    pub fn is_lattice(&self) -> bool {
        (0..self.len()).all(|a| {
            (a..self.len()).all(|b| self.meet(a, b).is_some() && self.join(a, b).is_some())
        })
    }

    /// `mu(a, x)` for every `x`, zero where `a` is not below `x`.
    pub fn mobius_from(&self, a: usize) -> Vec<i64> {
        let mut mu = vec![0i64; self.len()];
        for &x in &self.linear {
            if !self.leq(a, x) {
                continue;
            }
            mu[x] = if x == a {
                1
            } else {
                -self.up[a]
                    .and(&self.down[x])
                    .ones()
                    .filter(|&c| c != x)
                    .map(|c| mu[c])
                    .sum::<i64>()
            };
        }
        mu
    }

    pub fn mobius(&self, a: usize, b: usize) -> i64 {
        self.mobius_from(a)[b]
    }

    /// Elements with exactly one lower cover.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&k| self.lower_covers[k].len() == 1)
            .collect()
    }

    /// True when `x` is the join of two elements strictly below it.
    pub fn is_join_of_smaller(&self, x: usize) -> bool {
        let below: Vec<usize> = self.down[x].ones().filter(|&c| c != x).collect();
        below
            .iter()
            .any(|&a| below.iter().any(|&b| self.join(a, b) == Some(x)))
    }

    /// The subposet on the keys accepted by `keep`, in the same order.
    pub fn induced(&self, keep: impl Fn(&K) -> bool) -> FinitePoset<K> {
        let kept: Vec<usize> = (0..self.len()).filter(|&k| keep(&self.keys[k])).collect();
        let keys = kept.iter().map(|&k| self.keys[k].clone()).collect();
        FinitePoset::build(keys, |a, b| self.leq(self.index[a], self.index[b]))
            .expect("a subposet is a poset")
    }
}
