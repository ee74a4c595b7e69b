//! Named verification suites comparing the formulas against brute force.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bracket_b::{self, decode, encode, enumerate, BracketVectorB};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::lattice::TamariLattice;
use crate::noncross::{enumerate_nc_b, in_bds, psi, psi_inverse};
use crate::oracle::FinitePoset;
use crate::quotient_bds::{equivalent, project, BdsSubset};
use crate::shelling::{self, Labelling};
use crate::tamari_a::{self, decode_a, encode_a, enumerate_a, psi_a, BracketVectorA};
use crate::tri_b::{covers_by_flip, enumerate_by_flips};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    A,
    B,
    Bds(BdsSubset),
}

impl Family {
    fn subset(&self, n: usize) -> BdsSubset {
        match self {
            Family::Bds(s) => s.clone(),
            _ => BdsSubset::empty(n),
        }
    }

    fn name(&self) -> String {
        match self {
            Family::A => "a".into(),
            Family::B => "b".into(),
            Family::Bds(s) => format!("bds{s}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Lattice,
    Covers,
    Bijection,
    Leftmod,
    El,
    Congruence,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Lattice,
        Suite::Covers,
        Suite::Bijection,
        Suite::Leftmod,
        Suite::El,
        Suite::Congruence,
    ];

    pub fn parse(name: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|s| s.to_string() == name)
            .ok_or_else(|| Error::Unsupported(format!("unknown suite {name:?}")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Suite::Lattice => "lattice",
            Suite::Covers => "covers",
            Suite::Bijection => "bijection",
            Suite::Leftmod => "leftmod",
            Suite::El => "el",
            Suite::Congruence => "congruence",
        };
        f.write_str(name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub family: String,
    pub n: usize,
    pub checks: u64,
    pub failures: Vec<String>,
}

impl Report {
    fn new(suite: Suite, family: &Family, n: usize) -> Self {
        Report {
            suite: suite.to_string(),
            family: family.name(),
            n,
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Sampled checks draw from a ChaCha stream seeded with `seed`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub exec: Exec,
    pub seed: u64,
    /// Exhaustive checks over triples are replaced by samples above this size.
    pub exhaustive_up_to: usize,
    pub samples: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            exec: Exec::default(),
            seed: 0,
            exhaustive_up_to: 4,
            samples: 20_000,
        }
    }
}

pub fn run(suite: Suite, family: &Family, n: usize, opts: Options) -> Result<Report> {
    if n == 0 {
        return Err(Error::ZeroSize);
    }
    if let Family::Bds(s) = family {
        if s.n() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: s.n(),
            });
        }
    }
    let mut report = Report::new(suite, family, n);
    match (suite, family) {
        (Suite::Lattice, Family::A) => lattice_a(n, &mut report),
        (Suite::Covers, Family::A) => covers_a(n, &mut report),
        (Suite::Bijection, Family::A) => bijection_a(n, &mut report),
        (_, Family::A) => {
            return Err(Error::Unsupported(format!(
                "suite {suite} is only defined for types b and bds"
            )))
        }
        (Suite::Lattice, _) => lattice_b(n, &family.subset(n), opts, &mut report)?,
        (Suite::Covers, _) => covers_b(n, &family.subset(n), opts, &mut report)?,
        (Suite::Bijection, _) => bijection_b(n, &family.subset(n), &mut report),
        (Suite::Leftmod, _) => leftmod(n, &family.subset(n), opts, &mut report)?,
        (Suite::El, _) => el(n, &family.subset(n), opts, &mut report)?,
        (Suite::Congruence, _) => congruence(n, &family.subset(n), opts, &mut report)?,
    }
    Ok(report)
}

fn oracle_of(lat: &TamariLattice) -> FinitePoset<BracketVectorB> {
    FinitePoset::build(lat.elements().to_vec(), |a, b| a.leq(b))
        .expect("componentwise order is a partial order")
}

fn lattice_b(n: usize, s: &BdsSubset, opts: Options, report: &mut Report) -> Result<()> {
    let lat = TamariLattice::new(n, s.clone(), opts.exec)?;
    let p = oracle_of(&lat);
    report.check(p.is_lattice(), || {
        "oracle finds a pair without meet or join".into()
    });
    let rows = opts.exec.map_range(lat.len(), |a| {
        let mut bad = Vec::new();
        for b in a..lat.len() {
            let (va, vb) = (lat.element(a), lat.element(b));
            let m = bracket_b::meet(va, vb);
            let j = project(&bracket_b::join(va, vb), s);
            if p.meet(a, b).map(|k| p.key(k)) != Some(&m) {
                bad.push(format!("meet {va} {vb}: formula {m}"));
            }
            if p.join(a, b).map(|k| p.key(k)) != Some(&j) {
                bad.push(format!("join {va} {vb}: formula {j}"));
            }
        }
        (lat.len() - a, bad)
    });
    for (count, bad) in rows {
        report.checks += 2 * count as u64;
        report.failures.extend(bad);
    }
    Ok(())
}

fn lattice_a(n: usize, report: &mut Report) {
    let all = enumerate_a(n);
    let p = FinitePoset::build(all.clone(), tamari_a::leq_a).expect("componentwise order");
    report.check(p.is_lattice(), || "type-A order is not a lattice".into());
    for (a, va) in all.iter().enumerate() {
        for (b, vb) in all.iter().enumerate().skip(a) {
            let min: Vec<usize> = va
                .entries()
                .iter()
                .zip(vb.entries())
                .map(|(x, y)| *x.min(y))
                .collect();
            report.check(BracketVectorA::new(min).is_ok(), || {
                format!("min of {va} and {vb} is not valid")
            });
            let m = tamari_a::meet_a(va, vb);
            let j = tamari_a::join_a(va, vb);
            report.check(p.meet(a, b).map(|k| p.key(k)) == Some(&m), || {
                format!("meet {va} {vb}")
            });
            report.check(p.join(a, b).map(|k| p.key(k)) == Some(&j), || {
                format!("join {va} {vb}")
            });
        }
    }
}

fn covers_b(n: usize, s: &BdsSubset, opts: Options, report: &mut Report) -> Result<()> {
    let lat = TamariLattice::new(n, s.clone(), opts.exec)?;
    let p = oracle_of(&lat);
    let formula: BTreeSet<(usize, usize)> = lat.edges().into_iter().collect();
    let oracle: BTreeSet<(usize, usize)> = p.hasse_edges().into_iter().collect();
    report.check(formula == oracle, || {
        format!(
            "{} formula covers vs {} oracle covers",
            formula.len(),
            oracle.len()
        )
    });
    if s.is_empty() {
        let flips = enumerate_by_flips(n)?;
        report.check(flips.len() == lat.len(), || {
            format!("flip graph reaches {} of {}", flips.len(), lat.len())
        });
        let ts: Vec<_> = lat.elements().iter().map(decode).collect();
        let by_flip: BTreeSet<(usize, usize)> = opts
            .exec
            .flat_map_range(ts.len(), |a| {
                ts[a]
                    .green_flips()
                    .iter()
                    .map(|u| {
                        (
                            a,
                            lat.index_of(&encode(u)).expect("flips stay in the lattice"),
                        )
                    })
                    .collect()
            })
            .into_iter()
            .collect();
        report.check(by_flip == formula, || {
            format!(
                "{} flip covers vs {} bracket covers",
                by_flip.len(),
                formula.len()
            )
        });
        for &(a, b) in by_flip.iter().take(200) {
            report.check(covers_by_flip(&ts[a], &ts[b]), || {
                format!("flip {} -> {}", ts[a], ts[b])
            });
        }
    }
    Ok(())
}

fn covers_a(n: usize, report: &mut Report) {
    let all = enumerate_a(n);
    let p = FinitePoset::build(all.clone(), tamari_a::leq_a).expect("componentwise order");
    let oracle: BTreeSet<(usize, usize)> = p.hasse_edges().into_iter().collect();
    let mut by_flip = BTreeSet::new();
    for (a, r) in all.iter().enumerate() {
        for u in decode_a(r).green_flips() {
            by_flip.insert((a, p.index_of(&encode_a(&u)).expect("flips stay valid")));
        }
    }
    report.check(by_flip == oracle, || {
        format!(
            "{} flip covers vs {} oracle covers",
            by_flip.len(),
            oracle.len()
        )
    });
}

fn bijection_b(n: usize, s: &BdsSubset, report: &mut Report) {
    let domain: Vec<BracketVectorB> = enumerate(n)
        .into_iter()
        .filter(|v| crate::quotient_bds::in_tns_vector(v, s))
        .collect();
    let mut images = Vec::with_capacity(domain.len());
    for r in &domain {
        let t = decode(r);
        report.check(&encode(&t) == r, || format!("decode/encode of {r}"));
        let p = psi(&t);
        match psi_inverse(&p) {
            Ok(back) => report.check(back == t, || format!("psi_inverse(psi({r})) differs")),
            Err(e) => report.check(false, || format!("psi_inverse failed on {p}: {e}")),
        }
        images.push(p);
    }
    let mut sorted = images.clone();
    sorted.sort();
    sorted.dedup();
    report.check(sorted.len() == images.len(), || {
        "psi is not injective".into()
    });
    let target: Vec<_> = enumerate_nc_b(n)
        .into_iter()
        .filter(|p| in_bds(p, s))
        .collect();
    report.check(sorted == target, || {
        format!(
            "image has {} partitions, expected {}",
            sorted.len(),
            target.len()
        )
    });
}

fn bijection_a(n: usize, report: &mut Report) {
    let all = enumerate_a(n);
    let mut images = Vec::new();
    for r in &all {
        let t = decode_a(r);
        report.check(&encode_a(&t) == r, || format!("decode/encode of {r}"));
        let p = psi_a(&t);
        report.check(tamari_a::is_noncrossing_a(&p), || format!("{p} crosses"));
        images.push(p);
    }
    images.sort();
    images.dedup();
    report.check(images.len() == all.len(), || {
        "psi_a is not injective".into()
    });
}

fn leftmod(n: usize, s: &BdsSubset, opts: Options, report: &mut Report) -> Result<()> {
    let lat = TamariLattice::new(n, s.clone(), opts.exec)?;
    let chain = shelling::left_modular_chain(n, s);
    let idx: Vec<usize> = chain
        .iter()
        .map(|x| lat.index_of(x))
        .collect::<Result<_>>()?;
    report.check(idx.first() == Some(&lat.bottom()), || {
        "chain does not start at the bottom".into()
    });
    report.check(idx.last() == Some(&lat.top()), || {
        "chain does not end at the top".into()
    });
    for w in idx.windows(2) {
        report.check(lat.covers(w[0], w[1]), || {
            format!(
                "{} is not covered by {}",
                lat.element(w[0]),
                lat.element(w[1])
            )
        });
    }
    let verdicts = opts.exec.map(&idx, |&x| shelling::is_left_modular(&lat, x));
    for (&x, ok) in idx.iter().zip(verdicts) {
        report.check(ok, || format!("{} is not left modular", lat.element(x)));
    }
    report.check(
        idx.len() == shelling::join_irreducibles(n, s).len() + 1,
        || "chain length differs from the irreducible count".into(),
    );
    Ok(())
}

fn el(n: usize, s: &BdsSubset, opts: Options, report: &mut Report) -> Result<()> {
    let lat = TamariLattice::new(n, s.clone(), opts.exec)?;
    let lab = Labelling::new(&lat, opts.exec);
    let el = shelling::verify_el(&lab, opts.exec);
    report.checks += el.intervals as u64;
    report.failures.extend(el.not_unique.iter().map(|&(y, z)| {
        format!(
            "[{}, {}] has no unique increasing chain",
            lat.element(y),
            lat.element(z)
        )
    }));
    report.failures.extend(el.not_first.iter().map(|&(y, z)| {
        format!(
            "[{}, {}]: increasing chain is not lexicographically first",
            lat.element(y),
            lat.element(z)
        )
    }));
    let p = oracle_of(&lat);
    let rows = opts.exec.map_range(lat.len(), |y| {
        let mu = p.mobius_from(y);
        let mut checks = 0u64;
        let mut bad = Vec::new();
        for (z, &expected) in mu.iter().enumerate().skip(y) {
            if !lat.leq(y, z) {
                continue;
            }
            checks += 1;
            let found = shelling::decreasing_chains(&lab, y, z).expect("y <= z");
            let built = shelling::decreasing_chain_constructive(&lab, y, z).expect("y <= z");
            let m = shelling::mobius(&lab, y, z).expect("y <= z");
            if found.len() > 1
                || found.first() != built.as_ref()
                || m != expected
                || !(-1..=1).contains(&m)
            {
                bad.push(format!(
                    "[{}, {}]: {} decreasing chains, mobius {m}, oracle {}",
                    lat.element(y),
                    lat.element(z),
                    found.len(),
                    expected
                ));
            }
        }
        (checks, bad)
    });
    for (checks, bad) in rows {
        report.checks += checks;
        report.failures.extend(bad);
    }
    Ok(())
}

fn congruence(n: usize, s: &BdsSubset, opts: Options, report: &mut Report) -> Result<()> {
    let all = enumerate(n);
    let pairs: Vec<(usize, usize)> = (0..all.len())
        .flat_map(|a| (a + 1..all.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| equivalent(&all[a], &all[b], s))
        .collect();
    let triples: Vec<(usize, usize, usize)> = if n <= opts.exhaustive_up_to {
        pairs
            .iter()
            .flat_map(|&(a, b)| (0..all.len()).map(move |z| (a, b, z)))
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let zs: Vec<usize> = (0..all.len()).collect();
        (0..opts.samples.min(pairs.len() * all.len()))
            .filter_map(|_| {
                let &(a, b) = pairs.choose(&mut rng)?;
                Some((a, b, *zs.choose(&mut rng)?))
            })
            .collect()
    };
    let bad: Vec<Option<String>> = opts.exec.map(&triples, |&(a, b, z)| {
        let (va, vb, vz) = (&all[a], &all[b], &all[z]);
        let (ja, jb) = (bracket_b::join(va, vz), bracket_b::join(vb, vz));
        let (ma, mb) = (bracket_b::meet(va, vz), bracket_b::meet(vb, vz));
        if !equivalent(&ja, &jb, s) {
            Some(format!(
                "{va} ~ {vb} but joins with {vz} give {ja} and {jb}"
            ))
        } else if !equivalent(&ma, &mb, s) {
            Some(format!(
                "{va} ~ {vb} but meets with {vz} give {ma} and {mb}"
            ))
        } else {
            None
        }
    });
    report.checks += triples.len() as u64;
    report.failures.extend(bad.into_iter().flatten());

    // the quotient order is the order induced from T_n^B
    let lat = TamariLattice::new(n, s.clone(), opts.exec)?;
    let full = FinitePoset::build(all.clone(), |a, b| a.leq(b)).expect("componentwise order");
    let induced = full.induced(|v| crate::quotient_bds::in_tns_vector(v, s));
    report.check(induced.is_lattice(), || {
        "induced subposet is not a lattice".into()
    });
    let quotient_leq = |a: &BracketVectorB, b: &BracketVectorB| {
        all.iter()
            .any(|x| equivalent(x, a, s) && all.iter().any(|y| equivalent(y, b, s) && x.leq(y)))
    };
    for a in 0..lat.len() {
        for b in 0..lat.len() {
            let (va, vb) = (lat.element(a), lat.element(b));
            report.check(quotient_leq(va, vb) == va.leq(vb), || {
                format!("quotient and induced order differ on {va}, {vb}")
            });
            let m = bracket_b::meet(va, vb);
            report.check(lat.index_of(&m).is_ok(), || {
                format!("meet of {va} and {vb} leaves the family")
            });
        }
    }
    Ok(())
}

/// A pair in `T_n^S` whose type-B join falls outside `T_n^S`.
pub fn non_sublattice_witness(
    n: usize,
    s: &BdsSubset,
) -> Option<(BracketVectorB, BracketVectorB, BracketVectorB)> {
    let family: Vec<BracketVectorB> = enumerate(n)
        .into_iter()
        .filter(|v| crate::quotient_bds::in_tns_vector(v, s))
        .collect();
    family.iter().enumerate().find_map(|(k, a)| {
        family[k..].iter().find_map(|b| {
            let j = bracket_b::join(a, b);
            (!crate::quotient_bds::in_tns_vector(&j, s)).then(|| (a.clone(), b.clone(), j))
        })
    })
}
