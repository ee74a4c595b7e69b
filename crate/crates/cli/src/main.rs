//! `tamari`: enumerate, query and verify Tamari lattices of types A, B and BD^S.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tamari_core::bracket_b::{decode, encode, BracketVectorB};
use tamari_core::lattice::TamariLattice;
use tamari_core::noncross::{in_bds, psi, psi_inverse_vector, NoncrossingPartitionB};
use tamari_core::quotient_bds::{enumerate_s, in_tns, in_tns_vector, join_s, meet_s, BdsSubset};
use tamari_core::shelling::{interval_report, Labelling};
use tamari_core::tamari_a::{
    self, decode_a, encode_a, enumerate_a, psi_a, BracketVectorA, TriangulationA,
};
use tamari_core::tri_b::TriangulationB;
use tamari_core::verify::{self, Family, Options, Suite};
use tamari_core::{Error, Exec};

const DEFAULT_CAP: usize = 6;

#[derive(Parser)]
#[command(
    name = "tamari",
    version,
    about = "Tamari lattices of types A, B and BD^S"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Number of elements.
    Count(Common),
    /// Every element as a bracket vector, one per line.
    Enumerate(Common),
    /// Bracket vector of a triangulation given as JSON.
    Encode {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        triangulation: String,
    },
    /// Triangulation of a bracket vector.
    Decode {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        vector: String,
    },
    /// Meet of two elements.
    Meet {
        #[command(flatten)]
        common: Common,
        a: String,
        b: String,
    },
    /// Join of two elements.
    Join {
        #[command(flatten)]
        common: Common,
        a: String,
        b: String,
    },
    /// Upper and lower covers of an element.
    Covers {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        vector: String,
    },
    /// Noncrossing partition of a triangulation.
    Psi {
        #[command(flatten)]
        common: Common,
        #[arg(
            long,
            conflicts_with = "triangulation",
            required_unless_present = "triangulation"
        )]
        vector: Option<String>,
        #[arg(long)]
        triangulation: Option<String>,
    },
    /// Triangulation of a noncrossing partition.
    PsiInv {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        partition: String,
    },
    /// Möbius function and homotopy type of the interval [a, b].
    Mobius {
        #[command(flatten)]
        common: Common,
        a: String,
        b: String,
    },
    /// Hasse diagram as DOT, JSON or CSV.
    Hasse(Common),
    /// Check a suite against the brute-force poset oracle.
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long = "type", value_enum, default_value_t = Kind::B)]
    kind: Kind,
    #[arg(long)]
    n: usize,
    /// Subset of 1..=n, comma separated (type bds only).
    #[arg(long)]
    s: Option<String>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Lift the size limit on hasse and verify.
    #[arg(long)]
    max_n_unsafe: bool,
    /// Run without rayon.
    #[arg(long)]
    sequential: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    A,
    B,
    Bds,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Csv,
}

fn parse_suite(name: &str) -> Result<Suite, String> {
    Suite::parse(name).map_err(|e| e.to_string())
}

enum Failure {
    Input(String),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

struct Ctx {
    kind: Kind,
    n: usize,
    s: BdsSubset,
    format: Option<Format>,
    exec: Exec,
    cap: Option<usize>,
}

impl Ctx {
    fn new(c: &Common) -> Result<Ctx, Failure> {
        if c.n == 0 {
            return Err(Error::ZeroSize.into());
        }
        let s = match (c.kind, &c.s) {
            (Kind::Bds, Some(text)) => BdsSubset::parse(c.n, text)?,
            (Kind::Bds, None) => return Err(Failure::Input("--type bds requires --s".into())),
            (_, Some(_)) => {
                return Err(Failure::Input("--s is only allowed with --type bds".into()))
            }
            (_, None) => BdsSubset::empty(c.n),
        };
        let exec = if c.sequential {
            Exec::Sequential
        } else {
            Exec::Parallel
        };
        let cap = (!c.max_n_unsafe).then_some(DEFAULT_CAP);
        Ok(Ctx {
            kind: c.kind,
            n: c.n,
            s,
            format: c.format,
            exec,
            cap,
        })
    }

    fn is_a(&self) -> bool {
        self.kind == Kind::A
    }

    fn family(&self) -> Family {
        match self.kind {
            Kind::A => Family::A,
            Kind::B => Family::B,
            Kind::Bds => Family::Bds(self.s.clone()),
        }
    }

    fn check_cap(&self) -> Result<(), Failure> {
        match self.cap {
            Some(cap) if self.n > cap => Err(Error::TooLarge { n: self.n, cap }.into()),
            _ => Ok(()),
        }
    }

    /// Only JSON (the default) is meaningful for this command.
    fn json_only(&self) -> Result<(), Failure> {
        match self.format {
            None | Some(Format::Json) => Ok(()),
            Some(_) => Err(Failure::Input(
                "this command only supports --format json".into(),
            )),
        }
    }

    fn vector_b(&self, text: &str) -> Result<BracketVectorB, Failure> {
        let v = BracketVectorB::parse_json(text)?;
        if v.n() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: v.n(),
            }
            .into());
        }
        if !in_tns_vector(&v, &self.s) {
            return Err(Error::NotInSubfamily(v.to_string()).into());
        }
        Ok(v)
    }

    fn vector_a(&self, text: &str) -> Result<BracketVectorA, Failure> {
        let entries: Vec<usize> =
            serde_json::from_str(text).map_err(|e| Error::MalformedJson(e.to_string()))?;
        if entries.len() != self.n + 1 {
            return Err(Error::LengthMismatch {
                expected: self.n + 1,
                got: entries.len(),
            }
            .into());
        }
        Ok(BracketVectorA::new(entries)?)
    }

    fn triangulation_b(&self, text: &str) -> Result<TriangulationB, Failure> {
        let t = TriangulationB::from_json(&json_value(text)?)?;
        if t.n() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: t.n(),
            }
            .into());
        }
        if !in_tns(&t, &self.s) {
            return Err(Error::NotInSubfamily(t.to_string()).into());
        }
        Ok(t)
    }

    fn triangulation_a(&self, text: &str) -> Result<TriangulationA, Failure> {
        let t = TriangulationA::from_json(&json_value(text)?)?;
        if t.n() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: t.n(),
            }
            .into());
        }
        Ok(t)
    }

    fn lattice(&self) -> Result<TamariLattice, Failure> {
        Ok(TamariLattice::new(self.n, self.s.clone(), self.exec)?)
    }
}

fn json_value(text: &str) -> Result<Value, Failure> {
    Ok(serde_json::from_str(text).map_err(|e| Error::MalformedJson(e.to_string()))?)
}

fn line(v: &Value) -> String {
    format!("{v}\n")
}

fn csv_entries<T: ToString>(entries: impl IntoIterator<Item = T>) -> String {
    entries
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn count(ctx: &Ctx) -> Outcome {
    let total = if ctx.is_a() {
        enumerate_a(ctx.n).len()
    } else {
        enumerate_s(ctx.n, &ctx.s).len()
    };
    Ok(match ctx.format {
        None => format!("{total}\n"),
        Some(Format::Json) => line(&json!({ "n": ctx.n, "s": ctx.s.members(), "count": total })),
        Some(Format::Csv) => format!("n,count\n{},{total}\n", ctx.n),
        Some(Format::Dot) => {
            return Err(Failure::Input("count does not support --format dot".into()))
        }
    })
}

fn enumerate(ctx: &Ctx) -> Outcome {
    let rows: Vec<(Value, String)> = if ctx.is_a() {
        enumerate_a(ctx.n)
            .iter()
            .map(|v| (json!(v.entries()), csv_entries(v.entries())))
            .collect()
    } else {
        enumerate_s(ctx.n, &ctx.s)
            .iter()
            .map(|v| (v.to_json(), csv_entries(v.entries())))
            .collect()
    };
    let mut out = String::new();
    match ctx.format {
        None | Some(Format::Json) => rows.iter().for_each(|(j, _)| out.push_str(&line(j))),
        Some(Format::Csv) => rows.iter().for_each(|(_, c)| {
            let _ = writeln!(out, "{c}");
        }),
        Some(Format::Dot) => {
            return Err(Failure::Input(
                "enumerate does not support --format dot".into(),
            ))
        }
    }
    Ok(out)
}

fn encode_cmd(ctx: &Ctx, text: &str) -> Outcome {
    ctx.json_only()?;
    Ok(if ctx.is_a() {
        line(&json!(encode_a(&ctx.triangulation_a(text)?).entries()))
    } else {
        line(&encode(&ctx.triangulation_b(text)?).to_json())
    })
}

fn decode_cmd(ctx: &Ctx, text: &str) -> Outcome {
    ctx.json_only()?;
    Ok(if ctx.is_a() {
        line(&decode_a(&ctx.vector_a(text)?).to_json())
    } else {
        line(&decode(&ctx.vector_b(text)?).to_json())
    })
}

fn lattice_op(ctx: &Ctx, a: &str, b: &str, is_meet: bool) -> Outcome {
    ctx.json_only()?;
    if ctx.is_a() {
        let (a, b) = (ctx.vector_a(a)?, ctx.vector_a(b)?);
        let r = if is_meet {
            tamari_a::meet_a(&a, &b)
        } else {
            tamari_a::join_a(&a, &b)
        };
        return Ok(line(&json!(r.entries())));
    }
    let (a, b) = (ctx.vector_b(a)?, ctx.vector_b(b)?);
    let r = if is_meet {
        meet_s(&a, &b, &ctx.s)?
    } else {
        join_s(&a, &b, &ctx.s)?
    };
    Ok(line(&r.to_json()))
}

fn covers_cmd(ctx: &Ctx, text: &str) -> Outcome {
    ctx.json_only()?;
    if ctx.is_a() {
        let v = ctx.vector_a(text)?;
        let t = decode_a(&v);
        let mut upper: Vec<BracketVectorA> = t.green_flips().iter().map(encode_a).collect();
        upper.sort();
        let lower: Vec<BracketVectorA> = enumerate_a(ctx.n)
            .into_iter()
            .filter(|w| decode_a(w).green_flips().contains(&t))
            .collect();
        let list =
            |xs: &[BracketVectorA]| xs.iter().map(|x| json!(x.entries())).collect::<Vec<_>>();
        return Ok(line(
            &json!({ "vector": v.entries(), "upper": list(&upper), "lower": list(&lower) }),
        ));
    }
    let v = ctx.vector_b(text)?;
    let lat = ctx.lattice()?;
    let k = lat.index_of(&v)?;
    let list = |xs: &[usize]| {
        xs.iter()
            .map(|&x| lat.element(x).to_json())
            .collect::<Vec<_>>()
    };
    Ok(line(
        &json!({ "vector": v.to_json(), "upper": list(lat.upper_covers(k)), "lower": list(lat.lower_covers(k)) }),
    ))
}

fn psi_cmd(ctx: &Ctx, vector: Option<&str>, triangulation: Option<&str>) -> Outcome {
    ctx.json_only()?;
    if ctx.is_a() {
        let t = match (vector, triangulation) {
            (Some(v), _) => decode_a(&ctx.vector_a(v)?),
            (_, Some(t)) => ctx.triangulation_a(t)?,
            _ => unreachable!("clap requires one of the two"),
        };
        let p = psi_a(&t);
        return Ok(line(&json!({ "n": p.n, "blocks": p.blocks })));
    }
    let t = match (vector, triangulation) {
        (Some(v), _) => decode(&ctx.vector_b(v)?),
        (_, Some(t)) => ctx.triangulation_b(t)?,
        _ => unreachable!("clap requires one of the two"),
    };
    Ok(line(&psi(&t).to_json()))
}

fn psi_inv_cmd(ctx: &Ctx, text: &str) -> Outcome {
    ctx.json_only()?;
    if ctx.is_a() {
        return Err(Failure::Input(
            "psi-inv is only available for types b and bds".into(),
        ));
    }
    let p = NoncrossingPartitionB::from_json(&json_value(text)?)?;
    if p.n() != ctx.n {
        return Err(Error::LengthMismatch {
            expected: ctx.n,
            got: p.n(),
        }
        .into());
    }
    if !in_bds(&p, &ctx.s) {
        return Err(
            Error::InvalidPartition(format!("{p} is not in the subfamily for {}", ctx.s)).into(),
        );
    }
    let v = psi_inverse_vector(&p)?;
    Ok(line(
        &json!({ "vector": v.to_json(), "triangulation": decode(&v).to_json() }),
    ))
}

fn mobius_cmd(ctx: &Ctx, a: &str, b: &str) -> Outcome {
    if ctx.is_a() {
        return Err(Failure::Input(
            "mobius is only available for types b and bds".into(),
        ));
    }
    let (a, b) = (ctx.vector_b(a)?, ctx.vector_b(b)?);
    if !a.leq(&b) {
        return Err(Error::NotComparable(a.to_string(), b.to_string()).into());
    }
    let lat = ctx.lattice()?;
    let lab = Labelling::new(&lat, ctx.exec);
    let report = interval_report(&lab, lat.index_of(&a)?, lat.index_of(&b)?)?;
    Ok(match ctx.format {
        None => format!("mu = {}, {}\n", report.mobius, report.homotopy),
        Some(Format::Json) => line(&serde_json::to_value(&report).expect("report serializes")),
        Some(_) => return Err(Failure::Input("mobius supports --format json only".into())),
    })
}

struct Diagram {
    nodes: Vec<String>,
    edges: Vec<(usize, usize, Option<String>)>,
}

fn diagram(ctx: &Ctx) -> Result<Diagram, Failure> {
    if ctx.is_a() {
        let elements = enumerate_a(ctx.n);
        let index: std::collections::HashMap<&BracketVectorA, usize> =
            elements.iter().enumerate().map(|(k, v)| (v, k)).collect();
        let mut edges = Vec::new();
        for (k, v) in elements.iter().enumerate() {
            let mut ups: Vec<usize> = decode_a(v)
                .green_flips()
                .iter()
                .map(|t| index[&encode_a(t)])
                .collect();
            ups.sort_unstable();
            edges.extend(ups.into_iter().map(|u| (k, u, None)));
        }
        return Ok(Diagram {
            nodes: elements.iter().map(|v| v.to_string()).collect(),
            edges,
        });
    }
    let lat = ctx.lattice()?;
    let lab = Labelling::new(&lat, ctx.exec);
    let mut edges = Vec::new();
    for (a, b) in lat.edges() {
        edges.push((a, b, Some(lab.label(a, b)?.to_string())));
    }
    Ok(Diagram {
        nodes: lat.elements().iter().map(|v| v.to_string()).collect(),
        edges,
    })
}

fn hasse(ctx: &Ctx) -> Outcome {
    ctx.check_cap()?;
    let d = diagram(ctx)?;
    let mut out = String::new();
    match ctx.format.unwrap_or(Format::Dot) {
        Format::Dot => {
            out.push_str("digraph hasse {\n  rankdir=BT;\n  node [shape=plaintext];\n");
            for (k, label) in d.nodes.iter().enumerate() {
                let _ = writeln!(out, "  {k} [label=\"{label}\"];");
            }
            for (a, b, label) in &d.edges {
                match label {
                    Some(l) => writeln!(out, "  {a} -> {b} [label=\"{l}\"];"),
                    None => writeln!(out, "  {a} -> {b};"),
                }
                .expect("writing to a string");
            }
            out.push_str("}\n");
        }
        Format::Json => {
            let edges: Vec<Value> = d
                .edges
                .iter()
                .map(|(a, b, l)| json!({ "from": a, "to": b, "label": l }))
                .collect();
            out = line(&json!({ "n": ctx.n, "nodes": d.nodes, "edges": edges }));
        }
        Format::Csv => {
            out.push_str("from,to,label\n");
            for (a, b, l) in &d.edges {
                let _ = writeln!(
                    out,
                    "\"{}\",\"{}\",{}",
                    d.nodes[*a],
                    d.nodes[*b],
                    l.as_deref().unwrap_or("")
                );
            }
        }
    }
    Ok(out)
}

fn seed_from_env() -> Result<u64, Failure> {
    match std::env::var("TAMARI_SEED") {
        Ok(text) => text
            .trim()
            .parse()
            .map_err(|_| Failure::Input(format!("TAMARI_SEED must be an integer, got {text:?}"))),
        Err(_) => Ok(0),
    }
}

fn verify_cmd(ctx: &Ctx, suite: Suite) -> Outcome {
    ctx.check_cap()?;
    let opts = Options {
        exec: ctx.exec,
        seed: seed_from_env()?,
        ..Options::default()
    };
    let report = verify::run(suite, &ctx.family(), ctx.n, opts)?;
    let out = match ctx.format {
        None => {
            let mut out = format!(
                "{} {} n={}: {} checks, {} failures\n",
                report.suite,
                report.family,
                report.n,
                report.checks,
                report.failures.len()
            );
            for f in &report.failures {
                let _ = writeln!(out, "  {f}");
            }
            out
        }
        Some(Format::Json) => line(&serde_json::to_value(&report).expect("report serializes")),
        Some(_) => return Err(Failure::Input("verify supports --format json only".into())),
    };
    if report.passed() {
        Ok(out)
    } else {
        Err(Failure::Verify(out))
    }
}

fn run(command: &Command) -> (Option<PathBuf>, Outcome) {
    let common = match command {
        Command::Count(c) | Command::Enumerate(c) | Command::Hasse(c) => c,
        Command::Encode { common, .. }
        | Command::Decode { common, .. }
        | Command::Meet { common, .. }
        | Command::Join { common, .. }
        | Command::Covers { common, .. }
        | Command::Psi { common, .. }
        | Command::PsiInv { common, .. }
        | Command::Mobius { common, .. }
        | Command::Verify { common, .. } => common,
    };
    let ctx = match Ctx::new(common) {
        Ok(ctx) => ctx,
        Err(e) => return (None, Err(e)),
    };
    let outcome = match command {
        Command::Count(_) => count(&ctx),
        Command::Enumerate(_) => enumerate(&ctx),
        Command::Encode { triangulation, .. } => encode_cmd(&ctx, triangulation),
        Command::Decode { vector, .. } => decode_cmd(&ctx, vector),
        Command::Meet { a, b, .. } => lattice_op(&ctx, a, b, true),
        Command::Join { a, b, .. } => lattice_op(&ctx, a, b, false),
        Command::Covers { vector, .. } => covers_cmd(&ctx, vector),
        Command::Psi {
            vector,
            triangulation,
            ..
        } => psi_cmd(&ctx, vector.as_deref(), triangulation.as_deref()),
        Command::PsiInv { partition, .. } => psi_inv_cmd(&ctx, partition),
        Command::Mobius { a, b, .. } => mobius_cmd(&ctx, a, b),
        Command::Hasse(_) => hasse(&ctx),
        Command::Verify { suite, .. } => verify_cmd(&ctx, *suite),
    };
    (common.out.clone(), outcome)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (out, outcome) = run(&cli.command);
    let (text, code) = match outcome {
        Ok(text) => (text, 0),
        Err(Failure::Verify(text)) => (text, 2),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    if let Err(msg) = emit(&out, &text) {
        eprintln!("error: {msg}");
        return ExitCode::from(1);
    }
    ExitCode::from(code)
}
