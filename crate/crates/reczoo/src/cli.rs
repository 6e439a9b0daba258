//! The command-line front door. Every subcommand is a thin dispatch onto a
//! library operation; no set logic lives here.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fs;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use reczoo_core::monoid::{self, FiniteMonoid};
use reczoo_core::morphism::{MorphismSource, MorphismSpec};
use reczoo_core::rect::{hom_preimage_to_rectangles, CoordKind, CoordValue};
use reczoo_core::registry::{self, CaseTag};
use reczoo_core::seq::{
    self, m3_recognizer, prop6_counterexample, prop7_lengthen, prop8_counterexample,
    separation_witness, sx_build, CounterexampleKind, Domain, ExpSeq, IndexSet, Predicate, Primes,
    PropertySpec,
};
use reczoo_core::{PeriodicSet, Rational, UltimatelyPeriodicSet};

use crate::doc::{self, TypedSet};
use crate::oracle::{self, CheckId, FaultMode, OracleConfig};
use crate::{cay, expr, table};

#[derive(Parser)]
#[command(
    name = "reczoo",
    version,
    about = "Exact calculus of recognizable subsets of numeric monoids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Finite monoids given by Cayley tables
    Monoid {
        #[command(subcommand)]
        cmd: MonoidCmd,
    },
    /// Ultimately periodic and periodic set algebra
    Addset {
        #[command(subcommand)]
        cmd: AddsetCmd,
    },
    /// The finite recognizable-subset lattices of the number monoids
    Lattice {
        #[command(subcommand)]
        cmd: LatticeCmd,
    },
    /// Rectangle unions over product monoids
    Rect {
        #[command(subcommand)]
        cmd: RectCmd,
    },
    /// Exponent sequences, partitions and their recognizable subsets
    Seq {
        #[command(subcommand)]
        cmd: SeqCmd,
    },
    /// Membership of positive naturals under multiplication
    Natmul {
        #[command(subcommand)]
        cmd: NatmulCmd,
    },
    /// Membership of positive rationals under multiplication
    Ratmul {
        #[command(subcommand)]
        cmd: RatmulCmd,
    },
    /// Witness constructions from the non-recognizability arguments
    Witness {
        #[command(subcommand)]
        cmd: WitnessCmd,
    },
    /// The summary table of recognizable subsets of the number monoids
    Table1,
    /// Brute-force verification suites
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum MonoidCmd {
    /// Validate a Cayley table
    Validate {
        #[arg(long)]
        table: String,
    },
    /// List the idempotent elements
    Idempotents {
        #[arg(long)]
        table: String,
    },
    /// The idempotent power of an element
    Omega {
        #[arg(long)]
        table: String,
        #[arg(long)]
        element: usize,
    },
    /// The absorbing element, if any
    Zero {
        #[arg(long)]
        table: String,
    },
    /// Direct product of two tables
    Product {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// The verification catalog
    Catalog {
        #[arg(long, default_value_t = 3)]
        max_exhaustive: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OpKind {
    Union,
    Intersect,
    Complement,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SourceKind {
    Nat,
    Int,
}

#[derive(Args)]
struct OpArgs {
    #[arg(long, value_enum)]
    op: Option<OpKind>,
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    b: Option<String>,
    /// Inline expression: union(...), intersect(...), complement(...) over
    /// document paths
    #[arg(long, conflicts_with_all = ["op", "a", "b"])]
    expr: Option<String>,
    /// Re-canonicalize non-canonical input documents instead of rejecting
    #[arg(long)]
    normalize: bool,
}

#[derive(Subcommand)]
enum AddsetCmd {
    /// Membership of a number
    Member {
        #[arg(long)]
        set: String,
        #[arg(long)]
        n: i64,
        #[arg(long)]
        normalize: bool,
    },
    /// Boolean algebra on set documents
    Op(OpArgs),
    /// Equality of two set documents
    Eq {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        normalize: bool,
    },
    /// The preimage of an accepting set under a single-generator morphism
    FromMorphism {
        #[arg(long)]
        table: String,
        #[arg(long)]
        image: usize,
        /// Comma-separated accepting element indices
        #[arg(long)]
        accepting: String,
        #[arg(long, value_enum)]
        source: SourceKind,
    },
    /// The syntactic recognizing morphism of a set
    ToMorphism {
        #[arg(long)]
        set: String,
        #[arg(long)]
        normalize: bool,
    },
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Print the full lattice of a registry monoid
    Show {
        #[arg(long)]
        monoid: String,
    },
    /// Decide whether an atom names a recognizable subset
    Check {
        #[arg(long)]
        monoid: String,
        #[arg(long)]
        atom: String,
    },
    /// The lattice of the zero extension
    AdjoinZero {
        #[arg(long)]
        monoid: String,
    },
}

#[derive(Subcommand)]
enum RectCmd {
    /// Membership of a point, written as comma-separated coordinates
    Member {
        #[arg(long)]
        set: String,
        #[arg(long)]
        point: String,
        #[arg(long)]
        normalize: bool,
    },
    Op(OpArgs),
    Eq {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        normalize: bool,
    },
    /// Rectangles for a morphism preimage on a commutative product
    FromHom {
        #[arg(long)]
        table: String,
        /// Comma-separated generator image indices
        #[arg(long)]
        images: String,
        #[arg(long)]
        accepting: String,
        /// Comma-separated coordinate kinds (nat or int)
        #[arg(long)]
        kinds: String,
    },
}

#[derive(Subcommand)]
enum SeqCmd {
    /// Pointwise sum of two sequences
    Add {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        normalize: bool,
    },
    /// The generator sequence at an index
    Sigma {
        #[arg(long, value_enum)]
        domain: SourceKind,
        #[arg(long)]
        n: i64,
    },
    /// The class sums of a sequence under a partition
    Project {
        #[arg(long)]
        partition: String,
        #[arg(long)]
        seq: String,
        #[arg(long)]
        normalize: bool,
    },
    /// Membership of a sequence in a recognizable sequence set
    Member {
        #[arg(long)]
        set: String,
        #[arg(long)]
        seq: String,
        #[arg(long)]
        normalize: bool,
    },
    Op(OpArgs),
    /// Prime exponent sequence of a natural or positive rational
    Factorize {
        #[arg(long, conflicts_with = "q")]
        n: Option<u64>,
        /// A positive rational, written p/q
        #[arg(long)]
        q: Option<String>,
    },
}

#[derive(Subcommand)]
enum NatmulCmd {
    Member {
        #[arg(long)]
        set: String,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        normalize: bool,
    },
}

#[derive(Subcommand)]
enum RatmulCmd {
    Member {
        #[arg(long)]
        set: String,
        /// A positive rational, written p/q
        #[arg(long)]
        q: String,
        #[arg(long)]
        normalize: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Length,
    Forall,
    Exists,
}

impl From<KindArg> for CounterexampleKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Length => CounterexampleKind::Length,
            KindArg::Forall => CounterexampleKind::Forall,
            KindArg::Exists => CounterexampleKind::Exists,
        }
    }
}

#[derive(Subcommand)]
enum WitnessCmd {
    /// A pair with equal projections on opposite sides of a natural-domain
    /// set shape
    Prop6 {
        #[arg(long, value_enum)]
        kind: KindArg,
        /// even | odd | multiple-of-<k> | prime
        #[arg(long)]
        property: String,
        #[arg(long)]
        partition: String,
        #[arg(long)]
        seed_seq: Option<String>,
        #[arg(long, default_value_t = 2000)]
        bound: u64,
        #[arg(long)]
        normalize: bool,
    },
    /// Lengthen a member of a nonempty integer-sequence set
    Prop7 {
        #[arg(long)]
        set: String,
        #[arg(long)]
        seq: String,
        #[arg(long)]
        min_length: u64,
        #[arg(long)]
        normalize: bool,
    },
    /// The integer-domain counterexample pair
    Prop8 {
        #[arg(long, value_enum)]
        kind: KindArg,
        /// even | odd | multiple-of-<k> | nonneg
        #[arg(long)]
        property: String,
        #[arg(long)]
        partition: String,
        #[arg(long, default_value_t = 2000)]
        bound: u64,
        #[arg(long)]
        normalize: bool,
    },
    /// Separate two bounded index families, when possible
    SxSeparate {
        /// Comma-separated nonzero integers
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// The three-element recognizer of a generator family
    M3 {
        /// Comma-separated generator indices
        #[arg(long)]
        indices: String,
        /// Interpret the indices as the complement of the family
        #[arg(long)]
        cofinite: bool,
        /// Evaluate the morphism on a sequence document
        #[arg(long)]
        eval: Option<String>,
        #[arg(long)]
        normalize: bool,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// all | up | periodic | divisibility | mezei | sequence | registry
    #[arg(default_value = "all")]
    which: String,
    /// Seed for the randomized instances (RECZOO_SEED overrides the default)
    #[arg(long)]
    seed: Option<u64>,
    /// Emit the machine-readable report
    #[arg(long)]
    json: bool,
    /// Negative control: corrupt exactly one targeted check
    #[arg(long)]
    fault: Option<String>,
    /// Smaller bounds for quick runs
    #[arg(long)]
    quick: bool,
}

#[derive(Debug, Error)]
enum CliError {
    /// Exit code 1: a domain error from the library, reported verbatim.
    #[error("{0}")]
    Domain(String),
    /// Exit code 2: unusable arguments or malformed input files.
    #[error("{0}")]
    Usage(String),
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn read_input(path_or_inline: &str) -> Result<String, CliError> {
    if path_or_inline.trim_start().starts_with('{') {
        Ok(path_or_inline.to_string())
    } else {
        fs::read_to_string(path_or_inline)
            .map_err(|e| usage(format!("cannot read '{path_or_inline}': {e}")))
    }
}

fn load_set(path_or_inline: &str, normalize: bool) -> Result<TypedSet, CliError> {
    let text = read_input(path_or_inline)?;
    doc::parse_str(&text, normalize).map_err(|e| match e {
        doc::DocError::Parse(inner) => usage(format!("parse error: {inner}")),
        other => domain(other),
    })
}

fn load_monoid(path: &str) -> Result<FiniteMonoid, CliError> {
    let text = read_input(path)?;
    cay::parse_cay(&text).map_err(domain)
}

fn parse_indices(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| usage(format!("bad index '{s}'"))))
        .collect()
}

fn parse_rational(text: &str) -> Result<Rational, CliError> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let n: i64 = num.parse().map_err(|_| usage(format!("bad numerator '{num}'")))?;
    let d: i64 = den.parse().map_err(|_| usage(format!("bad denominator '{den}'")))?;
    if d == 0 {
        return Err(usage("zero denominator"));
    }
    Ok(Rational::new(n, d))
}

fn parse_property(name: &str, domain_tag: Domain) -> Result<PropertySpec, CliError> {
    match name {
        "even" => Ok(PropertySpec::even(domain_tag)),
        "odd" => Ok(PropertySpec::odd(domain_tag)),
        "nonneg" => Ok(PropertySpec::nonneg()),
        "prime" => Ok(PropertySpec::prime_with_bound(1000)),
        other => match other.strip_prefix("multiple-of-") {
            Some(k) => {
                let k: i64 = k.parse().map_err(|_| usage(format!("bad modulus in '{other}'")))?;
                if k == 0 {
                    return Err(usage("multiple-of-0 is not a property"));
                }
                Ok(PropertySpec::multiple_of(domain_tag, k))
            }
            None => Err(usage(format!(
                "unknown property '{other}' (even, odd, multiple-of-<k>, nonneg, prime)"
            ))),
        },
    }
}

fn parse_point(text: &str, kinds: &[CoordKind]) -> Result<Vec<CoordValue>, CliError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != kinds.len() {
        return Err(usage(format!(
            "point has {} coordinates, signature has {}",
            parts.len(),
            kinds.len()
        )));
    }
    parts
        .iter()
        .zip(kinds)
        .map(|(&s, &kind)| match kind {
            CoordKind::Nat => s
                .parse()
                .map(CoordValue::Nat)
                .map_err(|_| usage(format!("bad natural '{s}'"))),
            CoordKind::Int => s
                .parse()
                .map(CoordValue::Int)
                .map_err(|_| usage(format!("bad integer '{s}'"))),
            CoordKind::Sign => match s {
                "+1" | "+" => Ok(CoordValue::Sign(1)),
                "-1" | "-" => Ok(CoordValue::Sign(-1)),
                _ => Err(usage(format!("bad sign '{s}' (+1 or -1)"))),
            },
            CoordKind::Registry(_) => match s {
                "zero" => Ok(CoordValue::Case(CaseTag::Zero)),
                "positive" => Ok(CoordValue::Case(CaseTag::Positive)),
                "negative" => Ok(CoordValue::Case(CaseTag::Negative)),
                "nonzero" => Ok(CoordValue::Case(CaseTag::NonZero)),
                _ => Err(usage(format!("bad case '{s}'"))),
            },
        })
        .collect()
}

fn seq_doc(seq: &ExpSeq) -> String {
    doc::render(&TypedSet::Seq(seq.clone()))
}

fn expect_seq(value: TypedSet) -> Result<ExpSeq, CliError> {
    match value {
        TypedSet::Seq(s) => Ok(s),
        other => Err(usage(format!("expected an expseq document, got {}", other.kind_name()))),
    }
}

fn run_op(args: &OpArgs) -> Result<TypedSet, CliError> {
    if let Some(expression) = &args.expr {
        return expr::evaluate(expression, args.normalize).map_err(domain);
    }
    let op = args.op.ok_or_else(|| usage("--op or --expr is required"))?;
    let a = load_set(args.a.as_deref().ok_or_else(|| usage("--a is required"))?, args.normalize)?;
    match op {
        OpKind::Complement => expr::complement_set(a).map_err(domain),
        OpKind::Union | OpKind::Intersect => {
            let b = load_set(
                args.b.as_deref().ok_or_else(|| usage("--b is required"))?,
                args.normalize,
            )?;
            match op {
                OpKind::Union => expr::union_sets(a, b).map_err(domain),
                OpKind::Intersect => expr::intersect_sets(a, b).map_err(domain),
                OpKind::Complement => unreachable!(),
            }
        }
    }
}

fn monoid_id(name: &str) -> Result<registry::NumberMonoidId, CliError> {
    registry::NumberMonoidId::from_cli_name(name)
        .ok_or_else(|| usage(format!("unknown monoid id '{name}'")))
}

fn execute(command: Command) -> Result<(String, i32), CliError> {
    let mut out = String::new();
    let mut code = 0;
    match command {
        Command::Monoid { cmd } => match cmd {
            MonoidCmd::Validate { table } => {
                let m = load_monoid(&table)?;
                out = format!("valid: size {}, unit {}\n", m.size(), m.unit().index());
            }
            MonoidCmd::Idempotents { table } => {
                let m = load_monoid(&table)?;
                let ids: Vec<String> =
                    m.idempotents().iter().map(|e| e.index().to_string()).collect();
                out = format!("{}\n", ids.join(" "));
            }
            MonoidCmd::Omega { table, element } => {
                let m = load_monoid(&table)?;
                let g = m.element(element).map_err(domain)?;
                out = format!("{}\n", m.omega_power(g).index());
            }
            MonoidCmd::Zero { table } => {
                let m = load_monoid(&table)?;
                out = match m.find_zero() {
                    Some(z) => format!("{}\n", z.index()),
                    None => "none\n".to_string(),
                };
            }
            MonoidCmd::Product { left, right } => {
                let a = load_monoid(&left)?;
                let b = load_monoid(&right)?;
                out = cay::write_cay(&a.direct_product(&b));
            }
            MonoidCmd::Catalog { max_exhaustive } => {
                let list = monoid::catalog(max_exhaustive).map_err(domain)?;
                for m in &list {
                    out.push_str(&format!(
                        "{} {}\n",
                        m.name().unwrap_or("(unnamed)"),
                        m.size()
                    ));
                }
                out.push_str(&format!("total: {}\n", list.len()));
            }
        },
        Command::Addset { cmd } => match cmd {
            AddsetCmd::Member { set, n, normalize } => {
                let value = match load_set(&set, normalize)? {
                    TypedSet::Up(u) => {
                        let n = u64::try_from(n)
                            .map_err(|_| domain("ultimately periodic sets live on the naturals"))?;
                        u.member(n)
                    }
                    TypedSet::Periodic(p) => p.member(n),
                    other => {
                        return Err(usage(format!(
                            "expected an up or periodic document, got {}",
                            other.kind_name()
                        )))
                    }
                };
                out = format!("{value}\n");
            }
            AddsetCmd::Op(args) => {
                let result = run_op(&args)?;
                out = format!("{}\n", doc::render(&result));
            }
            AddsetCmd::Eq { a, b, normalize } => {
                let equal = match (load_set(&a, normalize)?, load_set(&b, normalize)?) {
                    (TypedSet::Up(x), TypedSet::Up(y)) => x == y,
                    (TypedSet::Periodic(x), TypedSet::Periodic(y)) => x == y,
                    (x, y) => {
                        return Err(usage(format!(
                            "cannot compare {} with {}",
                            x.kind_name(),
                            y.kind_name()
                        )))
                    }
                };
                out = format!("{equal}\n");
            }
            AddsetCmd::FromMorphism {
                table,
                image,
                accepting,
                source,
            } => {
                let m = load_monoid(&table)?;
                let g = m.element(image).map_err(domain)?;
                let accepting: BTreeSet<_> = parse_indices(&accepting)?
                    .into_iter()
                    .map(|i| m.element(i).map_err(domain))
                    .collect::<Result<_, _>>()?;
                let (src, value) = match source {
                    SourceKind::Nat => (MorphismSource::Nat, None),
                    SourceKind::Int => (MorphismSource::Int, Some(())),
                };
                let spec =
                    MorphismSpec::new(src, m, vec![g], accepting).map_err(domain)?;
                out = match value {
                    None => {
                        let u = UltimatelyPeriodicSet::from_morphism(&spec).map_err(domain)?;
                        format!("{}\n", doc::render(&TypedSet::Up(u)))
                    }
                    Some(()) => {
                        let p = PeriodicSet::from_morphism(&spec).map_err(domain)?;
                        format!("{}\n", doc::render(&TypedSet::Periodic(p)))
                    }
                };
            }
            AddsetCmd::ToMorphism { set, normalize } => {
                let spec = match load_set(&set, normalize)? {
                    TypedSet::Up(u) => u.to_syntactic_morphism(),
                    TypedSet::Periodic(p) => p.to_morphism(),
                    other => {
                        return Err(usage(format!(
                            "expected an up or periodic document, got {}",
                            other.kind_name()
                        )))
                    }
                };
                out.push_str(&cay::write_cay(spec.target()));
                out.push_str(&format!("image: {}\n", spec.images()[0].index()));
                let acc: Vec<String> =
                    spec.accepting().iter().map(|e| e.index().to_string()).collect();
                out.push_str(&format!("accepting: {}\n", acc.join(" ")));
            }
        },
        Command::Lattice { cmd } => match cmd {
            LatticeCmd::Show { monoid } => {
                let id = monoid_id(&monoid)?;
                out = table::lattice_text(id).map_err(domain)?;
            }
            LatticeCmd::Check { monoid, atom } => {
                let id = monoid_id(&monoid)?;
                let atom = registry::Atom::from_cli_name(&atom)
                    .ok_or_else(|| usage(format!("unknown atom '{atom}'")))?;
                let set = registry::SymbolicSet::new(id, atom).map_err(domain)?;
                let verdict = registry::is_recognizable(set).map_err(domain)?;
                if verdict.recognizable {
                    let rec = verdict.recognizer.expect("present when recognizable");
                    out.push_str(&format!("recognizable: {set}\n"));
                    out.push_str(&format!("recognizer size: {}\n", rec.monoid.size()));
                    for (case, element) in &rec.case_images {
                        out.push_str(&format!("  case {case:?} -> element {}\n", element.index()));
                    }
                    let acc: Vec<String> =
                        rec.accepting.iter().map(|e| e.index().to_string()).collect();
                    out.push_str(&format!("accepting: {{{}}}\n", acc.join(", ")));
                } else {
                    out.push_str(&format!("not recognizable: {set}\n"));
                    let names: Vec<String> =
                        verdict.lattice.iter().map(|s| s.to_string()).collect();
                    out.push_str(&format!("lattice: {{{}}}\n", names.join(", ")));
                    code = 1;
                }
            }
            LatticeCmd::AdjoinZero { monoid } => {
                let id = monoid_id(&monoid)?;
                let base = registry::rec_lattice(id).map_err(domain)?;
                let doubled = registry::adjoin_zero_rec(&base).map_err(domain)?;
                let target = id.zero_extension().expect("adjoin_zero_rec checked this");
                out.push_str(&format!("{}\n", table::lattice_header(target)));
                for s in doubled {
                    out.push_str(&format!("  {s}\n"));
                }
            }
        },
        Command::Rect { cmd } => match cmd {
            RectCmd::Member { set, point, normalize } => {
                let TypedSet::Rect(r) = load_set(&set, normalize)? else {
                    return Err(usage("expected a rect_union document"));
                };
                let point = parse_point(&point, r.signature())?;
                out = format!("{}\n", r.member(&point).map_err(domain)?);
            }
            RectCmd::Op(args) => {
                let result = run_op(&args)?;
                out = format!("{}\n", doc::render(&result));
            }
            RectCmd::Eq { a, b, normalize } => {
                let (TypedSet::Rect(x), TypedSet::Rect(y)) =
                    (load_set(&a, normalize)?, load_set(&b, normalize)?)
                else {
                    return Err(usage("expected two rect_union documents"));
                };
                out = format!("{}\n", x.equal(&y).map_err(domain)?);
            }
            RectCmd::FromHom {
                table,
                images,
                accepting,
                kinds,
            } => {
                let m = load_monoid(&table)?;
                let gens = parse_indices(&images)?
                    .into_iter()
                    .map(|i| m.element(i).map_err(domain))
                    .collect::<Result<Vec<_>, _>>()?;
                let accepting: BTreeSet<_> = parse_indices(&accepting)?
                    .into_iter()
                    .map(|i| m.element(i).map_err(domain))
                    .collect::<Result<_, _>>()?;
                let kinds: Vec<CoordKind> = kinds
                    .split(',')
                    .map(|s| match s.trim() {
                        "nat" => Ok(CoordKind::Nat),
                        "int" => Ok(CoordKind::Int),
                        other => Err(usage(format!("bad coordinate kind '{other}'"))),
                    })
                    .collect::<Result<_, _>>()?;
                let rects =
                    hom_preimage_to_rectangles(&m, &gens, &accepting, &kinds).map_err(domain)?;
                out = format!("{}\n", doc::render(&TypedSet::Rect(rects)));
            }
        },
        Command::Seq { cmd } => match cmd {
            SeqCmd::Add { a, b, normalize } => {
                let x = expect_seq(load_set(&a, normalize)?)?;
                let y = expect_seq(load_set(&b, normalize)?)?;
                out = format!("{}\n", seq_doc(&x.add(&y).map_err(domain)?));
            }
            SeqCmd::Sigma { domain: d, n } => {
                let seq = match d {
                    SourceKind::Nat => {
                        let n = u64::try_from(n)
                            .map_err(|_| usage("natural-domain indices are non-negative"))?;
                        seq::sigma_nat(n)
                    }
                    SourceKind::Int => seq::sigma_int(n),
                };
                out = format!("{}\n", seq_doc(&seq));
            }
            SeqCmd::Project {
                partition,
                seq,
                normalize,
            } => {
                let TypedSet::Partition(part) = load_set(&partition, normalize)? else {
                    return Err(usage("expected a partition document"));
                };
                let s = expect_seq(load_set(&seq, normalize)?)?;
                let coords = part.project(&s).map_err(domain)?;
                let rendered: Vec<String> = coords.iter().map(i64::to_string).collect();
                out = format!("{}\n", rendered.join(" "));
            }
            SeqCmd::Member { set, seq, normalize } => {
                let TypedSet::RecSeq(s) = load_set(&set, normalize)? else {
                    return Err(usage("expected a recseq document"));
                };
                let q = expect_seq(load_set(&seq, normalize)?)?;
                out = format!("{}\n", s.member(&q).map_err(domain)?);
            }
            SeqCmd::Op(args) => {
                let result = run_op(&args)?;
                out = format!("{}\n", doc::render(&result));
            }
            SeqCmd::Factorize { n, q } => {
                let mut primes = Primes::new();
                let seq = match (n, q) {
                    (Some(n), None) => primes.factorize(n).map_err(domain)?,
                    (None, Some(q)) => {
                        primes.rat_factorize(parse_rational(&q)?).map_err(domain)?
                    }
                    _ => return Err(usage("exactly one of --n or --q is required")),
                };
                out = format!("{}\n", seq_doc(&seq));
            }
        },
        Command::Natmul { cmd } => match cmd {
            NatmulCmd::Member { set, n, normalize } => {
                let TypedSet::RecSeq(s) = load_set(&set, normalize)? else {
                    return Err(usage("expected a recseq document"));
                };
                let mut primes = Primes::new();
                out = format!("{}\n", s.nat_member(&mut primes, n).map_err(domain)?);
            }
        },
        Command::Ratmul { cmd } => match cmd {
            RatmulCmd::Member { set, q, normalize } => {
                let TypedSet::RecSeq(s) = load_set(&set, normalize)? else {
                    return Err(usage("expected a recseq document"));
                };
                let mut primes = Primes::new();
                let q = parse_rational(&q)?;
                out = format!("{}\n", s.rat_member(&mut primes, q).map_err(domain)?);
            }
        },
        Command::Witness { cmd } => match cmd {
            WitnessCmd::Prop6 {
                kind,
                property,
                partition,
                seed_seq,
                bound,
                normalize,
            } => {
                let TypedSet::Partition(part) = load_set(&partition, normalize)? else {
                    return Err(usage("expected a partition document"));
                };
                let p = parse_property(&property, Domain::Nat)?;
                let seed = seed_seq
                    .map(|path| expect_seq(load_set(&path, normalize)?))
                    .transpose()?;
                let (s1, s2) =
                    prop6_counterexample(kind.into(), &p, &part, seed.as_ref(), bound)
                        .map_err(domain)?;
                out.push_str(&format!("s1: {}\n", seq_doc(&s1)));
                out.push_str(&format!("s2: {}\n", seq_doc(&s2)));
                let pi = part.project(&s1).map_err(domain)?;
                let rendered: Vec<String> = pi.iter().map(i64::to_string).collect();
                out.push_str(&format!("projection: {}\n", rendered.join(" ")));
            }
            WitnessCmd::Prop7 {
                set,
                seq,
                min_length,
                normalize,
            } => {
                let TypedSet::RecSeq(s) = load_set(&set, normalize)? else {
                    return Err(usage("expected a recseq document"));
                };
                let member = expect_seq(load_set(&seq, normalize)?)?;
                let longer = prop7_lengthen(&s, &member, min_length).map_err(domain)?;
                out = format!("{}\n", seq_doc(&longer));
            }
            WitnessCmd::Prop8 {
                kind,
                property,
                partition,
                bound,
                normalize,
            } => {
                let TypedSet::Partition(part) = load_set(&partition, normalize)? else {
                    return Err(usage("expected a partition document"));
                };
                let p = parse_property(&property, Domain::Int)?;
                let (s1, s2) =
                    prop8_counterexample(kind.into(), &p, &part, bound).map_err(domain)?;
                out.push_str(&format!("s1: {}\n", seq_doc(&s1)));
                out.push_str(&format!("s2: {}\n", seq_doc(&s2)));
            }
            WitnessCmd::SxSeparate { x, y } => {
                let parse_family = |text: &str| -> Result<BTreeSet<i64>, CliError> {
                    text.split(',')
                        .map(str::trim)
                        .filter(|s| !s.is_empty())
                        .map(|s| s.parse().map_err(|_| usage(format!("bad integer '{s}'"))))
                        .collect()
                };
                let a = sx_build(&parse_family(&x)?).map_err(domain)?;
                let b = sx_build(&parse_family(&y)?).map_err(domain)?;
                match separation_witness(&a, &b) {
                    Some(w) => {
                        let in_a = a.member(&w).map_err(domain)?;
                        out.push_str(&format!("witness: {}\n", seq_doc(&w)));
                        out.push_str(&format!(
                            "in first: {in_a}\nin second: {}\n",
                            b.member(&w).map_err(domain)?
                        ));
                    }
                    None => {
                        out.push_str("identical recognizers (same tracked positions)\n");
                        code = 1;
                    }
                }
            }
            WitnessCmd::M3 {
                indices,
                cofinite,
                eval,
                normalize,
            } => {
                let listed: BTreeSet<u64> = indices
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse().map_err(|_| usage(format!("bad index '{s}'"))))
                    .collect::<Result<_, _>>()?;
                let family = if cofinite {
                    IndexSet::Cofinite(listed)
                } else {
                    IndexSet::Finite(listed)
                };
                let rec = m3_recognizer(family);
                out.push_str(&cay::write_cay(rec.monoid()));
                if let Some(path) = eval {
                    let seq = expect_seq(load_set(&path, normalize)?)?;
                    let value = rec.eval(&seq).map_err(domain)?;
                    out.push_str(&format!("value: {}\n", value.index()));
                    out.push_str(&format!("accepted: {}\n", value.index() == 1));
                }
            }
        },
        Command::Table1 => {
            out = table::table1();
        }
        Command::Verify(args) => {
            let mut cfg = if args.quick {
                OracleConfig::quick(0, None)
            } else {
                OracleConfig::default()
            };
            if let Ok(seed_text) = std::env::var("RECZOO_SEED") {
                cfg.seed = seed_text
                    .parse()
                    .map_err(|_| usage(format!("RECZOO_SEED is not a number: '{seed_text}'")))?;
            }
            if let Some(seed) = args.seed {
                cfg.seed = seed;
            }
            if let Some(fault) = &args.fault {
                cfg.fault = Some(
                    FaultMode::from_cli_name(fault)
                        .ok_or_else(|| usage(format!("unknown fault mode '{fault}'")))?,
                );
            }
            let report = if args.which == "all" {
                oracle::verify_all(&cfg)
            } else {
                let id = CheckId::from_cli_name(&args.which)
                    .ok_or_else(|| usage(format!("unknown check '{}'", args.which)))?;
                oracle::verify_one(id, &cfg)
            };
            out = if args.json {
                format!("{}\n", report.render_json())
            } else {
                report.render_text()
            };
            code = if report.passed() { 0 } else { 1 };
        }
    }
    Ok((out, code))
}

/// Parses and runs a command line; returns the process exit code.
/// 0 on success, 1 for domain failures, 2 for usage errors.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok((out, code)) => {
            print!("{out}");
            code
        }
        Err(CliError::Domain(message)) => {
            eprintln!("error: {message}");
            1
        }
        Err(CliError::Usage(message)) => {
            eprintln!("usage error: {message}");
            2
        }
    }
}
