//! Command-line front end.
//!
//! Complex arguments are `.scx` paths, or `@name` for an embedded fixture such as `@ex_l`.
//! Exit codes: 0 success, 2 usage or input error, 3 no map exists, 4 undecided,
//! 5 property violation.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::coloring::{chromatic_number, graph_chromatic_number};
use crate::complex::{generate, Complex, GenParams, GeneratorKind};
use crate::complexity::{bounds_with, compute_with, BoundReport, ComplexityQuery, ComputeOptions, DEFAULT_FACET_CAP};
use crate::error::Error;
use crate::fixtures;
use crate::homsearch::{find_map, MapKind, SearchLimits, SearchProblem, SearchStatus};
use crate::maps::VertexMap;
use crate::oracle::{brute_force_chromatic, brute_force_cover_complexity, brute_force_map_search, OracleLimits};
use crate::scx::{parse_map, parse_scx, serialize_map, serialize_scx};
use crate::verify::{replay, verify, Check, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NONE: i32 = 3;
pub const EXIT_UNDECIDED: i32 = 4;
pub const EXIT_VIOLATION: i32 = 5;

#[derive(Parser, Debug)]
#[command(name = "facetcx", version, about = "Facet maps and facet-complexity between simplicial complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimension, facet count, purity and degrees of a complex.
    Info {
        complex: String,
        #[arg(long)]
        json: bool,
    },
    /// Chromatic number with an optimal colouring.
    Chromatic {
        complex: String,
        /// Colour the facet graph G_L instead.
        #[arg(long, conflicts_with = "strict_chromatic")]
        graph: bool,
        /// Colour the underlying graph, giving the strict chromatic number.
        #[arg(long)]
        strict_chromatic: bool,
        #[arg(long)]
        json: bool,
    },
    /// Search for a facet or strict simplicial map.
    MapCheck {
        source: String,
        target: String,
        #[arg(long, value_enum, default_value = "facet")]
        kind: KindArg,
        #[arg(long)]
        injective: bool,
        #[command(flatten)]
        budget: Budget,
        #[arg(long)]
        json: bool,
    },
    /// Classify a map given in `m <source> <target>` lines.
    Classify {
        source: String,
        target: String,
        map: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Facet-complexity with a certificate cover.
    Complexity {
        source: String,
        target: String,
        #[arg(long)]
        injective: bool,
        /// Use strict maps (C_s, IC_s).
        #[arg(long)]
        strict: bool,
        /// Report bounds without the exact search.
        #[arg(long)]
        bounds_only: bool,
        #[arg(long, default_value_t = DEFAULT_FACET_CAP)]
        facet_cap: usize,
        #[command(flatten)]
        budget: Budget,
        #[arg(long)]
        json: bool,
    },
    /// Lower and upper bounds on the facet-complexity.
    Bounds {
        source: String,
        target: String,
        #[arg(long)]
        injective: bool,
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        json: bool,
    },
    /// Generate a complex: gamma n, kn n or random n.
    Gen {
        #[arg(value_enum)]
        kind: GenArg,
        n: usize,
        #[arg(long, default_value_t = 3)]
        max_facet_size: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        name: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The q-skeleton of a complex.
    Skeleton {
        complex: String,
        q: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print an embedded fixture (ex_l, ex_k, l1, l2, a, b, k3_star).
    Fixture { name: String },
    /// Run the seeded property suites and the worked examples.
    Verify(VerifyArgs),
    /// Brute-force reference computations.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
}

#[derive(Args, Debug)]
struct Budget {
    /// Stop a single map search after this many nodes.
    #[arg(long)]
    node_budget: Option<u64>,
    /// Stop a single map search after this many seconds.
    #[arg(long)]
    time_budget: Option<f64>,
}

impl Budget {
    fn limits(&self) -> SearchLimits {
        SearchLimits {
            node_budget: self.node_budget.unwrap_or(u64::MAX),
            time_budget: self.time_budget.map(Duration::from_secs_f64),
        }
    }
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 7)]
    max_vertices: usize,
    #[arg(long, default_value_t = 4)]
    max_facet_size: usize,
    /// Suite to run; repeat for several. All suites run when none is given.
    #[arg(long = "property")]
    properties: Vec<String>,
    /// Only recompute the worked examples.
    #[arg(long, conflicts_with = "properties")]
    fixtures_only: bool,
    #[arg(long)]
    no_fixtures: bool,
    #[arg(long)]
    no_observations: bool,
    /// Directory for counterexample bundles.
    #[arg(long, default_value = "counterexamples")]
    bundle_dir: PathBuf,
    /// Re-run a counterexample bundle instead.
    #[arg(long)]
    replay: Option<PathBuf>,
    /// List the suites and exit.
    #[arg(long)]
    list: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    MapCheck {
        source: String,
        target: String,
        #[arg(long, value_enum, default_value = "facet")]
        kind: KindArg,
        #[arg(long)]
        injective: bool,
        #[arg(long)]
        json: bool,
    },
    Complexity {
        source: String,
        target: String,
        #[arg(long)]
        injective: bool,
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        json: bool,
    },
    Chromatic {
        complex: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Facet,
    Strict,
}

impl From<KindArg> for MapKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Facet => MapKind::Facet,
            KindArg::Strict => MapKind::Strict,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GenArg {
    Gamma,
    Kn,
    Random,
}

/// Run the command line `argv` (including the program name), writing reports to `out` and
/// diagnostics to `err`. Returns the exit code.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Undecided { .. } => EXIT_UNDECIDED,
                Error::FacetCapExceeded { .. } => {
                    let _ = writeln!(err, "hint: use --bounds-only or raise --facet-cap");
                    EXIT_USAGE
                }
                _ => EXIT_USAGE,
            }
        }
    }
}

type Outcome = Result<i32, Error>;

fn load(arg: &str) -> Result<Complex, Error> {
    if let Some(name) = arg.strip_prefix('@') {
        return fixtures::by_name(name).ok_or_else(|| Error::InvalidParameter(format!("no fixture named {name:?}")));
    }
    let text = std::fs::read_to_string(arg)?;
    let c = parse_scx(&text)?;
    if c.name().is_some() {
        return Ok(c);
    }
    let stem = Path::new(arg).file_stem().and_then(|s| s.to_str()).unwrap_or(arg);
    Ok(c.with_name(stem))
}

fn display_name(c: &Complex, fallback: &str) -> String {
    c.name().unwrap_or(fallback).to_string()
}

fn facet_lists(c: &Complex) -> Vec<Vec<String>> {
    c.facets().iter().map(|f| c.names(*f)).collect()
}

fn map_json(m: &VertexMap) -> Value {
    let pairs: BTreeMap<&str, &str> = m.pairs().into_iter().collect();
    json!(pairs)
}

fn emit(out: &mut dyn Write, v: &Value) -> Result<(), Error> {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("json values serialize"))?;
    Ok(())
}

fn write_scx(out: &mut dyn Write, c: &Complex, output: Option<&Path>) -> Outcome {
    let text = serialize_scx(c);
    match output {
        Some(p) => {
            std::fs::write(p, text)?;
            writeln!(out, "wrote {}", p.display())?;
        }
        None => write!(out, "{text}")?,
    }
    Ok(EXIT_OK)
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Info { complex, json } => info(&load(&complex)?, json, out),
        Command::Chromatic { complex, graph, strict_chromatic, json } => {
            chromatic(&load(&complex)?, graph, strict_chromatic, json, out)
        }
        Command::MapCheck { source, target, kind, injective, budget, json } => {
            let (l, k) = (load(&source)?, load(&target)?);
            map_check(&l, &k, kind.into(), injective, budget.limits(), json, out)
        }
        Command::Classify { source, target, map, json } => {
            let (l, k) = (load(&source)?, load(&target)?);
            let m = parse_map(&std::fs::read_to_string(map)?, &l, &k)?;
            let class = m.classify();
            if json {
                emit(out, &json!({ "schema": 1, "class": class }))?;
            } else {
                writeln!(
                    out,
                    "simplicial {}\nstrict {}\nfacet {}\ninjective {}",
                    class.simplicial, class.strict, class.facet, class.injective
                )?;
                if let Some(w) = &class.witness {
                    writeln!(out, "witness {:?} {{{}}}", w.property, w.simplex.join(","))?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Complexity { source, target, injective, strict, bounds_only, facet_cap, budget, json } => {
            let (l, k) = (load(&source)?, load(&target)?);
            let kind = if strict { MapKind::Strict } else { MapKind::Facet };
            let q = ComplexityQuery::new(&l, &k, kind, injective);
            let opts = ComputeOptions { facet_cap, limits: budget.limits() };
            complexity(&q, &opts, bounds_only, json, out)
        }
        Command::Bounds { source, target, injective, strict, json } => {
            let (l, k) = (load(&source)?, load(&target)?);
            let kind = if strict { MapKind::Strict } else { MapKind::Facet };
            let q = ComplexityQuery::new(&l, &k, kind, injective);
            let b = bounds_with(&q, &ComputeOptions::default())?;
            if json {
                emit(out, &bounds_json(&b))?;
            } else {
                write_bounds(out, &b)?;
            }
            Ok(EXIT_OK)
        }
        Command::Gen { kind, n, max_facet_size, density, seed, name, output } => {
            let kind = match kind {
                GenArg::Gamma => GeneratorKind::Gamma,
                GenArg::Kn => GeneratorKind::Kn,
                GenArg::Random => GeneratorKind::Random,
            };
            let mut c = generate(kind, n, &GenParams { max_facet_size, density, seed })?;
            if let Some(name) = name {
                c = c.with_name(name);
            }
            write_scx(out, &c, output.as_deref())
        }
        Command::Skeleton { complex, q, output } => write_scx(out, &load(&complex)?.skeleton(q), output.as_deref()),
        Command::Fixture { name } => {
            let c = fixtures::by_name(&name)
                .ok_or_else(|| Error::InvalidParameter(format!("no fixture named {name:?}")))?;
            write_scx(out, &c, None)
        }
        Command::Verify(args) => run_verify(args, out),
        Command::Oracle { command } => oracle(command, out),
    }
}

fn info(c: &Complex, json: bool, out: &mut dyn Write) -> Outcome {
    let m = c.metrics();
    if json {
        emit(
            out,
            &json!({
                "schema": 1,
                "name": c.name(),
                "vertices": c.labels(),
                "facets": facet_lists(c),
                "metrics": m,
            }),
        )?;
        return Ok(EXIT_OK);
    }
    if let Some(n) = c.name() {
        writeln!(out, "name {n}")?;
    }
    writeln!(out, "vertices {}", c.vertex_count())?;
    writeln!(out, "dim {}", m.dim)?;
    writeln!(out, "eta {}", m.eta)?;
    writeln!(out, "pure {}", m.pure)?;
    writeln!(out, "facets {c}")?;
    if !m.isolated.is_empty() {
        writeln!(out, "isolated {}", m.isolated.join(" "))?;
    }
    for (v, d) in &m.degree {
        writeln!(out, "degree {v} {d}")?;
    }
    Ok(EXIT_OK)
}

fn chromatic(c: &Complex, graph: bool, strict: bool, json: bool, out: &mut dyn Write) -> Outcome {
    let (label, chi) = if graph {
        ("chi_G", graph_chromatic_number(&c.facet_graph()))
    } else if strict {
        ("chi_s", graph_chromatic_number(&c.underlying_graph()))
    } else {
        ("chi", chromatic_number(c))
    };
    if json {
        emit(out, &json!({ "schema": 1, "kind": label, "chi": chi.value, "witness": chi.witness.as_map() }))?;
    } else {
        writeln!(out, "{label} {}", chi.value)?;
        for (v, col) in chi.witness.as_map() {
            writeln!(out, "color {v} {col}")?;
        }
    }
    Ok(EXIT_OK)
}

fn map_check(
    l: &Complex,
    k: &Complex,
    kind: MapKind,
    injective: bool,
    limits: SearchLimits,
    json: bool,
    out: &mut dyn Write,
) -> Outcome {
    let r = find_map(&SearchProblem { limits, ..SearchProblem::new(l, k, kind, injective) });
    let (status, code) = match &r.status {
        SearchStatus::Found(_) => ("found", EXIT_OK),
        SearchStatus::NotFound => ("none", EXIT_NONE),
        SearchStatus::Undecided => ("undecided", EXIT_UNDECIDED),
    };
    if json {
        let mut v = json!({
            "schema": 1,
            "status": status,
            "kind": kind,
            "injective": injective,
            "nodes": r.nodes,
        });
        if let Some(m) = r.map() {
            v["map"] = map_json(m);
        }
        emit(out, &v)?;
    } else {
        match &r.status {
            SearchStatus::Found(m) => {
                writeln!(out, "FOUND")?;
                write!(out, "{}", serialize_map(m))?;
            }
            SearchStatus::NotFound => writeln!(out, "NONE")?,
            SearchStatus::Undecided => writeln!(out, "UNDECIDED after {} nodes", r.nodes)?,
        }
    }
    Ok(code)
}

fn bounds_json(b: &BoundReport) -> Value {
    let mut v = serde_json::to_value(b).expect("bound reports serialize");
    v["schema"] = json!(1);
    v
}

fn write_bounds(out: &mut dyn Write, b: &BoundReport) -> Result<(), Error> {
    let opt = |x: Option<String>| x.unwrap_or_else(|| "-".into());
    writeln!(out, "chromatic_lower {}", opt(b.chromatic_lower.map(|x| x.to_string())))?;
    writeln!(out, "graph_lower {}", opt(b.graph_lower.map(|x| x.to_string())))?;
    writeln!(out, "eta_upper {}", opt(b.eta_upper.map(|x| x.to_string())))?;
    writeln!(out, "finite {}", opt(b.finite.map(|x| x.to_string())))?;
    writeln!(out, "complete_target_ic {}", opt(b.complete_target_ic.map(|x| x.to_string())))?;
    if let Some(e) = b.exact {
        writeln!(out, "exact {e}")?;
    }
    Ok(())
}

fn complexity(
    q: &ComplexityQuery,
    opts: &ComputeOptions,
    bounds_only: bool,
    json: bool,
    out: &mut dyn Write,
) -> Outcome {
    let mut b = bounds_with(q, opts)?;
    let (ln, kn) = (display_name(q.source, "L"), display_name(q.target, "K"));
    if bounds_only {
        if json {
            emit(
                out,
                &json!({
                    "schema": 1,
                    "kind": q.kind,
                    "injective": q.injective,
                    "symbol": q.symbol(),
                    "value": null,
                    "bounds": bounds_json(&b),
                }),
            )?;
        } else {
            writeln!(out, "{}({ln};{kn}) bounds", q.symbol())?;
            write_bounds(out, &b)?;
        }
        return Ok(EXIT_OK);
    }
    let r = match compute_with(q, opts) {
        Ok(r) => r,
        Err(Error::Undecided { nodes }) => {
            if json {
                emit(
                    out,
                    &json!({
                        "schema": 1,
                        "kind": q.kind,
                        "injective": q.injective,
                        "symbol": q.symbol(),
                        "value": "undecided",
                        "nodes": nodes,
                        "bounds": bounds_json(&b),
                    }),
                )?;
            } else {
                writeln!(out, "{}({ln};{kn}) = undecided", q.symbol())?;
            }
            return Ok(EXIT_UNDECIDED);
        }
        Err(e) => return Err(e),
    };
    b.exact = Some(r.value);
    if let Some(cover) = &r.cover {
        cover.verify(q)?;
    }
    if json {
        let cover: Vec<Value> = r
            .cover
            .iter()
            .flat_map(|c| &c.groups)
            .map(|g| {
                json!({
                    "facets": g.facets.iter().map(|f| q.source.names(*f)).collect::<Vec<_>>(),
                    "map": map_json(&g.map),
                })
            })
            .collect();
        emit(
            out,
            &json!({
                "schema": 1,
                "kind": q.kind,
                "injective": q.injective,
                "symbol": q.symbol(),
                "value": r.value,
                "cover": cover,
                "bounds": bounds_json(&b),
            }),
        )?;
    } else {
        writeln!(out, "{}({ln};{kn}) = {}", q.symbol(), r.value)?;
        for (i, g) in r.cover.iter().flat_map(|c| &c.groups).enumerate() {
            let facets: Vec<String> = g.facets.iter().map(|f| q.source.names(*f).concat()).collect();
            writeln!(out, "group {}: {{{}}}", i + 1, facets.join(","))?;
            for (a, t) in g.map.pairs() {
                writeln!(out, "  {a} -> {t}")?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn run_verify(args: VerifyArgs, out: &mut dyn Write) -> Outcome {
    if args.list {
        for s in crate::verify::SUITES {
            writeln!(out, "{:<16} {}", s.name, s.about)?;
        }
        return Ok(EXIT_OK);
    }
    if let Some(path) = args.replay {
        let (suite, check) = replay(&std::fs::read_to_string(&path)?)?;
        return Ok(match check {
            Check::Fail(m) => {
                writeln!(out, "suite {suite}: FAIL {m}")?;
                EXIT_VIOLATION
            }
            Check::Pass => {
                writeln!(out, "suite {suite}: pass")?;
                EXIT_OK
            }
            Check::Skip => {
                writeln!(out, "suite {suite}: skipped")?;
                EXIT_OK
            }
        });
    }
    let properties = if args.fixtures_only {
        Some(Vec::new())
    } else if args.properties.is_empty() {
        None
    } else {
        Some(args.properties)
    };
    let cfg = VerifyConfig {
        seed: args.seed,
        trials: args.trials,
        max_vertices: args.max_vertices,
        max_facet_size: args.max_facet_size,
        properties,
        fixtures: !args.no_fixtures,
        observations: !args.no_observations && !args.fixtures_only,
        bundle_dir: Some(args.bundle_dir),
    };
    let report = verify(&cfg)?;
    if args.json {
        emit(out, &serde_json::to_value(&report).expect("reports serialize"))?;
    } else {
        write!(out, "{}", report.render())?;
    }
    Ok(if report.violations() > 0 { EXIT_VIOLATION } else { EXIT_OK })
}

fn oracle(command: OracleCommand, out: &mut dyn Write) -> Outcome {
    let lim = OracleLimits::default();
    match command {
        OracleCommand::MapCheck { source, target, kind, injective, json } => {
            let (l, k) = (load(&source)?, load(&target)?);
            let found = brute_force_map_search(&l, &k, kind.into(), injective, &lim)?;
            if json {
                let mut v = json!({ "schema": 1, "status": if found.is_some() { "found" } else { "none" } });
                if let Some(m) = &found {
                    v["map"] = map_json(m);
                }
                emit(out, &v)?;
            } else {
                match &found {
                    Some(m) => write!(out, "FOUND\n{}", serialize_map(m))?,
                    None => writeln!(out, "NONE")?,
                }
            }
            Ok(if found.is_some() { EXIT_OK } else { EXIT_NONE })
        }
        OracleCommand::Complexity { source, target, injective, strict, json } => {
            let (l, k) = (load(&source)?, load(&target)?);
            let kind = if strict { MapKind::Strict } else { MapKind::Facet };
            let q = ComplexityQuery::new(&l, &k, kind, injective);
            let r = brute_force_cover_complexity(&q, &lim)?;
            if json {
                emit(
                    out,
                    &json!({ "schema": 1, "symbol": q.symbol(), "canonical": r.canonical, "arbitrary": r.arbitrary }),
                )?;
            } else {
                writeln!(out, "canonical {}", r.canonical)?;
                match r.arbitrary {
                    Some(a) => writeln!(out, "arbitrary {a}")?,
                    None => writeln!(out, "arbitrary -")?,
                }
            }
            Ok(EXIT_OK)
        }
        OracleCommand::Chromatic { complex, json } => {
            let chi = brute_force_chromatic(&load(&complex)?)?;
            if json {
                emit(out, &json!({ "schema": 1, "chi": chi }))?;
            } else {
                writeln!(out, "chi {chi}")?;
            }
            Ok(EXIT_OK)
        }
    }
}
