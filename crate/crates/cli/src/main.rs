use std::fs;
use std::io::{self, BufRead, Write as _};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use transirr::enumerate::{self, Predicate, SearchOptions, DEFAULT_MAX_ORDER, DEFAULT_WITNESS_CAP};
use transirr::families::{self, FamilySpec};
use transirr::graph::{to_dot, Graph};
use transirr::graph6::{parse_graph6, to_graph6};
use transirr::structure::{self, LawTally};
use transirr::transmission::{transmission_profile, transmissions};

const EXIT_MISMATCH: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_FALSE: u8 = 10;
const EXIT_ABSENT: u8 = 11;

/// Transmission irregular graphs: checks, constructions, theorem replays and
/// exhaustive tree search.
#[derive(Parser)]
#[command(name = "transirr", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report transmissions and the TI status of a graph (exit 10 if not TI).
    Check {
        /// graph6 string, family spec (e.g. `ti-odd:7`), file path, or `-`.
        input: String,
        #[arg(long, value_enum, default_value_t = ReportMode::Summary)]
        report: ReportMode,
    },
    /// Build a graph from a family spec.
    Construct {
        /// `starlike:n1,n2,...`, `h:k;a1,a2;b1,b2`, `z0:q2,q1,p2,p1`,
        /// `k4:k1,k2,k3,k4` or `ti-odd:n`.
        spec: String,
        #[arg(long, value_enum, default_value_t = OutFormat::Graph6)]
        out: OutFormat,
        /// Label DOT nodes with their transmissions.
        #[arg(long)]
        annotate: bool,
    },
    /// Replay a theorem over a parameter range (exit 1 on any mismatch).
    Verify {
        #[arg(value_enum)]
        theorem: Theorem,
        /// Inclusive range `a..b`.
        #[arg(long)]
        range: Option<String>,
    },
    /// Enumerate free trees and count TI trees per order.
    Enumerate {
        #[arg(long, conflicts_with = "range", required_unless_present = "range")]
        order: Option<usize>,
        /// Inclusive range `a..b`.
        #[arg(long)]
        range: Option<String>,
        /// Restrict to maximum degree 4.
        #[arg(long)]
        chemical: bool,
        #[arg(long, default_value = "ti")]
        predicate: String,
        #[arg(long)]
        jobs: Option<usize>,
        /// Write matching trees here, one graph6 per line.
        #[arg(long)]
        witnesses: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_WITNESS_CAP)]
        witness_cap: usize,
        /// Print 0 for elapsed time so output is reproducible.
        #[arg(long)]
        no_timing: bool,
    },
    /// Double a tree along the pendant path ending at a leaf (exit 11 if the
    /// pair is not eligible; the tree is still printed).
    Double {
        input: String,
        /// Leaf index of the pendant path.
        #[arg(long)]
        path: usize,
    },
    /// Apply an edge-insertion rule to a TI graph (exit 11 if the pattern
    /// is absent).
    EdgeAdd {
        input: String,
        #[arg(long, value_enum)]
        case: Case,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportMode {
    Summary,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Graph6,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Theorem {
    Cti,
    Zti,
    K4,
    Double,
    Lemmas,
}

#[derive(Clone, Copy, ValueEnum)]
enum Case {
    I,
    Ii,
}

/// An input problem; reported with exit status 2.
#[derive(Debug)]
struct InputError(anyhow::Error);

fn input_err(e: impl Into<anyhow::Error>) -> anyhow::Error {
    anyhow::Error::new(InputError(e.into()))
}

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for InputError {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<InputError>().is_some() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Check { input, report } => cmd_check(&input, report),
        Command::Construct {
            spec,
            out,
            annotate,
        } => cmd_construct(&spec, out, annotate),
        Command::Verify { theorem, range } => cmd_verify(theorem, range.as_deref()),
        Command::Enumerate {
            order,
            range,
            chemical,
            predicate,
            jobs,
            witnesses,
            witness_cap,
            no_timing,
        } => {
            let orders = match (order, range) {
                (Some(n), _) => n..=n,
                (None, Some(r)) => parse_range(&r)?,
                (None, None) => unreachable!("clap requires one of --order/--range"),
            };
            let options = SearchOptions {
                degree_cap: chemical.then_some(4),
                jobs,
                witness_cap,
                max_order: max_order()?,
            };
            cmd_enumerate(
                orders,
                &predicate,
                &options,
                witnesses.as_deref(),
                !no_timing,
            )
        }
        Command::Double { input, path } => cmd_double(&input, path),
        Command::EdgeAdd { input, case } => cmd_edge_add(&input, case),
    }
}

fn max_order() -> Result<usize> {
    match std::env::var("TI_MAX_ORDER") {
        Ok(v) => v.parse().map_err(|_| {
            input_err(anyhow!(
                "TI_MAX_ORDER must be a positive integer, got {v:?}"
            ))
        }),
        Err(_) => Ok(DEFAULT_MAX_ORDER),
    }
}

fn parse_range(text: &str) -> Result<RangeInclusive<usize>> {
    let (a, b) = text
        .split_once("..")
        .ok_or_else(|| input_err(anyhow!("range must look like a..b, got {text:?}")))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let parse = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| input_err(anyhow!("bad range bound {s:?}")))
    };
    let (a, b) = (parse(a)?, parse(b)?);
    if a > b {
        return Err(input_err(anyhow!("empty range {a}..{b}")));
    }
    Ok(a..=b)
}

/// Reads a graph from a file (or `-` for stdin), a family spec, or graph6.
fn load_graph(input: &str) -> Result<Graph> {
    let text = if input == "-" {
        let mut line = String::new();
        io::stdin()
            .lock()
            .read_line(&mut line)
            .context("reading stdin")?;
        line
    } else if Path::new(input).is_file() {
        let content = fs::read_to_string(input).with_context(|| format!("reading {input}"))?;
        content
            .lines()
            .find(|l| !l.trim().is_empty())
            .unwrap_or("")
            .to_string()
    } else {
        input.to_string()
    };
    let text = text.trim();
    if text.contains(':') && !text.starts_with(">>graph6<<") {
        let spec: FamilySpec = text.parse().map_err(input_err)?;
        return spec.build().map_err(input_err);
    }
    parse_graph6(text).map_err(input_err)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_check(input: &str, mode: ReportMode) -> Result<u8> {
    let g = load_graph(input)?;
    let p = transmission_profile(&g);
    println!("order: {}", g.order());
    println!("size: {}", g.size());
    println!("max degree: {}", g.max_degree());
    println!("chemical: {}", yes_no(g.is_chemical()));
    if let ReportMode::Full = mode {
        let values: Vec<_> = p.values().iter().map(u64::to_string).collect();
        println!("transmissions: {}", values.join(" "));
    }
    println!(
        "TI: {}; complexity {}/{}",
        yes_no(p.is_ti()),
        p.complexity(),
        p.order()
    );
    Ok(if p.is_ti() { 0 } else { EXIT_FALSE })
}

fn cmd_construct(spec: &str, out: OutFormat, annotate: bool) -> Result<u8> {
    let spec: FamilySpec = spec.parse().map_err(input_err)?;
    let g = spec.build().map_err(input_err)?;
    match out {
        OutFormat::Graph6 => {
            if annotate {
                eprintln!("warning: --annotate only applies to --out dot");
            }
            println!("{}", to_graph6(&g));
        }
        OutFormat::Dot => {
            let labels: Option<Vec<String>> = annotate.then(|| {
                transmissions(&g)
                    .iter()
                    .map(|t| format!("Tr={t}"))
                    .collect()
            });
            print!("{}", to_dot(&g, labels.as_deref()));
        }
    }
    Ok(0)
}

fn verb(b: bool) -> &'static str {
    if b {
        "TI"
    } else {
        "not-TI"
    }
}

fn check_range(range: &RangeInclusive<usize>, min: usize, max: usize, what: &str) -> Result<()> {
    if *range.start() < min || *range.end() > max {
        return Err(input_err(anyhow!(
            "{what} must lie in {min}..{max}, got {}..{}",
            range.start(),
            range.end()
        )));
    }
    Ok(())
}

fn cmd_verify(theorem: Theorem, range: Option<&str>) -> Result<u8> {
    let (default, min, max, what) = match theorem {
        Theorem::Cti => ("7..151", 7, 2001, "order"),
        Theorem::Zti | Theorem::K4 => ("2..60", 2, 1000, "parameter a"),
        Theorem::Double => ("7..12", 7, 16, "order"),
        Theorem::Lemmas => ("2..10", 1, 16, "order"),
    };
    let range = parse_range(range.unwrap_or(default))?;
    check_range(&range, min, max, what)?;
    let mut all_agree = true;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for x in range {
        let (line, agree) = match theorem {
            Theorem::Cti => {
                if x % 2 == 0 {
                    continue;
                }
                verify_cti(x)?
            }
            Theorem::Zti => verify_zti(x)?,
            Theorem::K4 => verify_k4(x)?,
            Theorem::Double => verify_double(x)?,
            Theorem::Lemmas => verify_lemmas(x)?,
        };
        all_agree &= agree;
        writeln!(out, "{line} {}", if agree { "agree" } else { "MISMATCH" })?;
    }
    Ok(if all_agree { 0 } else { EXIT_MISMATCH })
}

fn verify_cti(n: usize) -> Result<(String, bool)> {
    let g = families::ti_odd_tree(n)?;
    let ti = transmission_profile(&g).is_ti();
    let chemical = g.is_chemical();
    let mut line = format!(
        "n={n} predicted=TI computed={} chemical={}",
        verb(ti),
        yes_no(chemical)
    );
    let mut agree = ti && chemical;
    if n >= 11 {
        let sets_ok = families::predicted_sets_theorem_cti(n)?.matches_graph(&g);
        line.push_str(&format!(
            " closed-form={}",
            if sets_ok { "ok" } else { "differs" }
        ));
        agree &= sets_ok;
    }
    Ok((line, agree))
}

fn verify_zti(a: usize) -> Result<(String, bool)> {
    let predicted = families::z0_is_ti_predicate(a)?;
    let g = families::z0_instance(a)?.graph;
    let computed = transmission_profile(&g).is_ti();
    let mut line = format!(
        "a={a} predicted={} computed={}",
        verb(predicted),
        verb(computed)
    );
    let mut agree = predicted == computed;
    if a >= 3 {
        let sets_ok = families::predicted_sets_z0(a)?.matches_graph(&g);
        line.push_str(&format!(
            " closed-form={}",
            if sets_ok { "ok" } else { "differs" }
        ));
        agree &= sets_ok;
    }
    Ok((line, agree))
}

fn verify_k4(a: usize) -> Result<(String, bool)> {
    let predicted = families::k4_is_ti_predicate(a)?;
    let g = families::k4_instance(a)?.graph;
    let computed = transmission_profile(&g).is_ti();
    let mut line = format!(
        "a={a} predicted={} computed={}",
        verb(predicted),
        verb(computed)
    );
    let mut agree = predicted == computed;
    if a >= 3 {
        let sets_ok = families::predicted_sets_k4(a)?.matches_graph(&g);
        line.push_str(&format!(
            " closed-form={}",
            if sets_ok { "ok" } else { "differs" }
        ));
        agree &= sets_ok;
    }
    Ok((line, agree))
}

fn verify_double(n: usize) -> Result<(String, bool)> {
    let (mut pairs, mut eligible, mut eligible_ti) = (0, 0, 0);
    for seq in enumerate::free_trees(n, Some(4))? {
        let t0 = seq.to_graph();
        if !transmission_profile(&t0).is_ti() {
            continue;
        }
        for path in structure::find_pendant_paths(&t0) {
            pairs += 1;
            if structure::doubling_check(&t0, &path)?.eligible {
                eligible += 1;
                let t = structure::doubling_construct(&t0, &path)?;
                eligible_ti += usize::from(transmission_profile(&t).is_ti());
            }
        }
    }
    let line = format!("n={n} pairs={pairs} eligible={eligible} doubled-TI={eligible_ti}");
    Ok((line, eligible == eligible_ti))
}

fn verify_lemmas(n: usize) -> Result<(String, bool)> {
    let (mut equal, mut pend, mut internal) = (
        LawTally::default(),
        LawTally::default(),
        LawTally::default(),
    );
    let mut trees = 0;
    for seq in enumerate::free_trees(n, None)? {
        let g = seq.to_graph();
        trees += 1;
        equal = equal.merge(structure::check_edge_law(&g));
        pend = pend.merge(structure::check_pendant_law(&g));
        internal = internal.merge(structure::check_internal_law(&g)?);
    }
    let fmt = |t: LawTally| format!("{}/{}", t.checked - t.violations, t.checked);
    let line = format!(
        "n={n} trees={trees} equal={} pend={} internal={}",
        fmt(equal),
        fmt(pend),
        fmt(internal)
    );
    Ok((
        line,
        equal.violations + pend.violations + internal.violations == 0,
    ))
}

fn cmd_enumerate(
    orders: RangeInclusive<usize>,
    predicate: &str,
    options: &SearchOptions,
    witness_file: Option<&Path>,
    with_timing: bool,
) -> Result<u8> {
    let predicate: Predicate = predicate.parse().map_err(input_err)?;
    let reports = enumerate::search(orders, &predicate, options).map_err(input_err)?;
    let plain = predicate == Predicate::ti();
    for r in &reports {
        println!("{}", r.line(with_timing));
        if !plain {
            eprintln!("order {}: {} trees satisfy {predicate}", r.order, r.matched);
        }
    }
    if let Some(path) = witness_file {
        let mut text = String::new();
        for w in reports.iter().flat_map(|r| &r.witnesses) {
            text.push_str(w);
            text.push('\n');
        }
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(0)
}

fn cmd_double(input: &str, leaf: usize) -> Result<u8> {
    let t0 = load_graph(input)?;
    if !t0.is_tree() {
        bail!(input_err(anyhow!("input is not a tree")));
    }
    let path = structure::pendant_path_at_leaf(&t0, leaf).ok_or_else(|| {
        input_err(anyhow!(
            "vertex {leaf} is not the leaf of a proper pendant path"
        ))
    })?;
    let report = structure::doubling_check(&t0, &path).map_err(input_err)?;
    eprintln!("path length: {}", report.path_length);
    eprintln!("partially TI: {}", yes_no(report.partially_ti));
    eprintln!("DBTM: {}", yes_no(report.dbtm));
    match report.window_j {
        Some(j) => eprintln!("window: j = {j}"),
        None => eprintln!("window: none"),
    }
    eprintln!("eligible: {}", yes_no(report.eligible));
    let t = structure::doubling_construct(&t0, &path).map_err(input_err)?;
    if !report.eligible {
        eprintln!("warning: pair is not eligible; the result may or may not be TI");
    }
    eprintln!("result TI: {}", yes_no(transmission_profile(&t).is_ti()));
    println!("{}", to_graph6(&t));
    Ok(if report.eligible { 0 } else { EXIT_ABSENT })
}

fn cmd_edge_add(input: &str, case: Case) -> Result<u8> {
    let g = load_graph(input)?;
    let result = match case {
        Case::I => structure::edge_add_case_i(&g),
        Case::Ii => structure::edge_add_case_ii(&g),
    }
    .map_err(input_err)?;
    let Some(found) = result else {
        eprintln!("pattern absent");
        return Ok(EXIT_ABSENT);
    };
    let [v1, v2, v3, v4] = found.witnesses;
    eprintln!("witnesses: v1={v1} v2={v2} v3={v3} v4={v4}");
    eprintln!(
        "result TI: {}",
        yes_no(transmission_profile(&found.graph).is_ti())
    );
    println!("{}", to_graph6(&found.graph));
    Ok(0)
}
