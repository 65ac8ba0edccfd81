use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use latkit::corpus::{lookup, tags_of, verification_corpus, ENUMERATION_CAP};
use latkit::deduction::{all_deductive_systems, ds_lattice_is_boolean_2n};
use latkit::render::{op_table_text, plus_table, render_set, to_dot};
use latkit::{
    closure_lattice, parse_lattice, verify_corpus, verify_lattice, BoundedLattice, Caps, CheckKind, Connective,
    ElementSet, PropertyReport, Tag,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "latkit", version, about = "Set-valued complementation on finite lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Largest lattice whose subsets are enumerated (deductive systems).
    #[arg(long, global = true, default_value_t = Caps::default().max_subsets)]
    max_subsets: usize,

    /// Largest lattice whose partitions are enumerated (meet-congruences).
    #[arg(long, global = true, default_value_t = Caps::default().max_partitions)]
    max_partitions: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Builtin lattice: N5, M3, fig2, M:<n>, B:<k>, chain:<k>.
    #[arg(long)]
    lattice: Option<String>,

    /// Lattice file in the text format.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct VerifySource {
    /// Builtin lattice: N5, M3, fig2, M:<n>, B:<k>, chain:<k>.
    #[arg(long)]
    lattice: Option<String>,

    /// Lattice file in the text format.
    #[arg(long)]
    file: Option<PathBuf>,

    /// All complemented lattices with at most N elements plus the named lattices.
    #[arg(long, value_name = "N")]
    corpus: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Size, bounds, predicate tags and cover count.
    Info(Source),
    /// The x / x⁺ / x⁺⁺ table.
    PlusTable(Source),
    /// The full table of a connective; rows are the left operand.
    OpTable {
        #[command(flatten)]
        source: Source,
        /// implies or odot.
        #[arg(long)]
        op: Connective,
    },
    /// Run every applicable check.
    Verify(VerifySource),
    /// List deductive systems, flagging compatible ones.
    DeductiveSystems {
        #[command(flatten)]
        source: Source,
        /// Also print the inclusion order of the systems.
        #[arg(long)]
        lattice_of: bool,
    },
    /// List the closed sets A = A⁺⁺.
    ClosedSets(Source),
    /// Hasse diagram as a DOT digraph.
    ExportDot(Source),
}

enum Failure {
    Input(String),
    Checks,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

fn load(lattice: Option<&str>, file: Option<&PathBuf>) -> Result<BoundedLattice, Failure> {
    match (lattice, file) {
        (Some(name), None) => Ok(lookup(name)?),
        (None, Some(path)) => {
            let src = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            parse_lattice(&src).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
        }
        _ => Err(Failure::Input("exactly one lattice source is required".into())),
    }
}

impl Source {
    fn load(&self) -> Result<BoundedLattice, Failure> {
        load(self.lattice.as_deref(), self.file.as_ref())
    }
}

fn braces(l: &BoundedLattice, s: ElementSet) -> String {
    let parts: Vec<&str> = s.iter().map(|a| l.label(a)).collect();
    format!("{{{}}}", parts.join(","))
}

fn labels(l: &BoundedLattice, s: ElementSet) -> Vec<&str> {
    s.iter().map(|a| l.label(a)).collect()
}

fn info(l: &BoundedLattice, format: Format) -> String {
    let tags = tags_of(l);
    let has = |t| tags.contains(&t);
    match format {
        Format::Json => json!({
            "name": l.name(),
            "elements": l.len(),
            "bottom": l.label(l.bottom()),
            "top": l.label(l.top()),
            "covers": l.covers().len(),
            "tags": tags.iter().map(|t| t.name()).collect::<Vec<_>>(),
        })
        .to_string()
            + "\n",
        Format::Text => {
            let words = [
                if has(Tag::Complemented) { "complemented" } else { "not complemented" },
                if has(Tag::Modular) { "modular" } else { "non-modular" },
                if has(Tag::Distributive) { "distributive" } else { "non-distributive" },
                if has(Tag::DblplusIdentity) { "x⁺⁺≈x" } else { "not x⁺⁺≈x" },
            ];
            format!(
                "lattice {}\nelements: {}\nbottom: {}\ntop: {}\ncovers: {}\ntags: {}\n",
                l.name(),
                l.len(),
                l.label(l.bottom()),
                l.label(l.top()),
                l.covers().len(),
                words.join(", ")
            )
        }
    }
}

fn plus_json(l: &BoundedLattice) -> Value {
    let rows: Vec<Value> = l
        .elements()
        .map(|a| {
            json!({
                "x": l.label(a),
                "plus": labels(l, l.complements(a)),
                "double_plus": labels(l, l.double_plus_el(a)),
            })
        })
        .collect();
    json!({ "lattice": l.name(), "rows": rows })
}

fn op_json(l: &BoundedLattice, op: Connective) -> Value {
    let table: Vec<Vec<Vec<&str>>> = l
        .elements()
        .map(|a| l.elements().map(|b| labels(l, l.apply(op, a, b))).collect())
        .collect();
    json!({
        "lattice": l.name(),
        "op": op.to_string(),
        "labels": l.labels(),
        "table": table,
    })
}

fn deductive_systems(l: &BoundedLattice, caps: &Caps, lattice_of: bool, format: Format) -> Result<String, Failure> {
    let ded = all_deductive_systems(l, caps)?;
    let compatible: Vec<bool> = ded.systems.iter().map(|&d| l.is_compatible_ds(d)).collect();
    let boolean = if lattice_of && l.is_mn_shape() {
        Some(ds_lattice_is_boolean_2n(l, caps)?)
    } else {
        None
    };
    // Upper covers in the inclusion order.
    let covers: Vec<Vec<usize>> = (0..ded.len())
        .map(|i| {
            (0..ded.len())
                .filter(|&j| {
                    i != j && ded.leq(i, j) && !(0..ded.len()).any(|k| k != i && k != j && ded.leq(i, k) && ded.leq(k, j))
                })
                .collect()
        })
        .collect();

    if format == Format::Json {
        let systems: Vec<Value> = ded
            .systems
            .iter()
            .zip(&compatible)
            .enumerate()
            .map(|(i, (&d, &c))| {
                let mut v = json!({ "id": format!("D{i}"), "members": labels(l, d), "compatible": c });
                if lattice_of {
                    v["covered_by"] = json!(covers[i].iter().map(|j| format!("D{j}")).collect::<Vec<_>>());
                }
                v
            })
            .collect();
        let mut out = json!({ "lattice": l.name(), "count": ded.len(), "systems": systems });
        if let Some(b) = boolean {
            out["boolean"] = json!(b);
        }
        return Ok(out.to_string() + "\n");
    }

    let mut out = format!("deductive systems of {}: {}\n", l.name(), ded.len());
    for (i, (&d, &c)) in ded.systems.iter().zip(&compatible).enumerate() {
        let flag = if c { "  compatible" } else { "" };
        out.push_str(&format!("  D{i} {}{flag}\n", braces(l, d)));
    }
    if lattice_of {
        out.push_str("order (covers):\n");
        for (i, up) in covers.iter().enumerate() {
            let ups: Vec<String> = up.iter().map(|j| format!("D{j}")).collect();
            out.push_str(&format!("  D{i} < {}\n", if ups.is_empty() { "-".into() } else { ups.join(" ") }));
        }
        match boolean {
            Some(b) => out.push_str(&format!("isomorphic to the powerset of atoms: {b}\n")),
            None => out.push_str("isomorphic to the powerset of atoms: n/a (not M_n)\n"),
        }
    }
    Ok(out)
}

fn closed_sets(l: &BoundedLattice, format: Format) -> String {
    let c = closure_lattice(l);
    if format == Format::Json {
        let sets: Vec<Vec<&str>> = c.closed_sets.iter().map(|&s| labels(l, s)).collect();
        return json!({
            "lattice": l.name(),
            "count": c.len(),
            "closed_sets": sets,
            "ortholattice": c.axiom_failures.is_empty(),
            "axiom_failures": c.axiom_failures,
        })
        .to_string()
            + "\n";
    }
    let mut out = format!("closed sets of {}: {}\n", l.name(), c.len());
    for &s in &c.closed_sets {
        out.push_str(&format!("  {}  ⁺ = {}\n", render_set(l, s), render_set(l, l.plus(s))));
    }
    if c.axiom_failures.is_empty() {
        out.push_str("ortholattice: yes\n");
    } else {
        out.push_str(&format!("ortholattice: no ({})\n", c.axiom_failures.join("; ")));
    }
    out
}

fn verify_text(reports: &[PropertyReport], single: bool) -> String {
    let mut out = String::new();
    let mut failures = 0;
    let mut asserted = 0;
    for r in reports {
        let fails = r.failures().count();
        failures += fails;
        asserted += r.checks.iter().filter(|c| c.kind == CheckKind::Asserted).count();
        if single || fails > 0 {
            out.push_str(&r.to_string());
        } else {
            out.push_str(&format!("lattice {}: ok\n", r.lattice));
        }
    }
    out.push_str(&format!(
        "{} lattice(s), {asserted} asserted checks, {failures} failure(s)\n",
        reports.len()
    ));
    out
}

fn run(cli: &Cli) -> Result<(String, bool), Failure> {
    let caps = Caps {
        max_subsets: cli.max_subsets,
        max_partitions: cli.max_partitions,
    };
    let format = cli.format;
    let text = |s: String, v: Value| if format == Format::Json { v.to_string() + "\n" } else { s };
    Ok(match &cli.command {
        Command::Info(src) => (info(&src.load()?, format), true),
        Command::PlusTable(src) => {
            let l = src.load()?;
            (text(plus_table(&l), plus_json(&l)), true)
        }
        Command::OpTable { source, op } => {
            let l = source.load()?;
            (text(op_table_text(&l, *op), op_json(&l, *op)), true)
        }
        Command::Verify(src) => {
            let reports = match src.corpus {
                Some(n) => {
                    if !(2..=ENUMERATION_CAP).contains(&n) {
                        return Err(Failure::Input(format!("--corpus must be between 2 and {ENUMERATION_CAP}")));
                    }
                    verify_corpus(&verification_corpus(n)?, &caps)
                }
                None => vec![verify_lattice(&load(src.lattice.as_deref(), src.file.as_ref())?, &caps)],
            };
            let ok = reports.iter().all(PropertyReport::all_asserted_hold);
            let out = if format == Format::Json {
                serde_json::to_string_pretty(&reports)? + "\n"
            } else {
                verify_text(&reports, src.corpus.is_none())
            };
            (out, ok)
        }
        Command::DeductiveSystems { source, lattice_of } => {
            (deductive_systems(&source.load()?, &caps, *lattice_of, format)?, true)
        }
        Command::ClosedSets(src) => (closed_sets(&src.load()?, format), true),
        Command::ExportDot(src) => (to_dot(&src.load()?), true),
    })
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(v) = std::env::var("LATKIT_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| Failure::Input(format!("LATKIT_THREADS must be a positive integer, got '{v}'")))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| run(&cli)).and_then(|(out, ok)| {
        match &cli.output {
            Some(path) => fs::write(path, &out).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?,
            None => print!("{out}"),
        }
        if ok {
            Ok(())
        } else {
            Err(Failure::Checks)
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
