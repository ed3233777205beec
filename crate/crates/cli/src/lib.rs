//! The `hgent` command-line tool.
//!
//! Exit codes: 0 on success (including vacuous passes over empty classes),
//! 1 when a verification fails, 2 on usage, input or validation errors.

pub mod format;
pub mod output;

use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use hyperentropy::entropy::{degree_entropy, h_bounds, h_value, theorem_bounds, BoundsError};
use hyperentropy::enumerate::{
    count_class, enumerate_class_bounded, iso_classes, random_instance, verify_theorem, EnumerateError, ExtremalReport,
    ReportOptions, Theorem, VerdictStatus, DEFAULT_MAX_SPACE,
};
use hyperentropy::families::{family_member, membership, memberships, FamilyError, FamilyTag};
use hyperentropy::hypergraph::{CycleClass, Hypergraph};
use hyperentropy::transforms::{class_closure_check, edge_release, move_edges, EdgeMove, MoveSpec, TransformError};

use format::ParseError;
use output::{fixed, ReportRow, Response};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "hgent", version, about = "Degree-based entropy of k-uniform hypergraphs")]
pub struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for commands that sample.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Shape {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub m: usize,
}

#[derive(Debug, Args)]
pub struct Scan {
    /// Worker threads (0: all cores).
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// Largest admissible C(C(n,k),m).
    #[arg(long, default_value_t = DEFAULT_MAX_SPACE)]
    pub max_space: u128,
}

impl Scan {
    fn options(&self) -> ReportOptions {
        ReportOptions { jobs: self.jobs, max_space: self.max_space, ..ReportOptions::default() }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Degree entropy I_d^t of a hypergraph file.
    Entropy {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        t: f64,
    },
    /// Connectivity, cyclomatic class, pendency and family membership.
    Classify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Closed-form entropy bounds for a class.
    Bounds {
        #[arg(long)]
        class: CycleClass,
        #[command(flatten)]
        shape: Shape,
    },
    /// Check an extremal theorem by exhaustive enumeration.
    Verify {
        #[arg(long)]
        theorem: Theorem,
        #[command(flatten)]
        shape: Shape,
        #[command(flatten)]
        scan: Scan,
    },
    /// List or count the members of a class.
    Enumerate {
        #[arg(long)]
        class: CycleClass,
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        count_only: bool,
        /// One representative per isomorphism class.
        #[arg(long)]
        dedup_iso: bool,
        #[command(flatten)]
        scan: Scan,
    },
    /// Build a named family member, or a random class member (`--family random`).
    Generate {
        #[arg(long)]
        family: String,
        #[command(flatten)]
        shape: Shape,
        /// Class for `--family random`.
        #[arg(long)]
        class: Option<CycleClass>,
    },
    /// Apply an edge-moving or edge-releasing operation.
    #[command(subcommand)]
    Transform(TransformCommand),
}

#[derive(Debug, Subcommand)]
pub enum TransformCommand {
    /// Move edges onto a target vertex.
    Move {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        target: usize,
        /// `EDGE:SOURCE`, edge index in canonical order; repeatable.
        #[arg(long = "move", value_name = "EDGE:SOURCE", required = true, value_parser = parse_move)]
        moves: Vec<EdgeMove>,
    },
    /// Release a non-pendent edge of a linear hypergraph onto an anchor vertex.
    Release {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        edge: usize,
        #[arg(long)]
        anchor: usize,
    },
}

fn parse_move(s: &str) -> Result<EdgeMove, String> {
    let (e, v) = s.split_once(':').ok_or_else(|| format!("expected EDGE:SOURCE, found `{s}`"))?;
    let num = |x: &str| x.trim().parse::<usize>().map_err(|_| format!("`{x}` is not an index"));
    Ok(EdgeMove { edge: num(e)?, source: num(v)? })
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "IoError",
            CliError::Parse { source, .. } => source.kind(),
            CliError::Enumerate(EnumerateError::SearchSpaceTooLarge { .. }) => "SearchSpaceTooLarge",
            CliError::Enumerate(EnumerateError::RetryExhausted { .. }) => "RetryExhausted",
            CliError::Enumerate(_) | CliError::Bounds(_) => "InvalidParameters",
            CliError::Family(_) => "InfeasibleFamily",
            CliError::Transform(_) => "TransformError",
            CliError::Usage(_) => "UsageError",
        }
    }

    fn to_json(&self) -> Value {
        let (line, column) = match self {
            CliError::Parse { source, .. } => (source.line(), source.column()),
            _ => (None, None),
        };
        json!({
            "schema_version": output::SCHEMA_VERSION,
            "error": { "kind": self.kind(), "message": self.to_string(), "line": line, "column": column },
        })
    }
}

fn read_hypergraph(path: &PathBuf) -> Result<Hypergraph, CliError> {
    let shown = path.display().to_string();
    let text = if shown == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|source| CliError::Io { path: shown.clone(), source })?;
    format::parse(&text).map_err(|source| CliError::Parse { path: shown, source })
}

fn tag_names(tags: &[FamilyTag]) -> String {
    if tags.is_empty() {
        "None".into()
    } else {
        tags.iter().map(|t| t.name()).collect::<Vec<_>>().join(",")
    }
}

fn hypergraph_block(h: &Hypergraph, heading: &str) -> Vec<String> {
    let mut lines = vec![format!("# {heading}")];
    lines.extend(format::to_text(h).lines().map(str::to_string));
    lines
}

fn cmd_entropy(input: &PathBuf, t: f64) -> Result<Response, CliError> {
    let h = read_hypergraph(input)?;
    let value = degree_entropy(&h, t).bits();
    let hv = h_value(&h);
    let mut r = Response::new("entropy");
    r.pair("k", h.k())
        .pair("n", h.n())
        .pair("m", h.m())
        .pair("t", t)
        .pair("entropy", fixed(value))
        .pair("h", fixed(hv))
        .pair("log2_n", fixed((h.n() as f64).log2()));
    r.field("k", h.k())
        .field("n", h.n())
        .field("m", h.m())
        .field("t", t)
        .field("entropy", value)
        .field("h", hv)
        .field("log2_n", (h.n() as f64).log2());
    Ok(r)
}

fn cmd_classify(input: &PathBuf) -> Result<Response, CliError> {
    let h = read_hypergraph(input)?;
    let s = h.classify();
    let p = h.pendency();
    let tags = memberships(&h).ok();
    let family = membership(&h).ok();
    let mut r = Response::new("classify");
    r.pair("k", h.k())
        .pair("n", h.n())
        .pair("m", h.m())
        .pair("connected", s.connected)
        .pair("components", s.components)
        .pair("cyclomatic", s.cyclomatic)
        .pair("class", s.tag)
        .pair("linear", s.linear)
        .pair("degrees", h.degree_sequence())
        .pair("pendent_vertices", p.pendent_vertices.len())
        .pair("pendent_edges", format!("{:?}", p.pendent_edges))
        .pair("family", family.map_or("None".into(), |f| f.name().to_string()))
        .pair("families", tags.as_deref().map_or("None".into(), tag_names));
    r.field("hypergraph", &h)
        .field("structure", s)
        .field("degree_sequence", h.degree_sequence())
        .field("pendency", &p)
        .field("family", family)
        .field("families", tags);
    Ok(r)
}

fn cmd_bounds(class: CycleClass, shape: &Shape) -> Result<Response, CliError> {
    let b = theorem_bounds(class, shape.k, shape.m)?;
    let hb = h_bounds(class, shape.k, shape.m)?;
    let mut r = Response::new("bounds");
    r.pair("class", class)
        .pair("k", shape.k)
        .pair("m", shape.m)
        .pair("n", class.vertex_count(shape.k, shape.m).unwrap_or(0))
        .pair("lower", fixed(b.lower))
        .pair("upper", fixed(b.upper))
        .pair("lower_formula", b.lower_formula)
        .pair("upper_formula", b.upper_formula)
        .pair("lower_witness", tag_names(&b.lower_witness))
        .pair("upper_witness", tag_names(&b.upper_witness))
        .pair("h_lower", fixed(hb.lower))
        .pair("h_upper", fixed(hb.upper));
    r.field("class", class).field("k", shape.k).field("m", shape.m).field("bounds", &b).field("h_bounds", &hb);
    Ok(r)
}

fn report_details(rep: &ExtremalReport) -> Vec<String> {
    let mut out = Vec::new();
    if let Some(c) = rep.iso_class_count {
        out.push(format!("isomorphism classes: {c}"));
    }
    let v = &rep.verdict;
    out.push(format!("bound violations: {}", v.bound_violations));
    for (name, eq) in [("lower", &v.lower_equality), ("upper", &v.upper_equality)] {
        out.push(format!(
            "{name} equality ({}): attaining {}, in family {}, matched {} -> {}",
            tag_names(&eq.family),
            eq.attaining,
            eq.in_family,
            eq.matched,
            if eq.holds { "holds" } else { "differs" }
        ));
    }
    for (name, list) in [("minimum entropy", &rep.minimizers), ("maximum entropy", &rep.maximizers)] {
        for e in list {
            out.push(format!(
                "{name}: degrees {} h {} I {} tags {} labeled {}",
                e.degree_sequence,
                fixed(e.h),
                fixed(e.entropy),
                tag_names(&e.tags),
                e.labeled_count
            ));
        }
    }
    out.extend(rep.notes.iter().map(|n| format!("note: {n}")));
    out.extend(rep.warnings.iter().map(|w| format!("warning: {w}")));
    if let Some(c) = &v.counterexample {
        out.extend(hypergraph_block(
            &c.hypergraph,
            &format!(
                "counterexample: {} (I {}, h {}, tags {})",
                c.reason,
                fixed(c.entropy),
                fixed(c.h),
                tag_names(&c.tags)
            ),
        ));
    }
    out
}

fn cmd_verify(theorem: Theorem, shape: &Shape, scan: &Scan) -> Result<Response, CliError> {
    let rep = verify_theorem(theorem, shape.k, shape.m, &scan.options())?;
    let row = ReportRow::from_report(&rep);
    let mut r = Response::new("verify");
    r.pair("theorem", theorem);
    for (k, v) in row.fields() {
        r.pair(k, v);
    }
    r.details = report_details(&rep);
    r.field("theorem", theorem).field("row", &row).field("report", &rep);
    r.rows = Some(vec![row]);
    r.exit_code = if rep.verdict.status == VerdictStatus::Fail { EXIT_FAIL } else { EXIT_OK };
    Ok(r)
}

fn cmd_enumerate(
    class: CycleClass,
    shape: &Shape,
    count_only: bool,
    dedup_iso: bool,
    scan: &Scan,
) -> Result<Response, CliError> {
    let (k, m) = (shape.k, shape.m);
    let opts = scan.options();
    let mut r = Response::new("enumerate");
    r.pair("class", class).pair("k", k).pair("m", m);
    r.field("class", class).field("k", k).field("m", m);
    if count_only {
        let count = count_class(class, k, m, &opts)?;
        r.pair("labeled_count", count);
        r.field("labeled_count", count);
        if dedup_iso {
            let classes = iso_classes(class, k, m, &opts)?;
            r.pair("iso_class_count", classes.len());
            r.field("iso_class_count", classes.len());
        }
    } else if dedup_iso {
        let classes = iso_classes(class, k, m, &opts)?;
        let count: u64 = classes.iter().map(|c| c.labeled_count).sum();
        r.pair("labeled_count", count).pair("iso_class_count", classes.len());
        for (i, c) in classes.iter().enumerate() {
            r.details.push(String::new());
            r.details.extend(hypergraph_block(
                &c.representative,
                &format!(
                    "class {i}: degrees {} tags {} labeled {}",
                    c.degree_sequence,
                    tag_names(&c.tags),
                    c.labeled_count
                ),
            ));
        }
        r.field("labeled_count", count).field("iso_classes", &classes);
    } else {
        let members: Vec<Hypergraph> = enumerate_class_bounded(class, k, m, opts.max_space)?.collect();
        r.pair("labeled_count", members.len());
        for (i, h) in members.iter().enumerate() {
            r.details.push(String::new());
            r.details.extend(hypergraph_block(h, &format!("member {i}")));
        }
        r.field("labeled_count", members.len()).field("members", &members);
    }
    Ok(r)
}

fn cmd_generate(family: &str, shape: &Shape, class: Option<CycleClass>, seed: u64) -> Result<Response, CliError> {
    let h = if family.eq_ignore_ascii_case("random") {
        let class = class.ok_or_else(|| CliError::Usage("--family random requires --class".into()))?;
        random_instance(class, shape.k, shape.m, seed)?
    } else {
        let tag: FamilyTag = family.parse().map_err(CliError::Usage)?;
        family_member(tag, shape.m, shape.k)?
    };
    let mut r = Response::new("generate");
    // text output is the bare hypergraph file, ready for `--in`
    r.raw_text = Some(format::to_text(&h));
    r.pair("family", family).pair("k", h.k()).pair("n", h.n()).pair("m", h.m());
    r.field("family", family)
        .field("hypergraph", &h)
        .field("h", h_value(&h))
        .field("entropy", degree_entropy(&h, 1.0).bits());
    Ok(r)
}

fn cmd_transform(cmd: &TransformCommand) -> Result<Response, CliError> {
    let (before, after, op) = match cmd {
        TransformCommand::Move { input, target, moves } => {
            let h = read_hypergraph(input)?;
            let spec = MoveSpec { target: *target, moves: moves.clone() };
            let after = move_edges(&h, &spec)?;
            (h, after, "move")
        }
        TransformCommand::Release { input, edge, anchor } => {
            let h = read_hypergraph(input)?;
            let after = edge_release(&h, *edge, *anchor)?;
            (h, after, "release")
        }
    };
    let (hb, ha) = (h_value(&before), h_value(&after));
    let closure = class_closure_check(&before, &after).ok();
    let mut r = Response::new("transform");
    r.pair("operation", op)
        .pair("h_before", fixed(hb))
        .pair("h_after", fixed(ha))
        .pair("h_change", fixed(ha - hb))
        .pair("class_before", before.classify().tag)
        .pair("class_after", after.classify().tag)
        .pair("connected", after.is_connected());
    r.details = hypergraph_block(&after, "result");
    r.field("operation", op)
        .field("before", &before)
        .field("after", &after)
        .field("h_before", hb)
        .field("h_after", ha)
        .field("closure", closure);
    Ok(r)
}

fn dispatch(cli: &Cli) -> Result<Response, CliError> {
    match &cli.command {
        Command::Entropy { input, t } => cmd_entropy(input, *t),
        Command::Classify { input } => cmd_classify(input),
        Command::Bounds { class, shape } => cmd_bounds(*class, shape),
        Command::Verify { theorem, shape, scan } => cmd_verify(*theorem, shape, scan),
        Command::Enumerate { class, shape, count_only, dedup_iso, scan } => {
            cmd_enumerate(*class, shape, *count_only, *dedup_iso, scan)
        }
        Command::Generate { family, shape, class } => cmd_generate(family, shape, *class, cli.seed),
        Command::Transform(t) => cmd_transform(t),
    }
}

/// Runs one invocation, writing everything it prints to `out` / `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let written = match dispatch(&cli) {
        Ok(resp) => {
            let text = match cli.format {
                Format::Text => resp.to_text(),
                Format::Json => resp.to_json(),
                Format::Csv => resp.to_csv(),
            };
            out.write_all(text.as_bytes()).map(|_| resp.exit_code)
        }
        Err(e) => match cli.format {
            Format::Json => writeln!(out, "{}", e.to_json()).map(|_| EXIT_USAGE),
            _ => writeln!(err, "error: {e}").map(|_| EXIT_USAGE),
        },
    };
    written.unwrap_or(EXIT_USAGE)
}
