//! Sharded scanning of a class, extremal statistics and theorem verdicts.
//!
//! Each shard folds its members into a [`Partial`]; partials merge
//! associatively and commutatively (sums, exact min/max, and "smallest
//! labeled representative" choices), so the merged report does not depend
//! on the shard count or on scheduling.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{check_enumerable, ClassStream, EnumerateError, Theorem, DEFAULT_MAX_SPACE};
use crate::entropy::{
    entropy_from_h, entropy_of_degrees, h_bounds, h_of_degrees, theorem_bounds, BoundPair, CLOSED_FORM_TOLERANCE,
};
use crate::families::iso::{find_isomorphism, IsoInvariant, DEFAULT_ISO_MAX_VERTICES};
use crate::families::{family_member, memberships, FamilyTag};
use crate::hypergraph::{CycleClass, DegreeSequence, Hypergraph};

/// Candidates within this distance of the extremal `h` are kept together.
pub const TIE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct ReportOptions {
    /// Refuse classes whose `C(C(n, k), m)` exceeds this.
    pub max_space: u128,
    /// Number of work shards; does not affect the result.
    pub shards: usize,
    /// Worker threads; 0 uses the global rayon pool.
    pub jobs: usize,
    /// Deduplicate extremizers (and count classes) up to isomorphism.
    pub dedup_iso: bool,
    pub iso_max_vertices: usize,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            max_space: DEFAULT_MAX_SPACE,
            shards: 32,
            jobs: 0,
            dedup_iso: true,
            iso_max_vertices: DEFAULT_ISO_MAX_VERTICES,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum BucketKey {
    Iso(IsoInvariant),
    Degrees(DegreeSequence),
}

#[derive(Debug, Clone)]
struct Rep {
    graph: Hypergraph,
    count: u64,
}

/// Representatives grouped by isomorphism (or, without dedup, by degree
/// multiset). Each representative is the smallest labeled member seen.
#[derive(Debug, Clone)]
struct Catalog {
    dedup: bool,
    buckets: BTreeMap<BucketKey, Vec<Rep>>,
}

impl Catalog {
    fn new(dedup: bool) -> Self {
        Catalog { dedup, buckets: BTreeMap::new() }
    }

    fn insert(&mut self, graph: &Hypergraph, count: u64) {
        let key = if self.dedup {
            BucketKey::Iso(IsoInvariant::of(graph))
        } else {
            BucketKey::Degrees(graph.degree_sequence())
        };
        let reps = self.buckets.entry(key).or_default();
        let found = if self.dedup {
            reps.iter_mut().find(|r| find_isomorphism(&r.graph, graph).is_some())
        } else {
            reps.first_mut()
        };
        match found {
            Some(rep) => {
                rep.count += count;
                if *graph < rep.graph {
                    rep.graph = graph.clone();
                }
            }
            None => reps.push(Rep { graph: graph.clone(), count }),
        }
    }

    fn merge(&mut self, other: Catalog) {
        for reps in other.buckets.into_values() {
            for rep in reps {
                self.insert(&rep.graph, rep.count);
            }
        }
    }

    fn len(&self) -> usize {
        self.buckets.values().map(Vec::len).sum()
    }

    fn reps(&self) -> impl Iterator<Item = &Rep> {
        self.buckets.values().flatten()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Direction {
    Max,
    Min,
}

#[derive(Debug, Clone)]
struct Group {
    h: f64,
    catalog: Catalog,
}

/// Members whose `h` lies within [`TIE_TOLERANCE`] of the extremum.
#[derive(Debug, Clone)]
struct Extremes {
    direction: Direction,
    best: Option<f64>,
    groups: BTreeMap<DegreeSequence, Group>,
}

impl Extremes {
    fn new(direction: Direction) -> Self {
        Extremes { direction, best: None, groups: BTreeMap::new() }
    }

    /// Positive when `a` is better than `b`.
    fn gain(&self, a: f64, b: f64) -> f64 {
        match self.direction {
            Direction::Max => a - b,
            Direction::Min => b - a,
        }
    }

    fn offer(&mut self, h: f64, degrees: &DegreeSequence, graph: &Hypergraph, dedup: bool) {
        if let Some(best) = self.best {
            if self.gain(best, h) > TIE_TOLERANCE {
                return;
            }
        }
        self.groups
            .entry(degrees.clone())
            .or_insert_with(|| Group { h, catalog: Catalog::new(dedup) })
            .catalog
            .insert(graph, 1);
        self.raise(h);
    }

    fn raise(&mut self, h: f64) {
        let improved = self.best.is_none_or(|b| self.gain(h, b) > 0.0);
        if improved {
            self.best = Some(h);
            let dir = self.direction;
            self.groups.retain(|_, g| match dir {
                Direction::Max => h - g.h <= TIE_TOLERANCE,
                Direction::Min => g.h - h <= TIE_TOLERANCE,
            });
        }
    }

    fn merge(&mut self, other: Extremes) {
        for (degrees, group) in other.groups {
            match self.groups.get_mut(&degrees) {
                Some(mine) => mine.catalog.merge(group.catalog),
                None => {
                    self.groups.insert(degrees, group);
                }
            }
        }
        if let Some(b) = other.best {
            // force a prune against the combined best
            let current = self.best;
            self.best = None;
            self.raise(b);
            if let Some(c) = current {
                self.raise(c);
            }
        }
    }
}

#[derive(Debug, Clone, Default)]
struct Tally {
    attaining: u64,
    in_family: u64,
    matched: u64,
    first_mismatch: Option<Hypergraph>,
}

impl Tally {
    fn record(&mut self, attains: bool, member: bool, graph: &Hypergraph) {
        self.attaining += attains as u64;
        self.in_family += member as u64;
        self.matched += (attains && member) as u64;
        if attains != member {
            keep_smallest(&mut self.first_mismatch, graph);
        }
    }

    fn merge(&mut self, other: Tally) {
        self.attaining += other.attaining;
        self.in_family += other.in_family;
        self.matched += other.matched;
        if let Some(g) = other.first_mismatch {
            keep_smallest(&mut self.first_mismatch, &g);
        }
    }
}

fn keep_smallest(slot: &mut Option<Hypergraph>, candidate: &Hypergraph) {
    if slot.as_ref().is_none_or(|cur| candidate < cur) {
        *slot = Some(candidate.clone());
    }
}

struct Context<'a> {
    k: usize,
    m: usize,
    bounds: &'a BoundPair,
    dedup_extremes: bool,
    count_classes: bool,
}

#[derive(Debug, Clone)]
struct Partial {
    labeled: u64,
    min_i: f64,
    max_i: f64,
    identity_error: f64,
    max_h: Extremes,
    min_h: Extremes,
    violations: u64,
    first_violation: Option<Hypergraph>,
    lower: Tally,
    upper: Tally,
    classes: Option<Catalog>,
}

impl Partial {
    fn new(ctx: &Context<'_>) -> Self {
        Partial {
            labeled: 0,
            min_i: f64::INFINITY,
            max_i: f64::NEG_INFINITY,
            identity_error: 0.0,
            max_h: Extremes::new(Direction::Max),
            min_h: Extremes::new(Direction::Min),
            violations: 0,
            first_violation: None,
            lower: Tally::default(),
            upper: Tally::default(),
            classes: ctx.count_classes.then(|| Catalog::new(true)),
        }
    }

    fn observe(&mut self, ctx: &Context<'_>, graph: &Hypergraph) {
        let degrees = graph.degree_sequence();
        let h = h_of_degrees(degrees.as_slice());
        let i = entropy_of_degrees(degrees.as_slice(), 1.0);
        self.labeled += 1;
        self.min_i = self.min_i.min(i);
        self.max_i = self.max_i.max(i);
        self.identity_error = self.identity_error.max((i - entropy_from_h(ctx.k, ctx.m, h)).abs());

        self.max_h.offer(h, &degrees, graph, ctx.dedup_extremes);
        self.min_h.offer(h, &degrees, graph, ctx.dedup_extremes);

        let b = ctx.bounds;
        if i < b.lower - CLOSED_FORM_TOLERANCE || i > b.upper + CLOSED_FORM_TOLERANCE {
            self.violations += 1;
            keep_smallest(&mut self.first_violation, graph);
        }
        let tags = memberships(graph).expect("enumerated members are connected");
        let in_any = |family: &[FamilyTag]| tags.iter().any(|t| family.contains(t));
        self.lower.record((i - b.lower).abs() <= CLOSED_FORM_TOLERANCE, in_any(&b.lower_witness), graph);
        self.upper.record((i - b.upper).abs() <= CLOSED_FORM_TOLERANCE, in_any(&b.upper_witness), graph);

        if let Some(classes) = self.classes.as_mut() {
            classes.insert(graph, 1);
        }
    }

    fn merge(mut self, other: Partial) -> Partial {
        self.labeled += other.labeled;
        self.min_i = self.min_i.min(other.min_i);
        self.max_i = self.max_i.max(other.max_i);
        self.identity_error = self.identity_error.max(other.identity_error);
        self.max_h.merge(other.max_h);
        self.min_h.merge(other.min_h);
        self.violations += other.violations;
        if let Some(g) = other.first_violation {
            keep_smallest(&mut self.first_violation, &g);
        }
        self.lower.merge(other.lower);
        self.upper.merge(other.upper);
        if let (Some(mine), Some(theirs)) = (self.classes.as_mut(), other.classes) {
            mine.merge(theirs);
        }
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Extremizer {
    pub representative: Hypergraph,
    pub degree_sequence: DegreeSequence,
    pub h: f64,
    pub entropy: f64,
    pub tags: Vec<FamilyTag>,
    /// Labeled members represented (the isomorphism class, or the degree
    /// multiset when not deduplicating).
    pub labeled_count: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VerdictStatus {
    Pass,
    Fail,
    /// No member exists; the claim holds vacuously.
    Empty,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EqualityCheck {
    pub bound: f64,
    pub family: Vec<FamilyTag>,
    /// Members whose entropy equals the bound within tolerance.
    pub attaining: u64,
    /// Members tagged with one of the claimed families.
    pub in_family: u64,
    pub matched: u64,
    /// Attaining set and family set coincide.
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub reason: String,
    pub hypergraph: Hypergraph,
    pub entropy: f64,
    pub h: f64,
    pub tags: Vec<FamilyTag>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub bound_violations: u64,
    pub lower_equality: EqualityCheck,
    pub upper_equality: EqualityCheck,
    pub counterexample: Option<Counterexample>,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.status != VerdictStatus::Fail
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremalReport {
    pub class: CycleClass,
    pub k: usize,
    pub m: usize,
    pub n: usize,
    pub labeled_count: u64,
    pub iso_class_count: Option<u64>,
    pub min_i: Option<f64>,
    pub max_i: Option<f64>,
    pub min_h: Option<f64>,
    pub max_h: Option<f64>,
    /// Members of minimum entropy (maximum `h`).
    pub minimizers: Vec<Extremizer>,
    /// Members of maximum entropy (minimum `h`).
    pub maximizers: Vec<Extremizer>,
    pub bounds: BoundPair,
    pub h_bounds: BoundPair,
    /// Largest `|I - (log(km) - h/(km))|` over all members.
    pub identity_max_error: f64,
    pub verdict: Verdict,
    pub notes: Vec<String>,
    pub warnings: Vec<String>,
}

fn run_shards<T, F>(opts: &ReportOptions, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    let shards = opts.shards.max(1);
    let work = || (0..shards).into_par_iter().map(&f).collect::<Vec<_>>();
    if opts.jobs == 0 {
        work()
    } else {
        rayon::ThreadPoolBuilder::new().num_threads(opts.jobs).build().expect("thread pool").install(work)
    }
}

/// Number of labeled members, counted in parallel.
pub fn count_class(class: CycleClass, k: usize, m: usize, opts: &ReportOptions) -> Result<u64, EnumerateError> {
    let n = check_enumerable(class, k, m, opts.max_space)?;
    let shards = opts.shards.max(1);
    Ok(run_shards(opts, |s| ClassStream::new(class, k, m, n, s, shards).count() as u64).into_iter().sum())
}

fn extremizers(ext: &Extremes, k: usize, m: usize) -> Vec<Extremizer> {
    let mut out: Vec<Extremizer> = ext
        .groups
        .iter()
        .flat_map(|(degrees, group)| {
            group.catalog.reps().map(move |rep| Extremizer {
                representative: rep.graph.clone(),
                degree_sequence: degrees.clone(),
                h: group.h,
                entropy: entropy_from_h(k, m, group.h),
                tags: memberships(&rep.graph).unwrap_or_default(),
                labeled_count: rep.count,
            })
        })
        .collect();
    out.sort_by(|a, b| a.degree_sequence.cmp(&b.degree_sequence).then(a.representative.cmp(&b.representative)));
    out
}

fn tie_warning(ext: &Extremes, what: &str) -> Option<String> {
    if ext.groups.len() < 2 {
        return None;
    }
    let seqs: Vec<String> = ext.groups.keys().map(|d| d.to_string()).collect();
    Some(format!("{what}: distinct degree multisets {} share the extremal h within {TIE_TOLERANCE:e}", seqs.join(", ")))
}

fn tags_label(tags: &[FamilyTag]) -> String {
    tags.iter().map(|t| t.name()).collect::<Vec<_>>().join("/")
}

/// Scans the whole class and compares it against the closed-form bounds
/// and the claimed equality families.
pub fn extremal_report(
    class: CycleClass,
    k: usize,
    m: usize,
    opts: &ReportOptions,
) -> Result<ExtremalReport, EnumerateError> {
    let n = check_enumerable(class, k, m, opts.max_space)?;
    let bounds = theorem_bounds(class, k, m)?;
    let hb = h_bounds(class, k, m)?;
    let within_iso = n <= opts.iso_max_vertices;
    let ctx = Context {
        k,
        m,
        bounds: &bounds,
        dedup_extremes: opts.dedup_iso && within_iso,
        count_classes: opts.dedup_iso && within_iso,
    };
    let shards = opts.shards.max(1);
    let partials = run_shards(opts, |s| {
        let mut partial = Partial::new(&ctx);
        for graph in ClassStream::new(class, k, m, n, s, shards) {
            partial.observe(&ctx, &graph);
        }
        partial
    });
    let total = partials.into_iter().reduce(Partial::merge).unwrap_or_else(|| Partial::new(&ctx));

    let empty = total.labeled == 0;
    let lower_equality = EqualityCheck {
        bound: bounds.lower,
        family: bounds.lower_witness.clone(),
        attaining: total.lower.attaining,
        in_family: total.lower.in_family,
        matched: total.lower.matched,
        holds: total.lower.first_mismatch.is_none(),
    };
    let upper_equality = EqualityCheck {
        bound: bounds.upper,
        family: bounds.upper_witness.clone(),
        attaining: total.upper.attaining,
        in_family: total.upper.in_family,
        matched: total.upper.matched,
        holds: total.upper.first_mismatch.is_none(),
    };

    let describe = |graph: &Hypergraph, reason: String| {
        let degrees = graph.degree_sequence();
        Counterexample {
            reason,
            hypergraph: graph.clone(),
            entropy: entropy_of_degrees(degrees.as_slice(), 1.0),
            h: h_of_degrees(degrees.as_slice()),
            tags: memberships(graph).unwrap_or_default(),
        }
    };
    let counterexample = if let Some(g) = &total.first_violation {
        Some(describe(g, format!("entropy outside [{:.12}, {:.12}]", bounds.lower, bounds.upper)))
    } else if let Some(g) = &total.lower.first_mismatch {
        Some(describe(g, format!("lower-bound equality set differs from {}", tags_label(&bounds.lower_witness))))
    } else {
        total.upper.first_mismatch.as_ref().map(|g| {
            describe(g, format!("upper-bound equality set differs from {}", tags_label(&bounds.upper_witness)))
        })
    };
    let status = if empty {
        VerdictStatus::Empty
    } else if counterexample.is_some() {
        VerdictStatus::Fail
    } else {
        VerdictStatus::Pass
    };

    let mut notes = Vec::new();
    if empty {
        notes.push(format!(
            "class is empty: no connected simple {k}-uniform hypergraph with {m} edges on {n} vertices has cyclomatic number {}",
            class.cyclomatic()
        ));
    }
    for tag in bounds.lower_witness.iter().chain(&bounds.upper_witness) {
        if let Err(err) = family_member(*tag, m, k) {
            notes.push(format!("family {err}"));
        }
    }
    if !empty {
        for (side, check) in [("lower", &lower_equality), ("upper", &upper_equality)] {
            if check.attaining == 0 {
                notes.push(format!("{side} bound {:.12} is not attained by any member", check.bound));
            }
        }
    }
    if !within_iso && opts.dedup_iso {
        notes.push(format!(
            "n = {n} exceeds the isomorphism bound {}; extremizers grouped by degree multiset",
            opts.iso_max_vertices
        ));
    }
    let warnings = [tie_warning(&total.max_h, "minimum entropy"), tie_warning(&total.min_h, "maximum entropy")]
        .into_iter()
        .flatten()
        .collect();

    let finite = |v: f64| (!empty).then_some(v);
    Ok(ExtremalReport {
        class,
        k,
        m,
        n,
        labeled_count: total.labeled,
        iso_class_count: total.classes.as_ref().map(|c| c.len() as u64),
        min_i: finite(total.min_i),
        max_i: finite(total.max_i),
        min_h: total.min_h.best,
        max_h: total.max_h.best,
        minimizers: extremizers(&total.max_h, k, m),
        maximizers: extremizers(&total.min_h, k, m),
        bounds,
        h_bounds: hb,
        identity_max_error: total.identity_error,
        verdict: Verdict { status, bound_violations: total.violations, lower_equality, upper_equality, counterexample },
        notes,
        warnings,
    })
}

/// One isomorphism class of a cyclomatic class.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsoClass {
    /// Smallest labeled member.
    pub representative: Hypergraph,
    pub degree_sequence: DegreeSequence,
    pub labeled_count: u64,
    pub tags: Vec<FamilyTag>,
}

/// The isomorphism classes of a class, ordered by representative.
pub fn iso_classes(
    class: CycleClass,
    k: usize,
    m: usize,
    opts: &ReportOptions,
) -> Result<Vec<IsoClass>, EnumerateError> {
    let n = check_enumerable(class, k, m, opts.max_space)?;
    if n > opts.iso_max_vertices {
        return Err(EnumerateError::IsoBoundExceeded { n, limit: opts.iso_max_vertices });
    }
    let shards = opts.shards.max(1);
    let catalog = run_shards(opts, |s| {
        let mut catalog = Catalog::new(true);
        for graph in ClassStream::new(class, k, m, n, s, shards) {
            catalog.insert(&graph, 1);
        }
        catalog
    })
    .into_iter()
    .reduce(|mut a, b| {
        a.merge(b);
        a
    })
    .unwrap_or_else(|| Catalog::new(true));
    let mut out: Vec<IsoClass> = catalog
        .reps()
        .map(|rep| IsoClass {
            representative: rep.graph.clone(),
            degree_sequence: rep.graph.degree_sequence(),
            labeled_count: rep.count,
            tags: memberships(&rep.graph).unwrap_or_default(),
        })
        .collect();
    out.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(out)
}

pub fn verify_theorem(
    theorem: Theorem,
    k: usize,
    m: usize,
    opts: &ReportOptions,
) -> Result<ExtremalReport, EnumerateError> {
    extremal_report(theorem.class(), k, m, opts)
}
