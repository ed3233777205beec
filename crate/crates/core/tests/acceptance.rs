//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Runs without the libtest harness so the lines are always
//! printed.

use std::cell::RefCell;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hyperentropy::entropy::degree_entropy;
use hyperentropy::enumerate::{
    enumerate_class, naive_class_members, random_instance, verify_theorem, ExtremalReport, ReportOptions, Theorem,
    VerdictStatus,
};
use hyperentropy::families::{memberships, power, FamilyTag, Graph};
use hyperentropy::hypergraph::{ClassTag, CycleClass, Hypergraph};
use hyperentropy::transforms::{
    check_monotonicity, class_closure_check, move_edges, MonotonicityClaim, MoveSpec, TransformError,
};

const TOL: f64 = 1e-12;
const TIME_LIMIT: Duration = Duration::from_secs(60);
const MOVES_PER_KIND: usize = 1000;
const CLOSURE_CHECKS: usize = 1000;
const POWER_GRAPHS: usize = 100;
const ENTROPY_SWEEP: usize = 2000;

/// Instances from criteria 1–3 (k, m) grid.
const SUPERTREE_GRID: [(usize, usize); 5] = [(3, 2), (3, 3), (3, 4), (4, 2), (4, 3)];
const BICYCLIC_GRID: [(usize, usize); 4] = [(3, 3), (3, 4), (4, 2), (4, 3)];

#[derive(Default)]
struct Touched {
    instances: u64,
    max_identity_error: f64,
}

thread_local! {
    static TOUCHED: RefCell<Touched> = RefCell::new(Touched::default());
}

/// Independent evaluation: Shannon entropy of `d_i^t / Σ d^t`.
fn shannon(degrees: &[usize], t: f64) -> f64 {
    let w: Vec<f64> = degrees.iter().map(|&d| (d as f64).powf(t)).collect();
    let total: f64 = w.iter().sum();
    -w.iter().map(|x| x / total).filter(|&p| p > 0.0).map(|p| p * p.log2()).sum::<f64>()
}

fn identity_error(h: &Hypergraph) -> f64 {
    let d = h.degrees();
    let km = (h.k() * h.m()) as f64;
    let hv: f64 = d.iter().map(|&x| x as f64 * (x as f64).log2()).sum();
    let direct = shannon(&d, 1.0);
    let lib = degree_entropy(h, 1.0).bits();
    (direct - (km.log2() - hv / km)).abs().max((lib - direct).abs())
}

fn touch(h: &Hypergraph) {
    let err = identity_error(h);
    TOUCHED.with(|t| {
        let mut t = t.borrow_mut();
        t.instances += 1;
        t.max_identity_error = t.max_identity_error.max(err);
    });
}

fn touch_report(r: &ExtremalReport) {
    TOUCHED.with(|t| {
        let mut t = t.borrow_mut();
        t.instances += r.labeled_count;
        t.max_identity_error = t.max_identity_error.max(r.identity_max_error);
    });
    for e in r.minimizers.iter().chain(&r.maximizers) {
        touch(&e.representative);
    }
}

struct Outcome {
    problems: Vec<String>,
    summary: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome { problems: Vec::new(), summary: String::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.problems.push(what());
        }
    }
}

fn report(theorem: Theorem, k: usize, m: usize) -> ExtremalReport {
    let r = verify_theorem(theorem, k, m, &ReportOptions::default()).expect("instance is enumerable");
    touch_report(&r);
    r
}

fn describe_failure(r: &ExtremalReport) -> String {
    let v = &r.verdict;
    let mut s = format!(
        "{} k={} m={}: h in [{:.12}, {:.12}] vs bounds [{:.12}, {:.12}], {} of {} outside",
        r.class,
        r.k,
        r.m,
        r.min_h.unwrap_or(f64::NAN),
        r.max_h.unwrap_or(f64::NAN),
        r.h_bounds.lower,
        r.h_bounds.upper,
        v.bound_violations,
        r.labeled_count
    );
    if let Some(c) = &v.counterexample {
        s += &format!("; counterexample {} (h = {:.12}): {}", c.hypergraph, c.h, c.reason);
    }
    s
}

fn criterion_1() -> Outcome {
    let mut out = Outcome::new();
    let mut largest = Duration::ZERO;
    for (k, m) in SUPERTREE_GRID {
        let start = Instant::now();
        let r = report(Theorem::Supertree, k, m);
        let elapsed = start.elapsed();
        if (k, m) == (3, 4) {
            largest = elapsed;
        }
        out.check(r.verdict.status == VerdictStatus::Pass, || describe_failure(&r));
        out.check(r.verdict.lower_equality.holds, || {
            format!("k={k} m={m}: minimizers are not exactly the Hyperstar-tagged instances")
        });
        out.check(r.verdict.upper_equality.holds, || {
            format!("k={k} m={m}: maximizers are not exactly the max-degree-2 instances")
        });
        out.check(r.minimizers.iter().all(|e| e.tags.contains(&FamilyTag::Hyperstar)), || {
            format!("k={k} m={m}: minimizer without Hyperstar tag")
        });
        out.check(r.maximizers.iter().all(|e| e.tags.contains(&FamilyTag::TStar)), || {
            format!("k={k} m={m}: maximizer without TStar tag")
        });
    }
    out.check(largest <= TIME_LIMIT, || format!("k=3 m=4 took {largest:.2?} (limit 60 s)"));
    out.summary = format!("5 instances; k=3 m=4 enumerated in {largest:.2?}");
    out
}

fn criterion_2() -> Outcome {
    let mut out = Outcome::new();
    for (k, m) in SUPERTREE_GRID {
        let r = report(Theorem::Unicyclic, k, m);
        let mf = m as f64;
        out.check(r.verdict.status == VerdictStatus::Pass, || describe_failure(&r));
        let max_h = r.max_h.unwrap_or(f64::NAN);
        let min_h = r.min_h.unwrap_or(f64::NAN);
        out.check((max_h - (mf * mf.log2() + 2.0)).abs() <= TOL, || {
            format!("k={k} m={m}: max h {max_h:.12} != m log m + 2")
        });
        out.check((min_h - 2.0 * mf).abs() <= TOL, || format!("k={k} m={m}: min h {min_h:.12} != 2m"));
        out.check(r.verdict.lower_equality.holds, || {
            format!("k={k} m={m}: max-h extremizers are not exactly the HII-tagged instances")
        });
        out.check(r.verdict.upper_equality.holds, || {
            format!("k={k} m={m}: min-h extremizers are not exactly the HI-tagged instances")
        });
        out.check(r.minimizers.iter().all(|e| e.tags.contains(&FamilyTag::HII)), || {
            format!("k={k} m={m}: max-h extremizer without HII tag")
        });
        out.check(r.maximizers.iter().all(|e| e.tags.contains(&FamilyTag::HI)), || {
            format!("k={k} m={m}: min-h extremizer without HI tag")
        });
    }
    out.summary = "5 instances".into();
    out
}

fn criterion_3() -> Outcome {
    let mut out = Outcome::new();
    for (k, m) in BICYCLIC_GRID {
        let r = report(Theorem::Bicyclic, k, m);
        let mf = m as f64;
        out.check(r.verdict.bound_violations == 0, || describe_failure(&r));
        if let (Some(lo), Some(hi)) = (r.min_h, r.max_h) {
            out.check(lo >= 2.0 * (mf + 1.0) - TOL && hi <= mf * mf.log2() + 4.0 + TOL, || {
                format!("k={k} m={m}: h range [{lo:.12}, {hi:.12}] leaves [2(m+1), m log m + 4]")
            });
        }
        for e in &r.minimizers {
            out.check(e.tags.iter().any(|t| matches!(t, FamilyTag::HIV | FamilyTag::HV)), || {
                format!(
                    "k={k} m={m}: max-h extremizer {} (degrees {}, h = {:.12}, {} labeled) is neither HIV nor HV",
                    e.representative, e.degree_sequence, e.h, e.labeled_count
                )
            });
        }
        out.check(r.verdict.upper_equality.holds, || {
            format!("k={k} m={m}: min-h extremizers are not exactly the HIII-tagged instances")
        });
        if k == 3 {
            out.check(r.notes.iter().any(|n| n.contains("HV") && n.contains("infeasible")), || {
                format!("k=3 m={m}: HV infeasibility not reported")
            });
        }
    }
    let empty = report(Theorem::Bicyclic, 3, 2);
    out.check(empty.verdict.status == VerdictStatus::Empty, || "k=3 m=2 not flagged empty".into());
    out.check(empty.notes.iter().any(|n| n.contains("class is empty")), || {
        "k=3 m=2 emptiness not reported in notes".into()
    });
    out.summary = "4 instances plus the empty k=3 m=2 class".into();
    out
}

/// Random members across classes with k in 3..=5 and m in 3..=8.
fn random_members(seed: u64) -> impl Iterator<Item = Hypergraph> {
    (0..).filter_map(move |i: u64| {
        let class = CycleClass::ALL[(i % 3) as usize];
        let k = 3 + (i / 3 % 3) as usize;
        let m = 3 + (i / 9 % 6) as usize;
        random_instance(class, k, m, seed.wrapping_mul(1_000_003).wrapping_add(i)).ok()
    })
}

#[derive(Clone, Copy)]
enum Kind {
    Spread,
    Release,
    Concentrate,
}

/// A random valid claim of the given kind on `h`, with its result.
fn random_claim(h: &Hypergraph, kind: Kind, rng: &mut ChaCha8Rng) -> Option<(MonotonicityClaim, Hypergraph)> {
    let deg = h.degrees();
    let mut claims = Vec::new();
    match kind {
        Kind::Release => {
            if !h.is_linear() {
                return None;
            }
            for (i, e) in h.edges().iter().enumerate() {
                for &u in e {
                    claims.push(MonotonicityClaim::Release { edge: i, anchor: u });
                }
            }
        }
        Kind::Spread | Kind::Concentrate => {
            for (i, e) in h.edges().iter().enumerate() {
                for &s in e {
                    for t in (0..h.n()).filter(|t| !e.contains(t)) {
                        let (ds, dt) = (deg[s], deg[t]);
                        match kind {
                            Kind::Spread if ds >= dt + 2 => {
                                claims.push(MonotonicityClaim::Spread { edge: i, source: s, target: t })
                            }
                            Kind::Concentrate if ds >= 2 && dt >= ds => {
                                claims.push(MonotonicityClaim::Concentrate { edge: i, source: s, target: t })
                            }
                            _ => {}
                        }
                    }
                }
            }
        }
    }
    claims.shuffle(rng);
    claims.into_iter().find_map(|claim| {
        let after = match claim {
            MonotonicityClaim::Spread { edge, source, target }
            | MonotonicityClaim::Concentrate { edge, source, target } => {
                move_edges(h, &MoveSpec::single(edge, source, target))
            }
            MonotonicityClaim::Release { edge, anchor } => hyperentropy::transforms::edge_release(h, edge, anchor),
        };
        match after {
            Ok(a) => Some((claim, a)),
            Err(
                TransformError::MultipleEdgeCreated { .. }
                | TransformError::IsolatedVertexCreated(_)
                | TransformError::EdgeIsPendent(_),
            ) => None,
            Err(e) => panic!("unexpected transform error {e}"),
        }
    })
}

fn transform_results(kind: Kind, seed: u64, want: usize) -> Vec<(Hypergraph, MonotonicityClaim, Hypergraph)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for h in random_members(seed) {
        if out.len() >= want {
            break;
        }
        if let Some((claim, after)) = random_claim(&h, kind, &mut rng) {
            out.push((h, claim, after));
        }
    }
    out
}

fn criterion_4() -> Outcome {
    let mut out = Outcome::new();
    let mut parts = Vec::new();
    for (kind, name, seed) in
        [(Kind::Spread, "spread", 11), (Kind::Release, "release", 12), (Kind::Concentrate, "concentrate", 13)]
    {
        let results = transform_results(kind, seed, MOVES_PER_KIND);
        let mut violations = 0;
        let mut min_margin = f64::INFINITY;
        for (before, claim, after) in &results {
            touch(before);
            touch(after);
            let v = check_monotonicity(before, after, *claim).expect("claim was built from a valid transform");
            min_margin = min_margin.min(v.margin);
            if !v.holds {
                violations += 1;
                if violations == 1 {
                    out.problems.push(format!("{name}: {claim:?} on {before} gives margin {:e}", v.margin));
                }
            }
        }
        out.check(results.len() >= MOVES_PER_KIND, || format!("{name}: only {} valid moves", results.len()));
        out.check(violations == 0, || format!("{name}: {violations} violations"));
        parts.push(format!("{name} {} (min margin {min_margin:.3e})", results.len()));
    }
    out.summary = parts.join(", ");
    out
}

fn criterion_5() -> Outcome {
    let mut out = Outcome::new();
    let mut checked = 0usize;
    let mut per_class = [0usize; 3];
    let mut violations = 0usize;
    for (kind, seed) in [(Kind::Spread, 21), (Kind::Release, 22), (Kind::Concentrate, 23)] {
        for (before, _, after) in transform_results(kind, seed, CLOSURE_CHECKS / 2) {
            touch(&after);
            let Ok(v) = class_closure_check(&before, &after) else {
                continue;
            };
            checked += 1;
            if let ClassTag::Other(_) = v.before {
            } else {
                let idx = match v.before {
                    ClassTag::Supertree => 0,
                    ClassTag::Unicyclic => 1,
                    _ => 2,
                };
                per_class[idx] += 1;
            }
            if !v.preserved {
                violations += 1;
                if violations == 1 {
                    out.problems.push(format!("{before} -> {after}: {:?} became {:?}", v.before, v.after));
                }
            }
        }
    }
    out.check(checked >= CLOSURE_CHECKS, || format!("only {checked} connected results"));
    out.check(per_class.iter().all(|&c| c > 0), || format!("class coverage {per_class:?}"));
    out.check(violations == 0, || format!("{violations} violations"));
    out.summary = format!(
        "{checked} connected results (supertree {}, unicyclic {}, bicyclic {})",
        per_class[0], per_class[1], per_class[2]
    );
    out
}

/// Random spanning tree plus `extra` random chords.
fn random_connected_graph(rng: &mut ChaCha8Rng) -> Graph {
    let n = rng.gen_range(2..=10);
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    let extra = rng.gen_range(0..=3);
    for _ in 0..extra * 4 {
        if edges.len() >= (n - 1) + extra {
            break;
        }
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let e = (a.min(b), a.max(b));
        if a != b && !edges.contains(&e) {
            edges.push(e);
        }
    }
    Graph::new(n, edges).expect("construction keeps the graph simple")
}

fn criterion_6() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let (mut trees, mut unicyclic) = (0, 0);
    for _ in 0..POWER_GRAPHS {
        let g = random_connected_graph(&mut rng);
        let c = g.edges().len() + 1 - g.n();
        for k in [3, 4, 5] {
            let h = power(&g, k).expect("power of a simple graph is valid");
            touch(&h);
            let s = h.classify();
            out.check(s.connected && s.cyclomatic == c, || {
                format!("graph {:?}: c(power, k={k}) = {} but |E|-|V|+1 = {c}", g.edges(), s.cyclomatic)
            });
            match c {
                0 => out.check(s.tag == ClassTag::Supertree, || format!("tree power k={k} is {:?}", s.tag)),
                1 => out.check(s.tag == ClassTag::Unicyclic, || format!("unicyclic power k={k} is {:?}", s.tag)),
                _ => {}
            }
        }
        match c {
            0 => trees += 1,
            1 => unicyclic += 1,
            _ => {}
        }
    }
    out.check(trees > 0 && unicyclic > 0, || "random graphs missed trees or unicyclic graphs".into());
    out.summary = format!("{POWER_GRAPHS} graphs x k in {{3,4,5}} ({trees} trees, {unicyclic} unicyclic)");
    out
}

fn criterion_7() -> Outcome {
    let mut out = Outcome::new();
    let (instances, identity) = TOUCHED.with(|t| {
        let t = t.borrow();
        (t.instances, t.max_identity_error)
    });
    out.check(instances > 0, || "no instances recorded by criteria 1-6".into());
    out.check(identity <= TOL, || format!("identity error {identity:e} exceeds 1e-12"));

    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut worst_oracle = 0f64;
    for h in random_members(41).take(ENTROPY_SWEEP) {
        let t: f64 = rng.gen_range(-3.0..=3.0);
        let value = degree_entropy(&h, t).bits();
        let log_n = (h.n() as f64).log2();
        out.check((0.0..=log_n).contains(&value), || format!("I^{t} = {value} outside [0, log n] for {h}"));
        worst_oracle = worst_oracle.max((value - shannon(&h.degrees(), t)).abs());
        out.check(degree_entropy(&h, 0.0).bits() == log_n, || format!("t=0 is not exactly log2 n for {h}"));
    }
    out.check(worst_oracle <= TOL, || format!("entropy differs from direct summation by {worst_oracle:e}"));
    out.summary = format!(
        "identity max error {identity:.1e} over {instances} instances; {ENTROPY_SWEEP} (H, t) samples, oracle error {worst_oracle:.1e}"
    );
    out
}

fn criterion_8() -> Outcome {
    let mut out = Outcome::new();
    let counts: Vec<usize> =
        CycleClass::ALL.iter().map(|&c| enumerate_class(c, 3, 2).expect("small").count()).collect();
    out.check(counts == [15, 6, 0], || format!("k=3 m=2 counts {counts:?}, expected [15, 6, 0]"));
    let mut compared = 0usize;
    for class in CycleClass::ALL {
        for (k, m) in SUPERTREE_GRID {
            let fast: Vec<Hypergraph> = enumerate_class(class, k, m).expect("enumerable").collect();
            let naive = naive_class_members(class, k, m);
            compared += fast.len();
            out.check(fast == naive, || {
                format!("{class} k={k} m={m}: pruned {} vs naive {} members", fast.len(), naive.len())
            });
            // soundness of every yielded member
            out.check(fast.iter().all(|h| h.classify().tag == class.tag() && memberships(h).is_ok()), || {
                format!("{class} k={k} m={m}: unsound member")
            });
        }
    }
    out.summary = format!("counts {counts:?}; {compared} members matched across 15 instance families");
    out
}

type Criterion = (u8, &'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        (1, "supertree bounds and extremizers", criterion_1),
        (2, "unicyclic bounds and extremizers", criterion_2),
        (3, "bicyclic bounds and extremizers", criterion_3),
        (4, "monotonicity of moves", criterion_4),
        (5, "class closure", criterion_5),
        (6, "power construction", criterion_6),
        (7, "identity and entropy range", criterion_7),
        (8, "enumerator completeness", criterion_8),
    ];
    let mut failed = 0;
    for (id, name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let pass = outcome.problems.is_empty();
        failed += usize::from(!pass);
        println!(
            "criterion {id} ({name}): {} - {} [{:.2?}]",
            if pass { "PASS" } else { "FAIL" },
            outcome.summary,
            start.elapsed()
        );
        for p in outcome.problems.iter().take(12) {
            println!("    {p}");
        }
    }
    println!("acceptance: {} of 8 criteria passed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
