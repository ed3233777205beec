//! Named structures: power hypergraphs, hyperstars, loose paths and the
//! extremal families of each cyclomatic class, with structural recognizers.
//!
//! The max-degree-2 families (`TStar`, `HI`, `HIII`) are predicates; their
//! constructors return one canonical member. The dominant-vertex families
//! (`Hyperstar`, `HII`, `HIV`, `HV`) are recognized from the degree sequence
//! and the pairwise edge-intersection pattern.

mod graph;
pub mod iso;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

pub use graph::{power, Graph, GraphError};
pub use iso::{find_isomorphism, is_isomorphic, is_isomorphic_bounded, IsoError, IsoInvariant};

use crate::hypergraph::{ClassTag, Hypergraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FamilyTag {
    Hyperstar,
    TStar,
    HI,
    HII,
    HIII,
    HIV,
    HV,
    #[serde(rename = "None")]
    Unlabeled,
}

impl FamilyTag {
    pub const LABELED: [FamilyTag; 7] = [
        FamilyTag::Hyperstar,
        FamilyTag::TStar,
        FamilyTag::HI,
        FamilyTag::HII,
        FamilyTag::HIII,
        FamilyTag::HIV,
        FamilyTag::HV,
    ];

    /// Order used by [`membership`] when several predicates hold (`m = 2`).
    const PRECEDENCE: [FamilyTag; 7] = [
        FamilyTag::Hyperstar,
        FamilyTag::HII,
        FamilyTag::HIV,
        FamilyTag::HV,
        FamilyTag::TStar,
        FamilyTag::HI,
        FamilyTag::HIII,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyTag::Hyperstar => "Hyperstar",
            FamilyTag::TStar => "TStar",
            FamilyTag::HI => "HI",
            FamilyTag::HII => "HII",
            FamilyTag::HIII => "HIII",
            FamilyTag::HIV => "HIV",
            FamilyTag::HV => "HV",
            FamilyTag::Unlabeled => "None",
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "hyperstar" | "star" => FamilyTag::Hyperstar,
            "tstar" | "t*" | "loose-path" | "path" => FamilyTag::TStar,
            "hi" => FamilyTag::HI,
            "hii" => FamilyTag::HII,
            "hiii" => FamilyTag::HIII,
            "hiv" => FamilyTag::HIV,
            "hv" => FamilyTag::HV,
            "none" => FamilyTag::Unlabeled,
            other => return Err(format!("unknown family `{other}`")),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("{tag} with m = {m}, k = {k} is infeasible: {reason}")]
    InvalidParameters { tag: FamilyTag, m: usize, k: usize, reason: &'static str },
    #[error("membership is only defined for connected hypergraphs")]
    Disconnected,
}

/// Hyperstar with `m` edges: `m` edges meeting exactly in vertex 0.
pub fn hyperstar(m: usize, k: usize) -> Hypergraph {
    assert!(m >= 1 && k >= 2, "hyperstar needs m >= 1 and k >= 2");
    power(&Graph::star(m), k).expect("star power is valid")
}

/// Power of the path with `m` edges.
pub fn loose_path(m: usize, k: usize) -> Hypergraph {
    assert!(m >= 1 && k >= 2, "loose path needs m >= 1 and k >= 2");
    power(&Graph::path(m + 1), k).expect("path power is valid")
}

struct Builder {
    k: usize,
    next: usize,
    edges: Vec<Vec<usize>>,
}

impl Builder {
    fn new(k: usize, reserved: usize) -> Self {
        Builder { k, next: reserved, edges: Vec::new() }
    }

    fn fresh(&mut self, count: usize) -> Vec<usize> {
        let out = (self.next..self.next + count).collect();
        self.next += count;
        out
    }

    /// Adds an edge containing `core`, padded with fresh vertices up to k.
    fn edge(&mut self, core: &[usize]) {
        let mut e = core.to_vec();
        let pad = self.fresh(self.k - core.len());
        e.extend(pad);
        self.edges.push(e);
    }

    fn finish(self) -> Option<Hypergraph> {
        Hypergraph::new(self.k, self.next, self.edges).ok()
    }
}

/// `m` edges in a cyclic chain, consecutive edges sharing one vertex; the
/// first pair shares `1 + extra` vertices.
fn cyclic_chain(m: usize, k: usize, extra: usize) -> Option<Hypergraph> {
    let mut b = Builder::new(k, 0);
    let shared: Vec<Vec<usize>> = (0..m).map(|i| b.fresh(if i == 0 { 1 + extra } else { 1 })).collect();
    for i in 0..m {
        let prev = &shared[(i + m - 1) % m];
        let mut core = prev.clone();
        core.extend(&shared[i]);
        if core.len() > k {
            return None;
        }
        b.edge(&core);
    }
    b.finish()
}

/// One canonical member of the named family with `m` edges.
pub fn family_member(tag: FamilyTag, m: usize, k: usize) -> Result<Hypergraph, FamilyError> {
    let infeasible = |reason| FamilyError::InvalidParameters { tag, m, k, reason };
    if k < 3 {
        return Err(infeasible("families are defined for k >= 3"));
    }
    match tag {
        FamilyTag::Hyperstar => {
            if m < 1 {
                return Err(infeasible("needs m >= 1"));
            }
            Ok(hyperstar(m, k))
        }
        FamilyTag::TStar => {
            if m < 2 {
                return Err(infeasible("needs m >= 2"));
            }
            Ok(loose_path(m, k))
        }
        FamilyTag::HI => {
            if m < 2 {
                return Err(infeasible("needs m >= 2"));
            }
            cyclic_chain(m, k, 0).ok_or_else(|| infeasible("cycle does not fit"))
        }
        FamilyTag::HIII => {
            if m < 2 {
                return Err(infeasible("needs m >= 2"));
            }
            cyclic_chain(m, k, 1).ok_or_else(|| infeasible("two edges sharing three vertices need k >= 4"))
        }
        FamilyTag::HII => {
            if m < 2 {
                return Err(infeasible("needs m >= 2"));
            }
            let (u, w) = (0, 1);
            let mut b = Builder::new(k, 2);
            b.edge(&[u, w]);
            b.edge(&[u, w]);
            for _ in 2..m {
                b.edge(&[u]);
            }
            b.finish().ok_or_else(|| infeasible("construction is not simple"))
        }
        FamilyTag::HIV => {
            if m < 3 {
                return Err(infeasible("two distinct sharing pairs need m >= 3"));
            }
            let (u, w1, w2) = (0, 1, 2);
            let mut b = Builder::new(k, 3);
            let used = if m == 3 {
                b.edge(&[u, w1]);
                b.edge(&[u, w1, w2]);
                b.edge(&[u, w2]);
                3
            } else {
                b.edge(&[u, w1]);
                b.edge(&[u, w1]);
                b.edge(&[u, w2]);
                b.edge(&[u, w2]);
                4
            };
            for _ in used..m {
                b.edge(&[u]);
            }
            b.finish().ok_or_else(|| infeasible("construction is not simple"))
        }
        FamilyTag::HV => {
            if m < 2 {
                return Err(infeasible("needs m >= 2"));
            }
            if k < 4 {
                return Err(infeasible("two distinct edges sharing three vertices need k >= 4"));
            }
            let (u, w1, w2) = (0, 1, 2);
            let mut b = Builder::new(k, 3);
            b.edge(&[u, w1, w2]);
            b.edge(&[u, w1, w2]);
            for _ in 2..m {
                b.edge(&[u]);
            }
            b.finish().ok_or_else(|| infeasible("construction is not simple"))
        }
        FamilyTag::Unlabeled => Err(infeasible("not a constructible family")),
    }
}

/// Facts shared by all predicates, computed once.
struct Profile {
    tag: ClassTag,
    m: usize,
    degrees: Vec<usize>,
    sorted: crate::hypergraph::DegreeSequence,
    max_intersection: usize,
}

impl Profile {
    fn of(h: &Hypergraph) -> Self {
        let degrees = h.degrees();
        Profile {
            tag: h.classify().tag,
            m: h.m(),
            sorted: crate::hypergraph::DegreeSequence::from_degrees(degrees.clone()),
            degrees,
            max_intersection: h.max_pairwise_intersection(),
        }
    }
}

fn dominant_pattern(p: &Profile, h: &Hypergraph, extra_twos: usize) -> bool {
    let mut head = vec![p.m];
    head.extend(std::iter::repeat_n(2, extra_twos));
    if !p.sorted.is_head_then_ones(&head) {
        return false;
    }
    // every edge through a degree-2 vertex also contains the center
    let Some(center) = p.degrees.iter().position(|&d| d == p.m) else {
        return false;
    };
    h.edges().iter().filter(|e| e.iter().any(|&v| v != center && p.degrees[v] == 2)).all(|e| e.contains(&center))
}

fn matches(tag: FamilyTag, p: &Profile, h: &Hypergraph) -> bool {
    match tag {
        FamilyTag::Hyperstar => p.tag == ClassTag::Supertree && p.sorted.is_head_then_ones(&[p.m]),
        FamilyTag::TStar => p.tag == ClassTag::Supertree && p.sorted.max_degree() == 2,
        FamilyTag::HI => p.tag == ClassTag::Unicyclic && p.sorted.max_degree() == 2,
        FamilyTag::HIII => p.tag == ClassTag::Bicyclic && p.sorted.max_degree() == 2,
        FamilyTag::HII => p.tag == ClassTag::Unicyclic && dominant_pattern(p, h, 1),
        FamilyTag::HIV => {
            p.tag == ClassTag::Bicyclic && p.m >= 3 && p.max_intersection <= 2 && dominant_pattern(p, h, 2)
        }
        FamilyTag::HV => p.tag == ClassTag::Bicyclic && p.max_intersection >= 3 && dominant_pattern(p, h, 2),
        FamilyTag::Unlabeled => false,
    }
}

/// Whether `h` belongs to the family. Disconnected inputs belong to none.
pub fn is_member(tag: FamilyTag, h: &Hypergraph) -> bool {
    matches(tag, &Profile::of(h), h)
}

/// Every family predicate `h` satisfies, in declaration order.
pub fn memberships(h: &Hypergraph) -> Result<Vec<FamilyTag>, FamilyError> {
    if !h.is_connected() {
        return Err(FamilyError::Disconnected);
    }
    let p = Profile::of(h);
    Ok(FamilyTag::LABELED.into_iter().filter(|&t| matches(t, &p, h)).collect())
}

/// The single most specific family tag, or `Unlabeled`.
///
/// At `m = 2` several predicates can hold at once (a two-edge hyperstar has
/// maximum degree 2); the dominant-vertex families win.
pub fn membership(h: &Hypergraph) -> Result<FamilyTag, FamilyError> {
    let tags = memberships(h)?;
    Ok(FamilyTag::PRECEDENCE.into_iter().find(|t| tags.contains(t)).unwrap_or(FamilyTag::Unlabeled))
}
