//! The k-uniform hypergraph value type and its structural queries.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Vertices are identified by their index in `0..n`.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("edge cardinality k must be at least 2, got {0}")]
    InvalidUniformity(usize),
    #[error("edge list is empty, cannot infer k")]
    EmptyEdgeList,
    #[error("edge {edge} has {len} distinct vertices, expected k = {k}")]
    NonUniformEdge { edge: usize, len: usize, k: usize },
    #[error("edge {second} duplicates edge {first}")]
    DuplicateEdge { first: usize, second: usize },
    #[error("edge {edge} references vertex {vertex}, but n = {n}")]
    VertexOutOfRange { edge: usize, vertex: Vertex, n: usize },
    #[error("vertex {0} is not covered by any edge")]
    IsolatedVertex(Vertex),
}

/// A simple k-uniform hypergraph without isolated vertices.
///
/// Edges are kept in canonical order: each edge sorted ascending, the edge
/// list sorted lexicographically. Two values are equal iff they have the
/// same labeled edge set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Hypergraph {
    k: usize,
    n: usize,
    edges: Vec<Vec<Vertex>>,
}

impl Hypergraph {
    /// Validates and canonicalizes a raw edge list.
    ///
    /// Error indices refer to positions in the caller's `edges` order.
    pub fn new(k: usize, n: usize, edges: Vec<Vec<Vertex>>) -> Result<Self, HypergraphError> {
        if k < 2 {
            return Err(HypergraphError::InvalidUniformity(k));
        }
        let mut covered = vec![false; n];
        let mut seen: BTreeMap<Vec<Vertex>, usize> = BTreeMap::new();
        let mut canonical = Vec::with_capacity(edges.len());
        for (idx, mut edge) in edges.into_iter().enumerate() {
            if let Some(&vertex) = edge.iter().find(|&&v| v >= n) {
                return Err(HypergraphError::VertexOutOfRange { edge: idx, vertex, n });
            }
            edge.sort_unstable();
            edge.dedup();
            if edge.len() != k {
                return Err(HypergraphError::NonUniformEdge { edge: idx, len: edge.len(), k });
            }
            if let Some(&first) = seen.get(&edge) {
                return Err(HypergraphError::DuplicateEdge { first, second: idx });
            }
            for &v in &edge {
                covered[v] = true;
            }
            seen.insert(edge.clone(), idx);
            canonical.push(edge);
        }
        if let Some(v) = covered.iter().position(|&c| !c) {
            return Err(HypergraphError::IsolatedVertex(v));
        }
        canonical.sort_unstable();
        Ok(Hypergraph { k, n, edges: canonical })
    }

    /// Like [`Hypergraph::new`], inferring `k` from the first edge.
    pub fn from_edges(n: usize, edges: Vec<Vec<Vertex>>) -> Result<Self, HypergraphError> {
        let k = edges.first().ok_or(HypergraphError::EmptyEdgeList)?.len();
        Self::new(k, n, edges)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<Vertex>] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> Option<&[Vertex]> {
        self.edges.get(idx).map(Vec::as_slice)
    }

    pub fn into_edges(self) -> Vec<Vec<Vertex>> {
        self.edges
    }

    /// Degree of every vertex, indexed by vertex label.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for edge in &self.edges {
            for &v in edge {
                deg[v] += 1;
            }
        }
        deg
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        DegreeSequence::from_degrees(self.degrees())
    }

    pub fn max_degree(&self) -> usize {
        self.degree_sequence().max_degree()
    }

    /// Edge indices incident to each vertex.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, edge) in self.edges.iter().enumerate() {
            for &v in edge {
                inc[v].push(i);
            }
        }
        inc
    }

    /// Component label per vertex, computed on the vertex/edge incidence
    /// structure. Labels are assigned in order of the smallest vertex.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for edge in &self.edges {
            for &v in &edge[1..] {
                let root = find(&mut parent, edge[0]);
                let r = find(&mut parent, v);
                if r != root {
                    let (lo, hi) = if r < root { (r, root) } else { (root, r) };
                    parent[hi] = lo;
                }
            }
        }
        let mut labels = vec![usize::MAX; self.n];
        let mut by_root = BTreeMap::new();
        for (v, label) in labels.iter_mut().enumerate() {
            let r = find(&mut parent, v);
            let next = by_root.len();
            *label = *by_root.entry(r).or_insert(next);
        }
        (labels, by_root.len())
    }

    pub fn component_count(&self) -> usize {
        self.component_labels().1
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// `m(k-1) - n + l`.
    pub fn cyclomatic_number(&self) -> usize {
        // The cycle rank of the incidence graph; never negative.
        self.m() * (self.k - 1) + self.component_count() - self.n
    }

    /// Every pair of edges shares at most one vertex.
    pub fn is_linear(&self) -> bool {
        self.max_pairwise_intersection() <= 1
    }

    /// Largest `|e ∩ f|` over distinct edge pairs (0 when m < 2).
    pub fn max_pairwise_intersection(&self) -> usize {
        let mut best = 0;
        for (i, a) in self.edges.iter().enumerate() {
            for b in &self.edges[i + 1..] {
                best = best.max(intersection_size(a, b));
            }
        }
        best
    }

    pub fn classify(&self) -> StructureClass {
        let components = self.component_count();
        let cyclomatic = self.cyclomatic_number();
        let connected = components == 1;
        let tag = match (connected, cyclomatic) {
            (true, 0) => ClassTag::Supertree,
            (true, 1) => ClassTag::Unicyclic,
            (true, 2) => ClassTag::Bicyclic,
            (_, c) => ClassTag::Other(c),
        };
        StructureClass { connected, components, cyclomatic, tag, linear: self.is_linear() }
    }

    pub fn pendency(&self) -> Pendency {
        let deg = self.degrees();
        let pendent_vertices: Vec<Vertex> = (0..self.n).filter(|&v| deg[v] == 1).collect();
        let pendent_edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.iter().filter(|&&v| deg[v] == 1).count() == self.k - 1)
            .map(|(i, _)| i)
            .collect();
        let non_pendent_vertex_count = self.n - pendent_vertices.len();
        Pendency { pendent_vertices, pendent_edges, non_pendent_vertex_count }
    }

    /// Applies a vertex relabeling `v -> perm[v]` and re-canonicalizes.
    pub fn relabel(&self, perm: &[Vertex]) -> Hypergraph {
        assert_eq!(perm.len(), self.n, "permutation length must equal n");
        let edges = self.edges.iter().map(|e| e.iter().map(|&v| perm[v]).collect()).collect();
        Hypergraph::new(self.k, self.n, edges).expect("relabeling preserves validity")
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H(k={}, n={}, [", self.k, self.n)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{{")?;
            for (j, v) in e.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "])")
    }
}

pub(crate) fn intersection_size(a: &[Vertex], b: &[Vertex]) -> usize {
    // both sorted
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Non-increasing degree vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct DegreeSequence(Vec<usize>);

impl DegreeSequence {
    pub fn from_degrees(mut degrees: Vec<usize>) -> Self {
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        DegreeSequence(degrees)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Δ, the first entry (0 for the empty sequence).
    pub fn max_degree(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True if the sequence is `head` followed by ones.
    pub fn is_head_then_ones(&self, head: &[usize]) -> bool {
        self.0.len() >= head.len() && self.0[..head.len()] == *head && self.0[head.len()..].iter().all(|&d| d == 1)
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassTag {
    Supertree,
    Unicyclic,
    Bicyclic,
    /// Disconnected, or connected with cyclomatic number above 2.
    Other(usize),
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassTag::Supertree => write!(f, "supertree"),
            ClassTag::Unicyclic => write!(f, "unicyclic"),
            ClassTag::Bicyclic => write!(f, "bicyclic"),
            ClassTag::Other(c) => write!(f, "other({c})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StructureClass {
    pub connected: bool,
    pub components: usize,
    pub cyclomatic: usize,
    pub tag: ClassTag,
    pub linear: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pendency {
    pub pendent_vertices: Vec<Vertex>,
    /// Indices into [`Hypergraph::edges`].
    pub pendent_edges: Vec<usize>,
    pub non_pendent_vertex_count: usize,
}

/// The three connected classes with a fixed cyclomatic number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CycleClass {
    Supertree,
    Unicyclic,
    Bicyclic,
}

impl CycleClass {
    pub const ALL: [CycleClass; 3] = [CycleClass::Supertree, CycleClass::Unicyclic, CycleClass::Bicyclic];

    pub fn cyclomatic(self) -> usize {
        match self {
            CycleClass::Supertree => 0,
            CycleClass::Unicyclic => 1,
            CycleClass::Bicyclic => 2,
        }
    }

    pub fn from_cyclomatic(c: usize) -> Option<Self> {
        Self::ALL.into_iter().find(|cls| cls.cyclomatic() == c)
    }

    pub fn tag(self) -> ClassTag {
        match self {
            CycleClass::Supertree => ClassTag::Supertree,
            CycleClass::Unicyclic => ClassTag::Unicyclic,
            CycleClass::Bicyclic => ClassTag::Bicyclic,
        }
    }

    /// Vertex count of every member with `m` edges: `m(k-1) + 1 - c`.
    pub fn vertex_count(self, k: usize, m: usize) -> Option<usize> {
        (m * (k - 1) + 1).checked_sub(self.cyclomatic())
    }

    pub fn name(self) -> &'static str {
        match self {
            CycleClass::Supertree => "supertree",
            CycleClass::Unicyclic => "unicyclic",
            CycleClass::Bicyclic => "bicyclic",
        }
    }
}

impl fmt::Display for CycleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for CycleClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "supertree" | "tree" | "0" => Ok(CycleClass::Supertree),
            "unicyclic" | "1" => Ok(CycleClass::Unicyclic),
            "bicyclic" | "2" => Ok(CycleClass::Bicyclic),
            other => Err(format!("unknown class `{other}` (expected supertree, unicyclic or bicyclic)")),
        }
    }
}
