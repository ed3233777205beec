use std::collections::BTreeSet;

use thiserror::Error;

use crate::hypergraph::{Hypergraph, HypergraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("edge {{{0}, {1}}} exceeds vertex count {2}")]
    VertexOutOfRange(usize, usize, usize),
}

/// A simple ordinary graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::Loop(a));
            }
            if a >= n || b >= n {
                return Err(GraphError::VertexOutOfRange(a, b, n));
            }
            let key = (a.min(b), a.max(b));
            if !seen.insert(key) {
                return Err(GraphError::DuplicateEdge(key.0, key.1));
            }
            out.push(key);
        }
        Ok(Graph { n, edges: out })
    }

    pub fn star(leaves: usize) -> Self {
        Graph::new(leaves + 1, (1..=leaves).map(|v| (0, v)).collect()).expect("star is simple")
    }

    pub fn path(vertices: usize) -> Self {
        Graph::new(vertices, (1..vertices).map(|v| (v - 1, v)).collect()).expect("path is simple")
    }

    pub fn cycle(vertices: usize) -> Self {
        assert!(vertices >= 3, "a simple cycle needs at least 3 vertices");
        let mut edges: Vec<_> = (1..vertices).map(|v| (v - 1, v)).collect();
        edges.push((vertices - 1, 0));
        Graph::new(vertices, edges).expect("cycle is simple")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut count = self.n;
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                count -= 1;
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// `|E| - |V| + components`.
    pub fn cyclomatic_number(&self) -> usize {
        self.edges.len() + self.component_count() - self.n
    }
}

/// The k-th power: every graph edge is padded with `k - 2` fresh vertices.
///
/// Original vertices keep their labels; padding vertices are numbered from
/// `n` upward, edge by edge. Fails if `G` has an isolated vertex.
pub fn power(g: &Graph, k: usize) -> Result<Hypergraph, HypergraphError> {
    if k < 2 {
        return Err(HypergraphError::InvalidUniformity(k));
    }
    let mut next = g.n();
    let edges = g
        .edges()
        .iter()
        .map(|&(a, b)| {
            let mut e = vec![a, b];
            e.extend(next..next + (k - 2));
            next += k - 2;
            e
        })
        .collect();
    Hypergraph::new(k, next, edges)
}
