//! Labeled enumeration of connected k-uniform hypergraphs with a fixed
//! cyclomatic number.
//!
//! Candidate edges are the k-subsets of `0..n` in lexicographic order, kept
//! as bitmasks. A depth-first search picks edges in increasing index order
//! and prunes on three facts:
//!
//! * the cyclomatic number of the partial edge set (the cycle rank of its
//!   incidence graph) never decreases, so it may not exceed the target;
//! * each further edge merges at most `k` pieces into one, so the number of
//!   pieces (components plus uncovered vertices) must be reducible to 1;
//! * later candidates start at a vertex no smaller than the current one, so
//!   the smallest uncovered vertex must still be reachable.

use itertools::Itertools;

use crate::hypergraph::{CycleClass, Hypergraph};

/// All k-subsets of `0..n` as bitmasks, in lexicographic order.
pub(crate) fn candidate_edges(n: usize, k: usize) -> Vec<u64> {
    assert!(n <= 64, "bitmask enumeration supports n <= 64");
    let mut out = Vec::new();
    if k == 0 || k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().fold(0u64, |acc, &v| acc | 1 << v));
        // advance to the next combination
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub(crate) fn mask_to_edge(mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut rest = mask;
    while rest != 0 {
        out.push(rest.trailing_zeros() as usize);
        rest &= rest - 1;
    }
    out
}

#[derive(Clone)]
struct Frame {
    next: usize,
    covered: u64,
    components: Vec<u64>,
}

/// Streaming generator over one class at fixed `(k, m)`, optionally
/// restricted to a shard of the first-edge choices.
pub struct ClassStream {
    k: usize,
    n: usize,
    m: usize,
    target: usize,
    full: u64,
    candidates: Vec<u64>,
    first_vertex: Vec<u32>,
    shard: (usize, usize),
    stack: Vec<Frame>,
    chosen: Vec<usize>,
}

impl ClassStream {
    pub(crate) fn new(class: CycleClass, k: usize, m: usize, n: usize, shard: usize, shards: usize) -> Self {
        let candidates = candidate_edges(n, k);
        let first_vertex = candidates.iter().map(|c| c.trailing_zeros()).collect();
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let stack = if m == 0 { Vec::new() } else { vec![Frame { next: 0, covered: 0, components: Vec::new() }] };
        ClassStream {
            k,
            n,
            m,
            target: class.cyclomatic(),
            full,
            candidates,
            first_vertex,
            shard: (shard, shards.max(1)),
            stack,
            chosen: Vec::with_capacity(m),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Next member as a list of candidate-edge bitmasks.
    fn next_masks(&mut self) -> Option<Vec<u64>> {
        loop {
            let depth = self.stack.len().checked_sub(1)?;
            let top = self.stack.last_mut().expect("non-empty stack");
            let j = top.next;
            let uncovered = self.full & !top.covered;
            let lowest = if uncovered == 0 { u32::MAX } else { uncovered.trailing_zeros() };
            if j >= self.candidates.len() || self.first_vertex[j] > lowest {
                self.stack.pop();
                self.chosen.pop();
                continue;
            }
            top.next += 1;
            if depth == 0 && j % self.shard.1 != self.shard.0 {
                continue;
            }

            let edge = self.candidates[j];
            let mut merged = edge;
            let mut components = Vec::with_capacity(top.components.len() + 1);
            for &c in &top.components {
                if c & edge != 0 {
                    merged |= c;
                } else {
                    components.push(c);
                }
            }
            components.push(merged);
            let covered = top.covered | edge;
            let chosen = depth + 1;
            let covered_count = covered.count_ones() as usize;

            let partial_cyclomatic = chosen * (self.k - 1) + components.len() - covered_count;
            if partial_cyclomatic > self.target {
                continue;
            }
            let pieces = components.len() + (self.n - covered_count);
            let remaining = self.m - chosen;
            if pieces > 1 + remaining * (self.k - 1) {
                continue;
            }

            self.chosen.push(j);
            if chosen == self.m {
                let masks = self.chosen.iter().map(|&i| self.candidates[i]).collect();
                self.chosen.pop();
                return Some(masks);
            }
            self.stack.push(Frame { next: j + 1, covered, components });
        }
    }
}

impl Iterator for ClassStream {
    type Item = Hypergraph;

    fn next(&mut self) -> Option<Hypergraph> {
        let masks = self.next_masks()?;
        let edges = masks.into_iter().map(mask_to_edge).collect();
        Some(Hypergraph::new(self.k, self.n, edges).expect("generator yields valid hypergraphs"))
    }
}

/// Reference generator: every m-subset of the possible edges, filtered by
/// the core classifier with no pruning. Only for cross-checking.
pub fn naive_class_members(class: CycleClass, k: usize, m: usize) -> Vec<Hypergraph> {
    let Some(n) = class.vertex_count(k, m) else {
        return Vec::new();
    };
    let all_edges: Vec<Vec<usize>> = (0..n).combinations(k).collect();
    all_edges
        .iter()
        .combinations(m)
        .filter_map(|subset| Hypergraph::new(k, n, subset.into_iter().cloned().collect()).ok())
        .filter(|h| h.classify().tag == class.tag())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn candidates_are_lexicographic() {
        let c = candidate_edges(5, 3);
        assert_eq!(c.len(), binomial(5, 3));
        let edges: Vec<Vec<usize>> = c.iter().map(|&m| mask_to_edge(m)).collect();
        assert_eq!(edges[0], vec![0, 1, 2]);
        assert_eq!(edges[1], vec![0, 1, 3]);
        assert_eq!(edges.last().unwrap(), &vec![2, 3, 4]);
        let mut sorted = edges.clone();
        sorted.sort();
        assert_eq!(sorted, edges);
    }

    #[test]
    fn small_counts() {
        let count = |class, k, m| {
            let n = CycleClass::vertex_count(class, k, m).unwrap();
            ClassStream::new(class, k, m, n, 0, 1).count()
        };
        assert_eq!(count(CycleClass::Supertree, 3, 2), 15);
        assert_eq!(count(CycleClass::Unicyclic, 3, 2), 6);
        assert_eq!(count(CycleClass::Bicyclic, 3, 2), 0);
    }

    #[test]
    fn pruned_matches_naive_sequence() {
        for class in CycleClass::ALL {
            for (k, m) in [(3, 2), (3, 3), (4, 2)] {
                let n = class.vertex_count(k, m).unwrap();
                let fast: Vec<Hypergraph> = ClassStream::new(class, k, m, n, 0, 1).collect();
                assert_eq!(fast, naive_class_members(class, k, m), "{class} k={k} m={m}");
            }
        }
    }
}
