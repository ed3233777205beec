//! Exhaustive isomorphism testing for desk-scale hypergraphs.
//!
//! Backtracking over vertex bijections. Candidates are restricted to vertices
//! with the same signature (degree plus sorted co-degree row) and every
//! partial assignment must preserve pairwise co-degrees. A complete
//! assignment is accepted only if it maps the edge set onto the edge set.

use thiserror::Error;

use crate::hypergraph::Hypergraph;

pub const DEFAULT_ISO_MAX_VERTICES: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("isomorphism search limited to n <= {limit}, got n = {n}")]
    TooLarge { n: usize, limit: usize },
}

/// Vertex-labeling-invariant fingerprint. Equal for isomorphic inputs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IsoInvariant {
    k: usize,
    n: usize,
    m: usize,
    signatures: Vec<(usize, Vec<usize>)>,
    intersections: Vec<usize>,
}

impl IsoInvariant {
    pub fn of(h: &Hypergraph) -> Self {
        let codeg = codegree_matrix(h);
        let mut signatures = vertex_signatures(&codeg);
        signatures.sort_unstable();
        let edges = h.edges();
        let mut intersections = Vec::with_capacity(edges.len() * edges.len().saturating_sub(1) / 2);
        for (i, a) in edges.iter().enumerate() {
            for b in &edges[i + 1..] {
                intersections.push(crate::hypergraph::intersection_size(a, b));
            }
        }
        intersections.sort_unstable();
        IsoInvariant { k: h.k(), n: h.n(), m: h.m(), signatures, intersections }
    }
}

fn codegree_matrix(h: &Hypergraph) -> Vec<Vec<usize>> {
    let n = h.n();
    let mut c = vec![vec![0; n]; n];
    for e in h.edges() {
        for &a in e {
            for &b in e {
                c[a][b] += 1;
            }
        }
    }
    c
}

fn vertex_signatures(codeg: &[Vec<usize>]) -> Vec<(usize, Vec<usize>)> {
    codeg
        .iter()
        .enumerate()
        .map(|(v, row)| {
            let mut others: Vec<usize> =
                row.iter().enumerate().filter(|&(u, &c)| u != v && c > 0).map(|(_, &c)| c).collect();
            others.sort_unstable();
            (row[v], others)
        })
        .collect()
}

fn edge_masks(h: &Hypergraph, map: Option<&[usize]>) -> Vec<u64> {
    let mut masks: Vec<u64> =
        h.edges().iter().map(|e| e.iter().fold(0u64, |acc, &v| acc | 1 << map.map_or(v, |m| m[v]))).collect();
    masks.sort_unstable();
    masks
}

/// Decides whether some vertex bijection maps the edges of `a` onto those of `b`.
pub fn is_isomorphic(a: &Hypergraph, b: &Hypergraph) -> Result<bool, IsoError> {
    is_isomorphic_bounded(a, b, DEFAULT_ISO_MAX_VERTICES)
}

pub fn is_isomorphic_bounded(a: &Hypergraph, b: &Hypergraph, limit: usize) -> Result<bool, IsoError> {
    let limit = limit.min(64);
    for n in [a.n(), b.n()] {
        if n > limit {
            return Err(IsoError::TooLarge { n, limit });
        }
    }
    Ok(find_isomorphism(a, b).is_some())
}

/// Returns a witness bijection `v -> perm[v]` with `a.relabel(perm) == b`.
///
/// Callers are responsible for size bounds; `n` must not exceed 64.
pub fn find_isomorphism(a: &Hypergraph, b: &Hypergraph) -> Option<Vec<usize>> {
    if a.k() != b.k() || a.n() != b.n() || a.m() != b.m() {
        return None;
    }
    if a.degree_sequence() != b.degree_sequence() {
        return None;
    }
    let n = a.n();
    let ca = codegree_matrix(a);
    let cb = codegree_matrix(b);
    let sa = vertex_signatures(&ca);
    let sb = vertex_signatures(&cb);
    {
        let (mut x, mut y) = (sa.clone(), sb.clone());
        x.sort_unstable();
        y.sort_unstable();
        if x != y {
            return None;
        }
    }
    let candidates: Vec<Vec<usize>> = (0..n).map(|v| (0..n).filter(|&w| sb[w] == sa[v]).collect()).collect();

    // Most constrained first, then grow along co-degree adjacency.
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let linked = order.iter().filter(|&&u| ca[v][u] > 0).count();
                (linked, std::cmp::Reverse(candidates[v].len()), std::cmp::Reverse(v))
            })
            .expect("unplaced vertex exists");
        placed[next] = true;
        order.push(next);
    }

    let target = edge_masks(b, None);
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(0, &order, &candidates, &ca, &cb, &mut map, &mut used, a, &target) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    depth: usize,
    order: &[usize],
    candidates: &[Vec<usize>],
    ca: &[Vec<usize>],
    cb: &[Vec<usize>],
    map: &mut [usize],
    used: &mut [bool],
    a: &Hypergraph,
    target: &[u64],
) -> bool {
    if depth == order.len() {
        return edge_masks(a, Some(map)) == target;
    }
    let v = order[depth];
    for &w in &candidates[v] {
        if used[w] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&u| ca[v][u] == cb[w][map[u]]);
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(depth + 1, order, candidates, ca, cb, map, used, a, target) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hg(n: usize, edges: &[&[usize]]) -> Hypergraph {
        Hypergraph::from_edges(n, edges.iter().map(|e| e.to_vec()).collect()).unwrap()
    }

    #[test]
    fn relabeled_copy_is_isomorphic() {
        let h = hg(7, &[&[0, 1, 2], &[0, 1, 3], &[3, 4, 5], &[5, 6, 0]]);
        let perm = [3, 6, 0, 2, 5, 1, 4];
        let g = h.relabel(&perm);
        let witness = find_isomorphism(&h, &g).unwrap();
        assert_eq!(h.relabel(&witness), g);
        assert!(is_isomorphic(&h, &g).unwrap());
    }

    #[test]
    fn same_degrees_different_structure() {
        // two degree-2 vertices in distinct edge pairs vs in the same pair
        let spread = hg(8, &[&[0, 1, 2, 3], &[0, 1, 4, 5], &[0, 2, 6, 7]]);
        let packed = hg(8, &[&[0, 1, 2, 3], &[0, 1, 2, 4], &[0, 5, 6, 7]]);
        assert_eq!(spread.degree_sequence(), packed.degree_sequence());
        assert!(!is_isomorphic(&spread, &packed).unwrap());
    }

    #[test]
    fn too_large_is_reported() {
        let edges: Vec<Vec<usize>> = (0..8).map(|i| vec![0, 2 * i + 1, 2 * i + 2]).collect();
        let h = Hypergraph::new(3, 17, edges).unwrap();
        assert_eq!(is_isomorphic(&h, &h).unwrap_err(), IsoError::TooLarge { n: 17, limit: 14 });
    }
}
