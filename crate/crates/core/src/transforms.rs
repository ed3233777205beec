//! Edge-moving and edge-releasing, plus checks of the `h` monotonicity and
//! class-closure properties these operations satisfy.

use serde::Serialize;
use thiserror::Error;

use crate::entropy::h_value;
use crate::hypergraph::{ClassTag, Hypergraph, HypergraphError, Vertex};

/// Margin a strict inequality on `h` must clear.
pub const STRICT_MARGIN: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("edge index {0} out of range")]
    EdgeOutOfRange(usize),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(Vertex),
    #[error("edge {0} listed more than once")]
    RepeatedEdge(usize),
    #[error("move list is empty")]
    EmptyMove,
    #[error("target vertex {target} already lies in edge {edge}")]
    TargetInsideEdge { edge: usize, target: Vertex },
    #[error("source vertex {vertex} does not lie in edge {edge}")]
    SourceNotInEdge { edge: usize, vertex: Vertex },
    #[error("moved edge {edge} coincides with another edge")]
    MultipleEdgeCreated { edge: usize },
    #[error("vertex {0} would be left isolated")]
    IsolatedVertexCreated(Vertex),
    #[error("edge-releasing requires a linear hypergraph")]
    NotLinear,
    #[error("anchor {anchor} does not lie in edge {edge}")]
    AnchorNotInEdge { edge: usize, anchor: Vertex },
    #[error("edge {0} is pendent; releasing it moves nothing")]
    EdgeIsPendent(usize),
    #[error("precondition not met: {0}")]
    PreconditionMismatch(String),
    #[error("result is disconnected; closure does not apply")]
    Disconnected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EdgeMove {
    pub edge: usize,
    pub source: Vertex,
}

/// Replace each listed edge `e` by `(e \ {source}) ∪ {target}`.
///
/// Edge indices refer to the canonical edge order of the input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MoveSpec {
    pub target: Vertex,
    pub moves: Vec<EdgeMove>,
}

impl MoveSpec {
    pub fn single(edge: usize, source: Vertex, target: Vertex) -> Self {
        MoveSpec { target, moves: vec![EdgeMove { edge, source }] }
    }

    /// The move list of an edge-releasing operation on `edge` at `anchor`:
    /// every edge meeting `edge` but avoiding `anchor` moves from its
    /// intersection vertex onto `anchor`.
    pub fn release(h: &Hypergraph, edge: usize, anchor: Vertex) -> Result<Self, TransformError> {
        let e = h.edge(edge).ok_or(TransformError::EdgeOutOfRange(edge))?;
        if !h.is_linear() {
            return Err(TransformError::NotLinear);
        }
        if !e.contains(&anchor) {
            return Err(TransformError::AnchorNotInEdge { edge, anchor });
        }
        if h.pendency().pendent_edges.contains(&edge) {
            return Err(TransformError::EdgeIsPendent(edge));
        }
        let mut moves = Vec::new();
        for (i, f) in h.edges().iter().enumerate() {
            if i == edge || f.contains(&anchor) {
                continue;
            }
            // linear: at most one common vertex
            if let Some(&v) = f.iter().find(|v| e.contains(v)) {
                moves.push(EdgeMove { edge: i, source: v });
            }
        }
        if moves.is_empty() {
            // only possible for an isolated single edge, where all k vertices are pendent
            return Err(TransformError::EdgeIsPendent(edge));
        }
        Ok(MoveSpec { target: anchor, moves })
    }
}

pub fn move_edges(h: &Hypergraph, spec: &MoveSpec) -> Result<Hypergraph, TransformError> {
    if spec.moves.is_empty() {
        return Err(TransformError::EmptyMove);
    }
    if spec.target >= h.n() {
        return Err(TransformError::VertexOutOfRange(spec.target));
    }
    let mut edges = h.edges().to_vec();
    let mut touched = vec![false; edges.len()];
    for mv in &spec.moves {
        let e = edges.get_mut(mv.edge).ok_or(TransformError::EdgeOutOfRange(mv.edge))?;
        if std::mem::replace(&mut touched[mv.edge], true) {
            return Err(TransformError::RepeatedEdge(mv.edge));
        }
        if e.contains(&spec.target) {
            return Err(TransformError::TargetInsideEdge { edge: mv.edge, target: spec.target });
        }
        let pos = e
            .iter()
            .position(|&v| v == mv.source)
            .ok_or(TransformError::SourceNotInEdge { edge: mv.edge, vertex: mv.source })?;
        e[pos] = spec.target;
    }
    Hypergraph::new(h.k(), h.n(), edges).map_err(|err| match err {
        HypergraphError::DuplicateEdge { first, second } => {
            let edge = if touched[second] { second } else { first };
            TransformError::MultipleEdgeCreated { edge }
        }
        HypergraphError::IsolatedVertex(v) => TransformError::IsolatedVertexCreated(v),
        other => unreachable!("moves preserve uniformity and range: {other}"),
    })
}

pub fn edge_release(h: &Hypergraph, edge: usize, anchor: Vertex) -> Result<Hypergraph, TransformError> {
    let spec = MoveSpec::release(h, edge, anchor)?;
    move_edges(h, &spec)
}

/// The three monotonicity statements about `h` under moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MonotonicityClaim {
    /// Move `edge` from a vertex of degree `d` onto one of degree at most
    /// `d - 2`: `h` strictly decreases.
    Spread { edge: usize, source: Vertex, target: Vertex },
    /// Edge-releasing on a non-pendent edge of a linear hypergraph: `h`
    /// strictly increases.
    Release { edge: usize, anchor: Vertex },
    /// Move `edge` from a vertex onto one of at least the same degree: `h`
    /// strictly increases.
    Concentrate { edge: usize, source: Vertex, target: Vertex },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonotonicityVerdict {
    pub h_before: f64,
    pub h_after: f64,
    /// Signed gap in the claimed direction; positive means the claim holds.
    pub margin: f64,
    pub holds: bool,
}

/// Checks that `after` is the claimed transform of `before` and that the
/// claimed strict inequality on `h` holds with margin above [`STRICT_MARGIN`].
pub fn check_monotonicity(
    before: &Hypergraph,
    after: &Hypergraph,
    claim: MonotonicityClaim,
) -> Result<MonotonicityVerdict, TransformError> {
    let deg = before.degrees();
    let degree = |v: Vertex| deg.get(v).copied().ok_or(TransformError::VertexOutOfRange(v));
    let (expected, increases) = match claim {
        MonotonicityClaim::Spread { edge, source, target } => {
            let (ds, dt) = (degree(source)?, degree(target)?);
            if ds < dt + 2 {
                return Err(TransformError::PreconditionMismatch(format!(
                    "source degree {ds} is not at least target degree {dt} + 2"
                )));
            }
            (move_edges(before, &MoveSpec::single(edge, source, target))?, false)
        }
        MonotonicityClaim::Concentrate { edge, source, target } => {
            let (ds, dt) = (degree(source)?, degree(target)?);
            if dt < ds {
                return Err(TransformError::PreconditionMismatch(format!(
                    "target degree {dt} is below source degree {ds}"
                )));
            }
            (move_edges(before, &MoveSpec::single(edge, source, target))?, true)
        }
        MonotonicityClaim::Release { edge, anchor } => (edge_release(before, edge, anchor)?, true),
    };
    if &expected != after {
        return Err(TransformError::PreconditionMismatch(
            "second hypergraph is not the result of the claimed operation".into(),
        ));
    }
    let (h_before, h_after) = (h_value(before), h_value(after));
    let margin = if increases { h_after - h_before } else { h_before - h_after };
    Ok(MonotonicityVerdict { h_before, h_after, margin, holds: margin > STRICT_MARGIN })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClosureVerdict {
    pub before: ClassTag,
    pub after: ClassTag,
    pub preserved: bool,
}

/// For a connected transform result, the class tag must be unchanged.
pub fn class_closure_check(before: &Hypergraph, after: &Hypergraph) -> Result<ClosureVerdict, TransformError> {
    let a = after.classify();
    if !a.connected {
        return Err(TransformError::Disconnected);
    }
    let b = before.classify().tag;
    Ok(ClosureVerdict { before: b, after: a.tag, preserved: b == a.tag })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{family_member, hyperstar, is_isomorphic, loose_path, FamilyTag};

    fn hg(n: usize, edges: &[&[usize]]) -> Hypergraph {
        Hypergraph::from_edges(n, edges.iter().map(|e| e.to_vec()).collect()).unwrap()
    }

    fn edge_index(h: &Hypergraph, e: &[usize]) -> usize {
        h.edges().iter().position(|f| f == e).unwrap()
    }

    #[test]
    fn spread_move_on_hii_decreases_h() {
        // center 0 (deg 3), 1 (deg 2), non-cycle edge {0,4,5}
        let h = family_member(FamilyTag::HII, 3, 3).unwrap();
        let e = edge_index(&h, &[0, 4, 5]);
        let target = 2; // pendent vertex of the cycle
        let after = move_edges(&h, &MoveSpec::single(e, 0, target)).unwrap();
        assert_eq!(after.degree_sequence().as_slice(), &[2, 2, 2, 1, 1, 1]);
        let v = check_monotonicity(&h, &after, MonotonicityClaim::Spread { edge: e, source: 0, target }).unwrap();
        assert!(v.holds);
        assert!((v.h_before - 6.754887502163468).abs() < 1e-12);
        assert!((v.h_after - 6.0).abs() < 1e-12);
    }

    #[test]
    fn move_errors() {
        // {0,1,3}, {0,2,4}
        let h = hyperstar(2, 3);
        assert!(matches!(move_edges(&h, &MoveSpec::single(0, 1, 0)), Err(TransformError::TargetInsideEdge { .. })));
        assert!(matches!(move_edges(&h, &MoveSpec::single(1, 2, 4)), Err(TransformError::TargetInsideEdge { .. })));
        assert!(matches!(move_edges(&h, &MoveSpec::single(0, 4, 2)), Err(TransformError::SourceNotInEdge { .. })));
        assert_eq!(move_edges(&h, &MoveSpec::single(0, 1, 2)).unwrap_err(), TransformError::IsolatedVertexCreated(1));
        let two = hg(4, &[&[0, 1, 2], &[0, 1, 3]]);
        let three = hg(5, &[&[0, 1, 2], &[0, 1, 3], &[2, 3, 4]]);
        assert_eq!(
            move_edges(&three, &MoveSpec::single(2, 4, 0)).map(|_| ()),
            Err(TransformError::IsolatedVertexCreated(4))
        );
        assert!(matches!(
            move_edges(&two, &MoveSpec::single(0, 2, 3)),
            Err(TransformError::MultipleEdgeCreated { .. })
        ));
    }

    #[test]
    fn multiple_edge_is_rejected() {
        let h = hg(5, &[&[0, 1, 2], &[0, 1, 3], &[2, 3, 4], &[0, 3, 4]]);
        // {0,1,3} -> {0,1,2} via 3 -> 2
        let e = edge_index(&h, &[0, 1, 3]);
        assert_eq!(
            move_edges(&h, &MoveSpec::single(e, 3, 2)).unwrap_err(),
            TransformError::MultipleEdgeCreated { edge: e }
        );
    }

    #[test]
    fn equal_degree_move_keeps_h() {
        let h = hg(5, &[&[0, 1, 2], &[2, 3, 4]]);
        let after = move_edges(&h, &MoveSpec::single(1, 2, 0)).unwrap();
        assert_eq!(after.edges(), &[vec![0, 1, 2], vec![0, 3, 4]]);
        assert_eq!(after.degree_sequence(), h.degree_sequence());
        assert_eq!(h_value(&after), h_value(&h));
    }

    #[test]
    fn release_on_loose_path_gives_hyperstar() {
        let path = loose_path(3, 3); // {0,1,4},{1,2,5},{2,3,6}
        let middle = edge_index(&path, &[1, 2, 5]);
        let after = edge_release(&path, middle, 1).unwrap();
        assert!(is_isomorphic(&after, &hyperstar(3, 3)).unwrap());
        let v = check_monotonicity(&path, &after, MonotonicityClaim::Release { edge: middle, anchor: 1 }).unwrap();
        assert!(v.holds);
        assert!((v.h_before - 4.0).abs() < 1e-12);
        assert!((v.h_after - 3.0 * 3f64.log2()).abs() < 1e-12);

        let other = edge_release(&path, middle, 2).unwrap();
        assert!(is_isomorphic(&after, &other).unwrap());
    }

    #[test]
    fn release_errors() {
        let star = hyperstar(3, 3);
        for e in 0..3 {
            assert_eq!(edge_release(&star, e, 0).unwrap_err(), TransformError::EdgeIsPendent(e));
        }
        let nonlinear = hg(4, &[&[0, 1, 2], &[0, 1, 3]]);
        assert_eq!(edge_release(&nonlinear, 0, 0).unwrap_err(), TransformError::NotLinear);
        let path = loose_path(3, 3);
        assert!(matches!(edge_release(&path, 1, 0), Err(TransformError::AnchorNotInEdge { .. })));
    }

    #[test]
    fn concentrate_move_increases_h() {
        // hyperstar on center 0 plus a tail edge hanging off vertex 5
        let h = hg(9, &[&[0, 1, 2], &[0, 3, 4], &[0, 5, 6], &[5, 7, 8]]);
        let tail = edge_index(&h, &[5, 7, 8]);
        let after = move_edges(&h, &MoveSpec::single(tail, 5, 0)).unwrap();
        let v = check_monotonicity(&h, &after, MonotonicityClaim::Concentrate { edge: tail, source: 5, target: 0 })
            .unwrap();
        assert!(v.holds);
        assert!((v.h_before - (3.0 * 3f64.log2() + 2.0)).abs() < 1e-12);
        assert!((v.h_after - 8.0).abs() < 1e-12);
    }

    #[test]
    fn precondition_mismatch_is_reported() {
        let h = hg(9, &[&[0, 1, 2], &[0, 3, 4], &[0, 5, 6], &[5, 7, 8]]);
        let tail = edge_index(&h, &[5, 7, 8]);
        let after = move_edges(&h, &MoveSpec::single(tail, 5, 0)).unwrap();
        assert!(matches!(
            check_monotonicity(&h, &after, MonotonicityClaim::Spread { edge: tail, source: 5, target: 0 }),
            Err(TransformError::PreconditionMismatch(_))
        ));
    }

    #[test]
    fn closure_examples() {
        let uni = family_member(FamilyTag::HII, 4, 3).unwrap();
        // move the free edge {0,6,7} off the center onto pendent vertex 2
        let e = edge_index(&uni, &[0, 6, 7]);
        let after = move_edges(&uni, &MoveSpec::single(e, 0, 2)).unwrap();
        assert!(class_closure_check(&uni, &after).unwrap().preserved);

        let path = loose_path(4, 3);
        let after = edge_release(&path, 1, 1).unwrap();
        let v = class_closure_check(&path, &after).unwrap();
        assert_eq!((v.before, v.after, v.preserved), (ClassTag::Supertree, ClassTag::Supertree, true));

        // loose path: moving the middle edge off 4 onto 0 strands {4,5,6}
        let p = hg(7, &[&[0, 1, 2], &[2, 3, 4], &[4, 5, 6]]);
        let moved = move_edges(&p, &MoveSpec::single(1, 4, 0)).unwrap();
        assert!(!moved.is_connected());
        assert_eq!(class_closure_check(&p, &moved).unwrap_err(), TransformError::Disconnected);
    }
}
