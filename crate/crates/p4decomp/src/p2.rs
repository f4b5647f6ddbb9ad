//! Balanced decomposition of a 4-regular graph into paths of length two.
//!
//! Orient the factor Eulerianly; every vertex then has exactly two outgoing
//! edges, and the path joining their heads through the vertex yields one
//! 2-edge path centered at each vertex. Every vertex ends exactly two of
//! the resulting paths, one per incoming edge.

use std::collections::BTreeMap;

use crate::factorize::{eulerian_orientation, FactorizeError};
use crate::graph::{EdgeId, Graph, Orientation, Vertex};

/// A path of length two: `end_a - center - end_b`, with its two edge ids.
/// Ends are stored with the smaller vertex first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct P2 {
    pub end_a: Vertex,
    pub center: Vertex,
    pub end_b: Vertex,
    pub edge_a: EdgeId,
    pub edge_b: EdgeId,
}

impl P2 {
    pub fn ends(&self) -> (Vertex, Vertex) {
        (self.end_a, self.end_b)
    }

    pub fn has_end(&self, v: Vertex) -> bool {
        self.end_a == v || self.end_b == v
    }

    /// The end other than `v`, which must be one of the two.
    pub fn other_end(&self, v: Vertex) -> Vertex {
        if self.end_a == v {
            self.end_b
        } else {
            debug_assert_eq!(self.end_b, v);
            self.end_a
        }
    }
}

/// A balanced decomposition of a 4-regular factor into 2-edge paths.
#[derive(Debug, Clone)]
pub struct P2Decomposition {
    pub paths: Vec<P2>,
    by_end: Vec<Vec<usize>>,
}

impl P2Decomposition {
    pub fn new(n: usize, paths: Vec<P2>) -> Self {
        let mut by_end = vec![Vec::new(); n];
        for (i, p) in paths.iter().enumerate() {
            by_end[p.end_a].push(i);
            by_end[p.end_b].push(i);
        }
        P2Decomposition { paths, by_end }
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Indices of the paths that end at `v` (exactly two in a balanced
    /// decomposition of a 4-regular factor).
    pub fn ending_at(&self, v: Vertex) -> &[usize] {
        &self.by_end[v]
    }

    /// Map from unordered end-pair to the indices of paths with those ends.
    /// A pair can carry at most two paths, since each vertex ends only two.
    pub fn trapping_ends(&self) -> BTreeMap<(Vertex, Vertex), Vec<usize>> {
        let mut map: BTreeMap<(Vertex, Vertex), Vec<usize>> = BTreeMap::new();
        for (i, p) in self.paths.iter().enumerate() {
            map.entry(p.ends()).or_default().push(i);
        }
        map
    }

    /// Reindexes every edge id through `map`, e.g. from factor-local ids
    /// back to ids in the parent graph.
    pub fn map_edges(&self, map: impl Fn(EdgeId) -> EdgeId) -> P2Decomposition {
        let paths = self
            .paths
            .iter()
            .map(|p| P2 {
                edge_a: map(p.edge_a),
                edge_b: map(p.edge_b),
                ..*p
            })
            .collect();
        P2Decomposition {
            paths,
            by_end: self.by_end.clone(),
        }
    }
}

/// Decomposes a 4-regular graph into 2-edge paths, one centered at every
/// vertex, such that each vertex is an end of exactly two paths.
pub fn balanced_p2_decomposition(f: &Graph) -> Result<P2Decomposition, FactorizeError> {
    f.validate_regular(4).map_err(|e| match e {
        crate::graph::GraphError::NotRegular {
            v,
            degree,
            expected,
        } => FactorizeError::NotRegular {
            v,
            degree,
            expected,
        },
        other => FactorizeError::Internal {
            stage: "balanced_p2_decomposition",
            detail: other.to_string(),
        },
    })?;
    let o = eulerian_orientation(f)?;
    balanced_p2_from_orientation(f, &o)
}

/// Builds the path set from an explicit Eulerian orientation: vertex `v`
/// with outgoing edges `va` and `vb` contributes the path `a - v - b`.
pub fn balanced_p2_from_orientation(
    f: &Graph,
    o: &Orientation,
) -> Result<P2Decomposition, FactorizeError> {
    let n = f.vertex_count();
    let mut paths = Vec::with_capacity(n);
    for v in 0..n {
        let mut out: Vec<(Vertex, EdgeId)> = Vec::with_capacity(2);
        for &(w, e) in f.neighbors(v) {
            if o.arc(e).tail == v {
                out.push((w, e));
            }
        }
        if out.len() != 2 {
            return Err(FactorizeError::Internal {
                stage: "balanced_p2_from_orientation",
                detail: format!("vertex {v} has out-degree {}", out.len()),
            });
        }
        let ((mut a, mut ea), (mut b, mut eb)) = (out[0], out[1]);
        if a > b {
            std::mem::swap(&mut a, &mut b);
            std::mem::swap(&mut ea, &mut eb);
        }
        paths.push(P2 {
            end_a: a,
            center: v,
            end_b: b,
            edge_a: ea,
            edge_b: eb,
        });
    }
    Ok(P2Decomposition::new(n, paths))
}
