//! Classification of a 4-regular factor's edges against the end-pairs of a
//! balanced 2-edge-path decomposition of the complementary factor.
//!
//! An edge `uv` of the factor is *trapped* when some 2-edge path has ends
//! exactly `{u, v}`. Because every vertex ends exactly two of those paths,
//! trapped edges form vertex-disjoint paths and cycles, and this module
//! splits them into the substructures that the orientation stage treats
//! specially: two-edge paths whose endpoints are also joined end-to-end,
//! triangles, 4-cycles with one or both diagonals present, and runs of
//! triangles sharing trapped edges.

use std::collections::BTreeMap;

use crate::graph::{EdgeId, Graph, Vertex};
use crate::p2::P2Decomposition;

#[derive(Debug, thiserror::Error)]
pub enum TrappedError {
    #[error("factor is not 4-regular: vertex {v} has factor degree {degree}")]
    FactorNotRegular { v: Vertex, degree: usize },
    #[error("path decomposition is not balanced: vertex {v} ends {count} paths")]
    NotBalanced { v: Vertex, count: usize },
    #[error("path decomposition reuses factor edge {e}")]
    FactorOverlap { e: EdgeId },
    #[error("internal error in {stage}: {detail}")]
    Internal { stage: &'static str, detail: String },
}

/// An induced 2-edge path `u - v - w` whose edges are both trapped and whose
/// endpoints `{u, w}` are additionally the ends of some 2-edge path, even
/// though `uw` is not a factor edge.
#[derive(Debug, Clone, Copy)]
pub struct TrappedP2 {
    pub u: Vertex,
    pub v: Vertex,
    pub w: Vertex,
    pub e_uv: EdgeId,
    pub e_vw: EdgeId,
    /// Index of a 2-edge path with ends `{u, w}`.
    pub witness: usize,
}

/// A triangle in the factor with all three edges trapped.
#[derive(Debug, Clone, Copy)]
pub struct TrappedTriangle {
    pub vertices: [Vertex; 3],
    pub edges: [EdgeId; 3],
}

/// A K4 in the factor whose four trapped edges form the cycle
/// `cycle[0] cycle[1] cycle[2] cycle[3]`; both diagonals are factor edges.
/// `diagonals[0]` joins `cycle[0]` and `cycle[2]`.
#[derive(Debug, Clone, Copy)]
pub struct TrappedK4 {
    pub cycle: [Vertex; 4],
    pub cycle_edges: [EdgeId; 4],
    pub diagonals: [EdgeId; 2],
}

/// A trapped 4-cycle `cycle[0] .. cycle[3]` with exactly one diagonal in the
/// factor, joining `cycle[0]` and `cycle[2]`: two triangles sharing that
/// diagonal as a common non-trapped edge.
#[derive(Debug, Clone, Copy)]
pub struct Bowtie {
    pub cycle: [Vertex; 4],
    pub cycle_edges: [EdgeId; 4],
    pub diagonal: EdgeId,
}

/// A maximal run of triangles, each formed by two consecutive trapped edges
/// plus a factor chord, with consecutive triangles sharing a trapped edge.
#[derive(Debug, Clone)]
pub struct Chain {
    /// Open run: spine vertices `a_0 .. a_{k+1}`; the run's triangles are
    /// `(a_{i-1}, a_i, a_{i+1})` for `i = 1..=k`. When the run covers all
    /// but one step of a trapped cycle, `a_0 == a_{k+1}`.
    /// Closed run: the trapped cycle `c_0 .. c_{k-1}` in cyclic order.
    pub spine: Vec<Vertex>,
    /// Trapped edges along the spine: `k+1` for open runs, `k` for closed.
    pub spine_edges: Vec<EdgeId>,
    /// Chord of each triangle: `chords[i]` joins `spine[i]` and `spine[i+2]`
    /// (indices mod the cycle length for closed runs).
    pub chords: Vec<EdgeId>,
    pub closed: bool,
}

impl Chain {
    /// Number of triangles in the run.
    pub fn triangle_count(&self) -> usize {
        self.chords.len()
    }
}

/// A triangle with exactly two trapped edges, both incident to `apex`.
#[derive(Debug, Clone, Copy)]
pub struct QuasiTriangle {
    pub apex: Vertex,
    pub arms: [Vertex; 2],
    pub trapped_edges: [EdgeId; 2],
    pub chord: EdgeId,
}

/// Full classification of a factor's trapped edges.
#[derive(Debug, Clone)]
pub struct TrappedAnalysis {
    f2_mask: Vec<bool>,
    trapped_by: Vec<Vec<usize>>,
    pub f2: Vec<EdgeId>,
    pub free_edges: Vec<EdgeId>,
    pub trapped_p2s: Vec<TrappedP2>,
    pub trapped_triangles: Vec<TrappedTriangle>,
    pub trapped_k4s: Vec<TrappedK4>,
    pub bowties: Vec<Bowtie>,
    pub chains: Vec<Chain>,
}

impl TrappedAnalysis {
    pub fn is_factor_edge(&self, e: EdgeId) -> bool {
        self.f2_mask[e]
    }

    pub fn is_trapped(&self, e: EdgeId) -> bool {
        !self.trapped_by[e].is_empty()
    }

    pub fn is_double_trapped(&self, e: EdgeId) -> bool {
        self.trapped_by[e].len() == 2
    }

    /// Indices of the 2-edge paths whose ends are exactly the endpoints
    /// of `e` (at most two).
    pub fn trappers(&self, e: EdgeId) -> &[usize] {
        &self.trapped_by[e]
    }

    pub fn trapped_edges(&self) -> Vec<EdgeId> {
        (0..self.trapped_by.len())
            .filter(|&e| !self.trapped_by[e].is_empty())
            .collect()
    }

    /// Enumerates every triangle of the factor with exactly two trapped
    /// edges. Each such triangle has a unique apex (the common vertex of
    /// its trapped edges), so the listing is duplicate-free.
    pub fn quasi_triangles(&self, g: &Graph) -> Vec<QuasiTriangle> {
        let mut per_vertex: Vec<Vec<(Vertex, EdgeId)>> = vec![Vec::new(); g.vertex_count()];
        for e in 0..self.trapped_by.len() {
            if self.trapped_by[e].is_empty() {
                continue;
            }
            let (u, v) = g.endpoints(e);
            per_vertex[u].push((v, e));
            per_vertex[v].push((u, e));
        }
        let mut out = Vec::new();
        for (apex, arms) in per_vertex.iter().enumerate() {
            let &[(a, ea), (b, eb)] = arms.as_slice() else {
                continue;
            };
            debug_assert_ne!(a, b);
            if let Some(chord) = g.edge_id(a, b) {
                if self.f2_mask[chord] && self.trapped_by[chord].is_empty() {
                    out.push(QuasiTriangle {
                        apex,
                        arms: [a, b],
                        trapped_edges: [ea, eb],
                        chord,
                    });
                }
            }
        }
        out
    }
}

/// Classifies the trapped edges of the factor given by `f2` against the
/// balanced 2-edge-path decomposition `d` of the complementary factor.
pub fn analyze(
    g: &Graph,
    f2: &[EdgeId],
    d: &P2Decomposition,
) -> Result<TrappedAnalysis, TrappedError> {
    let n = g.vertex_count();
    let mut f2_mask = vec![false; g.edge_count()];
    let mut f2_degree = vec![0usize; n];
    for &e in f2 {
        f2_mask[e] = true;
        let (u, v) = g.endpoints(e);
        f2_degree[u] += 1;
        f2_degree[v] += 1;
    }
    for (v, &degree) in f2_degree.iter().enumerate() {
        if degree != 4 {
            return Err(TrappedError::FactorNotRegular { v, degree });
        }
    }
    for v in 0..n {
        let count = d.ending_at(v).len();
        if count != 2 {
            return Err(TrappedError::NotBalanced { v, count });
        }
    }
    for p in &d.paths {
        for e in [p.edge_a, p.edge_b] {
            if f2_mask[e] {
                return Err(TrappedError::FactorOverlap { e });
            }
        }
    }

    // Trapped edges and the trapped subgraph, which has maximum degree 2.
    let mut trapped_by: Vec<Vec<usize>> = vec![Vec::new(); g.edge_count()];
    let ends = d.trapping_ends();
    for &e in f2 {
        if let Some(pids) = ends.get(&g.endpoints(e)) {
            trapped_by[e] = pids.clone();
        }
    }
    let mut t_adj: Vec<Vec<(Vertex, EdgeId)>> = vec![Vec::new(); n];
    for &e in f2 {
        if trapped_by[e].is_empty() {
            continue;
        }
        let (u, v) = g.endpoints(e);
        t_adj[u].push((v, e));
        t_adj[v].push((u, e));
    }
    for (v, adj) in t_adj.iter().enumerate() {
        if adj.len() > 2 {
            return Err(TrappedError::Internal {
                stage: "analyze",
                detail: format!("vertex {v} has {} trapped edges", adj.len()),
            });
        }
    }

    let mut analysis = TrappedAnalysis {
        f2_mask,
        trapped_by,
        f2: {
            let mut s = f2.to_vec();
            s.sort_unstable();
            s
        },
        free_edges: Vec::new(),
        trapped_p2s: Vec::new(),
        trapped_triangles: Vec::new(),
        trapped_k4s: Vec::new(),
        bowties: Vec::new(),
        chains: Vec::new(),
    };
    let mut covered = vec![false; g.edge_count()];

    for comp in trapped_components(n, &t_adj) {
        classify_component(g, &ends, &comp, &mut analysis, &mut covered)?;
    }

    for e in analysis.trapped_edges() {
        if !covered[e] {
            analysis.free_edges.push(e);
        }
    }
    Ok(analysis)
}

/// A connected piece of the trapped subgraph.
struct TrappedComponent {
    /// Vertices in walk order; for cycles the walk closes back to the start.
    verts: Vec<Vertex>,
    /// `edges[i]` joins `verts[i]` and `verts[i+1]` (mod length for cycles).
    edges: Vec<EdgeId>,
    cycle: bool,
}

fn trapped_components(n: usize, t_adj: &[Vec<(Vertex, EdgeId)>]) -> Vec<TrappedComponent> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    // Path components first, started from their degree-1 endpoints.
    for v0 in 0..n {
        if seen[v0] || t_adj[v0].len() != 1 {
            continue;
        }
        let mut verts = vec![v0];
        let mut edges = Vec::new();
        seen[v0] = true;
        let (mut prev_e, mut cur) = {
            let (w, e) = t_adj[v0][0];
            (e, w)
        };
        edges.push(prev_e);
        loop {
            seen[cur] = true;
            verts.push(cur);
            match t_adj[cur].iter().find(|&&(_, e)| e != prev_e) {
                Some(&(w, e)) => {
                    edges.push(e);
                    prev_e = e;
                    cur = w;
                }
                None => break,
            }
        }
        out.push(TrappedComponent {
            verts,
            edges,
            cycle: false,
        });
    }
    // Remaining vertices with trapped edges lie on cycles.
    for v0 in 0..n {
        if seen[v0] || t_adj[v0].is_empty() {
            continue;
        }
        let mut verts = vec![v0];
        let mut edges = Vec::new();
        seen[v0] = true;
        let (mut prev_e, mut cur) = {
            let (w, e) = t_adj[v0][0];
            (e, w)
        };
        edges.push(prev_e);
        while cur != v0 {
            seen[cur] = true;
            verts.push(cur);
            let &(w, e) = t_adj[cur]
                .iter()
                .find(|&&(_, e)| e != prev_e)
                .expect("cycle vertex has a second trapped edge");
            edges.push(e);
            prev_e = e;
            cur = w;
        }
        out.push(TrappedComponent {
            verts,
            edges,
            cycle: true,
        });
    }
    out
}

fn classify_component(
    g: &Graph,
    ends: &BTreeMap<(Vertex, Vertex), Vec<usize>>,
    comp: &TrappedComponent,
    analysis: &mut TrappedAnalysis,
    covered: &mut [bool],
) -> Result<(), TrappedError> {
    let verts = &comp.verts;
    let edges = &comp.edges;
    let factor_edge = |a: Vertex, b: Vertex| -> Option<EdgeId> {
        g.edge_id(a, b).filter(|&e| analysis.f2_mask[e])
    };

    if comp.cycle {
        let m = verts.len();
        match m {
            3 => {
                for &e in edges {
                    covered[e] = true;
                }
                analysis.trapped_triangles.push(TrappedTriangle {
                    vertices: [verts[0], verts[1], verts[2]],
                    edges: [edges[0], edges[1], edges[2]],
                });
                return Ok(());
            }
            4 => {
                let d02 = factor_edge(verts[0], verts[2]);
                let d13 = factor_edge(verts[1], verts[3]);
                let cycle = [verts[0], verts[1], verts[2], verts[3]];
                let cycle_edges = [edges[0], edges[1], edges[2], edges[3]];
                match (d02, d13) {
                    (Some(a), Some(b)) => {
                        for &e in edges {
                            covered[e] = true;
                        }
                        analysis.trapped_k4s.push(TrappedK4 {
                            cycle,
                            cycle_edges,
                            diagonals: [a, b],
                        });
                    }
                    (Some(diag), None) => {
                        for &e in edges {
                            covered[e] = true;
                        }
                        analysis.bowties.push(Bowtie {
                            cycle,
                            cycle_edges,
                            diagonal: diag,
                        });
                    }
                    (None, Some(diag)) => {
                        for &e in edges {
                            covered[e] = true;
                        }
                        // rotate so the diagonal joins positions 0 and 2
                        analysis.bowties.push(Bowtie {
                            cycle: [verts[1], verts[2], verts[3], verts[0]],
                            cycle_edges: [edges[1], edges[2], edges[3], edges[0]],
                            diagonal: diag,
                        });
                    }
                    (None, None) => {}
                }
                return Ok(());
            }
            _ => {
                // Triangle positions around the cycle; maximal cyclic runs.
                let tri: Vec<bool> = (0..m)
                    .map(|p| factor_edge(verts[(p + m - 1) % m], verts[(p + 1) % m]).is_some())
                    .collect();
                if tri.iter().all(|&t| t) {
                    for &e in edges {
                        covered[e] = true;
                    }
                    let chords = (0..m)
                        .map(|j| {
                            factor_edge(verts[j], verts[(j + 2) % m]).ok_or_else(|| {
                                TrappedError::Internal {
                                    stage: "classify_component",
                                    detail: "closed run lost a chord".into(),
                                }
                            })
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    analysis.chains.push(Chain {
                        spine: verts.clone(),
                        spine_edges: edges.clone(),
                        chords,
                        closed: true,
                    });
                    return Ok(());
                }
                for p in 0..m {
                    if !tri[p] || tri[(p + m - 1) % m] {
                        continue; // not the start of a run
                    }
                    let mut k = 1;
                    while tri[(p + k) % m] {
                        k += 1;
                    }
                    push_open_chain(
                        g,
                        analysis,
                        covered,
                        |i| verts[(p + m - 1 + i) % m],
                        |i| edges[(p + m - 1 + i) % m],
                        k,
                    )?;
                }
                return Ok(());
            }
        }
    }

    // Path component: verts[0..=m], edges[0..m].
    let m = edges.len();
    if m == 1 {
        return Ok(()); // single trapped edge: free unless covered elsewhere
    }
    if m == 2 {
        let (u, v, w) = (verts[0], verts[1], verts[2]);
        if factor_edge(u, w).is_some() {
            // triangle run of length one
            push_open_chain(g, analysis, covered, |i| verts[i], |i| edges[i], 1)?;
            return Ok(());
        }
        if let Some(pids) = ends.get(&(u.min(w), u.max(w))) {
            covered[edges[0]] = true;
            covered[edges[1]] = true;
            analysis.trapped_p2s.push(TrappedP2 {
                u,
                v,
                w,
                e_uv: edges[0],
                e_vw: edges[1],
                witness: pids[0],
            });
        }
        return Ok(());
    }
    let tri: Vec<bool> = (1..m)
        .map(|p| factor_edge(verts[p - 1], verts[p + 1]).is_some())
        .collect();
    let mut p = 0;
    while p < tri.len() {
        if !tri[p] {
            p += 1;
            continue;
        }
        let start = p;
        while p < tri.len() && tri[p] {
            p += 1;
        }
        let k = p - start;
        push_open_chain(
            g,
            analysis,
            covered,
            |i| verts[start + i],
            |i| edges[start + i],
            k,
        )?;
    }
    Ok(())
}

/// Records an open run of `k` triangles whose spine starts at `vert(0)`.
fn push_open_chain(
    g: &Graph,
    analysis: &mut TrappedAnalysis,
    covered: &mut [bool],
    vert: impl Fn(usize) -> Vertex,
    edge: impl Fn(usize) -> EdgeId,
    k: usize,
) -> Result<(), TrappedError> {
    let spine: Vec<Vertex> = (0..k + 2).map(&vert).collect();
    let spine_edges: Vec<EdgeId> = (0..k + 1).map(&edge).collect();
    let chords = (0..k)
        .map(|j| {
            g.edge_id(spine[j], spine[j + 2])
                .filter(|&e| analysis.f2_mask[e])
                .ok_or_else(|| TrappedError::Internal {
                    stage: "push_open_chain",
                    detail: "run lost a chord".into(),
                })
        })
        .collect::<Result<Vec<_>, _>>()?;
    for &e in &spine_edges {
        covered[e] = true;
    }
    analysis.chains.push(Chain {
        spine,
        spine_edges,
        chords,
        closed: false,
    });
    Ok(())
}
