//! Good Eulerian orientation of the 4-regular factor.
//!
//! The factor is rebuilt as an auxiliary multigraph: each trapped 2-edge
//! path is split through a fresh vertex, trapped triangles and the trapped
//! cycles of K4s and bowties are removed, and each triangle run is removed
//! (open runs of two or more triangles leave a surrogate edge joining the
//! run's odd-degree vertices). The auxiliary graph is still even, so it has
//! an Eulerian orientation; undoing the surgery edge by edge yields an
//! Eulerian orientation of the factor under which every trapped 2-edge path
//! is consistent, every trapped triangle is a directed cycle, and every
//! triangle with exactly two trapped edges is a directed cycle or has both
//! trapped edges directed the same way at their shared vertex.

use crate::graph::{EdgeId, Graph, Orientation, Vertex};
use crate::trapped::{Chain, TrappedAnalysis};

#[derive(Debug, thiserror::Error)]
pub enum OrientError {
    #[error("internal error in {stage}: {detail}")]
    Internal { stage: &'static str, detail: String },
}

/// A defect found by [`check_good`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A factor edge carries no direction, or a non-factor edge carries one.
    WrongSupport { e: EdgeId },
    /// A vertex without two incoming and two outgoing factor edges.
    NotEulerian {
        v: Vertex,
        out_degree: usize,
        in_degree: usize,
    },
    /// A trapped 2-edge path whose center is a source or a sink.
    InconsistentP2 { index: usize },
    /// A trapped triangle that is not a directed cycle.
    NonEulerianTriangle { index: usize },
    /// A triangle with exactly two trapped edges that is neither a directed
    /// cycle nor centered at the trapped edges' shared vertex.
    BadQuasiTriangle { apex: Vertex },
}

/// Orients the factor so that the trapped substructures satisfy the
/// conditions checked by [`check_good`].
pub fn good_orientation(g: &Graph, a: &TrappedAnalysis) -> Result<Orientation, OrientError> {
    let surgery = build_surgery(g, a);
    let star = orient_star(&surgery)?;
    undo_surgery(g, a, &surgery, &star)
}

/// Verifies the good-orientation conditions; an empty result means `o` is
/// a good Eulerian orientation of the factor.
pub fn check_good(g: &Graph, a: &TrappedAnalysis, o: &Orientation) -> Vec<Violation> {
    let mut violations = Vec::new();
    for e in 0..g.edge_count() {
        if a.is_factor_edge(e) != o.is_oriented(e) {
            violations.push(Violation::WrongSupport { e });
        }
    }
    if !violations.is_empty() {
        return violations;
    }

    let n = g.vertex_count();
    let mut out_degree = vec![0usize; n];
    let mut in_degree = vec![0usize; n];
    for &e in &a.f2 {
        let arc = o.arc(e);
        out_degree[arc.tail] += 1;
        in_degree[arc.head] += 1;
    }
    for v in 0..n {
        if out_degree[v] != 2 || in_degree[v] != 2 {
            violations.push(Violation::NotEulerian {
                v,
                out_degree: out_degree[v],
                in_degree: in_degree[v],
            });
        }
    }

    for (index, p) in a.trapped_p2s.iter().enumerate() {
        let through = o.arc(p.e_uv).head == p.v && o.arc(p.e_vw).tail == p.v;
        let back = o.arc(p.e_vw).head == p.v && o.arc(p.e_uv).tail == p.v;
        if !through && !back {
            violations.push(Violation::InconsistentP2 { index });
        }
    }

    for (index, t) in a.trapped_triangles.iter().enumerate() {
        if !is_directed_cycle(o, &t.edges) {
            violations.push(Violation::NonEulerianTriangle { index });
        }
    }

    for q in a.quasi_triangles(g) {
        let eulerian = is_directed_cycle(o, &[q.trapped_edges[0], q.trapped_edges[1], q.chord]);
        let at_apex = |e: EdgeId| o.arc(e).tail == q.apex;
        let centered = at_apex(q.trapped_edges[0]) == at_apex(q.trapped_edges[1]);
        if !eulerian && !centered {
            violations.push(Violation::BadQuasiTriangle { apex: q.apex });
        }
    }
    violations
}

fn is_directed_cycle(o: &Orientation, edges: &[EdgeId]) -> bool {
    let mut balance = std::collections::HashMap::new();
    for &e in edges {
        let arc = o.arc(e);
        *balance.entry(arc.tail).or_insert(0i32) += 1;
        *balance.entry(arc.head).or_insert(0i32) -= 1;
    }
    balance.values().all(|&b| b == 0)
}

/// One edge of the auxiliary multigraph.
#[derive(Debug, Clone, Copy)]
struct StarEdge {
    u: Vertex,
    v: Vertex,
    kind: StarKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum StarKind {
    /// A factor edge kept as-is.
    Real(EdgeId),
    /// Half of a split trapped 2-edge path: the edge at `u` (side 0) or at
    /// `w` (side 1), rerouted through the path's fresh vertex.
    Split { p2: usize, side: u8 },
    /// The edge joining the odd-degree vertices of an open triangle run.
    Surrogate { chain: usize },
}

struct Surgery {
    edges: Vec<StarEdge>,
    /// Total vertex count including one fresh vertex per trapped 2-edge path.
    vertex_count: usize,
}

fn build_surgery(g: &Graph, a: &TrappedAnalysis) -> Surgery {
    let n = g.vertex_count();
    let mut deleted = vec![false; g.edge_count()];
    let mut edges = Vec::new();

    for (i, p) in a.trapped_p2s.iter().enumerate() {
        deleted[p.e_uv] = true;
        deleted[p.e_vw] = true;
        let z = n + i;
        edges.push(StarEdge {
            u: p.u,
            v: z,
            kind: StarKind::Split { p2: i, side: 0 },
        });
        edges.push(StarEdge {
            u: z,
            v: p.w,
            kind: StarKind::Split { p2: i, side: 1 },
        });
    }
    for t in &a.trapped_triangles {
        for &e in &t.edges {
            deleted[e] = true;
        }
    }
    for k in &a.trapped_k4s {
        for &e in &k.cycle_edges {
            deleted[e] = true;
        }
    }
    for b in &a.bowties {
        for &e in &b.cycle_edges {
            deleted[e] = true;
        }
    }
    for (i, c) in a.chains.iter().enumerate() {
        for &e in c.spine_edges.iter().chain(&c.chords) {
            deleted[e] = true;
        }
        if !c.closed && c.triangle_count() >= 2 {
            let k = c.triangle_count();
            edges.push(StarEdge {
                u: c.spine[1],
                v: c.spine[k],
                kind: StarKind::Surrogate { chain: i },
            });
        }
    }

    for &e in &a.f2 {
        if !deleted[e] {
            let (u, v) = g.endpoints(e);
            edges.push(StarEdge {
                u,
                v,
                kind: StarKind::Real(e),
            });
        }
    }
    Surgery {
        edges,
        vertex_count: n + a.trapped_p2s.len(),
    }
}

/// Eulerian orientation of the auxiliary multigraph: `true` means the edge
/// runs from its `u` to its `v`.
fn orient_star(surgery: &Surgery) -> Result<Vec<bool>, OrientError> {
    let mut adj: Vec<Vec<(usize, Vertex)>> = vec![Vec::new(); surgery.vertex_count];
    for (i, e) in surgery.edges.iter().enumerate() {
        adj[e.u].push((i, e.v));
        adj[e.v].push((i, e.u));
    }
    for (v, inc) in adj.iter().enumerate() {
        if inc.len() % 2 != 0 {
            return Err(OrientError::Internal {
                stage: "orient_star",
                detail: format!("auxiliary vertex {v} has odd degree {}", inc.len()),
            });
        }
    }

    let mut forward = vec![false; surgery.edges.len()];
    let mut used = vec![false; surgery.edges.len()];
    let mut cursor = vec![0usize; surgery.vertex_count];
    for start in 0..surgery.vertex_count {
        loop {
            while cursor[start] < adj[start].len() && used[adj[start][cursor[start]].0] {
                cursor[start] += 1;
            }
            if cursor[start] >= adj[start].len() {
                break;
            }
            // Trace a closed walk back to `start`, orienting as we go.
            let mut at = start;
            loop {
                while cursor[at] < adj[at].len() && used[adj[at][cursor[at]].0] {
                    cursor[at] += 1;
                }
                if cursor[at] >= adj[at].len() {
                    if at == start {
                        break;
                    }
                    return Err(OrientError::Internal {
                        stage: "orient_star",
                        detail: format!("walk stuck at auxiliary vertex {at}"),
                    });
                }
                let (idx, to) = adj[at][cursor[at]];
                used[idx] = true;
                forward[idx] = surgery.edges[idx].u == at;
                if surgery.edges[idx].u == surgery.edges[idx].v {
                    return Err(OrientError::Internal {
                        stage: "orient_star",
                        detail: "auxiliary self-loop".into(),
                    });
                }
                at = to;
                if at == start {
                    break;
                }
            }
        }
    }
    Ok(forward)
}

fn undo_surgery(
    g: &Graph,
    a: &TrappedAnalysis,
    surgery: &Surgery,
    forward: &[bool],
) -> Result<Orientation, OrientError> {
    let mut o = Orientation::new(g.edge_count());
    let arc_of = |i: usize| -> (Vertex, Vertex) {
        let e = surgery.edges[i];
        if forward[i] {
            (e.u, e.v)
        } else {
            (e.v, e.u)
        }
    };

    // Untouched factor edges first; gadget rules below overwrite the
    // directions of K4 and bowtie diagonals.
    let mut split_arcs = vec![[None, None]; a.trapped_p2s.len()];
    let mut surrogate_arcs = vec![None; a.chains.len()];
    for (i, e) in surgery.edges.iter().enumerate() {
        match e.kind {
            StarKind::Real(id) => {
                let (t, h) = arc_of(i);
                o.set(id, t, h);
            }
            StarKind::Split { p2, side } => split_arcs[p2][side as usize] = Some(arc_of(i)),
            StarKind::Surrogate { chain } => surrogate_arcs[chain] = Some(arc_of(i)),
        }
    }

    for (i, p) in a.trapped_p2s.iter().enumerate() {
        let (tail, _) = split_arcs[i][0].ok_or_else(|| OrientError::Internal {
            stage: "undo_surgery",
            detail: format!("split path {i} lost an auxiliary edge"),
        })?;
        if tail == p.u {
            o.set(p.e_uv, p.u, p.v);
            o.set(p.e_vw, p.v, p.w);
        } else {
            o.set(p.e_vw, p.w, p.v);
            o.set(p.e_uv, p.v, p.u);
        }
    }

    for t in &a.trapped_triangles {
        orient_triangle_cycle(g, &mut o, &t.vertices);
    }

    for k in &a.trapped_k4s {
        // Relabel the K4 as x0 x1 x2 x3 (trapped cycle in order) so that
        // both diagonals point forward in the auxiliary orientation.
        let d02 = o.arc(k.diagonals[0]);
        let d13 = o.arc(k.diagonals[1]);
        let (x0, x2) = (d02.tail, d02.head);
        let (x1, x3) = (d13.tail, d13.head);
        o.set(k.diagonals[1], x3, x1);
        set_by_ends(g, &mut o, x1, x2);
        set_by_ends(g, &mut o, x2, x3);
        set_by_ends(g, &mut o, x1, x0);
        set_by_ends(g, &mut o, x0, x3);
    }

    for b in &a.bowties {
        // Both triangles share the diagonal; reversing it and running both
        // trapped 2-edge paths from the diagonal's old tail to its old head
        // makes each triangle a directed cycle.
        let d = o.arc(b.diagonal);
        let (from, to) = (d.tail, d.head);
        o.set(b.diagonal, to, from);
        for apex in [b.cycle[1], b.cycle[3]] {
            set_by_ends(g, &mut o, from, apex);
            set_by_ends(g, &mut o, apex, to);
        }
    }

    for (i, c) in a.chains.iter().enumerate() {
        if c.closed {
            orient_closed_chain(&mut o, c);
        } else if c.triangle_count() == 1 {
            orient_triangle_cycle(g, &mut o, &[c.spine[0], c.spine[1], c.spine[2]]);
        } else {
            let (tail, _) = surrogate_arcs[i].ok_or_else(|| OrientError::Internal {
                stage: "undo_surgery",
                detail: format!("run {i} lost its surrogate edge"),
            })?;
            orient_open_chain(&mut o, c, tail == c.spine[c.triangle_count()]);
        }
    }
    Ok(o)
}

/// Directs the edge `ab`, which must exist, from `a` to `b`.
fn set_by_ends(g: &Graph, o: &mut Orientation, a: Vertex, b: Vertex) {
    let e = g.edge_id(a, b).expect("gadget edge exists");
    o.set(e, a, b);
}

/// Directs a triangle as a cycle, starting at its smallest vertex toward
/// that vertex's smaller neighbor.
fn orient_triangle_cycle(g: &Graph, o: &mut Orientation, verts: &[Vertex; 3]) {
    let mut vs = *verts;
    vs.sort_unstable();
    set_by_ends(g, o, vs[0], vs[1]);
    set_by_ends(g, o, vs[1], vs[2]);
    set_by_ends(g, o, vs[2], vs[0]);
}

/// Spine edges forward and each chord two steps backward, so every triangle
/// of the run is a directed cycle; `forward` picks the spine direction.
fn orient_open_chain(o: &mut Orientation, c: &Chain, forward: bool) {
    let k = c.triangle_count();
    for i in 0..=k {
        let (a, b) = (c.spine[i], c.spine[i + 1]);
        if forward {
            o.set(c.spine_edges[i], a, b);
        } else {
            o.set(c.spine_edges[i], b, a);
        }
    }
    for i in 0..k {
        let (a, b) = (c.spine[i], c.spine[i + 2]);
        if forward {
            o.set(c.chords[i], b, a);
        } else {
            o.set(c.chords[i], a, b);
        }
    }
}

fn orient_closed_chain(o: &mut Orientation, c: &Chain) {
    let m = c.spine.len();
    let pos = (0..m).min_by_key(|&i| c.spine[i]).expect("nonempty spine");
    let forward = c.spine[(pos + 1) % m] < c.spine[(pos + m - 1) % m];
    for i in 0..m {
        let (a, b) = (c.spine[i], c.spine[(i + 1) % m]);
        if forward {
            o.set(c.spine_edges[i], a, b);
        } else {
            o.set(c.spine_edges[i], b, a);
        }
    }
    for i in 0..m {
        let (a, b) = (c.spine[i], c.spine[(i + 2) % m]);
        if forward {
            o.set(c.chords[i], b, a);
        } else {
            o.set(c.chords[i], a, b);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorize::{edge_subgraph, four_factors};
    use crate::graph::named_instance;
    use crate::p2::{balanced_p2_decomposition, P2Decomposition, P2};
    use crate::trapped::analyze;

    fn k9_instance(arm_a: isize, arm_b: isize) -> (Graph, TrappedAnalysis) {
        let g = named_instance("K9").unwrap();
        let f2: Vec<EdgeId> = (0..g.edge_count())
            .filter(|&e| {
                let (u, v) = g.endpoints(e);
                (v - u).min(9 - (v - u)) <= 2
            })
            .collect();
        let at = |v: usize, d: isize| (v as isize + d).rem_euclid(9) as usize;
        let paths = (0..9)
            .map(|v| {
                let (mut x, mut y) = (at(v, arm_a), at(v, arm_b));
                if x > y {
                    std::mem::swap(&mut x, &mut y);
                }
                P2 {
                    end_a: x,
                    center: v,
                    end_b: y,
                    edge_a: g.edge_id(v, x).unwrap(),
                    edge_b: g.edge_id(v, y).unwrap(),
                }
            })
            .collect();
        let d = P2Decomposition::new(9, paths);
        let a = analyze(&g, &f2, &d).unwrap();
        (g, a)
    }

    #[test]
    fn closed_run_gets_a_good_orientation() {
        let (g, a) = k9_instance(3, 4);
        assert_eq!(a.chains.len(), 1);
        let o = good_orientation(&g, &a).unwrap();
        assert!(check_good(&g, &a, &o).is_empty());
    }

    #[test]
    fn free_only_instance_gets_a_good_orientation() {
        let (g, a) = k9_instance(-3, 4);
        assert_eq!(a.free_edges.len(), 9);
        let o = good_orientation(&g, &a).unwrap();
        assert!(check_good(&g, &a, &o).is_empty());
    }

    #[test]
    fn orientation_is_deterministic() {
        let (g, a) = k9_instance(3, 4);
        let o1 = good_orientation(&g, &a).unwrap();
        let o2 = good_orientation(&g, &a).unwrap();
        for &e in &a.f2 {
            assert_eq!(o1.arc(e).tail, o2.arc(e).tail);
        }
    }

    #[test]
    fn reversing_a_chord_is_detected() {
        let (g, a) = k9_instance(3, 4);
        let mut o = good_orientation(&g, &a).unwrap();
        let chord = a.chains[0].chords[0];
        o.reverse(chord);
        let violations = check_good(&g, &a, &o);
        assert!(violations
            .iter()
            .any(|v| matches!(v, Violation::NotEulerian { .. })));
        assert!(violations
            .iter()
            .any(|v| matches!(v, Violation::BadQuasiTriangle { .. })));
    }

    #[test]
    fn missing_direction_is_detected() {
        let (g, a) = k9_instance(3, 4);
        let o = Orientation::new(g.edge_count());
        let violations = check_good(&g, &a, &o);
        assert_eq!(violations.len(), a.f2.len());
        assert!(matches!(violations[0], Violation::WrongSupport { .. }));
    }

    #[test]
    fn pipeline_instances_get_good_orientations() {
        for name in ["K9", "K8,8", "CIRC(13;1,2,3,4)", "CIRC(24;1,2,3,4)"] {
            let g = named_instance(name).unwrap();
            let ff = four_factors(&g).unwrap();
            let f1 = edge_subgraph(&g, &ff.f1);
            let d = balanced_p2_decomposition(&f1)
                .unwrap()
                .map_edges(|e| ff.f1[e]);
            let a = analyze(&g, &ff.f2, &d).unwrap();
            let o = good_orientation(&g, &a).unwrap();
            let violations = check_good(&g, &a, &o);
            assert!(violations.is_empty(), "{name}: {violations:?}");
        }
    }
}
