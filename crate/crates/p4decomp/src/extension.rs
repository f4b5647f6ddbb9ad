//! Extending the 2-edge paths to 4-edge trackings and repairing their shape.
//!
//! Each 2-edge path gains one outgoing factor arc at each of its ends,
//! producing one tracking per path; every vertex then heads exactly two
//! directed end edges and tails exactly two. Two repair loops follow, both
//! swapping end edges between the two trackings whose middles meet at a
//! vertex: the first removes closed walks, the second rewrites every
//! triangle whose closing edge is trapped only by the tracking's own middle,
//! so that each surviving triangle closes over a double-trapped edge and can
//! be paired with the tracking holding that edge's second trapping path.
//!
//! Tracking `i` always keeps the `i`-th 2-edge path as its middle: swaps
//! exchange end edges only, so the correspondence never changes.

use crate::graph::{
    EdgeId, Graph, Orientation, Tracking, TrackingDecomposition, TrackingKind, Vertex,
};
use crate::p2::P2Decomposition;

#[derive(Debug, thiserror::Error)]
pub enum ExtendError {
    #[error("vertex {v} tails {count} factor arcs, expected 2")]
    BadOutDegree { v: Vertex, count: usize },
    #[error("vertex {v} ends {count} middle paths, expected 2")]
    BadEndCount { v: Vertex, count: usize },
    #[error("internal error in {stage}: {detail}")]
    Internal { stage: &'static str, detail: String },
}

/// One exceptional pair: the tracking that closes a triangle over a
/// double-trapped edge, and the tracking whose middle is that edge's second
/// trapping path (always an open path).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairedTriangle {
    pub triangle: usize,
    pub partner: usize,
}

/// Number of closed trackings.
pub fn tau(b: &TrackingDecomposition) -> usize {
    b.trackings.iter().filter(|t| t.is_cycle()).count()
}

/// Number of trackings with five distinct vertices.
pub fn tau_prime(b: &TrackingDecomposition) -> usize {
    b.trackings.iter().filter(|t| t.is_path()).count()
}

/// Extends every 2-edge path by one outgoing factor arc at each end. The
/// two arcs leaving a vertex go to the two paths ending there, in index
/// order, so the result is deterministic and uses every factor arc once.
pub fn initial_extensions(
    g: &Graph,
    d: &P2Decomposition,
    o: &Orientation,
) -> Result<TrackingDecomposition, ExtendError> {
    let n = g.vertex_count();
    let mut trackings: Vec<Tracking> = d
        .paths
        .iter()
        .map(|p| Tracking {
            v: [usize::MAX, p.end_a, p.center, p.end_b, usize::MAX],
            e: [usize::MAX, p.edge_a, p.edge_b, usize::MAX],
        })
        .collect();

    for v in 0..n {
        let mut arcs: Vec<(Vertex, EdgeId)> = Vec::with_capacity(2);
        for &(w, e) in g.neighbors(v) {
            if o.get(e).map(|a| a.tail == v).unwrap_or(false) {
                arcs.push((w, e));
            }
        }
        if arcs.len() != 2 {
            return Err(ExtendError::BadOutDegree {
                v,
                count: arcs.len(),
            });
        }
        let ending = d.ending_at(v);
        if ending.len() != 2 {
            return Err(ExtendError::BadEndCount {
                v,
                count: ending.len(),
            });
        }
        for (&(head, edge), &i) in arcs.iter().zip(ending) {
            let t = &mut trackings[i];
            if t.v[1] == v && t.e[0] == usize::MAX {
                t.v[0] = head;
                t.e[0] = edge;
            } else if t.v[3] == v {
                t.v[4] = head;
                t.e[3] = edge;
            } else {
                return Err(ExtendError::Internal {
                    stage: "initial_extensions",
                    detail: format!("path {i} does not expose an open end at {v}"),
                });
            }
        }
    }

    for (i, t) in trackings.iter().enumerate() {
        if t.e.contains(&usize::MAX) {
            return Err(ExtendError::Internal {
                stage: "initial_extensions",
                detail: format!("path {i} was not extended at both ends"),
            });
        }
        debug_assert!(Tracking::new(g, t.v).is_some());
    }
    Ok(TrackingDecomposition::new(trackings))
}

/// Index of the tracking whose middle is the other path ending at `v`.
fn partner_at(d: &P2Decomposition, v: Vertex, own: usize) -> Result<usize, ExtendError> {
    let ending = d.ending_at(v);
    let mut it = ending.iter().copied().filter(|&i| i != own);
    match (it.next(), it.next()) {
        (Some(i), None) => Ok(i),
        _ => Err(ExtendError::Internal {
            stage: "partner_at",
            detail: format!("vertex {v} does not end exactly one path besides {own}"),
        }),
    }
}

/// Reverses tracking `i` if needed so that its middle's end at `v` sits at
/// position 1 (`at_start`) or position 3.
fn align(b: &mut TrackingDecomposition, i: usize, v: Vertex, at_start: bool) {
    let pos = if at_start { 1 } else { 3 };
    let other = 4 - pos;
    if b.trackings[i].v[pos] != v {
        debug_assert_eq!(b.trackings[i].v[other], v);
        b.trackings[i] = b.trackings[i].reversed();
    }
}

/// Exchanges the directed end edges that `i` and `j` hang at the shared
/// vertex `v[pos_i]` == `v[pos_j]`; positions are 0 (start) or 4 (end).
fn swap_ends(b: &mut TrackingDecomposition, i: usize, pos_i: usize, j: usize, pos_j: usize) {
    let (ev_i, ee_i) = (pos_i, if pos_i == 0 { 0 } else { 3 });
    let (ev_j, ee_j) = (pos_j, if pos_j == 0 { 0 } else { 3 });
    let tmp_v = b.trackings[i].v[ev_i];
    let tmp_e = b.trackings[i].e[ee_i];
    b.trackings[i].v[ev_i] = b.trackings[j].v[ev_j];
    b.trackings[i].e[ee_i] = b.trackings[j].e[ee_j];
    b.trackings[j].v[ev_j] = tmp_v;
    b.trackings[j].e[ee_j] = tmp_e;
}

/// Removes every closed tracking by swapping its starting end edge with the
/// tracking whose middle is the other path ending at the closed walk's
/// second vertex. Returns the trace of closed-walk counts, one entry per
/// swap plus the initial value; the trace decreases strictly.
pub fn eliminate_cycles(
    d: &P2Decomposition,
    b: &mut TrackingDecomposition,
) -> Result<Vec<usize>, ExtendError> {
    let mut trace = vec![tau(b)];
    while let Some(i) = b.trackings.iter().position(|t| t.is_cycle()) {
        let x1 = b.trackings[i].v[1];
        let q = partner_at(d, x1, i)?;
        align(b, q, x1, true);
        swap_ends(b, i, 0, q, 0);

        if b.trackings[i].is_cycle() || b.trackings[q].is_cycle() {
            return Err(ExtendError::Internal {
                stage: "eliminate_cycles",
                detail: format!("swap at vertex {x1} left a closed tracking"),
            });
        }
        let now = tau(b);
        if now >= *trace.last().expect("nonempty trace") {
            return Err(ExtendError::Internal {
                stage: "eliminate_cycles",
                detail: "closed-walk count failed to decrease".into(),
            });
        }
        trace.push(now);
    }
    Ok(trace)
}

/// Rewrites triangles until every remaining one closes over a double-trapped
/// edge, then pairs each with the tracking holding the second trapping path.
/// Returns the trace of open-path counts (strictly increasing) and the pairs.
pub fn make_exceptional(
    d: &P2Decomposition,
    b: &mut TrackingDecomposition,
) -> Result<(Vec<usize>, Vec<PairedTriangle>), ExtendError> {
    let ends = d.trapping_ends();
    let double_trapped = |a: Vertex, c: Vertex| {
        ends.get(&(a.min(c), a.max(c)))
            .map(|v| v.len() == 2)
            .unwrap_or(false)
    };

    let needs_work = |t: &Tracking| {
        t.contains_triangle() && {
            let (a, c) = closing_pair(t);
            !double_trapped(a, c)
        }
    };

    let mut trace = vec![tau_prime(b)];
    while let Some(i) = b.trackings.iter().position(needs_work) {
        rewrite_triangle(d, b, i)?;
        let now = tau_prime(b);
        if now <= *trace.last().expect("nonempty trace") {
            return Err(ExtendError::Internal {
                stage: "make_exceptional",
                detail: "open-path count failed to increase".into(),
            });
        }
        trace.push(now);
    }

    let mut pairs = Vec::new();
    for (i, t) in b.trackings.iter().enumerate() {
        if !t.contains_triangle() {
            continue;
        }
        let (a, c) = closing_pair(t);
        let key = (a.min(c), a.max(c));
        let trappers = ends.get(&key).cloned().unwrap_or_default();
        if trappers.len() != 2 || !trappers.contains(&i) {
            return Err(ExtendError::Internal {
                stage: "make_exceptional",
                detail: format!("triangle {i} lacks a second trapping path"),
            });
        }
        let partner = trappers[if trappers[0] == i { 1 } else { 0 }];
        if b.trackings[partner].contains_triangle() || b.trackings[partner].is_cycle() {
            return Err(ExtendError::Internal {
                stage: "make_exceptional",
                detail: format!("partner {partner} of triangle {i} is not an open path"),
            });
        }
        pairs.push(PairedTriangle {
            triangle: i,
            partner,
        });
    }
    Ok((trace, pairs))
}

/// Ends of the edge closing a tracking's triangle.
fn closing_pair(t: &Tracking) -> (Vertex, Vertex) {
    match t.kind() {
        TrackingKind::TriangleAtEnd => (t.v[1], t.v[3]),
        TrackingKind::TriangleAtStart => (t.v[1], t.v[3]),
        _ => unreachable!("closing_pair on a tracking without a triangle"),
    }
}

/// One rewrite step on the triangle at index `i`: hand its closing edge to
/// the tracking whose middle is the other path at the closing edge's far
/// end, then patch starts as needed to keep every tracking open.
fn rewrite_triangle(
    d: &P2Decomposition,
    b: &mut TrackingDecomposition,
    i: usize,
) -> Result<(), ExtendError> {
    if b.trackings[i].kind() == TrackingKind::TriangleAtStart {
        b.trackings[i] = b.trackings[i].reversed();
    }
    debug_assert_eq!(b.trackings[i].kind(), TrackingKind::TriangleAtEnd);
    let x1 = b.trackings[i].v[1];
    let x3 = b.trackings[i].v[3];

    let q = partner_at(d, x3, i)?;
    align(b, q, x3, false);

    // Tentative exchange of the end edges hanging at x3.
    swap_ends(b, i, 4, q, 4);
    let t_cycle = b.trackings[i].is_cycle();
    let q_cycle = b.trackings[q].is_cycle();
    let mut touched = vec![i, q];

    if t_cycle {
        // The new end edge returns to this tracking's start; trade starting
        // edges with the other path at x1 instead.
        let r = partner_at(d, x1, i)?;
        if r == q {
            return Err(ExtendError::Internal {
                stage: "rewrite_triangle",
                detail: format!("triangle {i} has coinciding repair partners"),
            });
        }
        align(b, r, x1, true);
        swap_ends(b, i, 0, r, 0);
        touched.push(r);
    }
    if q_cycle {
        let y1 = b.trackings[q].v[1];
        let u = partner_at(d, y1, q)?;
        if u == i || touched.contains(&u) {
            return Err(ExtendError::Internal {
                stage: "rewrite_triangle",
                detail: format!("triangle {i} has coinciding repair partners"),
            });
        }
        align(b, u, y1, true);
        swap_ends(b, q, 0, u, 0);
        touched.push(u);
    }

    for &k in &touched {
        if b.trackings[k].is_cycle() {
            return Err(ExtendError::Internal {
                stage: "rewrite_triangle",
                detail: format!("rewrite of triangle {i} left tracking {k} closed"),
            });
        }
    }
    Ok(())
}
