//! Resolving paired triangles into a pure path decomposition.
//!
//! After the extension stage, every tracking that still contains a triangle
//! closes it over a double-trapped edge and is paired with the open path
//! whose middle is that edge's second trapping path. Writing the triangle as
//! `a2 b c2 d b` and the aligned partner as `a1 b c1 d e1`, the two share the
//! vertex `b` of degree five (the pair's center) and the pivot edge `bd`;
//! `c1` and `c2` are the connection vertices.
//!
//! Each pair is removed by a switch: a tracking `P` hanging an edge `a3 c_i`
//! at a connection vertex and avoiding `b` trades that edge for `b c_i`, and
//! the ten remaining pair edges regroup into two genuine paths. The switch
//! raises the open-path count, so at most one pass over the pairs finishes
//! the job. [`check_complete`] validates the state this argument needs, and
//! [`decompose`] runs the whole pipeline from an 8-regular graph to the
//! final decomposition.

use crate::extension::{
    eliminate_cycles, initial_extensions, make_exceptional, tau_prime, ExtendError, PairedTriangle,
};
use crate::factorize::{edge_subgraph, four_factors, FactorizeError};
use crate::graph::{Graph, GraphError, Tracking, TrackingDecomposition, TrackingKind, Vertex};
use crate::orientation::{check_good, good_orientation, OrientError};
use crate::p2::balanced_p2_decomposition;
use crate::trapped::{analyze, TrappedError};

#[derive(Debug, thiserror::Error)]
pub enum CompleteError {
    #[error("internal error in {stage}: {detail}")]
    Internal { stage: &'static str, detail: String },
}

/// Failure of one property the resolution loop relies on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Defect {
    /// A vertex is not the end of exactly two trackings.
    Unbalanced { v: Vertex, count: usize },
    /// A tracking is a closed walk.
    ClosedTracking { index: usize },
    /// No tracking hangs an edge at this vertex.
    NoHangingEdge { v: Vertex },
    /// A tracking contains a triangle but appears in no pair.
    UnpairedTriangle { index: usize },
    /// A pair's two trackings do not form the required shape.
    MalformedPair { pair: usize, detail: String },
    /// An element hangs an edge at a connection vertex and passes through
    /// the pair's center without ending there.
    CenterNotEnd { pair: usize, element: usize },
}

/// One pair in the normalized coordinates the switch works in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairView {
    /// Shared degree-five vertex `b`.
    pub center: Vertex,
    /// Other end `d` of the pivot edge; the triangle closes over `bd`.
    pub pivot: Vertex,
    /// Middle centers `c1` (partner) and `c2` (triangle).
    pub connections: [Vertex; 2],
}

fn normalized_triangle(t: &Tracking) -> Option<Tracking> {
    match t.kind() {
        TrackingKind::TriangleAtEnd => Some(t.clone()),
        TrackingKind::TriangleAtStart => Some(t.reversed()),
        _ => None,
    }
}

/// Reads off the center, pivot and connection vertices of a stored pair.
pub fn pair_view(b: &TrackingDecomposition, p: PairedTriangle) -> Option<PairView> {
    let tri = normalized_triangle(&b.trackings[p.triangle])?;
    let center = tri.v[1];
    let pivot = tri.v[3];
    let mut par = b.trackings[p.partner].clone();
    if par.v[1] != center {
        par = par.reversed();
    }
    if par.v[1] != center || par.v[3] != pivot || !par.is_path() {
        return None;
    }
    Some(PairView {
        center,
        pivot,
        connections: [par.v[2], tri.v[2]],
    })
}

/// Checks every property the resolution loop needs: the decomposition is
/// balanced, has no closed walks, hangs an edge at every vertex, pairs every
/// triangle exactly once, and never routes a tracking through a pair's
/// center while it hangs an edge at a connection vertex of that pair.
pub fn check_complete(b: &TrackingDecomposition, pairs: &[PairedTriangle]) -> Vec<Defect> {
    let mut defects = Vec::new();
    let n = b
        .trackings
        .iter()
        .flat_map(|t| t.v)
        .max()
        .map_or(0, |m| m + 1);
    for v in 0..n {
        let count = b.end_count(v);
        if count != 2 {
            defects.push(Defect::Unbalanced { v, count });
        }
        if b.prehang(v) == 0 {
            defects.push(Defect::NoHangingEdge { v });
        }
    }
    for (i, t) in b.trackings.iter().enumerate() {
        if t.is_cycle() {
            defects.push(Defect::ClosedTracking { index: i });
        }
    }

    let mut paired = vec![0usize; b.len()];
    for (pi, p) in pairs.iter().enumerate() {
        if p.triangle >= b.len() || p.partner >= b.len() {
            defects.push(Defect::MalformedPair {
                pair: pi,
                detail: "pair references a missing tracking".into(),
            });
            continue;
        }
        if p.triangle == p.partner {
            defects.push(Defect::MalformedPair {
                pair: pi,
                detail: "pair references one tracking twice".into(),
            });
            continue;
        }
        paired[p.triangle] += 1;
        match pair_view(b, *p) {
            Some(_) => {}
            None => defects.push(Defect::MalformedPair {
                pair: pi,
                detail: "trackings do not share a pivot edge and center".into(),
            }),
        }
    }
    for (i, t) in b.trackings.iter().enumerate() {
        if t.contains_triangle() && paired[i] != 1 {
            defects.push(Defect::UnpairedTriangle { index: i });
        }
    }

    for (pi, p) in pairs.iter().enumerate() {
        if p.triangle >= b.len() || p.partner >= b.len() {
            continue;
        }
        let Some(view) = pair_view(b, *p) else {
            continue;
        };
        for (ei, el) in b.trackings.iter().enumerate() {
            let hangs = view
                .connections
                .iter()
                .any(|&c| el.v[1] == c || el.v[3] == c);
            if hangs
                && el.contains_vertex(view.center)
                && el.v[0] != view.center
                && el.v[4] != view.center
            {
                defects.push(Defect::CenterNotEnd {
                    pair: pi,
                    element: ei,
                });
            }
        }
    }
    defects
}

/// Runs switches until no tracking contains a triangle. Returns the trace of
/// open-path counts, which increases strictly with every switch.
pub fn resolve_pairs(
    g: &Graph,
    b: &mut TrackingDecomposition,
    mut pairs: Vec<PairedTriangle>,
) -> Result<Vec<usize>, CompleteError> {
    let mut trace = vec![tau_prime(b)];
    let budget = pairs.len();
    for _ in 0..=budget {
        pairs.retain(|p| b.trackings[p.triangle].contains_triangle());
        let Some(i) = b.trackings.iter().position(|t| t.contains_triangle()) else {
            return Ok(trace);
        };
        let Some(&pair) = pairs.iter().find(|p| p.triangle == i) else {
            return Err(CompleteError::Internal {
                stage: "resolve_pairs",
                detail: format!("tracking {i} contains an unpaired triangle"),
            });
        };
        switch(g, b, pair)?;
        let now = tau_prime(b);
        if now <= *trace.last().expect("nonempty trace") {
            return Err(CompleteError::Internal {
                stage: "resolve_pairs",
                detail: "open-path count failed to increase".into(),
            });
        }
        trace.push(now);
        debug_assert!({
            let live: Vec<_> = pairs
                .iter()
                .copied()
                .filter(|p| b.trackings[p.triangle].contains_triangle())
                .collect();
            check_complete(b, &live).is_empty()
        });
    }
    Err(CompleteError::Internal {
        stage: "resolve_pairs",
        detail: format!("triangles outlived {budget} switches"),
    })
}

fn internal(detail: String) -> CompleteError {
    CompleteError::Internal {
        stage: "switch",
        detail,
    }
}

/// Replaces a pair and one tracking hanging at a connection vertex by three
/// trackings covering the same edges, two of which are always paths.
fn switch(
    g: &Graph,
    b: &mut TrackingDecomposition,
    pair: PairedTriangle,
) -> Result<(), CompleteError> {
    let tri = normalized_triangle(&b.trackings[pair.triangle])
        .ok_or_else(|| internal(format!("tracking {} is not a triangle", pair.triangle)))?;
    let center = tri.v[1];
    let pivot = tri.v[3];
    let (a2, c2) = (tri.v[0], tri.v[2]);

    let mut par = b.trackings[pair.partner].clone();
    if par.v[1] != center {
        par = par.reversed();
    }
    if par.v[1] != center || par.v[3] != pivot || !par.is_path() {
        return Err(internal(format!(
            "pair ({}, {}) lacks a shared pivot edge",
            pair.triangle, pair.partner
        )));
    }
    let (a1, c1, e1) = (par.v[0], par.v[2], par.v[4]);

    let hanger = |c: Vertex| b.hanging_at(c).into_iter().next();
    let (h1, h2) = match (hanger(c1), hanger(c2)) {
        (Some(h1), Some(h2)) => (h1, h2),
        _ => {
            return Err(internal(format!(
                "no hanging edge at a connection vertex of pair ({}, {})",
                pair.triangle, pair.partner
            )))
        }
    };
    let avoids = |(s, _): (usize, usize)| !b.trackings[s].contains_vertex(center);
    let (ci, cj, (s, end)) = if avoids(h1) {
        (c1, c2, h1)
    } else if avoids(h2) {
        (c2, c1, h2)
    } else {
        return Err(internal(format!(
            "both hangers at the connection vertices of pair ({}, {}) meet its center",
            pair.triangle, pair.partner
        )));
    };
    debug_assert!(s != pair.triangle && s != pair.partner);
    let mut held = b.trackings[s].clone();
    if end == 1 {
        held = held.reversed();
    }
    debug_assert_eq!(held.v[1], ci);
    let a3 = held.v[0];

    let (first, second) = if a2 == e1 {
        if a3 == a2 {
            return Err(internal(format!(
                "pair ({}, {}) has coinciding loose ends",
                pair.triangle, pair.partner
            )));
        }
        ([a3, ci, pivot, center, a2], [a1, center, cj, pivot, e1])
    } else {
        let (ak, al) = if a3 != a1 { (a1, a2) } else { (a2, a1) };
        if a3 == ak {
            return Err(internal(format!(
                "pair ({}, {}) has coinciding loose ends",
                pair.triangle, pair.partner
            )));
        }
        ([a3, ci, pivot, center, ak], [al, center, cj, pivot, e1])
    };
    let regrown = [center, held.v[1], held.v[2], held.v[3], held.v[4]];

    let rebuild = |v: [Vertex; 5]| {
        Tracking::new(g, v).ok_or_else(|| internal(format!("{v:?} is not a tracking")))
    };
    let first = rebuild(first)?;
    let second = rebuild(second)?;
    let regrown = rebuild(regrown)?;
    debug_assert!(first.is_path() && second.is_path());

    let mut before: Vec<_> = [&tri, &par, &held].iter().flat_map(|t| t.e).collect();
    let mut after: Vec<_> = [&first, &second, &regrown]
        .iter()
        .flat_map(|t| t.e)
        .collect();
    before.sort_unstable();
    after.sort_unstable();
    if before != after {
        return Err(internal("switch changed the covered edge set".into()));
    }

    b.trackings[pair.triangle] = first;
    b.trackings[pair.partner] = second;
    b.trackings[s] = regrown;
    Ok(())
}

/// Any failure along the pipeline from an 8-regular graph to its
/// decomposition.
#[derive(Debug, thiserror::Error)]
pub enum DecomposeError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Factorize(#[from] FactorizeError),
    #[error(transparent)]
    Trapped(#[from] TrappedError),
    #[error(transparent)]
    Orient(#[from] OrientError),
    #[error(transparent)]
    Extend(#[from] ExtendError),
    #[error(transparent)]
    Complete(#[from] CompleteError),
}

/// Per-stage counters proving the repair loops terminated the way they must:
/// closed walks strictly decrease, open paths strictly increase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageTrace {
    /// Closed-walk counts during cycle elimination, first entry included.
    pub closed_walks: Vec<usize>,
    /// Open-path counts while triangles are rewritten onto trapped edges.
    pub open_paths: Vec<usize>,
    /// Open-path counts while pairs are switched away.
    pub resolutions: Vec<usize>,
    /// Number of paired triangles handed to the resolution loop.
    pub paired_triangles: usize,
}

/// Decomposes an 8-regular graph into edge-disjoint 4-edge paths such that
/// every vertex is an end of exactly two of them.
pub fn decompose(g: &Graph) -> Result<TrackingDecomposition, DecomposeError> {
    decompose_traced(g).map(|(b, _)| b)
}

/// Like [`decompose`], but also reports the per-stage termination counters.
pub fn decompose_traced(g: &Graph) -> Result<(TrackingDecomposition, StageTrace), DecomposeError> {
    g.validate_regular(8)?;
    let ff = four_factors(g)?;
    let f1 = edge_subgraph(g, &ff.f1);
    let d = balanced_p2_decomposition(&f1)?.map_edges(|e| ff.f1[e]);
    let a = analyze(g, &ff.f2, &d)?;
    let o = good_orientation(g, &a)?;
    debug_assert!(check_good(g, &a, &o).is_empty());
    let mut b = initial_extensions(g, &d, &o)?;
    let closed_walks = eliminate_cycles(&d, &mut b)?;
    let (open_paths, pairs) = make_exceptional(&d, &mut b)?;
    let paired_triangles = pairs.len();
    let resolutions = resolve_pairs(g, &mut b, pairs)?;
    Ok((
        b,
        StageTrace {
            closed_walks,
            open_paths,
            resolutions,
            paired_triangles,
        },
    ))
}
