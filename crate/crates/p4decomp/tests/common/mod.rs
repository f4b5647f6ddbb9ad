//! Hand-built instances with known trapped structures.
//!
//! Each instance fixes the 2-edge paths directly instead of running the
//! factorization, so the end-pairs — and therefore exactly which factor
//! edges are trapped — are chosen by construction. The builder checks that
//! the pieces assemble into a legitimate pipeline state: the paths cover a
//! 4-regular factor, the given factor is 4-regular and disjoint from it,
//! and their union is a simple 8-regular graph.

#![allow(dead_code)]

use p4decomp::graph::{EdgeId, Graph};
use p4decomp::p2::{P2Decomposition, P2};

pub struct Planted {
    pub g: Graph,
    pub f2: Vec<EdgeId>,
    pub d: P2Decomposition,
}

/// Assembles a graph from factor edges and per-center path triples
/// `(end_a, center, end_b)`, one per vertex.
pub fn planted(
    n: usize,
    f2_pairs: &[(usize, usize)],
    triples: &[(usize, usize, usize)],
) -> Planted {
    assert_eq!(triples.len(), n, "one path per vertex");
    let mut arm_edges = Vec::new();
    let mut centers = vec![0usize; n];
    let mut end_count = vec![0usize; n];
    for &(a, c, b) in triples {
        assert!(a < b && a != c && b != c, "degenerate path ({a},{c},{b})");
        centers[c] += 1;
        end_count[a] += 1;
        end_count[b] += 1;
        arm_edges.push((c.min(a), c.max(a)));
        arm_edges.push((c.min(b), c.max(b)));
    }
    assert!(centers.iter().all(|&k| k == 1), "each vertex centers once");
    assert!(end_count.iter().all(|&k| k == 2), "each vertex ends twice");
    let mut sorted_arms = arm_edges.clone();
    sorted_arms.sort_unstable();
    sorted_arms.dedup();
    assert_eq!(sorted_arms.len(), 2 * n, "arm edges are distinct");
    let factor: Vec<(usize, usize)> = f2_pairs
        .iter()
        .map(|&(u, v)| (u.min(v), u.max(v)))
        .collect();
    for e in &factor {
        assert!(!sorted_arms.contains(e), "factor reuses arm edge {e:?}");
    }

    let mut all = sorted_arms;
    all.extend_from_slice(&factor);
    all.sort_unstable();
    let g = Graph::from_edges(n, &all).expect("planted edges form a simple graph");
    g.validate_regular(8).expect("planted union is 8-regular");

    let f2: Vec<EdgeId> = factor
        .iter()
        .map(|&(u, v)| g.edge_id(u, v).expect("factor edge exists"))
        .collect();
    let paths = triples
        .iter()
        .map(|&(a, c, b)| P2 {
            end_a: a,
            center: c,
            end_b: b,
            edge_a: g.edge_id(c, a).expect("arm exists"),
            edge_b: g.edge_id(c, b).expect("arm exists"),
        })
        .collect();
    Planted {
        f2,
        d: P2Decomposition::new(n, paths),
        g,
    }
}

pub fn circulant_pairs(n: usize, dists: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for v in 0..n {
        for &d in dists {
            let w = (v + d) % n;
            out.push((v.min(w), v.max(w)));
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Factor distance {3,4} on 13 vertices; edges 0-3 and 3-6 are trapped and
/// the outer pair {0,6} is itself an end-pair, so the analysis reports one
/// trapped 2-edge path.
pub fn planted_trapped_p2() -> Planted {
    planted(
        13,
        &circulant_pairs(13, &[3, 4]),
        &[
            (1, 0, 7),
            (2, 1, 7),
            (4, 2, 9),
            (2, 3, 4),
            (11, 4, 12),
            (0, 5, 6),
            (1, 6, 12),
            (8, 7, 9),
            (0, 8, 3),
            (8, 9, 10),
            (5, 10, 11),
            (3, 11, 6),
            (5, 12, 10),
        ],
    )
}

/// Factor distance {1,2} on 13 vertices; the triangle 0-1-2 has all three
/// edges trapped.
pub fn planted_trapped_triangle() -> Planted {
    planted(
        13,
        &circulant_pairs(13, &[1, 2]),
        &[
            (5, 0, 10),
            (5, 1, 8),
            (6, 2, 12),
            (9, 3, 12),
            (7, 4, 10),
            (8, 5, 11),
            (0, 6, 1),
            (0, 7, 2),
            (3, 8, 11),
            (1, 9, 2),
            (3, 10, 6),
            (4, 11, 7),
            (4, 12, 9),
        ],
    )
}

/// Factor containing the complete graph on {0,1,2,3}; the 4-cycle
/// 0-1-2-3 is trapped while both diagonals stay untrapped factor edges,
/// the trapped-K4 pattern.
pub fn planted_trapped_k4() -> Planted {
    let f2 = [
        (0, 1),
        (0, 2),
        (0, 3),
        (0, 4),
        (1, 2),
        (1, 3),
        (1, 5),
        (2, 3),
        (2, 6),
        (3, 7),
        (4, 5),
        (4, 9),
        (4, 11),
        (5, 6),
        (5, 11),
        (6, 8),
        (6, 12),
        (7, 8),
        (7, 9),
        (7, 10),
        (8, 10),
        (8, 12),
        (9, 11),
        (9, 12),
        (10, 11),
        (10, 12),
    ];
    planted(
        13,
        &f2,
        &[
            (5, 0, 9),
            (7, 1, 11),
            (4, 2, 8),
            (5, 3, 12),
            (7, 4, 12),
            (8, 5, 9),
            (4, 6, 10),
            (6, 7, 11),
            (0, 8, 3),
            (6, 9, 10),
            (0, 10, 1),
            (2, 11, 3),
            (1, 12, 2),
        ],
    )
}

/// Factor containing K4-minus-an-edge on {0,1,2,3}; the 4-cycle is trapped
/// and exactly one diagonal (0-2) is a factor edge, the bowtie pattern.
pub fn planted_bowtie() -> Planted {
    let f2 = [
        (0, 1),
        (0, 2),
        (0, 3),
        (0, 4),
        (1, 2),
        (1, 6),
        (1, 7),
        (2, 3),
        (2, 5),
        (3, 8),
        (3, 9),
        (4, 5),
        (4, 8),
        (4, 12),
        (5, 9),
        (5, 10),
        (6, 7),
        (6, 11),
        (6, 12),
        (7, 11),
        (7, 12),
        (8, 10),
        (8, 12),
        (9, 10),
        (9, 11),
        (10, 11),
    ];
    planted(
        13,
        &f2,
        &[
            (7, 0, 10),
            (9, 1, 12),
            (8, 2, 11),
            (5, 3, 12),
            (6, 4, 10),
            (7, 5, 8),
            (2, 6, 3),
            (4, 7, 9),
            (0, 8, 1),
            (4, 9, 6),
            (1, 10, 2),
            (0, 11, 3),
            (5, 12, 11),
        ],
    )
}

/// Factor distance {1,2} on 13 vertices; the spine 4-5-6-7 is trapped with
/// chords 4-6 and 5-7 present, an open run of two triangles.
pub fn planted_open_chain() -> Planted {
    planted(
        13,
        &circulant_pairs(13, &[1, 2]),
        &[
            (4, 0, 5),
            (4, 1, 10),
            (7, 2, 11),
            (0, 3, 10),
            (8, 4, 12),
            (2, 5, 9),
            (1, 6, 9),
            (0, 7, 3),
            (1, 8, 11),
            (3, 9, 12),
            (6, 10, 7),
            (5, 11, 6),
            (2, 12, 8),
        ],
    )
}

/// Factor distance {3,4} on 13 vertices; two paths share the end-pair
/// {0,4}, so the factor edge 0-4 is trapped twice.
pub fn planted_double_trapped() -> Planted {
    planted(
        13,
        &circulant_pairs(13, &[3, 4]),
        &[
            (5, 0, 6),
            (7, 1, 8),
            (0, 2, 4),
            (9, 3, 11),
            (5, 4, 12),
            (3, 5, 10),
            (1, 6, 8),
            (6, 7, 12),
            (7, 8, 9),
            (1, 9, 2),
            (2, 10, 3),
            (0, 11, 4),
            (10, 12, 11),
        ],
    )
}
