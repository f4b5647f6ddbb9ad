//! Splitting a 2k-regular graph into k spanning 2-regular factors.
//!
//! The route is classical: orient each component along an Eulerian circuit,
//! form the bipartite graph whose left side is the out-copy and right side
//! the in-copy of every vertex, and split that k-regular bipartite graph
//! into k perfect matchings. Each matching pulls back to a spanning union
//! of cycles, i.e. a 2-factor.

use crate::graph::{EdgeId, Graph, Orientation, Vertex};

/// Errors raised by the factorization stage.
#[derive(Debug, thiserror::Error)]
pub enum FactorizeError {
    #[error("vertex {v} has odd degree {degree}; Eulerian circuits need even degrees")]
    OddDegree { v: Vertex, degree: usize },
    #[error("graph is not {expected}-regular: vertex {v} has degree {degree}")]
    NotRegular {
        v: Vertex,
        degree: usize,
        expected: usize,
    },
    #[error("internal error in {stage}: {detail}")]
    Internal { stage: &'static str, detail: String },
}

/// One step of an Eulerian circuit: edge `e` traversed from `tail` to `head`.
#[derive(Debug, Clone, Copy)]
pub struct Step {
    pub e: EdgeId,
    pub tail: Vertex,
    pub head: Vertex,
}

/// Computes an Eulerian circuit for every component that has edges.
///
/// Fails if any vertex has odd degree. Traversal is Hierholzer's algorithm
/// with insertion-order adjacency cursors, so the result is deterministic.
pub fn eulerian_circuits(g: &Graph) -> Result<Vec<Vec<Step>>, FactorizeError> {
    for v in 0..g.vertex_count() {
        if !g.degree(v).is_multiple_of(2) {
            return Err(FactorizeError::OddDegree {
                v,
                degree: g.degree(v),
            });
        }
    }
    let mut used = vec![false; g.edge_count()];
    let mut cursor = vec![0usize; g.vertex_count()];
    let mut circuits = Vec::new();
    for start in 0..g.vertex_count() {
        if cursor[start] >= g.degree(start) || g.degree(start) == 0 {
            continue;
        }
        // skip vertices whose edges were consumed from another start
        if g.neighbors(start).iter().all(|&(_, e)| used[e]) {
            continue;
        }
        let mut stack: Vec<(Vertex, Option<Step>)> = vec![(start, None)];
        let mut walk: Vec<Step> = Vec::new();
        while let Some(&(v, incoming)) = stack.last() {
            let adj = g.neighbors(v);
            let mut advanced = false;
            while cursor[v] < adj.len() {
                let (w, e) = adj[cursor[v]];
                cursor[v] += 1;
                if !used[e] {
                    used[e] = true;
                    stack.push((
                        w,
                        Some(Step {
                            e,
                            tail: v,
                            head: w,
                        }),
                    ));
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                stack.pop();
                if let Some(step) = incoming {
                    walk.push(step);
                }
            }
        }
        walk.reverse();
        if !walk.is_empty() {
            circuits.push(walk);
        }
    }
    let total: usize = circuits.iter().map(|c| c.len()).sum();
    if total != g.edge_count() {
        return Err(FactorizeError::Internal {
            stage: "eulerian_circuits",
            detail: format!("covered {total} of {} edges", g.edge_count()),
        });
    }
    Ok(circuits)
}

/// Orients every edge along an Eulerian circuit of its component, giving
/// each vertex equal in- and out-degree.
pub fn eulerian_orientation(g: &Graph) -> Result<Orientation, FactorizeError> {
    let mut o = Orientation::new(g.edge_count());
    for circuit in eulerian_circuits(g)? {
        for step in circuit {
            o.set(step.e, step.tail, step.head);
        }
    }
    Ok(o)
}

/// A spanning 2-regular subgraph, stored as the ids of its edges.
#[derive(Debug, Clone)]
pub struct TwoFactor {
    pub edges: Vec<EdgeId>,
}

/// Splits a 2k-regular graph into k edge-disjoint 2-factors.
pub fn two_factorization(g: &Graph) -> Result<Vec<TwoFactor>, FactorizeError> {
    let degree = if g.vertex_count() == 0 {
        0
    } else {
        g.degree(0)
    };
    if degree % 2 != 0 {
        return Err(FactorizeError::OddDegree { v: 0, degree });
    }
    g.validate_regular(degree).map_err(|e| match e {
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
            stage: "two_factorization",
            detail: other.to_string(),
        },
    })?;
    let k = degree / 2;
    if k == 0 {
        return Ok(Vec::new());
    }

    let o = eulerian_orientation(g)?;
    // Bipartite edge i corresponds to graph edge i: tail's out-copy to
    // head's in-copy. Matchings over these indices pull straight back.
    let arcs: Vec<(Vertex, Vertex)> = (0..g.edge_count())
        .map(|e| {
            let a = o.arc(e);
            (a.tail, a.head)
        })
        .collect();
    let matchings = split_regular_bipartite(g.vertex_count(), &arcs, k)?;

    let factors: Vec<TwoFactor> = matchings
        .into_iter()
        .map(|edges| TwoFactor { edges })
        .collect();
    for f in &factors {
        debug_assert!(is_two_factor(g, &f.edges));
    }
    Ok(factors)
}

/// Splits a k-regular bipartite graph (given as `left -> right` arc pairs
/// over `n` vertices per side) into k perfect matchings of arc indices.
///
/// Even regularity is halved by walking an Eulerian circuit and alternating
/// sides; odd regularity first peels off one matching via augmenting paths.
fn split_regular_bipartite(
    n: usize,
    arcs: &[(Vertex, Vertex)],
    k: usize,
) -> Result<Vec<Vec<usize>>, FactorizeError> {
    if k == 0 {
        return Ok(Vec::new());
    }
    let ids: Vec<usize> = (0..arcs.len()).collect();
    let mut out = Vec::with_capacity(k);
    split_rec(n, arcs, &ids, k, &mut out)?;
    Ok(out)
}

fn split_rec(
    n: usize,
    arcs: &[(Vertex, Vertex)],
    ids: &[usize],
    k: usize,
    out: &mut Vec<Vec<usize>>,
) -> Result<(), FactorizeError> {
    match k {
        0 => Ok(()),
        1 => {
            out.push(ids.to_vec());
            Ok(())
        }
        _ if k.is_multiple_of(2) => {
            let (half_a, half_b) = euler_halve(n, arcs, ids)?;
            split_rec(n, arcs, &half_a, k / 2, out)?;
            split_rec(n, arcs, &half_b, k / 2, out)
        }
        _ => {
            let matched = bipartite_matching(n, arcs, ids)?;
            let rest: Vec<usize> = ids
                .iter()
                .copied()
                .filter(|i| !matched.contains(i))
                .collect();
            out.push(matched);
            split_rec(n, arcs, &rest, k - 1, out)
        }
    }
}

/// Splits an even-regular bipartite subgraph into two half-regular ones by
/// alternating edges along Eulerian circuits. Circuits in a bipartite graph
/// have even length, so the alternation is consistent at every vertex.
fn euler_halve(
    n: usize,
    arcs: &[(Vertex, Vertex)],
    ids: &[usize],
) -> Result<(Vec<usize>, Vec<usize>), FactorizeError> {
    // Build the bipartite graph on 2n vertices: left v -> v, right v -> n+v.
    let mut g = Graph::new(2 * n);
    let mut back = Vec::with_capacity(ids.len());
    for &i in ids {
        let (l, r) = arcs[i];
        g.add_edge(l, n + r).map_err(|e| FactorizeError::Internal {
            stage: "euler_halve",
            detail: e.to_string(),
        })?;
        back.push(i);
    }
    let mut a = Vec::new();
    let mut b = Vec::new();
    for circuit in eulerian_circuits(&g)? {
        if circuit.len() % 2 != 0 {
            return Err(FactorizeError::Internal {
                stage: "euler_halve",
                detail: "odd circuit in bipartite graph".into(),
            });
        }
        for (pos, step) in circuit.iter().enumerate() {
            if pos % 2 == 0 {
                a.push(back[step.e]);
            } else {
                b.push(back[step.e]);
            }
        }
    }
    Ok((a, b))
}

/// Finds a perfect matching in a regular bipartite subgraph by repeated
/// augmenting-path search, lowest arc id first.
fn bipartite_matching(
    n: usize,
    arcs: &[(Vertex, Vertex)],
    ids: &[usize],
) -> Result<Vec<usize>, FactorizeError> {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &i in ids {
        adj[arcs[i].0].push(i);
    }
    let mut match_left: Vec<Option<usize>> = vec![None; n]; // arc id per left vertex
    let mut match_right: Vec<Option<usize>> = vec![None; n];
    for start in 0..n {
        if adj[start].is_empty() {
            continue;
        }
        if match_left[start].is_some() {
            continue;
        }
        let mut visited = vec![false; n];
        if !augment(
            start,
            &adj,
            arcs,
            &mut match_left,
            &mut match_right,
            &mut visited,
        ) {
            return Err(FactorizeError::Internal {
                stage: "bipartite_matching",
                detail: format!("no augmenting path from vertex {start}"),
            });
        }
    }
    let mut m: Vec<usize> = match_left.into_iter().flatten().collect();
    m.sort_unstable();
    Ok(m)
}

fn augment(
    v: Vertex,
    adj: &[Vec<usize>],
    arcs: &[(Vertex, Vertex)],
    match_left: &mut Vec<Option<usize>>,
    match_right: &mut Vec<Option<usize>>,
    visited: &mut Vec<bool>,
) -> bool {
    for &i in &adj[v] {
        let r = arcs[i].1;
        if visited[r] {
            continue;
        }
        visited[r] = true;
        let free = match match_right[r] {
            None => true,
            Some(j) => augment(arcs[j].0, adj, arcs, match_left, match_right, visited),
        };
        if free {
            match_left[v] = Some(i);
            match_right[r] = Some(i);
            return true;
        }
    }
    false
}

/// True when `edges` meets every vertex of `g` exactly twice.
pub fn is_two_factor(g: &Graph, edges: &[EdgeId]) -> bool {
    let mut deg = vec![0usize; g.vertex_count()];
    for &e in edges {
        let (u, v) = g.endpoints(e);
        deg[u] += 1;
        deg[v] += 1;
    }
    deg.iter().all(|&d| d == 2)
}

/// The two 4-regular spanning factors of an 8-regular graph, each the union
/// of two 2-factors in production order.
#[derive(Debug, Clone)]
pub struct FourFactors {
    pub f1: Vec<EdgeId>,
    pub f2: Vec<EdgeId>,
}

/// Splits an 8-regular graph into two 4-regular spanning factors.
pub fn four_factors(g: &Graph) -> Result<FourFactors, FactorizeError> {
    g.validate_regular(8).map_err(|e| match e {
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
            stage: "four_factors",
            detail: other.to_string(),
        },
    })?;
    let factors = two_factorization(g)?;
    if factors.len() != 4 {
        return Err(FactorizeError::Internal {
            stage: "four_factors",
            detail: format!("expected 4 two-factors, got {}", factors.len()),
        });
    }
    let mut f1 = Vec::with_capacity(g.edge_count() / 2);
    let mut f2 = Vec::with_capacity(g.edge_count() / 2);
    f1.extend_from_slice(&factors[0].edges);
    f1.extend_from_slice(&factors[1].edges);
    f2.extend_from_slice(&factors[2].edges);
    f2.extend_from_slice(&factors[3].edges);
    f1.sort_unstable();
    f2.sort_unstable();
    Ok(FourFactors { f1, f2 })
}

/// Builds the subgraph of `g` induced by an edge-id subset, keeping vertex
/// ids. Edge ids in the result are positions into `edges`.
pub fn edge_subgraph(g: &Graph, edges: &[EdgeId]) -> Graph {
    let mut sub = Graph::new(g.vertex_count());
    for &e in edges {
        let (u, v) = g.endpoints(e);
        sub.add_edge(u, v).expect("edge subset of a simple graph");
    }
    sub
}
