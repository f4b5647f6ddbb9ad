//! Simple undirected graphs with dense vertex and edge ids.
//!
//! Vertices are `0..n`, edges are `0..m` in insertion order. All pipeline
//! stages address edges by id so that factor membership, orientations and
//! trackings can be stored as flat vectors.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Vertex = usize;
pub type EdgeId = usize;

/// Errors produced while reading or constructing graphs.
#[derive(Debug, thiserror::Error)]
pub enum GraphError {
    #[error("line {line}: expected two vertex ids, got {got:?}")]
    MalformedEdge { line: usize, got: String },
    #[error("line {line}: invalid vertex id {token:?}")]
    BadVertexId { line: usize, token: String },
    #[error("line {line}: self-loop at vertex {v}")]
    SelfLoop { line: usize, v: Vertex },
    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: Vertex, v: Vertex },
    #[error("header declares {declared} edges but {found} were listed")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("vertex {v} has degree {degree}, expected {expected}")]
    NotRegular {
        v: Vertex,
        degree: usize,
        expected: usize,
    },
    #[error("unknown named instance {0:?}")]
    UnknownInstance(String),
    #[error("invalid instance parameters: {0}")]
    BadParameters(String),
}

/// An undirected simple graph.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<(Vertex, EdgeId)>>,
    index: HashMap<(Vertex, Vertex), EdgeId>,
}

impl Graph {
    /// Creates an empty graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
            index: HashMap::new(),
        }
    }

    /// Builds a graph from an edge list, assigning edge ids in list order.
    pub fn from_edges(n: usize, list: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n);
        for &(u, v) in list {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Inserts the edge `uv` and returns its id.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<EdgeId, GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop { line: 0, v: u });
        }
        let key = (u.min(v), u.max(v));
        if self.index.contains_key(&key) {
            return Err(GraphError::DuplicateEdge {
                line: 0,
                u: key.0,
                v: key.1,
            });
        }
        let grow = key.1 + 1;
        if grow > self.n {
            self.n = grow;
            self.adj.resize(self.n, Vec::new());
        }
        let id = self.edges.len();
        self.edges.push(key);
        self.adj[u].push((v, id));
        self.adj[v].push((u, id));
        self.index.insert(key, id);
        Ok(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Endpoints of edge `e` with the smaller vertex first.
    pub fn endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    /// Neighbors of `v` paired with the connecting edge id, in insertion order.
    pub fn neighbors(&self, v: Vertex) -> &[(Vertex, EdgeId)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    /// Looks up the id of edge `uv`, if present.
    pub fn edge_id(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        self.index.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_id(u, v).is_some()
    }

    /// Given one endpoint of `e`, returns the other.
    pub fn other_end(&self, e: EdgeId, v: Vertex) -> Vertex {
        let (a, b) = self.edges[e];
        if v == a {
            b
        } else {
            debug_assert_eq!(v, b);
            a
        }
    }

    /// Checks that every vertex has degree exactly `k`.
    pub fn validate_regular(&self, k: usize) -> Result<(), GraphError> {
        for v in 0..self.n {
            if self.adj[v].len() != k {
                return Err(GraphError::NotRegular {
                    v,
                    degree: self.adj[v].len(),
                    expected: k,
                });
            }
        }
        Ok(())
    }

    /// Connected components as sorted vertex lists, isolated vertices included.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &(w, _) in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Serializes the graph in the text edge-list format read by [`load_graph`].
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "p {} {}", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }
}

/// Parses the text edge-list format: an optional `p <n> <m>` header, one
/// `u v` pair per line, `#` starting a comment. Vertex ids are 0-based.
pub fn load_graph(text: &str) -> Result<Graph, GraphError> {
    let mut g = Graph::new(0);
    let mut declared: Option<(usize, usize)> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut tokens = body.split_whitespace();
        let first = tokens.next().unwrap();
        if first == "p" && declared.is_none() && g.edge_count() == 0 {
            let n = parse_id(tokens.next(), line)?;
            let m = parse_id(tokens.next(), line)?;
            if tokens.next().is_some() {
                return Err(GraphError::MalformedEdge {
                    line,
                    got: body.to_string(),
                });
            }
            declared = Some((n, m));
            g.n = g.n.max(n);
            g.adj.resize(g.n, Vec::new());
            continue;
        }
        let u = parse_token(first, line)?;
        let v = parse_id(tokens.next(), line)?;
        if tokens.next().is_some() {
            return Err(GraphError::MalformedEdge {
                line,
                got: body.to_string(),
            });
        }
        g.add_edge(u, v).map_err(|e| at_line(e, line))?;
    }
    if let Some((_, m)) = declared {
        if m != g.edge_count() {
            return Err(GraphError::EdgeCountMismatch {
                declared: m,
                found: g.edge_count(),
            });
        }
    }
    Ok(g)
}

fn parse_id(token: Option<&str>, line: usize) -> Result<usize, GraphError> {
    match token {
        Some(t) => parse_token(t, line),
        None => Err(GraphError::MalformedEdge {
            line,
            got: String::new(),
        }),
    }
}

fn parse_token(token: &str, line: usize) -> Result<usize, GraphError> {
    token.parse().map_err(|_| GraphError::BadVertexId {
        line,
        token: token.to_string(),
    })
}

fn at_line(e: GraphError, line: usize) -> GraphError {
    match e {
        GraphError::SelfLoop { v, .. } => GraphError::SelfLoop { line, v },
        GraphError::DuplicateEdge { u, v, .. } => GraphError::DuplicateEdge { line, u, v },
        other => other,
    }
}

/// Builds one of the named test instances.
///
/// * `K9` — the complete graph on 9 vertices.
/// * `K88` — the complete bipartite graph on 8+8 vertices.
/// * `CIRC(n;1,2,3,4)` — the circulant on `n >= 9` vertices with offsets 1..4.
pub fn named_instance(name: &str) -> Result<Graph, GraphError> {
    let squashed: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    match squashed.as_str() {
        "K9" => complete(9),
        "K88" | "K8,8" => complete_bipartite(8, 8),
        other => {
            if let Some(rest) = other.strip_prefix("CIRC(") {
                let inner = rest
                    .strip_suffix(')')
                    .ok_or_else(|| GraphError::UnknownInstance(name.to_string()))?;
                let (n_str, offsets) = inner
                    .split_once(';')
                    .ok_or_else(|| GraphError::UnknownInstance(name.to_string()))?;
                if offsets != "1,2,3,4" {
                    return Err(GraphError::BadParameters(format!(
                        "unsupported circulant offsets {offsets:?}"
                    )));
                }
                let n: usize = n_str
                    .parse()
                    .map_err(|_| GraphError::BadParameters(format!("bad size {n_str:?}")))?;
                circulant_1234(n)
            } else {
                Err(GraphError::UnknownInstance(name.to_string()))
            }
        }
    }
}

/// Complete graph on `n` vertices.
pub fn complete(n: usize) -> Result<Graph, GraphError> {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v)?;
        }
    }
    Ok(g)
}

/// Complete bipartite graph with sides of size `a` and `b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph, GraphError> {
    let mut g = Graph::new(a + b);
    for u in 0..a {
        for v in 0..b {
            g.add_edge(u, a + v)?;
        }
    }
    Ok(g)
}

/// The 8-regular circulant on `n` vertices with offsets 1, 2, 3, 4.
pub fn circulant_1234(n: usize) -> Result<Graph, GraphError> {
    if n < 9 {
        return Err(GraphError::BadParameters(format!(
            "circulant with offsets 1..4 needs n >= 9, got {n}"
        )));
    }
    let mut g = Graph::new(n);
    for v in 0..n {
        for d in 1..=4 {
            let w = (v + d) % n;
            if !g.has_edge(v, w) {
                g.add_edge(v, w)?;
            }
        }
    }
    Ok(g)
}

/// Samples a `k`-regular simple graph on `n` vertices, deterministic for a
/// fixed seed. Starts from a circulant base and randomizes it with
/// degree-preserving double-edge swaps, so the walk never leaves the space of
/// simple `k`-regular graphs and always terminates — unlike stub-pairing with
/// rejection, which stalls for dense parameters like `k = n - 2`.
pub fn generate_random_regular(n: usize, k: usize, seed: u64) -> Result<Graph, GraphError> {
    if !(n * k).is_multiple_of(2) {
        return Err(GraphError::BadParameters(format!(
            "n*k must be even, got n={n} k={k}"
        )));
    }
    if k >= n {
        return Err(GraphError::BadParameters(format!(
            "need n > k for a simple k-regular graph, got n={n} k={k}"
        )));
    }
    let key = |u: Vertex, v: Vertex| (u.min(v), u.max(v));
    let mut present: HashSet<(Vertex, Vertex)> = HashSet::with_capacity(n * k / 2);
    let mut edges: Vec<(Vertex, Vertex)> = Vec::with_capacity(n * k / 2);
    for offset in 1..=k / 2 {
        for v in 0..n {
            let e = key(v, (v + offset) % n);
            if present.insert(e) {
                edges.push(e);
            }
        }
    }
    if k % 2 == 1 {
        // Odd k forces even n (n*k is even), so a diameter matching exists.
        for v in 0..n / 2 {
            let e = key(v, v + n / 2);
            if present.insert(e) {
                edges.push(e);
            }
        }
    }
    debug_assert_eq!(edges.len(), n * k / 2);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let target = 10 * edges.len();
    let mut swapped = 0;
    let mut proposals = 0;
    // On complete graphs every proposal is rejected, hence the attempt cap.
    while swapped < target && proposals < 100 * target {
        proposals += 1;
        let i = rng.gen_range(0..edges.len());
        let j = rng.gen_range(0..edges.len());
        let (a, b) = edges[i];
        let (mut c, mut d) = edges[j];
        if rng.gen::<bool>() {
            std::mem::swap(&mut c, &mut d);
        }
        if a == c || a == d || b == c || b == d {
            continue;
        }
        let (e1, e2) = (key(a, c), key(b, d));
        if present.contains(&e1) || present.contains(&e2) {
            continue;
        }
        present.remove(&key(a, b));
        present.remove(&key(c, d));
        present.insert(e1);
        present.insert(e2);
        edges[i] = e1;
        edges[j] = e2;
        swapped += 1;
    }

    edges.sort_unstable();
    let mut g = Graph::new(n);
    for (u, v) in edges {
        g.add_edge(u, v)?;
    }
    Ok(g)
}

/// A directed edge in the tracking/orientation sense: `tail -> head`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub tail: Vertex,
    pub head: Vertex,
}

/// An orientation of a subset of a graph's edges, indexed by edge id.
#[derive(Debug, Clone)]
pub struct Orientation {
    dir: Vec<Option<Arc>>,
}

impl Orientation {
    pub fn new(edge_count: usize) -> Self {
        Orientation {
            dir: vec![None; edge_count],
        }
    }

    pub fn set(&mut self, e: EdgeId, tail: Vertex, head: Vertex) {
        self.dir[e] = Some(Arc { tail, head });
    }

    pub fn get(&self, e: EdgeId) -> Option<Arc> {
        self.dir[e]
    }

    /// Direction of `e`, which must have been oriented.
    pub fn arc(&self, e: EdgeId) -> Arc {
        self.dir[e].expect("edge is not oriented")
    }

    pub fn is_oriented(&self, e: EdgeId) -> bool {
        self.dir[e].is_some()
    }

    pub fn reverse(&mut self, e: EdgeId) {
        if let Some(a) = self.dir[e] {
            self.dir[e] = Some(Arc {
                tail: a.head,
                head: a.tail,
            });
        }
    }

    /// Out-degree of `v` counting only edges in `subset`.
    pub fn out_degree_in(&self, v: Vertex, subset: &[EdgeId]) -> usize {
        subset
            .iter()
            .filter(|&&e| self.dir[e].map(|a| a.tail == v).unwrap_or(false))
            .count()
    }

    /// In-degree of `v` counting only edges in `subset`.
    pub fn in_degree_in(&self, v: Vertex, subset: &[EdgeId]) -> usize {
        subset
            .iter()
            .filter(|&&e| self.dir[e].map(|a| a.head == v).unwrap_or(false))
            .count()
    }
}

/// A closed or open walk of four pairwise-distinct edges, stored as its
/// vertex sequence plus the edge ids it uses.
///
/// The end edges carry an implicit direction used for all end-vertex
/// bookkeeping: the first edge points from `v[1]` to `v[0]` and the last
/// from `v[3]` to `v[4]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tracking {
    pub v: [Vertex; 5],
    pub e: [EdgeId; 4],
}

/// Coarse shape of a tracking, determined by which end vertices coincide.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrackingKind {
    /// All five vertices distinct.
    Path,
    /// The first vertex closes a triangle onto the fourth (`v[0] == v[3]`).
    TriangleAtStart,
    /// The last vertex closes a triangle onto the second (`v[4] == v[1]`).
    TriangleAtEnd,
    /// Closed walk on four vertices (`v[0] == v[4]`).
    Cycle,
}

impl Tracking {
    /// Builds a tracking over `g`, checking that consecutive vertices are
    /// adjacent and that the four edges are pairwise distinct.
    pub fn new(g: &Graph, v: [Vertex; 5]) -> Option<Tracking> {
        let mut e = [0; 4];
        for i in 0..4 {
            e[i] = g.edge_id(v[i], v[i + 1])?;
        }
        for i in 0..4 {
            for j in i + 1..4 {
                if e[i] == e[j] {
                    return None;
                }
            }
        }
        Some(Tracking { v, e })
    }

    /// The same walk traversed backwards.
    pub fn reversed(&self) -> Tracking {
        Tracking {
            v: [self.v[4], self.v[3], self.v[2], self.v[1], self.v[0]],
            e: [self.e[3], self.e[2], self.e[1], self.e[0]],
        }
    }

    pub fn kind(&self) -> TrackingKind {
        if self.v[0] == self.v[4] {
            TrackingKind::Cycle
        } else if self.v[0] == self.v[3] {
            TrackingKind::TriangleAtStart
        } else if self.v[4] == self.v[1] {
            TrackingKind::TriangleAtEnd
        } else {
            TrackingKind::Path
        }
    }

    pub fn is_path(&self) -> bool {
        self.kind() == TrackingKind::Path
    }

    pub fn is_cycle(&self) -> bool {
        self.kind() == TrackingKind::Cycle
    }

    pub fn contains_triangle(&self) -> bool {
        matches!(
            self.kind(),
            TrackingKind::TriangleAtStart | TrackingKind::TriangleAtEnd
        )
    }

    pub fn contains_vertex(&self, x: Vertex) -> bool {
        self.v.contains(&x)
    }

    /// End vertices, i.e. the heads of the two directed end edges.
    pub fn ends(&self) -> [Vertex; 2] {
        [self.v[0], self.v[4]]
    }
}

/// A collection of trackings together with the end-vertex bookkeeping used
/// by the decomposition engine.
#[derive(Debug, Clone, Default)]
pub struct TrackingDecomposition {
    pub trackings: Vec<Tracking>,
}

impl TrackingDecomposition {
    pub fn new(trackings: Vec<Tracking>) -> Self {
        TrackingDecomposition { trackings }
    }

    pub fn len(&self) -> usize {
        self.trackings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trackings.is_empty()
    }

    /// Number of trackings whose directed end edges point at `v`.
    pub fn end_count(&self, v: Vertex) -> usize {
        self.trackings
            .iter()
            .map(|t| t.ends().iter().filter(|&&x| x == v).count())
            .sum()
    }

    /// Number of distinct edges leaving `v` as a directed end edge of some
    /// tracking (the hanging edges at `v`).
    pub fn prehang(&self, v: Vertex) -> usize {
        self.trackings
            .iter()
            .map(|t| (t.v[1] == v) as usize + (t.v[3] == v) as usize)
            .sum()
    }

    /// Hanging edges at `v` as `(tracking index, end)` pairs, where end 0 is
    /// the `v[1] -> v[0]` edge and end 1 the `v[3] -> v[4]` edge.
    pub fn hanging_at(&self, v: Vertex) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, t) in self.trackings.iter().enumerate() {
            if t.v[1] == v {
                out.push((i, 0));
            }
            if t.v[3] == v {
                out.push((i, 1));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn load_graph_reads_header_comments_and_edges() {
        let g = load_graph("# triangle\np 3 3\n0 1\n1 2\n0 2\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.endpoints(0), (0, 1));
        assert_eq!(g.endpoints(2), (0, 2));
        assert!(g.has_edge(2, 1));
    }

    #[test]
    fn load_graph_rejects_duplicates_with_line_number() {
        let err = load_graph("0 1\n1 0\n").unwrap_err();
        match err {
            GraphError::DuplicateEdge { line, u, v } => {
                assert_eq!((line, u, v), (2, 0, 1));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn load_graph_rejects_self_loops_and_bad_tokens() {
        assert!(matches!(
            load_graph("3 3\n").unwrap_err(),
            GraphError::SelfLoop { line: 1, v: 3 }
        ));
        assert!(matches!(
            load_graph("0 x\n").unwrap_err(),
            GraphError::BadVertexId { line: 1, .. }
        ));
        assert!(matches!(
            load_graph("p 4 9\n0 1\n").unwrap_err(),
            GraphError::EdgeCountMismatch {
                declared: 9,
                found: 1
            }
        ));
    }

    #[test]
    fn edge_list_round_trips() {
        let g = named_instance("K9").unwrap();
        let text = g.to_edge_list();
        let h = load_graph(&text).unwrap();
        assert_eq!(h.edge_count(), g.edge_count());
        assert_eq!(h.edges(), g.edges());
    }

    #[test]
    fn named_instances_have_expected_shape() {
        let k9 = named_instance("K9").unwrap();
        assert_eq!((k9.vertex_count(), k9.edge_count()), (9, 36));
        k9.validate_regular(8).unwrap();

        let k88 = named_instance("K88").unwrap();
        assert_eq!((k88.vertex_count(), k88.edge_count()), (16, 64));
        k88.validate_regular(8).unwrap();

        let c13 = named_instance("CIRC(13;1,2,3,4)").unwrap();
        assert_eq!((c13.vertex_count(), c13.edge_count()), (13, 52));
        c13.validate_regular(8).unwrap();

        let c9 = named_instance("CIRC(9;1,2,3,4)").unwrap();
        assert_eq!(c9.edge_count(), 36);
        c9.validate_regular(8).unwrap();
    }

    #[test]
    fn named_instance_rejects_unknown_names_and_small_circulants() {
        assert!(matches!(
            named_instance("K10"),
            Err(GraphError::UnknownInstance(_))
        ));
        assert!(matches!(
            named_instance("CIRC(8;1,2,3,4)"),
            Err(GraphError::BadParameters(_))
        ));
    }

    #[test]
    fn random_regular_is_regular_and_deterministic() {
        let g = generate_random_regular(20, 8, 1).unwrap();
        assert_eq!(g.edge_count(), 80);
        g.validate_regular(8).unwrap();
        let h = generate_random_regular(20, 8, 1).unwrap();
        assert_eq!(g.edges(), h.edges());
        let k = generate_random_regular(20, 8, 2).unwrap();
        assert_ne!(g.edges(), k.edges());
    }

    #[test]
    fn random_regular_rejects_infeasible_parameters() {
        assert!(generate_random_regular(9, 9, 0).is_err());
        assert!(generate_random_regular(9, 10, 0).is_err());
        // odd n with odd k has odd stub count
        assert!(generate_random_regular(9, 5, 0).is_err());
    }

    #[test]
    fn validate_regular_reports_offending_vertex() {
        let g = load_graph("0 1\n1 2\n").unwrap();
        match g.validate_regular(2).unwrap_err() {
            GraphError::NotRegular {
                v,
                degree,
                expected,
            } => assert_eq!((v, degree, expected), (0, 1, 2)),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn components_split_disjoint_triangles() {
        let g = load_graph("0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n").unwrap();
        let comps = g.components();
        assert_eq!(comps, vec![vec![0, 1, 2], vec![3, 4, 5]]);
    }

    #[test]
    fn tracking_shapes_are_classified() {
        let g = load_graph("0 1\n1 2\n2 3\n3 4\n3 0\n1 3\n").unwrap();
        let path = Tracking::new(&g, [0, 1, 2, 3, 4]).unwrap();
        assert_eq!(path.kind(), TrackingKind::Path);
        let tri_end = Tracking::new(&g, [0, 1, 2, 3, 1]).unwrap();
        assert_eq!(tri_end.kind(), TrackingKind::TriangleAtEnd);
        assert_eq!(tri_end.reversed().kind(), TrackingKind::TriangleAtStart);
        let cyc = Tracking::new(&g, [0, 1, 2, 3, 0]).unwrap();
        assert_eq!(cyc.kind(), TrackingKind::Cycle);
        // edge 1-2 reused
        assert!(Tracking::new(&g, [0, 1, 2, 1, 0]).is_none());
    }

    #[test]
    fn end_counts_follow_directed_end_edges() {
        let g = load_graph("0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n6 7\n7 8\n").unwrap();
        let d = TrackingDecomposition::new(vec![
            Tracking::new(&g, [0, 1, 2, 3, 4]).unwrap(),
            Tracking::new(&g, [4, 5, 6, 7, 8]).unwrap(),
        ]);
        assert_eq!(d.end_count(4), 2);
        assert_eq!(d.end_count(0), 1);
        assert_eq!(d.prehang(1), 1);
        assert_eq!(d.prehang(4), 0);
        assert_eq!(d.hanging_at(3), vec![(0, 1)]);
    }

    proptest! {
        #[test]
        fn tracking_reversal_is_an_involution(seed in 0u64..500) {
            let g = generate_random_regular(12, 8, seed).unwrap();
            // take any odd walk that forms a tracking, e.g. greedy from vertex 0
            let mut v = [0usize; 5];
            let mut used = Vec::new();
            let mut ok = true;
            for i in 0..4 {
                match g.neighbors(v[i]).iter().find(|(_, e)| !used.contains(e)) {
                    Some(&(w, e)) => {
                        v[i + 1] = w;
                        used.push(e);
                    }
                    None => { ok = false; break; }
                }
            }
            prop_assume!(ok);
            if let Some(t) = Tracking::new(&g, v) {
                prop_assert_eq!(t.reversed().reversed(), t.clone());
                let r = t.reversed();
                let mut e1 = t.e.to_vec();
                let mut e2 = r.e.to_vec();
                e1.sort_unstable();
                e2.sort_unstable();
                prop_assert_eq!(e1, e2);
            }
        }

        #[test]
        fn random_regular_stays_simple_and_regular(n in 5usize..30, seed in 0u64..50) {
            let n = n * 2; // even so n*8 is even regardless
            let g = generate_random_regular(n, 8, seed).unwrap();
            prop_assert_eq!(g.edge_count(), n * 4);
            g.validate_regular(8).unwrap();
        }
    }
}
