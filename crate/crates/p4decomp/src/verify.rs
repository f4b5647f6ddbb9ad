//! Independent validation, a brute-force reference decomposer, and a batch
//! driver.
//!
//! Nothing here trusts the pipeline: [`verify_decomposition`] re-derives
//! every edge from vertex sequences alone, and [`brute_force_decompose`]
//! searches for a decomposition by exact cover, so the two sides can be
//! played against each other on small instances.

use std::time::Instant;

use crate::completion::decompose_traced;
use crate::graph::{generate_random_regular, EdgeId, Graph, TrackingDecomposition, Vertex};

/// Largest vertex count the brute-force search accepts by default.
pub const ORACLE_LIMIT: usize = 12;

/// The five properties a claimed decomposition is checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    Cover,
    EdgeDisjoint,
    Pathness,
    Length4,
    Balance,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Cover => "cover",
            Check::EdgeDisjoint => "edge_disjoint",
            Check::Pathness => "pathness",
            Check::Length4 => "length4",
            Check::Balance => "balance",
        }
    }
}

/// One way a claimed decomposition fails, with its witness.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Flaw {
    #[error("edge {e} = {u}-{v} is covered by no path")]
    Uncovered { e: EdgeId, u: Vertex, v: Vertex },
    #[error("paths {first} and {second} both cover edge {e}")]
    RepeatedEdge {
        e: EdgeId,
        first: usize,
        second: usize,
    },
    #[error("path {index} names vertex {v}, which the graph does not have")]
    UnknownVertex { index: usize, v: Vertex },
    #[error("path {index} repeats a vertex")]
    RepeatedVertex { index: usize },
    #[error("path {index} steps from {u} to {v}, but that edge does not exist")]
    MissingEdge { index: usize, u: Vertex, v: Vertex },
    #[error("path {index} has {len} vertices instead of 5")]
    WrongLength { index: usize, len: usize },
    #[error("vertex {v} is an end of {count} paths, expected 2")]
    Unbalanced { v: Vertex, count: usize },
}

impl Flaw {
    pub fn check(&self) -> Check {
        match self {
            Flaw::Uncovered { .. } => Check::Cover,
            Flaw::RepeatedEdge { .. } => Check::EdgeDisjoint,
            Flaw::UnknownVertex { .. } | Flaw::RepeatedVertex { .. } | Flaw::MissingEdge { .. } => {
                Check::Pathness
            }
            Flaw::WrongLength { .. } => Check::Length4,
            Flaw::Unbalanced { .. } => Check::Balance,
        }
    }
}

/// Everything [`verify_decomposition`] found wrong, empty when the claim
/// holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub failures: Vec<Flaw>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that `paths` decomposes `g` into 4-edge paths in which every
/// vertex ends exactly two of them. Works from the vertex sequences alone
/// and reports every failure it finds. A sequence of the wrong length is
/// reported once and otherwise ignored, so the remaining checks still run.
pub fn verify_decomposition(g: &Graph, paths: &[Vec<Vertex>]) -> VerifyReport {
    let mut failures = Vec::new();
    let n = g.vertex_count();
    let mut covered_by: Vec<Option<usize>> = vec![None; g.edge_count()];
    let mut ends = vec![0usize; n];
    for (index, p) in paths.iter().enumerate() {
        if p.len() != 5 {
            failures.push(Flaw::WrongLength {
                index,
                len: p.len(),
            });
            continue;
        }
        if let Some(&v) = p.iter().find(|&&v| v >= n) {
            failures.push(Flaw::UnknownVertex { index, v });
            continue;
        }
        let mut sorted = p.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            failures.push(Flaw::RepeatedVertex { index });
        }
        for w in p.windows(2) {
            let (u, v) = (w[0], w[1]);
            match g.edge_id(u, v) {
                None => failures.push(Flaw::MissingEdge { index, u, v }),
                Some(e) => match covered_by[e] {
                    Some(first) => failures.push(Flaw::RepeatedEdge {
                        e,
                        first,
                        second: index,
                    }),
                    None => covered_by[e] = Some(index),
                },
            }
        }
        ends[p[0]] += 1;
        ends[p[4]] += 1;
    }
    for (e, slot) in covered_by.iter().enumerate() {
        if slot.is_none() {
            let (u, v) = g.endpoints(e);
            failures.push(Flaw::Uncovered { e, u, v });
        }
    }
    for (v, &count) in ends.iter().enumerate() {
        if count != 2 {
            failures.push(Flaw::Unbalanced { v, count });
        }
    }
    VerifyReport { failures }
}

/// [`verify_decomposition`] applied to a tracking decomposition.
pub fn verify_trackings(g: &Graph, b: &TrackingDecomposition) -> VerifyReport {
    let paths: Vec<Vec<Vertex>> = b.trackings.iter().map(|t| t.v.to_vec()).collect();
    verify_decomposition(g, &paths)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("brute force is limited to {limit} vertices, the graph has {vertices}")]
    TooLarge { vertices: usize, limit: usize },
}

/// Finds a decomposition of `g` into 4-edge paths ending twice at every
/// vertex, by backtracking over the lowest uncovered edge, or proves there
/// is none. Refuses graphs with more than `limit` vertices; the search is
/// exhaustive, so the cost grows steeply past [`ORACLE_LIMIT`].
pub fn brute_force_decompose(
    g: &Graph,
    limit: usize,
) -> Result<Option<Vec<[Vertex; 5]>>, VerifyError> {
    let n = g.vertex_count();
    if n > limit {
        return Err(VerifyError::TooLarge { vertices: n, limit });
    }
    let m = g.edge_count();
    if !m.is_multiple_of(4) || m != 4 * n {
        return Ok(None);
    }
    let mut state = Search {
        g,
        covered: vec![false; m],
        uncovered_degree: (0..n).map(|v| g.degree(v)).collect(),
        end_slots: vec![2usize; n],
        chosen: Vec::with_capacity(n),
    };
    if !(0..n).all(|v| state.feasible(v)) {
        return Ok(None);
    }
    Ok(if state.run() {
        Some(state.chosen)
    } else {
        None
    })
}

struct Search<'a> {
    g: &'a Graph,
    covered: Vec<bool>,
    uncovered_degree: Vec<usize>,
    end_slots: Vec<usize>,
    chosen: Vec<[Vertex; 5]>,
}

impl Search<'_> {
    /// Every path at `v` spends two uncovered edges per interior visit and
    /// one per end, and ends are fixed at two per vertex, so the uncovered
    /// degree must stay at least the remaining end slots and match their
    /// parity.
    fn feasible(&self, v: Vertex) -> bool {
        let d = self.uncovered_degree[v];
        let s = self.end_slots[v];
        d >= s && (d - s).is_multiple_of(2)
    }

    fn run(&mut self) -> bool {
        let Some(e) = self.covered.iter().position(|&c| !c) else {
            return true;
        };
        for p in self.candidates_through(e) {
            self.apply(&p);
            self.chosen.push(p);
            if p.iter().all(|&v| self.feasible(v)) && self.run() {
                return true;
            }
            self.chosen.pop();
            self.undo(&p);
        }
        false
    }

    /// All 4-edge paths over uncovered edges that contain edge `e`, each
    /// listed once with its smaller end first, in sorted order.
    fn candidates_through(&self, e: EdgeId) -> Vec<[Vertex; 5]> {
        let (a, b) = self.g.endpoints(e);
        let mut out = Vec::new();
        for (p, q) in [(a, b), (b, a)] {
            for pos in 0..4 {
                let mut walk = [usize::MAX; 5];
                walk[pos] = p;
                walk[pos + 1] = q;
                self.extend(&mut walk, pos, pos + 1, e, &mut out);
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    fn extend(
        &self,
        walk: &mut [Vertex; 5],
        lo: usize,
        hi: usize,
        seed_edge: EdgeId,
        out: &mut Vec<[Vertex; 5]>,
    ) {
        if lo == 0 && hi == 4 {
            if walk[0] < walk[4] && self.admissible(walk, seed_edge) {
                out.push(*walk);
            }
            return;
        }
        if lo > 0 {
            for &(w, _) in self.g.neighbors(walk[lo]) {
                if !walk.contains(&w) {
                    walk[lo - 1] = w;
                    self.extend(walk, lo - 1, hi, seed_edge, out);
                    walk[lo - 1] = usize::MAX;
                }
            }
        } else {
            for &(w, _) in self.g.neighbors(walk[hi]) {
                if !walk.contains(&w) {
                    walk[hi + 1] = w;
                    self.extend(walk, lo, hi + 1, seed_edge, out);
                    walk[hi + 1] = usize::MAX;
                }
            }
        }
    }

    fn admissible(&self, walk: &[Vertex; 5], seed_edge: EdgeId) -> bool {
        if self.end_slots[walk[0]] == 0 || self.end_slots[walk[4]] == 0 {
            return false;
        }
        let mut uses_seed = false;
        for w in walk.windows(2) {
            let e = self
                .g
                .edge_id(w[0], w[1])
                .expect("walk steps along edges of the graph");
            if self.covered[e] {
                return false;
            }
            uses_seed |= e == seed_edge;
        }
        uses_seed
    }

    fn apply(&mut self, p: &[Vertex; 5]) {
        for w in p.windows(2) {
            let e = self.g.edge_id(w[0], w[1]).expect("edge exists");
            self.covered[e] = true;
            self.uncovered_degree[w[0]] -= 1;
            self.uncovered_degree[w[1]] -= 1;
        }
        self.end_slots[p[0]] -= 1;
        self.end_slots[p[4]] -= 1;
    }

    fn undo(&mut self, p: &[Vertex; 5]) {
        for w in p.windows(2) {
            let e = self.g.edge_id(w[0], w[1]).expect("edge exists");
            self.covered[e] = false;
            self.uncovered_degree[w[0]] += 1;
            self.uncovered_degree[w[1]] += 1;
        }
        self.end_slots[p[0]] += 1;
        self.end_slots[p[4]] += 1;
    }
}

/// Summary counters for one decomposed instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatchStats {
    pub paths: usize,
    pub closed_walks_removed: usize,
    pub rewrites: usize,
    pub switches: usize,
}

/// Failure record carrying enough to reproduce the instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatchFailure {
    pub reason: String,
    pub edge_list: String,
}

/// Result of decomposing and verifying one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatchEntry {
    pub name: String,
    pub vertices: usize,
    pub edges: usize,
    pub millis: u128,
    pub outcome: Result<BatchStats, BatchFailure>,
}

/// Decomposes and independently verifies every instance in order. The
/// `corrupt` hook, when present, mutates each decomposition before
/// verification; it exists so tests can prove the verifier catches damage.
pub fn run_batch(
    graphs: impl IntoIterator<Item = (String, Graph)>,
    corrupt: Option<&dyn Fn(&mut TrackingDecomposition)>,
) -> Vec<BatchEntry> {
    let mut entries = Vec::new();
    for (name, g) in graphs {
        let start = Instant::now();
        let outcome = match decompose_traced(&g) {
            Err(err) => Err(BatchFailure {
                reason: err.to_string(),
                edge_list: g.to_edge_list(),
            }),
            Ok((mut b, trace)) => {
                if let Some(f) = corrupt {
                    f(&mut b);
                }
                let report = verify_trackings(&g, &b);
                if report.ok() {
                    Ok(BatchStats {
                        paths: b.len(),
                        closed_walks_removed: trace.closed_walks.len() - 1,
                        rewrites: trace.open_paths.len() - 1,
                        switches: trace.resolutions.len() - 1,
                    })
                } else {
                    let reasons: Vec<String> =
                        report.failures.iter().map(|f| f.to_string()).collect();
                    Err(BatchFailure {
                        reason: reasons.join("; "),
                        edge_list: g.to_edge_list(),
                    })
                }
            }
        };
        entries.push(BatchEntry {
            name,
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            millis: start.elapsed().as_millis(),
            outcome,
        });
    }
    entries
}

/// Generates `count` random 8-regular graphs for each order in `n_list` and
/// decomposes and verifies all of them. Instance `i` of order `n` is seeded
/// with `seed + (n << 20) + i`, so a fixed seed fixes the whole batch.
pub fn batch(n_list: &[usize], count: usize, seed: u64) -> Vec<BatchEntry> {
    let mut entries = Vec::new();
    for &n in n_list {
        for i in 0..count {
            let s = seed.wrapping_add((n as u64) << 20).wrapping_add(i as u64);
            let name = format!("random-8-regular(n={n}, seed={s})");
            match generate_random_regular(n, 8, s) {
                Ok(g) => entries.extend(run_batch([(name, g)], None)),
                Err(err) => entries.push(BatchEntry {
                    name,
                    vertices: n,
                    edges: 0,
                    millis: 0,
                    outcome: Err(BatchFailure {
                        reason: err.to_string(),
                        edge_list: String::new(),
                    }),
                }),
            }
        }
    }
    entries
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completion::decompose;
    use crate::graph::{complete, named_instance, Graph};

    fn rows(paths: &[[Vertex; 5]]) -> Vec<Vec<Vertex>> {
        paths.iter().map(|p| p.to_vec()).collect()
    }

    fn paths_of(g: &Graph) -> Vec<Vec<Vertex>> {
        decompose(g)
            .unwrap()
            .trackings
            .iter()
            .map(|t| t.v.to_vec())
            .collect()
    }

    #[test]
    fn accepts_pipeline_output_and_reversals() {
        let g = named_instance("K9").unwrap();
        let mut paths = paths_of(&g);
        assert!(verify_decomposition(&g, &paths).ok());
        paths[0].reverse();
        assert!(verify_decomposition(&g, &paths).ok());
    }

    #[test]
    fn flags_each_kind_of_damage() {
        let g = named_instance("K9").unwrap();
        let good = paths_of(&g);

        let mut copied = good.clone();
        copied[0] = copied[1].clone();
        let report = verify_decomposition(&g, &copied);
        assert!(report
            .failures
            .iter()
            .any(|f| matches!(f, Flaw::RepeatedEdge { .. })));
        assert!(report
            .failures
            .iter()
            .any(|f| matches!(f, Flaw::Uncovered { .. })));

        let mut short = good.clone();
        short.pop();
        let report = verify_decomposition(&g, &short);
        let uncovered = report
            .failures
            .iter()
            .filter(|f| matches!(f, Flaw::Uncovered { .. }))
            .count();
        assert_eq!(uncovered, 4);
        assert!(report
            .failures
            .iter()
            .any(|f| matches!(f, Flaw::Unbalanced { .. })));

        let mut strange = good.clone();
        strange[0][0] = 99;
        assert!(verify_decomposition(&g, &strange)
            .failures
            .iter()
            .any(|f| matches!(f, Flaw::UnknownVertex { index: 0, v: 99 })));

        let mut folded = good.clone();
        folded[0][0] = folded[0][2];
        assert!(verify_decomposition(&g, &folded)
            .failures
            .iter()
            .any(|f| matches!(f, Flaw::RepeatedVertex { index: 0 })));

        let mut truncated = good.clone();
        truncated[3].pop();
        assert!(verify_decomposition(&g, &truncated)
            .failures
            .iter()
            .any(|f| matches!(f, Flaw::WrongLength { index: 3, len: 4 })));

        let mut detached = good;
        let was = detached[0][0];
        detached[0][0] = detached[0][4];
        let report = verify_decomposition(&g, &detached);
        assert!(!report.ok());
        assert!(
            report.failures.iter().any(|f| matches!(
                f,
                Flaw::Unbalanced { v, .. } if *v == was
            )) || report
                .failures
                .iter()
                .any(|f| matches!(f, Flaw::RepeatedVertex { .. }))
        );
    }

    #[test]
    fn every_flaw_names_its_check() {
        let flaws = [
            (Flaw::Uncovered { e: 0, u: 0, v: 1 }, "cover"),
            (
                Flaw::RepeatedEdge {
                    e: 0,
                    first: 0,
                    second: 1,
                },
                "edge_disjoint",
            ),
            (
                Flaw::MissingEdge {
                    index: 0,
                    u: 0,
                    v: 5,
                },
                "pathness",
            ),
            (Flaw::WrongLength { index: 0, len: 4 }, "length4"),
            (Flaw::Unbalanced { v: 0, count: 3 }, "balance"),
        ];
        for (flaw, name) in flaws {
            assert_eq!(flaw.check().name(), name);
        }
    }

    #[test]
    fn brute_force_solves_k9() {
        let g = complete(9).unwrap();
        let paths = brute_force_decompose(&g, ORACLE_LIMIT).unwrap().unwrap();
        assert!(verify_decomposition(&g, &rows(&paths)).ok());
    }

    #[test]
    fn brute_force_refuses_large_graphs() {
        let g = named_instance("CIRC(13;1,2,3,4)").unwrap();
        assert_eq!(
            brute_force_decompose(&g, ORACLE_LIMIT),
            Err(VerifyError::TooLarge {
                vertices: 13,
                limit: 12
            })
        );
    }

    #[test]
    fn brute_force_rejects_two_squares() {
        let edges = [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 0),
            (4, 5),
            (5, 6),
            (6, 7),
            (7, 4),
        ];
        let g = Graph::from_edges(8, &edges).unwrap();
        assert_eq!(brute_force_decompose(&g, ORACLE_LIMIT), Ok(None));
    }

    #[test]
    fn brute_force_rejects_wrong_edge_counts() {
        let g = complete(3).unwrap();
        assert_eq!(brute_force_decompose(&g, ORACLE_LIMIT), Ok(None));
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(brute_force_decompose(&g, ORACLE_LIMIT), Ok(None));
    }

    #[test]
    fn brute_force_agrees_with_the_pipeline_on_small_graphs() {
        for (n, seed) in [(10, 0), (10, 1), (12, 2)] {
            let g = generate_random_regular(n, 8, seed).unwrap();
            let found = brute_force_decompose(&g, ORACLE_LIMIT).unwrap().unwrap();
            assert!(verify_decomposition(&g, &rows(&found)).ok());
            assert!(verify_decomposition(&g, &paths_of(&g)).ok());
        }
    }

    #[test]
    fn batch_reports_stats_and_catches_corruption() {
        let graphs = || {
            vec![
                ("K9".to_string(), named_instance("K9").unwrap()),
                (
                    "CIRC(13;1,2,3,4)".to_string(),
                    named_instance("CIRC(13;1,2,3,4)").unwrap(),
                ),
            ]
        };
        let clean = run_batch(graphs(), None);
        assert_eq!(clean.len(), 2);
        for entry in &clean {
            let stats = entry.outcome.as_ref().unwrap();
            assert_eq!(stats.paths, entry.vertices);
        }

        let sabotage = |b: &mut TrackingDecomposition| {
            b.trackings[0] = b.trackings[1].clone();
        };
        let broken = run_batch(graphs(), Some(&sabotage));
        for entry in &broken {
            let failure = entry.outcome.as_ref().unwrap_err();
            assert!(failure.reason.contains("edge"), "{}", failure.reason);
            assert!(!failure.edge_list.is_empty());
        }
    }

    #[test]
    fn seeded_batches_are_deterministic() {
        let first = batch(&[10, 14], 2, 7);
        let second = batch(&[10, 14], 2, 7);
        assert_eq!(first.len(), 4);
        for (a, b) in first.iter().zip(&second) {
            assert_eq!(a.name, b.name);
            assert_eq!(a.outcome, b.outcome);
            assert!(a.outcome.is_ok(), "{:?}", a.outcome);
        }
    }
}
