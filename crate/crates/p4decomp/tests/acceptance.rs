//! The acceptance gate: one test — one pass/fail line — per claim the
//! library stands on. The corpus is decomposed once and shared, so the
//! criteria check different properties of the same runs.

mod common;

use std::sync::OnceLock;
use std::time::Instant;

use p4decomp::completion::decompose_traced;
use p4decomp::extension::{eliminate_cycles, initial_extensions, make_exceptional, tau};
use p4decomp::factorize::{edge_subgraph, four_factors, two_factorization};
use p4decomp::graph::{generate_random_regular, named_instance, Graph, TrackingDecomposition};
use p4decomp::orientation::{check_good, good_orientation};
use p4decomp::p2::balanced_p2_decomposition;
use p4decomp::trapped::analyze;
use p4decomp::verify::{brute_force_decompose, verify_trackings, ORACLE_LIMIT};
use p4decomp::StageTrace;

struct Solved {
    name: String,
    g: Graph,
    b: TrackingDecomposition,
    trace: StageTrace,
}

struct Corpus {
    solved: Vec<Solved>,
    elapsed_secs: f64,
}

fn corpus_graphs() -> Vec<(String, Graph)> {
    let mut graphs = vec![
        ("K9".to_string(), named_instance("K9").unwrap()),
        ("K8,8".to_string(), named_instance("K8,8").unwrap()),
    ];
    for n in 9..=50 {
        let name = format!("CIRC({n};1,2,3,4)");
        graphs.push((name.clone(), named_instance(&name).unwrap()));
    }
    for i in 0..500u64 {
        let n = 10 + (i as usize % 191);
        let seed = 0xACCE97 + i;
        graphs.push((
            format!("random-8-regular(n={n}, seed={seed})"),
            generate_random_regular(n, 8, seed).unwrap(),
        ));
    }
    graphs
}

fn corpus() -> &'static Corpus {
    static CORPUS: OnceLock<Corpus> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let started = Instant::now();
        let solved = corpus_graphs()
            .into_iter()
            .map(|(name, g)| {
                let (b, trace) =
                    decompose_traced(&g).unwrap_or_else(|e| panic!("{name} failed: {e}"));
                Solved { name, g, b, trace }
            })
            .collect();
        Corpus {
            solved,
            elapsed_secs: started.elapsed().as_secs_f64(),
        }
    })
}

#[test]
fn criterion_1_end_to_end_on_named_circulant_and_random_instances() {
    let corpus = corpus();
    assert_eq!(corpus.solved.len(), 2 + 42 + 500);
    for s in &corpus.solved {
        let report = verify_trackings(&s.g, &s.b);
        assert!(report.ok(), "{}: {:?}", s.name, report.failures);
    }
    assert!(
        corpus.elapsed_secs < 60.0,
        "decomposing the corpus took {:.1}s",
        corpus.elapsed_secs
    );
}

#[test]
fn criterion_2_every_vertex_ends_exactly_two_paths() {
    for s in &corpus().solved {
        for v in 0..s.g.vertex_count() {
            assert_eq!(s.b.end_count(v), 2, "{} vertex {v}", s.name);
        }
    }
}

#[test]
fn criterion_3_stage_invariants_hold_across_the_corpus() {
    for (name, g) in corpus_graphs() {
        let factors = two_factorization(&g).unwrap();
        assert_eq!(factors.len(), 4, "{name}");
        for f in &factors {
            let mut degree = vec![0usize; g.vertex_count()];
            for &e in &f.edges {
                let (u, v) = g.endpoints(e);
                degree[u] += 1;
                degree[v] += 1;
            }
            assert!(
                degree.iter().all(|&d| d == 2),
                "{name}: factor is not 2-regular spanning"
            );
        }

        let ff = four_factors(&g).unwrap();
        let f1 = edge_subgraph(&g, &ff.f1);
        let d = balanced_p2_decomposition(&f1)
            .unwrap()
            .map_edges(|e| ff.f1[e]);
        for v in 0..g.vertex_count() {
            assert_eq!(d.ending_at(v).len(), 2, "{name} vertex {v}");
        }

        let a = analyze(&g, &ff.f2, &d).unwrap();
        let o = good_orientation(&g, &a).unwrap();
        assert_eq!(check_good(&g, &a, &o), vec![], "{name}");

        let mut b = initial_extensions(&g, &d, &o).unwrap();
        eliminate_cycles(&d, &mut b).unwrap();
        assert_eq!(tau(&b), 0, "{name}");
        for v in 0..g.vertex_count() {
            assert_eq!(b.end_count(v), 2, "{name} vertex {v}");
            assert_eq!(b.prehang(v), 2, "{name} vertex {v}");
        }

        let (_, pairs) = make_exceptional(&d, &mut b).unwrap();
        let mut in_pairs: Vec<usize> = pairs.iter().map(|p| p.triangle).collect();
        in_pairs.sort_unstable();
        in_pairs.dedup();
        assert_eq!(
            in_pairs.len(),
            pairs.len(),
            "{name}: a triangle paired twice"
        );
        let with_triangle: Vec<usize> = (0..b.len())
            .filter(|&i| b.trackings[i].contains_triangle())
            .collect();
        for i in &with_triangle {
            assert!(in_pairs.contains(i), "{name}: tracking {i} unpaired");
        }
        for p in &pairs {
            assert!(
                b.trackings[p.triangle].contains_triangle(),
                "{name}: pair names a non-triangle"
            );
        }
    }
}

#[test]
fn criterion_4_swap_loops_carry_termination_certificates() {
    for s in &corpus().solved {
        let n = s.g.vertex_count();
        let walks = &s.trace.closed_walks;
        assert!(walks.windows(2).all(|w| w[1] < w[0]), "{}", s.name);
        assert_eq!(*walks.last().unwrap(), 0, "{}", s.name);
        assert!(walks.len() <= n + 1, "{}", s.name);

        let opened = &s.trace.open_paths;
        assert!(opened.windows(2).all(|w| w[1] > w[0]), "{}", s.name);
        assert!(opened.len() <= n + 1, "{}", s.name);

        let resolved = &s.trace.resolutions;
        assert!(resolved.windows(2).all(|w| w[1] > w[0]), "{}", s.name);
        assert!(resolved.len() <= s.trace.paired_triangles + 1, "{}", s.name);
        assert!(resolved.len() <= n + 1, "{}", s.name);
    }
}

#[test]
fn criterion_5_oracle_and_pipeline_agree_at_small_scale() {
    let started = Instant::now();
    let mut instances = vec![("K9".to_string(), named_instance("K9").unwrap())];
    for n in [10usize, 12] {
        for seed in 0..25u64 {
            instances.push((
                format!("random-8-regular(n={n}, seed={seed})"),
                generate_random_regular(n, 8, seed).unwrap(),
            ));
        }
    }
    assert_eq!(instances.len(), 51);
    for (name, g) in instances {
        let found = brute_force_decompose(&g, ORACLE_LIMIT)
            .unwrap()
            .unwrap_or_else(|| panic!("{name}: oracle found nothing"));
        let rows: Vec<Vec<usize>> = found.iter().map(|p| p.to_vec()).collect();
        assert!(
            p4decomp::verify_decomposition(&g, &rows).ok(),
            "{name}: oracle output is invalid"
        );
        let (b, _) = decompose_traced(&g).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(verify_trackings(&g, &b).ok(), "{name}");
    }
    let elapsed = started.elapsed().as_secs_f64();
    assert!(elapsed < 300.0, "oracle sweep took {elapsed:.1}s");
}

#[test]
fn criterion_6_planted_trapped_structures_pass_the_orientation_check() {
    let p = common::planted_trapped_p2();
    let a = analyze(&p.g, &p.f2, &p.d).unwrap();
    assert_eq!(a.trapped_p2s.len(), 1);
    let o = good_orientation(&p.g, &a).unwrap();
    assert_eq!(check_good(&p.g, &a, &o), vec![]);

    let p = common::planted_trapped_triangle();
    let a = analyze(&p.g, &p.f2, &p.d).unwrap();
    assert_eq!(a.trapped_triangles.len(), 1);
    let o = good_orientation(&p.g, &a).unwrap();
    assert_eq!(check_good(&p.g, &a, &o), vec![]);

    let p = common::planted_trapped_k4();
    let a = analyze(&p.g, &p.f2, &p.d).unwrap();
    assert_eq!(a.trapped_k4s.len(), 1);
    for &d in &a.trapped_k4s[0].diagonals {
        assert!(a.is_factor_edge(d) && !a.is_trapped(d));
    }
    let o = good_orientation(&p.g, &a).unwrap();
    assert_eq!(check_good(&p.g, &a, &o), vec![]);
}
