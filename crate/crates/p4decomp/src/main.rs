//! Command-line front end: staged views of the pipeline, the full
//! decomposition, independent verification, the brute-force reference, and
//! batch runs over random instances.

use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use p4decomp::completion::decompose_traced;
use p4decomp::extension::{eliminate_cycles, initial_extensions, make_exceptional, tau_prime};
use p4decomp::factorize::{edge_subgraph, four_factors, FourFactors};
use p4decomp::graph::{generate_random_regular, load_graph, named_instance, Graph, Vertex};
use p4decomp::orientation::{check_good, good_orientation};
use p4decomp::p2::{balanced_p2_decomposition, P2Decomposition};
use p4decomp::trapped::{analyze, TrappedAnalysis};
use p4decomp::verify::{batch, brute_force_decompose, verify_decomposition, ORACLE_LIMIT};

type CliError = Box<dyn std::error::Error>;

#[derive(Parser)]
#[command(
    version,
    about = "Decomposes 8-regular graphs into 4-edge paths, two ends per vertex"
)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

const INPUT_HELP: &str =
    "Named instance (K9, K8,8, CIRC(n;1,2,3,4)), random:<n>, an edge-list file, or - for stdin";

#[derive(Subcommand)]
enum Command {
    /// Emit a graph as an edge list, DOT, or JSON
    Generate {
        #[arg(help = INPUT_HELP)]
        input: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        dot: bool,
    },
    /// Split the graph into two 4-regular spanning factors
    Factorize {
        #[arg(help = INPUT_HELP)]
        input: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Decompose the first factor into 2-edge paths, two ends per vertex
    P2 {
        #[arg(help = INPUT_HELP)]
        input: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Classify the second factor's edges against the short paths' end-pairs
    Analyze {
        #[arg(help = INPUT_HELP)]
        input: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Orient the second factor and print the arcs
    Orient {
        #[arg(help = INPUT_HELP)]
        input: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        dot: bool,
    },
    /// Recompute the orientation and check it against the classification
    CheckOrient {
        #[arg(help = INPUT_HELP)]
        input: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the extension and repair stages, printing trackings and counters
    Extensions {
        #[arg(help = INPUT_HELP)]
        input: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Produce the final decomposition into 4-edge paths
    Decompose {
        #[arg(help = INPUT_HELP)]
        input: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Check a claimed decomposition against a graph
    Verify {
        #[arg(help = INPUT_HELP)]
        input: String,
        /// Decomposition file (JSON or one path of 5 vertex ids per line), - for stdin
        paths: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Search exhaustively for a decomposition of a small graph
    Oracle {
        #[arg(help = INPUT_HELP)]
        input: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest vertex count the search will accept
        #[arg(long, default_value_t = ORACLE_LIMIT)]
        limit: usize,
        #[arg(long)]
        json: bool,
    },
    /// Generate, decompose, and verify random 8-regular instances
    Batch {
        /// Comma-separated vertex counts
        #[arg(long, value_delimiter = ',', required = true)]
        ns: Vec<usize>,
        /// Instances per vertex count
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    // Die quietly when a downstream pipe closes early, like other line
    // tools, instead of panicking on the failed write.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match run(Args::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(args: Args) -> Result<bool, CliError> {
    match args.command {
        Command::Generate {
            input,
            seed,
            json,
            dot,
        } => {
            let g = resolve_graph(&input, seed)?;
            if json {
                println!(
                    "{}",
                    json!({ "vertices": g.vertex_count(), "edges": g.edges() })
                );
            } else if dot {
                println!("graph g {{");
                for &(u, v) in g.edges() {
                    println!("  {u} -- {v};");
                }
                println!("}}");
            } else {
                print!("{}", g.to_edge_list());
            }
            Ok(true)
        }
        Command::Factorize { input, seed, json } => {
            let g = resolve_graph(&input, seed)?;
            let ff = four_factors(&g)?;
            let pairs = |ids: &[usize]| -> Vec<(Vertex, Vertex)> {
                ids.iter().map(|&e| g.endpoints(e)).collect()
            };
            if json {
                println!("{}", json!({ "f1": pairs(&ff.f1), "f2": pairs(&ff.f2) }));
            } else {
                for (label, ids) in [("f1", &ff.f1), ("f2", &ff.f2)] {
                    for &e in ids.iter() {
                        let (u, v) = g.endpoints(e);
                        println!("{label} {u} {v}");
                    }
                }
            }
            Ok(true)
        }
        Command::P2 { input, seed, json } => {
            let g = resolve_graph(&input, seed)?;
            let (_, d) = first_factor_paths(&g)?;
            if json {
                let rows: Vec<[Vertex; 3]> = d
                    .paths
                    .iter()
                    .map(|p| [p.end_a, p.center, p.end_b])
                    .collect();
                println!("{}", json!({ "paths": rows }));
            } else {
                for p in &d.paths {
                    println!("{} {} {}", p.end_a, p.center, p.end_b);
                }
            }
            Ok(true)
        }
        Command::Analyze { input, seed, json } => {
            let g = resolve_graph(&input, seed)?;
            let (a, _, _) = classified(&g)?;
            let closed = a.chains.iter().filter(|c| c.closed).count();
            let trapped = a.trapped_edges().len();
            if json {
                println!(
                    "{}",
                    json!({
                        "factor_edges": a.f2.len(),
                        "trapped": trapped,
                        "loose": a.free_edges.len(),
                        "trapped_p2s": a.trapped_p2s.len(),
                        "trapped_triangles": a.trapped_triangles.len(),
                        "trapped_k4s": a.trapped_k4s.len(),
                        "bowties": a.bowties.len(),
                        "chains": { "open": a.chains.len() - closed, "closed": closed },
                    })
                );
            } else {
                println!("factor edges: {}", a.f2.len());
                println!("trapped edges: {trapped}");
                println!("loose trapped edges: {}", a.free_edges.len());
                println!("trapped 2-edge paths: {}", a.trapped_p2s.len());
                println!("trapped triangles: {}", a.trapped_triangles.len());
                println!("trapped K4s: {}", a.trapped_k4s.len());
                println!("bowties: {}", a.bowties.len());
                println!(
                    "chains: {} open, {} closed",
                    a.chains.len() - closed,
                    closed
                );
            }
            Ok(true)
        }
        Command::Orient {
            input,
            seed,
            json,
            dot,
        } => {
            let g = resolve_graph(&input, seed)?;
            let (a, _, _) = classified(&g)?;
            let o = good_orientation(&g, &a)?;
            let arcs: Vec<(Vertex, Vertex)> =
                a.f2.iter()
                    .map(|&e| {
                        let arc = o.arc(e);
                        (arc.tail, arc.head)
                    })
                    .collect();
            if json {
                println!("{}", json!({ "arcs": arcs }));
            } else if dot {
                println!("digraph g {{");
                for (t, h) in arcs {
                    println!("  {t} -> {h};");
                }
                println!("}}");
            } else {
                for (t, h) in arcs {
                    println!("{t} {h}");
                }
            }
            Ok(true)
        }
        Command::CheckOrient { input, seed } => {
            let g = resolve_graph(&input, seed)?;
            let (a, _, _) = classified(&g)?;
            let o = good_orientation(&g, &a)?;
            let violations = check_good(&g, &a, &o);
            if violations.is_empty() {
                println!("ok");
                Ok(true)
            } else {
                for v in &violations {
                    println!("violation: {v:?}");
                }
                Ok(false)
            }
        }
        Command::Extensions { input, seed, json } => {
            let g = resolve_graph(&input, seed)?;
            let (a, _, d) = classified(&g)?;
            let o = good_orientation(&g, &a)?;
            let mut b = initial_extensions(&g, &d, &o)?;
            let closed_walks = eliminate_cycles(&d, &mut b)?;
            let (open_paths, pairs) = make_exceptional(&d, &mut b)?;
            if json {
                let rows: Vec<[Vertex; 5]> = b.trackings.iter().map(|t| t.v).collect();
                println!(
                    "{}",
                    json!({
                        "trackings": rows,
                        "closed_walks": closed_walks,
                        "open_paths": open_paths,
                        "paired_triangles": pairs.len(),
                    })
                );
            } else {
                for t in &b.trackings {
                    let [x0, x1, x2, x3, x4] = t.v;
                    println!("{x0} {x1} {x2} {x3} {x4}");
                }
                println!("# closed-walk counts: {closed_walks:?}");
                println!("# open-path counts: {open_paths:?}");
                println!("# paired triangles: {}", pairs.len());
                println!("# open paths now: {}", tau_prime(&b));
            }
            Ok(true)
        }
        Command::Decompose { input, seed, json } => {
            let g = resolve_graph(&input, seed)?;
            let (b, trace) = decompose_traced(&g)?;
            let rows: Vec<Vec<Vertex>> = b.trackings.iter().map(|t| t.v.to_vec()).collect();
            let report = verify_decomposition(&g, &rows);
            if !report.ok() {
                for f in &report.failures {
                    eprintln!("{}: {f}", f.check().name());
                }
                return Ok(false);
            }
            if json {
                println!(
                    "{}",
                    json!({
                        "paths": rows,
                        "stats": {
                            "paths": rows.len(),
                            "closed_walks_removed": trace.closed_walks.len() - 1,
                            "rewrites": trace.open_paths.len() - 1,
                            "switches": trace.resolutions.len() - 1,
                        },
                    })
                );
            } else {
                for row in &rows {
                    let line: Vec<String> = row.iter().map(usize::to_string).collect();
                    println!("{}", line.join(" "));
                }
            }
            Ok(true)
        }
        Command::Verify {
            input,
            paths,
            seed,
            json,
        } => {
            let g = resolve_graph(&input, seed)?;
            let rows = parse_paths(&read_input(&paths)?)?;
            let report = verify_decomposition(&g, &rows);
            if json {
                let failures: Vec<serde_json::Value> = report
                    .failures
                    .iter()
                    .map(|f| json!({ "check": f.check().name(), "witness": f.to_string() }))
                    .collect();
                println!("{}", json!({ "ok": report.ok(), "failures": failures }));
            } else if report.ok() {
                println!("ok");
            } else {
                for f in &report.failures {
                    println!("{}: {f}", f.check().name());
                }
            }
            Ok(report.ok())
        }
        Command::Oracle {
            input,
            seed,
            limit,
            json,
        } => {
            let g = resolve_graph(&input, seed)?;
            let found = brute_force_decompose(&g, limit)?;
            if json {
                println!("{}", json!({ "decomposition": found }));
            } else {
                match &found {
                    None => println!("no balanced decomposition"),
                    Some(paths) => {
                        for p in paths {
                            let line: Vec<String> = p.iter().map(usize::to_string).collect();
                            println!("{}", line.join(" "));
                        }
                    }
                }
            }
            Ok(true)
        }
        Command::Batch {
            ns,
            count,
            seed,
            json,
        } => {
            let entries = batch(&ns, count, seed);
            let failed: Vec<_> = entries.iter().filter(|e| e.outcome.is_err()).collect();
            if json {
                let rows: Vec<serde_json::Value> = entries
                    .iter()
                    .map(|e| match &e.outcome {
                        Ok(s) => json!({
                            "name": e.name, "vertices": e.vertices, "edges": e.edges,
                            "millis": e.millis, "ok": true,
                            "paths": s.paths, "closed_walks_removed": s.closed_walks_removed,
                            "rewrites": s.rewrites, "switches": s.switches,
                        }),
                        Err(f) => json!({
                            "name": e.name, "vertices": e.vertices, "edges": e.edges,
                            "millis": e.millis, "ok": false, "reason": f.reason,
                        }),
                    })
                    .collect();
                println!("{}", json!(rows));
            } else {
                for e in &entries {
                    match &e.outcome {
                        Ok(s) => println!(
                            "ok   {} n={} m={} ms={} walks={} rewrites={} switches={}",
                            e.name,
                            e.vertices,
                            e.edges,
                            e.millis,
                            s.closed_walks_removed,
                            s.rewrites,
                            s.switches
                        ),
                        Err(f) => println!("FAIL {} n={}: {}", e.name, e.vertices, f.reason),
                    }
                }
                println!(
                    "{} passed, {} failed",
                    entries.len() - failed.len(),
                    failed.len()
                );
            }
            if let Some(first) = failed.first() {
                if let Err(f) = &first.outcome {
                    eprintln!("counterexample ({}):", first.name);
                    eprint!("{}", f.edge_list);
                }
            }
            Ok(failed.is_empty())
        }
    }
}

fn resolve_graph(input: &str, seed: u64) -> Result<Graph, CliError> {
    if let Some(rest) = input.strip_prefix("random:") {
        let n: usize = rest
            .parse()
            .map_err(|_| format!("random:<n> needs a vertex count, got {rest:?}"))?;
        return Ok(generate_random_regular(n, 8, seed)?);
    }
    if let Ok(g) = named_instance(input) {
        return Ok(g);
    }
    let text =
        read_input(input).map_err(|e| format!("{e} (expected {})", INPUT_HELP.to_lowercase()))?;
    Ok(load_graph(&text)?)
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?)
    }
}

/// Accepts either the JSON shape `{"paths": [[..], ..]}` (or a bare array)
/// or plain text with one whitespace-separated path per line.
fn parse_paths(text: &str) -> Result<Vec<Vec<Vertex>>, CliError> {
    let body = text.trim_start();
    if body.starts_with('{') || body.starts_with('[') {
        let value: serde_json::Value = serde_json::from_str(body)?;
        let rows = value.get("paths").unwrap_or(&value);
        return Ok(serde_json::from_value(rows.clone())?);
    }
    let mut rows = Vec::new();
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let row: Result<Vec<Vertex>, _> = line.split_whitespace().map(str::parse).collect();
        rows.push(row.map_err(|e| format!("bad path line {line:?}: {e}"))?);
    }
    Ok(rows)
}

fn first_factor_paths(g: &Graph) -> Result<(FourFactors, P2Decomposition), CliError> {
    let ff = four_factors(g)?;
    let f1 = edge_subgraph(g, &ff.f1);
    let d = balanced_p2_decomposition(&f1)?.map_edges(|e| ff.f1[e]);
    Ok((ff, d))
}

fn classified(g: &Graph) -> Result<(TrappedAnalysis, FourFactors, P2Decomposition), CliError> {
    let (ff, d) = first_factor_paths(g)?;
    let a = analyze(g, &ff.f2, &d)?;
    Ok((a, ff, d))
}
