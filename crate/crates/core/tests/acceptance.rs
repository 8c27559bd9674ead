//! Acceptance criteria AC1-AC7. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails. Runs without the libtest harness so
//! the lines always show.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use dihedral_hypergraph::harness::{sweep, AnalyzeOptions};
use dihedral_hypergraph::incidence::IncidenceGraph;
use dihedral_hypergraph::numtheory::{is_prime, sigma, tau};
use dihedral_hypergraph::oracle;
use dihedral_hypergraph::structure::is_helly;
use dihedral_hypergraph::topology::{classify_topology, find_k35, verify_incidence_kuratowski, Certificate};
use dihedral_hypergraph::{build_hypergraph, enumerate_subgroups, Hypergraph};
use num_rational::Ratio;
use serde_json::Value;

const FIXTURE_LIMIT: Duration = Duration::from_secs(1);
const SWEEP_LIMIT: Duration = Duration::from_secs(300);
const SWEEP_FROM: u32 = 2;
const SWEEP_TO: u32 = 200;
const WITNESS_MAX_N: u32 = 60;

struct Outcome {
    id: &'static str,
    passed: bool,
    detail: String,
}

fn build(n: u32) -> Hypergraph {
    build_hypergraph(&enumerate_subgroups(n).unwrap()).unwrap()
}

/// Hyperedges as sets of labels, given as indices into `names`.
fn expected_edges(names: &[&str], edges: &[&[usize]]) -> BTreeSet<Vec<String>> {
    edges
        .iter()
        .map(|e| {
            let mut labels: Vec<String> = e.iter().map(|&i| names[i].to_string()).collect();
            labels.sort();
            labels
        })
        .collect()
}

/// Named subgroups `H_2, H_3, ...` in fixture order; `names[k - 2]` is `H_k`.
fn fixture_edges(names: &[&str], edges: &[&[usize]]) -> BTreeSet<Vec<String>> {
    let shifted: Vec<Vec<usize>> = edges.iter().map(|e| e.iter().map(|&k| k - 2).collect()).collect();
    let refs: Vec<&[usize]> = shifted.iter().map(Vec::as_slice).collect();
    expected_edges(names, &refs)
}

fn ac1() -> Outcome {
    let start = Instant::now();
    let h = build(4);
    let names = ["<a^2>", "<b>", "<ab>", "<a^2 b>", "<a^3 b>", "<a>", "<a^2, b>", "<a^2, ab>"];
    let expected = fixture_edges(&names, &[&[2, 3, 4, 5, 6], &[3, 4, 5, 6, 7], &[3, 5, 9], &[4, 6, 8]]);
    let (vertices, edges) = oracle::labelled_structure(&h);
    let elapsed = start.elapsed();
    let vertices_ok = vertices == names.iter().map(|s| s.to_string()).collect();
    Outcome {
        id: "AC1",
        passed: vertices_ok && edges == expected && elapsed < FIXTURE_LIMIT,
        detail: format!("D_4: {} vertices, {} hyperedges, fixture match {}, {elapsed:?}", h.vertex_count(), h.edge_count(), edges == expected),
    }
}

fn ac2() -> Outcome {
    let start = Instant::now();
    let h = build(6);
    // H_9 is the reflection subgroup <a^5 b>
    let names = [
        "<a^2>", "<a^3>", "<b>", "<a^3 b>", "<ab>", "<a^4 b>", "<a^2 b>", "<a^5 b>", "<a^2, ab>", "<a>", "<a^2, b>", "<a^3, b>",
        "<a^3, ab>", "<a^3, a^2 b>",
    ];
    let expected = fixture_edges(
        &names,
        &[
            &[2, 3, 4, 5, 6, 7, 8, 9],
            &[2, 4, 5, 8, 9, 14],
            &[2, 4, 5, 6, 7, 15],
            &[2, 6, 7, 8, 9, 13],
            &[3, 4, 7, 8, 10],
            &[3, 5, 6, 9, 12],
            &[4, 5, 6, 7, 8, 9, 11],
        ],
    );
    let (_, edges) = oracle::labelled_structure(&h);
    let inc = IncidenceGraph::new(&h);
    let counts = (inc.node_count(), inc.edge_count());
    let euler = inc.euler_genus_lower_bound().ok();
    let crosscap = inc.nonorientable_lower_bound().ok();
    let elapsed = start.elapsed();
    Outcome {
        id: "AC2",
        passed: h.vertex_count() == 14
            && edges == expected
            && counts == (21, 43)
            && euler == Some(Ratio::new(5, 4))
            && crosscap == Some(3)
            && elapsed < FIXTURE_LIMIT,
        detail: format!(
            "D_6: {} vertices, fixture match {}, incidence {counts:?}, euler {}, crosscap {}, {elapsed:?}",
            h.vertex_count(),
            edges == expected,
            euler.map_or("n/a".into(), |r| r.to_string()),
            crosscap.map_or("n/a".into(), |c| c.to_string()),
        ),
    }
}

fn ac3() -> Outcome {
    let start = Instant::now();
    let h = build(9);
    let names = [
        "<a^3>", "<a>", "<b>", "<ab>", "<a^2 b>", "<a^3 b>", "<a^4 b>", "<a^5 b>", "<a^6 b>", "<a^7 b>", "<a^8 b>", "<a^3, b>", "<a^3, ab>",
        "<a^3, a^2 b>",
    ];
    let expected = fixture_edges(
        &names,
        &[
            &[2, 4, 5, 6, 7, 8, 9, 10, 11, 12],
            &[3, 4, 5, 6, 7, 8, 9, 10, 11, 12],
            &[5, 6, 8, 9, 11, 12, 13],
            &[4, 6, 7, 9, 10, 12, 14],
            &[4, 5, 7, 8, 10, 11, 15],
        ],
    );
    let (_, edges) = oracle::labelled_structure(&h);
    let inc = IncidenceGraph::new(&h);
    let counts = (inc.node_count(), inc.edge_count());
    let euler = inc.euler_genus_lower_bound().ok();
    let elapsed = start.elapsed();
    Outcome {
        id: "AC3",
        passed: h.vertex_count() == 14 && edges == expected && counts == (19, 41) && euler == Some(Ratio::new(7, 4)) && elapsed < FIXTURE_LIMIT,
        detail: format!(
            "D_9: {} vertices, fixture match {}, incidence {counts:?}, euler {}, {elapsed:?}",
            h.vertex_count(),
            edges == expected,
            euler.map_or("n/a".into(), |r| r.to_string()),
        ),
    }
}

fn ac4(reports: &[Value], elapsed: Duration) -> Outcome {
    const FIELDS: [&str; 7] = ["diameter", "girth", "chromatic_number", "chromatic_index", "star", "hypertree", "planar"];
    let mismatched: Vec<String> = reports
        .iter()
        .flat_map(|r| {
            FIELDS
                .iter()
                .filter(|f| r[**f]["match"] != Value::Bool(true))
                .map(move |f| format!("n={} {f}", r["n"]))
        })
        .collect();
    let expected = (SWEEP_TO - SWEEP_FROM + 1) as usize;
    Outcome {
        id: "AC4",
        passed: reports.len() == expected && mismatched.is_empty() && elapsed < SWEEP_LIMIT,
        detail: format!(
            "sweep {SWEEP_FROM}..={SWEEP_TO}: {} reports, {} mismatches {:?}, {:.1} s (limit {} s)",
            reports.len(),
            mismatched.len(),
            mismatched.iter().take(5).collect::<Vec<_>>(),
            elapsed.as_secs_f64(),
            SWEEP_LIMIT.as_secs()
        ),
    }
}

fn ac5(reports: &[Value]) -> Outcome {
    let mut disagreements = Vec::new();
    let mut counts = [0usize; 4];
    for n in 1..=oracle::MAX_CLOSURE_N {
        counts[0] += 1;
        if !oracle::catalog_matches_closure(&enumerate_subgroups(n).unwrap()).unwrap() {
            disagreements.push(format!("subgroups n={n}"));
        }
    }
    for n in 2..=oracle::MAX_CLOSURE_N {
        let catalog = enumerate_subgroups(n).unwrap();
        if let Ok(expected) = oracle::hyperedges_by_subsets(&catalog) {
            counts[1] += 1;
            if expected != oracle::labelled_structure(&build_hypergraph(&catalog).unwrap()) {
                disagreements.push(format!("hyperedges n={n}"));
            }
        }
    }
    for r in reports {
        if r["hyperedge_count"].as_u64().unwrap() as usize <= oracle::MAX_HELLY_EDGES {
            let n = r["n"].as_u64().unwrap() as u32;
            let h = build(n);
            counts[2] += 1;
            if oracle::helly_by_subfamilies(&h).unwrap() != is_helly(&h).holds {
                disagreements.push(format!("helly n={n}"));
            }
        }
    }
    for n in 2..=9 {
        let h = build(n);
        counts[3] += 1;
        if oracle::chromatic_number_by_enumeration(&h).unwrap() != h.chromatic_number().unwrap().value {
            disagreements.push(format!("chromatic n={n}"));
        }
    }
    Outcome {
        id: "AC5",
        passed: disagreements.is_empty() && counts[1] > 0 && counts[2] > 0,
        detail: format!(
            "oracles over {} / {} / {} / {} cases (subgroups / hyperedges / helly / coloring), disagreements {disagreements:?}",
            counts[0], counts[1], counts[2], counts[3]
        ),
    }
}

fn ac6(reports: &[Value]) -> Outcome {
    let mut failures = Vec::new();
    let (mut kuratowski, mut k35) = (0, 0);
    for n in 2..=WITNESS_MAX_N {
        if is_prime(n) || n == 4 {
            continue;
        }
        let h = build(n);
        let verdict = classify_topology(&h).unwrap();
        let certs: Vec<_> = verdict
            .nonplanarity
            .iter()
            .filter_map(|c| match c {
                Certificate::Kuratowski(k) => Some(k),
                _ => None,
            })
            .collect();
        kuratowski += certs.len();
        if certs.is_empty() || !certs.iter().all(|k| verify_incidence_kuratowski(&h, k)) {
            failures.push(format!("kuratowski n={n}"));
        }
        if n >= 8 {
            let inc = IncidenceGraph::new(&h);
            match find_k35(&inc).unwrap() {
                Some(w) if inc.verify_complete_bipartite(&w) => k35 += 1,
                _ => failures.push(format!("k35 n={n}")),
            }
        }
    }
    // the sweep reports carry the verified flag for the rest of the range
    for r in reports {
        let n = r["n"].as_u64().unwrap() as u32;
        if n <= WITNESS_MAX_N || is_prime(n) {
            continue;
        }
        let ok = r["genus_certificates"]["nonorientable"]
            .as_array()
            .unwrap()
            .iter()
            .any(|c| c["type"] == "k35" && c["data"]["verified"] == Value::Bool(true));
        if ok {
            k35 += 1;
        } else {
            failures.push(format!("k35 n={n}"));
        }
    }
    Outcome {
        id: "AC6",
        passed: failures.is_empty(),
        detail: format!("{kuratowski} Kuratowski witnesses (n <= {WITNESS_MAX_N}), {k35} K_3,5 witnesses, failures {failures:?}"),
    }
}

fn ac7(reports: &[Value]) -> Outcome {
    let mut failures = Vec::new();
    for r in reports {
        let n = r["n"].as_u64().unwrap() as u32;
        let expected = tau(n) + sigma(n);
        let subgroups = enumerate_subgroups(n).unwrap().all().len() as u64;
        let vertices = r["vertex_count"].as_u64().unwrap();
        if subgroups != expected || vertices != expected - 2 {
            failures.push(n);
        }
    }
    Outcome {
        id: "AC7",
        passed: failures.is_empty() && reports.len() == (SWEEP_TO - SWEEP_FROM + 1) as usize,
        detail: format!("subgroup and vertex counts over {SWEEP_FROM}..={SWEEP_TO}, failures {failures:?}"),
    }
}

fn main() {
    let mut outcomes = vec![ac1(), ac2(), ac3()];

    let start = Instant::now();
    let mut buf = Vec::new();
    let workers = std::thread::available_parallelism().map_or(1, |p| p.get());
    let summary = sweep(SWEEP_FROM, SWEEP_TO, workers, AnalyzeOptions::default(), &mut buf).unwrap();
    let elapsed = start.elapsed();
    let reports: Vec<Value> = String::from_utf8(buf)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let mut sweep_outcome = ac4(&reports, elapsed);
    sweep_outcome.passed &= summary.exit_code() == 0;
    outcomes.push(sweep_outcome);
    outcomes.push(ac5(&reports));
    outcomes.push(ac6(&reports));
    outcomes.push(ac7(&reports));

    for o in &outcomes {
        println!("{} {} {}", o.id, if o.passed { "PASS" } else { "FAIL" }, o.detail);
    }
    let failed: Vec<&str> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    if !failed.is_empty() {
        eprintln!("failed: {failed:?}");
        std::process::exit(1);
    }
}
