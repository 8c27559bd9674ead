//! Per-n analysis against the closed-form predictions, and range sweeps.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::sync::mpsc;
use std::time::Instant;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{enumerate_subgroups, SubgroupCatalog, SubgroupDescriptor};
use crate::hypergraph::{build_hypergraph, ColoringSource, Hypergraph, Length};
use crate::line_graph::LineGraph;
use crate::numtheory::{is_prime, sigma, tau};
use crate::oracle;
use crate::structure::{
    find_host_tree, hypertree_with_line_graph, verify_chordless_cycle, verify_elimination_order,
    verify_helly_counterexample_in, verify_host_tree, ChordalWitness, SearchLimits,
};
use crate::topology::{classify_topology, verify_incidence_kuratowski, Certificate, TopologyVerdict};

pub const DEFAULT_MAX_N: u32 = 5000;
pub const MAX_N_ENV: &str = "DHG_MAX_N";
/// Host trees are searched for as a cross-check only up to this many vertices.
pub const HOST_TREE_CHECK_VERTICES: usize = 10;

/// The size guard, from `DHG_MAX_N` when set to a number.
pub fn max_n() -> u32 {
    std::env::var(MAX_N_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_N)
}

fn guard(n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::OutOfDomain(n));
    }
    let max = max_n();
    if n > max {
        return Err(Error::GuardExceeded { n, max });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Predicted {
    pub diameter: Length,
    pub girth: Length,
    pub chromatic_number: usize,
    pub chromatic_index: usize,
    pub star: bool,
    pub hypertree: bool,
    pub planar: bool,
}

/// Closed-form invariants of the hypergraph of D_n with `m` hyperedges.
/// `m` is only known after construction, so this runs after the build.
pub fn predict(n: u32, m: usize) -> Result<Predicted> {
    if n < 2 {
        return Err(Error::OutOfDomain(n));
    }
    let prime = is_prime(n);
    let quad = n.is_multiple_of(4);
    Ok(Predicted {
        diameter: Length::Finite(if prime { 1 } else if quad { 3 } else { 2 }),
        girth: if prime { Length::Infinite } else { Length::Finite(2) },
        chromatic_number: 2,
        chromatic_index: if quad { m.saturating_sub(1) } else { m },
        star: prime,
        hypertree: prime || n == 4,
        planar: prime || n == 4,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison<T> {
    pub computed: T,
    pub predicted: T,
    #[serde(rename = "match")]
    pub matches: bool,
}

impl<T: PartialEq + Copy> Comparison<T> {
    fn new(computed: T, predicted: T) -> Self {
        Self { computed, predicted, matches: computed == predicted }
    }
}

/// How a failed check is reported.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// A structural fact about D_n; failure is a theorem mismatch.
    Theorem,
    /// Self-consistency of witnesses and fast paths; failure is an internal
    /// disagreement.
    Internal,
    /// Reported only.
    Flag,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub kind: CheckKind,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Timings {
    pub build_ms: f64,
    pub line_graph_ms: f64,
    pub structure_ms: f64,
    pub topology_ms: f64,
    pub checks_ms: f64,
    pub total_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub n: u32,
    pub subgroup_count: usize,
    pub vertex_count: usize,
    pub hyperedge_count: usize,
    pub incidence_nodes: usize,
    pub incidence_edges: usize,
    pub diameter: Comparison<Length>,
    pub girth: Comparison<Length>,
    pub chromatic_number: Comparison<usize>,
    pub chromatic_index: Comparison<usize>,
    pub star: Comparison<bool>,
    pub hypertree: Comparison<bool>,
    pub planar: Comparison<bool>,
    /// Non-planar cases only: some certificate shows genus at least 2.
    pub orientable_genus_at_least_two: Option<bool>,
    pub nonorientable_genus_at_least_two: Option<bool>,
    pub genus_certificates: TopologyVerdict,
    pub checks: Vec<Check>,
    pub theorem_mismatches: Vec<String>,
    pub oracle_disagreements: Vec<String>,
    pub flags: Vec<String>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub timings: bool,
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

/// Builds the hypergraph of D_n, computes every invariant, compares each to
/// its prediction and runs the consistency checks and, where small enough,
/// the brute-force oracles.
pub fn analyze(n: u32) -> Result<AnalysisReport> {
    analyze_with(n, AnalyzeOptions::default())
}

pub fn analyze_with(n: u32, options: AnalyzeOptions) -> Result<AnalysisReport> {
    guard(n)?;
    let start = Instant::now();
    let mut timings = Timings::default();

    let t = Instant::now();
    let catalog = enumerate_subgroups(n)?;
    let h = build_hypergraph(&catalog)?;
    timings.build_ms = ms(t);

    let t = Instant::now();
    let line = LineGraph::from_hypergraph(&h);
    timings.line_graph_ms = ms(t);

    let t = Instant::now();
    let predicted = predict(n, h.edge_count())?;
    let chromatic = h.chromatic_number()?;
    let hypertree = hypertree_with_line_graph(&h, &line);
    let diameter = h.diameter();
    let girth = h.girth();
    let chromatic_index = line.chromatic_number();
    let star = h.is_star();
    timings.structure_ms = ms(t);

    let t = Instant::now();
    let topology = classify_topology(&h)?;
    timings.topology_ms = ms(t);

    let t = Instant::now();
    let mut checks = Vec::new();
    let mut push = |name, kind, passed| checks.push(Check { name, kind, passed });

    let subgroups = tau(n) + sigma(n);
    push("subgroup_count_law", CheckKind::Theorem, catalog.all().len() as u64 == subgroups);
    push("vertex_count_law", CheckKind::Theorem, h.vertex_count() as u64 == subgroups - 2);
    push("vertices_are_proper_subgroups", CheckKind::Theorem, vertices_are_all_proper(&h, &catalog));
    push("line_graph_non_edges", CheckKind::Theorem, line.non_edges() == expected_non_edges(&h, n));
    if n.is_multiple_of(4) && n >= 8 {
        push("helly_fails_on_non_a2ab_edges", CheckKind::Theorem, helly_family_fails(&h, &line));
    }
    if !topology.planar {
        push("nonplanarity_certified", CheckKind::Theorem, !topology.nonplanarity.is_empty());
    }
    push("chromatic_partition", CheckKind::Theorem, chromatic.source == ColoringSource::StandardPartition);

    push("hyperedges_maximal", CheckKind::Internal, hyperedges_maximal(&h, &catalog)?);
    push("incidence_triangle_free", CheckKind::Internal, topology.bounds.girth != Length::Finite(3));
    push("coloring_proper", CheckKind::Internal, h.is_proper_coloring(&chromatic.colors));
    if let Some(family) = &hypertree.helly.counterexample {
        push("helly_counterexample_valid", CheckKind::Internal, verify_helly_counterexample_in(&h, &line, family));
    }
    push(
        "chordal_witness_valid",
        CheckKind::Internal,
        match &hypertree.line_graph_chordal.witness {
            ChordalWitness::EliminationOrder(order) => verify_elimination_order(&line, order),
            ChordalWitness::ChordlessCycle(cycle) => verify_chordless_cycle(&line, cycle),
        },
    );
    if let Some(ok) = topology.embedding_verified {
        push("planar_embedding_valid", CheckKind::Internal, ok);
    }
    for cert in &topology.nonplanarity {
        match cert {
            Certificate::Kuratowski(k) => push("kuratowski_witness_valid", CheckKind::Internal, k.verified && verify_incidence_kuratowski(&h, k)),
            Certificate::K33(b) => push("k33_witness_valid", CheckKind::Internal, b.verified),
            _ => {}
        }
    }
    for cert in topology.orientable.iter().chain(&topology.nonorientable) {
        match cert {
            Certificate::Euler(e) if e.family.is_some() => {
                push("subfamily_embeds", CheckKind::Internal, e.embeds_in_whole);
                push("subfamily_counts_match_closed_form", CheckKind::Flag, e.matches_expected == Some(true));
            }
            Certificate::K35(b) => push("k35_witness_valid", CheckKind::Internal, b.verified),
            _ => {}
        }
    }
    if h.vertex_count() <= HOST_TREE_CHECK_VERTICES {
        let tree = find_host_tree(&h, SearchLimits::default())?;
        let agrees = match &tree {
            Some(t) => hypertree.holds && verify_host_tree(&h, t),
            None => !hypertree.holds,
        };
        push("host_tree_agrees", CheckKind::Internal, agrees);
    }

    if n <= oracle::MAX_CLOSURE_N {
        push("oracle_subgroups", CheckKind::Internal, oracle::catalog_matches_closure(&catalog)?);
    }
    match oracle::hyperedges_by_subsets(&catalog) {
        Ok(expected) => push("oracle_hyperedges", CheckKind::Internal, expected == oracle::labelled_structure(&h)),
        Err(Error::TooLarge { .. }) => {}
        Err(e) => return Err(e),
    }
    if h.edge_count() <= oracle::MAX_HELLY_EDGES {
        push("oracle_helly", CheckKind::Internal, oracle::helly_by_subfamilies(&h)? == hypertree.helly.holds);
    }
    if n <= 9 {
        push("oracle_chromatic_number", CheckKind::Internal, oracle::chromatic_number_by_enumeration(&h)? == chromatic.value);
    }
    timings.checks_ms = ms(t);

    let diameter = Comparison::new(diameter, predicted.diameter);
    let girth = Comparison::new(girth, predicted.girth);
    let chromatic_number = Comparison::new(chromatic.value, predicted.chromatic_number);
    let chromatic_index = Comparison::new(chromatic_index, predicted.chromatic_index);
    let star = Comparison::new(star, predicted.star);
    let hypertree = Comparison::new(hypertree.holds, predicted.hypertree);
    let planar = Comparison::new(topology.planar, predicted.planar);
    let (orientable, nonorientable) = if topology.planar {
        (None, None)
    } else {
        (Some(topology.orientable_genus_at_least_two), Some(topology.nonorientable_genus_at_least_two))
    };

    let mut theorem_mismatches = Vec::new();
    for (name, ok) in [
        ("diameter", diameter.matches),
        ("girth", girth.matches),
        ("chromatic_number", chromatic_number.matches),
        ("chromatic_index", chromatic_index.matches),
        ("star", star.matches),
        ("hypertree", hypertree.matches),
        ("planar", planar.matches),
        ("orientable_genus_at_least_two", orientable != Some(false)),
        ("nonorientable_genus_at_least_two", nonorientable != Some(false)),
    ] {
        if !ok {
            theorem_mismatches.push(name.to_string());
        }
    }
    let mut oracle_disagreements = Vec::new();
    let mut flags = Vec::new();
    for c in checks.iter().filter(|c| !c.passed) {
        match c.kind {
            CheckKind::Theorem => theorem_mismatches.push(c.name.to_string()),
            CheckKind::Internal => oracle_disagreements.push(c.name.to_string()),
            CheckKind::Flag => flags.push(c.name.to_string()),
        }
    }
    timings.total_ms = ms(start);

    Ok(AnalysisReport {
        n,
        subgroup_count: catalog.all().len(),
        vertex_count: h.vertex_count(),
        hyperedge_count: h.edge_count(),
        incidence_nodes: topology.bounds.nodes,
        incidence_edges: topology.bounds.edges,
        diameter,
        girth,
        chromatic_number,
        chromatic_index,
        star,
        hypertree,
        planar,
        orientable_genus_at_least_two: orientable,
        nonorientable_genus_at_least_two: nonorientable,
        genus_certificates: topology,
        checks,
        passed: theorem_mismatches.is_empty() && oracle_disagreements.is_empty(),
        theorem_mismatches,
        oracle_disagreements,
        flags,
        timings: options.timings.then_some(timings),
    })
}

fn vertices_are_all_proper(h: &Hypergraph, catalog: &SubgroupCatalog) -> bool {
    let mut listed: Vec<usize> = h.vertices().iter().filter_map(|v| v.catalog_index).collect();
    listed.sort_unstable();
    listed == catalog.proper_nontrivial()
}

/// For `4 | n` the only disjoint hyperedges are the one through `<a^2, b>`
/// and the one through `<a^2, ab>`; otherwise every two hyperedges meet.
fn expected_non_edges(h: &Hypergraph, n: u32) -> Vec<(usize, usize)> {
    if !n.is_multiple_of(4) {
        return Vec::new();
    }
    let edge_of = |i| {
        h.vertex_of(SubgroupDescriptor::Dihedral { r: 2, i })
            .and_then(|v| h.edge_containing(v))
    };
    match (edge_of(0), edge_of(1)) {
        (Some(x), Some(y)) if x != y => vec![(x.min(y), x.max(y))],
        _ => vec![(usize::MAX, usize::MAX)],
    }
}

/// Dropping the hyperedge through `<a^2, ab>` leaves a pairwise-intersecting
/// family with no common vertex.
fn helly_family_fails(h: &Hypergraph, line: &LineGraph) -> bool {
    let Some(skip) = h
        .vertex_of(SubgroupDescriptor::Dihedral { r: 2, i: 1 })
        .and_then(|v| h.edge_containing(v))
    else {
        return false;
    };
    let family: Vec<usize> = (0..h.edge_count()).filter(|&e| e != skip).collect();
    verify_helly_counterexample_in(h, line, &family)
}

/// Every hyperedge is pairwise trivially-intersecting and no other vertex can
/// join it, with triviality recomputed from the subgroups themselves.
fn hyperedges_maximal(h: &Hypergraph, catalog: &SubgroupCatalog) -> Result<bool> {
    let nv = h.vertex_count();
    let groups = h
        .vertices()
        .iter()
        .map(|v| v.catalog_index.and_then(|i| catalog.get(i)).ok_or(Error::UnknownVertex(0)))
        .collect::<Result<Vec<_>>>()?;
    let mut adj = vec![FixedBitSet::with_capacity(nv); nv];
    for a in 0..nv {
        for b in a + 1..nv {
            if groups[a].is_trivial_intersection(groups[b])? {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
    }
    Ok((0..h.edge_count()).into_par_iter().all(|e| {
        let members = h.edge_set(e);
        let mut common = FixedBitSet::with_capacity(nv);
        common.insert_range(..);
        for u in members.ones() {
            let mut closed = adj[u].clone();
            closed.insert(u);
            if !members.is_subset(&closed) {
                return false;
            }
            common.intersect_with(&adj[u]);
        }
        common.is_clear()
    }))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub passed: usize,
    pub theorem_failures: Vec<u32>,
    pub oracle_failures: Vec<u32>,
}

impl SweepSummary {
    /// 0 when everything passed, 3 on any internal disagreement, 1 on a
    /// theorem mismatch alone.
    pub fn exit_code(&self) -> i32 {
        if !self.oracle_failures.is_empty() {
            3
        } else if !self.theorem_failures.is_empty() {
            1
        } else {
            0
        }
    }
}

/// Analyzes every `n` in `from..=to` on `workers` threads and writes one JSON
/// line per report to `out`, in ascending `n`.
pub fn sweep<W: Write>(from: u32, to: u32, workers: usize, options: AnalyzeOptions, out: &mut W) -> Result<SweepSummary> {
    if from < 2 || from > to {
        return Err(Error::InvalidRange { from, to });
    }
    guard(to)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Io(std::io::Error::other(e)))?;
    let (tx, rx) = mpsc::channel::<(u32, Result<AnalysisReport>)>();
    let mut summary = SweepSummary::default();

    std::thread::scope(|scope| -> Result<()> {
        scope.spawn(move || {
            pool.install(|| {
                (from..=to).into_par_iter().for_each_with(tx, |tx, n| {
                    let _ = tx.send((n, analyze_with(n, options)));
                })
            })
        });
        // reports arrive in any order; hold them until their turn
        let mut pending = BTreeMap::new();
        let mut next = from;
        for (n, report) in rx {
            pending.insert(n, report);
            while let Some(report) = pending.remove(&next) {
                let report = report?;
                serde_json::to_writer(&mut *out, &report)?;
                out.write_all(b"\n")?;
                if !report.oracle_disagreements.is_empty() {
                    summary.oracle_failures.push(next);
                } else if !report.theorem_mismatches.is_empty() {
                    summary.theorem_failures.push(next);
                } else {
                    summary.passed += 1;
                }
                next += 1;
            }
        }
        out.flush()?;
        Ok(())
    })?;
    Ok(summary)
}

/// [`sweep`] into a file, or stdout when `path` is `None`. The file is
/// created before any analysis runs.
pub fn sweep_to_path(from: u32, to: u32, workers: usize, options: AnalyzeOptions, path: Option<&Path>) -> Result<SweepSummary> {
    if from < 2 || from > to {
        return Err(Error::InvalidRange { from, to });
    }
    match path {
        Some(p) => {
            let mut file = std::io::BufWriter::new(std::fs::File::create(p)?);
            sweep(from, to, workers, options, &mut file)
        }
        None => sweep(from, to, workers, options, &mut std::io::stdout().lock()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn predictions() {
        let p = predict(11, 1).unwrap();
        assert_eq!((p.diameter, p.girth, p.star, p.planar), (Length::Finite(1), Length::Infinite, true, true));
        let p = predict(12, 40).unwrap();
        assert_eq!((p.diameter, p.chromatic_index), (Length::Finite(3), 39));
        let p = predict(10, 9).unwrap();
        assert_eq!((p.diameter, p.chromatic_index, p.hypertree, p.planar), (Length::Finite(2), 9, false, false));
        assert!(matches!(predict(1, 0), Err(Error::OutOfDomain(1))));
    }

    #[test]
    fn small_reports_pass() {
        for n in 2..=16 {
            let r = analyze(n).unwrap();
            assert!(r.passed, "n = {n}: {:?} {:?}", r.theorem_mismatches, r.oracle_disagreements);
        }
    }

    #[test]
    fn d2_and_d6_reports() {
        let r = analyze(2).unwrap();
        assert_eq!((r.vertex_count, r.hyperedge_count), (3, 1));
        let r = analyze(6).unwrap();
        assert_eq!((r.incidence_nodes, r.incidence_edges), (21, 43));
        assert!(r.timings.is_none());
    }

    #[test]
    fn sweep_orders_and_counts() {
        let mut buf = Vec::new();
        let summary = sweep(2, 12, 3, AnalyzeOptions::default(), &mut buf).unwrap();
        assert_eq!(summary.passed, 11);
        assert_eq!(summary.exit_code(), 0);
        let ns: Vec<u64> = String::from_utf8(buf)
            .unwrap()
            .lines()
            .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["n"].as_u64().unwrap())
            .collect();
        assert_eq!(ns, (2..=12).collect::<Vec<_>>());
        assert!(matches!(sweep(10, 2, 1, AnalyzeOptions::default(), &mut Vec::new()), Err(Error::InvalidRange { .. })));
    }
}
