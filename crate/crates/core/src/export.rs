//! DOT and JSON renderings of the hypergraph and its derived graphs. Output is
//! a pure function of `(n, format, target)`.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::enumerate_subgroups;
use crate::harness::max_n;
use crate::hypergraph::{build_hypergraph, Hypergraph};
use crate::line_graph::LineGraph;
use crate::structure::{find_host_tree, hypertree_with_line_graph, SearchLimits};

/// Largest line graph (in hyperedges) rendered edge by edge.
pub const MAX_LINE_GRAPH_NODES: usize = 5_000;
/// Largest incidence graph (in incidences) rendered edge by edge.
pub const MAX_INCIDENCES: usize = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Dot,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Hypergraph,
    Incidence,
    Linegraph,
    Hosttree,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(Format::Dot),
            "json" => Ok(Format::Json),
            other => Err(Error::UnsupportedTarget(format!("format {other:?}"))),
        }
    }
}

impl FromStr for Target {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hypergraph" => Ok(Target::Hypergraph),
            "incidence" => Ok(Target::Incidence),
            "linegraph" => Ok(Target::Linegraph),
            "hosttree" => Ok(Target::Hosttree),
            other => Err(Error::UnsupportedTarget(other.to_string())),
        }
    }
}

#[derive(Serialize)]
struct HypergraphJson<'a> {
    n: u32,
    vertices: Vec<&'a str>,
    hyperedges: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct IncidenceJson<'a> {
    n: u32,
    vertices: Vec<&'a str>,
    hyperedges: usize,
    /// `(vertex, hyperedge)` pairs.
    incidences: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct LineGraphJson {
    n: u32,
    nodes: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct HostTreeJson<'a> {
    n: u32,
    vertices: Vec<&'a str>,
    edges: Vec<(usize, usize)>,
}

pub fn export(n: u32, format: Format, target: Target) -> Result<String> {
    if n < 2 {
        return Err(Error::OutOfDomain(n));
    }
    if n > max_n() {
        return Err(Error::GuardExceeded { n, max: max_n() });
    }
    let h = build_hypergraph(&enumerate_subgroups(n)?)?;
    let labels: Vec<&str> = (0..h.vertex_count()).map(|v| h.label(v)).collect();
    let mut out = match target {
        Target::Hypergraph => match format {
            Format::Json => to_json(&HypergraphJson { n, vertices: labels, hyperedges: h.edge_lists() })?,
            Format::Dot => hypergraph_dot(&h),
        },
        Target::Incidence => {
            if h.incidence_count() > MAX_INCIDENCES {
                return Err(Error::TooLarge { what: "incidence graph", size: h.incidence_count(), max: MAX_INCIDENCES });
            }
            let incidences = incidences(&h);
            match format {
                Format::Json => to_json(&IncidenceJson { n, vertices: labels, hyperedges: h.edge_count(), incidences })?,
                Format::Dot => {
                    let mut s = String::from("graph incidence {\n");
                    vertex_nodes(&mut s, &h);
                    for e in 0..h.edge_count() {
                        let _ = writeln!(s, "  e{e} [shape=box, label=\"e{}\"];", e + 1);
                    }
                    for (v, e) in incidences {
                        let _ = writeln!(s, "  v{v} -- e{e};");
                    }
                    s.push_str("}\n");
                    s
                }
            }
        }
        Target::Linegraph => {
            if h.edge_count() > MAX_LINE_GRAPH_NODES {
                return Err(Error::TooLarge { what: "line graph", size: h.edge_count(), max: MAX_LINE_GRAPH_NODES });
            }
            let line = LineGraph::from_hypergraph(&h);
            let edges = line.edges();
            match format {
                Format::Json => to_json(&LineGraphJson { n, nodes: line.node_count(), edges })?,
                Format::Dot => {
                    let mut s = String::from("graph linegraph {\n");
                    for e in 0..line.node_count() {
                        let _ = writeln!(s, "  e{e} [label=\"e{}\"];", e + 1);
                    }
                    for (a, b) in edges {
                        let _ = writeln!(s, "  e{a} -- e{b};");
                    }
                    s.push_str("}\n");
                    s
                }
            }
        }
        Target::Hosttree => {
            let line = LineGraph::from_hypergraph(&h);
            if !hypertree_with_line_graph(&h, &line).holds {
                return Err(Error::UnsupportedTarget(format!("hosttree: D_{n} is not a hypertree")));
            }
            let tree = find_host_tree(&h, SearchLimits::default())?
                .ok_or_else(|| Error::UnsupportedTarget(format!("hosttree: no host tree found for D_{n}")))?;
            match format {
                Format::Json => to_json(&HostTreeJson { n, vertices: labels, edges: tree.edges })?,
                Format::Dot => {
                    let mut s = String::from("graph hosttree {\n");
                    vertex_nodes(&mut s, &h);
                    for (a, b) in tree.edges {
                        let _ = writeln!(s, "  v{a} -- v{b};");
                    }
                    s.push_str("}\n");
                    s
                }
            }
        }
    };
    if !out.ends_with('\n') {
        out.push('\n');
    }
    Ok(out)
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

fn incidences(h: &Hypergraph) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(h.incidence_count());
    for v in 0..h.vertex_count() {
        out.extend(h.edges_containing(v).map(|e| (v, e)));
    }
    out
}

fn vertex_nodes(s: &mut String, h: &Hypergraph) {
    for v in 0..h.vertex_count() {
        let _ = writeln!(s, "  v{v} [label=\"{}\"];", h.label(v));
    }
}

/// Each hyperedge is drawn as a small hub joined to its members.
fn hypergraph_dot(h: &Hypergraph) -> String {
    let mut s = String::from("graph hypergraph {\n");
    vertex_nodes(&mut s, h);
    for e in 0..h.edge_count() {
        let _ = writeln!(s, "  e{e} [shape=point, xlabel=\"e{}\"];", e + 1);
        for v in h.edge_set(e).ones() {
            let _ = writeln!(s, "  e{e} -- v{v};");
        }
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(s: &str, pat: &str) -> usize {
        s.lines().filter(|l| l.contains(pat)).count()
    }

    #[test]
    fn d4_line_graph_dot() {
        let dot = export(4, Format::Dot, Target::Linegraph).unwrap();
        assert_eq!(count(&dot, "[label="), 4);
        assert_eq!(count(&dot, " -- "), 5);
    }

    #[test]
    fn d5_host_tree_is_a_path() {
        let dot = export(5, Format::Dot, Target::Hosttree).unwrap();
        assert_eq!(count(&dot, "[label="), 6);
        assert_eq!(count(&dot, " -- "), 5);
    }

    #[test]
    fn d6_hypergraph_json() {
        let v: serde_json::Value = serde_json::from_str(&export(6, Format::Json, Target::Hypergraph).unwrap()).unwrap();
        assert_eq!(v["vertices"].as_array().unwrap().len(), 14);
        assert_eq!(v["hyperedges"].as_array().unwrap().len(), 7);
    }

    #[test]
    fn host_tree_refused_for_non_hypertree() {
        assert!(matches!(export(6, Format::Json, Target::Hosttree), Err(Error::UnsupportedTarget(_))));
    }

    #[test]
    fn parses_names() {
        assert_eq!("dot".parse::<Format>().unwrap(), Format::Dot);
        assert_eq!("hosttree".parse::<Target>().unwrap(), Target::Hosttree);
        assert!("svg".parse::<Format>().is_err());
    }
}
