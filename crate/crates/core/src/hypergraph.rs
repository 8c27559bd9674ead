//! The intersection hypergraph of D_n: vertices are non-trivial proper
//! subgroups with at least one trivially-intersecting partner, hyperedges are
//! the maximal families of pairwise trivially-intersecting vertices.

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Serialize, Serializer};

use crate::bitset;
use crate::cliques::maximal_clique_sets;
use crate::coloring::hypergraph_k_coloring;
use crate::error::{Error, Result};
use crate::group::{SubgroupCatalog, SubgroupDescriptor};
use crate::incidence::IncidenceGraph;
use crate::line_graph::LineGraph;

/// A path length or girth that may be unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Length {
    Finite(u32),
    Infinite,
}

impl Length {
    pub fn finite(self) -> Option<u32> {
        match self {
            Length::Finite(k) => Some(k),
            Length::Infinite => None,
        }
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(k) => write!(f, "{k}"),
            Length::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Length {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Length::Finite(k) => s.serialize_u32(*k),
            Length::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub label: String,
    /// Position in the originating [`SubgroupCatalog`], when there is one.
    pub catalog_index: Option<usize>,
    pub descriptor: Option<SubgroupDescriptor>,
}

/// Hyperedges are kept as vertex bitsets, with the transposed
/// vertex-to-hyperedge bitsets alongside; both stay compact when the
/// hyperedge count runs into the hundreds of thousands.
#[derive(Clone, Debug)]
pub struct Hypergraph {
    n: Option<u32>,
    vertices: Vec<Vertex>,
    edge_sets: Vec<FixedBitSet>,
    vertex_edges: Vec<FixedBitSet>,
}

/// Builds the intersection hypergraph of D_n from its subgroup catalog.
pub fn build_hypergraph(catalog: &SubgroupCatalog) -> Result<Hypergraph> {
    if catalog.n() < 2 {
        return Err(Error::EmptyHypergraph(catalog.n()));
    }
    Hypergraph::intersection_on(catalog, catalog.proper_nontrivial())
}

impl Hypergraph {
    /// Intersection hypergraph restricted to `members` (catalog indices):
    /// members without a trivially-intersecting partner among `members` are
    /// dropped, and hyperedges are the maximal pairwise-trivial families.
    pub fn intersection_on(catalog: &SubgroupCatalog, members: &[usize]) -> Result<Self> {
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        let subgroups = members
            .iter()
            .map(|&idx| catalog.get(idx).ok_or(Error::UnknownVertex(idx)))
            .collect::<Result<Vec<_>>>()?;

        let k = subgroups.len();
        let mut adj = vec![FixedBitSet::with_capacity(k); k];
        for a in 0..k {
            for b in a + 1..k {
                if subgroups[a].is_trivial_intersection(subgroups[b])? {
                    adj[a].insert(b);
                    adj[b].insert(a);
                }
            }
        }
        let keep: Vec<usize> = (0..k).filter(|&a| !adj[a].is_clear()).collect();
        if keep.is_empty() {
            return Err(Error::EmptyHypergraph(catalog.n()));
        }
        let mut position = vec![usize::MAX; k];
        for (pos, &a) in keep.iter().enumerate() {
            position[a] = pos;
        }
        let kept_adj: Vec<FixedBitSet> = keep
            .iter()
            .map(|&a| bitset::from_ids(keep.len(), adj[a].ones().map(|b| position[b])))
            .collect();
        let vertices = keep
            .iter()
            .map(|&a| Vertex {
                label: subgroups[a].notation(),
                catalog_index: Some(members[a]),
                descriptor: Some(subgroups[a].descriptor()),
            })
            .collect();
        Ok(Self::assemble(Some(catalog.n()), vertices, maximal_clique_sets(&kept_adj)))
    }

    /// A hypergraph from explicit hyperedges over vertices `0..vertex_count`,
    /// labelled `v0, v1, ...`. Duplicate hyperedges are merged.
    pub fn from_edges(vertex_count: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut sets = Vec::with_capacity(edges.len());
        for e in edges {
            if let Some(&bad) = e.iter().find(|&&v| v >= vertex_count) {
                return Err(Error::UnknownVertex(bad));
            }
            sets.push(bitset::from_ids(vertex_count, e));
        }
        sets.sort_unstable_by(bitset::cmp_lex);
        sets.dedup();
        let vertices = (0..vertex_count)
            .map(|v| Vertex {
                label: format!("v{v}"),
                catalog_index: None,
                descriptor: None,
            })
            .collect();
        Ok(Self::assemble(None, vertices, sets))
    }

    fn assemble(n: Option<u32>, vertices: Vec<Vertex>, edge_sets: Vec<FixedBitSet>) -> Self {
        let m = edge_sets.len();
        let mut vertex_edges = vec![FixedBitSet::with_capacity(m); vertices.len()];
        for (idx, e) in edge_sets.iter().enumerate() {
            for v in e.ones() {
                vertex_edges[v].insert(idx);
            }
        }
        Self {
            n,
            vertices,
            edge_sets,
            vertex_edges,
        }
    }

    /// Order parameter of the underlying dihedral group, if built from one.
    pub fn n(&self) -> Option<u32> {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_sets.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn label(&self, v: usize) -> &str {
        &self.vertices[v].label
    }

    /// Vertex ids of hyperedge `e`, ascending.
    pub fn edge(&self, e: usize) -> Vec<usize> {
        self.edge_sets[e].ones().collect()
    }

    /// All hyperedges as ascending vertex lists, in lexicographic order.
    pub fn edge_lists(&self) -> Vec<Vec<usize>> {
        (0..self.edge_count()).map(|e| self.edge(e)).collect()
    }

    pub fn edge_set(&self, e: usize) -> &FixedBitSet {
        &self.edge_sets[e]
    }

    pub fn edge_size(&self, e: usize) -> usize {
        self.edge_sets[e].count_ones(..)
    }

    /// Hyperedges containing `v`, as a set of hyperedge ids.
    pub fn edges_through(&self, v: usize) -> &FixedBitSet {
        &self.vertex_edges[v]
    }

    /// Hyperedges containing `v`, ascending.
    pub fn edges_containing(&self, v: usize) -> fixedbitset::Ones<'_> {
        self.vertex_edges[v].ones()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.vertex_edges[v].count_ones(..)
    }

    /// Σ |e| over all hyperedges.
    pub fn incidence_count(&self) -> usize {
        self.edge_sets.iter().map(|e| e.count_ones(..)).sum()
    }

    pub fn vertex_of(&self, descriptor: SubgroupDescriptor) -> Option<usize> {
        self.vertices
            .iter()
            .position(|v| v.descriptor == Some(descriptor))
    }

    /// First hyperedge containing `v`, if any.
    pub fn edge_containing(&self, v: usize) -> Option<usize> {
        self.vertex_edges.get(v)?.minimum()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    /// Length, in hyperedges, of a shortest path from `u` to `v`. Runs a
    /// breadth-first search over the vertex/hyperedge incidence structure.
    pub fn vertex_distance(&self, u: usize, v: usize) -> Result<Length> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Ok(Length::Finite(0));
        }
        let mut vertex_dist = vec![u32::MAX; self.vertex_count()];
        let mut edge_seen = vec![false; self.edge_count()];
        vertex_dist[u] = 0;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            for e in self.vertex_edges[x].ones() {
                if std::mem::replace(&mut edge_seen[e], true) {
                    continue;
                }
                for y in self.edge_sets[e].ones() {
                    if vertex_dist[y] == u32::MAX {
                        vertex_dist[y] = vertex_dist[x] + 1;
                        if y == v {
                            return Ok(Length::Finite(vertex_dist[y]));
                        }
                        queue.push_back(y);
                    }
                }
            }
        }
        Ok(Length::Infinite)
    }

    /// For each vertex, the set of vertices sharing at least one hyperedge
    /// with it (itself included when it lies in some hyperedge).
    pub fn co_occurrence(&self) -> Vec<FixedBitSet> {
        (0..self.vertex_count())
            .map(|v| {
                let mut row = FixedBitSet::with_capacity(self.vertex_count());
                for e in self.vertex_edges[v].ones() {
                    row.union_with(&self.edge_sets[e]);
                    if row.is_full() {
                        break;
                    }
                }
                row
            })
            .collect()
    }

    /// Maximum vertex distance over all pairs. Each BFS layer crosses one
    /// hyperedge, expanding the frontier through the co-occurrence rows.
    pub fn diameter(&self) -> Length {
        let nv = self.vertex_count();
        let reach = self.co_occurrence();
        let mut diameter = 0u32;
        for source in 0..nv {
            let mut seen = FixedBitSet::with_capacity(nv);
            seen.insert(source);
            let mut frontier = seen.clone();
            let mut depth = 0u32;
            while seen.count_ones(..) < nv {
                let mut next = FixedBitSet::with_capacity(nv);
                for x in frontier.ones() {
                    next.union_with(&reach[x]);
                }
                next.difference_with(&seen);
                if next.is_clear() {
                    return Length::Infinite;
                }
                seen.union_with(&next);
                frontier = next;
                depth += 1;
            }
            diameter = diameter.max(depth);
        }
        Length::Finite(diameter)
    }

    /// Length of a shortest cycle `v1 e1 v2 e2 ... vk ek v1` with distinct
    /// vertices and distinct hyperedges, `k >= 2`. Such a cycle is a cycle of
    /// length `2k` in the incidence graph.
    pub fn girth(&self) -> Length {
        match IncidenceGraph::new(self).girth() {
            Length::Finite(g) => Length::Finite(g / 2),
            Length::Infinite => Length::Infinite,
        }
    }

    /// The two-class partition used for D_n: dihedral subgroups `<a^d, a^j b>`
    /// with `j >= 1` (reflection subgroups `<a^i b>`, `i >= 1`, included) on one
    /// side; rotation subgroups and those containing `b` on the other.
    pub fn standard_partition(&self) -> Option<TwoColoring> {
        let mut class_a = Vec::new();
        let mut class_b = Vec::new();
        for (v, vertex) in self.vertices.iter().enumerate() {
            match vertex.descriptor? {
                SubgroupDescriptor::Dihedral { i, .. } if i >= 1 => class_a.push(v),
                _ => class_b.push(v),
            }
        }
        Some(TwoColoring { class_a, class_b })
    }

    /// True iff no hyperedge is monochromatic under `colors`.
    pub fn is_proper_coloring(&self, colors: &[usize]) -> bool {
        colors.len() == self.vertex_count()
            && self.edge_sets.iter().all(|e| {
                let mut members = e.ones();
                let first = members.next().map(|v| colors[v]);
                members.any(|v| Some(colors[v]) != first)
            })
    }

    /// Minimum number of colors such that no hyperedge is monochromatic.
    ///
    /// The D_n two-class partition is tried first; the exhaustive search only
    /// runs if it is not a proper coloring.
    pub fn chromatic_number(&self) -> Result<ChromaticNumber> {
        if let Some(e) = (0..self.edge_count()).find(|&e| self.edge_size(e) < 2) {
            return Err(Error::Uncolorable(e));
        }
        if self.edge_sets.is_empty() {
            return Ok(ChromaticNumber {
                value: usize::from(self.vertex_count() > 0),
                colors: vec![0; self.vertex_count()],
                witness: None,
                source: ColoringSource::ExhaustiveSearch,
            });
        }
        if let Some(partition) = self.standard_partition() {
            let colors = partition.colors(self.vertex_count());
            if self.is_proper_coloring(&colors) {
                return Ok(ChromaticNumber {
                    value: 2,
                    colors,
                    witness: Some(partition),
                    source: ColoringSource::StandardPartition,
                });
            }
        }
        // every hyperedge has two vertices, so one color never suffices
        let edges = self.edge_lists();
        let mut k = 2;
        loop {
            if let Some(colors) = hypergraph_k_coloring(self.vertex_count(), &edges, k) {
                let witness = (k == 2).then(|| TwoColoring::from_colors(&colors));
                return Ok(ChromaticNumber {
                    value: k,
                    colors,
                    witness,
                    source: ColoringSource::ExhaustiveSearch,
                });
            }
            k += 1;
        }
    }

    /// Minimum number of colors on hyperedges such that intersecting
    /// hyperedges get different colors.
    pub fn chromatic_index(&self) -> usize {
        LineGraph::from_hypergraph(self).chromatic_number()
    }

    /// A vertex lying in every hyperedge, if one exists.
    pub fn star_center(&self) -> Option<usize> {
        if self.edge_sets.is_empty() {
            return None;
        }
        let mut common = self.edge_sets[0].clone();
        for set in &self.edge_sets[1..] {
            common.intersect_with(set);
        }
        common.minimum()
    }

    pub fn is_star(&self) -> bool {
        self.star_center().is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoColoring {
    pub class_a: Vec<usize>,
    pub class_b: Vec<usize>,
}

impl TwoColoring {
    fn colors(&self, vertex_count: usize) -> Vec<usize> {
        let mut colors = vec![1; vertex_count];
        for &v in &self.class_a {
            colors[v] = 0;
        }
        colors
    }

    fn from_colors(colors: &[usize]) -> Self {
        let (a, b): (Vec<usize>, Vec<usize>) = (0..colors.len()).partition(|&v| colors[v] == 0);
        Self {
            class_a: a,
            class_b: b,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ColoringSource {
    StandardPartition,
    ExhaustiveSearch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChromaticNumber {
    pub value: usize,
    pub colors: Vec<usize>,
    pub witness: Option<TwoColoring>,
    pub source: ColoringSource,
}
