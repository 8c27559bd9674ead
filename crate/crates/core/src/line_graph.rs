//! Line graph of a hypergraph: one node per hyperedge, adjacent iff the
//! hyperedges intersect.
//!
//! The line graphs met here are complete or nearly so, so the graph is stored
//! through its complement: per node, the sorted list of non-adjacent nodes.

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::coloring::graph_chromatic_number;
use crate::hypergraph::Hypergraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineGraph {
    missing: Vec<Vec<usize>>,
}

impl LineGraph {
    pub fn from_hypergraph(h: &Hypergraph) -> Self {
        let m = h.edge_count();
        let degree: Vec<usize> = (0..h.vertex_count()).map(|v| h.degree(v)).collect();
        // hyperedges meeting e = union of the hyperedge sets of its members,
        // taken busiest member first so the union usually fills up early
        let missing = (0..m)
            .into_par_iter()
            .map(|e| {
                let mut members = h.edge(e);
                members.sort_by_key(|&v| std::cmp::Reverse(degree[v]));
                let mut met = FixedBitSet::with_capacity(m);
                for v in members {
                    met.union_with(h.edges_through(v));
                    if met.is_full() {
                        return Vec::new();
                    }
                }
                met.toggle_range(..);
                met.ones().collect()
            })
            .collect();
        Self { missing }
    }

    /// A graph on `node_count` nodes with the given undirected adjacencies.
    pub fn from_adjacency(node_count: usize, pairs: &[(usize, usize)]) -> Self {
        let mut adj = vec![FixedBitSet::with_capacity(node_count); node_count];
        for &(a, b) in pairs {
            if a != b {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        let missing = adj
            .into_iter()
            .enumerate()
            .map(|(a, mut row)| {
                row.insert(a);
                row.toggle_range(..);
                row.ones().collect()
            })
            .collect();
        Self { missing }
    }

    pub fn node_count(&self) -> usize {
        self.missing.len()
    }

    pub fn edge_count(&self) -> usize {
        let m = self.node_count();
        let absent: usize = self.missing.iter().map(Vec::len).sum();
        m * m.saturating_sub(1) / 2 - absent / 2
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        a != b && self.missing[a].binary_search(&b).is_err()
    }

    /// Nodes not adjacent to `a` (excluding `a`), ascending.
    pub fn non_neighbors(&self, a: usize) -> &[usize] {
        &self.missing[a]
    }

    /// Non-adjacent node pairs `(a, b)` with `a < b`.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        self.missing
            .iter()
            .enumerate()
            .flat_map(|(a, row)| row.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
            .collect()
    }

    pub fn is_complete(&self) -> bool {
        self.missing.iter().all(Vec::is_empty)
    }

    /// Adjacency pairs `(a, b)` with `a < b`, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let m = self.node_count();
        let mut out = Vec::with_capacity(self.edge_count());
        for a in 0..m {
            let mut gaps = self.missing[a].iter().peekable();
            for b in a + 1..m {
                while gaps.next_if(|&&g| g < b).is_some() {}
                if gaps.peek() != Some(&&b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Connected components of the complement, each sorted, ordered by
    /// smallest member.
    pub(crate) fn complement_components(&self) -> Vec<Vec<usize>> {
        let m = self.node_count();
        let mut seen = vec![false; m];
        let mut components = Vec::new();
        for start in 0..m {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut component = vec![start];
            let mut head = 0;
            while head < component.len() {
                let x = component[head];
                head += 1;
                for &y in &self.missing[x] {
                    if !std::mem::replace(&mut seen[y], true) {
                        component.push(y);
                    }
                }
            }
            component.sort_unstable();
            components.push(component);
        }
        components
    }

    /// Exact chromatic number.
    ///
    /// Nodes in different complement components are adjacent, so the graph is
    /// the join of its complement-component pieces and the chromatic number is
    /// the sum over those pieces.
    pub fn chromatic_number(&self) -> usize {
        self.complement_components()
            .iter()
            .map(|component| {
                if component.len() == 1 {
                    return 1;
                }
                let k = component.len();
                let adj: Vec<FixedBitSet> = component
                    .iter()
                    .map(|&a| {
                        let mut row = FixedBitSet::with_capacity(k);
                        for (j, &b) in component.iter().enumerate() {
                            if self.adjacent(a, b) {
                                row.insert(j);
                            }
                        }
                        row
                    })
                    .collect();
                graph_chromatic_number(&adj).0
            })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::enumerate_subgroups;
    use crate::hypergraph::build_hypergraph;

    fn build(n: u32) -> Hypergraph {
        build_hypergraph(&enumerate_subgroups(n).unwrap()).unwrap()
    }

    fn naive(h: &Hypergraph) -> Vec<(usize, usize)> {
        let m = h.edge_count();
        let mut out = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                if !h.edge_set(a).is_disjoint(h.edge_set(b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    #[test]
    fn matches_direct_intersection() {
        for n in 2..=30 {
            let h = build(n);
            let g = LineGraph::from_hypergraph(&h);
            assert_eq!(g.node_count(), h.edge_count());
            assert_eq!(g.edges(), naive(&h), "n = {n}");
            assert_eq!(g.edge_count(), g.edges().len());
        }
    }

    #[test]
    fn d4_misses_exactly_one_pair() {
        let h = build(4);
        let g = LineGraph::from_hypergraph(&h);
        assert_eq!(g.edge_count(), 5);
        let [(a, b)] = g.non_edges()[..] else {
            panic!("expected a single non-edge")
        };
        let mut labels: Vec<Vec<&str>> = [a, b]
            .iter()
            .map(|&e| h.edge(e).into_iter().map(|v| h.label(v)).collect())
            .collect();
        labels.sort();
        assert_eq!(labels, [vec!["<a^2, ab>", "<b>", "<a^2 b>"], vec!["<a^2, b>", "<ab>", "<a^3 b>"]]);
    }

    #[test]
    fn small_cases() {
        let single = LineGraph::from_hypergraph(&build(5));
        assert_eq!((single.node_count(), single.edge_count()), (1, 0));
        assert!(LineGraph::from_hypergraph(&build(6)).is_complete());
    }

    #[test]
    fn chromatic_number_via_complement_components() {
        let c5 = LineGraph::from_adjacency(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert_eq!(c5.chromatic_number(), 3);
        let empty = LineGraph::from_adjacency(4, &[]);
        assert_eq!(empty.chromatic_number(), 1);
        let k4_minus = LineGraph::from_adjacency(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]);
        assert_eq!(k4_minus.chromatic_number(), 3);
    }
}
