//! Bipartite incidence graph of a hypergraph and the Euler-type genus bounds
//! evaluated on it.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Length};
use crate::planarity::UndirectedGraph;

/// Nodes `0..left` are hypergraph vertices; `left..left + right` are
/// hyperedges. A view over the hypergraph's incidence bitsets.
#[derive(Clone, Copy, Debug)]
pub struct IncidenceGraph<'h> {
    h: &'h Hypergraph,
}

/// Which side of the bipartition a node set lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Vertices,
    Hyperedges,
}

/// `K_{s,t}` inside an incidence graph, as hypergraph vertex ids and
/// hyperedge ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompleteBipartite {
    pub vertices: Vec<usize>,
    pub hyperedges: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget(pub u64);

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget(1_000_000)
    }
}

impl<'h> IncidenceGraph<'h> {
    pub fn new(h: &'h Hypergraph) -> Self {
        Self { h }
    }

    pub fn hypergraph(&self) -> &'h Hypergraph {
        self.h
    }

    /// Vertex-side node count.
    pub fn left(&self) -> usize {
        self.h.vertex_count()
    }

    /// Hyperedge-side node count.
    pub fn right(&self) -> usize {
        self.h.edge_count()
    }

    /// Total node count.
    pub fn node_count(&self) -> usize {
        self.left() + self.right()
    }

    /// Number of incidence edges, Σ |e|.
    pub fn edge_count(&self) -> usize {
        self.h.incidence_count()
    }

    pub fn degree(&self, node: usize) -> usize {
        if node < self.left() {
            self.h.degree(node)
        } else {
            self.h.edge_size(node - self.left())
        }
    }

    /// Neighbours of `node`, ascending.
    pub fn neighbors(&self, node: usize) -> impl Iterator<Item = usize> + 'h {
        let left = self.left();
        let (set, shift) = if node < left {
            (self.h.edges_through(node), left)
        } else {
            (self.h.edge_set(node - left), 0)
        };
        set.ones().map(move |x| x + shift)
    }

    pub fn hyperedge_node(&self, e: usize) -> usize {
        self.left() + e
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut degrees: Vec<usize> = (0..self.node_count()).map(|x| self.degree(x)).collect();
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        degrees
    }

    /// Materialises the graph. Node ids are as in this view.
    pub fn to_graph(&self) -> UndirectedGraph {
        let mut g = UndirectedGraph::new(self.node_count());
        for v in 0..self.left() {
            for e in self.neighbors(v) {
                g.add_edge(v, e);
            }
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        let total = self.node_count();
        if total == 0 {
            return true;
        }
        let mut seen = vec![false; total];
        seen[0] = true;
        let mut stack = vec![0];
        let mut reached = 1;
        while let Some(x) = stack.pop() {
            for y in self.neighbors(x) {
                if !std::mem::replace(&mut seen[y], true) {
                    reached += 1;
                    stack.push(y);
                }
            }
        }
        reached == total
    }

    /// Length of a shortest cycle. A BFS from every node, stopping a search
    /// once it can no longer improve the best cycle found, and stopping
    /// altogether at 4 (the minimum for a bipartite graph).
    pub fn girth(&self) -> Length {
        let total = self.node_count();
        let mut best = u32::MAX;
        let mut dist = vec![u32::MAX; total];
        let mut parent = vec![usize::MAX; total];
        let mut touched = Vec::new();
        let mut order: Vec<usize> = (0..total).collect();
        order.sort_by_key(|&x| std::cmp::Reverse(self.degree(x)));
        for source in order {
            for &x in &touched {
                dist[x] = u32::MAX;
            }
            touched.clear();
            dist[source] = 0;
            touched.push(source);
            let mut queue = VecDeque::from([source]);
            'bfs: while let Some(x) = queue.pop_front() {
                if 2 * dist[x] + 1 >= best {
                    break;
                }
                for y in self.neighbors(x) {
                    if dist[y] == u32::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        touched.push(y);
                        queue.push_back(y);
                    } else if parent[x] != y {
                        best = best.min(dist[x] + dist[y] + 1);
                        if best <= 4 {
                            break 'bfs;
                        }
                    }
                }
            }
            if best <= 4 {
                break;
            }
        }
        if best == u32::MAX {
            Length::Infinite
        } else {
            Length::Finite(best)
        }
    }

    /// Search for `K_{s,t}` with the `s` nodes drawn from `side`.
    ///
    /// `s`-subsets of `side` are explored depth first in ascending id order,
    /// keeping only those whose common neighbourhood still has `t` members.
    /// Every candidate subset visited costs one unit of budget.
    pub fn find_complete_bipartite(
        &self,
        s: usize,
        t: usize,
        side: Side,
        budget: SearchBudget,
    ) -> Result<Option<CompleteBipartite>> {
        let (near_len, far) = match side {
            Side::Vertices => (self.left(), self.right()),
            Side::Hyperedges => (self.right(), self.left()),
        };
        // ids on the chosen side, with their neighbourhoods as far-side ids
        let row = |x: usize| match side {
            Side::Vertices => self.h.edges_through(x),
            Side::Hyperedges => self.h.edge_set(x),
        };
        let candidates: Vec<usize> = (0..near_len).filter(|&x| row(x).count_ones(..) >= t).collect();
        let rows: Vec<&FixedBitSet> = candidates.iter().map(|&x| row(x)).collect();
        if s == 0 || candidates.len() < s {
            return Ok(None);
        }

        struct Search<'a> {
            rows: &'a [&'a FixedBitSet],
            s: usize,
            t: usize,
            spent: u64,
            limit: u64,
        }
        impl Search<'_> {
            fn extend(
                &mut self,
                start: usize,
                chosen: &mut Vec<usize>,
                common: &FixedBitSet,
            ) -> Result<Option<FixedBitSet>> {
                if chosen.len() == self.s {
                    return Ok(Some(common.clone()));
                }
                let still_needed = self.s - chosen.len();
                for i in start..=self.rows.len() - still_needed {
                    self.spent += 1;
                    if self.spent > self.limit {
                        return Err(Error::BudgetExceeded(self.limit));
                    }
                    let mut next = common.clone();
                    next.intersect_with(self.rows[i]);
                    if next.count_ones(..) < self.t {
                        continue;
                    }
                    chosen.push(i);
                    if let Some(found) = self.extend(i + 1, chosen, &next)? {
                        return Ok(Some(found));
                    }
                    chosen.pop();
                }
                Ok(None)
            }
        }

        let mut full = FixedBitSet::with_capacity(far);
        full.insert_range(..);
        let mut search = Search {
            rows: &rows,
            s,
            t,
            spent: 0,
            limit: budget.0,
        };
        let mut chosen = Vec::with_capacity(s);
        let Some(common) = search.extend(0, &mut chosen, &full)? else {
            return Ok(None);
        };
        let near: Vec<usize> = chosen.iter().map(|&i| candidates[i]).collect();
        let far_ids: Vec<usize> = common.ones().take(t).collect();
        let witness = match side {
            Side::Vertices => CompleteBipartite {
                vertices: near,
                hyperedges: far_ids,
            },
            Side::Hyperedges => CompleteBipartite {
                vertices: far_ids,
                hyperedges: near,
            },
        };
        Ok(Some(witness))
    }

    /// Check that every listed vertex lies in every listed hyperedge and that
    /// the lists have no repeats.
    pub fn verify_complete_bipartite(&self, w: &CompleteBipartite) -> bool {
        let distinct = |xs: &[usize]| {
            let mut sorted = xs.to_vec();
            sorted.sort_unstable();
            sorted.windows(2).all(|p| p[0] != p[1])
        };
        distinct(&w.vertices)
            && distinct(&w.hyperedges)
            && w.hyperedges.iter().all(|&e| e < self.right())
            && w.vertices.iter().all(|&v| {
                v < self.left() && w.hyperedges.iter().all(|&e| self.h.edge_set(e).contains(v))
            })
    }

    /// `m(gr - 2) / (2 gr) - n0 / 2 + 1` on this graph's own counts and girth.
    pub fn euler_genus_lower_bound(&self) -> Result<Ratio<i64>> {
        if !self.is_connected() {
            return Err(Error::NotApplicable("graph is disconnected"));
        }
        match self.girth() {
            Length::Finite(gr) => Ok(euler_genus_bound(self.node_count(), self.edge_count(), gr)),
            Length::Infinite => Err(Error::NotApplicable("graph is acyclic")),
        }
    }

    /// `ceil(q / 2 - n0 + 2)` for a connected triangle-free graph.
    pub fn nonorientable_lower_bound(&self) -> Result<i64> {
        if self.node_count() < 3 {
            return Err(Error::NotApplicable("fewer than three nodes"));
        }
        if !self.is_connected() {
            return Err(Error::NotApplicable("graph is disconnected"));
        }
        Ok(nonorientable_bound(self.node_count(), self.edge_count()))
    }
}

/// `m(gr - 2) / (2 gr) - n0 / 2 + 1`, exact.
pub fn euler_genus_bound(n0: usize, m: usize, girth: u32) -> Ratio<i64> {
    let gr = i64::from(girth);
    Ratio::new(m as i64 * (gr - 2), 2 * gr) - Ratio::new(n0 as i64, 2) + 1
}

/// `ceil(q / 2 - n0 + 2)`.
pub fn nonorientable_bound(n0: usize, q: usize) -> i64 {
    (Ratio::new(q as i64, 2) - n0 as i64 + 2).ceil().to_integer()
}

/// Crosscap number of `K_{s,t}`, `ceil((s - 2)(t - 2) / 2)`, for `s, t >= 2`.
pub fn complete_bipartite_crosscap(s: usize, t: usize) -> Result<i64> {
    if s < 2 || t < 2 {
        return Err(Error::NotApplicable("both sides need at least two nodes"));
    }
    Ok(Ratio::new((s as i64 - 2) * (t as i64 - 2), 2).ceil().to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::enumerate_subgroups;
    use crate::hypergraph::build_hypergraph;

    fn hypergraph(n: u32) -> Hypergraph {
        build_hypergraph(&enumerate_subgroups(n).unwrap()).unwrap()
    }

    #[test]
    fn counts() {
        let h4 = hypergraph(4);
        let g4 = IncidenceGraph::new(&h4);
        assert_eq!((g4.node_count(), g4.edge_count()), (12, 16));
        assert_eq!(g4.degree_sequence(), [5, 5, 3, 3, 3, 3, 3, 3, 1, 1, 1, 1]);
        let h6 = hypergraph(6);
        let g6 = IncidenceGraph::new(&h6);
        assert_eq!((g6.node_count(), g6.edge_count()), (21, 43));
        let h9 = hypergraph(9);
        let g9 = IncidenceGraph::new(&h9);
        assert_eq!((g9.node_count(), g9.edge_count()), (19, 41));
    }

    #[test]
    fn girth_is_never_odd() {
        for n in 2..=40 {
            let h = hypergraph(n);
            let g = IncidenceGraph::new(&h);
            match g.girth() {
                Length::Finite(k) => assert_eq!(k, 4, "n = {n}"),
                Length::Infinite => assert!(crate::numtheory::is_prime(n) || n == 1, "n = {n}"),
            }
        }
    }

    #[test]
    fn bounds_on_the_worked_examples() {
        let h6 = hypergraph(6);
        let g6 = IncidenceGraph::new(&h6);
        assert_eq!(g6.euler_genus_lower_bound().unwrap(), Ratio::new(5, 4));
        assert_eq!(g6.nonorientable_lower_bound().unwrap(), 3);
        assert_eq!(IncidenceGraph::new(&hypergraph(9)).euler_genus_lower_bound().unwrap(), Ratio::new(7, 4));
        assert!(matches!(
            IncidenceGraph::new(&hypergraph(7)).euler_genus_lower_bound(),
            Err(Error::NotApplicable(_))
        ));
        assert_eq!(nonorientable_bound(4, 4), 0);
        assert_eq!(complete_bipartite_crosscap(3, 5).unwrap(), 2);
        assert_eq!(complete_bipartite_crosscap(3, 3).unwrap(), 1);
    }

    #[test]
    fn complete_bipartite_search() {
        let h6 = hypergraph(6);
        let g6 = IncidenceGraph::new(&h6);
        let w = g6
            .find_complete_bipartite(3, 3, Side::Hyperedges, SearchBudget::default())
            .unwrap()
            .unwrap();
        assert!(g6.verify_complete_bipartite(&w));
        assert_eq!((w.vertices.len(), w.hyperedges.len()), (3, 3));

        let h9 = hypergraph(9);
        let g9 = IncidenceGraph::new(&h9);
        let w = g9
            .find_complete_bipartite(3, 5, Side::Hyperedges, SearchBudget::default())
            .unwrap()
            .unwrap();
        assert!(g9.verify_complete_bipartite(&w));
        assert_eq!((w.vertices.len(), w.hyperedges.len()), (5, 3));

        let h8 = hypergraph(8);
        let g8 = IncidenceGraph::new(&h8);
        let w = g8
            .find_complete_bipartite(3, 5, Side::Vertices, SearchBudget::default())
            .unwrap()
            .unwrap();
        assert!(g8.verify_complete_bipartite(&w));

        // a 1x1 witness exists iff there is any incidence
        let h7 = hypergraph(7);
        let g7 = IncidenceGraph::new(&h7);
        assert!(g7
            .find_complete_bipartite(1, 1, Side::Vertices, SearchBudget::default())
            .unwrap()
            .is_some());
        // a single hyperedge cannot host K_{2,2}
        assert!(g7
            .find_complete_bipartite(2, 2, Side::Hyperedges, SearchBudget::default())
            .unwrap()
            .is_none());
    }

    #[test]
    fn budget_is_enforced() {
        let h12 = hypergraph(12);
        let g = IncidenceGraph::new(&h12);
        // K_{6,16} does not occur, so an exhaustive search needs many steps
        let r = g.find_complete_bipartite(6, 16, Side::Vertices, SearchBudget::default());
        assert!(matches!(r, Ok(None)));
        let r = g.find_complete_bipartite(6, 16, Side::Vertices, SearchBudget(5));
        assert!(matches!(r, Err(Error::BudgetExceeded(5))));
    }

    #[test]
    fn tampered_witness_is_rejected() {
        let h6 = hypergraph(6);
        let g6 = IncidenceGraph::new(&h6);
        let mut w = g6
            .find_complete_bipartite(3, 3, Side::Hyperedges, SearchBudget::default())
            .unwrap()
            .unwrap();
        w.vertices[0] = w.vertices[1];
        assert!(!g6.verify_complete_bipartite(&w));
    }
}
