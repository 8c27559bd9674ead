//! Helly property, chordality of the line graph, and hypertree recognition,
//! each with a checkable witness.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::line_graph::LineGraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HellyVerdict {
    pub holds: bool,
    /// Pairwise-intersecting hyperedge ids with no common vertex.
    pub counterexample: Option<Vec<usize>>,
}

/// Decides the Helly property through vertex triples: the hypergraph is
/// Helly iff, for every three vertices, the hyperedges containing at least
/// two of them share a vertex. Such a family is always pairwise
/// intersecting, so a failing triple yields a counterexample directly.
///
/// Triples are visited busiest vertices first, which tends to surface a
/// failure early.
pub fn is_helly(h: &Hypergraph) -> HellyVerdict {
    let nv = h.vertex_count();
    let mut order: Vec<usize> = (0..nv).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(h.degree(v)), v));
    let mut full = FixedBitSet::with_capacity(nv);
    full.insert_range(..);

    // common[p][q]: intersection of the hyperedges through both p and q
    let mut common: Vec<Vec<Option<FixedBitSet>>> = vec![vec![None; nv]; nv];
    let mut pair_common = |p: usize, q: usize| -> FixedBitSet {
        let (p, q) = (p.min(q), p.max(q));
        if let Some(set) = &common[p][q] {
            return set.clone();
        }
        let mut shared = h.edges_through(p).clone();
        shared.intersect_with(h.edges_through(q));
        let mut acc = full.clone();
        for e in shared.ones() {
            acc.intersect_with(h.edge_set(e));
            // p and q stay in every such intersection
            if acc.count_ones(..) == 2 {
                break;
            }
        }
        common[p][q] = Some(acc.clone());
        acc
    };

    for (i, &x) in order.iter().enumerate() {
        for (j, &y) in order.iter().enumerate().skip(i + 1) {
            let xy = pair_common(x, y);
            for &z in &order[j + 1..] {
                let mut acc = xy.clone();
                acc.intersect_with(&pair_common(x, z));
                if acc.is_clear() {
                    return failing_triple(h, [x, y, z]);
                }
                acc.intersect_with(&pair_common(y, z));
                if acc.is_clear() {
                    return failing_triple(h, [x, y, z]);
                }
            }
        }
    }
    HellyVerdict {
        holds: true,
        counterexample: None,
    }
}

fn failing_triple(h: &Hypergraph, triple: [usize; 3]) -> HellyVerdict {
    let family = (0..h.edge_count())
        .filter(|&e| triple.iter().filter(|&&v| h.edge_set(e).contains(v)).count() >= 2)
        .collect();
    HellyVerdict {
        holds: false,
        counterexample: Some(family),
    }
}

/// True iff `family` is a nonempty set of pairwise-intersecting hyperedges
/// with empty common intersection.
pub fn verify_helly_counterexample(h: &Hypergraph, family: &[usize]) -> bool {
    if family.is_empty() || family.iter().any(|&e| e >= h.edge_count()) {
        return false;
    }
    let pairwise = family.iter().enumerate().all(|(i, &a)| {
        family[i + 1..]
            .iter()
            .all(|&b| !h.edge_set(a).is_disjoint(h.edge_set(b)))
    });
    let mut common = h.edge_set(family[0]).clone();
    for &e in &family[1..] {
        common.intersect_with(h.edge_set(e));
    }
    pairwise && common.is_clear()
}

/// [`verify_helly_counterexample`] reading pairwise intersection off the line
/// graph, which is much cheaper for large families.
pub fn verify_helly_counterexample_in(h: &Hypergraph, line: &LineGraph, family: &[usize]) -> bool {
    if family.is_empty() || line.node_count() != h.edge_count() || family.iter().any(|&e| e >= h.edge_count()) {
        return false;
    }
    let mut member = vec![false; h.edge_count()];
    for &e in family {
        member[e] = true;
    }
    let pairwise = family.iter().all(|&a| line.non_neighbors(a).iter().all(|&b| !member[b]));
    let mut common = h.edge_set(family[0]).clone();
    for &e in &family[1..] {
        common.intersect_with(h.edge_set(e));
    }
    pairwise && common.is_clear()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChordalWitness {
    /// Perfect elimination ordering: each node's later neighbours form a clique.
    EliminationOrder(Vec<usize>),
    /// An induced cycle of length at least 4.
    ChordlessCycle(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChordalVerdict {
    pub holds: bool,
    pub witness: ChordalWitness,
}

/// Chordality by maximum cardinality search and a perfect elimination check.
///
/// Works on the complement lists: the node with the most visited neighbours
/// is the one with the fewest visited non-neighbours.
pub fn is_chordal(g: &LineGraph) -> ChordalVerdict {
    let m = g.node_count();
    let mut visited = vec![false; m];
    let mut count = vec![0usize; m];
    let mut buckets: Vec<Vec<usize>> = vec![(0..m).rev().collect()];
    let mut lo = 0;
    let mut visit_order = Vec::with_capacity(m);
    while visit_order.len() < m {
        let v = loop {
            match buckets[lo].pop() {
                Some(v) if !visited[v] && count[v] == lo => break v,
                Some(_) => {}
                None => lo += 1,
            }
        };
        visited[v] = true;
        visit_order.push(v);
        for &w in g.non_neighbors(v) {
            if !visited[w] {
                count[w] += 1;
                if buckets.len() <= count[w] {
                    buckets.resize_with(count[w] + 1, Vec::new);
                }
                buckets[count[w]].push(w);
            }
        }
    }
    let peo: Vec<usize> = visit_order.into_iter().rev().collect();
    match elimination_violation(g, &peo) {
        None => ChordalVerdict {
            holds: true,
            witness: ChordalWitness::EliminationOrder(peo),
        },
        Some((v, x, y)) => {
            let cycle = chordless_cycle_through(g, v, x, y)
                .or_else(|| any_chordless_cycle(g))
                .expect("a graph without a perfect elimination ordering has a chordless cycle");
            ChordalVerdict {
                holds: false,
                witness: ChordalWitness::ChordlessCycle(cycle),
            }
        }
    }
}

/// First `(v, parent, w)` where `w` is a later neighbour of `v` that is not
/// adjacent to `v`'s earliest later neighbour `parent`.
fn elimination_violation(g: &LineGraph, peo: &[usize]) -> Option<(usize, usize, usize)> {
    let m = peo.len();
    let mut pos = vec![0; m];
    for (i, &v) in peo.iter().enumerate() {
        pos[v] = i;
    }
    for (i, &v) in peo.iter().enumerate() {
        let mut gaps: Vec<usize> = g.non_neighbors(v).iter().map(|&w| pos[w]).filter(|&p| p > i).collect();
        gaps.sort_unstable();
        let mut next = i + 1;
        for &gap in &gaps {
            if gap == next {
                next += 1;
            } else {
                break;
            }
        }
        if next >= m {
            continue;
        }
        let parent = peo[next];
        for &w in g.non_neighbors(parent) {
            if pos[w] > i && w != v && g.adjacent(v, w) {
                return Some((v, parent, w));
            }
        }
    }
    None
}

/// With `x`, `y` neighbours of `v` and not adjacent to each other, looks for
/// a shortest `x`-`y` path whose interior avoids `v` and its neighbours;
/// closing it through `v` gives an induced cycle.
fn chordless_cycle_through(g: &LineGraph, v: usize, x: usize, y: usize) -> Option<Vec<usize>> {
    let mut allowed: Vec<usize> = g.non_neighbors(v).to_vec();
    allowed.push(x);
    allowed.push(y);
    allowed.sort_unstable();
    let mut parent: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    parent.insert(x, x);
    let mut queue = VecDeque::from([x]);
    while let Some(a) = queue.pop_front() {
        if a == y {
            break;
        }
        for &b in &allowed {
            if !parent.contains_key(&b) && g.adjacent(a, b) {
                parent.insert(b, a);
                queue.push_back(b);
            }
        }
    }
    parent.get(&y)?;
    let mut cycle = vec![v];
    let mut path = vec![y];
    let mut cur = y;
    while cur != x {
        cur = parent[&cur];
        path.push(cur);
    }
    path.reverse();
    cycle.extend(path);
    Some(cycle)
}

fn any_chordless_cycle(g: &LineGraph) -> Option<Vec<usize>> {
    let m = g.node_count();
    for v in 0..m {
        let nbrs: Vec<usize> = (0..m).filter(|&u| g.adjacent(v, u)).collect();
        for (i, &x) in nbrs.iter().enumerate() {
            for &y in &nbrs[i + 1..] {
                if !g.adjacent(x, y) {
                    if let Some(cycle) = chordless_cycle_through(g, v, x, y) {
                        return Some(cycle);
                    }
                }
            }
        }
    }
    None
}

/// True iff `order` lists every node once and each node's later neighbours
/// are pairwise adjacent.
///
/// Uses the parent test: it suffices that every later neighbour of `v` other
/// than its earliest one `p` is also adjacent to `p`.
pub fn verify_elimination_order(g: &LineGraph, order: &[usize]) -> bool {
    let m = g.node_count();
    if order.len() != m {
        return false;
    }
    let mut pos = vec![usize::MAX; m];
    for (i, &v) in order.iter().enumerate() {
        if v >= m || pos[v] != usize::MAX {
            return false;
        }
        pos[v] = i;
    }
    order.iter().enumerate().all(|(i, &v)| {
        let missing = g.non_neighbors(v);
        let Some(&p) = order[i + 1..].iter().find(|&&w| missing.binary_search(&w).is_err()) else {
            return true;
        };
        g.non_neighbors(p)
            .iter()
            .all(|&u| u == v || pos[u] < i || missing.binary_search(&u).is_ok())
    })
}

/// True iff `cycle` is an induced cycle of length at least 4.
pub fn verify_chordless_cycle(g: &LineGraph, cycle: &[usize]) -> bool {
    let k = cycle.len();
    if k < 4 || cycle.iter().any(|&v| v >= g.node_count()) {
        return false;
    }
    let mut sorted = cycle.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != k {
        return false;
    }
    (0..k).all(|i| {
        (i + 1..k).all(|j| {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            g.adjacent(cycle[i], cycle[j]) == consecutive
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypertreeVerdict {
    pub holds: bool,
    pub helly: HellyVerdict,
    pub line_graph_chordal: ChordalVerdict,
}

/// A hypergraph is a hypertree iff it is Helly and its line graph is chordal.
pub fn is_hypertree(h: &Hypergraph) -> HypertreeVerdict {
    hypertree_with_line_graph(h, &LineGraph::from_hypergraph(h))
}

pub fn hypertree_with_line_graph(h: &Hypergraph, line: &LineGraph) -> HypertreeVerdict {
    let helly = is_helly(h);
    let line_graph_chordal = is_chordal(line);
    HypertreeVerdict {
        holds: helly.holds && line_graph_chordal.holds,
        helly,
        line_graph_chordal,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_vertices: usize,
    /// Search nodes explored before giving up with [`Error::BudgetExceeded`].
    pub budget: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self {
            max_vertices: 512,
            budget: 2_000_000,
        }
    }
}

/// A spanning tree on the hypergraph's vertices, as `(u, v)` pairs with
/// `u < v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HostTree {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
}

/// True iff `tree` is a spanning tree of the vertex set in which every
/// hyperedge induces a connected subgraph.
pub fn verify_host_tree(h: &Hypergraph, tree: &HostTree) -> bool {
    let nv = h.vertex_count();
    if tree.vertex_count != nv || tree.edges.len() + 1 != nv.max(1) {
        return false;
    }
    let mut adj = vec![Vec::new(); nv];
    for &(a, b) in &tree.edges {
        if a >= nv || b >= nv || a == b {
            return false;
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    let connected_within = |allowed: &FixedBitSet| {
        let Some(start) = allowed.minimum() else { return true };
        let mut seen = FixedBitSet::with_capacity(nv);
        seen.insert(start);
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if allowed.contains(y) && !seen.put(y) {
                    stack.push(y);
                }
            }
        }
        seen.count_ones(..) == allowed.count_ones(..)
    };
    let mut everything = FixedBitSet::with_capacity(nv);
    everything.insert_range(..);
    connected_within(&everything) && (0..h.edge_count()).all(|e| connected_within(h.edge_set(e)))
}

/// Searches for a host tree by branch and bound over vertex pairs.
///
/// A spanning tree hosts every hyperedge exactly when the number of
/// hyperedges containing both ends, summed over its edges, reaches
/// Σ (|e| - 1). Pairs are tried heaviest first; a branch is cut when the
/// remaining pairs cannot reach that total or when some hyperedge has two
/// vertices already joined by a tree path that leaves it.
pub fn find_host_tree(h: &Hypergraph, limits: SearchLimits) -> Result<Option<HostTree>> {
    let nv = h.vertex_count();
    if nv > limits.max_vertices {
        return Err(Error::NotApplicable("too many vertices for host-tree search"));
    }
    if nv <= 1 {
        return Ok(Some(HostTree {
            vertex_count: nv,
            edges: Vec::new(),
        }));
    }
    let target: u64 = (0..h.edge_count()).map(|e| h.edge_size(e) as u64 - 1).sum();
    let mut pairs: Vec<(u64, usize, usize)> = Vec::new();
    for u in 0..nv {
        for v in u + 1..nv {
            let w = h.edges_through(u).intersection_count(h.edges_through(v)) as u64;
            pairs.push((w, u, v));
        }
    }
    pairs.sort_by_key(|&(w, u, v)| (std::cmp::Reverse(w), v - u, u));
    // weights are sorted, so the best k weights from position i onward are
    // pairs[i..i + k]
    let weights: Vec<u64> = pairs.iter().map(|p| p.0).collect();
    let mut prefix = vec![0u64; weights.len() + 1];
    for (i, &w) in weights.iter().enumerate() {
        prefix[i + 1] = prefix[i] + w;
    }

    let mut search = HostSearch {
        h,
        pairs: &pairs,
        prefix: &prefix,
        target,
        needed: nv - 1,
        chosen: Vec::with_capacity(nv - 1),
        spent: 0,
        budget: limits.budget,
    };
    let mut forest = Forest::new(nv);
    match search.descend(0, 0, &mut forest)? {
        true => {
            let mut edges = search.chosen.clone();
            edges.sort_unstable();
            let tree = HostTree {
                vertex_count: nv,
                edges,
            };
            debug_assert!(verify_host_tree(h, &tree));
            Ok(verify_host_tree(h, &tree).then_some(tree))
        }
        false => Ok(None),
    }
}

#[derive(Clone)]
struct Forest {
    parent: Vec<usize>,
    adj: Vec<Vec<usize>>,
}

impl Forest {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            adj: vec![Vec::new(); n],
        }
    }

    fn root(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    fn link(&mut self, a: usize, b: usize) -> usize {
        let (ra, rb) = (self.root(a), self.root(b));
        self.parent[rb] = ra;
        self.adj[a].push(b);
        self.adj[b].push(a);
        rb
    }

    fn unlink(&mut self, a: usize, b: usize, old_root: usize) {
        self.parent[old_root] = old_root;
        self.adj[a].pop();
        self.adj[b].pop();
    }
}

struct HostSearch<'a> {
    h: &'a Hypergraph,
    pairs: &'a [(u64, usize, usize)],
    prefix: &'a [u64],
    target: u64,
    needed: usize,
    chosen: Vec<(usize, usize)>,
    spent: u64,
    budget: u64,
}

impl HostSearch<'_> {
    fn descend(&mut self, start: usize, weight: u64, forest: &mut Forest) -> Result<bool> {
        let missing = self.needed - self.chosen.len();
        if missing == 0 {
            return Ok(weight == self.target);
        }
        for i in start..self.pairs.len() {
            if self.pairs.len() - i < missing {
                break;
            }
            let best = weight + self.prefix[i + missing] - self.prefix[i];
            if best < self.target {
                break;
            }
            self.spent += 1;
            if self.spent > self.budget {
                return Err(Error::BudgetExceeded(self.budget));
            }
            let (w, u, v) = self.pairs[i];
            if forest.root(u) == forest.root(v) {
                continue;
            }
            let old = forest.link(u, v);
            self.chosen.push((u, v));
            if self.consistent(forest, u) && self.descend(i + 1, weight + w, forest)? {
                return Ok(true);
            }
            self.chosen.pop();
            forest.unlink(u, v, old);
        }
        Ok(false)
    }

    /// Every hyperedge meeting the component of `anchor` must have its
    /// vertices there joined by paths that stay inside it.
    fn consistent(&self, forest: &Forest, anchor: usize) -> bool {
        let nv = self.h.vertex_count();
        let root = forest.root(anchor);
        let mut component = FixedBitSet::with_capacity(nv);
        for x in 0..nv {
            if forest.root(x) == root {
                component.insert(x);
            }
        }
        let mut touching = FixedBitSet::with_capacity(self.h.edge_count());
        for x in component.ones() {
            touching.union_with(self.h.edges_through(x));
        }
        touching.ones().all(|e| {
            let mut inside = self.h.edge_set(e).clone();
            inside.intersect_with(&component);
            let Some(start) = inside.minimum() else { return true };
            let mut seen = FixedBitSet::with_capacity(nv);
            seen.insert(start);
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for &y in &forest.adj[x] {
                    if inside.contains(y) && !seen.put(y) {
                        stack.push(y);
                    }
                }
            }
            seen.count_ones(..) == inside.count_ones(..)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{enumerate_subgroups, SubgroupDescriptor};
    use crate::hypergraph::build_hypergraph;

    fn build(n: u32) -> Hypergraph {
        build_hypergraph(&enumerate_subgroups(n).unwrap()).unwrap()
    }

    #[test]
    fn helly_examples() {
        assert!(is_helly(&build(4)).holds);
        assert!(is_helly(&build(7)).holds);
        let d6 = build(6);
        let verdict = is_helly(&d6);
        assert!(!verdict.holds);
        assert!(verify_helly_counterexample(&d6, &verdict.counterexample.unwrap()));
    }

    #[test]
    fn triangle_of_pairs_is_not_helly() {
        let h = Hypergraph::from_edges(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let verdict = is_helly(&h);
        assert_eq!(verdict.counterexample, Some(vec![0, 1, 2]));
        assert!(!verify_helly_counterexample(&h, &[0, 1]));
    }

    #[test]
    fn dropping_one_edge_breaks_helly_for_multiples_of_four() {
        for n in [8, 12, 16, 20] {
            let h = build(n);
            let skip = h
                .edge_containing(h.vertex_of(SubgroupDescriptor::Dihedral { r: 2, i: 1 }).unwrap())
                .unwrap();
            let family: Vec<usize> = (0..h.edge_count()).filter(|&e| e != skip).collect();
            assert!(verify_helly_counterexample(&h, &family), "n = {n}");
        }
    }

    #[test]
    fn chordal_examples() {
        let d4 = LineGraph::from_hypergraph(&build(4));
        let verdict = is_chordal(&d4);
        let ChordalWitness::EliminationOrder(order) = &verdict.witness else { panic!() };
        assert!(verify_elimination_order(&d4, order));

        let k5 = LineGraph::from_adjacency(5, &(0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect::<Vec<_>>());
        assert!(is_chordal(&k5).holds);

        let c4 = LineGraph::from_adjacency(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let verdict = is_chordal(&c4);
        assert!(!verdict.holds);
        let ChordalWitness::ChordlessCycle(cycle) = &verdict.witness else { panic!() };
        assert!(verify_chordless_cycle(&c4, cycle));
        assert_eq!(cycle.len(), 4);
    }

    #[test]
    fn longer_hole_with_pendant_triangles() {
        // C6 with a triangle hung on each edge: chordless 6-cycle inside
        let mut pairs: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        for i in 0..6 {
            pairs.push((i, 6 + i));
            pairs.push(((i + 1) % 6, 6 + i));
        }
        let g = LineGraph::from_adjacency(12, &pairs);
        let verdict = is_chordal(&g);
        let ChordalWitness::ChordlessCycle(cycle) = &verdict.witness else { panic!() };
        assert!(verify_chordless_cycle(&g, cycle));
    }

    #[test]
    fn hypertree_examples() {
        assert!(is_hypertree(&build(7)).holds);
        assert!(is_hypertree(&build(4)).holds);
        assert!(!is_hypertree(&build(6)).holds);
    }

    #[test]
    fn host_tree_for_a_prime_is_a_path() {
        let h = build(5);
        let tree = find_host_tree(&h, SearchLimits::default()).unwrap().unwrap();
        assert_eq!(tree.edges, (0..5).map(|i| (i, i + 1)).collect::<Vec<_>>());
    }

    #[test]
    fn host_tree_small_cases() {
        let d4 = build(4);
        let tree = find_host_tree(&d4, SearchLimits::default()).unwrap().unwrap();
        assert!(verify_host_tree(&d4, &tree));
        assert_eq!(find_host_tree(&build(6), SearchLimits::default()).unwrap(), None);
        let single = Hypergraph::from_edges(1, vec![vec![0]]).unwrap();
        let tree = find_host_tree(&single, SearchLimits::default()).unwrap().unwrap();
        assert!(tree.edges.is_empty());
    }

    #[test]
    fn host_tree_budget_and_size_limits() {
        let h = build(6);
        let tight = SearchLimits {
            max_vertices: 64,
            budget: 3,
        };
        assert!(matches!(find_host_tree(&h, tight), Err(Error::BudgetExceeded(3))));
        let small = SearchLimits {
            max_vertices: 4,
            budget: 10,
        };
        assert!(matches!(find_host_tree(&h, small), Err(Error::NotApplicable(_))));
    }
}
