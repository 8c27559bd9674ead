//! Planarity testing by the left-right criterion, with a combinatorial
//! embedding on success and a Kuratowski subdivision on failure. Both
//! outcomes come with an independent checker.

use serde::Serialize;

/// Simple undirected graph on nodes `0..node_count`.
#[derive(Clone, Debug, Default)]
pub struct UndirectedGraph {
    adj: Vec<Vec<(usize, usize)>>,
    edges: Vec<(usize, usize)>,
}

impl UndirectedGraph {
    pub fn new(node_count: usize) -> Self {
        Self {
            adj: vec![Vec::new(); node_count],
            edges: Vec::new(),
        }
    }

    /// Builds a simple graph; loops and repeated pairs are dropped.
    pub fn from_edges(node_count: usize, pairs: &[(usize, usize)]) -> Self {
        let mut canonical: Vec<(usize, usize)> = pairs
            .iter()
            .filter(|(a, b)| a != b)
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect();
        canonical.sort_unstable();
        canonical.dedup();
        let mut g = Self::new(node_count);
        for (a, b) in canonical {
            g.add_edge(a, b);
        }
        g
    }

    /// Adds `{u, v}` without checking for repeats; the caller keeps the graph
    /// simple. Returns the edge id.
    pub fn add_edge(&mut self, u: usize, v: usize) -> usize {
        assert!(u != v, "self-loop at {u}");
        let id = self.edges.len();
        self.adj[u].push((v, id));
        self.adj[v].push((u, id));
        self.edges.push((u, v));
        id
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().map(|&(w, _)| w)
    }

    /// The subgraph formed by the given edges, with its nodes relabelled
    /// densely. Returns the graph and the original id of each new node.
    pub fn edge_subgraph(&self, edge_ids: &[usize]) -> (UndirectedGraph, Vec<usize>) {
        let mut relabel = std::collections::HashMap::new();
        let mut original = Vec::new();
        let mut pairs = Vec::with_capacity(edge_ids.len());
        for &id in edge_ids {
            let (a, b) = self.edges[id];
            let mut map = |x: usize| {
                *relabel.entry(x).or_insert_with(|| {
                    original.push(x);
                    original.len() - 1
                })
            };
            let (a, b) = (map(a), map(b));
            pairs.push((a, b));
        }
        let mut g = UndirectedGraph::new(original.len());
        for (a, b) in pairs {
            g.add_edge(a, b);
        }
        (g, original)
    }
}

/// A rotation system: for each node, its neighbours in clockwise order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Embedding {
    pub rotation: Vec<Vec<usize>>,
}

impl Embedding {
    /// Number of faces, traced per connected component. An isolated node
    /// counts as one face.
    pub fn component_faces(&self) -> Vec<(usize, usize, usize)> {
        let nodes = self.rotation.len();
        let mut component = vec![usize::MAX; nodes];
        let mut summary = Vec::new();
        for start in 0..nodes {
            if component[start] != usize::MAX {
                continue;
            }
            let id = summary.len();
            component[start] = id;
            let mut stack = vec![start];
            let (mut v_count, mut half_edges) = (0usize, 0usize);
            while let Some(x) = stack.pop() {
                v_count += 1;
                half_edges += self.rotation[x].len();
                for &y in &self.rotation[x] {
                    if component[y] == usize::MAX {
                        component[y] = id;
                        stack.push(y);
                    }
                }
            }
            summary.push((v_count, half_edges / 2, 0));
        }
        // trace faces: the successor of half-edge v->w is w->u, where u
        // precedes v in the clockwise rotation at w
        let mut visited: Vec<Vec<bool>> = self.rotation.iter().map(|r| vec![false; r.len()]).collect();
        for v in 0..nodes {
            for i in 0..self.rotation[v].len() {
                if visited[v][i] {
                    continue;
                }
                summary[component[v]].2 += 1;
                let (mut x, mut j) = (v, i);
                while !visited[x][j] {
                    visited[x][j] = true;
                    let w = self.rotation[x][j];
                    let rot = &self.rotation[w];
                    let back = rot.iter().position(|&y| y == x).expect("rotation is symmetric");
                    let prev = (back + rot.len() - 1) % rot.len();
                    let u = rot[prev];
                    x = w;
                    j = self.rotation[w].iter().position(|&y| y == u).expect("neighbour");
                }
            }
        }
        for entry in &mut summary {
            if entry.1 == 0 {
                entry.2 = 1;
            }
        }
        summary
    }

    /// True iff this is a rotation system of `g` whose every component
    /// satisfies `V - E + F = 2`, i.e. a genuine plane embedding.
    pub fn verify(&self, g: &UndirectedGraph) -> bool {
        if self.rotation.len() != g.node_count() {
            return false;
        }
        for v in 0..g.node_count() {
            let mut listed = self.rotation[v].clone();
            let mut actual: Vec<usize> = g.neighbors(v).collect();
            listed.sort_unstable();
            actual.sort_unstable();
            if listed != actual {
                return false;
            }
        }
        self.component_faces()
            .iter()
            .all(|&(v, e, f)| v as i64 - e as i64 + f as i64 == 2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// A subdivision of `K_5` or `K_{3,3}` given by its edges in the host graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KuratowskiSubgraph {
    pub kind: KuratowskiKind,
    pub branch_vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl KuratowskiSubgraph {
    /// Re-derives the kind and branch vertices from the edge list and checks
    /// every edge exists in `g`.
    pub fn verify(&self, g: &UndirectedGraph) -> bool {
        let mut host: Vec<(usize, usize)> = g.edges().iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        host.sort_unstable();
        let all_present = self.edges.iter().all(|&(a, b)| host.binary_search(&(a.min(b), a.max(b))).is_ok());
        all_present
            && matches!(classify_subdivision(&self.edges),
                Some((kind, branch)) if kind == self.kind && branch == self.branch_vertices)
    }
}

#[derive(Clone, Debug)]
pub enum Planarity {
    Planar(Embedding),
    NonPlanar(KuratowskiSubgraph),
}

impl Planarity {
    pub fn is_planar(&self) -> bool {
        matches!(self, Planarity::Planar(_))
    }
}

pub fn is_planar(g: &UndirectedGraph) -> bool {
    LrState::run(g).is_some()
}

pub fn planar_embedding(g: &UndirectedGraph) -> Option<Embedding> {
    LrState::run(g)
}

/// Decides planarity and returns the matching certificate.
pub fn planarity(g: &UndirectedGraph) -> Planarity {
    match planar_embedding(g) {
        Some(embedding) => Planarity::Planar(embedding),
        None => Planarity::NonPlanar(
            kuratowski_subgraph(g).expect("a nonplanar graph has a Kuratowski subgraph"),
        ),
    }
}

/// Extracts a Kuratowski subdivision from a nonplanar graph.
///
/// Keeps a set of edges known to be needed. Each round finds, by doubling
/// and then bisection, the shortest prefix of the remaining edges that
/// together with the needed set is nonplanar; the last edge of that prefix is
/// needed and the rest of the tail is discarded. The result is an
/// edge-minimal nonplanar subgraph, which is a subdivision of `K_5` or
/// `K_{3,3}`.
pub fn kuratowski_subgraph(g: &UndirectedGraph) -> Option<KuratowskiSubgraph> {
    let nonplanar = |ids: &[usize]| !is_planar(&g.edge_subgraph(ids).0);
    let mut candidates: Vec<usize> = (0..g.edge_count()).collect();
    if !nonplanar(&candidates) {
        return None;
    }
    let mut needed: Vec<usize> = Vec::new();
    let with_prefix = |needed: &[usize], candidates: &[usize], k: usize| {
        let mut ids = needed.to_vec();
        ids.extend_from_slice(&candidates[..k]);
        nonplanar(&ids)
    };
    while !nonplanar(&needed) {
        // gallop to a nonplanar prefix length, then bisect down to the shortest
        let mut hi = 1;
        while hi < candidates.len() && !with_prefix(&needed, &candidates, hi) {
            hi *= 2;
        }
        hi = hi.min(candidates.len());
        let mut lo = hi / 2;
        while lo + 1 < hi {
            let mid = (lo + hi) / 2;
            if with_prefix(&needed, &candidates, mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        needed.push(candidates[hi - 1]);
        candidates.truncate(hi - 1);
    }
    let mut edges: Vec<(usize, usize)> = needed
        .iter()
        .map(|&id| {
            let (a, b) = g.edges()[id];
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    let (kind, branch_vertices) = classify_subdivision(&edges)?;
    Some(KuratowskiSubgraph {
        kind,
        branch_vertices,
        edges,
    })
}

/// Recognises a subdivision of `K_5` or `K_{3,3}` from its edge list.
/// Returns the kind and the sorted branch vertices.
pub fn classify_subdivision(edges: &[(usize, usize)]) -> Option<(KuratowskiKind, Vec<usize>)> {
    use std::collections::{BTreeMap, BTreeSet};

    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut seen_pairs = BTreeSet::new();
    for &(a, b) in edges {
        if a == b || !seen_pairs.insert((a.min(b), a.max(b))) {
            return None;
        }
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    if adj.values().any(|nbrs| nbrs.len() < 2) {
        return None;
    }
    let branch: Vec<usize> = adj
        .iter()
        .filter(|(_, nbrs)| nbrs.len() > 2)
        .map(|(&v, _)| v)
        .collect();
    let kind = match branch.len() {
        5 if branch.iter().all(|v| adj[v].len() == 4) => KuratowskiKind::K5,
        6 if branch.iter().all(|v| adj[v].len() == 3) => KuratowskiKind::K33,
        _ => return None,
    };

    // follow each branch-vertex edge along degree-2 nodes to the next branch vertex
    let mut internal_visits = 0usize;
    let mut links = BTreeSet::new();
    for &start in &branch {
        for &first in &adj[&start] {
            let (mut prev, mut cur) = (start, first);
            while adj[&cur].len() == 2 {
                internal_visits += 1;
                let next = if adj[&cur][0] == prev { adj[&cur][1] } else { adj[&cur][0] };
                prev = cur;
                cur = next;
                if cur == start && adj[&cur].len() == 2 {
                    return None;
                }
            }
            if cur == start {
                return None;
            }
            if start < cur && !links.insert((start, cur)) {
                return None;
            }
        }
    }
    // each internal node is crossed once from each end of its path; any
    // degree-2 node left over sits on a cycle away from the branch vertices
    let internal = adj.len() - branch.len();
    if internal_visits != 2 * internal {
        return None;
    }

    let complete = match kind {
        KuratowskiKind::K5 => links.len() == 10,
        KuratowskiKind::K33 => {
            let side: BTreeSet<usize> = branch
                .iter()
                .copied()
                .filter(|&v| v == branch[0] || !links.contains(&(branch[0].min(v), branch[0].max(v))))
                .collect();
            links.len() == 9
                && side.len() == 3
                && links.iter().all(|(a, b)| side.contains(a) != side.contains(b))
        }
    };
    complete.then_some((kind, branch))
}

#[derive(Clone, Copy, Debug, Default)]
struct Interval {
    low: Option<usize>,
    high: Option<usize>,
}

impl Interval {
    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Debug, Default)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

/// State of the left-right planarity test. Edges are identified by their
/// undirected id; the DFS orients each one exactly once.
struct LrState<'g> {
    g: &'g UndirectedGraph,
    height: Vec<u32>,
    parent_edge: Vec<Option<usize>>,
    roots: Vec<usize>,
    /// Orientation of each edge as (source, target); `None` until visited.
    oriented: Vec<Option<(usize, usize)>>,
    /// Outgoing edges in orientation order.
    discovered: Vec<Vec<usize>>,
    /// Outgoing edges sorted by nesting depth.
    out_edges: Vec<Vec<usize>>,
    lowpt: Vec<u32>,
    lowpt2: Vec<u32>,
    nesting_depth: Vec<i64>,
    reference: Vec<Option<usize>>,
    side: Vec<i64>,
    stack: Vec<ConflictPair>,
    stack_bottom: Vec<usize>,
    lowpt_edge: Vec<Option<usize>>,
}

const UNSEEN: u32 = u32::MAX;

impl<'g> LrState<'g> {
    fn run(g: &'g UndirectedGraph) -> Option<Embedding> {
        let nodes = g.node_count();
        let edges = g.edge_count();
        if nodes > 2 && edges > 3 * nodes - 6 {
            return None;
        }
        let mut s = LrState {
            g,
            height: vec![UNSEEN; nodes],
            parent_edge: vec![None; nodes],
            roots: Vec::new(),
            oriented: vec![None; edges],
            discovered: vec![Vec::new(); nodes],
            out_edges: Vec::new(),
            lowpt: vec![0; edges],
            lowpt2: vec![0; edges],
            nesting_depth: vec![0; edges],
            reference: vec![None; edges],
            side: vec![1; edges],
            stack: Vec::new(),
            stack_bottom: vec![0; edges],
            lowpt_edge: vec![None; edges],
        };
        for v in 0..nodes {
            if s.height[v] == UNSEEN {
                s.height[v] = 0;
                s.roots.push(v);
                s.orient(v);
            }
        }
        s.sort_out_edges();
        for root in s.roots.clone() {
            if !s.test(root) {
                return None;
            }
        }
        let mut old_ref = vec![None; edges];
        for e in 0..edges {
            let sign = s.sign(e, &mut old_ref);
            s.nesting_depth[e] *= sign;
        }
        s.sort_out_edges();
        Some(s.embed())
    }

    fn target(&self, e: usize) -> usize {
        self.oriented[e].expect("edge oriented").1
    }

    fn sort_out_edges(&mut self) {
        let depth = &self.nesting_depth;
        self.out_edges = self.discovered.clone();
        for list in &mut self.out_edges {
            list.sort_by_key(|&e| depth[e]);
        }
    }

    fn orient(&mut self, root: usize) {
        let mut dfs = vec![root];
        let mut ind = vec![0usize; self.g.node_count()];
        let mut resumed = vec![false; self.g.edge_count()];
        while let Some(v) = dfs.pop() {
            let parent = self.parent_edge[v];
            while ind[v] < self.g.adj[v].len() {
                let (w, vw) = self.g.adj[v][ind[v]];
                if !resumed[vw] {
                    if self.oriented[vw].is_some() {
                        ind[v] += 1;
                        continue;
                    }
                    self.oriented[vw] = Some((v, w));
                    self.discovered[v].push(vw);
                    self.lowpt[vw] = self.height[v];
                    self.lowpt2[vw] = self.height[v];
                    if self.height[w] == UNSEEN {
                        self.parent_edge[w] = Some(vw);
                        self.height[w] = self.height[v] + 1;
                        dfs.push(v);
                        dfs.push(w);
                        resumed[vw] = true;
                        break;
                    }
                    self.lowpt[vw] = self.height[w];
                }
                self.nesting_depth[vw] = 2 * i64::from(self.lowpt[vw]);
                if self.lowpt2[vw] < self.height[v] {
                    self.nesting_depth[vw] += 1;
                }
                if let Some(e) = parent {
                    if self.lowpt[vw] < self.lowpt[e] {
                        self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
                        self.lowpt[e] = self.lowpt[vw];
                    } else if self.lowpt[vw] > self.lowpt[e] {
                        self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
                    } else {
                        self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
                    }
                }
                ind[v] += 1;
            }
        }
    }

    fn test(&mut self, root: usize) -> bool {
        let mut dfs = vec![root];
        let mut ind = vec![0usize; self.g.node_count()];
        let mut resumed = vec![false; self.g.edge_count()];
        while let Some(v) = dfs.pop() {
            let parent = self.parent_edge[v];
            let mut descended = false;
            while ind[v] < self.out_edges[v].len() {
                let ei = self.out_edges[v][ind[v]];
                let w = self.target(ei);
                if !resumed[ei] {
                    self.stack_bottom[ei] = self.stack.len();
                    if self.parent_edge[w] == Some(ei) {
                        dfs.push(v);
                        dfs.push(w);
                        resumed[ei] = true;
                        descended = true;
                        break;
                    }
                    self.lowpt_edge[ei] = Some(ei);
                    self.stack.push(ConflictPair {
                        left: Interval::default(),
                        right: Interval {
                            low: Some(ei),
                            high: Some(ei),
                        },
                    });
                }
                if self.lowpt[ei] < self.height[v] {
                    let e = parent.expect("return edges imply a parent edge");
                    if ind[v] == 0 {
                        self.lowpt_edge[e] = self.lowpt_edge[ei];
                    } else if !self.add_constraints(ei, e) {
                        return false;
                    }
                }
                ind[v] += 1;
            }
            if !descended {
                if let Some(e) = parent {
                    self.remove_back_edges(e);
                }
            }
        }
        true
    }

    fn conflicting(&self, interval: &Interval, b: usize) -> bool {
        !interval.is_empty() && self.lowpt[interval.high.expect("non-empty")] > self.lowpt[b]
    }

    fn lowest(&self, p: &ConflictPair) -> u32 {
        match (p.left.low, p.right.low) {
            (None, Some(r)) => self.lowpt[r],
            (Some(l), None) => self.lowpt[l],
            (Some(l), Some(r)) => self.lowpt[l].min(self.lowpt[r]),
            (None, None) => unreachable!("empty conflict pair on the stack"),
        }
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair::default();
        while let Some(mut q) = self.stack.pop() {
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            let q_low = q.right.low.expect("right interval set");
            if self.lowpt[q_low] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else {
                    self.reference[p.right.low.expect("set")] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.reference[q_low] = self.lowpt_edge[e];
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        while let Some(top) = self.stack.last().copied() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().expect("non-empty");
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if let Some(low) = p.right.low {
                self.reference[low] = q.right.high;
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else if let Some(low) = p.left.low {
                self.reference[low] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.oriented[e].expect("edge oriented").0;
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            let p = self.stack.pop().expect("non-empty");
            if let Some(low) = p.left.low {
                self.side[low] = -1;
            }
        }
        if let Some(mut p) = self.stack.pop() {
            while let Some(high) = p.left.high {
                if self.target(high) != u {
                    break;
                }
                p.left.high = self.reference[high];
            }
            if p.left.high.is_none() {
                if let Some(low) = p.left.low {
                    self.reference[low] = p.right.low;
                    self.side[low] = -1;
                    p.left.low = None;
                }
            }
            while let Some(high) = p.right.high {
                if self.target(high) != u {
                    break;
                }
                p.right.high = self.reference[high];
            }
            if p.right.high.is_none() {
                if let Some(low) = p.right.low {
                    self.reference[low] = p.left.low;
                    self.side[low] = -1;
                    p.right.low = None;
                }
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < self.height[u] {
            if let Some(top) = self.stack.last() {
                let (hl, hr) = (top.left.high, top.right.high);
                self.reference[e] = match (hl, hr) {
                    (Some(l), None) => Some(l),
                    (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => Some(l),
                    _ => hr,
                };
            }
        }
    }

    /// Resolves the side of `e` relative to the chain of references, flattening
    /// the chain as it goes. `old_ref` is scratch space, all `None` on entry
    /// and on exit.
    fn sign(&mut self, e: usize, old_ref: &mut [Option<usize>]) -> i64 {
        let mut dfs = vec![e];
        let mut touched = Vec::new();
        while let Some(x) = dfs.pop() {
            if let Some(r) = self.reference[x] {
                dfs.push(x);
                dfs.push(r);
                old_ref[x] = Some(r);
                touched.push(x);
                self.reference[x] = None;
            } else if let Some(r) = old_ref[x] {
                self.side[x] *= self.side[r];
            }
        }
        for x in touched {
            old_ref[x] = None;
        }
        self.side[e]
    }

    fn embed(&self) -> Embedding {
        let nodes = self.g.node_count();
        let mut rotation: Vec<Vec<usize>> = (0..nodes)
            .map(|v| self.out_edges[v].iter().map(|&e| self.target(e)).collect())
            .collect();
        let mut left_ref = vec![usize::MAX; nodes];
        let mut right_ref = vec![usize::MAX; nodes];
        let mut ind = vec![0usize; nodes];
        let position = |rot: &[usize], x: usize| rot.iter().position(|&y| y == x).expect("reference present");
        for &root in &self.roots {
            let mut dfs = vec![root];
            while let Some(v) = dfs.pop() {
                while ind[v] < self.out_edges[v].len() {
                    let ei = self.out_edges[v][ind[v]];
                    ind[v] += 1;
                    let w = self.target(ei);
                    if self.parent_edge[w] == Some(ei) {
                        rotation[w].insert(0, v);
                        left_ref[v] = w;
                        right_ref[v] = w;
                        dfs.push(v);
                        dfs.push(w);
                        break;
                    }
                    if self.side[ei] == 1 {
                        let at = position(&rotation[w], right_ref[w]);
                        rotation[w].insert(at + 1, v);
                    } else {
                        let at = position(&rotation[w], left_ref[w]);
                        rotation[w].insert(at, v);
                        left_ref[w] = v;
                    }
                }
            }
        }
        Embedding { rotation }
    }
}
