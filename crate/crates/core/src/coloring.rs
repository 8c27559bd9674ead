//! Exact coloring searches: graph coloring by DSatur branch and bound, and
//! hypergraph proper coloring (no monochromatic hyperedge) by backtracking.

use fixedbitset::FixedBitSet;

/// Chromatic number of a graph given by symmetric adjacency rows, with an
/// optimal coloring.
pub fn graph_chromatic_number(adj: &[FixedBitSet]) -> (usize, Vec<usize>) {
    let n = adj.len();
    if n == 0 {
        return (0, Vec::new());
    }
    let lower = greedy_clique(adj).len();
    let mut best = dsatur_greedy(adj);
    let mut best_k = best.iter().max().map_or(0, |&c| c + 1);
    if best_k > lower {
        let mut colors = vec![usize::MAX; n];
        branch(adj, &mut colors, 0, lower, &mut best_k, &mut best);
    }
    (best_k, best)
}

fn greedy_clique(adj: &[FixedBitSet]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..adj.len()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(adj[v].count_ones(..)));
    let mut clique: Vec<usize> = Vec::new();
    for v in order {
        if clique.iter().all(|&u| adj[u].contains(v)) {
            clique.push(v);
        }
    }
    clique
}

fn saturation(adj: &[FixedBitSet], colors: &[usize], v: usize) -> usize {
    let mut seen: Vec<usize> = adj[v]
        .ones()
        .filter_map(|u| (colors[u] != usize::MAX).then_some(colors[u]))
        .collect();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

fn pick_vertex(adj: &[FixedBitSet], colors: &[usize]) -> Option<usize> {
    (0..adj.len())
        .filter(|&v| colors[v] == usize::MAX)
        .max_by_key(|&v| {
            (
                saturation(adj, colors, v),
                adj[v].count_ones(..),
                std::cmp::Reverse(v),
            )
        })
}

fn dsatur_greedy(adj: &[FixedBitSet]) -> Vec<usize> {
    let mut colors = vec![usize::MAX; adj.len()];
    while let Some(v) = pick_vertex(adj, &colors) {
        let c = (0..)
            .find(|&c| adj[v].ones().all(|u| colors[u] != c))
            .expect("some color is free");
        colors[v] = c;
    }
    colors
}

fn branch(
    adj: &[FixedBitSet],
    colors: &mut Vec<usize>,
    used: usize,
    lower: usize,
    best_k: &mut usize,
    best: &mut Vec<usize>,
) {
    if *best_k == lower {
        return;
    }
    let Some(v) = pick_vertex(adj, colors) else {
        if used < *best_k {
            *best_k = used;
            best.clone_from(colors);
        }
        return;
    };
    for c in 0..=used {
        let next_used = used.max(c + 1);
        if next_used >= *best_k {
            break;
        }
        if adj[v].ones().any(|u| colors[u] == c) {
            continue;
        }
        colors[v] = c;
        branch(adj, colors, next_used, lower, best_k, best);
        colors[v] = usize::MAX;
    }
}

/// Searches for a proper `k`-coloring of a hypergraph: every hyperedge must
/// see at least two colors. `edges` hold vertex ids below `vertex_count`.
pub fn hypergraph_k_coloring(
    vertex_count: usize,
    edges: &[Vec<usize>],
    k: usize,
) -> Option<Vec<usize>> {
    if k == 0 {
        return (vertex_count == 0 && edges.is_empty()).then(Vec::new);
    }
    // each edge is checked once its largest vertex is colored
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); vertex_count];
    for (idx, e) in edges.iter().enumerate() {
        match e.iter().max() {
            Some(&last) => closing[last].push(idx),
            None => return None,
        }
    }
    let mut colors = vec![0usize; vertex_count];
    assign(0, 0, k, edges, &closing, &mut colors).then_some(colors)
}

fn assign(
    v: usize,
    used: usize,
    k: usize,
    edges: &[Vec<usize>],
    closing: &[Vec<usize>],
    colors: &mut Vec<usize>,
) -> bool {
    if v == colors.len() {
        return true;
    }
    for c in 0..k.min(used + 1) {
        colors[v] = c;
        let ok = closing[v]
            .iter()
            .all(|&e| edges[e].iter().any(|&u| colors[u] != c));
        if ok && assign(v + 1, used.max(c + 1), k, edges, closing, colors) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(n: usize, edges: &[(usize, usize)]) -> Vec<FixedBitSet> {
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for &(u, v) in edges {
            adj[u].insert(v);
            adj[v].insert(u);
        }
        adj
    }

    fn is_proper(adj: &[FixedBitSet], colors: &[usize]) -> bool {
        (0..adj.len()).all(|v| adj[v].ones().all(|u| colors[u] != colors[v]))
    }

    #[test]
    fn odd_cycle_needs_three_colors() {
        let adj = rows(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let (k, colors) = graph_chromatic_number(&adj);
        assert_eq!(k, 3);
        assert!(is_proper(&adj, &colors));
    }

    #[test]
    fn petersen_graph_is_three_chromatic() {
        let edges = [
            (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
            (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
            (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
        ];
        let adj = rows(10, &edges);
        let (k, colors) = graph_chromatic_number(&adj);
        assert_eq!(k, 3);
        assert!(is_proper(&adj, &colors));
    }

    #[test]
    fn complete_minus_edge() {
        let mut edges = Vec::new();
        for u in 0..6 {
            for v in u + 1..6 {
                if (u, v) != (0, 1) {
                    edges.push((u, v));
                }
            }
        }
        assert_eq!(graph_chromatic_number(&rows(6, &edges)).0, 5);
    }

    #[test]
    fn fano_plane_is_not_two_colorable() {
        let lines = vec![
            vec![0, 1, 2], vec![0, 3, 4], vec![0, 5, 6], vec![1, 3, 5],
            vec![1, 4, 6], vec![2, 3, 6], vec![2, 4, 5],
        ];
        assert!(hypergraph_k_coloring(7, &lines, 2).is_none());
        let colors = hypergraph_k_coloring(7, &lines, 3).unwrap();
        assert!(lines.iter().all(|l| l.iter().any(|&v| colors[v] != colors[l[0]])));
    }

    #[test]
    fn singleton_edge_is_never_colorable() {
        assert!(hypergraph_k_coloring(2, &[vec![0], vec![0, 1]], 3).is_none());
    }
}
