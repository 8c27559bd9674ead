//! Bron–Kerbosch maximal clique enumeration with Tomita pivoting, over
//! adjacency rows stored as bitsets.

use fixedbitset::FixedBitSet;

use crate::bitset::cmp_lex;

/// All maximal cliques of the graph whose `v`-th adjacency row is `adj[v]`,
/// as vertex sets ordered lexicographically by their ascending element lists.
/// Isolated vertices come out as singleton cliques.
pub fn maximal_clique_sets(adj: &[FixedBitSet]) -> Vec<FixedBitSet> {
    let n = adj.len();
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut candidates = FixedBitSet::with_capacity(n);
    candidates.insert_range(..);
    let mut current = FixedBitSet::with_capacity(n);
    expand(adj, &mut current, candidates, FixedBitSet::with_capacity(n), &mut out);
    out.sort_unstable_by(cmp_lex);
    out
}

/// [`maximal_clique_sets`] as sorted vertex lists.
pub fn maximal_cliques(adj: &[FixedBitSet]) -> Vec<Vec<usize>> {
    maximal_clique_sets(adj)
        .iter()
        .map(|c| c.ones().collect())
        .collect()
}

fn expand(
    adj: &[FixedBitSet],
    current: &mut FixedBitSet,
    mut candidates: FixedBitSet,
    mut excluded: FixedBitSet,
    out: &mut Vec<FixedBitSet>,
) {
    if candidates.is_clear() {
        if excluded.is_clear() {
            out.push(current.clone());
        }
        return;
    }
    let pivot = candidates
        .ones()
        .chain(excluded.ones())
        .max_by_key(|&u| candidates.intersection_count(&adj[u]))
        .expect("candidates is non-empty");
    let branch: Vec<usize> = candidates.difference(&adj[pivot]).collect();
    for v in branch {
        let mut next_candidates = candidates.clone();
        next_candidates.intersect_with(&adj[v]);
        let mut next_excluded = excluded.clone();
        next_excluded.intersect_with(&adj[v]);
        current.insert(v);
        expand(adj, current, next_candidates, next_excluded, out);
        current.set(v, false);
        candidates.set(v, false);
        excluded.insert(v);
    }
}
