//! Brute-force reference implementations. Each is exponential or worse and
//! exists only to cross-check the fast paths on small inputs.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::group::{multiply, DihedralElement, SubgroupCatalog};
use crate::hypergraph::Hypergraph;
use crate::line_graph::LineGraph;

pub const MAX_CLOSURE_N: u32 = 24;
pub const MAX_SUBSET_VERTICES: usize = 14;
pub const MAX_HELLY_EDGES: usize = 12;
pub const MAX_COLORING_VERTICES: usize = 24;

type ElementSet = BTreeSet<DihedralElement>;

fn elements_of(n: u32) -> Vec<DihedralElement> {
    (0..n)
        .map(DihedralElement::rotation)
        .chain((0..n).map(DihedralElement::reflection))
        .collect()
}

fn closure(gens: &[DihedralElement], n: u32) -> Result<ElementSet> {
    let mut set: ElementSet = [DihedralElement::IDENTITY].into_iter().collect();
    let mut frontier = vec![DihedralElement::IDENTITY];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = multiply(x, g, n)?;
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    Ok(set)
}

/// Every subgroup of D_n as the closure of at most two elements (every
/// subgroup of a dihedral group is 2-generated).
pub fn subgroups_by_closure(n: u32) -> Result<BTreeSet<ElementSet>> {
    if n == 0 || n > MAX_CLOSURE_N {
        return Err(Error::TooLarge { what: "dihedral order", size: n as usize, max: MAX_CLOSURE_N as usize });
    }
    let all = elements_of(n);
    let mut found = BTreeSet::new();
    for (i, &x) in all.iter().enumerate() {
        for &y in &all[i..] {
            found.insert(closure(&[x, y], n)?);
        }
    }
    Ok(found)
}

/// True iff the catalog lists exactly the subgroups found by closure, each once.
pub fn catalog_matches_closure(catalog: &SubgroupCatalog) -> Result<bool> {
    let expected = subgroups_by_closure(catalog.n())?;
    let listed: Vec<ElementSet> = catalog.all().iter().map(|s| s.elements().collect()).collect();
    let distinct: BTreeSet<ElementSet> = listed.iter().cloned().collect();
    Ok(distinct.len() == listed.len() && distinct == expected)
}

/// Vertex labels and hyperedges (as sorted label lists) computed straight
/// from element sets: all proper nontrivial subgroups with a trivially
/// intersecting partner, and every maximal pairwise-trivial subset of them
/// found by scanning all subsets.
pub fn hyperedges_by_subsets(catalog: &SubgroupCatalog) -> Result<(BTreeSet<String>, BTreeSet<Vec<String>>)> {
    let groups: Vec<(String, HashSet<DihedralElement>)> = catalog
        .all()
        .iter()
        .filter(|s| !s.is_trivial() && !s.is_whole())
        .map(|s| (s.notation(), s.elements().collect()))
        .collect();
    let trivial = |a: usize, b: usize| groups[a].1.intersection(&groups[b].1).count() == 1;
    let members: Vec<usize> = (0..groups.len())
        .filter(|&a| (0..groups.len()).any(|b| b != a && trivial(a, b)))
        .collect();
    let k = members.len();
    if k > MAX_SUBSET_VERTICES {
        return Err(Error::TooLarge { what: "vertex set", size: k, max: MAX_SUBSET_VERTICES });
    }
    let ok = |mask: u32| {
        (0..k).all(|a| mask >> a & 1 == 0 || (a + 1..k).all(|b| mask >> b & 1 == 0 || trivial(members[a], members[b])))
    };
    let mut edges = BTreeSet::new();
    for mask in 1u32..(1 << k) {
        if mask.count_ones() < 2 || !ok(mask) {
            continue;
        }
        let maximal = (0..k).all(|c| mask >> c & 1 == 1 || !ok(mask | 1 << c));
        if maximal {
            let mut labels: Vec<String> = (0..k).filter(|&a| mask >> a & 1 == 1).map(|a| groups[members[a]].0.clone()).collect();
            labels.sort();
            edges.insert(labels);
        }
    }
    let vertices = members.iter().map(|&a| groups[a].0.clone()).collect();
    Ok((vertices, edges))
}

/// The hypergraph's own vertices and hyperedges in the same label form.
pub fn labelled_structure(h: &Hypergraph) -> (BTreeSet<String>, BTreeSet<Vec<String>>) {
    let vertices = (0..h.vertex_count()).map(|v| h.label(v).to_string()).collect();
    let edges = (0..h.edge_count())
        .map(|e| {
            let mut labels: Vec<String> = h.edge_set(e).ones().map(|v| h.label(v).to_string()).collect();
            labels.sort();
            labels
        })
        .collect();
    (vertices, edges)
}

/// Helly property straight from the definition: every pairwise-intersecting
/// subfamily of hyperedges has a common vertex.
pub fn helly_by_subfamilies(h: &Hypergraph) -> Result<bool> {
    let m = h.edge_count();
    if m > MAX_HELLY_EDGES {
        return Err(Error::TooLarge { what: "hyperedge family", size: m, max: MAX_HELLY_EDGES });
    }
    let meets = |a: usize, b: usize| !h.edge_set(a).is_disjoint(h.edge_set(b));
    for mask in 1u32..(1 << m) {
        let family: Vec<usize> = (0..m).filter(|&e| mask >> e & 1 == 1).collect();
        let pairwise = family.iter().enumerate().all(|(i, &a)| family[i + 1..].iter().all(|&b| meets(a, b)));
        if !pairwise {
            continue;
        }
        let mut common = h.edge_set(family[0]).clone();
        for &e in &family[1..] {
            common.intersect_with(h.edge_set(e));
        }
        if common.is_clear() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest `k` for which some assignment of `k` colors leaves no hyperedge
/// monochromatic, found by trying every assignment.
pub fn chromatic_number_by_enumeration(h: &Hypergraph) -> Result<usize> {
    let v = h.vertex_count();
    if v > MAX_COLORING_VERTICES {
        return Err(Error::TooLarge { what: "vertex set", size: v, max: MAX_COLORING_VERTICES });
    }
    if (0..h.edge_count()).any(|e| h.edge_size(e) < 2) {
        return Err(Error::Uncolorable(0));
    }
    for k in 1..=v.max(1) {
        let mut colors = vec![0usize; v];
        loop {
            if h.is_proper_coloring(&colors) {
                return Ok(k);
            }
            // odometer step
            let mut pos = 0;
            while pos < v && colors[pos] + 1 == k {
                colors[pos] = 0;
                pos += 1;
            }
            if pos == v {
                break;
            }
            colors[pos] += 1;
        }
    }
    Ok(v)
}

/// Perfect elimination check by testing every pair of later neighbours.
pub fn is_elimination_order_by_pairs(g: &LineGraph, order: &[usize]) -> bool {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..g.node_count()).collect::<Vec<_>>() {
        return false;
    }
    order.iter().enumerate().all(|(i, &v)| {
        let later: Vec<usize> = order[i + 1..].iter().copied().filter(|&w| g.adjacent(v, w)).collect();
        later
            .iter()
            .enumerate()
            .all(|(j, &a)| later[j + 1..].iter().all(|&b| g.adjacent(a, b)))
    })
}
