//! Planarity and genus certificates for a hypergraph, all evaluated on its
//! incidence graph.

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::group::{enumerate_subgroups, SubgroupDescriptor};
use crate::hypergraph::{Hypergraph, Length};
use crate::incidence::{
    complete_bipartite_crosscap, euler_genus_bound, CompleteBipartite, IncidenceGraph, SearchBudget, Side,
};
use crate::numtheory::{is_prime, prime_power, smallest_prime_factor};
use crate::planarity::{classify_subdivision, is_planar, kuratowski_subgraph, planar_embedding, KuratowskiKind, UndirectedGraph};

/// Exact rational, serialized as `"p/q"` (or `"p"` when integral).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Exact(pub Ratio<i64>);

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

/// Which vertex family a sub-hypergraph certificate is induced by: all
/// reflections plus a handful of rotation and dihedral subgroups chosen by
/// the shape of `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Even `n >= 8`: `<a>`, `<a^{n/2}>`, `<a^{n/2}, b>`, `<a^{n/2}, ab>`, `<a^{n/2}, a^2 b>`.
    EvenHalfTurn,
    /// `n = p^2`, `p >= 5`: `<a>`, `<a^p>`, `<a^p, b>`.
    PrimeSquare,
    /// `n = p^k`, `k >= 3`: `<a>`, `<a^p>`, `<a^{p^2}>`.
    PrimePower,
    /// Odd `n` with two distinct prime factors, `k = n / p` for the least
    /// prime `p`: `<a>`, `<a^k>`, `<a^k, b>`.
    OddMixed,
}

impl Family {
    pub fn for_order(n: u32) -> Option<Family> {
        if n.is_multiple_of(2) {
            return (n >= 8).then_some(Family::EvenHalfTurn);
        }
        match prime_power(n) {
            Some((p, 2)) if p >= 5 => Some(Family::PrimeSquare),
            Some((_, k)) if k >= 3 => Some(Family::PrimePower),
            Some(_) => None,
            None => Some(Family::OddMixed),
        }
    }

    /// Members besides the reflections.
    fn extra_members(self, n: u32) -> Vec<SubgroupDescriptor> {
        use SubgroupDescriptor::{Cyclic, Dihedral};
        let p = smallest_prime_factor(n);
        match self {
            Family::EvenHalfTurn => {
                let h = n / 2;
                vec![Cyclic { r: 1 }, Cyclic { r: h }, Dihedral { r: h, i: 0 }, Dihedral { r: h, i: 1 }, Dihedral { r: h, i: 2 % h }]
            }
            Family::PrimeSquare => vec![Cyclic { r: 1 }, Cyclic { r: p }, Dihedral { r: p, i: 0 }],
            Family::PrimePower => vec![Cyclic { r: 1 }, Cyclic { r: p }, Cyclic { r: p * p }],
            Family::OddMixed => {
                let k = n / p;
                vec![Cyclic { r: 1 }, Cyclic { r: k }, Dihedral { r: k, i: 0 }]
            }
        }
    }

    /// Closed-form incidence node and edge counts of the induced
    /// sub-hypergraph.
    pub fn expected_counts(self, n: u32) -> (usize, usize) {
        let n = n as usize;
        let p = smallest_prime_factor(n as u32) as usize;
        match self {
            Family::EvenHalfTurn => (n + 10, 5 * n - 1),
            Family::PrimeSquare => (n + 6, 3 * n - p + 3),
            Family::PrimePower => (n + 6, 3 * n + 3),
            Family::OddMixed => (n + 6, 3 * n + 3 - p),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerCertificate {
    /// `None` for the whole hypergraph, otherwise the inducing family.
    pub family: Option<Family>,
    pub members: Vec<String>,
    pub nodes: usize,
    pub edges: usize,
    pub girth: u32,
    pub bound: Exact,
    /// Closed-form `(nodes, edges)` for the family, when there is one.
    pub expected: Option<(usize, usize)>,
    pub matches_expected: Option<bool>,
    /// Each sub-hypergraph hyperedge lies in a distinct hyperedge of the
    /// whole hypergraph, so its incidence graph is a subgraph of the whole one.
    pub embeds_in_whole: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrosscapCertificate {
    pub nodes: usize,
    pub edges: usize,
    pub bound: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BipartiteCertificate {
    pub s: usize,
    pub t: usize,
    pub vertices: Vec<String>,
    pub hyperedges: Vec<usize>,
    pub crosscap: i64,
    pub verified: bool,
}

/// A Kuratowski subdivision in the incidence graph. Incidences are
/// `(vertex, hyperedge)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KuratowskiCertificate {
    pub kind: KuratowskiKind,
    pub branch_vertices: Vec<usize>,
    pub branch_hyperedges: Vec<usize>,
    pub incidences: Vec<(usize, usize)>,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", content = "data", rename_all = "lowercase")]
pub enum Certificate {
    Euler(EulerCertificate),
    Crosscap(CrosscapCertificate),
    K33(BipartiteCertificate),
    K35(BipartiteCertificate),
    Kuratowski(KuratowskiCertificate),
}

impl Certificate {
    /// Lower bound on the relevant genus that this certificate proves.
    pub fn implied_genus(&self) -> i64 {
        match self {
            Certificate::Euler(c) => c.bound.0.ceil().to_integer().max(0),
            Certificate::Crosscap(c) => c.bound.max(0),
            Certificate::K33(c) | Certificate::K35(c) => {
                if c.verified {
                    c.crosscap
                } else {
                    0
                }
            }
            Certificate::Kuratowski(c) => i64::from(c.verified),
        }
    }
}

/// Counts and bounds on the whole incidence graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenusBounds {
    pub nodes: usize,
    pub edges: usize,
    pub girth: Length,
    pub euler_lower_orientable: Option<Exact>,
    pub euler_lower_nonorientable: Option<i64>,
    pub witness_bipartite: Option<CompleteBipartite>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TopologyVerdict {
    pub planar: bool,
    /// Set when planar: the returned rotation system passed the face check.
    pub embedding_verified: Option<bool>,
    pub bounds: GenusBounds,
    pub nonplanarity: Vec<Certificate>,
    pub orientable: Vec<Certificate>,
    pub nonorientable: Vec<Certificate>,
    pub orientable_genus_at_least_two: bool,
    pub nonorientable_genus_at_least_two: bool,
}

/// Decides planarity of the incidence graph and, when it is not planar,
/// collects lower-bound certificates for both genera.
pub fn classify_topology(h: &Hypergraph) -> Result<TopologyVerdict> {
    let inc = IncidenceGraph::new(h);
    let (nodes, edges) = (inc.node_count(), inc.edge_count());
    let girth = inc.girth();
    let connected = inc.is_connected();

    let euler_lower_orientable = match (girth, connected) {
        (Length::Finite(gr), true) => Some(Exact(euler_genus_bound(nodes, edges, gr))),
        _ => None,
    };
    let euler_lower_nonorientable = inc.nonorientable_lower_bound().ok();

    let too_dense = nodes > 2 && edges > 3 * nodes - 6;
    let (planar, embedding_verified) = if too_dense {
        (false, None)
    } else {
        let g = inc.to_graph();
        match planar_embedding(&g) {
            Some(embedding) => (true, Some(embedding.verify(&g))),
            None => (false, None),
        }
    };

    let mut verdict = TopologyVerdict {
        planar,
        embedding_verified,
        bounds: GenusBounds {
            nodes,
            edges,
            girth,
            euler_lower_orientable,
            euler_lower_nonorientable,
            witness_bipartite: None,
        },
        nonplanarity: Vec::new(),
        orientable: Vec::new(),
        nonorientable: Vec::new(),
        orientable_genus_at_least_two: false,
        nonorientable_genus_at_least_two: false,
    };
    if planar {
        return Ok(verdict);
    }

    if let Some(k) = incidence_kuratowski(h) {
        verdict.nonplanarity.push(Certificate::Kuratowski(k));
    }
    if let Some(w) = inc.find_complete_bipartite(3, 3, Side::Hyperedges, SearchBudget::default())? {
        verdict.nonplanarity.push(Certificate::K33(bipartite_certificate(&inc, &w)?));
    }

    if let (Some(bound), Length::Finite(gr)) = (euler_lower_orientable, girth) {
        verdict.orientable.push(Certificate::Euler(EulerCertificate {
            family: None,
            members: Vec::new(),
            nodes,
            edges,
            girth: gr,
            bound,
            expected: None,
            matches_expected: None,
            embeds_in_whole: true,
        }));
    }
    if let Some(family) = h.n().and_then(Family::for_order) {
        if let Some(c) = family_certificate(h, family)? {
            verdict.orientable.push(Certificate::Euler(c));
        }
    }

    if let Some(bound) = euler_lower_nonorientable {
        verdict.nonorientable.push(Certificate::Crosscap(CrosscapCertificate { nodes, edges, bound }));
    }
    if let Some(w) = find_k35(&inc)? {
        verdict.bounds.witness_bipartite = Some(w.clone());
        verdict.nonorientable.push(Certificate::K35(bipartite_certificate(&inc, &w)?));
    }

    verdict.orientable_genus_at_least_two = verdict.orientable.iter().any(|c| c.implied_genus() >= 2);
    verdict.nonorientable_genus_at_least_two = verdict.nonorientable.iter().any(|c| c.implied_genus() >= 2);
    Ok(verdict)
}

/// `K_{3,5}` with three vertices on five hyperedges, or three hyperedges
/// through five vertices, whichever turns up first (three vertices first
/// only for `n = 8`).
pub fn find_k35(inc: &IncidenceGraph) -> Result<Option<CompleteBipartite>> {
    let sides = if inc.hypergraph().n() == Some(8) {
        [Side::Vertices, Side::Hyperedges]
    } else {
        [Side::Hyperedges, Side::Vertices]
    };
    for side in sides {
        if let Some(w) = inc.find_complete_bipartite(3, 5, side, SearchBudget::default())? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn bipartite_certificate(inc: &IncidenceGraph, w: &CompleteBipartite) -> Result<BipartiteCertificate> {
    let (s, t) = {
        let (a, b) = (w.vertices.len(), w.hyperedges.len());
        (a.min(b), a.max(b))
    };
    Ok(BipartiteCertificate {
        s,
        t,
        vertices: w.vertices.iter().map(|&v| inc.hypergraph().label(v).to_string()).collect(),
        hyperedges: w.hyperedges.clone(),
        crosscap: complete_bipartite_crosscap(s, t)?,
        verified: inc.verify_complete_bipartite(w),
    })
}

/// Incidence graph of the first `k` hyperedges, with the incidence node id of
/// each of its nodes.
fn prefix_incidence(h: &Hypergraph, k: usize) -> (UndirectedGraph, Vec<usize>) {
    let left = h.vertex_count();
    let mut relabel = vec![usize::MAX; left];
    let mut original = Vec::new();
    let mut pairs = Vec::new();
    for e in 0..k {
        let enode = original.len();
        original.push(left + e);
        for v in h.edge_set(e).ones() {
            if relabel[v] == usize::MAX {
                relabel[v] = original.len();
                original.push(v);
            }
            pairs.push((relabel[v], enode));
        }
    }
    let mut g = UndirectedGraph::new(original.len());
    for (a, b) in pairs {
        g.add_edge(a, b);
    }
    (g, original)
}

/// Finds a Kuratowski subdivision in the incidence graph: first the shortest
/// nonplanar prefix of the hyperedge list (by doubling, then bisection), then
/// an edge-minimal nonplanar subgraph of that prefix.
pub fn incidence_kuratowski(h: &Hypergraph) -> Option<KuratowskiCertificate> {
    let m = h.edge_count();
    let nonplanar = |k: usize| !is_planar(&prefix_incidence(h, k).0);
    let inc = IncidenceGraph::new(h);
    let dense = inc.node_count() > 2 && inc.edge_count() > 3 * inc.node_count() - 6;
    if !dense && !nonplanar(m) {
        return None;
    }
    let mut hi = 1;
    while hi < m && !nonplanar(hi) {
        hi *= 2;
    }
    hi = hi.min(m);
    let mut lo = hi / 2;
    while lo + 1 < hi {
        let mid = (lo + hi) / 2;
        if nonplanar(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let (g, original) = prefix_incidence(h, hi);
    let sub = kuratowski_subgraph(&g)?;
    let left = h.vertex_count();
    let mut incidences: Vec<(usize, usize)> = sub
        .edges
        .iter()
        .map(|&(a, b)| {
            let (a, b) = (original[a], original[b]);
            (a.min(b), a.max(b) - left)
        })
        .collect();
    incidences.sort_unstable();
    let (mut branch_vertices, mut branch_hyperedges): (Vec<usize>, Vec<usize>) = (Vec::new(), Vec::new());
    for &x in &sub.branch_vertices {
        let node = original[x];
        if node < left {
            branch_vertices.push(node);
        } else {
            branch_hyperedges.push(node - left);
        }
    }
    branch_vertices.sort_unstable();
    branch_hyperedges.sort_unstable();
    let mut cert = KuratowskiCertificate {
        kind: sub.kind,
        branch_vertices,
        branch_hyperedges,
        incidences,
        verified: false,
    };
    cert.verified = verify_incidence_kuratowski(h, &cert);
    Some(cert)
}

/// Checks every incidence is real and that the incidences form a subdivision
/// of the stated kind with the stated branch nodes.
pub fn verify_incidence_kuratowski(h: &Hypergraph, cert: &KuratowskiCertificate) -> bool {
    let left = h.vertex_count();
    let real = cert
        .incidences
        .iter()
        .all(|&(v, e)| v < left && e < h.edge_count() && h.edge_set(e).contains(v));
    if !real {
        return false;
    }
    let pairs: Vec<(usize, usize)> = cert.incidences.iter().map(|&(v, e)| (v, left + e)).collect();
    let mut branch: Vec<usize> = cert.branch_vertices.clone();
    branch.extend(cert.branch_hyperedges.iter().map(|&e| left + e));
    branch.sort_unstable();
    matches!(classify_subdivision(&pairs), Some((kind, b)) if kind == cert.kind && b == branch)
}

/// The Euler bound on the sub-hypergraph induced by `family`, with its counts
/// checked against the closed forms.
pub fn family_certificate(h: &Hypergraph, family: Family) -> Result<Option<EulerCertificate>> {
    let Some(n) = h.n() else { return Ok(None) };
    let catalog = enumerate_subgroups(n)?;
    let mut descriptors: Vec<SubgroupDescriptor> = (0..n).map(|i| SubgroupDescriptor::Dihedral { r: n, i }).collect();
    descriptors.extend(family.extra_members(n));
    let members: Vec<usize> = descriptors.iter().filter_map(|&d| catalog.index_of(d)).collect();
    let sub = Hypergraph::intersection_on(&catalog, &members)?;
    let inc = IncidenceGraph::new(&sub);
    let Length::Finite(girth) = inc.girth() else { return Ok(None) };
    let (nodes, edges) = (inc.node_count(), inc.edge_count());
    let expected = family.expected_counts(n);
    Ok(Some(EulerCertificate {
        family: Some(family),
        members: descriptors.iter().map(|d| d.notation(n)).collect(),
        nodes,
        edges,
        girth,
        bound: Exact(euler_genus_bound(nodes, edges, girth)),
        expected: Some(expected),
        matches_expected: Some(expected == (nodes, edges) && girth == 4),
        embeds_in_whole: embeds_in(&sub, h),
    }))
}

/// True iff the hyperedges of `sub` (whose vertices carry subgroup
/// descriptors) can be matched to distinct hyperedges of `whole` containing
/// them.
fn embeds_in(sub: &Hypergraph, whole: &Hypergraph) -> bool {
    let to_whole: Option<Vec<usize>> = sub
        .vertices()
        .iter()
        .map(|v| v.descriptor.and_then(|d| whole.vertex_of(d)))
        .collect();
    let Some(to_whole) = to_whole else { return false };
    let hosts: Vec<Vec<usize>> = (0..sub.edge_count())
        .map(|e| {
            let mut through = fixedbitset::FixedBitSet::with_capacity(whole.edge_count());
            through.insert_range(..);
            for v in sub.edge_set(e).ones() {
                through.intersect_with(whole.edges_through(to_whole[v]));
            }
            through.ones().collect()
        })
        .collect();
    // augmenting-path bipartite matching
    fn augment(e: usize, hosts: &[Vec<usize>], owner: &mut std::collections::HashMap<usize, usize>, seen: &mut std::collections::HashSet<usize>) -> bool {
        for &f in &hosts[e] {
            if seen.insert(f) {
                let free = match owner.get(&f) {
                    None => true,
                    Some(&other) => augment(other, hosts, owner, seen),
                };
                if free {
                    owner.insert(f, e);
                    return true;
                }
            }
        }
        false
    }
    let mut owner = std::collections::HashMap::new();
    (0..hosts.len()).all(|e| augment(e, &hosts, &mut owner, &mut std::collections::HashSet::new()))
}

/// Planar iff `n` is prime or `n = 4`.
pub fn predicted_planar(n: u32) -> bool {
    is_prime(n) || n == 4
}
