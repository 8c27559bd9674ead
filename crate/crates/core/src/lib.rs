//! Intersection hypergraphs of dihedral groups: the subgroup catalog of
//! `D_n`, the hypergraph of trivially-intersecting subgroup families, its
//! metric, coloring and structural invariants, and the topology of its
//! incidence graph.

pub mod bitset;
pub mod cliques;
pub mod coloring;
pub mod error;
pub mod export;
pub mod group;
pub mod harness;
pub mod hypergraph;
pub mod incidence;
pub mod line_graph;
pub mod numtheory;
pub mod oracle;
pub mod planarity;
pub mod structure;
pub mod topology;

pub use error::{Error, Result};
pub use group::{enumerate_subgroups, DihedralElement, Subgroup, SubgroupCatalog, SubgroupDescriptor};
pub use hypergraph::{build_hypergraph, Hypergraph, Length, TwoColoring};
pub use incidence::IncidenceGraph;
pub use line_graph::LineGraph;
