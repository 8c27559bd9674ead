use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid modulus {0}: dihedral arithmetic needs n >= 1")]
    InvalidModulus(u32),

    #[error("invalid order {0}: D_n is defined for n >= 1")]
    InvalidOrder(u32),

    #[error("subgroups come from different catalogs (n = {left} and n = {right})")]
    CatalogMismatch { left: u32, right: u32 },

    #[error("the intersection hypergraph of D_{0} is empty")]
    EmptyHypergraph(u32),

    #[error("unknown vertex id {0}")]
    UnknownVertex(usize),

    #[error("hyperedge {0} is a singleton, so no proper coloring exists")]
    Uncolorable(usize),

    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),

    #[error("bound not applicable: {0}")]
    NotApplicable(&'static str),

    #[error("n = {0} is out of domain (need n >= 2)")]
    OutOfDomain(u32),

    #[error("invalid range {from}..={to}")]
    InvalidRange { from: u32, to: u32 },

    #[error("n = {n} exceeds the size guard {max}; set DHG_MAX_N to raise it")]
    GuardExceeded { n: u32, max: u32 },

    #[error("{what} of size {size} exceeds the brute-force limit {max}")]
    TooLarge { what: &'static str, size: usize, max: usize },

    #[error("unsupported export target: {0}")]
    UnsupportedTarget(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
