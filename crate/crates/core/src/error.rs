use thiserror::Error;

/// Errors raised by the group, graph, lifting and walk machinery.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("group closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },

    #[error("group elements are not cached")]
    NotCached,

    #[error("empty generator list")]
    NoGenerators,

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("group is not transitive")]
    NotTransitive,

    #[error("orbits have unequal sizes")]
    UnequalOrbits,

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("graph is not cubic")]
    NotCubic,

    #[error("vertex sets overlap")]
    Overlap,

    #[error("invalid edge {0}-{1}")]
    InvalidEdge(usize, usize),

    #[error("not a cycle in the quotient: {0}")]
    NotACycle(String),

    #[error("no lift edge between cells {0} and {1}")]
    NoLiftEdge(usize, usize),

    #[error("permutation is not an automorphism of the graph")]
    NotAutomorphism,

    #[error("walk {template} step {step}: {from} -> {to} is not an edge")]
    WalkBreak {
        template: String,
        step: usize,
        from: String,
        to: String,
    },

    #[error("congruence precondition failed: {0}")]
    Congruence(String),

    #[error("search budget of {0} nodes exhausted")]
    BudgetExhausted(u64),

    #[error("guided search failed: {0}")]
    GuidedFailed(String),

    #[error("no semiregular witness: {0}")]
    NoWitness(String),

    #[error("certificate rejected: {0}")]
    CertificateRejected(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
