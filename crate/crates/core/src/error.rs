use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cover relation contains a directed cycle through {0:?}")]
    CycleDetected(Vec<String>),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("{what} exceeds the configured limit of {limit}")]
    SizeExceeded { what: &'static str, limit: usize },

    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("elements {a} and {b} have no {missing}")]
    NotALattice { a: usize, b: usize, missing: &'static str },
    #[error("not a meet-semilattice: elements {a} and {b} have no meet")]
    NotAMeetSemilattice { a: usize, b: usize },
    #[error("meet-semilattice is not meet-distributive")]
    NotMeetDistributive,
    #[error("element set is not a poset ideal of its ambient distributive lattice")]
    NotPosetIdeal,

    #[error("chains do not form a disjoint two-chain cover: {0}")]
    NotACover(String),

    #[error("monomials live over different variable sets ({left} vs {right} variables)")]
    IncompatibleVariables { left: usize, right: usize },
    #[error("intermediate degree {degree} exceeds the degree cap {cap}")]
    DegreeCapExceeded { cap: u32, degree: u32 },

    // Defect signals: two independent routes disagreed.
    #[error("independent computations disagree: {0}")]
    InternalDisagreement(String),
    #[error("indispensability oracles disagree: {0}")]
    OracleDisagreement(String),
    #[error("meet-distributivity conditions disagree: {0}")]
    ConditionsDisagree(String),
    #[error("presentation does not generate the toric kernel: {0}")]
    KernelMismatch(String),
    #[error("internal defect: {0}")]
    Defect(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
