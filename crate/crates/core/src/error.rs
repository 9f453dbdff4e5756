use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("group too large: closure exceeds {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("not a subgroup")]
    NotASubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("invalid section: {0}")]
    InvalidSection(String),
    #[error("section is not minimal (S is not contained in the Frattini subgroup of T)")]
    NotMinimal,
    #[error("normal subgroup is not contained in the Frattini subgroup")]
    NotInFrattini,
    #[error("group of order {0} is not a p-group")]
    NotPGroup(usize),
    #[error("group is not atoric")]
    NotAtoric,
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("map is not a group homomorphism")]
    NotAHomomorphism,
    #[error("map is not an isomorphism")]
    NotAnIsomorphism,
    #[error("partial order violated: {0}")]
    NotAPartialOrder(String),
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),
    #[error("unknown group `{0}`")]
    UnknownGroup(String),
    #[error("malformed catalog: {0}")]
    Catalog(String),
    #[error("malformed biset serialization: {0}")]
    Serialization(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("size gate exceeded: {0}")]
    GateExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;
