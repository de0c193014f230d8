use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid semilattice: {0}")]
    InvalidSemilattice(String),
    #[error("operands belong to different semilattices")]
    MismatchedAmbient,
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("element `{0}` is zero where a nonzero element is required")]
    ZeroElement(String),
    #[error("join of an empty family")]
    EmptyJoin,
    #[error("unknown group element `{0}`")]
    UnknownGroupElement(String),
    #[error("invalid group action: {0}")]
    InvalidAction(String),
    #[error("invalid cover: {0}")]
    InvalidCover(String),
    #[error("condition ({condition}) violated: {witness}")]
    ConditionViolated { condition: &'static str, witness: String },
    #[error("derived carrier not closed: {0}")]
    NotClosed(String),
    #[error("map is not a semilattice homomorphism into idempotents: {0}")]
    NotMultiplicative(String),
    #[error("invalid index tuple: {0}")]
    InvalidMu(String),
    #[error("sharp table has no entry for {0}#{1}")]
    MissingSharp(usize, usize),
    #[error("invalid orbit model: {0}")]
    InvalidModel(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("lcm oracle and closed form disagree: {0}")]
    SharpMismatch(String),
    #[error("reversing did not terminate within {0} steps")]
    Inconclusive(usize),
    #[error("inconclusive: {0}")]
    InconclusiveCheck(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
