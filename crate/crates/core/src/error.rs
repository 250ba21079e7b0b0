use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("constant term {0} is not a unit")]
    NonUnitConstantTerm(String),

    #[error("part {part} is not congruent to an allowed residue mod {modulus}")]
    ResidueViolation { part: u64, modulus: u64 },

    #[error("part {part} belongs to both families; use the colored representation")]
    AmbiguousPart { part: u64 },

    #[error("diagram has no column of length {0}")]
    NoSuchColumn(usize),

    #[error("cannot attach a column of length {length} to a diagram with {rows} rows")]
    ColumnTooLong { length: usize, rows: usize },

    #[error("parameter violation: {0}")]
    ParamViolation(String),

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("({0}) is not in the image of the map")]
    NotInImage(String),

    #[error("not enough ends to reattach ({0})")]
    InsufficientEnds(String),

    #[error("output repeats a part: {0}")]
    DistinctnessViolation(String),

    #[error("closed form and generic construction disagree: {0}")]
    Mismatch(String),

    #[error("series is not divisible by q^{shift}: coefficient of q^{degree} is nonzero")]
    Division { shift: u64, degree: u64 },

    #[error("truncation exhausted at G_{index}: fewer than zero certified degrees remain")]
    TruncationExhausted { index: usize },

    #[error("invalid product spec: {0}")]
    InvalidSpec(String),
}
