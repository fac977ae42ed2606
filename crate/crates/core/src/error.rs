use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),

    #[error("invalid variable `{name}`: {reason}")]
    InvalidVariable { name: String, reason: String },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("coefficient domain {0} is not a field")]
    NotAField(String),

    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("relation is not homogeneous: {0}")]
    InhomogeneousIdeal(String),

    #[error("image of `{var}` is `{image}`, which is not homogeneous of degree {degree}")]
    InhomogeneousImage {
        var: String,
        image: String,
        degree: u32,
    },

    #[error("map has {found} images but its source has {expected} variables")]
    Arity { expected: usize, found: usize },

    #[error("kernel requires a free source ring, but `{0}` carries relations")]
    SourceNotFree(String),

    #[error("map is not well defined: {0}")]
    NotWellDefined(String),

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("invalid wedge of spheres: {0}")]
    InvalidWedge(String),

    #[error("homotopy table has no entry for pi_{n}(S^{m})")]
    TableRangeExceeded { n: u32, m: u32 },

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),

    #[error("deadline exceeded")]
    Timeout,

    #[error("{0}")]
    Parse(String),
}
