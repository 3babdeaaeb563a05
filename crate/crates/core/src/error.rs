use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("residue characteristic 2 is not supported")]
    EvenResidueCharUnsupported,
    #[error("d = {0} is already a square in the base field")]
    DIsSquare(String),
    #[error("invalid extension descriptor: {0}")]
    InvalidExtension(String),
    #[error("operation requires a nonzero element")]
    ZeroElement,
    #[error("operands live in different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("the base field has no proper norm map")]
    BaseFieldHasNoProperNorm,
    #[error("a quadratic extension is required, got the base field {0}")]
    BaseFieldInput(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix does not lie in SL2")]
    NotSL2,
    #[error("matrix entries are not rational over the base field")]
    NotFRational,
    #[error("level {level} is too small; need at least {required}")]
    LevelTooSmall { level: u32, required: u32 },
    #[error("Gauss sum with {0} terms exceeds the enumeration budget")]
    LevelTooLarge(u128),
    #[error("no eighth root of unity within tolerance (residual {0:e})")]
    SnapFailure(f64),
    #[error("value is not a sign within tolerance")]
    NotASign,
    #[error("model is not a discrete series model")]
    NotDiscrete,
    #[error("invalid twist model: {0}")]
    InvalidModel(String),
    #[error("support is not a coset of an order-2 subgroup")]
    NotACoset,
    #[error("-1 is not a square in {0}")]
    MinusOneNotSquare(String),
    #[error("-1 is a square in {0}")]
    MinusOneIsSquare(String),
    #[error("no complementary class exists")]
    NoComplement,
    #[error("square class is not ramified")]
    NotRamifiedClass,
    #[error("matrix is not a nilpotent element of sl2")]
    NotNilpotent,
    #[error("matrix is zero")]
    ZeroMatrix,
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
