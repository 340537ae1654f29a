use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported root system type `{0}`")]
    UnsupportedType(String),
    #[error("invalid reduced word: {0}")]
    InvalidWord(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("denominator vanishes under specialization: {0}")]
    VanishingDenominator(String),
    #[error("structure constant check failed: {0}")]
    StructureCheck(String),
    #[error("weight height {height} exceeds configured bound {bound}")]
    HeightBound { height: u32, bound: u32 },
    #[error("linear system inconsistent: {0}")]
    Inconsistent(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("module construction failed: {0}")]
    Module(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("parse error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
