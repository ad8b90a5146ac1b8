use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported field order {0}; expected one of 2, 3, 4, 5, 7")]
    UnsupportedField(u32),
    #[error("matrix too large: {rows}x{cols} (limit 64x64)")]
    MatrixTooLarge { rows: usize, cols: usize },
    #[error("entry {value} out of range for GF({q})")]
    EntryOutOfRange { value: u32, q: u8 },
    #[error("subset mask {mask:#x} references elements outside a ground set of size {n}")]
    MaskOutOfRange { mask: u64, n: usize },
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("rank {k} out of range for a matroid of rank {rank}")]
    RankOutOfRange { k: usize, rank: usize },
    #[error("ground set of size {n} exceeds the limit {limit} for {what}")]
    TooLarge { n: usize, limit: usize, what: &'static str },
    #[error("basepoint {0} is a loop or coloop")]
    BadBasepoint(usize),
    #[error("matroid is not binary")]
    NotBinary,
    #[error("matroid is not simple")]
    NotSimple,
    #[error("{0}")]
    Precondition(String),
    #[error("search budget of {0} nodes exhausted")]
    BudgetExhausted(u64),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown catalog name `{0}`")]
    UnknownName(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
