use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("stabilizer generators {0} and {1} do not commute")]
    NonCommuting(usize, usize),

    #[error("generator list has {rows} rows but rank {rank}; redundant rows not allowed")]
    RedundantGenerators { rows: usize, rank: usize },

    #[error("dual-containment violated: row {h2_row} of h2 is not orthogonal to row {h1_row} of h1")]
    DualContainment { h2_row: usize, h1_row: usize },

    #[error("generator {row} acts as Y on qubit {qubit}; concatenation needs pure X/Z letters")]
    MixedLetter { row: usize, qubit: usize },

    #[error("code is not CSS (generator {0} mixes X and Z parts)")]
    NotCss(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid code: {0}")]
    InvalidCode(String),

    #[error("resource guard: {needed} evaluations exceed the budget of {budget}")]
    ResourceGuard { needed: u128, budget: u128 },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
        if expected == found {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected, found })
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
