use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line sums are not all equal (rows {rows:?}, columns {cols:?})")]
    NotSemiMagic { rows: [i64; 3], cols: [i64; 3] },
    #[error("negative entry {value} at row {row}, column {col}")]
    NegativeEntry { row: usize, col: usize, value: i64 },
    #[error("(r, c) = ({r}, {c}) lies outside the region of top line {top}")]
    OutOfRegion { top: String, r: i64, c: i64 },
    #[error("magic number {j} exceeds the configured cap {cap}")]
    CapExceeded { j: u32, cap: u32 },
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("square set is not closed under the symmetry group")]
    NotClosedUnderAction,
    #[error("denominator constant term must be 1 or -1")]
    InvalidDenominator,
    #[error("quasi-polynomial value at {0} is not an integer")]
    NonIntegral(u64),
    #[error("unknown orbit id {id} (there are {count} orbits)")]
    UnknownOrbit { id: usize, count: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("csv: {0}")]
    Csv(String),
    #[error("json: {0}")]
    Json(String),
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Csv(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
