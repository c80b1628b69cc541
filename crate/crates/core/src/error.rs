use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("missing column `{0}`")]
    MissingColumn(String),

    #[error("row {row}: cannot parse price `{value}`")]
    BadPrice { row: usize, value: String },

    #[error("row {row}: price {price} is not positive")]
    NonPositivePrice { row: usize, price: f64 },

    #[error("row {row}: cannot parse date `{value}` (expected YYYY-MM-DD)")]
    BadDate { row: usize, value: String },

    #[error("row {row}: date {date} is not after the previous row's date")]
    UnorderedDate { row: usize, date: String },

    #[error("series needs at least {needed} points, got {len}")]
    SeriesTooShort { len: usize, needed: usize },

    #[error("non-finite log value at position {0}")]
    NonFiniteValue(usize),

    #[error("scope {0} is too small (indicators need at least 2 days)")]
    ScopeTooSmall(usize),

    #[error("scope {scope} leaves no defined indicator values for a series of length {len}")]
    ScopeTooLarge { scope: usize, len: usize },

    #[error("day index {day} outside 1..={len}")]
    DayOutOfRange { day: usize, len: usize },

    #[error("link endpoints must differ (both are day {0})")]
    SameDay(usize),

    #[error("extreme windows need b >= 1 and a >= 1 (got b = {before}, a = {after})")]
    EmptyWindow { before: usize, after: usize },

    #[error("window b = {before}, a = {after} does not fit a series of length {len}")]
    WindowTooLarge {
        before: usize,
        after: usize,
        len: usize,
    },

    #[error("no extremes fall inside the evaluation domain")]
    NoExtremes,

    #[error("evaluation domain is empty (T = {len}, S = {scope}, a = {after})")]
    EmptyDomain { len: usize, scope: usize, after: usize },

    #[error("indicator and extreme set come from series of different lengths ({indicator} vs {extremes})")]
    LengthMismatch { indicator: usize, extremes: usize },

    #[error("synthetic segment {0} is invalid: {1}")]
    BadSegment(usize, String),

    #[error("synthetic segments {0} and {1} overlap")]
    OverlappingSegments(usize, usize),

    #[error("cannot summarize an empty list of p-values")]
    EmptySample,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
