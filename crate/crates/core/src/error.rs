use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("alphabet size must be at least 2, got {0}")]
    AlphabetTooSmall(usize),
    #[error("glyph {glyph:?} appears more than once in the alphabet")]
    DuplicateGlyph { glyph: char },
    #[error("unknown glyph {glyph:?} at position {position}")]
    UnknownGlyph { glyph: char, position: usize },
    #[error("symbol {symbol} at position {position} is outside an alphabet of size {size}")]
    SymbolOutOfRange {
        symbol: u32,
        position: usize,
        size: usize,
    },
    #[error("alphabet has no glyph table")]
    NoGlyphs,
    #[error("sequences are over different alphabets")]
    AlphabetMismatch,
    #[error("n-gram length must be at least 1, got {0}")]
    InvalidGramLength(usize),
    #[error("n-gram profiles have different lengths ({0} vs {1})")]
    GramLengthMismatch(usize, usize),

    #[error("edit costs must be finite and nonnegative")]
    InvalidCosts,
    #[error("frequency factors must be nonempty with every value in [0, 1]")]
    InvalidFactors,
    #[error("words have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("MINDIST needs a nonempty word and an original length >= word length")]
    InvalidWordLength,

    #[error("time series must be nonempty and finite")]
    InvalidSeries,
    #[error("PAA segment count {segments} is invalid for a series of length {length}")]
    InvalidSegments { segments: usize, length: usize },
    #[error("alphabet size for SAX must be in [2, 64], got {0}")]
    InvalidAlpha(usize),

    #[error("reference set is empty")]
    EmptyReferences,
    #[error("dataset needs at least {needed} items, got {got}")]
    DatasetTooSmall { needed: usize, got: usize },

    #[error("invalid GA configuration: {0}")]
    InvalidGaConfig(String),
    #[error("chromosome {0} has no fitness")]
    UnevaluatedFitness(usize),
    #[error("fitness {0} is outside [0, 1]")]
    InvalidFitness(f64),
    #[error("crossover needs at least 2 parents, got {0}")]
    TooFewParents(usize),

    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("{path}: file contains no series")]
    EmptyFile { path: PathBuf },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("result set is empty")]
    EmptyResult,
    #[error("{context}: {source}")]
    Row {
        context: String,
        #[source]
        source: Box<Error>,
    },
}

/// Broad classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Config,
    Data,
    Internal,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Row { source, .. } => source.kind(),
            Error::InvalidGaConfig(_)
            | Error::Config(_)
            | Error::InvalidAlpha(_)
            | Error::InvalidSegments { .. }
            | Error::InvalidFactors
            | Error::InvalidCosts
            | Error::AlphabetTooSmall(_)
            | Error::DuplicateGlyph { .. }
            | Error::InvalidGramLength(_) => ErrorKind::Config,
            Error::Io { .. }
            | Error::EmptyFile { .. }
            | Error::Parse { .. }
            | Error::InvalidSeries
            | Error::UnknownGlyph { .. }
            | Error::SymbolOutOfRange { .. }
            | Error::NoGlyphs
            | Error::AlphabetMismatch
            | Error::LengthMismatch(..)
            | Error::InvalidWordLength
            | Error::EmptyReferences
            | Error::DatasetTooSmall { .. }
            | Error::EmptyResult => ErrorKind::Data,
            Error::GramLengthMismatch(..)
            | Error::UnevaluatedFitness(_)
            | Error::InvalidFitness(_)
            | Error::TooFewParents(_) => ErrorKind::Internal,
        }
    }

    pub(crate) fn in_row(self, context: impl Into<String>) -> Self {
        Error::Row {
            context: context.into(),
            source: Box::new(self),
        }
    }
}
