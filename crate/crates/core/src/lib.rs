//! Sequence distances built on the edit distance (plain, path-normalized and
//! the GA-tuned GANED variant), the SAX pipeline that turns time series into
//! words, 1-NN evaluation, and the genetic algorithm that tunes GANED's
//! frequency factors.

pub mod classify;
pub mod distance;
pub mod error;
pub mod experiment;
pub mod ga;
pub mod quantile;
pub mod sax;
pub mod sequence;

pub use error::{Error, ErrorKind, Result};
