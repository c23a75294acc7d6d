use crate::error::{Error, Result};
use crate::sax::Breakpoints;
use crate::sequence::SymbolicSequence;

/// Lower-bounding distance between two SAX words of equal length produced
/// from series of `original_length` samples.
pub fn mindist(
    a: &SymbolicSequence,
    b: &SymbolicSequence,
    original_length: usize,
    breakpoints: &Breakpoints,
) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    if a.is_empty() || original_length < a.len() {
        return Err(Error::InvalidWordLength);
    }
    let alpha = breakpoints.alphabet_size();
    if a.alphabet().size() != alpha || b.alphabet().size() != alpha {
        return Err(Error::AlphabetMismatch);
    }
    let sum_sq: f64 = a
        .symbols()
        .iter()
        .zip(b.symbols())
        .map(|(&x, &y)| breakpoints.cell(x, y).powi(2))
        .sum();
    let scale = original_length as f64 / a.len() as f64;
    Ok(scale.sqrt() * sum_sq.sqrt())
}
