//! Symbolic Aggregate approXimation: z-normalize, reduce with PAA, then map
//! each segment mean to the Gaussian region it falls in.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::quantile::normal_quantile;
use crate::sequence::{Alphabet, SymbolicSequence, SAX_GLYPHS};

pub const MAX_ALPHA: usize = 64;

/// Series whose population standard deviation falls below this are treated
/// as constant and normalize to all zeros.
pub const FLAT_EPSILON: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries(Vec<f64>);

impl TimeSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidSeries);
        }
        Ok(Self(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub fn znormalize(ts: &TimeSeries) -> TimeSeries {
    let n = ts.len() as f64;
    let mean = ts.0.iter().sum::<f64>() / n;
    let var = ts.0.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    let sd = var.sqrt();
    if sd < FLAT_EPSILON {
        return TimeSeries(vec![0.0; ts.len()]);
    }
    TimeSeries(ts.0.iter().map(|v| (v - mean) / sd).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct PaaVector {
    pub means: Vec<f64>,
    pub source_length: usize,
}

/// Piecewise aggregate approximation with `segments` equal-width frames.
///
/// Frame `i` spans `[i·n/N, (i+1)·n/N)` in sample units; a sample straddling
/// a frame boundary is split between both frames by overlap length.
pub fn paa(ts: &TimeSeries, segments: usize) -> Result<PaaVector> {
    let n = ts.len();
    if segments == 0 || segments > n {
        return Err(Error::InvalidSegments {
            segments,
            length: n,
        });
    }
    // Scale both grids by N·n so every boundary is an integer: sample k spans
    // [k·N, (k+1)·N), frame i spans [i·n, (i+1)·n).
    let means = (0..segments)
        .map(|i| {
            let (lo, hi) = (i * n, (i + 1) * n);
            let first = lo / segments;
            let last = (hi - 1) / segments;
            let weighted: f64 = (first..=last)
                .map(|k| {
                    let overlap = hi.min((k + 1) * segments) - lo.max(k * segments);
                    overlap as f64 * ts.0[k]
                })
                .sum();
            weighted / n as f64
        })
        .collect();
    Ok(PaaVector {
        means,
        source_length: n,
    })
}

/// Sorted cut points dividing N(0, 1) into `alphabet_size` equiprobable regions.
#[derive(Debug, Clone, PartialEq)]
pub struct Breakpoints {
    betas: Vec<f64>,
    alphabet: Arc<Alphabet>,
}

impl Breakpoints {
    pub fn betas(&self) -> &[f64] {
        &self.betas
    }

    pub fn alphabet_size(&self) -> usize {
        self.betas.len() + 1
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    /// Region index of `v`; a value equal to a breakpoint joins the region above it.
    pub fn symbol_for(&self, v: f64) -> u32 {
        self.betas.partition_point(|&b| b <= v) as u32
    }

    /// MINDIST lookup cell: zero for equal or adjacent symbols, otherwise the
    /// gap between the breakpoint just below the upper symbol's region and the
    /// breakpoint just above the lower symbol's region.
    pub fn cell(&self, a: u32, b: u32) -> f64 {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        if hi - lo <= 1 {
            0.0
        } else {
            self.betas[hi as usize - 1] - self.betas[lo as usize]
        }
    }
}

fn sax_alphabet(alpha: usize) -> Arc<Alphabet> {
    static CACHE: OnceLock<Vec<Arc<Alphabet>>> = OnceLock::new();
    let table = CACHE.get_or_init(|| {
        (2..=MAX_ALPHA)
            .map(|a| Arc::new(Alphabet::from_glyphs(&SAX_GLYPHS[..a]).expect("distinct glyphs")))
            .collect()
    });
    Arc::clone(&table[alpha - 2])
}

pub fn gaussian_breakpoints(alpha: usize) -> Result<Breakpoints> {
    if !(2..=MAX_ALPHA).contains(&alpha) {
        return Err(Error::InvalidAlpha(alpha));
    }
    let betas = (1..alpha)
        .map(|i| {
            // Exact zero at the median keeps the table symmetric.
            if 2 * i == alpha {
                0.0
            } else {
                normal_quantile(i as f64 / alpha as f64)
            }
        })
        .collect();
    Ok(Breakpoints {
        betas,
        alphabet: sax_alphabet(alpha),
    })
}

pub fn discretize(paa: &PaaVector, breakpoints: &Breakpoints) -> SymbolicSequence {
    let symbols = paa.means.iter().map(|&v| breakpoints.symbol_for(v)).collect();
    SymbolicSequence::from_symbols(symbols, Arc::clone(&breakpoints.alphabet))
        .expect("region indices are below the alphabet size")
}

pub fn sax_transform(ts: &TimeSeries, segments: usize, alpha: usize) -> Result<SymbolicSequence> {
    let breakpoints = gaussian_breakpoints(alpha)?;
    let reduced = paa(&znormalize(ts), segments)?;
    Ok(discretize(&reduced, &breakpoints))
}
