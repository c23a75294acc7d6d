//! Alphabets, symbolic sequences and n-gram frequency profiles.
//!
//! Sequences are stored as symbol indices so the same machinery serves text
//! alphabets (with a glyph table) and SAX alphabets (index-only or with the
//! default SAX glyphs).

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Glyphs used for SAX words, enough for the largest supported alphabet (64).
pub const SAX_GLYPHS: &str = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789+/";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    size: usize,
    glyphs: Option<Vec<char>>,
}

impl Alphabet {
    /// An index-only alphabet of `size` symbols.
    pub fn new(size: usize) -> Result<Self> {
        if size < 2 {
            return Err(Error::AlphabetTooSmall(size));
        }
        Ok(Self { size, glyphs: None })
    }

    /// Builds an alphabet from distinct glyphs; the glyph at position `i`
    /// becomes symbol `i`.
    pub fn from_glyphs(glyphs: &str) -> Result<Self> {
        let mut table: Vec<char> = Vec::new();
        for c in glyphs.chars() {
            if table.contains(&c) {
                return Err(Error::DuplicateGlyph { glyph: c });
            }
            table.push(c);
        }
        if table.len() < 2 {
            return Err(Error::AlphabetTooSmall(table.len()));
        }
        Ok(Self {
            size: table.len(),
            glyphs: Some(table),
        })
    }

    /// The smallest alphabet covering every distinct glyph of the inputs,
    /// ordered by first appearance. Pads with unused glyphs when fewer than
    /// two distinct glyphs occur.
    pub fn covering<'a>(texts: impl IntoIterator<Item = &'a str>) -> Self {
        let mut table: Vec<char> = Vec::new();
        for c in texts.into_iter().flat_map(str::chars) {
            if !table.contains(&c) {
                table.push(c);
            }
        }
        let mut filler = '\u{E000}'..;
        while table.len() < 2 {
            let c = filler.next().expect("private-use range is not exhausted");
            if !table.contains(&c) {
                table.push(c);
            }
        }
        Self {
            size: table.len(),
            glyphs: Some(table),
        }
    }

    /// SAX alphabet of size `alpha` with glyphs `a`, `b`, `c`, ...
    pub fn sax(alpha: usize) -> Result<Self> {
        if !(2..=SAX_GLYPHS.len()).contains(&alpha) {
            return Err(Error::InvalidAlpha(alpha));
        }
        Self::from_glyphs(&SAX_GLYPHS[..alpha])
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn glyphs(&self) -> Option<&[char]> {
        self.glyphs.as_deref()
    }

    pub fn index_of(&self, glyph: char) -> Option<u32> {
        self.glyphs
            .as_ref()?
            .iter()
            .position(|&g| g == glyph)
            .map(|i| i as u32)
    }

    pub fn glyph(&self, symbol: u32) -> Option<char> {
        self.glyphs.as_ref()?.get(symbol as usize).copied()
    }
}

/// A string over an [`Alphabet`], held as symbol indices.
#[derive(Clone, PartialEq, Eq)]
pub struct SymbolicSequence {
    symbols: Vec<u32>,
    alphabet: Arc<Alphabet>,
}

impl SymbolicSequence {
    pub fn from_symbols(symbols: Vec<u32>, alphabet: Arc<Alphabet>) -> Result<Self> {
        if let Some((position, &symbol)) = symbols
            .iter()
            .enumerate()
            .find(|(_, &s)| s as usize >= alphabet.size())
        {
            return Err(Error::SymbolOutOfRange {
                symbol,
                position,
                size: alphabet.size(),
            });
        }
        Ok(Self { symbols, alphabet })
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// True when both sequences draw from the same alphabet.
    pub fn same_alphabet(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.alphabet, &other.alphabet) || self.alphabet == other.alphabet
    }

    /// Renders the sequence with the alphabet's glyphs.
    pub fn to_glyphs(&self) -> Result<String> {
        self.symbols
            .iter()
            .map(|&s| self.alphabet.glyph(s).ok_or(Error::NoGlyphs))
            .collect()
    }
}

impl fmt::Debug for SymbolicSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_glyphs() {
            Ok(text) => write!(f, "{text:?}"),
            Err(_) => f.debug_list().entries(&self.symbols).finish(),
        }
    }
}

/// Maps `glyphs` to a sequence over `alphabet`.
pub fn make_sequence(glyphs: &str, alphabet: &Arc<Alphabet>) -> Result<SymbolicSequence> {
    if alphabet.glyphs().is_none() {
        return Err(Error::NoGlyphs);
    }
    let symbols = glyphs
        .chars()
        .enumerate()
        .map(|(position, glyph)| {
            alphabet
                .index_of(glyph)
                .ok_or(Error::UnknownGlyph { glyph, position })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SymbolicSequence {
        symbols,
        alphabet: Arc::clone(alphabet),
    })
}

/// Counts of every contiguous window of length `n` in a sequence.
///
/// Only grams that occur are stored, sorted by gram so two profiles can be
/// intersected with a single merge pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NGramProfile {
    n: usize,
    counts: Vec<(Box<[u32]>, u32)>,
}

impl NGramProfile {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, gram: &[u32]) -> u32 {
        self.counts
            .binary_search_by(|(g, _)| g.as_ref().cmp(gram))
            .map(|i| self.counts[i].1)
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[u32], u32)> {
        self.counts.iter().map(|(g, c)| (g.as_ref(), *c))
    }

    /// Number of distinct grams.
    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    /// Sum of all counts, i.e. the number of windows.
    pub fn total(&self) -> u64 {
        self.counts.iter().map(|&(_, c)| u64::from(c)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

pub fn ngram_profile(seq: &SymbolicSequence, n: usize) -> Result<NGramProfile> {
    if n == 0 {
        return Err(Error::InvalidGramLength(n));
    }
    let mut windows: Vec<&[u32]> = seq.symbols.windows(n).collect();
    windows.sort_unstable();
    let mut counts: Vec<(Box<[u32]>, u32)> = Vec::new();
    for w in windows {
        match counts.last_mut() {
            Some((g, c)) if g.as_ref() == w => *c += 1,
            _ => counts.push((w.into(), 1)),
        }
    }
    Ok(NGramProfile { n, counts })
}

/// Sum over all grams of the smaller of the two counts.
pub fn overlap(p: &NGramProfile, q: &NGramProfile) -> Result<u64> {
    if p.n != q.n {
        return Err(Error::GramLengthMismatch(p.n, q.n));
    }
    let (mut i, mut j) = (0, 0);
    let mut shared = 0u64;
    while i < p.counts.len() && j < q.counts.len() {
        let (gp, cp) = &p.counts[i];
        let (gq, cq) = &q.counts[j];
        match gp.cmp(gq) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                shared += u64::from((*cp).min(*cq));
                i += 1;
                j += 1;
            }
        }
    }
    Ok(shared)
}
