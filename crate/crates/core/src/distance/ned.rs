//! Normalized edit distance: the minimum over editing paths of the path
//! weight divided by the number of steps in the path.
//!
//! A path of length `L` from `(0, 0)` to `(|s|, |t|)` uses `|s| + |t| - L`
//! diagonal steps, so `L` ranges over `[max(|s|, |t|), |s| + |t|]`. The
//! program below advances one step at a time and keeps, for every lattice
//! point, the cheapest weight reachable with exactly the current number of
//! steps. Only two layers are live at once.

use super::edit::{check_pair, EditCosts};
use crate::error::Result;
use crate::sequence::SymbolicSequence;

pub fn ned(s: &SymbolicSequence, t: &SymbolicSequence, costs: &EditCosts) -> Result<f64> {
    check_pair(s, t)?;
    costs.validate()?;
    Ok(ned_unchecked(s.symbols(), t.symbols(), costs))
}

/// Two empty strings have no path at all; their distance is 0.
pub(crate) fn ned_unchecked(s: &[u32], t: &[u32], costs: &EditCosts) -> f64 {
    let (n, m) = (s.len(), t.len());
    if n + m == 0 {
        return 0.0;
    }
    let width = m + 1;
    let idx = |i: usize, j: usize| i * width + j;
    let mut prev = vec![f64::INFINITY; (n + 1) * width];
    let mut cur = vec![f64::INFINITY; (n + 1) * width];
    prev[idx(0, 0)] = 0.0;

    let mut best = f64::INFINITY;
    for len in 1..=n + m {
        // After `len` steps every reachable (i, j) has i + j in [len, 2 len].
        for i in 0..=n.min(len) {
            let j_lo = len.saturating_sub(i);
            let j_hi = m.min(2 * len - i);
            for j in 0..=m {
                if j < j_lo || j > j_hi {
                    cur[idx(i, j)] = f64::INFINITY;
                    continue;
                }
                let mut w = f64::INFINITY;
                if i > 0 && j > 0 {
                    w = w.min(prev[idx(i - 1, j - 1)] + costs.step(s[i - 1], t[j - 1]));
                }
                if i > 0 {
                    w = w.min(prev[idx(i - 1, j)] + costs.delete);
                }
                if j > 0 {
                    w = w.min(prev[idx(i, j - 1)] + costs.insert);
                }
                cur[idx(i, j)] = w;
            }
        }
        for i in n.min(len) + 1..=n {
            cur[idx(i, 0)..idx(i, 0) + width].fill(f64::INFINITY);
        }
        let w = cur[idx(n, m)];
        if w.is_finite() {
            best = best.min(w / len as f64);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::{make_sequence, Alphabet};
    use std::sync::Arc;

    fn ned_str(a: &str, b: &str) -> f64 {
        let alpha = Arc::new(Alphabet::covering([a, b]));
        let s = make_sequence(a, &alpha).unwrap();
        let t = make_sequence(b, &alpha).unwrap();
        ned(&s, &t, &EditCosts::UNIT).unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(ned_str("a", "b"), 1.0);
        assert_eq!(ned_str("ab", "b"), 0.5);
        assert_eq!(ned_str("abc", "abc"), 0.0);
        assert_eq!(ned_str("", ""), 0.0);
        assert_eq!(ned_str("", "ab"), 1.0);
    }

    #[test]
    fn differs_from_dividing_edit_distance() {
        // ED("ab","ba") = 2 via two substitutions (length 2) or one
        // delete + insert around the match (length 3, weight 2).
        assert!((ned_str("ab", "ba") - 2.0 / 3.0).abs() < 1e-15);
    }
}
