//! Independent reference implementations and fixtures shared by the
//! integration and acceptance tests. Nothing here calls the library's
//! distance kernels.

#![allow(dead_code)]

use std::sync::Arc;

use ganed::classify::LabeledDataset;
use ganed::sax::TimeSeries;
use ganed::sequence::{Alphabet, SymbolicSequence};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every string over `{0, 1}` of length at most `max_len`, shortest first.
pub fn binary_strings(max_len: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for len in 1..=max_len {
        for bits in 0..(1u32 << len) {
            out.push((0..len).map(|k| (bits >> k) & 1).collect());
        }
    }
    out
}

pub fn seq(symbols: &[u32], alphabet: &Arc<Alphabet>) -> SymbolicSequence {
    SymbolicSequence::from_symbols(symbols.to_vec(), Arc::clone(alphabet)).unwrap()
}

/// Unit-cost edit distance by plain recursion over the three choices for the
/// first symbols, with no table.
pub fn brute_edit_distance(s: &[u32], t: &[u32]) -> u32 {
    match (s.split_first(), t.split_first()) {
        (None, _) => t.len() as u32,
        (_, None) => s.len() as u32,
        (Some((a, s_rest)), Some((b, t_rest))) => {
            let sub = brute_edit_distance(s_rest, t_rest) + u32::from(a != b);
            let del = brute_edit_distance(s_rest, t) + 1;
            let ins = brute_edit_distance(s, t_rest) + 1;
            sub.min(del).min(ins)
        }
    }
}

/// Every editing path from (0,0) to (|s|,|t|) as (weight, steps) under unit costs.
pub fn all_paths(s: &[u32], t: &[u32]) -> Vec<(u32, u32)> {
    fn walk(s: &[u32], t: &[u32], i: usize, j: usize, w: u32, l: u32, out: &mut Vec<(u32, u32)>) {
        if i == s.len() && j == t.len() {
            out.push((w, l));
            return;
        }
        if i < s.len() && j < t.len() {
            walk(s, t, i + 1, j + 1, w + u32::from(s[i] != t[j]), l + 1, out);
        }
        if i < s.len() {
            walk(s, t, i + 1, j, w + 1, l + 1, out);
        }
        if j < t.len() {
            walk(s, t, i, j + 1, w + 1, l + 1, out);
        }
    }
    let mut out = Vec::new();
    walk(s, t, 0, 0, 0, 0, &mut out);
    out
}

/// Minimum of weight/steps over all paths, compared as exact fractions.
pub fn brute_ned(s: &[u32], t: &[u32]) -> f64 {
    if s.is_empty() && t.is_empty() {
        return 0.0;
    }
    let (w, l) = all_paths(s, t)
        .into_iter()
        .reduce(|a, b| if u64::from(b.0) * u64::from(a.1) < u64::from(a.0) * u64::from(b.1) { b } else { a })
        .unwrap();
    f64::from(w) / f64::from(l)
}

/// Standard normal CDF: 0.5 plus a composite Simpson integral of the density.
pub fn normal_cdf(x: f64) -> f64 {
    if x == 0.0 {
        return 0.5;
    }
    let intervals = 4000;
    let h = x / intervals as f64;
    let pdf = |u: f64| (-0.5 * u * u).exp() / (2.0 * std::f64::consts::PI).sqrt();
    let mut acc = pdf(0.0) + pdf(x);
    for k in 1..intervals {
        acc += pdf(k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    0.5 + acc * h / 3.0
}

/// Quantile by bisection on [`normal_cdf`].
pub fn bisect_quantile(p: f64) -> f64 {
    let (mut lo, mut hi) = (-10.0, 10.0);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if normal_cdf(mid) < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn random_walk(rng: &mut impl Rng, len: usize) -> Vec<f64> {
    let mut x = rng.gen_range(-1.0..1.0);
    (0..len)
        .map(|_| {
            x += rng.gen_range(-1.0..1.0);
            x
        })
        .collect()
}

/// Two-class data: noisy sines (label 1) against noisy up-ramps (label 2),
/// `per_class` series of each kind, lengths `len`.
pub fn sine_vs_ramp(seed: u64, per_class: usize, len: usize) -> LabeledDataset<TimeSeries> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut items = Vec::new();
    for k in 0..2 * per_class {
        let label = 1 + (k % 2) as i64;
        let phase = rng.gen_range(0.0..0.3);
        let values = (0..len)
            .map(|i| {
                let x = i as f64 / len as f64;
                let clean = if label == 1 {
                    (2.0 * std::f64::consts::PI * (2.0 * x + phase)).sin()
                } else {
                    2.0 * x - 1.0
                };
                clean + rng.gen_range(-0.1..0.1)
            })
            .collect();
        items.push((label, TimeSeries::new(values).unwrap()));
    }
    LabeledDataset::new("sine_ramp", items)
}

/// Three noisy shape classes in the style of cylinder / bell / funnel, hard
/// enough that 1-NN on SAX words makes some mistakes.
pub fn shapes(seed: u64, per_class: usize, len: usize) -> LabeledDataset<TimeSeries> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut items = Vec::new();
    for k in 0..3 * per_class {
        let label = (k % 3) as i64 + 1;
        let a = rng.gen_range(len / 8..len / 3);
        let b = a + rng.gen_range(len / 4..len / 2);
        let height = 6.0 + rng.gen_range(-1.0..1.0);
        let values = (0..len)
            .map(|i| {
                let inside = i >= a && i <= b;
                let ramp = (i.saturating_sub(a)) as f64 / (b - a) as f64;
                let shape = match label {
                    1 if inside => height,
                    2 if inside => height * ramp,
                    3 if inside => height * (1.0 - ramp),
                    _ => 0.0,
                };
                shape + rng.gen_range(-1.5..1.5)
            })
            .collect();
        items.push((label, TimeSeries::new(values).unwrap()));
    }
    LabeledDataset::new("shapes", items)
}
