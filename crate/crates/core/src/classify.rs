//! 1-NN classification with leave-one-out and train/test evaluation.
//!
//! Queries are evaluated in parallel; each query's answer depends only on the
//! read-only reference set and the smallest-index tie rule, so results match
//! a sequential run exactly.

use std::fmt;

use rayon::prelude::*;

use crate::distance::{
    edit_distance, ganed_profiled, mindist, ned, EditCosts, FrequencyFactors, ProfiledSequence,
};
use crate::error::{Error, Result};
use crate::sax::Breakpoints;
use crate::sequence::SymbolicSequence;

pub type Label = i64;

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset<T> {
    pub name: String,
    pub items: Vec<(Label, T)>,
}

impl<T> LabeledDataset<T> {
    pub fn new(name: impl Into<String>, items: Vec<(Label, T)>) -> Self {
        Self {
            name: name.into(),
            items,
        }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Same labels, items transformed by `f`.
    pub fn try_map<U>(&self, mut f: impl FnMut(&T) -> Result<U>) -> Result<LabeledDataset<U>> {
        Ok(LabeledDataset {
            name: self.name.clone(),
            items: self
                .items
                .iter()
                .map(|(l, x)| Ok((*l, f(x)?)))
                .collect::<Result<_>>()?,
        })
    }
}

/// Anything that carries a symbolic sequence.
pub trait AsSequence {
    fn sequence(&self) -> &SymbolicSequence;
}

impl AsSequence for SymbolicSequence {
    fn sequence(&self) -> &SymbolicSequence {
        self
    }
}

impl AsSequence for ProfiledSequence {
    fn sequence(&self) -> &SymbolicSequence {
        ProfiledSequence::sequence(self)
    }
}

/// Items that carry cached n-gram profiles.
pub trait AsProfiled {
    fn profiled(&self) -> &ProfiledSequence;
}

impl AsProfiled for ProfiledSequence {
    fn profiled(&self) -> &ProfiledSequence {
        self
    }
}

/// A SAX word with its cached profiles and the length of the series it came from.
#[derive(Debug, Clone)]
pub struct SaxWord {
    pub word: ProfiledSequence,
    pub original_length: usize,
}

impl AsSequence for SaxWord {
    fn sequence(&self) -> &SymbolicSequence {
        self.word.sequence()
    }
}

impl AsProfiled for SaxWord {
    fn profiled(&self) -> &ProfiledSequence {
        &self.word
    }
}

/// A deterministic distance between two items.
pub trait DistanceFunction<T: ?Sized>: Sync {
    fn distance(&self, a: &T, b: &T) -> Result<f64>;
}

impl<T: ?Sized, F> DistanceFunction<T> for F
where
    F: Fn(&T, &T) -> Result<f64> + Sync,
{
    fn distance(&self, a: &T, b: &T) -> Result<f64> {
        self(a, b)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct EditDistance(pub EditCosts);

impl<T: AsSequence> DistanceFunction<T> for EditDistance {
    fn distance(&self, a: &T, b: &T) -> Result<f64> {
        edit_distance(a.sequence(), b.sequence(), &self.0)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct NormalizedEditDistance(pub EditCosts);

impl<T: AsSequence> DistanceFunction<T> for NormalizedEditDistance {
    fn distance(&self, a: &T, b: &T) -> Result<f64> {
        ned(a.sequence(), b.sequence(), &self.0)
    }
}

#[derive(Debug, Clone)]
pub struct Ganed {
    pub factors: FrequencyFactors,
    pub costs: EditCosts,
}

impl<T: AsProfiled> DistanceFunction<T> for Ganed {
    fn distance(&self, a: &T, b: &T) -> Result<f64> {
        ganed_profiled(a.profiled(), b.profiled(), &self.factors, &self.costs)
    }
}

/// MINDIST between SAX words. When the source series differ in length the
/// shorter one sets the scale.
#[derive(Debug, Clone)]
pub struct MinDist(pub Breakpoints);

impl DistanceFunction<SaxWord> for MinDist {
    fn distance(&self, a: &SaxWord, b: &SaxWord) -> Result<f64> {
        let n = a.original_length.min(b.original_length);
        mindist(a.sequence(), b.sequence(), n, &self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Neighbor {
    pub label: Label,
    pub index: usize,
    pub distance: f64,
}

fn nearest<T, D>(query: &T, refs: &[(Label, T)], dist: &D, skip: Option<usize>) -> Result<Option<Neighbor>>
where
    D: DistanceFunction<T> + ?Sized,
{
    let mut best: Option<Neighbor> = None;
    for (index, (label, item)) in refs.iter().enumerate() {
        if Some(index) == skip {
            continue;
        }
        let d = dist.distance(query, item)?;
        // Strict comparison keeps the earliest index on ties.
        if best.is_none_or(|b| d < b.distance) {
            best = Some(Neighbor {
                label: *label,
                index,
                distance: d,
            });
        }
    }
    Ok(best)
}

pub fn nn1<T, D>(query: &T, refs: &LabeledDataset<T>, dist: &D) -> Result<Neighbor>
where
    D: DistanceFunction<T> + ?Sized,
{
    nearest(query, &refs.items, dist, None)?.ok_or(Error::EmptyReferences)
}

/// Misclassification count over a number of evaluated queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ErrorRate {
    pub misclassified: usize,
    pub total: usize,
}

impl ErrorRate {
    pub fn value(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.misclassified as f64 / self.total as f64
        }
    }

    /// Value rounded to three decimals, as reported in result tables.
    pub fn rounded(&self) -> f64 {
        (self.value() * 1000.0).round() / 1000.0
    }
}

impl fmt::Display for ErrorRate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.misclassified, self.total)
    }
}

fn count_errors(results: Vec<Result<bool>>) -> Result<usize> {
    results
        .into_iter()
        .try_fold(0, |acc, r| Ok(acc + usize::from(!r?)))
}

pub fn loocv_error<T, D>(ds: &LabeledDataset<T>, dist: &D) -> Result<ErrorRate>
where
    T: Sync,
    D: DistanceFunction<T> + ?Sized,
{
    if ds.len() < 2 {
        return Err(Error::DatasetTooSmall {
            needed: 2,
            got: ds.len(),
        });
    }
    let outcomes: Vec<Result<bool>> = ds
        .items
        .par_iter()
        .enumerate()
        .map(|(i, (label, item))| {
            let nb = nearest(item, &ds.items, dist, Some(i))?.expect("at least one other item");
            Ok(nb.label == *label)
        })
        .collect();
    Ok(ErrorRate {
        misclassified: count_errors(outcomes)?,
        total: ds.len(),
    })
}

pub fn holdout_error<T, D>(train: &LabeledDataset<T>, test: &LabeledDataset<T>, dist: &D) -> Result<ErrorRate>
where
    T: Sync,
    D: DistanceFunction<T> + ?Sized,
{
    for split in [train, test] {
        if split.is_empty() {
            return Err(Error::DatasetTooSmall { needed: 1, got: 0 });
        }
    }
    let outcomes: Vec<Result<bool>> = test
        .items
        .par_iter()
        .map(|(label, item)| Ok(nn1(item, train, dist)?.label == *label))
        .collect();
    Ok(ErrorRate {
        misclassified: count_errors(outcomes)?,
        total: test.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::{make_sequence, Alphabet};
    use proptest::prelude::*;
    use std::sync::Arc;

    fn scalar_dist(a: &f64, b: &f64) -> Result<f64> {
        Ok((a - b).abs())
    }

    fn scalars(items: &[(Label, f64)]) -> LabeledDataset<f64> {
        LabeledDataset::new("scalars", items.to_vec())
    }

    #[test]
    fn nn1_examples() {
        let refs = scalars(&[(1, 0.0), (2, 5.0), (3, 9.0), (4, 2.0)]);
        assert_eq!(
            nn1(&2.0, &refs, &scalar_dist).unwrap(),
            Neighbor {
                label: 4,
                index: 3,
                distance: 0.0
            }
        );
        // 1.0 is equally far from 0.0 and 2.0; index 0 wins.
        assert_eq!(nn1(&1.0, &refs, &scalar_dist).unwrap().index, 0);
        assert_eq!(nn1(&100.0, &scalars(&[(7, -3.0)]), &scalar_dist).unwrap().label, 7);
        assert_eq!(
            nn1(&1.0, &scalars(&[]), &scalar_dist).unwrap_err(),
            Error::EmptyReferences
        );
    }

    #[test]
    fn loocv_examples() {
        let dup = scalars(&[(1, 0.0), (1, 0.0), (2, 3.0), (2, 3.0), (3, 7.0), (3, 7.0)]);
        assert_eq!(loocv_error(&dup, &scalar_dist).unwrap().misclassified, 0);
        let two = scalars(&[(1, 0.0), (2, 1.0)]);
        assert_eq!(loocv_error(&two, &scalar_dist).unwrap().value(), 1.0);
        assert_eq!(
            loocv_error(&scalars(&[(1, 0.0)]), &scalar_dist).unwrap_err(),
            Error::DatasetTooSmall { needed: 2, got: 1 }
        );
    }

    #[test]
    fn holdout_examples() {
        let train = scalars(&[(1, 0.0), (2, 10.0), (1, 1.0)]);
        let subset = scalars(&[(2, 10.0), (1, 1.0)]);
        assert_eq!(holdout_error(&train, &subset, &scalar_dist).unwrap().misclassified, 0);

        let one_class = scalars(&[(1, 0.0), (1, 4.0)]);
        let test = scalars(&[(1, 2.0), (2, 3.0), (3, 8.0), (1, 9.0)]);
        let e = holdout_error(&one_class, &test, &scalar_dist).unwrap();
        assert_eq!((e.misclassified, e.total), (2, 4));
        assert!(holdout_error(&scalars(&[]), &test, &scalar_dist).is_err());
        assert!(holdout_error(&train, &scalars(&[]), &scalar_dist).is_err());
    }

    /// Three classes of strings; every intra-class edit distance is at most 2
    /// and every inter-class distance at least 6, checked exhaustively below.
    fn clustered() -> LabeledDataset<SymbolicSequence> {
        let alpha = Arc::new(Alphabet::from_glyphs("abc").unwrap());
        let rows = [
            (0, "aaaaaaaa"),
            (0, "aaaaaaab"),
            (0, "aaaabaaa"),
            (1, "bbbbbbbb"),
            (1, "bbbcbbbb"),
            (1, "bbbbbbba"),
            (2, "cccccccc"),
            (2, "ccccccca"),
            (2, "cccbcccc"),
        ];
        LabeledDataset::new(
            "clusters",
            rows.iter()
                .map(|(l, s)| (*l, make_sequence(s, &alpha).unwrap()))
                .collect(),
        )
    }

    #[test]
    fn separated_clusters_classify_perfectly() {
        let ds = clustered();
        let ed = EditDistance(EditCosts::UNIT);
        for (i, (li, a)) in ds.items.iter().enumerate() {
            for (lj, b) in &ds.items[i + 1..] {
                let d = ed.distance(a, b).unwrap();
                if li == lj {
                    assert!(d <= 2.0);
                } else {
                    assert!(d >= 6.0);
                }
            }
        }
        assert_eq!(loocv_error(&ds, &ed).unwrap().misclassified, 0);
        let (train, test): (Vec<_>, Vec<_>) =
            ds.items.iter().cloned().enumerate().partition(|(i, _)| i % 3 != 2);
        let strip = |v: Vec<(usize, (Label, SymbolicSequence))>| {
            LabeledDataset::new("split", v.into_iter().map(|(_, x)| x).collect())
        };
        assert_eq!(
            holdout_error(&strip(train), &strip(test), &ed).unwrap().misclassified,
            0
        );
    }

    #[test]
    fn ganed_at_zero_matches_edit_distance_loocv() {
        let ds = clustered();
        let profiled = ds.try_map(|s| Ok(ProfiledSequence::new(s.clone(), 3))).unwrap();
        let g = Ganed {
            factors: FrequencyFactors::zeros(3).unwrap(),
            costs: EditCosts::UNIT,
        };
        assert_eq!(
            loocv_error(&profiled, &g).unwrap(),
            loocv_error(&ds, &EditDistance::default()).unwrap()
        );
    }

    #[test]
    fn error_rate_formatting() {
        let e = ErrorRate {
            misclassified: 1,
            total: 3,
        };
        assert_eq!(e.rounded(), 0.333);
        assert_eq!(e.to_string(), "1/3");
    }

    proptest! {
        #[test]
        fn shuffle_does_not_change_error(
            items in prop::collection::vec((0i64..3, 0u32..1000), 2..30),
            seed in any::<u64>(),
        ) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            // Distinct values plus an index-dependent jitter keep every
            // pairwise distance distinct.
            let values: Vec<(Label, f64)> = items
                .iter()
                .enumerate()
                .map(|(i, (l, v))| (*l, *v as f64 + i as f64 * 1e-3 + (i * i) as f64 * 1e-7))
                .collect();
            let ds = scalars(&values);
            let dist = |a: &f64, b: &f64| Ok((a - b).abs().powf(1.01));
            let base = loocv_error(&ds, &dist).unwrap();
            let mut shuffled = values.clone();
            shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let again = loocv_error(&scalars(&shuffled), &dist).unwrap();
            prop_assert_eq!(base, again);
            prop_assert!((0.0..=1.0).contains(&base.value()));
        }
    }
}
