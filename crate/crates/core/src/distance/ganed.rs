//! GANED: the edit distance scaled down by a length-normalized, λ-weighted
//! n-gram overlap factor.
//!
//! ```text
//! Φ = Σ_{n=1}^{nMax} 2 λ_n (overlap_n(S, T) + (n − 1)) / (n (|S| + |T|))
//! GANED(S, T) = ED(S, T) · (1 − clamp(Φ, 0, 1))
//! ```
//!
//! The clamp keeps `0 <= GANED <= ED` for every factor vector; without it,
//! identical strings with several gram depths push Φ above 1.

use std::sync::Arc;

use super::edit::{check_pair, edit_distance_unchecked, EditCosts};
use crate::error::{Error, Result};
use crate::sequence::{ngram_profile, overlap, NGramProfile, SymbolicSequence};

/// The λ vector, one weight per gram length starting at 1.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyFactors(Vec<f64>);

impl FrequencyFactors {
    pub fn new(lambdas: Vec<f64>) -> Result<Self> {
        if lambdas.is_empty() || !lambdas.iter().all(|l| (0.0..=1.0).contains(l)) {
            return Err(Error::InvalidFactors);
        }
        Ok(Self(lambdas))
    }

    pub fn zeros(n_max: usize) -> Result<Self> {
        Self::new(vec![0.0; n_max])
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.0
    }

    /// Deepest gram length, `nMax`.
    pub fn n_max(&self) -> usize {
        self.0.len()
    }
}

/// A sequence together with its n-gram profiles for `n = 1..=depth`.
///
/// Build these once per dataset item; every GANED evaluation against the
/// item then reuses the profiles.
#[derive(Debug, Clone)]
pub struct ProfiledSequence {
    sequence: SymbolicSequence,
    profiles: Arc<[NGramProfile]>,
}

impl ProfiledSequence {
    pub fn new(sequence: SymbolicSequence, depth: usize) -> Self {
        let profiles = (1..=depth)
            .map(|n| ngram_profile(&sequence, n).expect("n >= 1"))
            .collect();
        Self { sequence, profiles }
    }

    pub fn sequence(&self) -> &SymbolicSequence {
        &self.sequence
    }

    pub fn depth(&self) -> usize {
        self.profiles.len()
    }

    fn profile(&self, n: usize) -> std::borrow::Cow<'_, NGramProfile> {
        match self.profiles.get(n - 1) {
            Some(p) => std::borrow::Cow::Borrowed(p),
            None => std::borrow::Cow::Owned(ngram_profile(&self.sequence, n).expect("n >= 1")),
        }
    }
}

/// Unclamped Φ. Exposed so callers can see when the clamp engages.
pub fn overlap_factor(s: &ProfiledSequence, t: &ProfiledSequence, factors: &FrequencyFactors) -> f64 {
    let total_len = (s.sequence.len() + t.sequence.len()) as f64;
    factors
        .lambdas()
        .iter()
        .enumerate()
        .map(|(k, &lambda)| {
            let n = k + 1;
            if lambda == 0.0 {
                return 0.0;
            }
            let shared = overlap(&s.profile(n), &t.profile(n)).expect("equal gram lengths");
            2.0 * lambda * (shared + (n as u64 - 1)) as f64 / (n as f64 * total_len)
        })
        .sum()
}

pub fn ganed(
    s: &SymbolicSequence,
    t: &SymbolicSequence,
    factors: &FrequencyFactors,
    costs: &EditCosts,
) -> Result<f64> {
    check_pair(s, t)?;
    let depth = factors.n_max();
    ganed_profiled(
        &ProfiledSequence::new(s.clone(), depth),
        &ProfiledSequence::new(t.clone(), depth),
        factors,
        costs,
    )
}

/// GANED on pre-profiled sequences.
pub fn ganed_profiled(
    s: &ProfiledSequence,
    t: &ProfiledSequence,
    factors: &FrequencyFactors,
    costs: &EditCosts,
) -> Result<f64> {
    check_pair(&s.sequence, &t.sequence)?;
    costs.validate()?;
    let ed = edit_distance_unchecked(s.sequence.symbols(), t.sequence.symbols(), costs);
    // Covers the empty pair, where Φ's denominator vanishes.
    if ed == 0.0 {
        return Ok(0.0);
    }
    let phi = overlap_factor(s, t, factors).clamp(0.0, 1.0);
    Ok(ed * (1.0 - phi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::edit_distance;
    use crate::sequence::{make_sequence, Alphabet};

    fn pair(a: &str, b: &str) -> (SymbolicSequence, SymbolicSequence) {
        let alpha = Arc::new(Alphabet::covering([a, b]));
        (
            make_sequence(a, &alpha).unwrap(),
            make_sequence(b, &alpha).unwrap(),
        )
    }

    fn factors(v: &[f64]) -> FrequencyFactors {
        FrequencyFactors::new(v.to_vec()).unwrap()
    }

    #[test]
    fn marwan_fuad_hand_value() {
        let (s, t) = pair("MARWAN", "FUAD");
        assert_eq!(ganed(&s, &t, &factors(&[1.0]), &EditCosts::UNIT).unwrap(), 4.0);
    }

    #[test]
    fn zero_factors_reproduce_edit_distance() {
        let (s, t) = pair("kitten", "sitting");
        let ed = edit_distance(&s, &t, &EditCosts::UNIT).unwrap();
        let g = ganed(&s, &t, &factors(&[0.0, 0.0, 0.0]), &EditCosts::UNIT).unwrap();
        assert_eq!(g, ed);
    }

    #[test]
    fn clamp_engages_for_identical_strings() {
        let (s, t) = pair("AA", "AA");
        let f = factors(&[1.0, 1.0]);
        let ps = ProfiledSequence::new(s.clone(), 2);
        let pt = ProfiledSequence::new(t.clone(), 2);
        assert_eq!(overlap_factor(&ps, &pt, &f), 1.5);
        assert_eq!(ganed(&s, &t, &f, &EditCosts::UNIT).unwrap(), 0.0);
    }

    #[test]
    fn clamp_keeps_distance_nonnegative() {
        // Φ = 2·2/4 + 2·(0 + 1)/(2·4) = 1.25 for "AB" vs "BA" at λ = [1, 1].
        let (s, t) = pair("AB", "BA");
        let f = factors(&[1.0, 1.0]);
        let ps = ProfiledSequence::new(s.clone(), 2);
        let pt = ProfiledSequence::new(t.clone(), 2);
        assert_eq!(overlap_factor(&ps, &pt, &f), 1.25);
        assert_eq!(ganed(&s, &t, &f, &EditCosts::UNIT).unwrap(), 0.0);
    }

    #[test]
    fn disjoint_strings_still_get_the_gram_offset() {
        // overlap_2 = 0 but the (n - 1) term contributes 2·1·1/(2·4) = 0.25
        let (s, t) = pair("AA", "BB");
        let f = factors(&[0.0, 1.0]);
        assert_eq!(ganed(&s, &t, &f, &EditCosts::UNIT).unwrap(), 2.0 * 0.75);
    }

    #[test]
    fn empty_pair_is_zero() {
        let (s, t) = pair("", "");
        assert_eq!(ganed(&s, &t, &factors(&[1.0]), &EditCosts::UNIT).unwrap(), 0.0);
        let (s, t) = pair("", "ab");
        assert_eq!(ganed(&s, &t, &factors(&[1.0, 1.0]), &EditCosts::UNIT).unwrap(), 1.0);
    }

    #[test]
    fn profiles_deeper_than_cache_are_computed() {
        let (s, t) = pair("ABAB", "ABBA");
        let f = factors(&[0.5, 0.5, 0.5]);
        let shallow = ganed_profiled(
            &ProfiledSequence::new(s.clone(), 1),
            &ProfiledSequence::new(t.clone(), 0),
            &f,
            &EditCosts::UNIT,
        )
        .unwrap();
        assert_eq!(shallow, ganed(&s, &t, &f, &EditCosts::UNIT).unwrap());
    }

    #[test]
    fn factor_validation() {
        assert_eq!(FrequencyFactors::new(vec![]).unwrap_err(), Error::InvalidFactors);
        assert_eq!(FrequencyFactors::new(vec![1.5]).unwrap_err(), Error::InvalidFactors);
        assert_eq!(FrequencyFactors::new(vec![f64::NAN]).unwrap_err(), Error::InvalidFactors);
        assert_eq!(FrequencyFactors::zeros(3).unwrap().n_max(), 3);
    }
}
