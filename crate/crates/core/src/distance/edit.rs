use crate::error::{Error, Result};
use crate::sequence::SymbolicSequence;

/// Costs of the elementary edit operations. A match always costs 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EditCosts {
    pub delete: f64,
    pub insert: f64,
    pub substitute: f64,
}

impl EditCosts {
    /// Levenshtein costs.
    pub const UNIT: EditCosts = EditCosts {
        delete: 1.0,
        insert: 1.0,
        substitute: 1.0,
    };

    pub fn new(delete: f64, insert: f64, substitute: f64) -> Result<Self> {
        let costs = Self {
            delete,
            insert,
            substitute,
        };
        costs.validate()?;
        Ok(costs)
    }

    pub(crate) fn validate(&self) -> Result<()> {
        let ok = |c: f64| c.is_finite() && c >= 0.0;
        if ok(self.delete) && ok(self.insert) && ok(self.substitute) {
            Ok(())
        } else {
            Err(Error::InvalidCosts)
        }
    }

    #[inline]
    pub(crate) fn step(&self, a: u32, b: u32) -> f64 {
        if a == b {
            0.0
        } else {
            self.substitute
        }
    }
}

impl Default for EditCosts {
    fn default() -> Self {
        Self::UNIT
    }
}

pub(crate) fn check_pair(s: &SymbolicSequence, t: &SymbolicSequence) -> Result<()> {
    if s.same_alphabet(t) {
        Ok(())
    } else {
        Err(Error::AlphabetMismatch)
    }
}

/// Minimum total cost of transforming `s` into `t`.
///
/// Deleting a symbol of `s` costs `costs.delete`, inserting a symbol of `t`
/// costs `costs.insert`.
pub fn edit_distance(s: &SymbolicSequence, t: &SymbolicSequence, costs: &EditCosts) -> Result<f64> {
    check_pair(s, t)?;
    costs.validate()?;
    Ok(edit_distance_unchecked(s.symbols(), t.symbols(), costs))
}

pub(crate) fn edit_distance_unchecked(s: &[u32], t: &[u32], costs: &EditCosts) -> f64 {
    // Rows follow `s`, columns follow `t`; keep the shorter side as columns.
    if t.is_empty() {
        return s.len() as f64 * costs.delete;
    }
    let mut prev: Vec<f64> = (0..=t.len()).map(|j| j as f64 * costs.insert).collect();
    let mut cur = vec![0.0; t.len() + 1];
    for (i, &a) in s.iter().enumerate() {
        cur[0] = (i + 1) as f64 * costs.delete;
        for (j, &b) in t.iter().enumerate() {
            let sub = prev[j] + costs.step(a, b);
            let del = prev[j + 1] + costs.delete;
            let ins = cur[j] + costs.insert;
            cur[j + 1] = sub.min(del).min(ins);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[t.len()]
}

/// The full `(|s|+1) x (|t|+1)` dynamic-programming table; cell `[i][j]` is the
/// distance between the first `i` symbols of `s` and the first `j` of `t`.
pub fn edit_distance_table(
    s: &SymbolicSequence,
    t: &SymbolicSequence,
    costs: &EditCosts,
) -> Result<Vec<Vec<f64>>> {
    check_pair(s, t)?;
    costs.validate()?;
    let (s, t) = (s.symbols(), t.symbols());
    let mut table = vec![vec![0.0; t.len() + 1]; s.len() + 1];
    for j in 1..=t.len() {
        table[0][j] = table[0][j - 1] + costs.insert;
    }
    for i in 1..=s.len() {
        table[i][0] = table[i - 1][0] + costs.delete;
        for j in 1..=t.len() {
            table[i][j] = (table[i - 1][j - 1] + costs.step(s[i - 1], t[j - 1]))
                .min(table[i - 1][j] + costs.delete)
                .min(table[i][j - 1] + costs.insert);
        }
    }
    Ok(table)
}
