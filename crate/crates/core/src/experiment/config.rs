//! Experiment configuration.
//!
//! Configs are flat `key = value` files. Keys match the command-line flags
//! without the leading dashes (`paa-segments` and `paa_segments` are the
//! same key); list values are comma-separated. Later assignments override
//! earlier ones, which is how command-line flags take precedence over a
//! config file.

use std::fmt::{self, Write as _};
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ga::GaConfig;
use crate::sax::MAX_ALPHA;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DistanceKind {
    #[default]
    Ganed,
    Ed,
    Ned,
    Mindist,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Evaluation {
    /// Test items classified against the training set.
    #[default]
    Holdout,
    /// Leave-one-out within the test set.
    LoocvOnTest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Table,
}

macro_rules! keyword_enum {
    ($ty:ty, $what:literal, { $($($name:literal)|+ => $variant:expr),+ $(,)? }) => {
        impl FromStr for $ty {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s.trim().to_ascii_lowercase().as_str() {
                    $($($name)|+ => Ok($variant),)+
                    other => Err(Error::Config(format!("unknown {} {other:?}", $what))),
                }
            }
        }
    };
}

keyword_enum!(DistanceKind, "distance", {
    "ganed" => DistanceKind::Ganed,
    "ed" | "edit" => DistanceKind::Ed,
    "ned" => DistanceKind::Ned,
    "mindist" => DistanceKind::Mindist,
});
keyword_enum!(Evaluation, "evaluation", {
    "holdout" => Evaluation::Holdout,
    "loocv_on_test" | "loocv-on-test" | "loocv" => Evaluation::LoocvOnTest,
});
keyword_enum!(OutputFormat, "format", {
    "csv" => OutputFormat::Csv,
    "table" => OutputFormat::Table,
});

impl fmt::Display for DistanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DistanceKind::Ganed => "ganed",
            DistanceKind::Ed => "ed",
            DistanceKind::Ned => "ned",
            DistanceKind::Mindist => "mindist",
        })
    }
}

impl fmt::Display for Evaluation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Evaluation::Holdout => "holdout",
            Evaluation::LoocvOnTest => "loocv_on_test",
        })
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Table => "table",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub train_path: Option<PathBuf>,
    pub test_path: Option<PathBuf>,
    pub alphabet_sizes: Vec<usize>,
    /// PAA word lengths. Required; more than one value runs a sweep.
    pub paa_segments: Vec<usize>,
    /// Gram depths; empty means `[len(fixed_lambdas)]` in replay mode and
    /// `[1, 2, 3]` otherwise.
    pub gram_depths: Vec<usize>,
    pub ga: GaConfig,
    pub distance: DistanceKind,
    pub evaluation: Evaluation,
    pub fixed_lambdas: Option<Vec<f64>>,
    pub output_path: Option<PathBuf>,
    pub output_format: OutputFormat,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            train_path: None,
            test_path: None,
            alphabet_sizes: vec![3, 10, 20],
            paa_segments: Vec::new(),
            gram_depths: Vec::new(),
            ga: GaConfig::default(),
            distance: DistanceKind::default(),
            evaluation: Evaluation::default(),
            fixed_lambdas: None,
            output_path: None,
            output_format: OutputFormat::default(),
        }
    }
}

fn parse_num<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("{key}: {value:?} is not a valid number")))
}

fn parse_list<T: FromStr>(key: &str, value: &str) -> Result<Vec<T>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|v| !v.is_empty())
        .map(|v| parse_num(key, v))
        .collect()
}

fn join<T: fmt::Display>(values: &[T]) -> String {
    values.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

impl ExperimentConfig {
    /// Parses a config file body on top of the defaults.
    pub fn from_kv(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        cfg.apply_kv(text)?;
        Ok(cfg)
    }

    pub fn apply_kv(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: i + 1,
                message: format!("expected `key = value`, got {line:?}"),
            })?;
            self.set(key.trim(), value.trim())?;
        }
        Ok(())
    }

    /// Assigns one setting by key.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim_start_matches('-').replace('_', "-");
        match key.as_str() {
            "train" => self.train_path = Some(value.into()),
            "test" => self.test_path = Some(value.into()),
            "alpha" => self.alphabet_sizes = parse_list(&key, value)?,
            "paa-segments" | "sweep-n" => self.paa_segments = parse_list(&key, value)?,
            "nmax" => self.gram_depths = parse_list(&key, value)?,
            "lambda" => self.fixed_lambdas = Some(parse_list(&key, value)?),
            "distance" => self.distance = value.parse()?,
            "evaluation" => self.evaluation = value.parse()?,
            "seed" => self.ga.seed = parse_num(&key, value)?,
            "psize" => self.ga.pop_size = parse_num(&key, value)?,
            "ngen" => self.ga.generations = parse_num(&key, value)?,
            "mrate" => self.ga.mutation_rate = parse_num(&key, value)?,
            "srate" => self.ga.selection_rate = parse_num(&key, value)?,
            "format" => self.output_format = value.parse()?,
            "out" => self.output_path = Some(value.into()),
            other => return Err(Error::Config(format!("unknown key {other:?}"))),
        }
        Ok(())
    }

    pub fn resolved_gram_depths(&self) -> Vec<usize> {
        match (&self.fixed_lambdas, self.gram_depths.is_empty()) {
            (_, false) => self.gram_depths.clone(),
            (Some(l), true) => vec![l.len()],
            (None, true) => vec![1, 2, 3],
        }
    }

    /// Checks everything that does not need the data files.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.alphabet_sizes.is_empty() {
            return bad("at least one alphabet size is required".into());
        }
        if let Some(a) = self.alphabet_sizes.iter().find(|a| !(2..=MAX_ALPHA).contains(*a)) {
            return bad(format!("alphabet size {a} is outside [2, {MAX_ALPHA}]"));
        }
        if self.paa_segments.is_empty() {
            return bad("the PAA word length (paa-segments) must be given".into());
        }
        if self.paa_segments.contains(&0) {
            return bad("paa-segments must be at least 1".into());
        }
        let depths = self.resolved_gram_depths();
        if depths.contains(&0) {
            return bad("nmax must be at least 1".into());
        }
        if let Some(l) = &self.fixed_lambdas {
            if depths != [l.len()] {
                return bad(format!(
                    "replay λ has {} entries but nmax is {}",
                    l.len(),
                    join(&depths)
                ));
            }
            if !l.iter().all(|x| (0.0..=1.0).contains(x)) {
                return bad("λ entries must lie in [0, 1]".into());
            }
        }
        GaConfig {
            n_par: 1,
            ..self.ga.clone()
        }
        .validate()
    }

    /// Canonical `key = value` form; `from_kv(to_kv())` reproduces the config.
    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| {
            let _ = writeln!(out, "{k} = {v}");
        };
        if let Some(p) = &self.train_path {
            line("train", p.display().to_string());
        }
        if let Some(p) = &self.test_path {
            line("test", p.display().to_string());
        }
        line("alpha", join(&self.alphabet_sizes));
        if !self.paa_segments.is_empty() {
            line("paa-segments", join(&self.paa_segments));
        }
        if !self.gram_depths.is_empty() {
            line("nmax", join(&self.gram_depths));
        }
        if let Some(l) = &self.fixed_lambdas {
            line("lambda", join(l));
        }
        line("distance", self.distance.to_string());
        line("evaluation", self.evaluation.to_string());
        line("seed", self.ga.seed.to_string());
        line("psize", self.ga.pop_size.to_string());
        line("ngen", self.ga.generations.to_string());
        line("mrate", self.ga.mutation_rate.to_string());
        line("srate", self.ga.selection_rate.to_string());
        line("format", self.output_format.to_string());
        if let Some(p) = &self.output_path {
            line("out", p.display().to_string());
        }
        out
    }

    /// 64-bit FNV-1a of the canonical form, recorded with results.
    pub fn hash(&self) -> u64 {
        self.to_kv().bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
            (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
        })
    }
}
