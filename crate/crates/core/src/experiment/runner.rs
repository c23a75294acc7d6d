use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::config::{DistanceKind, Evaluation, ExperimentConfig};
use super::ucr::load_ucr;
use crate::classify::{
    holdout_error, loocv_error, DistanceFunction, EditDistance, ErrorRate, Ganed, LabeledDataset, MinDist,
    NormalizedEditDistance, SaxWord,
};
use crate::distance::{EditCosts, FrequencyFactors, ProfiledSequence};
use crate::error::{Error, Result};
use crate::ga::{optimize, GaConfig};
use crate::sax::{discretize, gaussian_breakpoints, paa, znormalize, Breakpoints, TimeSeries};

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRow {
    pub dataset: String,
    pub paa_segments: usize,
    pub alpha: usize,
    /// Gram depth; 0 for distances that have no frequency factors.
    pub nmax: usize,
    pub lambdas: Vec<f64>,
    pub train_error: ErrorRate,
    pub test_error: ErrorRate,
    pub mindist_error: ErrorRate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub rows: Vec<ExperimentRow>,
    pub seed: u64,
    pub config_hash: u64,
    pub wall_time: Duration,
}

/// SplitMix64 output function.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of the GA run for one `(alpha, nmax)` row:
/// `mix(seed ^ mix((alpha << 32) | nmax))` with `mix` the SplitMix64 step.
pub fn row_seed(seed: u64, alpha: usize, nmax: usize) -> u64 {
    mix(seed ^ mix(((alpha as u64) << 32) | nmax as u64))
}

/// SAX words for every series, with profiles cached up to `depth`.
pub fn sax_words(
    ds: &LabeledDataset<TimeSeries>,
    segments: usize,
    breakpoints: &Breakpoints,
    depth: usize,
) -> Result<LabeledDataset<SaxWord>> {
    ds.try_map(|ts| {
        let word = discretize(&paa(&znormalize(ts), segments)?, breakpoints);
        Ok(SaxWord {
            word: ProfiledSequence::new(word, depth),
            original_length: ts.len(),
        })
    })
}

pub fn evaluate<D>(
    train: &LabeledDataset<SaxWord>,
    test: &LabeledDataset<SaxWord>,
    dist: &D,
    mode: Evaluation,
) -> Result<ErrorRate>
where
    D: DistanceFunction<SaxWord> + ?Sized,
{
    match mode {
        Evaluation::Holdout => holdout_error(train, test, dist),
        Evaluation::LoocvOnTest => loocv_error(test, dist),
    }
}

/// Loads the configured files and runs every row.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    cfg.validate()?;
    let need = |p: &Option<std::path::PathBuf>, what: &str| {
        p.clone()
            .ok_or_else(|| Error::Config(format!("a {what} file is required")))
    };
    let train = load_ucr(need(&cfg.train_path, "training")?)?;
    let test = load_ucr(need(&cfg.test_path, "test")?)?;
    run_on_datasets(cfg, &train, &test)
}

/// Runs every `(N, alpha, nmax)` row on already loaded data. Rows come back
/// ordered by word length, then alphabet size, then gram depth, whatever
/// order they finish in.
pub fn run_on_datasets(
    cfg: &ExperimentConfig,
    train: &LabeledDataset<TimeSeries>,
    test: &LabeledDataset<TimeSeries>,
) -> Result<ExperimentResult> {
    cfg.validate()?;
    let started = Instant::now();
    let blocks: Vec<(usize, usize)> = cfg
        .paa_segments
        .iter()
        .flat_map(|&n| cfg.alphabet_sizes.iter().map(move |&a| (n, a)))
        .collect();
    let rows = blocks
        .par_iter()
        .map(|&(segments, alpha)| run_block(cfg, train, test, segments, alpha))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(ExperimentResult {
        rows,
        seed: cfg.ga.seed,
        config_hash: cfg.hash(),
        wall_time: started.elapsed(),
    })
}

fn run_block(
    cfg: &ExperimentConfig,
    train_ts: &LabeledDataset<TimeSeries>,
    test_ts: &LabeledDataset<TimeSeries>,
    segments: usize,
    alpha: usize,
) -> Result<Vec<ExperimentRow>> {
    let context = |nmax: Option<usize>| {
        let mut c = format!("dataset {}, N={segments}, alpha={alpha}", train_ts.name);
        if let Some(n) = nmax {
            c.push_str(&format!(", nmax={n}"));
        }
        c
    };
    let depths = cfg.resolved_gram_depths();
    let depth = match cfg.distance {
        DistanceKind::Ganed => depths.iter().copied().max().unwrap_or(1),
        _ => 0,
    };
    let breakpoints = gaussian_breakpoints(alpha).map_err(|e| e.in_row(context(None)))?;
    let prepare = |ds| sax_words(ds, segments, &breakpoints, depth).map_err(|e| e.in_row(context(None)));
    let train = prepare(train_ts)?;
    let test = prepare(test_ts)?;
    let mindist = MinDist(breakpoints.clone());
    let mindist_error = evaluate(&train, &test, &mindist, cfg.evaluation).map_err(|e| e.in_row(context(None)))?;

    let row = |nmax, lambdas, train_error, test_error| ExperimentRow {
        dataset: train_ts.name.clone(),
        paa_segments: segments,
        alpha,
        nmax,
        lambdas,
        train_error,
        test_error,
        mindist_error,
    };
    let simple = |dist: &dyn DistanceFunction<SaxWord>| -> Result<Vec<ExperimentRow>> {
        let train_error = loocv_error(&train, dist)?;
        let test_error = evaluate(&train, &test, dist, cfg.evaluation)?;
        Ok(vec![row(0, Vec::new(), train_error, test_error)])
    };
    match cfg.distance {
        DistanceKind::Ed => simple(&EditDistance(EditCosts::UNIT)),
        DistanceKind::Ned => simple(&NormalizedEditDistance(EditCosts::UNIT)),
        DistanceKind::Mindist => simple(&mindist),
        DistanceKind::Ganed => depths
            .iter()
            .map(|&nmax| {
                let ganed_row = || -> Result<ExperimentRow> {
                    let (lambdas, train_error) = tune(cfg, &train, alpha, nmax)?;
                    let dist = Ganed {
                        factors: FrequencyFactors::new(lambdas.clone())?,
                        costs: EditCosts::UNIT,
                    };
                    let test_error = evaluate(&train, &test, &dist, cfg.evaluation)?;
                    Ok(row(nmax, lambdas, train_error, test_error))
                };
                ganed_row().map_err(|e| e.in_row(context(Some(nmax))))
            })
            .collect(),
    }
    .map_err(|e| match e {
        Error::Row { .. } => e,
        other => other.in_row(context(None)),
    })
}

/// λ for one row (replayed or GA-tuned) with its LOOCV training error.
fn tune(
    cfg: &ExperimentConfig,
    train: &LabeledDataset<SaxWord>,
    alpha: usize,
    nmax: usize,
) -> Result<(Vec<f64>, ErrorRate)> {
    let loocv = |lambdas: &[f64]| {
        let dist = Ganed {
            factors: FrequencyFactors::new(lambdas.to_vec())?,
            costs: EditCosts::UNIT,
        };
        loocv_error(train, &dist)
    };
    let lambdas = match &cfg.fixed_lambdas {
        Some(l) => l.clone(),
        None => {
            let ga = GaConfig {
                n_par: nmax,
                seed: row_seed(cfg.ga.seed, alpha, nmax),
                ..cfg.ga.clone()
            };
            optimize(&ga, |genes| loocv(genes).map(|e| e.value()))?.best
        }
    };
    let err = loocv(&lambdas)?;
    Ok((lambdas, err))
}
