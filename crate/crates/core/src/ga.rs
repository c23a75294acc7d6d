//! Real-coded genetic algorithm minimizing a fitness in `[0, 1]` over a box of
//! genes.
//!
//! One generation is: truncation selection of the best `⌈sRate·pSize⌉`
//! chromosomes, single-point crossover between random parent pairs to refill
//! the population, then gene-slot mutation that never touches the current
//! best chromosome. All random draws come from one seeded generator owned by
//! the sequential loop; only fitness evaluations run in parallel.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::distance::FrequencyFactors;
use crate::error::{Error, Result};

pub type GaRng = ChaCha8Rng;

#[derive(Debug, Clone, PartialEq)]
pub struct GaConfig {
    pub pop_size: usize,
    pub generations: usize,
    pub mutation_rate: f64,
    pub selection_rate: f64,
    pub n_par: usize,
    pub seed: u64,
    pub lower: f64,
    pub upper: f64,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            pop_size: 12,
            generations: 20,
            mutation_rate: 0.2,
            selection_rate: 0.5,
            n_par: 1,
            seed: 0,
            lower: 0.0,
            upper: 1.0,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidGaConfig(msg.to_string()));
        if self.pop_size < 2 {
            return bad("population size must be at least 2");
        }
        if self.generations < 1 {
            return bad("generation count must be at least 1");
        }
        if !(0.0..=1.0).contains(&self.mutation_rate) {
            return bad("mutation rate must be in [0, 1]");
        }
        if !(0.0..=1.0).contains(&self.selection_rate) {
            return bad("selection rate must be in [0, 1]");
        }
        if self.n_par < 1 {
            return bad("chromosome dimension must be at least 1");
        }
        if !(self.lower.is_finite() && self.upper.is_finite() && self.lower < self.upper) {
            return bad("gene bounds must be finite with lower < upper");
        }
        Ok(())
    }

    /// Parents kept each generation. Never fewer than two, so crossover
    /// always has a pair to draw from.
    pub fn parent_count(&self) -> usize {
        ceil_count(self.selection_rate, self.pop_size).clamp(2, self.pop_size)
    }

    pub fn rng(&self) -> GaRng {
        GaRng::seed_from_u64(self.seed)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Chromosome {
    pub genes: Vec<f64>,
    pub fitness: Option<f64>,
}

impl Chromosome {
    pub fn new(genes: Vec<f64>) -> Self {
        Self {
            genes,
            fitness: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenerationRecord {
    pub best_fitness: f64,
    pub mean_fitness: f64,
    pub best_genes: Vec<f64>,
}

/// One record for the initial population, then one per generation.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GaTrace {
    pub generations: Vec<GenerationRecord>,
}

impl GaTrace {
    pub fn best_fitness(&self) -> impl Iterator<Item = f64> + '_ {
        self.generations.iter().map(|g| g.best_fitness)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaOutcome {
    pub best: Vec<f64>,
    pub best_fitness: f64,
    pub trace: GaTrace,
    pub evaluations: usize,
}

impl GaOutcome {
    pub fn factors(&self) -> Result<FrequencyFactors> {
        FrequencyFactors::new(self.best.clone())
    }
}

pub fn initialize(cfg: &GaConfig, rng: &mut impl Rng) -> Vec<Chromosome> {
    (0..cfg.pop_size)
        .map(|_| Chromosome::new((0..cfg.n_par).map(|_| draw_gene(cfg, rng)).collect()))
        .collect()
}

/// `⌈rate · n⌉`, ignoring rounding noise such as `0.1 · 30 = 3.0000000000000004`.
fn ceil_count(rate: f64, n: usize) -> usize {
    (rate * n as f64 - 1e-9).ceil().max(0.0) as usize
}

fn draw_gene(cfg: &GaConfig, rng: &mut impl Rng) -> f64 {
    rng.gen_range(cfg.lower..=cfg.upper)
}

/// Keeps the fittest `⌈selection_rate · len⌉` chromosomes (at least one),
/// sorted best first; equal fitness keeps the original order.
pub fn select(population: &[Chromosome], selection_rate: f64) -> Result<Vec<Chromosome>> {
    let keep = ceil_count(selection_rate, population.len());
    select_top(population, keep.clamp(1, population.len().max(1)))
}

fn select_top(population: &[Chromosome], keep: usize) -> Result<Vec<Chromosome>> {
    let mut ranked: Vec<(f64, &Chromosome)> = population
        .iter()
        .enumerate()
        .map(|(i, c)| c.fitness.map(|f| (f, c)).ok_or(Error::UnevaluatedFitness(i)))
        .collect::<Result<_>>()?;
    ranked.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(ranked.into_iter().take(keep).map(|(_, c)| c.clone()).collect())
}

/// Child of a cut after `cut` genes: the head of `a` followed by the tail of `b`.
pub fn single_point(a: &[f64], b: &[f64], cut: usize) -> Vec<f64> {
    a[..cut].iter().chain(&b[cut..]).copied().collect()
}

/// Produces `count` children from random parent pairs drawn with replacement.
pub fn crossover(parents: &[Chromosome], count: usize, rng: &mut impl Rng) -> Result<Vec<Chromosome>> {
    if parents.len() < 2 {
        return Err(Error::TooFewParents(parents.len()));
    }
    let n_par = parents[0].genes.len();
    Ok((0..count)
        .map(|_| {
            let a = &parents[rng.gen_range(0..parents.len())].genes;
            let b = &parents[rng.gen_range(0..parents.len())].genes;
            let genes = if n_par == 1 {
                if rng.gen_bool(0.5) { a.clone() } else { b.clone() }
            } else {
                single_point(a, b, rng.gen_range(1..n_par))
            };
            Chromosome::new(genes)
        })
        .collect())
}

/// Redraws `⌈mutation_rate · pop_size · n_par⌉` gene slots chosen without
/// replacement among every chromosome except `elite`. Touched chromosomes
/// lose their fitness.
pub fn mutate(population: &mut [Chromosome], elite: usize, cfg: &GaConfig, rng: &mut impl Rng) {
    let n_par = cfg.n_par;
    let others: Vec<usize> = (0..population.len()).filter(|&i| i != elite).collect();
    let slots = others.len() * n_par;
    let wanted = ceil_count(cfg.mutation_rate, cfg.pop_size * n_par);
    let amount = wanted.min(slots);
    if amount == 0 {
        return;
    }
    let mut picked = sample(rng, slots, amount).into_vec();
    picked.sort_unstable();
    for slot in picked {
        let chromosome = &mut population[others[slot / n_par]];
        chromosome.genes[slot % n_par] = draw_gene(cfg, rng);
        chromosome.fitness = None;
    }
}

fn evaluate<F>(population: &mut [Chromosome], fitness: &F) -> Result<usize>
where
    F: Fn(&[f64]) -> Result<f64> + Sync,
{
    let pending: Vec<usize> = (0..population.len())
        .filter(|&i| population[i].fitness.is_none())
        .collect();
    let scores: Vec<Result<f64>> = pending
        .par_iter()
        .map(|&i| fitness(&population[i].genes))
        .collect();
    for (&i, score) in pending.iter().zip(scores) {
        let f = score?;
        if !(0.0..=1.0).contains(&f) {
            return Err(Error::InvalidFitness(f));
        }
        population[i].fitness = Some(f);
    }
    Ok(pending.len())
}

fn record(population: &[Chromosome]) -> GenerationRecord {
    let best = population
        .iter()
        .reduce(|a, b| if b.fitness < a.fitness { b } else { a })
        .expect("nonempty population");
    let mean = population.iter().filter_map(|c| c.fitness).sum::<f64>() / population.len() as f64;
    GenerationRecord {
        best_fitness: best.fitness.expect("evaluated"),
        mean_fitness: mean,
        best_genes: best.genes.clone(),
    }
}

/// Minimizes `fitness` over `[lower, upper]^n_par`.
///
/// Evaluates at most `pop_size · (generations + 1)` chromosomes.
pub fn optimize<F>(cfg: &GaConfig, fitness: F) -> Result<GaOutcome>
where
    F: Fn(&[f64]) -> Result<f64> + Sync,
{
    cfg.validate()?;
    let mut rng = cfg.rng();
    let mut population = initialize(cfg, &mut rng);
    let mut evaluations = evaluate(&mut population, &fitness)?;
    let mut trace = GaTrace {
        generations: vec![record(&population)],
    };

    let parent_count = cfg.parent_count();
    for _ in 0..cfg.generations {
        let mut next = select_top(&population, parent_count)?;
        let children = crossover(&next, cfg.pop_size - next.len(), &mut rng)?;
        next.extend(children);
        // `select` sorts best first, so the elite sits at index 0.
        mutate(&mut next, 0, cfg, &mut rng);
        evaluations += evaluate(&mut next, &fitness)?;
        population = next;
        trace.generations.push(record(&population));
    }

    let last = trace.generations.last().expect("initial record");
    Ok(GaOutcome {
        best: last.best_genes.clone(),
        best_fitness: last.best_fitness,
        evaluations,
        trace,
    })
}
