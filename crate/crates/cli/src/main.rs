use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use ganed::classify::{
    loocv_error, DistanceFunction, EditDistance, Ganed, LabeledDataset, MinDist, NormalizedEditDistance, SaxWord,
};
use ganed::distance::{edit_distance, ganed, mindist, ned, EditCosts, FrequencyFactors};
use ganed::experiment::{
    emit_results, evaluate, format_lambdas, load_ucr, row_seed, run_experiment, sax_words, DistanceKind,
    ExperimentConfig,
};
use ganed::ga::{optimize, GaConfig};
use ganed::sax::{gaussian_breakpoints, sax_transform, Breakpoints, TimeSeries};
use ganed::sequence::{make_sequence, Alphabet};
use ganed::{Error, ErrorKind, Result};

#[derive(Parser)]
#[command(name = "ganed", version, about = "GANED distance, SAX and 1-NN experiments on UCR-format data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Distance between two symbol strings.
    Dist(DistArgs),
    /// SAX words for every series in a UCR file.
    Sax(SaxArgs),
    /// 1-NN error of one distance on a train/test pair.
    Classify(RunArgs),
    /// GA tuning of the frequency factors on the training set.
    Optimize(RunArgs),
    /// Full run: tuning, test error and MINDIST baseline per row.
    Experiment(RunArgs),
    /// Gaussian breakpoints for the given alphabet sizes.
    Breakpoints(BreakpointArgs),
}

#[derive(Args)]
struct DistArgs {
    s: String,
    t: String,
    #[arg(long, default_value = "ganed")]
    distance: String,
    /// Comma-joined frequency factors (GANED only).
    #[arg(long)]
    lambda: Option<String>,
    /// SAX alphabet size; MINDIST reads both strings as SAX words over it.
    #[arg(long)]
    alpha: Option<usize>,
    /// Length of the original series behind the words (MINDIST only).
    #[arg(long)]
    length: Option<usize>,
}

#[derive(Args)]
struct SaxArgs {
    input: PathBuf,
    #[arg(long)]
    paa_segments: usize,
    #[arg(long)]
    alpha: usize,
}

#[derive(Args)]
struct BreakpointArgs {
    #[arg(long, required = true, value_delimiter = ',')]
    alpha: Vec<usize>,
}

/// Experiment settings. Every flag overrides the config file, which in turn
/// overrides the defaults.
#[derive(Args)]
struct RunArgs {
    /// Flat `key = value` config file.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    train: Option<String>,
    #[arg(long)]
    test: Option<String>,
    #[arg(long, value_delimiter = ',')]
    alpha: Vec<String>,
    /// PAA word length; a comma list runs a sweep.
    #[arg(long)]
    paa_segments: Option<String>,
    /// Word lengths to sweep, reported separately.
    #[arg(long = "sweep-N", alias = "sweep-n", conflicts_with = "paa_segments")]
    sweep_n: Option<String>,
    #[arg(long, value_delimiter = ',')]
    nmax: Vec<String>,
    /// Comma-joined λ; skips the GA.
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long)]
    distance: Option<String>,
    #[arg(long)]
    evaluation: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    psize: Option<String>,
    #[arg(long)]
    ngen: Option<String>,
    #[arg(long)]
    mrate: Option<String>,
    #[arg(long)]
    srate: Option<String>,
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    out: Option<String>,
}

impl RunArgs {
    fn to_config(&self) -> Result<ExperimentConfig> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
                ExperimentConfig::from_kv(&text)?
            }
            None => ExperimentConfig::default(),
        };
        let list = |v: &[String]| (!v.is_empty()).then(|| v.join(","));
        let overrides = [
            ("train", self.train.clone()),
            ("test", self.test.clone()),
            ("alpha", list(&self.alpha)),
            ("paa-segments", self.paa_segments.clone()),
            ("sweep-n", self.sweep_n.clone()),
            ("nmax", list(&self.nmax)),
            ("lambda", self.lambda.clone()),
            ("distance", self.distance.clone()),
            ("evaluation", self.evaluation.clone()),
            ("seed", self.seed.clone()),
            ("psize", self.psize.clone()),
            ("ngen", self.ngen.clone()),
            ("mrate", self.mrate.clone()),
            ("srate", self.srate.clone()),
            ("format", self.format.clone()),
            ("out", self.out.clone()),
        ];
        for (key, value) in overrides {
            if let Some(v) = value {
                cfg.set(key, &v)?;
            }
        }
        Ok(cfg)
    }
}

fn parse_lambdas(text: &str) -> Result<FrequencyFactors> {
    let values = text
        .split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("lambda: {v:?} is not a number")))
        })
        .collect::<Result<Vec<_>>>()?;
    FrequencyFactors::new(values)
}

fn dist(args: &DistArgs) -> Result<String> {
    let kind: DistanceKind = args.distance.parse()?;
    let value = if kind == DistanceKind::Mindist {
        let alpha = args
            .alpha
            .ok_or_else(|| Error::Config("mindist needs --alpha".into()))?;
        let bp = gaussian_breakpoints(alpha)?;
        let s = make_sequence(&args.s, bp.alphabet())?;
        let t = make_sequence(&args.t, bp.alphabet())?;
        mindist(&s, &t, args.length.unwrap_or(s.len()), &bp)?
    } else {
        let alphabet = Arc::new(Alphabet::covering([args.s.as_str(), args.t.as_str()]));
        let s = make_sequence(&args.s, &alphabet)?;
        let t = make_sequence(&args.t, &alphabet)?;
        match kind {
            DistanceKind::Ed => edit_distance(&s, &t, &EditCosts::UNIT)?,
            DistanceKind::Ned => ned(&s, &t, &EditCosts::UNIT)?,
            _ => {
                let lambda = args
                    .lambda
                    .as_deref()
                    .ok_or_else(|| Error::Config("ganed needs --lambda".into()))?;
                ganed(&s, &t, &parse_lambdas(lambda)?, &EditCosts::UNIT)?
            }
        }
    };
    Ok(format!("{value}\n"))
}

fn sax(args: &SaxArgs) -> Result<String> {
    let ds = load_ucr(&args.input)?;
    let mut out = String::new();
    for (label, ts) in &ds.items {
        let word = sax_transform(ts, args.paa_segments, args.alpha)?.to_glyphs()?;
        out.push_str(&format!("{label}\t{word}\n"));
    }
    Ok(out)
}

fn breakpoints(args: &BreakpointArgs) -> Result<String> {
    let mut out = String::new();
    for &alpha in &args.alpha {
        let bp = gaussian_breakpoints(alpha)?;
        let betas: Vec<String> = bp.betas().iter().map(|b| format!("{b:.6}")).collect();
        out.push_str(&format!("{alpha}\t{}\n", betas.join(" ")));
    }
    Ok(out)
}

fn load(path: &Option<PathBuf>, what: &str) -> Result<LabeledDataset<TimeSeries>> {
    let path = path
        .as_ref()
        .ok_or_else(|| Error::Config(format!("--{what} is required")))?;
    load_ucr(path)
}

fn distance_for(
    kind: DistanceKind,
    lambdas: Option<&[f64]>,
    bp: &Breakpoints,
) -> Result<Box<dyn DistanceFunction<SaxWord>>> {
    Ok(match kind {
        DistanceKind::Ed => Box::new(EditDistance(EditCosts::UNIT)),
        DistanceKind::Ned => Box::new(NormalizedEditDistance(EditCosts::UNIT)),
        DistanceKind::Mindist => Box::new(MinDist(bp.clone())),
        DistanceKind::Ganed => {
            let lambdas = lambdas.ok_or_else(|| Error::Config("classify with ganed needs --lambda".into()))?;
            Box::new(Ganed {
                factors: FrequencyFactors::new(lambdas.to_vec())?,
                costs: EditCosts::UNIT,
            })
        }
    })
}

fn classify(cfg: &ExperimentConfig) -> Result<String> {
    cfg.validate()?;
    let lambdas = cfg.fixed_lambdas.as_deref();
    if cfg.distance == DistanceKind::Ganed && lambdas.is_none() {
        return Err(Error::Config("classify with ganed needs --lambda".into()));
    }
    let train = load(&cfg.train_path, "train")?;
    let test = load(&cfg.test_path, "test")?;
    let depth = lambdas.map_or(0, <[f64]>::len);
    let mut out = String::new();
    for &segments in &cfg.paa_segments {
        for &alpha in &cfg.alphabet_sizes {
            let bp = gaussian_breakpoints(alpha)?;
            let words = |ds| sax_words(ds, segments, &bp, depth);
            let dist = distance_for(cfg.distance, lambdas, &bp)?;
            let err = evaluate(&words(&train)?, &words(&test)?, dist.as_ref(), cfg.evaluation)?;
            out.push_str(&format!(
                "{} N={segments} alpha={alpha} {} {}: {:.3} ({err})\n",
                train.name,
                cfg.distance,
                cfg.evaluation,
                err.value()
            ));
        }
    }
    Ok(out)
}

fn tune(cfg: &ExperimentConfig) -> Result<String> {
    if cfg.fixed_lambdas.is_some() {
        return Err(Error::Config("optimize does not take --lambda".into()));
    }
    cfg.validate()?;
    let train = load(&cfg.train_path, "train")?;
    let depths = cfg.resolved_gram_depths();
    let depth = depths.iter().copied().max().unwrap_or(1);
    let mut out = String::new();
    for &segments in &cfg.paa_segments {
        for &alpha in &cfg.alphabet_sizes {
            let bp = gaussian_breakpoints(alpha)?;
            let words = sax_words(&train, segments, &bp, depth)?;
            for &nmax in &depths {
                let ga = GaConfig {
                    n_par: nmax,
                    seed: row_seed(cfg.ga.seed, alpha, nmax),
                    ..cfg.ga.clone()
                };
                let outcome = optimize(&ga, |genes| {
                    let dist = Ganed {
                        factors: FrequencyFactors::new(genes.to_vec())?,
                        costs: EditCosts::UNIT,
                    };
                    loocv_error(&words, &dist).map(|e| e.value())
                })?;
                out.push_str(&format!(
                    "{} N={segments} alpha={alpha} nmax={nmax} lambdas={} train_error={:.3} evaluations={}\n",
                    train.name,
                    format_lambdas(&outcome.best),
                    outcome.best_fitness,
                    outcome.evaluations
                ));
            }
        }
    }
    Ok(out)
}

fn experiment(cfg: &ExperimentConfig) -> Result<Option<String>> {
    let result = run_experiment(cfg)?;
    let text = emit_results(&result, cfg.output_format)?;
    match &cfg.output_path {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Error::Io {
                path: path.clone(),
                message: e.to_string(),
            })?;
            Ok(None)
        }
        None => Ok(Some(text)),
    }
}

fn run(cli: Cli) -> Result<Option<String>> {
    match cli.command {
        Command::Dist(a) => dist(&a).map(Some),
        Command::Sax(a) => sax(&a).map(Some),
        Command::Breakpoints(a) => breakpoints(&a).map(Some),
        Command::Classify(a) => classify(&a.to_config()?).map(Some),
        Command::Optimize(a) => tune(&a.to_config()?).map(Some),
        Command::Experiment(a) => experiment(&a.to_config()?),
    }
}

fn exit_code(kind: ErrorKind) -> u8 {
    match kind {
        ErrorKind::Config => 1,
        ErrorKind::Data => 2,
        ErrorKind::Internal => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(text)) => {
            if let Some(text) = text {
                let _ = std::io::stdout().write_all(text.as_bytes());
            }
            ExitCode::SUCCESS
        }
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(e.kind()))
        }
        Err(_) => ExitCode::from(3),
    }
}
