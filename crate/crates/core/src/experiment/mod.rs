//! Loading UCR data, configuring and running the SAX + 1-NN experiment
//! grid, and rendering its results.

mod config;
mod report;
mod runner;
mod ucr;

pub use config::{DistanceKind, Evaluation, ExperimentConfig, OutputFormat};
pub use report::{emit_results, format_lambdas, parse_csv, ResultRecord, CSV_HEADER};
pub use runner::{
    evaluate, row_seed, run_experiment, run_on_datasets, sax_words, ExperimentResult, ExperimentRow,
};
pub use ucr::{dataset_name, load_ucr, parse_ucr};
