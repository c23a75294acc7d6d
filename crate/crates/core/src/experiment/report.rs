//! CSV and plain-table rendering of experiment results.
//!
//! CSV columns are `dataset,alpha,nmax,lambdas,train_error,test_error,mindist_error,seed`.
//! λ vectors are semicolon-joined with five decimals; error rates keep full
//! precision so they parse back to the same value. When a result spans
//! several PAA word lengths, each group is preceded by a `# paa_segments=N`
//! comment line.

use std::fmt::Write as _;

use super::config::OutputFormat;
use super::runner::{ExperimentResult, ExperimentRow};
use crate::error::{Error, Result};

pub const CSV_HEADER: &str = "dataset,alpha,nmax,lambdas,train_error,test_error,mindist_error,seed";
const SEGMENTS_TAG: &str = "# paa_segments=";

/// One CSV data line as read back from text.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRecord {
    pub paa_segments: Option<usize>,
    pub dataset: String,
    pub alpha: usize,
    pub nmax: usize,
    pub lambdas: Vec<f64>,
    pub train_error: f64,
    pub test_error: f64,
    pub mindist_error: f64,
    pub seed: u64,
}

pub fn format_lambdas(lambdas: &[f64]) -> String {
    lambdas
        .iter()
        .map(|l| format!("{l:.5}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn parse_lambdas(field: &str) -> Option<Vec<f64>> {
    if field.is_empty() {
        return Some(Vec::new());
    }
    field.split(';').map(|v| v.parse().ok()).collect()
}

fn sweeping(result: &ExperimentResult) -> bool {
    result
        .rows
        .windows(2)
        .any(|w| w[0].paa_segments != w[1].paa_segments)
}

impl ResultRecord {
    /// What the CSV form of `row` carries.
    pub fn from_row(row: &ExperimentRow, seed: u64, with_segments: bool) -> Self {
        Self {
            paa_segments: with_segments.then_some(row.paa_segments),
            dataset: row.dataset.clone(),
            alpha: row.alpha,
            nmax: row.nmax,
            lambdas: parse_lambdas(&format_lambdas(&row.lambdas)).expect("formatted reals parse"),
            train_error: row.train_error.value(),
            test_error: row.test_error.value(),
            mindist_error: row.mindist_error.value(),
            seed,
        }
    }

    pub fn from_result(result: &ExperimentResult) -> Vec<Self> {
        let with_segments = sweeping(result);
        result
            .rows
            .iter()
            .map(|r| Self::from_row(r, result.seed, with_segments))
            .collect()
    }
}

pub fn emit_results(result: &ExperimentResult, format: OutputFormat) -> Result<String> {
    if result.rows.is_empty() {
        return Err(Error::EmptyResult);
    }
    Ok(match format {
        OutputFormat::Csv => emit_csv(result),
        OutputFormat::Table => emit_table(result),
    })
}

fn csv_line(fields: &[String]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(fields).expect("writing to memory");
    String::from_utf8(w.into_inner().expect("flushing to memory")).expect("utf-8 input")
}

fn emit_csv(result: &ExperimentResult) -> String {
    let mut out = format!("{CSV_HEADER}\n");
    let with_segments = sweeping(result);
    let mut current = None;
    for row in &result.rows {
        if with_segments && current != Some(row.paa_segments) {
            current = Some(row.paa_segments);
            let _ = writeln!(out, "{SEGMENTS_TAG}{}", row.paa_segments);
        }
        out.push_str(&csv_line(&[
            row.dataset.clone(),
            row.alpha.to_string(),
            row.nmax.to_string(),
            format_lambdas(&row.lambdas),
            row.train_error.value().to_string(),
            row.test_error.value().to_string(),
            row.mindist_error.value().to_string(),
            result.seed.to_string(),
        ]));
    }
    out
}

pub fn parse_csv(text: &str) -> Result<Vec<ResultRecord>> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, header)) if header.trim() == CSV_HEADER => {}
        Some((i, _)) => {
            return Err(Error::Parse {
                line: i + 1,
                message: "missing result header".into(),
            })
        }
        None => return Err(Error::EmptyResult),
    }
    let mut segments = None;
    let mut records = Vec::new();
    for (i, line) in lines {
        let line_no = i + 1;
        let err = |message: &str| Error::Parse {
            line: line_no,
            message: message.to_string(),
        };
        if let Some(rest) = line.strip_prefix(SEGMENTS_TAG) {
            segments = Some(rest.trim().parse().map_err(|_| err("bad paa_segments comment"))?);
            continue;
        }
        if line.starts_with('#') {
            continue;
        }
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .from_reader(line.as_bytes());
        let record = reader
            .records()
            .next()
            .ok_or_else(|| err("empty record"))?
            .map_err(|e| err(&e.to_string()))?;
        if record.len() != 8 {
            return Err(err("expected 8 fields"));
        }
        let num = |k: usize| record[k].parse::<f64>().map_err(|_| err("bad number"));
        let int = |k: usize| record[k].parse::<usize>().map_err(|_| err("bad integer"));
        records.push(ResultRecord {
            paa_segments: segments,
            dataset: record[0].to_string(),
            alpha: int(1)?,
            nmax: int(2)?,
            lambdas: parse_lambdas(&record[3]).ok_or_else(|| err("bad lambda list"))?,
            train_error: num(4)?,
            test_error: num(5)?,
            mindist_error: num(6)?,
            seed: record[7].parse().map_err(|_| err("bad seed"))?,
        });
    }
    Ok(records)
}

fn emit_table(result: &ExperimentResult) -> String {
    let header = ["alpha", "n-gram", "lambda", "train", "test", "MINDIST", ""];
    let mut out = String::new();
    let mut start = 0;
    while start < result.rows.len() {
        let first = &result.rows[start];
        let end = start
            + result.rows[start..]
                .iter()
                .take_while(|r| r.dataset == first.dataset && r.paa_segments == first.paa_segments)
                .count();
        let _ = writeln!(out, "{} (N = {})", first.dataset, first.paa_segments);

        let mut cells: Vec<[String; 7]> = vec![header.map(String::from)];
        let mut previous_alpha = None;
        for row in &result.rows[start..end] {
            let new_block = previous_alpha != Some(row.alpha);
            previous_alpha = Some(row.alpha);
            let blank_unless = |show: bool, s: String| if show { s } else { String::new() };
            cells.push([
                blank_unless(new_block, row.alpha.to_string()),
                if row.nmax == 0 { "-".into() } else { row.nmax.to_string() },
                if row.lambdas.is_empty() {
                    "-".into()
                } else {
                    format!("[{}]", format_lambdas(&row.lambdas).replace(';', " "))
                },
                format!("{:.3}", row.train_error.rounded()),
                format!("{:.3}", row.test_error.rounded()),
                blank_unless(new_block, format!("{:.3}", row.mindist_error.rounded())),
                format!(
                    "# train {} test {} mindist {}",
                    row.train_error, row.test_error, row.mindist_error
                ),
            ]);
        }
        let widths: Vec<usize> = (0..7)
            .map(|c| cells.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
            .collect();
        for r in &cells {
            let line: Vec<String> = r
                .iter()
                .zip(&widths)
                .map(|(cell, &w)| format!("{cell:<w$}"))
                .collect();
            let _ = writeln!(out, "{}", line.join("  ").trim_end());
        }
        out.push('\n');
        start = end;
    }
    let _ = writeln!(
        out,
        "seed {}  config {:016x}  wall time {:.2?}",
        result.seed, result.config_hash, result.wall_time
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::ErrorRate;
    use proptest::prelude::*;
    use std::time::Duration;

    fn rate(m: usize, t: usize) -> ErrorRate {
        ErrorRate {
            misclassified: m,
            total: t,
        }
    }

    fn row(n: usize, alpha: usize, nmax: usize, lambdas: Vec<f64>) -> ExperimentRow {
        ExperimentRow {
            dataset: "CBF".into(),
            paa_segments: n,
            alpha,
            nmax,
            lambdas,
            train_error: rate(1, 30),
            test_error: rate(23, 900),
            mindist_error: rate(344, 900),
        }
    }

    fn result(rows: Vec<ExperimentRow>) -> ExperimentResult {
        ExperimentResult {
            rows,
            seed: 42,
            config_hash: 0xfeed,
            wall_time: Duration::from_millis(5),
        }
    }

    #[test]
    fn single_row_csv() {
        let r = result(vec![row(32, 3, 1, vec![0.77491])]);
        let text = emit_results(&r, OutputFormat::Csv).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(
            lines[1],
            format!("CBF,3,1,0.77491,{},{},{},42", 1.0 / 30.0, 23.0 / 900.0, 344.0 / 900.0)
        );
    }

    #[test]
    fn lambda_formatting() {
        assert_eq!(format_lambdas(&[0.77491]), "0.77491");
        assert_eq!(format_lambdas(&[0.93285, 0.97274, 0.080862]), "0.93285;0.97274;0.08086");
        assert_eq!(format_lambdas(&[]), "");
    }

    #[test]
    fn empty_result_is_an_error() {
        assert_eq!(
            emit_results(&result(vec![]), OutputFormat::Csv).unwrap_err(),
            Error::EmptyResult
        );
    }

    #[test]
    fn sweep_groups_carry_the_word_length() {
        let r = result(vec![row(8, 3, 1, vec![0.5]), row(8, 3, 2, vec![0.5, 0.1]), row(16, 3, 1, vec![0.2])]);
        let text = emit_results(&r, OutputFormat::Csv).unwrap();
        assert_eq!(text.matches(SEGMENTS_TAG).count(), 2);
        let back = parse_csv(&text).unwrap();
        assert_eq!(back, ResultRecord::from_result(&r));
        assert_eq!(back[2].paa_segments, Some(16));
    }

    #[test]
    fn table_layout() {
        let r = result(vec![row(32, 3, 1, vec![0.77491]), row(32, 3, 2, vec![0.81776, 0.87965])]);
        let text = emit_results(&r, OutputFormat::Table).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "CBF (N = 32)");
        assert!(lines[1].starts_with("alpha  n-gram  lambda"));
        assert!(lines[2].starts_with("3      1       [0.77491]"));
        assert!(lines[2].contains("0.033  0.026  0.382"));
        assert!(lines[2].ends_with("# train 1/30 test 23/900 mindist 344/900"));
        // MINDIST spans the alpha block
        assert!(lines[3].starts_with("       2       [0.81776 0.87965]"));
        assert!(!lines[3].contains("0.382"));
        assert!(text.contains("seed 42"));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(matches!(parse_csv("a,b\n"), Err(Error::Parse { line: 1, .. })));
        assert_eq!(parse_csv(""), Err(Error::EmptyResult));
        let bad = format!("{CSV_HEADER}\nCBF,3,1,0.5,x,0,0,1\n");
        assert!(matches!(parse_csv(&bad), Err(Error::Parse { line: 2, .. })));
    }

    proptest! {
        #[test]
        fn csv_round_trip(
            name in "[A-Za-z_, \"]{1,12}",
            rows in prop::collection::vec(
                (1usize..4, 2usize..64, 0usize..4, prop::collection::vec(0u32..=100_000, 0..4),
                 (0usize..50, 0usize..50, 0usize..50), 1usize..50),
                1..6),
            seed in any::<u64>(),
        ) {
            let rows: Vec<ExperimentRow> = rows
                .into_iter()
                .map(|(n, alpha, nmax, lambdas, (a, b, c), extra)| ExperimentRow {
                    dataset: name.clone(),
                    paa_segments: n * 8,
                    alpha,
                    nmax,
                    lambdas: lambdas.into_iter().map(|k| k as f64 / 100_000.0).collect(),
                    train_error: rate(a, a + extra),
                    test_error: rate(b, b + extra),
                    mindist_error: rate(c, c + extra),
                })
                .collect();
            let r = ExperimentResult { rows, seed, config_hash: 0, wall_time: Duration::ZERO };
            let back = parse_csv(&emit_results(&r, OutputFormat::Csv).unwrap()).unwrap();
            let expected = ResultRecord::from_result(&r);
            prop_assert_eq!(&back, &expected);
            for (rec, row) in back.iter().zip(&r.rows) {
                prop_assert_eq!(&rec.lambdas, &row.lambdas);
                prop_assert_eq!(rec.test_error, row.test_error.value());
            }
        }
    }
}
