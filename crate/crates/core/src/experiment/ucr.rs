//! Reader for the UCR archive text format: one series per line, the class
//! label first, then the samples. Fields may be separated by commas,
//! whitespace, or both.

use std::fs;
use std::path::Path;

use crate::classify::{Label, LabeledDataset};
use crate::error::{Error, Result};
use crate::sax::TimeSeries;

pub fn load_ucr(path: impl AsRef<Path>) -> Result<LabeledDataset<TimeSeries>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    let ds = parse_ucr(&text, dataset_name(path))?;
    if ds.is_empty() {
        return Err(Error::EmptyFile {
            path: path.to_path_buf(),
        });
    }
    Ok(ds)
}

/// `Gun_Point_TRAIN.tsv` and `Gun_Point_TEST` both name `Gun_Point`.
pub fn dataset_name(path: &Path) -> String {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("dataset");
    ["_TRAIN", "_TEST"]
        .iter()
        .find_map(|suffix| stem.strip_suffix(suffix))
        .unwrap_or(stem)
        .to_string()
}

/// Parses UCR text. Blank lines are skipped; trailing `NaN` fields (the
/// archive's padding for variable-length series) are dropped.
pub fn parse_ucr(text: &str, name: impl Into<String>) -> Result<LabeledDataset<TimeSeries>> {
    let mut items = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let mut fields = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|f| !f.is_empty());
        let Some(first) = fields.next() else {
            continue;
        };
        let label = parse_label(first).ok_or_else(|| Error::Parse {
            line: line_no,
            message: format!("class label {first:?} is not an integer"),
        })?;
        let mut values = fields
            .map(|f| {
                f.parse::<f64>().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("field {f:?} is not numeric"),
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        while values.last().is_some_and(|v| v.is_nan()) {
            values.pop();
        }
        let series = TimeSeries::new(values).map_err(|_| Error::Parse {
            line: line_no,
            message: "series is empty or contains non-finite values".into(),
        })?;
        items.push((label, series));
    }
    Ok(LabeledDataset::new(name, items))
}

/// Integer labels, also accepting integral floats such as `1.0000000e+00`
/// found in older archive releases.
fn parse_label(field: &str) -> Option<Label> {
    if let Ok(l) = field.parse::<Label>() {
        return Some(l);
    }
    let v = field.parse::<f64>().ok()?;
    (v.is_finite() && v.fract() == 0.0 && v.abs() < 2f64.powi(53)).then_some(v as Label)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comma_and_space_separated() {
        let ds = parse_ucr("2, 0.1, 0.2, 0.3\n1 0.5 0.5\n", "x").unwrap();
        assert_eq!(ds.items[0].0, 2);
        assert_eq!(ds.items[0].1.values(), &[0.1, 0.2, 0.3]);
        assert_eq!(ds.items[1].0, 1);
        assert_eq!(ds.items[1].1.values(), &[0.5, 0.5]);
    }

    #[test]
    fn mixed_lengths_tabs_and_blank_lines() {
        let ds = parse_ucr("\n-1\t1\t2\t3\n\n  1.0000000e+00   4   5\n3,1,2,NaN,NaN\n", "x").unwrap();
        assert_eq!(ds.len(), 3);
        assert_eq!(ds.items[0].0, -1);
        assert_eq!(ds.items[1].0, 1);
        assert_eq!(ds.items[1].1.len(), 2);
        assert_eq!(ds.items[2].1.values(), &[1.0, 2.0]);
    }

    #[test]
    fn parse_errors_name_the_line() {
        let err = parse_ucr("1, 2, 3\nx, 1, 2\n", "x").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
        let err = parse_ucr("1, 2, abc\n", "x").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = parse_ucr("1.5, 2\n", "x").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = parse_ucr("4\n", "x").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = parse_ucr("4, 1, NaN, 2\n", "x").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("Gun_Point_TRAIN.tsv");
        std::fs::write(&path, "1\t0.5\t0.25\n").unwrap();
        let ds = load_ucr(&path).unwrap();
        assert_eq!(ds.name, "Gun_Point");
        let empty = dir.path().join("Empty_TEST");
        std::fs::write(&empty, "\n\n").unwrap();
        assert!(matches!(load_ucr(&empty).unwrap_err(), Error::EmptyFile { .. }));
        assert!(matches!(load_ucr(dir.path().join("missing")).unwrap_err(), Error::Io { .. }));
    }
}
