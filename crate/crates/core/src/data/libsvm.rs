//! libsvm text format: one observation per line, `label idx:val idx:val ...`
//! with 1-based, strictly increasing feature indices.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::{classify_labels, DataError, Dataset, TaskKind};
use crate::sparse::FeatureMatrix;

/// Loads a dataset from a libsvm file.
pub fn load_libsvm(path: impl AsRef<Path>) -> Result<Dataset, DataError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| DataError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    read_libsvm(BufReader::new(file))
}

/// Parses libsvm-format text from any reader.
pub fn read_libsvm(reader: impl Read) -> Result<Dataset, DataError> {
    let mut labels = Vec::new();
    let mut row_entries: Vec<Vec<(usize, f64)>> = Vec::new();
    let mut p = 0usize;

    let reader = BufReader::new(reader);
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| DataError::Parse {
            line: line_no,
            message: e.to_string(),
        })?;
        let mut tokens = line.split_whitespace();
        let label_token = tokens.next().ok_or_else(|| DataError::Parse {
            line: line_no,
            message: "missing label".into(),
        })?;
        let label: f64 = label_token.parse().map_err(|_| DataError::Parse {
            line: line_no,
            message: format!("invalid label {label_token:?}"),
        })?;
        if !label.is_finite() {
            return Err(DataError::Parse {
                line: line_no,
                message: format!("label {label} is not finite"),
            });
        }

        let mut entries = Vec::new();
        let mut prev_index = 0usize;
        for token in tokens {
            let (idx_str, val_str) = token.split_once(':').ok_or_else(|| DataError::Parse {
                line: line_no,
                message: format!("expected idx:val, found {token:?}"),
            })?;
            let index: usize = idx_str.parse().map_err(|_| DataError::Parse {
                line: line_no,
                message: format!("invalid feature index {idx_str:?}"),
            })?;
            if index == 0 {
                return Err(DataError::Parse {
                    line: line_no,
                    message: "feature indices are 1-based".into(),
                });
            }
            if index <= prev_index {
                return Err(DataError::Parse {
                    line: line_no,
                    message: format!("feature indices must be strictly increasing, {index} after {prev_index}"),
                });
            }
            let value: f64 = val_str.parse().map_err(|_| DataError::Parse {
                line: line_no,
                message: format!("invalid feature value {val_str:?}"),
            })?;
            if !value.is_finite() {
                return Err(DataError::Parse {
                    line: line_no,
                    message: format!("feature value {value} is not finite"),
                });
            }
            prev_index = index;
            p = p.max(index);
            if value != 0.0 {
                entries.push((index - 1, value));
            }
        }
        labels.push(label);
        row_entries.push(entries);
    }

    if labels.is_empty() {
        return Err(DataError::Empty);
    }

    let n = labels.len();
    let mut columns: Vec<Vec<(usize, f64)>> = vec![Vec::new(); p];
    for (row, entries) in row_entries.into_iter().enumerate() {
        for (col, value) in entries {
            columns[col].push((row, value));
        }
    }
    let matrix = FeatureMatrix::from_columns(n, columns, None)?;
    let (response, task) = classify_labels(labels);
    Dataset::new(matrix, response, task)
}

/// Writes a dataset to a libsvm file.
///
/// Trailing all-zero columns are not representable in the format, so a
/// reload recovers `p` only when the last column has at least one entry.
pub fn write_libsvm(dataset: &Dataset, path: impl AsRef<Path>) -> Result<(), DataError> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|source| DataError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut writer = BufWriter::new(file);
    write_libsvm_to(dataset, &mut writer).map_err(|source| DataError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes libsvm-format text to any writer.
pub fn write_libsvm_to(dataset: &Dataset, writer: &mut impl Write) -> std::io::Result<()> {
    let rows = dataset.matrix().rows();
    for (row, entries) in rows.iter().enumerate() {
        let y = dataset.response().values()[row];
        match dataset.task() {
            TaskKind::Classification if y > 0.0 => write!(writer, "+1")?,
            TaskKind::Classification => write!(writer, "-1")?,
            TaskKind::Regression => write!(writer, "{y}")?,
        }
        for &(col, value) in entries {
            write!(writer, " {}:{}", col + 1, value)?;
        }
        writeln!(writer)?;
    }
    Ok(())
}
