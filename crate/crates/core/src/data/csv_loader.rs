//! CSV ingestion. Dense cells are parsed and stored sparsely (zeros
//! dropped); the target column is selected by header name or 0-based
//! position.

use std::fs::File;
use std::io::Read;
use std::path::Path;

use super::{classify_labels, DataError, Dataset};
use crate::sparse::FeatureMatrix;

/// Selects the response column of a CSV file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TargetColumn {
    Name(String),
    Index(usize),
}

impl TargetColumn {
    /// Interprets a CLI-style string: a header name first, falling back to a
    /// 0-based position when the string is an integer.
    pub fn parse(s: &str) -> Self {
        match s.parse::<usize>() {
            Ok(idx) => TargetColumn::Index(idx),
            Err(_) => TargetColumn::Name(s.to_string()),
        }
    }
}

/// Loads a dataset from a CSV file.
pub fn load_csv(
    path: impl AsRef<Path>,
    target: &TargetColumn,
    has_header: bool,
) -> Result<Dataset, DataError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| DataError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    read_csv(file, target, has_header)
}

/// Parses CSV content from any reader.
pub fn read_csv(
    reader: impl Read,
    target: &TargetColumn,
    has_header: bool,
) -> Result<Dataset, DataError> {
    let mut csv_reader = csv::ReaderBuilder::new()
        .has_headers(has_header)
        .flexible(false)
        .trim(csv::Trim::All)
        .from_reader(reader);

    let header: Option<Vec<String>> = if has_header {
        Some(
            csv_reader
                .headers()?
                .iter()
                .map(|s| s.to_string())
                .collect(),
        )
    } else {
        None
    };

    let mut records = Vec::new();
    for result in csv_reader.records() {
        records.push(result?);
    }
    if records.is_empty() {
        return Err(DataError::Empty);
    }
    let width = records[0].len();

    let target_idx = resolve_target(target, header.as_deref(), width)?;

    let column_label = |idx: usize| -> String {
        match &header {
            Some(names) => names[idx].clone(),
            None => idx.to_string(),
        }
    };

    let n = records.len();
    let mut labels = Vec::with_capacity(n);
    let mut columns: Vec<Vec<(usize, f64)>> = vec![Vec::new(); width - 1];
    for (row, record) in records.iter().enumerate() {
        let mut feature_idx = 0usize;
        for (idx, cell) in record.iter().enumerate() {
            let value: f64 = cell.parse().map_err(|_| DataError::Cell {
                row: row + 1,
                column: column_label(idx),
                message: format!("non-numeric cell {cell:?}"),
            })?;
            if !value.is_finite() {
                return Err(DataError::Cell {
                    row: row + 1,
                    column: column_label(idx),
                    message: format!("value {value} is not finite"),
                });
            }
            if idx == target_idx {
                labels.push(value);
            } else {
                if value != 0.0 {
                    columns[feature_idx].push((row, value));
                }
                feature_idx += 1;
            }
        }
    }

    let feature_names = header.map(|names| {
        names
            .into_iter()
            .enumerate()
            .filter(|&(idx, _)| idx != target_idx)
            .map(|(_, name)| name)
            .collect()
    });

    let matrix = FeatureMatrix::from_columns(n, columns, feature_names)?;
    let (response, task) = classify_labels(labels);
    Dataset::new(matrix, response, task)
}

fn resolve_target(
    target: &TargetColumn,
    header: Option<&[String]>,
    width: usize,
) -> Result<usize, DataError> {
    let available = || match header {
        Some(names) => names.join(", "),
        None => format!("0..{}", width - 1),
    };
    match target {
        TargetColumn::Name(name) => {
            let names = header.ok_or_else(|| {
                DataError::MissingTarget(name.clone(), "no header row; use a column index".into())
            })?;
            names
                .iter()
                .position(|h| h == name)
                .ok_or_else(|| DataError::MissingTarget(name.clone(), available()))
        }
        TargetColumn::Index(idx) => {
            // When a header exists, a numeric string may still be a column name.
            if let Some(names) = header {
                if let Some(pos) = names.iter().position(|h| h == &idx.to_string()) {
                    return Ok(pos);
                }
            }
            if *idx < width {
                Ok(*idx)
            } else {
                Err(DataError::MissingTarget(idx.to_string(), available()))
            }
        }
    }
}
