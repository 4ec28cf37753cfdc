//! Dataset representation and ingestion.
//!
//! Supported sources: libsvm text (1-based sparse indices), CSV with an
//! optional header, and a plain-text corpus (`label<TAB>text` per line)
//! vectorized as tf-idf bag-of-words.

mod csv_loader;
mod libsvm;
mod text;

pub use csv_loader::{load_csv, read_csv, TargetColumn};
pub use libsvm::{load_libsvm, read_libsvm, write_libsvm, write_libsvm_to};
pub use text::{load_corpus, read_corpus, vectorize_text};

use std::path::PathBuf;

use thiserror::Error;

use crate::sparse::FeatureMatrix;

/// Errors raised while loading or validating datasets.
#[derive(Debug, Error)]
pub enum DataError {
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("row {row}, column {column}: {message}")]
    Cell {
        row: usize,
        column: String,
        message: String,
    },
    #[error("input contains no data")]
    Empty,
    #[error("target column {0:?} not found; available columns: {1}")]
    MissingTarget(String, String),
    #[error("invalid column: {0}")]
    InvalidColumn(String),
    #[error("response length {response} does not match observation count {n}")]
    ResponseLength { response: usize, n: usize },
    #[error("classification response must contain only +1/-1, found {0}")]
    NotBinary(f64),
    #[error("corpus error: {0}")]
    Corpus(String),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

/// Prediction task implied by the response values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TaskKind {
    Regression,
    /// Binary labels stored as exactly +1/-1.
    Classification,
}

/// Response vector: real targets for regression, +1/-1 labels for classification.
#[derive(Debug, Clone, PartialEq)]
pub struct ResponseVector {
    values: Vec<f64>,
}

impl ResponseVector {
    /// Wraps raw values, rejecting non-finite entries.
    pub fn new(values: Vec<f64>) -> Result<Self, DataError> {
        for &v in &values {
            if !v.is_finite() {
                return Err(DataError::InvalidColumn(format!(
                    "response value {v} is not finite"
                )));
            }
        }
        Ok(Self { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// A design matrix, its response, and the task kind they encode.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    matrix: FeatureMatrix,
    response: ResponseVector,
    task: TaskKind,
}

impl Dataset {
    /// Assembles a dataset, checking that the response length matches the
    /// matrix and that classification responses are exactly +1/-1.
    pub fn new(
        matrix: FeatureMatrix,
        response: ResponseVector,
        task: TaskKind,
    ) -> Result<Self, DataError> {
        if response.len() != matrix.n() {
            return Err(DataError::ResponseLength {
                response: response.len(),
                n: matrix.n(),
            });
        }
        if task == TaskKind::Classification {
            for &v in response.values() {
                if v != 1.0 && v != -1.0 {
                    return Err(DataError::NotBinary(v));
                }
            }
        }
        Ok(Self {
            matrix,
            response,
            task,
        })
    }

    pub fn matrix(&self) -> &FeatureMatrix {
        &self.matrix
    }

    pub fn response(&self) -> &ResponseVector {
        &self.response
    }

    pub fn task(&self) -> TaskKind {
        self.task
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn p(&self) -> usize {
        self.matrix.p()
    }
}

/// Maps raw labels to a response. Exactly two distinct values become +1/-1
/// labels (the smaller value maps to -1); anything else is kept as
/// regression targets.
pub(crate) fn classify_labels(labels: Vec<f64>) -> (ResponseVector, TaskKind) {
    let mut distinct = labels.clone();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    if distinct.len() == 2 {
        let low = distinct[0];
        let mapped = labels
            .into_iter()
            .map(|v| if v == low { -1.0 } else { 1.0 })
            .collect();
        (
            ResponseVector { values: mapped },
            TaskKind::Classification,
        )
    } else {
        (ResponseVector { values: labels }, TaskKind::Regression)
    }
}
