//! Column-major sparse storage for the design matrix.
//!
//! Every algorithmic step in this crate (coordinate updates, candidate
//! screening, partial predictions) walks one column at a time, so the
//! matrix is stored as `p` independent sparse columns. Each column keeps
//! its entries as `(row, value)` pairs sorted by row, with the squared
//! norm cached at construction.

use crate::data::DataError;

/// One sparse column: `(row, value)` pairs sorted by strictly increasing row.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseColumn {
    entries: Vec<(usize, f64)>,
    norm_sq: f64,
}

impl SparseColumn {
    /// Builds a column from `(row, value)` pairs, validating that rows are
    /// strictly increasing, below `n`, and that values are finite and nonzero.
    pub fn new(n: usize, entries: Vec<(usize, f64)>) -> Result<Self, DataError> {
        let mut prev: Option<usize> = None;
        for &(row, value) in &entries {
            if row >= n {
                return Err(DataError::InvalidColumn(format!(
                    "row index {row} out of range for {n} observations"
                )));
            }
            if let Some(p) = prev {
                if row <= p {
                    return Err(DataError::InvalidColumn(format!(
                        "row indices not strictly increasing at row {row}"
                    )));
                }
            }
            if !value.is_finite() || value == 0.0 {
                return Err(DataError::InvalidColumn(format!(
                    "value {value} at row {row} must be finite and nonzero"
                )));
            }
            prev = Some(row);
        }
        let norm_sq = entries.iter().map(|&(_, v)| v * v).sum();
        Ok(Self { entries, norm_sq })
    }

    /// Number of stored (nonzero) entries.
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Cached squared Euclidean norm.
    pub fn norm_sq(&self) -> f64 {
        self.norm_sq
    }

    /// Iterates over `(row, value)` pairs in row order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.entries.iter().copied()
    }

    /// Dot product with a dense vector of length `n`.
    pub fn dot(&self, dense: &[f64]) -> f64 {
        self.entries.iter().map(|&(row, v)| v * dense[row]).sum()
    }

    /// `out[row] += coef * value` for every stored entry.
    pub fn axpy_into(&self, coef: f64, out: &mut [f64]) {
        for &(row, v) in &self.entries {
            out[row] += coef * v;
        }
    }
}

/// Column-accessible sparse design matrix with `n` observations and `p` features.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    n: usize,
    columns: Vec<SparseColumn>,
    feature_names: Option<Vec<String>>,
}

impl FeatureMatrix {
    /// Builds a matrix from raw per-column entry lists.
    pub fn from_columns(
        n: usize,
        columns: Vec<Vec<(usize, f64)>>,
        feature_names: Option<Vec<String>>,
    ) -> Result<Self, DataError> {
        if let Some(names) = &feature_names {
            if names.len() != columns.len() {
                return Err(DataError::InvalidColumn(format!(
                    "{} feature names for {} columns",
                    names.len(),
                    columns.len()
                )));
            }
        }
        let columns = columns
            .into_iter()
            .map(|entries| SparseColumn::new(n, entries))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            n,
            columns,
            feature_names,
        })
    }

    /// Number of observations.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of features.
    pub fn p(&self) -> usize {
        self.columns.len()
    }

    /// Total stored entries across all columns.
    pub fn nnz(&self) -> usize {
        self.columns.iter().map(SparseColumn::nnz).sum()
    }

    /// The `j`-th column.
    pub fn column(&self, j: usize) -> &SparseColumn {
        &self.columns[j]
    }

    /// All columns in index order.
    pub fn columns(&self) -> &[SparseColumn] {
        &self.columns
    }

    /// Optional feature labels, index-aligned with columns.
    pub fn feature_names(&self) -> Option<&[String]> {
        self.feature_names.as_deref()
    }

    /// Name of feature `j` when labels are present.
    pub fn feature_name(&self, j: usize) -> Option<&str> {
        self.feature_names.as_ref().map(|names| names[j].as_str())
    }

    /// Materializes `X beta` as a dense vector, summing columns in index order.
    pub fn predict(&self, beta: &[f64]) -> Vec<f64> {
        assert_eq!(beta.len(), self.p(), "coefficient length must equal p");
        let mut z = vec![0.0; self.n];
        for (column, &b) in self.columns.iter().zip(beta) {
            if b != 0.0 {
                column.axpy_into(b, &mut z);
            }
        }
        z
    }

    /// Row-major view of the stored entries: for each row, its `(column, value)`
    /// pairs sorted by column. Used by writers that emit row-oriented formats.
    pub fn rows(&self) -> Vec<Vec<(usize, f64)>> {
        let mut rows = vec![Vec::new(); self.n];
        for (j, column) in self.columns.iter().enumerate() {
            for (row, value) in column.iter() {
                rows[row].push((j, value));
            }
        }
        rows
    }
}
