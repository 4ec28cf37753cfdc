//! Raw-text corpus ingestion with tf-idf weighting.
//!
//! Corpus format: one document per line, `label<TAB>text`. Tokens are
//! lowercased, split on any non-alphanumeric character, and dropped when
//! shorter than two characters. A cell holds tf(t,d) * ln(n / df(t)) with
//! raw term frequency and no smoothing, so a token present in every
//! document yields an all-zero column (kept, with zero stored entries).

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use super::{classify_labels, DataError, Dataset};
use crate::sparse::FeatureMatrix;

/// Loads a `label<TAB>text` corpus file.
pub fn load_corpus(
    path: impl AsRef<Path>,
    stop_words: Option<&[String]>,
    min_df: usize,
) -> Result<Dataset, DataError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| DataError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    read_corpus(file, stop_words, min_df)
}

/// Parses a `label<TAB>text` corpus from any reader.
pub fn read_corpus(
    reader: impl Read,
    stop_words: Option<&[String]>,
    min_df: usize,
) -> Result<Dataset, DataError> {
    let reader = BufReader::new(reader);
    let mut documents = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| DataError::Parse {
            line: line_no,
            message: e.to_string(),
        })?;
        let (label_str, text) = line.split_once('\t').ok_or_else(|| DataError::Parse {
            line: line_no,
            message: "expected label<TAB>text".into(),
        })?;
        let label: f64 = label_str.trim().parse().map_err(|_| DataError::Parse {
            line: line_no,
            message: format!("invalid label {label_str:?}"),
        })?;
        if !label.is_finite() {
            return Err(DataError::Parse {
                line: line_no,
                message: format!("label {label} is not finite"),
            });
        }
        documents.push((label, text.to_string()));
    }
    vectorize_text(&documents, stop_words, min_df)
}

/// Builds a tf-idf dataset from labeled documents. Vocabulary keeps tokens
/// with document frequency >= min_df that are not stop words, ordered by
/// first appearance in the corpus; feature names are the tokens.
pub fn vectorize_text(
    documents: &[(f64, String)],
    stop_words: Option<&[String]>,
    min_df: usize,
) -> Result<Dataset, DataError> {
    if documents.is_empty() {
        return Err(DataError::Empty);
    }
    if documents.len() < 2 {
        return Err(DataError::Corpus(
            "corpus must contain at least 2 documents".into(),
        ));
    }
    let stop_set: std::collections::HashSet<String> = stop_words
        .unwrap_or(&[])
        .iter()
        .map(|w| w.to_lowercase())
        .collect();

    let n = documents.len();
    let mut document_frequency: HashMap<String, usize> = HashMap::new();
    let mut appearance_order: Vec<String> = Vec::new();
    let mut doc_counts: Vec<HashMap<String, usize>> = Vec::with_capacity(n);

    for (_, text) in documents {
        let mut counts: HashMap<String, usize> = HashMap::new();
        for token in tokenize(text) {
            if stop_set.contains(&token) {
                continue;
            }
            // First occurrence within the document bumps df and fixes the
            // token's position in the vocabulary order.
            let count = counts.entry(token.clone()).or_insert(0);
            if *count == 0 {
                match document_frequency.get_mut(&token) {
                    Some(df) => *df += 1,
                    None => {
                        document_frequency.insert(token.clone(), 1);
                        appearance_order.push(token);
                    }
                }
            }
            *count += 1;
        }
        doc_counts.push(counts);
    }

    let vocabulary: Vec<String> = appearance_order
        .into_iter()
        .filter(|t| document_frequency[t] >= min_df)
        .collect();
    if vocabulary.is_empty() {
        return Err(DataError::Corpus(
            "vocabulary is empty after stop-word and min-df filtering".into(),
        ));
    }
    let column_of: HashMap<&str, usize> = vocabulary
        .iter()
        .enumerate()
        .map(|(j, t)| (t.as_str(), j))
        .collect();

    let mut columns: Vec<Vec<(usize, f64)>> = vec![Vec::new(); vocabulary.len()];
    for (row, counts) in doc_counts.iter().enumerate() {
        for (token, &tf) in counts {
            let Some(&j) = column_of.get(token.as_str()) else {
                continue;
            };
            let df = document_frequency[token];
            let value = tf as f64 * (n as f64 / df as f64).ln();
            if value != 0.0 {
                columns[j].push((row, value));
            }
        }
    }
    let labels: Vec<f64> = documents.iter().map(|(l, _)| *l).collect();
    let matrix = FeatureMatrix::from_columns(n, columns, Some(vocabulary))?;
    let (response, task) = classify_labels(labels);
    Dataset::new(matrix, response, task)
}

/// Lowercases, splits on non-alphanumeric characters, and keeps tokens of
/// at least two characters.
fn tokenize(text: &str) -> Vec<String> {
    text.to_lowercase()
        .split(|c: char| !c.is_alphanumeric())
        .filter(|t| t.chars().count() >= 2)
        .map(|t| t.to_string())
        .collect()
}
