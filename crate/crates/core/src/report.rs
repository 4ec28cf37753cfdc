//! Serialized views of solutions and reports, plus the DOT and TSV
//! emitters. Numbers are written as shortest round-trip decimals, so
//! emitted JSON reloads to bit-identical values and re-emits byte for
//! byte.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::alternates::AlternateReport;
use crate::data::Dataset;
use crate::loss::Loss;
use crate::solver::{l1_norm, LassoSolution};

/// A feature named by header/token when the dataset has names, by column
/// index otherwise. Serializes as a bare JSON number or string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FeatureRef {
    Index(usize),
    Name(String),
}

impl fmt::Display for FeatureRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FeatureRef::Index(i) => write!(f, "{i}"),
            FeatureRef::Name(s) => write!(f, "{s}"),
        }
    }
}

/// On-disk form of a fitted model. `rho` is the effective penalty and
/// `beta` holds only the nonzero coefficients keyed by column index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionFile {
    pub rho: f64,
    pub loss: Loss,
    pub beta: BTreeMap<usize, f64>,
    pub objective: f64,
    pub converged: bool,
}

impl SolutionFile {
    pub fn from_solution(solution: &LassoSolution, loss: Loss, effective_rho: f64) -> Self {
        let beta = solution
            .support
            .iter()
            .map(|&i| (i, solution.beta[i]))
            .collect();
        Self {
            rho: effective_rho,
            loss,
            beta,
            objective: solution.objective,
            converged: solution.converged,
        }
    }

    /// Rebuilds the in-memory solution against `dataset`, rematerializing
    /// the prediction vector and recomputing the objective. A stored
    /// objective that disagrees with the recomputed one means the file does
    /// not belong to this dataset. `sweeps_used` is not serialized and
    /// comes back as zero.
    pub fn to_solution(&self, dataset: &Dataset) -> Result<LassoSolution, ReportError> {
        let p = dataset.p();
        let mut beta = vec![0.0; p];
        for (&i, &v) in &self.beta {
            if i >= p {
                return Err(ReportError::BadIndex { index: i, p });
            }
            beta[i] = v;
        }
        let fitted = dataset.matrix().predict(&beta);
        let objective =
            self.loss.value_raw(&fitted, dataset.response().values()) + self.rho * l1_norm(&beta);
        if (objective - self.objective).abs() > 1e-8 * (1.0 + self.objective.abs()) {
            return Err(ReportError::ObjectiveMismatch {
                stored: self.objective,
                recomputed: objective,
            });
        }
        let support = beta
            .iter()
            .enumerate()
            .filter(|&(_, b)| *b != 0.0)
            .map(|(i, _)| i)
            .collect();
        Ok(LassoSolution {
            beta,
            support,
            objective,
            fitted,
            sweeps_used: 0,
            converged: self.converged,
        })
    }
}

/// One serialized original/alternate pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairEntry {
    pub original: FeatureRef,
    pub alternate: FeatureRef,
    pub coefficient: f64,
    pub score: f64,
}

/// On-disk form of an enumeration report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub naive_solves: usize,
    pub actual_solves: usize,
    pub pairs: Vec<PairEntry>,
}

impl ReportFile {
    /// Converts indices to names when the dataset provides them.
    pub fn from_report(report: &AlternateReport, names: Option<&[String]>) -> Self {
        let feature_ref = |i: usize| match names {
            Some(ns) => FeatureRef::Name(ns[i].clone()),
            None => FeatureRef::Index(i),
        };
        Self {
            naive_solves: report.naive_solve_count,
            actual_solves: report.actual_solve_count,
            pairs: report
                .pairs
                .iter()
                .map(|p| PairEntry {
                    original: feature_ref(p.original),
                    alternate: feature_ref(p.alternate),
                    coefficient: p.coefficient,
                    score: p.score,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("coefficient index {index} out of range for {p} features")]
    BadIndex { index: usize, p: usize },
    #[error(
        "stored objective {stored} does not match the value {recomputed} recomputed from the \
         dataset; the solution belongs to different data"
    )]
    ObjectiveMismatch { stored: f64, recomputed: f64 },
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String, ReportError> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

pub fn write_json_file<T: Serialize>(path: impl AsRef<Path>, value: &T) -> Result<(), ReportError> {
    let path = path.as_ref();
    let text = to_json_string(value)?;
    fs::write(path, text).map_err(|source| ReportError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_json_file<T: for<'de> Deserialize<'de>>(
    path: impl AsRef<Path>,
) -> Result<T, ReportError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| ReportError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(serde_json::from_str(&text)?)
}

/// Undirected bipartite graph in DOT form. Template, fixed so output is
/// byte-stable: a `rank=same;` statement listing the distinct originals in
/// report order, then one edge per pair in report order, labeled with the
/// score to 4 significant digits. An empty report is `graph alternates { }`.
pub fn emit_dot(report: &ReportFile) -> String {
    if report.pairs.is_empty() {
        return "graph alternates { }\n".to_string();
    }
    let mut originals = Vec::new();
    for pair in &report.pairs {
        let label = pair.original.to_string();
        if !originals.contains(&label) {
            originals.push(label);
        }
    }
    let mut out = String::from("graph alternates {\n");
    out.push_str("  rank=same;");
    for name in &originals {
        out.push_str(&format!(" \"{}\";", escape_dot(name)));
    }
    out.push('\n');
    for pair in &report.pairs {
        out.push_str(&format!(
            "  \"{}\" -- \"{}\" [label=\"{}\"];\n",
            escape_dot(&pair.original.to_string()),
            escape_dot(&pair.alternate.to_string()),
            format_sig(pair.score, 4)
        ));
    }
    out.push_str("}\n");
    out
}

/// Rows `alternate<TAB>coefficient<TAB>score` for one origin, score
/// ascending (stable over the canonical pair order, so ties keep ascending
/// alternate index), truncated to top_k. Numbers carry 6 significant
/// digits. An origin absent from the report yields an empty string.
pub fn emit_table(report: &ReportFile, origin: &FeatureRef, top_k: usize) -> String {
    let mut rows: Vec<&PairEntry> = report
        .pairs
        .iter()
        .filter(|p| &p.original == origin)
        .collect();
    rows.sort_by(|a, b| a.score.total_cmp(&b.score));
    rows.truncate(top_k);
    let mut out = String::new();
    for pair in rows {
        out.push_str(&format!(
            "{}\t{}\t{}\n",
            pair.alternate,
            format_sig(pair.coefficient, 6),
            format_sig(pair.score, 6)
        ));
    }
    out
}

/// Escapes a node name for a double-quoted DOT string.
fn escape_dot(name: &str) -> String {
    name.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Fixed-point rendering with the given count of significant digits:
/// decimal places = digits - 1 - floor(log10 |x|), clamped at zero.
pub fn format_sig(x: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if x == 0.0 {
        return format!("{:.*}", digits - 1, 0.0);
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alternates::AlternatePair;
    use crate::data::{ResponseVector, TaskKind};
    use crate::solver::{fit_lasso, RegParam, SolverOptions};
    use crate::sparse::FeatureMatrix;

    fn small_fit() -> (Dataset, LassoSolution, f64) {
        let matrix = FeatureMatrix::from_columns(
            3,
            vec![vec![(0, 1.0), (1, 1.0), (2, 1.0)], vec![(0, 2.0), (2, -1.0)]],
            None,
        )
        .unwrap();
        let d = Dataset::new(
            matrix,
            ResponseVector::new(vec![1.0, 2.0, 0.5]).unwrap(),
            TaskKind::Regression,
        )
        .unwrap();
        let sol = fit_lasso(&d, Loss::Squared, RegParam::fixed(0.3), &SolverOptions::default())
            .unwrap();
        (d, sol, 0.3)
    }

    #[test]
    fn solution_file_shape_and_round_trip() {
        let (_, sol, rho) = small_fit();
        let file = SolutionFile::from_solution(&sol, Loss::Squared, rho);
        let json = to_json_string(&file).unwrap();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["loss"], "squared");
        assert_eq!(value["rho"], 0.3);
        assert!(value["beta"].is_object());
        assert!(value["converged"].as_bool().unwrap());
        let back: SolutionFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back, file);
        assert_eq!(to_json_string(&back).unwrap(), json);
    }

    #[test]
    fn solution_reconstructs_bit_identically() {
        let (d, sol, rho) = small_fit();
        let file = SolutionFile::from_solution(&sol, Loss::Squared, rho);
        let json = to_json_string(&file).unwrap();
        let back: SolutionFile = serde_json::from_str(&json).unwrap();
        let rebuilt = back.to_solution(&d).unwrap();
        let bits = |v: &[f64]| v.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
        assert_eq!(bits(&rebuilt.beta), bits(&sol.beta));
        assert_eq!(bits(&rebuilt.fitted), bits(&sol.fitted));
        assert_eq!(rebuilt.support, sol.support);
        assert!((rebuilt.objective - sol.objective).abs() <= 1e-12);
    }

    #[test]
    fn solution_against_wrong_dataset_is_rejected() {
        let (d, sol, rho) = small_fit();
        let mut file = SolutionFile::from_solution(&sol, Loss::Squared, rho);
        file.objective += 1.0;
        assert!(matches!(
            file.to_solution(&d),
            Err(ReportError::ObjectiveMismatch { .. })
        ));
        let mut bad_index = SolutionFile::from_solution(&sol, Loss::Squared, rho);
        bad_index.beta.insert(99, 1.0);
        assert!(matches!(
            bad_index.to_solution(&d),
            Err(ReportError::BadIndex { .. })
        ));
    }

    fn sample_report(names: bool) -> ReportFile {
        let report = AlternateReport {
            pairs: vec![
                AlternatePair {
                    original: 0,
                    alternate: 1,
                    coefficient: 1.5,
                    score: 0.0123,
                },
                AlternatePair {
                    original: 0,
                    alternate: 2,
                    coefficient: -0.25,
                    score: 0.5,
                },
                AlternatePair {
                    original: 3,
                    alternate: 2,
                    coefficient: 0.75,
                    score: 0.001,
                },
            ],
            failures: vec![],
            naive_solve_count: 42,
            actual_solve_count: 3,
        };
        let labels: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        ReportFile::from_report(&report, names.then_some(&labels[..]))
    }

    #[test]
    fn report_json_round_trips_byte_identically() {
        for named in [false, true] {
            let file = sample_report(named);
            let json = to_json_string(&file).unwrap();
            let back: ReportFile = serde_json::from_str(&json).unwrap();
            assert_eq!(back, file);
            assert_eq!(to_json_string(&back).unwrap(), json);
        }
    }

    #[test]
    fn feature_refs_serialize_untagged() {
        assert_eq!(serde_json::to_string(&FeatureRef::Index(3)).unwrap(), "3");
        assert_eq!(
            serde_json::to_string(&FeatureRef::Name("cat".into())).unwrap(),
            "\"cat\""
        );
        assert_eq!(
            serde_json::from_str::<FeatureRef>("7").unwrap(),
            FeatureRef::Index(7)
        );
        assert_eq!(
            serde_json::from_str::<FeatureRef>("\"dog\"").unwrap(),
            FeatureRef::Name("dog".into())
        );
    }

    #[test]
    fn single_pair_dot_matches_documented_template() {
        let report = ReportFile {
            naive_solves: 1,
            actual_solves: 1,
            pairs: vec![PairEntry {
                original: FeatureRef::Name("a".into()),
                alternate: FeatureRef::Name("b".into()),
                coefficient: 1.0,
                score: 0.0123,
            }],
        };
        let dot = emit_dot(&report);
        assert_eq!(
            dot,
            "graph alternates {\n  rank=same; \"a\";\n  \"a\" -- \"b\" [label=\"0.01230\"];\n}\n"
        );
        // Collapsed to one line this is the canonical one-edge form.
        let flat = dot.split_whitespace().collect::<Vec<_>>().join(" ");
        assert_eq!(
            flat,
            "graph alternates { rank=same; \"a\"; \"a\" -- \"b\" [label=\"0.01230\"]; }"
        );
    }

    #[test]
    fn empty_report_is_the_empty_graph() {
        let report = ReportFile {
            naive_solves: 0,
            actual_solves: 0,
            pairs: vec![],
        };
        assert_eq!(emit_dot(&report), "graph alternates { }\n");
    }

    #[test]
    fn dot_edge_count_matches_pairs_and_quotes_are_escaped() {
        let mut file = sample_report(true);
        file.pairs[1].alternate = FeatureRef::Name("he\"llo".into());
        let dot = emit_dot(&file);
        assert_eq!(dot.matches(" -- ").count(), file.pairs.len());
        assert!(dot.contains("\"he\\\"llo\""));
    }

    #[test]
    fn table_sorts_truncates_and_formats() {
        let file = sample_report(true);
        let table = emit_table(&file, &FeatureRef::Name("a".into()), 10);
        let rows: Vec<&str> = table.lines().collect();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0], "b\t1.50000\t0.0123000");
        assert_eq!(rows[1], "c\t-0.250000\t0.500000");
        let top1 = emit_table(&file, &FeatureRef::Name("a".into()), 1);
        assert_eq!(top1.lines().count(), 1);
        assert!(emit_table(&file, &FeatureRef::Name("zz".into()), 5).is_empty());
        assert!(emit_table(&file, &FeatureRef::Name("a".into()), 0).is_empty());
    }

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(format_sig(0.0123, 4), "0.01230");
        assert_eq!(format_sig(1.5, 4), "1.500");
        assert_eq!(format_sig(0.0, 4), "0.000");
        assert_eq!(format_sig(-0.0123, 4), "-0.01230");
        assert_eq!(format_sig(12345.6, 4), "12346");
        assert_eq!(format_sig(0.1, 6), "0.100000");
        assert_eq!(format_sig(2.0 / 3.0, 6), "0.666667");
    }

    #[test]
    fn six_digit_rendering_reparses_close() {
        let mut x = 1.0000005e-3;
        for _ in 0..60 {
            let s = format_sig(x, 6);
            let r: f64 = s.parse().unwrap();
            assert!(
                ((r - x) / x).abs() <= 5e-6,
                "x={x} rendered {s} reparsed {r}"
            );
            x *= -1.7;
        }
    }
}
