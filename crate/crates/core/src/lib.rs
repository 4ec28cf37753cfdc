//! L1-regularized linear models (squared or logistic loss) fit by cyclic
//! coordinate descent, plus enumeration and scoring of alternate features:
//! for each selected feature, the unselected features that can replace it
//! with only a small increase of the penalized objective.
//!
//! The pipeline is fit -> enumerate -> report:
//!
//! ```
//! use altlasso::{
//!     emit_dot, find_alternates, fit_lasso, synthetic, Loss, RegParam, ReportFile,
//!     SolverOptions,
//! };
//!
//! let dataset = synthetic::dense_regression(7, 30, 20, 3);
//! let reg = RegParam::fixed(0.4 * altlasso::null_threshold(&dataset, Loss::Squared));
//! let opts = SolverOptions::default();
//! let solution = fit_lasso(&dataset, Loss::Squared, reg, &opts).unwrap();
//! let report = find_alternates(&dataset, Loss::Squared, &solution, reg, &opts).unwrap();
//! let dot = emit_dot(&ReportFile::from_report(&report, None));
//! assert!(dot.starts_with("graph alternates {"));
//! ```

pub mod alternates;
pub mod data;
pub mod loss;
pub mod report;
pub mod solver;
pub mod sparse;
pub mod synthetic;

pub use alternates::{
    find_alternates, partial_prediction, rank_alternates, score_pair, screen_candidates,
    AlternatePair, AlternateReport, AlternatesError, FailedSolve, PartialPrediction,
};
pub use data::{
    load_corpus, load_csv, load_libsvm, read_corpus, read_csv, read_libsvm, vectorize_text,
    write_libsvm, DataError, Dataset, ResponseVector, TargetColumn, TaskKind,
};
pub use loss::{Loss, LossError};
pub use report::{
    emit_dot, emit_table, format_sig, read_json_file, to_json_string, write_json_file,
    FeatureRef, PairEntry, ReportError, ReportFile, SolutionFile,
};
pub use solver::{
    fit_lasso, fit_lasso_traced, kkt_residual, null_threshold, soft_threshold, solve_univariate,
    solve_univariate_prox, LassoSolution, RegParam, SolverError, SolverOptions,
};
pub use sparse::{FeatureMatrix, SparseColumn};
