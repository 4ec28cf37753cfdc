//! Enumeration, screening, solving, and scoring of alternate features: for
//! every selected feature i, the unselected features j that take a nonzero
//! coefficient when refit against the prediction with i's contribution
//! removed.

use rayon::prelude::*;
use thiserror::Error;

use crate::data::Dataset;
use crate::loss::Loss;
use crate::solver::{l1_norm, solve_univariate, LassoSolution, RegParam, SolverOptions};
use crate::sparse::FeatureMatrix;

/// Prediction vector with one selected feature's contribution removed.
#[derive(Debug, Clone)]
pub struct PartialPrediction {
    pub origin: usize,
    /// z = sum over k != origin of X_k * beta_k.
    pub z: Vec<f64>,
}

/// One original/alternate feature pair with the refit coefficient and the
/// objective increase caused by the swap.
#[derive(Debug, Clone, PartialEq)]
pub struct AlternatePair {
    pub original: usize,
    pub alternate: usize,
    pub coefficient: f64,
    pub score: f64,
}

/// A univariate solve that hit its iteration cap; the pipeline skips the
/// pair and keeps going.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailedSolve {
    pub original: usize,
    pub alternate: usize,
}

/// Full enumeration outcome with screening statistics.
#[derive(Debug, Clone)]
pub struct AlternateReport {
    /// Sorted by (original, alternate).
    pub pairs: Vec<AlternatePair>,
    pub failures: Vec<FailedSolve>,
    /// |support| * count of unselected columns with nonzero norm.
    pub naive_solve_count: usize,
    /// Univariate solves actually performed (screen survivors).
    pub actual_solve_count: usize,
}

#[derive(Debug, Error)]
pub enum AlternatesError {
    #[error("feature {0} is not in the support")]
    NotInSupport(usize),
    #[error("solution did not converge; alternates require a stationary fit")]
    NotConverged,
    #[error("solution has {beta} coefficients but the dataset has {p} features")]
    DimensionMismatch { beta: usize, p: usize },
}

/// Removes feature i's contribution from the cached prediction vector.
pub fn partial_prediction(
    matrix: &FeatureMatrix,
    solution: &LassoSolution,
    i: usize,
) -> Result<PartialPrediction, AlternatesError> {
    if i >= solution.beta.len() || solution.beta[i] == 0.0 {
        return Err(AlternatesError::NotInSupport(i));
    }
    let mut z = solution.fitted.clone();
    matrix.column(i).axpy_into(-solution.beta[i], &mut z);
    Ok(PartialPrediction { origin: i, z })
}

/// Unselected candidates that survive the gradient screen: exactly the j
/// with beta_j = 0, nonzero column norm, and |X_j^T grad f(z^(i), y)| > rho.
/// The gradient is computed once and reused for every candidate.
pub fn screen_candidates(
    matrix: &FeatureMatrix,
    loss: Loss,
    y: &[f64],
    zpart: &PartialPrediction,
    solution: &LassoSolution,
    reg: RegParam,
) -> Vec<usize> {
    let rho = reg.effective(y.len());
    let mut grad = vec![0.0; y.len()];
    loss.gradient_into(&zpart.z, y, &mut grad);
    let mut selected = vec![false; solution.beta.len()];
    for &i in &solution.support {
        selected[i] = true;
    }
    matrix
        .columns()
        .iter()
        .enumerate()
        .filter(|&(j, column)| {
            !selected[j] && column.norm_sq() > 0.0 && column.dot(&grad).abs() > rho
        })
        .map(|(j, _)| j)
        .collect()
}

/// Objective increase when feature `zpart.origin` is swapped for `alternate`
/// at the given refit coefficient, evaluated from the already available
/// partial prediction.
pub fn score_pair(
    loss: Loss,
    dataset: &Dataset,
    solution: &LassoSolution,
    zpart: &PartialPrediction,
    alternate: usize,
    coefficient: f64,
    reg: RegParam,
) -> f64 {
    let y = dataset.response().values();
    let rho = reg.effective(dataset.n());
    let mut z = zpart.z.clone();
    dataset.matrix().column(alternate).axpy_into(coefficient, &mut z);
    let l1 = l1_norm(&solution.beta) - solution.beta[zpart.origin].abs() + coefficient.abs();
    loss.value_raw(&z, y) + rho * l1 - solution.objective
}

/// Runs the full pipeline for every selected feature: build the partial
/// prediction, screen, solve survivors, score nonzero coefficients. Origins
/// are processed in parallel; the merged result is canonically sorted by
/// (original, alternate), so the report does not depend on scheduling.
pub fn find_alternates(
    dataset: &Dataset,
    loss: Loss,
    solution: &LassoSolution,
    reg: RegParam,
    opts: &SolverOptions,
) -> Result<AlternateReport, AlternatesError> {
    if !solution.converged {
        return Err(AlternatesError::NotConverged);
    }
    if solution.beta.len() != dataset.p() {
        return Err(AlternatesError::DimensionMismatch {
            beta: solution.beta.len(),
            p: dataset.p(),
        });
    }
    let matrix = dataset.matrix();
    let y = dataset.response().values();
    let mut selected = vec![false; dataset.p()];
    for &i in &solution.support {
        selected[i] = true;
    }
    let candidate_universe = matrix
        .columns()
        .iter()
        .enumerate()
        .filter(|&(j, c)| !selected[j] && c.norm_sq() > 0.0)
        .count();
    let naive_solve_count = solution.support.len() * candidate_universe;

    struct OriginOutcome {
        pairs: Vec<AlternatePair>,
        failures: Vec<FailedSolve>,
        solves: usize,
    }

    let outcomes: Vec<OriginOutcome> = solution
        .support
        .par_iter()
        .map(|&i| {
            let zpart = partial_prediction(matrix, solution, i)
                .expect("support indices have nonzero coefficients");
            let survivors = screen_candidates(matrix, loss, y, &zpart, solution, reg);
            let mut pairs = Vec::new();
            let mut failures = Vec::new();
            for &j in &survivors {
                match solve_univariate(loss, &zpart.z, y, matrix.column(j), reg, opts) {
                    Ok(b) if b.abs() > opts.univariate_tolerance => {
                        let score = score_pair(loss, dataset, solution, &zpart, j, b, reg);
                        pairs.push(AlternatePair {
                            original: i,
                            alternate: j,
                            coefficient: b,
                            score,
                        });
                    }
                    Ok(_) => {}
                    Err(_) => failures.push(FailedSolve {
                        original: i,
                        alternate: j,
                    }),
                }
            }
            OriginOutcome {
                pairs,
                failures,
                solves: survivors.len(),
            }
        })
        .collect();

    let mut pairs = Vec::new();
    let mut failures = Vec::new();
    let mut actual_solve_count = 0;
    for outcome in outcomes {
        pairs.extend(outcome.pairs);
        failures.extend(outcome.failures);
        actual_solve_count += outcome.solves;
    }
    pairs.sort_by(|a, b| (a.original, a.alternate).cmp(&(b.original, b.alternate)));
    failures.sort_by(|a, b| (a.original, a.alternate).cmp(&(b.original, b.alternate)));
    Ok(AlternateReport {
        pairs,
        failures,
        naive_solve_count,
        actual_solve_count,
    })
}

/// Pairs for one origin, closest alternates first: score ascending, ties by
/// alternate index, truncated to top_k. Unknown origins yield an empty list.
pub fn rank_alternates(
    report: &AlternateReport,
    origin: usize,
    top_k: usize,
) -> Vec<AlternatePair> {
    let mut ranked: Vec<AlternatePair> = report
        .pairs
        .iter()
        .filter(|p| p.original == origin)
        .cloned()
        .collect();
    ranked.sort_by(|a, b| {
        a.score
            .total_cmp(&b.score)
            .then(a.alternate.cmp(&b.alternate))
    });
    ranked.truncate(top_k);
    ranked
}
