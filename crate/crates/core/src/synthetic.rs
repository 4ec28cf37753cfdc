//! Seeded synthetic datasets for tests and benchmarks. All generators are
//! deterministic in the seed.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::data::{Dataset, ResponseVector, TaskKind};
use crate::sparse::FeatureMatrix;

/// Dense standard-normal design with a planted sparse signal:
/// y = X w + 0.5 eps, where w has `signal_count` nonzero entries.
pub fn dense_regression(seed: u64, n: usize, p: usize, signal_count: usize) -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (columns, score) = dense_design(&mut rng, n, p, signal_count);
    let y: Vec<f64> = score
        .iter()
        .map(|&s| s + 0.5 * normal(&mut rng))
        .collect();
    build(n, columns, y, TaskKind::Regression)
}

/// Dense standard-normal design with labels
/// y = sign(X w + 0.5 eps), mapped into {-1, +1}.
pub fn dense_classification(seed: u64, n: usize, p: usize, signal_count: usize) -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (columns, score) = dense_design(&mut rng, n, p, signal_count);
    let y: Vec<f64> = score
        .iter()
        .map(|&s| if s + 0.5 * normal(&mut rng) >= 0.0 { 1.0 } else { -1.0 })
        .collect();
    build(n, columns, y, TaskKind::Classification)
}

/// Correlated design built from latent factors: each factor owns a disjoint
/// block of rows and spawns several noisy copies supported on that block,
/// followed by sparse low-magnitude noise columns. Copies of one factor are
/// interchangeable; copies of different factors are exactly orthogonal, so
/// the only strong alternates for a selected copy are its siblings.
pub struct CorrelatedDesign {
    pub dataset: Dataset,
    /// Per column: Some(factor id) for factor copies, None for noise.
    pub factor_of: Vec<Option<usize>>,
}

pub fn correlated_design(
    seed: u64,
    n: usize,
    factors: usize,
    copies_per_factor: usize,
    noise_columns: usize,
    noise_nnz: usize,
) -> CorrelatedDesign {
    assert!(factors > 0 && factors <= n, "each factor needs at least one row");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let block = n / factors;
    let mut columns = Vec::with_capacity(factors * copies_per_factor + noise_columns);
    let mut factor_of = Vec::with_capacity(factors * copies_per_factor + noise_columns);
    let mut y = vec![0.0; n];
    for k in 0..factors {
        let lo = k * block;
        let hi = if k + 1 == factors { n } else { lo + block };
        let factor: Vec<f64> = (lo..hi).map(|_| normal(&mut rng)).collect();
        let weight = rng.random_range(2.0..4.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        for _ in 0..copies_per_factor {
            let col: Vec<(usize, f64)> = factor
                .iter()
                .enumerate()
                .map(|(i, &f)| (lo + i, f + 0.1 * normal(&mut rng)))
                .filter(|&(_, v)| v != 0.0)
                .collect();
            columns.push(col);
            factor_of.push(Some(k));
        }
        for (i, &f) in factor.iter().enumerate() {
            y[lo + i] = weight * f;
        }
    }
    for _ in 0..noise_columns {
        let mut rows = rand::seq::index::sample(&mut rng, n, noise_nnz.min(n)).into_vec();
        rows.sort_unstable();
        let col: Vec<(usize, f64)> = rows
            .into_iter()
            .map(|m| (m, 0.1 * normal(&mut rng)))
            .filter(|&(_, v)| v != 0.0)
            .collect();
        columns.push(col);
        factor_of.push(None);
    }

    for v in &mut y {
        *v += 0.5 * normal(&mut rng);
    }
    CorrelatedDesign {
        dataset: build(n, columns, y, TaskKind::Regression),
        factor_of,
    }
}

fn dense_design(
    rng: &mut ChaCha8Rng,
    n: usize,
    p: usize,
    signal_count: usize,
) -> (Vec<Vec<(usize, f64)>>, Vec<f64>) {
    let columns: Vec<Vec<(usize, f64)>> = (0..p)
        .map(|_| {
            (0..n)
                .map(|m| (m, normal(rng)))
                .filter(|&(_, v)| v != 0.0)
                .collect()
        })
        .collect();
    let mut score = vec![0.0; n];
    for j in 0..signal_count.min(p) {
        let w = rng.random_range(1.0..2.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        for &(m, v) in &columns[j] {
            score[m] += w * v;
        }
    }
    (columns, score)
}

fn normal(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

fn build(n: usize, columns: Vec<Vec<(usize, f64)>>, y: Vec<f64>, task: TaskKind) -> Dataset {
    let matrix = FeatureMatrix::from_columns(n, columns, None).unwrap();
    Dataset::new(matrix, ResponseVector::new(y).unwrap(), task).unwrap()
}
