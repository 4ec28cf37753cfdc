//! Coordinate descent throughput on dense synthetic instances.

use std::hint::black_box;

use altlasso::synthetic::{dense_classification, dense_regression};
use altlasso::{fit_lasso, null_threshold, solve_univariate, Loss, RegParam, SolverOptions};
use criterion::{criterion_group, criterion_main, Criterion};

fn bench_fit(c: &mut Criterion) {
    let opts = SolverOptions::default();
    let squared = dense_regression(11, 200, 400, 10);
    let squared_reg = RegParam::fixed(0.1 * null_threshold(&squared, Loss::Squared));
    let logistic = dense_classification(12, 200, 400, 10);
    let logistic_reg = RegParam::fixed(0.1 * null_threshold(&logistic, Loss::Logistic));

    let mut group = c.benchmark_group("fit_lasso");
    group.bench_function("squared_200x400", |b| {
        b.iter(|| fit_lasso(black_box(&squared), Loss::Squared, squared_reg, &opts).unwrap())
    });
    group.bench_function("logistic_200x400", |b| {
        b.iter(|| fit_lasso(black_box(&logistic), Loss::Logistic, logistic_reg, &opts).unwrap())
    });
    group.finish();
}

fn bench_univariate(c: &mut Criterion) {
    let opts = SolverOptions::default();
    let logistic = dense_classification(21, 100, 200, 5);
    let reg = RegParam::fixed(0.05 * null_threshold(&logistic, Loss::Logistic));
    let z = vec![0.0; logistic.n()];
    let y = logistic.response().values();

    c.bench_function("solve_univariate/logistic_all_columns", |b| {
        b.iter(|| {
            for column in logistic.matrix().columns() {
                black_box(
                    solve_univariate(Loss::Logistic, &z, y, column, reg, &opts).unwrap(),
                );
            }
        })
    });
}

criterion_group!(benches, bench_fit, bench_univariate);
criterion_main!(benches);
