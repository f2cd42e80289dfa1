use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use incidence_core::kernel::{fig5_instance, kernelize};
use incidence_core::{generate, Family, Player, SolveOptions, Solver};

fn paths(c: &mut Criterion) {
    let mut group = c.benchmark_group("path");
    for n in [10, 14, 18] {
        let p = generate(Family::PathL(n)).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &p, |b, p| {
            b.iter(|| Solver::default().score_pair(p).unwrap())
        });
    }
    group.finish();
}

fn distinct_moves(c: &mut Criterion) {
    let p = generate(Family::Fig2).unwrap();
    let mut group = c.benchmark_group("fig2");
    group.bench_function("default", |b| b.iter(|| Solver::default().solve(&p, Player::Left).unwrap()));
    let pruned = SolveOptions { alpha_beta: true, ..SolveOptions::default() };
    group.bench_function("alpha_beta", |b| {
        b.iter(|| Solver::new(pruned.clone()).solve(&p, Player::Left).unwrap())
    });
    group.finish();
}

fn binary_tree(c: &mut Criterion) {
    let t = generate(Family::BinaryTree(3)).unwrap();
    let options = SolveOptions::default().with_twins();
    c.bench_function("binary_tree_3_twins", |b| {
        b.iter(|| Solver::new(options.clone()).score_pair(&t).unwrap())
    });
}

fn kernel(c: &mut Criterion) {
    let inst = fig5_instance();
    c.bench_function("kernelize_fig5", |b| b.iter(|| kernelize(&inst).unwrap()));
}

criterion_group!(benches, paths, distinct_moves, binary_tree, kernel);
criterion_main!(benches);
