use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use flashsim_bench::{flash_run, table1_groups};
use flashsim_core::{solve_lumped, solve_radial, ControlSchedule, SolverOptions};

fn radial_flash(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve_radial flash run");
    group.sample_size(10);
    for n in [32, 64, 128] {
        let (groups, schedule, grid, opts) = flash_run(n, 50.0);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| solve_radial(black_box(&groups), &schedule, &grid, &opts).unwrap())
        });
    }
    group.finish();
}

fn lumped_blowup(c: &mut Criterion) {
    let groups = table1_groups(f64::INFINITY);
    let schedule = ControlSchedule::voltage_only();
    let opts = SolverOptions::default();
    c.bench_function("solve_lumped to blow-up", |b| {
        b.iter(|| solve_lumped(black_box(&groups), &schedule, &opts).unwrap())
    });
}

criterion_group!(benches, radial_flash, lumped_blowup);
criterion_main!(benches);
