//! Sequential versus rayon execution of the data-parallel kernels.
//!
//! `cargo bench -p coulomb2d`; build with `--no-default-features` to compare
//! against a binary without rayon at all.

use std::f64::consts::PI;
use std::hint::black_box;

use coulomb2d::amplitude::{f_series_exact, AngleGrid, SummationOptions};
use coulomb2d::phase_shift::{phase_table, SMatrixMethod};
use coulomb2d::radial::{oracle_phase, FitOptions, OdeOptions};
use coulomb2d::{AngularMomentum, CouplingGate, EnergyInput, Execution, Kinematics};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn z1() -> Kinematics {
    Kinematics::new(coulomb2d::kinematics::FINE_STRUCTURE_ALPHA, EnergyInput::EnergyRatio(1.25), CouplingGate::Enforce)
        .unwrap()
}

fn series_amplitude(c: &mut Criterion) {
    let kin = z1();
    let mut group = c.benchmark_group("f_series_exact");
    group.sample_size(10);
    for count in [16usize, 128] {
        let grid = AngleGrid::uniform(count, PI / 16.0, 31.0 * PI / 16.0, PI / 64.0).unwrap();
        for (name, execution) in MODES {
            let opts = SummationOptions { execution, ..SummationOptions::default() };
            group.bench_with_input(BenchmarkId::new(name, count), &grid, |b, grid| {
                b.iter(|| f_series_exact(black_box(grid), &kin, &opts).unwrap())
            });
        }
    }
    group.finish();
}

fn s_matrix_table(c: &mut Criterion) {
    let kin = z1();
    let mut group = c.benchmark_group("phase_table");
    for (name, execution) in MODES {
        group.bench_function(BenchmarkId::new(name, 40_001), |b| {
            b.iter(|| phase_table(black_box(&kin), 40_001, SMatrixMethod::Exact, execution).unwrap())
        });
    }
    group.finish();
}

fn radial_oracle(c: &mut Criterion) {
    let kin = z1();
    let channels: Vec<AngularMomentum> = AngularMomentum::channels(11).collect();
    let mut group = c.benchmark_group("oracle_phase_12_channels");
    group.sample_size(10);
    for (name, execution) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| {
                coulomb2d::exec::map_indexed(execution, channels.len(), |n| {
                    oracle_phase(channels[n], &kin, &OdeOptions::default(), &FitOptions::default()).unwrap().eta
                })
            })
        });
    }
    group.finish();
}

criterion_group!(benches, series_amplitude, s_matrix_table, radial_oracle);
criterion_main!(benches);
