//! Sequential vs parallel execution of the two embarrassingly parallel
//! workloads: Monte Carlo detection trials and exhaustive Bell-outcome
//! sweeps. Without the `parallel` feature both arms run sequentially.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rfsquid::interface::{run_detection, InteractionParams};
use rfsquid::protocols::{run_teleport_trials, teleport_all_outcomes, Layout};
use rfsquid::{Execution, StateVector};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn detection(c: &mut Criterion) {
    let ip = InteractionParams::new(0.05, 0.196).unwrap();
    let mut g = c.benchmark_group("detection_100k");
    for (name, exec) in MODES {
        g.bench_function(name, |b| {
            b.iter(|| run_detection(black_box(&ip), true, 100_000, 7, exec).unwrap())
        });
    }
    g.finish();
}

fn teleport_exhaustive(c: &mut Criterion) {
    let mut g = c.benchmark_group("teleport_all_outcomes");
    for n in [8usize, 16] {
        let d = StateVector::random(n, 3).unwrap();
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, n), &d, |b, d| {
                b.iter(|| teleport_all_outcomes(black_box(d), None, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn teleport_trials(c: &mut Criterion) {
    let mut g = c.benchmark_group("teleport_trials_n8_x200");
    g.sample_size(20);
    for (name, exec) in MODES {
        g.bench_function(name, |b| {
            b.iter(|| run_teleport_trials(Layout::Line(8), 200, false, 11, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, detection, teleport_exhaustive, teleport_trials);
criterion_main!(benches);
