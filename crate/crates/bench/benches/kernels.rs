use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fracsub::sampling::StableSampler;
use fracsub::subordination::sinh_grid;
use fracsub::walker::Walker;
use fracsub::{
    green_function, mittag_leffler, stable_pdf, tabulate_green, wright_m, DiffusionParams, MlParams, RngStream,
    StableParams, WalkConfig, WrightOrder,
};

fn specfun(c: &mut Criterion) {
    let mut g = c.benchmark_group("mittag_leffler");
    let p = MlParams::classic(0.6).unwrap();
    for z in [-0.5, -5.0, -50.0, 3.0] {
        g.bench_with_input(BenchmarkId::from_parameter(z), &z, |b, &z| {
            b.iter(|| mittag_leffler(p, black_box(z)).unwrap())
        });
    }
    g.finish();

    let mut g = c.benchmark_group("wright_m");
    for nu in [0.25, 0.5, 0.9] {
        let o = WrightOrder::new(nu).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(nu), &o, |b, &o| {
            b.iter(|| wright_m(o, black_box(2.0)).unwrap())
        });
    }
    g.finish();
}

fn stable(c: &mut Criterion) {
    let mut g = c.benchmark_group("stable_pdf");
    for (alpha, theta, x) in [(1.5, 0.0, 0.3), (1.5, 0.0, 3.0), (0.6, 0.3, 1.0), (1.8, -0.2, 40.0)] {
        let p = StableParams::new(alpha, theta).unwrap();
        g.bench_function(format!("a{alpha}_th{theta}_x{x}"), |b| {
            b.iter(|| stable_pdf(p, black_box(x)).unwrap())
        });
    }
    g.finish();
}

fn green(c: &mut Criterion) {
    let mut g = c.benchmark_group("green");
    g.sample_size(20);
    let p = DiffusionParams::new(1.5, 0.0, 0.9).unwrap();
    g.bench_function("point_1.5_0.9", |b| {
        b.iter(|| green_function(p, black_box(1.0), 1.0).unwrap())
    });
    let xs = sinh_grid(201, 20.0, 3.0);
    g.bench_function("grid201_1.5_0.9", |b| {
        b.iter(|| tabulate_green(p, 1.0, black_box(&xs)).unwrap())
    });
    g.finish();
}

fn walker(c: &mut Criterion) {
    let mut g = c.benchmark_group("walker");
    for (alpha, beta) in [(2.0, 0.8), (1.5, 0.9), (1.5, 1.0)] {
        let p = DiffusionParams::new(alpha, 0.0, beta).unwrap();
        let cfg = WalkConfig::new(p, 1e-3, 1000, 7, 0).unwrap();
        g.bench_function(format!("1000_steps_a{alpha}_b{beta}"), |b| {
            b.iter(|| {
                let mut w = Walker::new(&cfg).unwrap();
                for _ in 0..1000 {
                    black_box(w.step());
                }
            })
        });
    }
    let s = StableSampler::new(StableParams::new(1.5, 0.5).unwrap());
    g.bench_function("stable_draw", |b| {
        let mut rng = RngStream::new(1, 0);
        b.iter(|| s.sample(&mut rng))
    });
    g.finish();
}

criterion_group!(benches, specfun, stable, green, walker);
criterion_main!(benches);
