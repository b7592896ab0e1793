use barypoly::analysis::{random_sorted_seed, run_sweep, SweepConfig};
use barypoly::stationary::{solve_alpha, DEFAULT_ALPHA_TOL};
use barypoly::{conjugate_step, dual_sequence, polygon_step, run_trajectory, PointSet, WeightTuple};
use barypoly_cli::render_figure;
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SPIRAL_SEED: [f64; 5] = [0.3, 0.08, 0.06, 0.04, 0.01];

fn stationary(c: &mut Criterion) {
    let mut g = c.benchmark_group("solve_alpha");
    for p in [3, 8, 64] {
        g.bench_with_input(BenchmarkId::from_parameter(p), &p, |b, &p| {
            b.iter(|| solve_alpha(black_box(p), DEFAULT_ALPHA_TOL).unwrap())
        });
    }
    g.finish();
}

fn steps(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut g = c.benchmark_group("conjugate_step");
    for p in [3, 8, 32] {
        let u = random_sorted_seed(&mut rng, p);
        g.bench_with_input(BenchmarkId::from_parameter(p), &u, |b, u| {
            b.iter(|| conjugate_step(black_box(u)))
        });
    }
    g.finish();

    let u = random_sorted_seed(&mut rng, 8);
    let alpha = solve_alpha(8, DEFAULT_ALPHA_TOL).unwrap();
    c.bench_function("run_trajectory/p8x200", |b| {
        b.iter(|| run_trajectory(black_box(&u), 200, alpha))
    });
}

fn geometry(c: &mut Criterion) {
    let a = PointSet::regular_polygon(5).unwrap();
    let t = WeightTuple::new(SPIRAL_SEED.to_vec()).unwrap();
    c.bench_function("polygon_step/p5", |b| {
        b.iter(|| polygon_step(black_box(&a), &t).unwrap())
    });
    c.bench_function("dual_sequence/p5x60", |b| {
        b.iter(|| dual_sequence(black_box(&a), &t, 60).unwrap())
    });
    c.bench_function("render_figure/order2", |b| {
        b.iter(|| render_figure(black_box(&a), &t, &[2], 60).unwrap())
    });
}

fn verification(c: &mut Criterion) {
    let config = SweepConfig {
        seeds_per_order: 10,
        ..SweepConfig::default()
    };
    let mut g = c.benchmark_group("verify");
    g.sample_size(20);
    g.bench_function("sweep/10-seeds-per-order", |b| {
        b.iter(|| run_sweep(black_box(&config)).unwrap())
    });
    g.finish();
}

criterion_group!(benches, stationary, steps, geometry, verification);
criterion_main!(benches);
