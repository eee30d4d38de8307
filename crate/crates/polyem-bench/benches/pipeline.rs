use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use polyem_bench::{singular_cone, symbolic_flag, wide_triangle};
use polyem_core::euler::{count_lattice_points, em_sum};
use polyem_core::exactmath::{bernoulli_series, Poly, Scalar};
use polyem_core::genfun::{s_of_cone, s_of_polytope, taylor_at_zero};
use polyem_core::{ComplementMap, Interpolator, InterpolatorKind};

fn bench_bernoulli(c: &mut Criterion) {
    c.bench_function("bernoulli_series_order_16", |b| {
        b.iter(|| bernoulli_series(black_box(16)))
    });
}

fn bench_exponential_sums(c: &mut Criterion) {
    let cone = singular_cone();
    c.bench_function("s_of_singular_cone", |b| {
        b.iter(|| s_of_cone(black_box(&cone)).unwrap())
    });
    let p = wide_triangle();
    c.bench_function("s_of_triangle_brion", |b| {
        b.iter(|| s_of_polytope(black_box(&p)).unwrap())
    });
}

fn bench_interpolators(c: &mut Criterion) {
    let cone = singular_cone();
    c.bench_function("mu_singular_cone_symbolic_flag", |b| {
        b.iter(|| {
            // A fresh engine each iteration to measure the uncached path.
            let interp = Interpolator::new(symbolic_flag());
            interp.mu(black_box(&cone)).unwrap()
        })
    });
    c.bench_function("mu_constant_term_standard", |b| {
        b.iter(|| {
            let interp = Interpolator::new(ComplementMap::standard(2));
            interp
                .constant_term(InterpolatorKind::Mu, black_box(&cone))
                .unwrap()
        })
    });
}

fn bench_taylor(c: &mut Criterion) {
    let cone = singular_cone();
    let interp = Interpolator::new(ComplementMap::standard(2));
    let mu = interp.mu(&cone).unwrap();
    c.bench_function("taylor_order_4_of_mu", |b| {
        b.iter(|| taylor_at_zero(black_box(&mu), 4).unwrap())
    });
}

fn bench_euler_maclaurin(c: &mut Criterion) {
    let p = wide_triangle();
    c.bench_function("count_lattice_points_triangle", |b| {
        b.iter(|| {
            let interp = Interpolator::new(ComplementMap::standard(2));
            count_lattice_points(&interp, black_box(&p)).unwrap()
        })
    });
    let h = Poly::monomial(2, &[2, 0], Scalar::one())
        .add(&Poly::monomial(2, &[0, 1], Scalar::one()));
    c.bench_function("em_sum_quadratic_triangle", |b| {
        b.iter(|| {
            let interp = Interpolator::new(ComplementMap::standard(2));
            em_sum(&interp, black_box(&p), black_box(&h)).unwrap()
        })
    });
}

criterion_group!(
    benches,
    bench_bernoulli,
    bench_exponential_sums,
    bench_interpolators,
    bench_taylor,
    bench_euler_maclaurin
);
criterion_main!(benches);
