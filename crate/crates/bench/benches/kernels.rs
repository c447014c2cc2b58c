//! Microbenchmarks of the dense kernels: the Hilbert metric, the four-index
//! domination scans, the gauge bracket, and the top-two oracle.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ndarray::{Array1, Array2};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cone_gauge_core::complex_cone::ComplexCone;
use cone_gauge_core::domination::extract_constants;
use cone_gauge_core::operators::top_two_ratio;
use cone_gauge_core::real_cone::{image_diameter, RealCone};

fn positive_vector<R: Rng>(rng: &mut R, n: usize) -> Array1<f64> {
    Array1::from_shape_fn(n, |_| (rng.gen_range(-1.5f64..1.5)).exp())
}

fn bench_hilbert_metric(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let cone = RealCone::standard(16);
    let pairs: Vec<(Array1<f64>, Array1<f64>)> = (0..64)
        .map(|_| (positive_vector(&mut rng, 16), positive_vector(&mut rng, 16)))
        .collect();
    c.bench_function("hilbert_metric/16d_x64", |b| {
        b.iter(|| {
            let mut acc = 0.0;
            for (x, y) in &pairs {
                acc += cone.hilbert_metric(x.view(), y.view()).unwrap().value;
            }
            acc
        })
    });
}

fn bench_image_diameter(c: &mut Criterion) {
    let mut group = c.benchmark_group("image_diameter");
    for n in [8usize, 16, 32] {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = Array2::from_shape_fn((n, n), |_| rng.gen_range(0.5f64..2.0));
        group.bench_with_input(BenchmarkId::from_parameter(n), &a, |b, a| {
            b.iter(|| image_diameter(a).unwrap())
        });
    }
    group.finish();
}

fn bench_extract_constants(c: &mut Criterion) {
    let mut group = c.benchmark_group("extract_constants");
    group.sample_size(10);
    for n in [16usize, 32] {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = Array2::from_shape_fn((n, n), |_| {
            Complex64::from_polar(rng.gen_range(1.0f64..2.0), 0.02 * rng.gen_range(-1.0f64..1.0))
        });
        let p = Array2::from_elem((n, n), 1.0);
        group.bench_with_input(BenchmarkId::from_parameter(n), &(m, p), |b, (m, p)| {
            b.iter(|| extract_constants(m, p).unwrap())
        });
    }
    group.finish();
}

fn bench_gauge_bracket(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let cone = ComplexCone::standard(8);
    let make = |rng: &mut ChaCha8Rng| {
        let xp = positive_vector(rng, 8);
        let xm = positive_vector(rng, 8);
        let phase = Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
        Array1::from_shape_fn(8, |i| {
            phase * Complex64::new((xp[i] + xm[i]) / 2.0, (xp[i] - xm[i]) / 2.0)
        })
    };
    let pairs: Vec<(Array1<Complex64>, Array1<Complex64>)> =
        (0..8).map(|_| (make(&mut rng), make(&mut rng))).collect();
    c.bench_function("gauge_bracket/8d_x8", |b| {
        b.iter(|| {
            let mut acc = 0.0;
            for (x, y) in &pairs {
                acc += cone.gauge(x.view(), y.view()).unwrap().bracket.lower;
            }
            acc
        })
    });
}

fn bench_top_two(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let n = 24;
    let a = Array2::from_shape_fn((n, n), |_| {
        Complex64::from_polar(rng.gen_range(1.0f64..2.0), 0.02 * rng.gen_range(-1.0f64..1.0))
    });
    c.bench_function("top_two_ratio/24d", |b| {
        b.iter(|| top_two_ratio(&a, 1e-10).unwrap().ratio)
    });
}

criterion_group!(
    benches,
    bench_hilbert_metric,
    bench_image_diameter,
    bench_extract_constants,
    bench_gauge_bracket,
    bench_top_two
);
criterion_main!(benches);
