use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use hopf_core::gammarep::gamma_suite;
use hopf_core::hopfmaps::sample_normalized;
use hopf_core::splitnum::SplitAlgebra;
use hopf_core::{ComplexF, GaugeModel, Grassmann, HopfMap, MapCase, Patch, Realization, SplitF, SplitOctonion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn grassmann(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut draw = || Grassmann::<SplitF>::from_coeffs(std::array::from_fn(|_| SplitF::new(rng.gen(), rng.gen())));
    let (a, b) = (draw(), draw());
    c.bench_function("grassmann_mul", |bn| bn.iter(|| black_box(&a) * black_box(&b)));
    let even = a.even_part() + Grassmann::scalar(SplitF::new(2.0, 0.0));
    c.bench_function("grassmann_inv_sqrt", |bn| bn.iter(|| black_box(&even).inv_sqrt()));
}

fn octonion(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut draw = || SplitOctonion::<f64>::from_coeffs(&(0..8).map(|_| rng.gen::<f64>()).collect::<Vec<_>>());
    let (a, b) = (draw(), draw());
    c.bench_function("split_octonion_mul", |bn| bn.iter(|| black_box(a.clone()) * black_box(b.clone())));
}

fn gamma(c: &mut Criterion) {
    c.bench_function("gamma_suite", |bn| bn.iter(|| gamma_suite(false)));
}

fn hopf(c: &mut Criterion) {
    let case = MapCase::new(3, Realization::II);
    let map = HopfMap::<ComplexF>::new(case).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    c.bench_function("project_3_II", |bn| {
        bn.iter_batched(|| sample_normalized::<ComplexF>(case, &mut rng).unwrap(), |s| map.project(&s).unwrap(), BatchSize::SmallInput)
    });
    let x = map.project(&sample_normalized::<ComplexF>(case, &mut rng).unwrap()).unwrap();
    let patch = if x[8] >= 0.0 { Patch::Upper } else { Patch::Lower };
    c.bench_function("section_3_II", |bn| bn.iter(|| map.section(black_box(&x), patch).unwrap()));

    let case = MapCase::new(3, Realization::I);
    let model = GaugeModel::<SplitF>::new(case).unwrap();
    let m = HopfMap::<SplitF>::new(case).unwrap();
    let x = m.project(&sample_normalized::<SplitF>(case, &mut rng).unwrap()).unwrap();
    let patch = if x[8] >= 0.0 { Patch::Upper } else { Patch::Lower };
    c.bench_function("gauge_sample_3_I", |bn| bn.iter(|| model.sample(black_box(&x), patch).unwrap()));
    c.bench_function("connection_numeric_3_I", |bn| bn.iter(|| model.connection_numeric(black_box(&x), patch, 1e-5).unwrap()));
}

criterion_group!(benches, grassmann, octonion, gamma, hopf);
criterion_main!(benches);
