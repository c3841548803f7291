//! Parallel-vs-sequential benchmark on the pairing-invariance workload:
//! a batch of admissible mu-vectors, each requiring ten 4x4 circuit
//! matrices and the M H ~M comparisons.  `map_collect` dispatches through
//! rayon when the `parallel` feature is on and degrades to the sequential
//! loop otherwise, so the two series coincide in a no-default-features
//! build.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hyperlab::monodromy::{check_pairing_invariance, MuVector, Variant};
use hyperlab::par::{map_collect, map_collect_seq};

fn batch(n: usize) -> Vec<MuVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    (0..n).map(|_| MuVector::random_admissible(&mut rng)).collect()
}

fn workload(mu: &MuVector) -> f64 {
    check_pairing_invariance(mu, Variant::Structured)
        .expect("admissible mu")
        .max_relative()
}

fn bench_pairing(c: &mut Criterion) {
    let mut group = c.benchmark_group("pairing_invariance_batch");
    for &size in &[64usize, 512] {
        let mus = batch(size);
        group.bench_with_input(BenchmarkId::new("map_collect", size), &mus, |b, mus| {
            b.iter(|| {
                let worst = map_collect(mus.clone(), workload)
                    .into_iter()
                    .fold(0.0f64, f64::max);
                assert!(worst < 1e-10);
            })
        });
        group.bench_with_input(BenchmarkId::new("map_collect_seq", size), &mus, |b, mus| {
            b.iter(|| {
                let worst = map_collect_seq(mus.clone(), workload)
                    .into_iter()
                    .fold(0.0f64, f64::max);
                assert!(worst < 1e-10);
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_pairing);
criterion_main!(benches);
