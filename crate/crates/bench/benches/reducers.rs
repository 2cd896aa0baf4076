use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use planarize_bench::LadderFamily;
use planarize_core::planar::PlanarOptions;
use planarize_core::Algorithm;

const SIZES: [usize; 3] = [12_000, 24_000, 48_000];
// the planar reducer rescans whole components, so its ladder is smaller
const PLANAR_SIZES: [usize; 3] = [1_000, 2_000, 4_000];

fn ladder(c: &mut Criterion, alg: Algorithm, family: LadderFamily, label: &str, sizes: &[usize]) {
    let opts = PlanarOptions::default();
    let mut group = c.benchmark_group(format!("{}/{label}", alg.name()));
    group.sample_size(10);
    for &size in sizes {
        let g = family.instance(size).expect("ladder instance");
        group.bench_with_input(BenchmarkId::from_parameter(g.n()), &g, |b, g| {
            b.iter(|| alg.run(g, &opts).expect("reducer"))
        });
    }
    group.finish();
}

fn reducers(c: &mut Criterion) {
    ladder(
        c,
        Algorithm::Pseudoforest,
        LadderFamily::K33Copies,
        "k33xt",
        &SIZES,
    );
    ladder(
        c,
        Algorithm::Treewidth2,
        LadderFamily::RandomRegular { d: 4, seed: 7 },
        "random-regular-4",
        &SIZES,
    );
    ladder(
        c,
        Algorithm::Planar,
        LadderFamily::RandomRegular { d: 5, seed: 7 },
        "random-regular-5",
        &PLANAR_SIZES,
    );
}

criterion_group!(benches, reducers);
criterion_main!(benches);
