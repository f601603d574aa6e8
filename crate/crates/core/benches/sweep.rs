use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use multconj::{Family, Parallelism, SweepConfig};

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_all");
    group.sample_size(10);
    for (family, t_max, entry_max) in [(Family::Cm2, 3, 5), (Family::Gor3, 2, 5)] {
        for (label, parallelism) in [
            ("sequential", Parallelism::Sequential),
            ("parallel", Parallelism::Auto),
        ] {
            let config = SweepConfig::new(family, t_max, entry_max).with_parallelism(parallelism);
            let id = BenchmarkId::new(label, format!("{family}_t{t_max}_e{entry_max}"));
            group.bench_with_input(id, &config, |b, config| {
                b.iter(|| multconj::sweep::verify_all(config).instances_checked)
            });
        }
    }
    group.finish();
}

criterion_group!(benches, sweeps);
criterion_main!(benches);
