use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use tamari_core::verify::{run, Family, Options, Suite};
use tamari_core::Exec;

fn suites(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    for (suite, n) in [(Suite::Lattice, 5), (Suite::El, 5), (Suite::Covers, 5)] {
        for exec in [Exec::Sequential, Exec::Parallel] {
            let opts = Options {
                exec,
                ..Options::default()
            };
            let id = BenchmarkId::new(format!("{suite}-n{n}"), format!("{exec:?}").to_lowercase());
            group.bench_function(id, |b| {
                b.iter(|| {
                    let r = run(suite, &Family::B, n, opts).unwrap();
                    assert!(r.passed());
                    r.checks
                })
            });
        }
    }
    group.finish();
}

criterion_group!(benches, suites);
criterion_main!(benches);
