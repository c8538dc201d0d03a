use chm_bench::fixtures;
use chm_core::analysis::{census, fingerprint, real_block_search};
use chm_core::mub::exclusion_verdict;
use chm_core::Tolerances;
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn bench_census(c: &mut Criterion) {
    let tol = Tolerances::default();
    let mut g = c.benchmark_group("analysis");
    for (name, h) in fixtures() {
        g.bench_function(format!("census/{name}"), |b| b.iter(|| census(black_box(&h), &tol)));
        g.bench_function(format!("real_block_2x3/{name}"), |b| {
            b.iter(|| real_block_search(black_box(&h), 2, 3, &tol))
        });
        g.bench_function(format!("fingerprint/{name}"), |b| b.iter(|| fingerprint(black_box(&h))));
        g.bench_function(format!("verdict/{name}"), |b| b.iter(|| exclusion_verdict(black_box(&h), &tol)));
    }
    g.finish();
}

criterion_group!(benches, bench_census);
criterion_main!(benches);
