use chm_core::mub::{verify_eighteen_contradiction, EighteenGrid};
use chm_core::search::{seek_trio, SearchConfig};
use chm_core::Tolerances;
use criterion::{criterion_group, criterion_main, Criterion};

fn bench_search(c: &mut Criterion) {
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    for dim in [3, 6] {
        let cfg = SearchConfig {
            dim,
            restarts: 1,
            max_iters: 100,
            stagnation_window: 0,
            ..SearchConfig::default()
        };
        g.bench_function(format!("seek_trio/d{dim}/100_rounds"), |b| b.iter(|| seek_trio(&cfg)));
    }
    let tol = Tolerances::default();
    let grid = EighteenGrid {
        resolution: 16,
        ..EighteenGrid::default()
    };
    g.bench_function("eighteen/16", |b| b.iter(|| verify_eighteen_contradiction(&grid, &tol)));
    g.finish();
}

criterion_group!(benches, bench_search);
criterion_main!(benches);
