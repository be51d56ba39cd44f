//! Sequential vs parallel timings for the distance screen and a small
//! scan. Run with `cargo bench`; disable the `parallel` feature to check
//! the fallback compiles on its own.

use criterion::{criterion_group, criterion_main, Criterion};

use dircode::search::{scan, ScanConfig};
use dircode::torus::{build_code, CheckerboardTorus, Layout};
use dircode::word::parse_word;
use dircode::ExecMode;

fn modes() -> Vec<(&'static str, ExecMode)> {
    let mut out = vec![("seq", ExecMode::Sequential)];
    #[cfg(feature = "parallel")]
    out.push(("par", ExecMode::Parallel));
    out
}

fn bench_screen(c: &mut Criterion) {
    let word = parse_word("NE2NE2N").unwrap();
    let t = CheckerboardTorus::new(24, 12).unwrap();
    let inst = build_code(&word, &t, &Layout::RowAlternating).unwrap();
    let mut group = c.benchmark_group("distance_screen_24x12_wmax4");
    group.sample_size(10);
    for (name, mode) in modes() {
        group.bench_function(name, |b| {
            b.iter(|| inst.code_parameters_mode(4, mode).unwrap())
        });
    }
    group.finish();
}

fn bench_scan(c: &mut Criterion) {
    let cfg = ScanConfig {
        min_len: 4,
        max_len: 6,
        lx: 12,
        ly: 6,
        w_max: 3,
        ..ScanConfig::default()
    };
    let mut group = c.benchmark_group("scan_12x6_len4to6");
    group.sample_size(10);
    for (name, mode) in modes() {
        group.bench_function(name, |b| b.iter(|| scan(&cfg, mode)));
    }
    group.finish();
}

criterion_group!(benches, bench_screen, bench_scan);
criterion_main!(benches);
