use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qwmds_bench::context;
use qwmds_core::numerator::{numerator_n, numerator_via_action, verify_all};
use qwmds_core::rootsys::Family;

fn numerators(c: &mut Criterion) {
    let mut g = c.benchmark_group("numerator_n");
    g.sample_size(10);
    let cases: &[(Family, usize, &[u32])] = &[
        (Family::A, 2, &[0, 0]),
        (Family::A, 2, &[2, 2]),
        (Family::A, 3, &[1, 0, 1]),
        (Family::D, 4, &[0, 0, 0, 0]),
        (Family::D, 4, &[1, 0, 0, 0]),
    ];
    for &(family, rank, ell) in cases {
        let ctx = context(family, rank, ell);
        g.bench_with_input(BenchmarkId::from_parameter(ctx.label()), &ctx, |b, ctx| {
            b.iter(|| numerator_n(ctx).unwrap())
        });
    }
    g.finish();

    let ctx = context(Family::A, 2, &[2, 1]);
    c.bench_function("numerator_via_action A2 (2,1)", |b| {
        b.iter(|| numerator_via_action(&ctx).unwrap())
    });
    let n = numerator_n(&context(Family::A, 3, &[1, 1, 1])).unwrap();
    c.bench_function("verify_all A3 (1,1,1)", |b| b.iter(|| verify_all(&n)));
}

criterion_group!(benches, numerators);
criterion_main!(benches);
