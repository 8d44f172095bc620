use criterion::{criterion_group, criterion_main, Criterion};
use qwmds_bench::{dense_poly, factor, rational};
use qwmds_core::ratfun::TwistedAction;
use qwmds_core::rootsys::{Family, RootSystem};

fn polynomials(c: &mut Criterion) {
    let a = dense_poly(3, 4);
    let b = dense_poly(3, 3);
    c.bench_function("multiply 125x64 terms", |bench| bench.iter(|| &a * &b));
    let f = factor(3);
    let prod = a.mul_binomial(&f);
    c.bench_function("divide by binomial", |bench| {
        bench.iter(|| prod.divide_exact_binomial(&f).unwrap())
    });
}

fn action(c: &mut Criterion) {
    let rs = RootSystem::new(Family::A, 3).unwrap();
    let act = TwistedAction::new(&rs, &[1, 2, 0]).unwrap();
    let f = rational(3);
    c.bench_function("act_simple A3", |bench| bench.iter(|| act.act_simple(&f, 1).unwrap()));
    c.bench_function("act_word s1 s2 s1", |bench| {
        bench.iter(|| act.act_word(&f, &[0, 1, 0]).unwrap())
    });
}

criterion_group!(benches, polynomials, action);
criterion_main!(benches);
