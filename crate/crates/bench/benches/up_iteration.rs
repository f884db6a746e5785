use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use padic_lfun::lift::{iterate_control, naive_lift, EigenData};
use padic_lfun::symbols::{eigensymbol, ClassicalSpace, EigenSpec, ManinData};
use padic_lfun::PAdicContext;

const P: u64 = 5;
const M: usize = 10;

/// Level 55, weight 0, the plus-part eigensymbol with T_2 = -2.
fn bench_up(c: &mut Criterion) {
    let space = ClassicalSpace::new(Arc::new(ManinData::new(11 * P).unwrap()), 0, 0).unwrap();
    let ctx = PAdicContext::qp(P, 10).unwrap();
    let eig = eigensymbol(&space, &EigenSpec { sign: 1, hecke: vec![(2, -2)] }, P, &ctx).unwrap();
    let psi0 = naive_lift(&eig.phi, M, None).unwrap();
    let up = psi0.compile(&psi0.manin.u_op(P)).unwrap();
    let lambda_inv = eig.lambda.inv().unwrap();
    let data = [EigenData { p: P, lambda: eig.lambda.clone() }];

    c.bench_function("compile U_p", |b| b.iter(|| psi0.compile(&psi0.manin.u_op(P)).unwrap()));
    c.bench_function("U_p apply", |b| b.iter(|| psi0.apply(&up).unwrap()));
    c.bench_function("control step", |b| b.iter(|| psi0.apply(&up).unwrap().scale(&lambda_inv).unwrap()));
    c.bench_function("naive lift", |b| b.iter(|| naive_lift(&eig.phi, M, None).unwrap()));
    let mut g = c.benchmark_group("full");
    g.sample_size(10);
    g.bench_function("iterate to convergence", |b| b.iter(|| iterate_control(&psi0, &data, None).unwrap()));
    g.finish();
}

criterion_group!(benches, bench_up);
criterion_main!(benches);
