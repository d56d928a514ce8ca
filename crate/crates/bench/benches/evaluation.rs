use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use padic_euler::euler::EulerTable;
use padic_euler::fermionic::{fermionic_integral_numeric, Integrand};
use padic_euler::loggamma::{log_gamma, LogGammaRequest};
use padic_euler::projection;
use padic_euler::rational::rat_int;
use padic_euler::zeta::{zeta, ZetaRequest};
use padic_euler::PAdicNumber;
use padic_euler_bench::{config, small_x, unit_omega};

fn bench_euler_table(c: &mut Criterion) {
    let mut group = c.benchmark_group("euler_table");
    for kmax in [16usize, 64, 128] {
        group.bench_with_input(BenchmarkId::from_parameter(kmax), &kmax, |b, &kmax| {
            let omega = unit_omega(2);
            b.iter(|| EulerTable::build(&omega, kmax).unwrap());
        });
    }
    group.finish();
}

fn bench_zeta_series(c: &mut Criterion) {
    let mut group = c.benchmark_group("zeta_series");
    for prec in [20i64, 40, 80] {
        group.bench_with_input(BenchmarkId::from_parameter(prec), &prec, |b, &prec| {
            let req = ZetaRequest::new(config(prec), rat_int(2), small_x(), unit_omega(2));
            b.iter(|| zeta(&req).unwrap());
        });
    }
    group.finish();
}

fn bench_log_gamma(c: &mut Criterion) {
    c.bench_function("log_gamma_stirling_prec30", |b| {
        let req = LogGammaRequest::new(config(30), small_x(), unit_omega(1));
        b.iter(|| log_gamma(&req).unwrap());
    });
}

fn bench_teichmuller(c: &mut Criterion) {
    let mut group = c.benchmark_group("teichmuller");
    for prec in [50i64, 200] {
        group.bench_with_input(BenchmarkId::from_parameter(prec), &prec, |b, &prec| {
            let a = PAdicNumber::from_integer(2, 5, prec).unwrap();
            b.iter(|| projection::teichmuller(&a).unwrap());
        });
    }
    group.finish();
}

fn bench_numeric_integral(c: &mut Criterion) {
    c.bench_function("fermionic_numeric_poly_L3", |b| {
        let spec = Integrand::Polynomial {
            degree: 4,
            x: rat_int(0),
            omega: unit_omega(1),
        };
        b.iter(|| fermionic_integral_numeric(&spec, 5, 3, 10).unwrap());
    });
}

criterion_group!(
    benches,
    bench_euler_table,
    bench_zeta_series,
    bench_log_gamma,
    bench_teichmuller,
    bench_numeric_integral
);
criterion_main!(benches);
