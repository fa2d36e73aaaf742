use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use tropcsm::bergman::bergman_fan;
use tropcsm::csm::{cone_reports, csm_cycle};
use tropcsm::matroid::{fano, graphic, uniform};
use tropcsm::noether::{dual_census_check, noether_check, staircase};
use tropcsm::polyfan::stable_intersection;
use tropcsm::LatticePolytope3;

fn matroid_kernels(c: &mut Criterion) {
    let mut g = c.benchmark_group("matroid");
    g.bench_function("flats_fano", |b| b.iter(|| black_box(fano().all_flats().len())));
    g.bench_function("characteristic_polynomial_k5", |b| {
        let edges: Vec<(usize, usize)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
        b.iter(|| black_box(graphic(5, &edges).unwrap().characteristic_polynomial()))
    });
    g.finish();
}

fn csm_kernels(c: &mut Criterion) {
    let mut g = c.benchmark_group("csm");
    for (r, n) in [(3, 5), (3, 6), (4, 6)] {
        let m = uniform(r, n);
        g.bench_with_input(BenchmarkId::new("csm_0", format!("U({r},{n})")), &m, |b, m| {
            b.iter(|| black_box(csm_cycle(m, 0).unwrap().fan.degree0()))
        });
        g.bench_with_input(BenchmarkId::new("psi_route_all_cones", format!("U({r},{n})")), &m, |b, m| {
            b.iter(|| black_box(cone_reports(m).unwrap().len()))
        });
    }
    g.finish();
}

fn fan_kernels(c: &mut Criterion) {
    let mut g = c.benchmark_group("fan");
    let b35 = bergman_fan(&uniform(3, 5));
    g.bench_function("balance_U(3,5)", |b| b.iter(|| black_box(b35.is_balanced().balanced)));
    let b34 = bergman_fan(&uniform(3, 4));
    g.bench_function("self_intersection_U(3,4)", |b| b.iter(|| black_box(stable_intersection(&b34, &b34).unwrap())));
    g.finish();
}

fn noether_kernels(c: &mut Criterion) {
    let mut g = c.benchmark_group("noether");
    for d in [3, 6] {
        let p = LatticePolytope3::dilated_simplex(d);
        g.bench_with_input(BenchmarkId::new("polytope_route", format!("{d}-simplex")), &p, |b, p| {
            b.iter(|| black_box(noether_check(p).unwrap().holds))
        });
        g.bench_with_input(BenchmarkId::new("census_route", format!("{d}-simplex")), &p, |b, p| {
            b.iter(|| black_box(dual_census_check(p, &staircase(p).unwrap()).unwrap().holds))
        });
    }
    g.finish();
}

criterion_group!(benches, matroid_kernels, csm_kernels, fan_kernels, noether_kernels);
criterion_main!(benches);
