use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use quartica_core::arrangement::incidence;
use quartica_core::catalog;
use quartica_core::milnor::{jacobian_rank_mod_p, total_tjurina};
use quartica_core::tangency::numeric::{find_bitangents_numeric, NumericQuartic};
use quartica_core::tangency::classify_arrangement;

fn rank(c: &mut Criterion) {
    let kl = catalog::kl_octic().polynomial();
    c.bench_function("jacobian rank mod p, kl octic, t=12", |b| {
        b.iter(|| jacobian_rank_mod_p(black_box(&kl), 12).unwrap())
    });
    let dl = catalog::dl_septic().polynomial();
    c.bench_function("total tjurina, dl septic", |b| b.iter(|| total_tjurina(black_box(&dl)).unwrap()));
}

fn arrangements(c: &mut Criterion) {
    let t = catalog::klein_table();
    c.bench_function("incidence, klein bitangents", |b| b.iter(|| incidence(black_box(&t.lines)).unwrap()));
    let d = catalog::dyck_table();
    let mut g = c.benchmark_group("profile");
    g.sample_size(10);
    g.bench_function("singularity profile, dyck quartic + bitangents", |b| {
        b.iter(|| classify_arrangement(black_box(&d.quartic), &d.lines).unwrap())
    });
    g.finish();
}

fn numeric(c: &mut Criterion) {
    let q = NumericQuartic::from_poly(&catalog::ciani_rational("3").unwrap().quartic.unwrap()).unwrap();
    c.bench_function("numeric bitangents, ciani 3", |b| {
        b.iter(|| find_bitangents_numeric(black_box(&q), 1e-8).unwrap())
    });
}

criterion_group!(benches, rank, arrangements, numeric);
criterion_main!(benches);
