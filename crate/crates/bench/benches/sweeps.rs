use criterion::{black_box, criterion_group, criterion_main, Criterion};

use pmint::floorcert::{build_floor_sum, builtin, certify, jump_candidates};
use pmint::relations::{verify_identity, IdentityId};
use pmint::{d_direct, d_matrix, eval_p};

fn coefficients(c: &mut Criterion) {
    c.bench_function("d_direct(20, 15)", |b| b.iter(|| d_direct(black_box(20), black_box(15))));
    c.bench_function("d_matrix(10)", |b| b.iter(|| d_matrix(black_box(10))));
    c.bench_function("eval_p(12, 9)", |b| b.iter(|| eval_p(black_box(12), black_box(9))));
}

fn identities(c: &mut Criterion) {
    let mut g = c.benchmark_group("identities");
    g.sample_size(10);
    g.bench_function("CERT_G 10x10x15", |b| {
        b.iter(|| verify_identity(IdentityId::CertG, &[0..=9, 0..=9, -2..=12]).unwrap())
    });
    g.bench_function("MIXED 15x18", |b| {
        b.iter(|| verify_identity(IdentityId::MixedRel1Rel2, &[0..=14, 0..=17]).unwrap())
    });
    g.finish();
}

fn floors(c: &mut Criterion) {
    let diag = builtin("frac1-diag").unwrap();
    let fs = build_floor_sum(&diag.spec);
    c.bench_function("jump_candidates frac1-diag", |b| {
        b.iter(|| jump_candidates(black_box(&fs), "i").unwrap())
    });
    let mut g = c.benchmark_group("certify");
    g.sample_size(10);
    for name in ["frac1-diag", "frac2"] {
        let inst = builtin(name).unwrap();
        g.bench_function(name, |b| {
            b.iter(|| certify(inst.name, &inst.spec, &inst.order, 17).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, coefficients, identities, floors);
criterion_main!(benches);
