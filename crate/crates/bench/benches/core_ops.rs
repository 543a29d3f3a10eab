use criterion::{black_box, criterion_group, criterion_main, Criterion};
use std::time::Duration;
use tripack_core::{
    build_circulant, canonical_form, catalog_lookup, certify_distinct, hamiltonian_decomposition,
    search_packing, select_generator_pair, union_graph, validate_packing, CirculantSpec,
    SearchConstraint, TwoFactorShape,
};

fn shape(lengths: &[usize]) -> TwoFactorShape {
    TwoFactorShape::new(lengths.to_vec()).unwrap()
}

fn bench_canonical_form(c: &mut Criterion) {
    let g = build_circulant(&CirculantSpec::new(20, (1, 4, 5)).unwrap());
    c.bench_function("canonical_form circulant n=20", |b| {
        b.iter(|| canonical_form(black_box(&g)).unwrap())
    });
}

fn bench_search_packing(c: &mut Criterion) {
    let budget = Duration::from_secs(60);
    let s = shape(&[4, 5]);
    c.bench_function("search_packing [4,5]", |b| {
        b.iter(|| search_packing(black_box(&s), SearchConstraint::Any, budget).unwrap())
    });
    let s = shape(&[3, 4, 5]);
    c.bench_function("search_packing [3,4,5] no K5", |b| {
        b.iter(|| search_packing(black_box(&s), SearchConstraint::ForbidK5, budget).unwrap())
    });
}

fn bench_validate(c: &mut Criterion) {
    let entry = catalog_lookup(&shape(&[4, 4, 4])).unwrap();
    let p = &entry.packings[0];
    c.bench_function("validate_packing [4,4,4]", |b| {
        b.iter(|| validate_packing(black_box(p)).is_ok())
    });
}

fn bench_certify(c: &mut Criterion) {
    let (s1, s2) = select_generator_pair(21).unwrap();
    let g1 = build_circulant(&s1);
    let g2 = build_circulant(&s2);
    c.bench_function("certify_distinct circulants n=21", |b| {
        b.iter(|| certify_distinct(black_box(&g1), black_box(&g2)).unwrap())
    });
}

fn bench_decomposition(c: &mut Criterion) {
    let spec = CirculantSpec::new(24, (1, 3, 5)).unwrap();
    c.bench_function("hamiltonian_decomposition C24(1,3,5)", |b| {
        b.iter(|| {
            let p = hamiltonian_decomposition(black_box(&spec)).unwrap();
            union_graph(&p).unwrap()
        })
    });
}

criterion_group!(
    benches,
    bench_canonical_form,
    bench_search_packing,
    bench_validate,
    bench_certify,
    bench_decomposition
);
criterion_main!(benches);
