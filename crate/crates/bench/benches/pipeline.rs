use criterion::{black_box, criterion_group, criterion_main, Criterion};

use graphalg_bench::{ex1_pairs, ex2_pairs, o2_graph};
use graphalg_core::coding::CodingGraph;
use graphalg_core::splitting::run_splitting_algorithm;
use graphalg_core::sync::diagonal_verdict;
use graphalg_core::transducer::{psi_machine, EventuallyPeriodicWord};

fn bench_algebra(c: &mut Criterion) {
    let g = o2_graph();
    let u = ex1_pairs(&g).element();
    c.bench_function("u_power_6", |b| {
        b.iter(|| black_box(&u).u_power(6).unwrap())
    });
    c.bench_function("multiply_u_by_adjoint", |b| {
        b.iter(|| black_box(&u).multiply(&u.adjoint()).unwrap())
    });
}

fn bench_coding_and_splitting(c: &mut Criterion) {
    let g = o2_graph();
    let ex2 = ex2_pairs(&g);
    c.bench_function("coding_build_ex2", |b| {
        b.iter(|| CodingGraph::build(black_box(&ex2)))
    });
    c.bench_function("splitting_ex2", |b| {
        b.iter(|| run_splitting_algorithm(black_box(&ex2)).unwrap())
    });
    let ex1 = ex1_pairs(&g);
    c.bench_function("verdict_ex1", |b| {
        b.iter(|| diagonal_verdict(black_box(&ex1)).unwrap())
    });
}

fn bench_transducers(c: &mut Criterion) {
    let g = o2_graph();
    let ex2 = ex2_pairs(&g);
    c.bench_function("psi_machine_build_ex2", |b| {
        b.iter(|| psi_machine(black_box(&ex2)).unwrap())
    });
    let machine = psi_machine(&ex2).unwrap();
    let word = EventuallyPeriodicWord::new(
        vec![],
        vec!["1".into(), "1".into(), "2".into()],
    )
    .unwrap();
    c.bench_function("psi_eval_ex2", |b| {
        b.iter(|| machine.psi(black_box(&word)).unwrap())
    });
}

criterion_group!(
    benches,
    bench_algebra,
    bench_coding_and_splitting,
    bench_transducers
);
criterion_main!(benches);
