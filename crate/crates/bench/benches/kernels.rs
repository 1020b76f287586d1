use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use tricur::cur::{cur, rsvd_cur};
use tricur::dense::{qr, svd, Pivoting, QrMode, SvdMode};
use tricur::gsvd::gsvd_stacked;
use tricur::harness::gaussian_matrix;
use tricur::rsvd::rsvd;
use tricur::selection::{deim, qdeim, Selector};

fn dense(c: &mut Criterion) {
    let mut group = c.benchmark_group("dense");
    for (m, n) in [(200, 50), (500, 100)] {
        let a = gaussian_matrix(m, n, 1);
        let id = format!("{m}x{n}");
        group.bench_with_input(BenchmarkId::new("qr_thin", &id), &a, |b, a| {
            b.iter(|| qr(black_box(a), QrMode::Thin, Pivoting::None).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("qr_pivoted", &id), &a, |b, a| {
            b.iter(|| qr(black_box(a), QrMode::Thin, Pivoting::Column).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("svd_thin", &id), &a, |b, a| {
            b.iter(|| svd(black_box(a), SvdMode::Thin).unwrap())
        });
    }
    group.finish();
}

fn decompositions(c: &mut Criterion) {
    let mut group = c.benchmark_group("decompositions");
    group.sample_size(20);
    let (a, g) = (gaussian_matrix(80, 60, 2), gaussian_matrix(40, 60, 3));
    group.bench_function("gsvd_80x60_40x60", |b| {
        b.iter(|| gsvd_stacked(black_box(&a), black_box(&g)).unwrap())
    });

    let (a, bm, g) = (
        gaussian_matrix(60, 40, 4),
        gaussian_matrix(60, 80, 5),
        gaussian_matrix(80, 40, 6),
    );
    group.bench_function("rsvd_60x40", |b| {
        b.iter(|| rsvd(black_box(&a), black_box(&bm), black_box(&g)).unwrap())
    });
    group.bench_function("rsvd_cur_60x40_k10", |b| {
        b.iter(|| rsvd_cur(black_box(&a), &bm, &g, 10, Selector::Deim).unwrap())
    });
    let big = gaussian_matrix(1000, 100, 7);
    group.bench_function("cur_1000x100_k15", |b| {
        b.iter(|| cur(black_box(&big), 15, Selector::Deim).unwrap())
    });
    group.finish();
}

fn selection(c: &mut Criterion) {
    let mut group = c.benchmark_group("selection");
    let u = qr(&gaussian_matrix(2000, 30, 8), QrMode::Thin, Pivoting::None)
        .unwrap()
        .q;
    group.bench_function("deim_2000x30", |b| {
        b.iter(|| deim(black_box(&u), None).unwrap())
    });
    group.bench_function("qdeim_2000x30", |b| {
        b.iter(|| qdeim(black_box(&u)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, dense, decompositions, selection);
criterion_main!(benches);
