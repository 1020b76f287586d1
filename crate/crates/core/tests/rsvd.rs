mod common;

use common::{randn, spectral_rel};
use proptest::prelude::*;
use tricur::dense::{singular_values, spectral_norm};
use tricur::harness::rng::rng_from_seed;
use tricur::harness::MatrixGenerator;
use tricur::rsvd::{restricted_values, rsvd, rsvd_regularized, truncate, RsvdFactors};
use tricur::{DenseMatrix, Error};

fn triplet(
    m: usize,
    n: usize,
    l: usize,
    d: usize,
    seed: u64,
) -> (DenseMatrix, DenseMatrix, DenseMatrix) {
    (
        randn(m, n, 3 * seed),
        randn(m, l, 3 * seed + 1),
        randn(d, n, 3 * seed + 2),
    )
}

fn check_factors(a: &DenseMatrix, b: &DenseMatrix, g: &DenseMatrix, f: &RsvdFactors) {
    let (m, n) = a.shape();
    let r = m.min(n);
    assert_eq!(f.z.shape(), (m, m));
    assert_eq!(f.w.shape(), (n, n));
    assert_eq!(f.u.shape(), (b.cols(), m));
    assert_eq!(f.v.shape(), (g.rows(), n));
    assert_eq!((f.alpha.len(), f.beta.len(), f.gamma.len()), (r, r, r));
    assert!(spectral_rel(&f.reconstruct_a(), a) <= 1e-8);
    assert!(spectral_rel(&f.reconstruct_b(), b) <= 1e-8);
    assert!(spectral_rel(&f.reconstruct_g(), g) <= 1e-8);
    for i in 0..r {
        let t = f.alpha[i].powi(2) + f.beta[i].powi(2) + f.gamma[i].powi(2);
        assert!((t - 1.0).abs() <= 1e-12);
        for v in [f.alpha[i], f.beta[i], f.gamma[i]] {
            assert!(v > 0.0 && v < 1.0);
        }
    }
    assert!(f.alpha.windows(2).all(|w| w[0] >= w[1]));
    if f.transposed {
        assert!(f.beta.windows(2).all(|w| w[0] >= w[1]));
        assert!(f.gamma.windows(2).all(|w| w[0] <= w[1]));
    } else {
        assert!(f.beta.windows(2).all(|w| w[0] <= w[1]));
        assert!(f.gamma.windows(2).all(|w| w[0] >= w[1]));
    }
    let rv = f.restricted_values().unwrap();
    assert!(rv.windows(2).all(|w| w[0] >= w[1] * (1.0 - 1e-12)));
    assert!(f.u.orthonormality_defect() <= 1e-10);
    assert!(f.v.orthonormality_defect() <= 1e-10);
}

#[test]
fn random_triplets_satisfy_contract() {
    for (m, n, l, d) in [
        (60, 40, 80, 80),
        (60, 40, 60, 40),
        (30, 30, 30, 30),
        (40, 60, 80, 80),
    ] {
        for seed in 0..5 {
            let (a, b, g) = triplet(m, n, l, d, seed);
            let f = rsvd(&a, &b, &g).unwrap();
            assert_eq!(f.transposed, m < n);
            check_factors(&a, &b, &g, &f);
        }
    }
}

#[test]
fn identity_weights_give_singular_values() {
    let f = rsvd(
        &DenseMatrix::from_diag(&[2.0, 1.0]),
        &DenseMatrix::identity(2),
        &DenseMatrix::identity(2),
    )
    .unwrap();
    let rv = restricted_values(&f).unwrap();
    assert!((rv[0] - 2.0).abs() < 1e-12 && (rv[1] - 1.0).abs() < 1e-12);

    for seed in 0..5 {
        let a = randn(30, 20, seed);
        let f = rsvd(&a, &DenseMatrix::identity(30), &DenseMatrix::identity(20)).unwrap();
        let rv = f.restricted_values().unwrap();
        for (x, y) in rv.iter().zip(singular_values(&a).unwrap()) {
            assert!((x - y).abs() <= 1e-8 * y);
        }
    }
}

#[test]
fn transposed_triplet_has_same_values() {
    for seed in 0..5 {
        let (a, b, g) = triplet(60, 40, 80, 80, seed);
        let f = rsvd(&a, &b, &g).unwrap();
        let ft = rsvd(&a.transpose(), &g.transpose(), &b.transpose()).unwrap();
        assert!(!f.transposed && ft.transposed);
        let (x, y) = (
            f.restricted_values().unwrap(),
            ft.restricted_values().unwrap(),
        );
        for (p, q) in x.iter().zip(&y) {
            assert!((p - q).abs() <= 1e-8 * p);
        }
    }
}

#[test]
fn single_column() {
    let a = DenseMatrix::from_rows(&[[3.0], [4.0]]).unwrap();
    let f = rsvd(&a, &DenseMatrix::identity(2), &DenseMatrix::identity(1)).unwrap();
    let rv = f.restricted_values().unwrap();
    assert_eq!(rv.len(), 1);
    assert!((rv[0] - 5.0).abs() < 1e-13);
    assert!((rv[0] - f.alpha[0] / (f.beta[0] * f.gamma[0])).abs() < 1e-15);
}

#[test]
fn preconditions_name_the_matrix() {
    let (a, b, g) = triplet(10, 6, 12, 8, 1);
    assert!(matches!(
        rsvd(&a, &randn(9, 12, 0), &g),
        Err(Error::Dimension { .. })
    ));
    assert!(matches!(
        rsvd(&a, &b, &randn(8, 5, 0)),
        Err(Error::Dimension { .. })
    ));
    assert!(matches!(
        rsvd(&a, &randn(10, 4, 0), &g),
        Err(Error::RankDeficient { matrix: "B", .. })
    ));
    assert!(matches!(
        rsvd(&a, &b, &randn(3, 6, 0)),
        Err(Error::RankDeficient { matrix: "G", .. })
    ));
    let mut gd = g.clone().into_vec();
    gd.iter_mut().skip(5).step_by(6).for_each(|v| *v = 0.0);
    let gd = DenseMatrix::new(8, 6, gd).unwrap();
    assert!(matches!(
        rsvd(&a, &b, &gd),
        Err(Error::RankDeficient { matrix: "G", .. })
    ));
}

#[test]
fn truncation() {
    let (a, b, g) = triplet(60, 40, 80, 80, 7);
    let f = rsvd(&a, &b, &g).unwrap();
    assert!(matches!(truncate(&f, 0), Err(Error::RankOutOfRange { .. })));
    assert!(matches!(
        truncate(&f, 41),
        Err(Error::RankOutOfRange { k: 41, max: 40 })
    ));
    let full = truncate(&f, 40).unwrap();
    assert!(spectral_rel(&full.a_k(), &a) <= 1e-8);
    let one = truncate(&f, 1).unwrap();
    let s = singular_values(&one.a_k()).unwrap();
    assert!(s[1] <= 1e-12 * s[0]);
    for k in [1, 5, 20, 39] {
        let t = truncate(&f, k).unwrap();
        assert_eq!(t.z, f.z.leading_columns(k));
        assert_eq!(t.w, f.w.leading_columns(k));
        let z_hat = f.z.block(0..60, k..60);
        let w_hat = f.w.block(0..40, k..40);
        let err = spectral_norm(&a.sub(&t.a_k())).unwrap();
        let bound = f.alpha[k] * spectral_norm(&z_hat).unwrap() * spectral_norm(&w_hat).unwrap();
        assert!(err <= bound * (1.0 + 1e-10));
    }
}

#[test]
fn regularization() {
    // Inactive regime: values move by O(μ).
    let (a, b, g) = triplet(30, 20, 40, 30, 3);
    let plain = rsvd(&a, &b, &g).unwrap().restricted_values().unwrap();
    let reg = rsvd_regularized(&a, &b, &g, 1e-8).unwrap();
    assert_eq!((reg.b_cols, reg.g_rows), (40, 30));
    assert_eq!((reg.artificial_b_cols, reg.artificial_g_rows), (30, 20));
    let rv = reg.factors.restricted_values().unwrap();
    for (x, y) in rv.iter().zip(&plain) {
        assert!((x - y).abs() <= 1e-6 * y);
    }
    let same = rsvd_regularized(&a, &b, &g, 0.0).unwrap();
    assert_eq!(same.factors.restricted_values().unwrap(), plain);

    // Short B and G as in the Gauss-Markov model.
    let mut rng = rng_from_seed(11);
    let gen = MatrixGenerator::Randn;
    let a = gen.generate(1000, 100, &mut rng).unwrap();
    let b = gen.generate(1000, 50, &mut rng).unwrap();
    let g = gen.generate(10, 100, &mut rng).unwrap();
    let reg = rsvd_regularized(&a, &b, &g, 1e-8).unwrap();
    assert_eq!(reg.factors.u.shape(), (1050, 1000));
    assert!(matches!(
        rsvd_regularized(&a, &b, &g, 0.0),
        Err(Error::RankDeficient { matrix: "B", .. })
    ));
    assert!(matches!(
        rsvd_regularized(&a, &b, &g, -1.0),
        Err(Error::InvalidConfig(_))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn contract_on_random_shapes(m in 2usize..25, n in 2usize..25, el in 0usize..10, ed in 0usize..10, seed in any::<u64>()) {
        let (a, b, g) = (randn(m, n, seed), randn(m, m + el, seed ^ 1), randn(n + ed, n, seed ^ 2));
        let f = rsvd(&a, &b, &g).unwrap();
        check_factors(&a, &b, &g, &f);
    }
}
