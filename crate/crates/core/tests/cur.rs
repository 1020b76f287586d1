mod common;

use common::{randn, rel, spectral_rel};
use proptest::prelude::*;
use tricur::bounds::{error_bound_report, interpolation_constant};
use tricur::cur::*;
use tricur::dense::{least_squares, least_squares_right, spectral_norm};
use tricur::rsvd::rsvd;
use tricur::selection::Selector;
use tricur::{DenseMatrix, Error};

fn low_rank(m: usize, n: usize, k: usize, seed: u64) -> DenseMatrix {
    randn(m, k, seed).matmul(&randn(k, n, seed + 1))
}

fn optimality_residual(a: &DenseMatrix, c: &DenseMatrix, m: &DenseMatrix, r: &DenseMatrix) -> f64 {
    let resid = a.sub(&c.matmul(m).matmul(r));
    let lhs = spectral_norm(&c.t_matmul(&resid).matmul_t(r)).unwrap();
    lhs / (spectral_norm(a).unwrap() * spectral_norm(c).unwrap() * spectral_norm(r).unwrap())
}

#[test]
fn middle_matrix_examples() {
    let a = DenseMatrix::from_diag(&[3.0, 1.0]);
    let c = DenseMatrix::from_rows(&[[3.0], [0.0]]).unwrap();
    let r = DenseMatrix::from_rows(&[[3.0, 0.0]]).unwrap();
    let m = middle_matrix(&a, &c, &r).unwrap();
    assert!((m[(0, 0)] - 1.0 / 3.0).abs() < 1e-15);
    let i = DenseMatrix::identity(3);
    assert!(rel(&middle_matrix(&i, &i, &i).unwrap(), &i) < 1e-15);

    let a = randn(20, 15, 1);
    let (c, r) = (a.select_columns(&[1, 4, 7]), a.select_rows(&[0, 2, 9]));
    assert!(optimality_residual(&a, &c, &middle_matrix(&a, &c, &r).unwrap(), &r) < 1e-12);

    let dependent = DenseMatrix::from_rows(&[[1.0, 2.0], [1.0, 2.0], [0.0, 0.0]]).unwrap();
    let r = a.select_rows(&[0, 1]).block(0..2, 0..2);
    let a3 = randn(3, 2, 3);
    assert!(matches!(
        middle_matrix(&a3, &dependent, &r),
        Err(Error::RankDeficient { matrix: "C", .. })
    ));
}

#[test]
fn cur_examples() {
    let a = DenseMatrix::from_diag(&[3.0, 1.0]);
    let c = cur(&a, 1, Selector::Deim).unwrap();
    assert_eq!(
        (c.col_indices.to_vec(), c.row_indices.to_vec()),
        (vec![0], vec![0])
    );
    assert!((c.middle[(0, 0)] - 1.0 / 3.0).abs() < 1e-15);
    assert!((spectral_norm(&a.sub(&c.reconstruct(&a))).unwrap() - 1.0).abs() < 1e-14);

    assert!(matches!(
        cur(&a, 3, Selector::Deim),
        Err(Error::RankOutOfRange { k: 3, max: 2 })
    ));
    let rank_one = DenseMatrix::from_rows(&[[1.0, 2.0], [2.0, 4.0]]).unwrap();
    assert!(matches!(
        cur(&rank_one, 2, Selector::Deim),
        Err(Error::RankDeficient { .. })
    ));
}

#[test]
fn exact_rank_recovery() {
    for sel in [Selector::Deim, Selector::Qdeim] {
        for seed in 0..5 {
            let a = low_rank(40, 30, 6, 10 * seed);
            let c = cur(&a, 6, sel).unwrap();
            assert!(spectral_rel(&c.reconstruct(&a), &a) <= 1e-8);
        }
    }
}

#[test]
fn identity_weights_reduce_to_cur() {
    for seed in 0..20 {
        let a = randn(50, 30, 40 + seed);
        let c = cur(&a, 5, Selector::Deim).unwrap();
        let r = rsvd_cur(
            &a,
            &DenseMatrix::identity(50),
            &DenseMatrix::identity(30),
            5,
            Selector::Deim,
        )
        .unwrap();
        assert_eq!(r.p_b, c.row_indices);
        assert_eq!(r.s_g, c.col_indices);
        assert_eq!(r.s, c.row_indices);
        assert_eq!(r.p, c.col_indices);
    }
    let a = DenseMatrix::from_diag(&[3.0, 1.0]);
    let r = rsvd_cur(
        &a,
        &DenseMatrix::identity(2),
        &DenseMatrix::identity(2),
        1,
        Selector::Deim,
    )
    .unwrap();
    for idx in [&r.p, &r.s, &r.p_b, &r.s_g] {
        assert_eq!(idx.to_vec(), vec![0]);
    }
    assert!((r.m_a[(0, 0)] - 1.0 / 3.0).abs() < 1e-14);
}

#[test]
fn nonsingular_weights_match_cur_of_whitened_matrix() {
    for seed in 0..20 {
        let a = randn(50, 30, 100 + seed);
        let b = randn(50, 50, 200 + seed);
        let g = randn(30, 30, 300 + seed);
        let r = rsvd_cur(&a, &b, &g, 5, Selector::Deim).unwrap();
        let whitened = least_squares_right(&g, &least_squares(&b, &a).unwrap()).unwrap();
        let c = cur(&whitened, 5, Selector::Deim).unwrap();
        assert_eq!(c.row_indices, r.p_b, "seed {seed}");
        assert_eq!(c.col_indices, r.s_g, "seed {seed}");
    }
}

#[test]
fn rsvd_cur_middle_matrices_are_optimal() {
    let (a, b, g) = (randn(30, 20, 1), randn(30, 35, 2), randn(25, 20, 3));
    let r = rsvd_cur(&a, &b, &g, 6, Selector::Qdeim).unwrap();
    assert!(optimality_residual(&a, &a.select_columns(&r.p), &r.m_a, &a.select_rows(&r.s)) < 1e-8);
    assert!(
        optimality_residual(&b, &b.select_columns(&r.p_b), &r.m_b, &b.select_rows(&r.s)) < 1e-8
    );
    assert!(
        optimality_residual(&g, &g.select_columns(&r.p), &r.m_g, &g.select_rows(&r.s_g)) < 1e-8
    );
    for (idx, bound) in [(&r.p, 20), (&r.s, 30), (&r.p_b, 35), (&r.s_g, 25)] {
        assert_eq!(idx.len(), 6);
        assert_eq!(idx.bound(), bound);
    }
}

#[test]
fn gcur_is_rsvd_cur_with_identity_b() {
    let (a, g) = (
        randn(30, 20, 5),
        DenseMatrix::from_diag(&(1..=20).map(|i| i as f64).collect::<Vec<_>>()),
    );
    let gc = gcur(&a, &g, 4, Selector::Deim).unwrap();
    let full = rsvd_cur(&a, &DenseMatrix::identity(30), &g, 4, Selector::Deim).unwrap();
    assert_eq!((&gc.p, &gc.s, &gc.s_g), (&full.p, &full.s, &full.s_g));
    assert_eq!((&gc.m_a, &gc.m_g), (&full.m_a, &full.m_g));

    let c = cur(&a, 4, Selector::Deim).unwrap();
    let gi = gcur(&a, &DenseMatrix::identity(20), 4, Selector::Deim).unwrap();
    assert_eq!((&gi.p, &gi.s), (&c.col_indices, &c.row_indices));
}

#[test]
fn interpolative_decompositions() {
    let a = randn(30, 20, 8);
    let (i30, i20) = (DenseMatrix::identity(30), DenseMatrix::identity(20));
    let id = rsvd_id(&a, &i30, &i20, 5, IdSide::Columns, Selector::Deim).unwrap();
    assert_eq!(id.indices, cur(&a, 5, Selector::Deim).unwrap().col_indices);

    let (b, g) = (randn(30, 40, 9), randn(25, 20, 10));
    for k in [3, 8] {
        let full = rsvd_cur(&a, &b, &g, k, Selector::Deim).unwrap();
        let cur_err = spectral_norm(&a.sub(&full.reconstruct_a(&a))).unwrap();
        let cols = rsvd_id(&a, &b, &g, k, IdSide::Columns, Selector::Deim).unwrap();
        assert_eq!(cols.indices, full.p);
        assert!(spectral_norm(&a.sub(&cols.reconstruct_a(&a))).unwrap() <= cur_err + 1e-10);
        let rows = rsvd_id(&a, &b, &g, k, IdSide::Rows, Selector::Deim).unwrap();
        assert_eq!(rows.indices, full.s);
        assert!(spectral_norm(&a.sub(&rows.reconstruct_a(&a))).unwrap() <= cur_err + 1e-10);
    }
    for side in [IdSide::Columns, IdSide::Rows] {
        let id = rsvd_id(&a, &b, &g, 20, side, Selector::Deim).unwrap();
        assert!(spectral_rel(&id.reconstruct_a(&a), &a) <= 1e-8);
    }
}

#[test]
fn error_bounds_hold() {
    for seed in 0..10 {
        let (a, b, g) = (
            randn(60, 40, 500 + seed),
            randn(60, 80, 600 + seed),
            randn(80, 40, 700 + seed),
        );
        let f = rsvd(&a, &b, &g).unwrap();
        for k in [2, 5, 10] {
            let r = rsvd_cur_from_factors(&a, &b, &g, &f, k, Selector::Deim).unwrap();
            let e = error_bound_report(&a, &b, &g, &r, &f).unwrap();
            assert_eq!(e.k, k);
            for eta in [e.eta_p, e.eta_s, e.eta_pb, e.eta_sg] {
                assert!(eta >= 1.0 - 1e-12);
            }
            assert!(
                e.bound_a >= e.true_err_a && e.bound_b >= e.true_err_b && e.bound_g >= e.true_err_g
            );
            assert!((e.alpha_k1 - f.alpha[k]).abs() < 1e-15);
        }
    }
}

#[test]
fn interpolation_constant_of_identity_selection() {
    let q = DenseMatrix::identity(5).leading_columns(3);
    assert_eq!(interpolation_constant(&q, &[0, 1, 2], "p").unwrap(), 1.0);
    assert!(matches!(
        interpolation_constant(&q, &[0, 1, 4], "p"),
        Err(Error::DegenerateSelection { block: "p" })
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cur_middle_matrix_is_optimal(m in 5usize..30, n in 5usize..30, seed in any::<u64>()) {
        let a = randn(m, n, seed);
        let k = 1 + (seed as usize) % m.min(n).min(6);
        let c = cur(&a, k, Selector::Deim).unwrap();
        let (cm, rm) = (a.select_columns(&c.col_indices), a.select_rows(&c.row_indices));
        prop_assert!(optimality_residual(&a, &cm, &c.middle, &rm) <= 1e-8);
    }

    #[test]
    fn rsvd_cur_indices_are_valid(m in 4usize..20, n in 4usize..20, seed in any::<u64>()) {
        let (a, b, g) = (randn(m, n, seed), randn(m, m + 2, seed ^ 3), randn(n + 1, n, seed ^ 5));
        let k = 1 + (seed as usize) % m.min(n).min(4);
        let r = rsvd_cur(&a, &b, &g, k, Selector::Deim).unwrap();
        for (idx, bound) in [(&r.p, n), (&r.s, m), (&r.p_b, m + 2), (&r.s_g, n + 1)] {
            prop_assert_eq!(idx.len(), k);
            prop_assert_eq!(idx.bound(), bound);
        }
    }
}
