//! Two-view feature selection and a nearest-neighbour classifier for
//! scoring the selected features.

use crate::cur::rsvd_cur;
use crate::error::{Error, Result};
use crate::matrix::{DenseMatrix, IndexList};
use crate::selection::Selector;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiviewSelection {
    pub view1_features: IndexList,
    pub view2_features: IndexList,
}

/// Column-wise zero mean and unit sample standard deviation. Constant
/// columns become zero.
pub fn standardize(x: &DenseMatrix) -> DenseMatrix {
    let (rows, cols) = x.shape();
    if rows == 0 {
        return x.clone();
    }
    let mut mean = vec![0.0; cols];
    for i in 0..rows {
        for (m, v) in mean.iter_mut().zip(x.row(i)) {
            *m += v;
        }
    }
    mean.iter_mut().for_each(|m| *m /= rows as f64);
    let mut var = vec![0.0; cols];
    for i in 0..rows {
        for ((s, v), m) in var.iter_mut().zip(x.row(i)).zip(&mean) {
            *s += (v - m) * (v - m);
        }
    }
    let denom = (rows.max(2) - 1) as f64;
    let inv_sd: Vec<f64> = var
        .iter()
        .map(|s| {
            let sd = (s / denom).sqrt();
            if sd > 0.0 {
                1.0 / sd
            } else {
                0.0
            }
        })
        .collect();
    DenseMatrix::from_fn(rows, cols, |i, j| (x.get(i, j) - mean[j]) * inv_sd[j])
}

/// Selects `k` features from each view with the RSVD-CUR of
/// `(V₁ᵀ·V₂, V₁ᵀ, V₂)` on standardized views: row indices of the cross
/// product pick view-1 features and column indices pick view-2 features.
/// The wider view is always placed first.
pub fn multiview_select(
    view1: &DenseMatrix,
    view2: &DenseMatrix,
    k: usize,
    selector: Selector,
) -> Result<MultiviewSelection> {
    if view1.rows() != view2.rows() {
        return Err(Error::dim(
            "multiview_select",
            format!("views have {} and {} samples", view1.rows(), view2.rows()),
        ));
    }
    if view1.cols() < view2.cols() {
        let swapped = multiview_select(view2, view1, k, selector)?;
        return Ok(MultiviewSelection {
            view1_features: swapped.view2_features,
            view2_features: swapped.view1_features,
        });
    }
    if k == 0 || k > view2.cols() {
        return Err(Error::RankOutOfRange {
            k,
            max: view2.cols(),
        });
    }
    let b = standardize(view1);
    let g = standardize(view2);
    let bt = b.transpose();
    let r = rsvd_cur(&bt.matmul(&g), &bt, &g, k, selector)?;
    Ok(MultiviewSelection {
        view1_features: r.s,
        view2_features: r.p,
    })
}

/// `neighbors`-nearest-neighbour labels under Euclidean distance. Distance
/// ties keep the earlier training sample; vote ties go to the smallest
/// label.
pub fn knn_classify(
    train_x: &DenseMatrix,
    train_y: &[usize],
    test_x: &DenseMatrix,
    neighbors: usize,
) -> Result<Vec<usize>> {
    if train_x.rows() == 0 {
        return Err(Error::InvalidConfig("empty training set".into()));
    }
    if train_y.len() != train_x.rows() || test_x.cols() != train_x.cols() {
        return Err(Error::dim(
            "knn_classify",
            "inconsistent training or test dimensions",
        ));
    }
    if neighbors == 0 {
        return Err(Error::InvalidConfig(
            "neighbor count must be at least 1".into(),
        ));
    }
    let nlabels = train_y.iter().max().map_or(0, |m| m + 1);
    let kk = neighbors.min(train_x.rows());
    Ok((0..test_x.rows())
        .map(|t| {
            let q = test_x.row(t);
            let mut dist: Vec<(f64, usize)> = (0..train_x.rows())
                .map(|i| {
                    let d: f64 = train_x
                        .row(i)
                        .iter()
                        .zip(q)
                        .map(|(a, b)| (a - b) * (a - b))
                        .sum();
                    (d, i)
                })
                .collect();
            dist.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
            let mut votes = vec![0usize; nlabels];
            for &(_, i) in &dist[..kk] {
                votes[train_y[i]] += 1;
            }
            let best = *votes.iter().max().expect("at least one label");
            votes
                .iter()
                .position(|&v| v == best)
                .expect("maximum exists")
        })
        .collect())
}
