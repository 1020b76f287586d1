use super::qr::HouseholderQr;
use super::triangular::{substitute, Uplo};
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

/// Relative threshold on `|R_ii| / max|R_jj|` below which a least-squares
/// matrix is declared rank deficient.
pub const RANK_TOL: f64 = 1e-12;

/// A QR-factored full-column-rank matrix, reusable across right-hand sides.
#[derive(Clone, Debug)]
pub struct LeastSquares {
    qr: HouseholderQr,
    r: DenseMatrix,
    cols: usize,
}

impl LeastSquares {
    pub fn new(a: &DenseMatrix) -> Result<Self> {
        Self::named(a, "A")
    }

    pub(crate) fn named(a: &DenseMatrix, name: &'static str) -> Result<Self> {
        let (m, n) = a.shape();
        if a.is_empty() {
            return Err(Error::dim("least_squares", "empty matrix"));
        }
        if m < n {
            return Err(Error::RankDeficient {
                matrix: name,
                index: m,
            });
        }
        let qr = HouseholderQr::factor(a.to_col_major(), m, n);
        let diag = qr.r_diag();
        let max = diag.iter().fold(0.0f64, |s, d| s.max(d.abs()));
        if let Some(index) = diag
            .iter()
            .position(|d| d.abs() <= RANK_TOL * max || *d == 0.0)
        {
            return Err(Error::RankDeficient {
                matrix: name,
                index,
            });
        }
        let r = qr.r();
        Ok(Self { qr, r, cols: n })
    }

    fn project(&self, b: &DenseMatrix) -> Result<Vec<f64>> {
        let m = self.qr.rows();
        if b.rows() != m {
            return Err(Error::dim(
                "least_squares",
                format!("{m} rows against a right-hand side with {} rows", b.rows()),
            ));
        }
        let mut cm = b.to_col_major();
        self.qr.apply_qt(&mut cm, b.cols(), m);
        Ok(cm)
    }

    /// `X` minimizing `‖A·X − B‖_F`.
    pub fn solve(&self, b: &DenseMatrix) -> Result<DenseMatrix> {
        let m = self.qr.rows();
        let n = self.cols;
        let cm = self.project(b)?;
        let top = DenseMatrix::from_fn(n, b.cols(), |i, j| cm[j * m + i]);
        Ok(substitute(&self.r, &top, Uplo::Upper))
    }

    /// Residual norms `‖A·x_j − b_j‖₂`, one per column of `B`.
    pub fn residual_norms(&self, b: &DenseMatrix) -> Result<Vec<f64>> {
        let m = self.qr.rows();
        let cm = self.project(b)?;
        Ok((0..b.cols())
            .map(|j| {
                cm[j * m + self.cols..(j + 1) * m]
                    .iter()
                    .map(|v| v * v)
                    .sum::<f64>()
                    .sqrt()
            })
            .collect())
    }
}

/// `X = argmin ‖A·X − B‖_F` through Householder QR of `A`.
pub fn least_squares(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    LeastSquares::new(a)?.solve(b)
}

/// `X = argmin ‖X·A − B‖_F`.
pub fn least_squares_right(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    Ok(LeastSquares::new(&a.transpose())?
        .solve(&b.transpose())?
        .transpose())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_returns_rhs() {
        let b = DenseMatrix::from_rows(&[[1.0, -2.0], [0.5, 7.0]]).unwrap();
        assert!(
            least_squares(&DenseMatrix::identity(2), &b)
                .unwrap()
                .sub(&b)
                .max_abs()
                < 1e-15
        );
    }

    #[test]
    fn mean_of_two_observations() {
        let a = DenseMatrix::from_rows(&[[1.0], [1.0]]).unwrap();
        let b = DenseMatrix::from_rows(&[[1.0], [3.0]]).unwrap();
        let ls = LeastSquares::new(&a).unwrap();
        let x = ls.solve(&b).unwrap();
        assert!((x[(0, 0)] - 2.0).abs() < 1e-15);
        assert!((ls.residual_norms(&b).unwrap()[0] - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn rank_deficient_is_rejected() {
        let a = DenseMatrix::from_rows(&[[1.0, 1.0], [1.0, 1.0]]).unwrap();
        let b = DenseMatrix::zeros(2, 1);
        assert!(matches!(
            least_squares(&a, &b),
            Err(Error::RankDeficient { .. })
        ));
    }

    #[test]
    fn right_variant_solves_xa() {
        let a = DenseMatrix::from_rows(&[[2.0, 0.0, 1.0], [1.0, 3.0, 0.0]]).unwrap();
        let x = DenseMatrix::from_rows(&[[1.0, 2.0], [-1.0, 0.5]]).unwrap();
        let b = x.matmul(&a);
        let got = least_squares_right(&a, &b).unwrap();
        assert!(got.sub(&x).max_abs() < 1e-14);
    }
}
