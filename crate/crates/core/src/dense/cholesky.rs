use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

/// Lower-triangular `L` with `S = L·Lᵀ`.
pub fn cholesky(s: &DenseMatrix) -> Result<DenseMatrix> {
    let n = s.rows();
    if !s.is_square() || n == 0 {
        return Err(Error::dim(
            "cholesky",
            format!("need a nonempty square matrix, got {:?}", s.shape()),
        ));
    }
    let tol = 1e-12 * s.max_abs();
    for i in 0..n {
        for j in 0..i {
            if (s.get(i, j) - s.get(j, i)).abs() > tol {
                return Err(Error::NotSymmetric);
            }
        }
    }
    let mut l = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..=i {
            let (li, lj) = (&l[i * n..i * n + j], &l[j * n..j * n + j]);
            let acc = s.get(i, j) - li.iter().zip(lj).map(|(a, b)| a * b).sum::<f64>();
            if i == j {
                if acc <= 0.0 || !acc.is_finite() {
                    return Err(Error::NotPositiveDefinite { index: i });
                }
                l[i * n + i] = acc.sqrt();
            } else {
                l[i * n + j] = acc / l[j * n + j];
            }
        }
    }
    Ok(DenseMatrix::from_vec(n, n, l))
}
