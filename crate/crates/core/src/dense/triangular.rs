use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Uplo {
    Lower,
    Upper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Solve `T·X = B`.
    Left,
    /// Solve `X·T = B`.
    Right,
}

/// Forward/back substitution. Only the `uplo` triangle of `t` is read; a
/// diagonal entry below `1e-12·max|diag|` is reported as singular.
pub fn solve_triangular(
    t: &DenseMatrix,
    b: &DenseMatrix,
    uplo: Uplo,
    side: Side,
) -> Result<DenseMatrix> {
    let n = t.rows();
    if !t.is_square() {
        return Err(Error::dim(
            "solve_triangular",
            "triangular factor must be square",
        ));
    }
    let rhs_dim = match side {
        Side::Left => b.rows(),
        Side::Right => b.cols(),
    };
    if rhs_dim != n {
        return Err(Error::dim(
            "solve_triangular",
            format!("{n}x{n} factor against right-hand side {:?}", b.shape()),
        ));
    }
    check_diagonal(t)?;
    Ok(match side {
        Side::Left => substitute(t, b, uplo),
        Side::Right => {
            let flipped = match uplo {
                Uplo::Lower => Uplo::Upper,
                Uplo::Upper => Uplo::Lower,
            };
            substitute(&t.transpose(), &b.transpose(), flipped).transpose()
        }
    })
}

pub(crate) fn check_diagonal(t: &DenseMatrix) -> Result<()> {
    let diag = t.diagonal();
    let max = diag.iter().fold(0.0f64, |m, d| m.max(d.abs()));
    match diag
        .iter()
        .position(|d| d.abs() <= 1e-12 * max || *d == 0.0)
    {
        Some(index) => Err(Error::SingularTriangular { index }),
        None => Ok(()),
    }
}

/// Row-oriented substitution for `T·X = B`; assumes a nonsingular diagonal.
pub(crate) fn substitute(t: &DenseMatrix, b: &DenseMatrix, uplo: Uplo) -> DenseMatrix {
    let n = t.rows();
    let p = b.cols();
    let mut x = b.clone();
    let xs = x.data_mut();
    let order: Vec<usize> = match uplo {
        Uplo::Lower => (0..n).collect(),
        Uplo::Upper => (0..n).rev().collect(),
    };
    for &i in &order {
        let solved = match uplo {
            Uplo::Lower => 0..i,
            Uplo::Upper => i + 1..n,
        };
        for k in solved {
            let f = t.get(i, k);
            if f == 0.0 {
                continue;
            }
            let (src, dst) = if k < i {
                let (lo, hi) = xs.split_at_mut(i * p);
                (&lo[k * p..(k + 1) * p], &mut hi[..p])
            } else {
                let (lo, hi) = xs.split_at_mut(k * p);
                (&hi[..p], &mut lo[i * p..(i + 1) * p])
            };
            dst.iter_mut().zip(src).for_each(|(d, s)| *d -= f * s);
        }
        let inv = 1.0 / t.get(i, i);
        xs[i * p..(i + 1) * p].iter_mut().for_each(|v| *v *= inv);
    }
    x
}
