//! Singular value decomposition by QR-preconditioned one-sided Jacobi.

use super::qr::{complete_orthonormal, HouseholderQr};
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

const MAX_SWEEPS: usize = 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SvdMode {
    /// `U` is `m × r`, `V` is `n × r` with `r = min(m, n)`.
    Thin,
    /// As `Thin`, but `V` is completed to a square `n × n` orthogonal matrix.
    FullRight,
}

/// `A = U·diag(s)·Vᵀ` with `s` nonincreasing.
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: DenseMatrix,
    pub s: Vec<f64>,
    pub v: DenseMatrix,
}

pub fn svd(a: &DenseMatrix, mode: SvdMode) -> Result<Svd> {
    if a.is_empty() {
        return Err(Error::dim("svd", "empty matrix"));
    }
    let (m, n) = a.shape();
    let mut out = if m >= n {
        tall_svd(a)?
    } else {
        let t = tall_svd(&a.transpose())?;
        Svd {
            u: t.v,
            s: t.s,
            v: t.u,
        }
    };
    if mode == SvdMode::FullRight && out.v.cols() < n {
        out.v = complete_orthonormal(&out.v, n);
    }
    Ok(out)
}

/// Singular values only, nonincreasing.
pub fn singular_values(a: &DenseMatrix) -> Result<Vec<f64>> {
    if a.is_empty() {
        return Err(Error::dim("singular_values", "empty matrix"));
    }
    let a = if a.rows() >= a.cols() {
        a.clone()
    } else {
        a.transpose()
    };
    let (m, n) = a.shape();
    let r = HouseholderQr::factor(a.to_col_major(), m, n).r();
    let mut g = r.to_col_major();
    jacobi(&mut g, n, None)?;
    let mut s: Vec<f64> = (0..n).map(|j| norm(&g[j * n..(j + 1) * n])).collect();
    s.sort_by(|x, y| y.total_cmp(x));
    Ok(s)
}

/// Largest singular value.
pub fn spectral_norm(a: &DenseMatrix) -> Result<f64> {
    Ok(singular_values(a)?[0])
}

fn tall_svd(a: &DenseMatrix) -> Result<Svd> {
    let (m, n) = a.shape();
    let f = HouseholderQr::factor(a.to_col_major(), m, n);
    let mut g = f.r().to_col_major();
    let mut v = vec![0.0; n * n];
    for j in 0..n {
        v[j * n + j] = 1.0;
    }
    jacobi(&mut g, n, Some(&mut v))?;

    let sigma: Vec<f64> = (0..n).map(|j| norm(&g[j * n..(j + 1) * n])).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| sigma[y].total_cmp(&sigma[x]).then(x.cmp(&y)));

    let s: Vec<f64> = order.iter().map(|&j| sigma[j]).collect();
    let nonzero = s.iter().take_while(|&&x| x > f64::MIN_POSITIVE).count();
    // Left vectors of R for the nonzero part, completed orthonormally.
    let ur = DenseMatrix::from_fn(n, nonzero, |i, c| {
        let j = order[c];
        g[j * n + i] / sigma[j]
    });
    let ur = complete_orthonormal(&ur, n);
    let mut u_cm = vec![0.0; m * n];
    for j in 0..n {
        for i in 0..n {
            u_cm[j * m + i] = ur.get(i, j);
        }
    }
    f.apply_q(&mut u_cm, n, m);
    let u = DenseMatrix::from_col_major(m, n, &u_cm);
    let v = DenseMatrix::from_fn(n, n, |i, c| v[order[c] * n + i]);
    Ok(Svd { u, s, v })
}

fn norm(x: &[f64]) -> f64 {
    dot(x, x).sqrt()
}

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// One-sided Jacobi on the columns of the column-major `n × n` matrix `g`,
/// accumulating the rotations into `v` when given.
fn jacobi(g: &mut [f64], n: usize, mut v: Option<&mut [f64]>) -> Result<()> {
    let tol = 4.0 * f64::EPSILON * (n as f64).sqrt();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (gp, gq) = column_pair(g, n, p, q);
                let a = dot(gp, gp);
                let b = dot(gq, gq);
                let c = dot(gp, gq);
                if a == 0.0 || b == 0.0 || c.abs() <= tol * (a * b).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (b - a) / (2.0 * c);
                let t = 1.0f64.copysign(zeta) / (zeta.abs() + zeta.hypot(1.0));
                let cs = 1.0 / t.hypot(1.0);
                let sn = cs * t;
                rotate(gp, gq, cs, sn);
                if let Some(v) = v.as_deref_mut() {
                    let (vp, vq) = column_pair(v, n, p, q);
                    rotate(vp, vq, cs, sn);
                }
            }
        }
        if !rotated {
            return Ok(());
        }
    }
    Err(Error::NoConvergence { sweeps: MAX_SWEEPS })
}

fn column_pair(g: &mut [f64], n: usize, p: usize, q: usize) -> (&mut [f64], &mut [f64]) {
    let (left, right) = g.split_at_mut(q * n);
    (&mut left[p * n..(p + 1) * n], &mut right[..n])
}

fn rotate(x: &mut [f64], y: &mut [f64], c: f64, s: f64) {
    for (a, b) in x.iter_mut().zip(y.iter_mut()) {
        let (xa, yb) = (*a, *b);
        *a = c * xa - s * yb;
        *b = s * xa + c * yb;
    }
}
