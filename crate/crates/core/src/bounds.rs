//! A-posteriori error bounds for RSVD-CUR in terms of the restricted SVD.
//!
//! With full QR factorizations `Z = Q_Z·T_Z` and `W = Q_W·T_W` partitioned
//! after column `k`, `T̂` denotes the trailing block column and `T₂₂` its
//! bottom block. The interpolation constants `η` are inverse smallest
//! singular values of the selected `k × k` rows of orthonormal bases.

use serde::{Deserialize, Serialize};

use crate::cur::RsvdCurResult;
use crate::dense::{qr, singular_values, spectral_norm, Pivoting, QrMode};
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::rsvd::RsvdFactors;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorBoundReport {
    pub k: usize,
    pub eta_p: f64,
    pub eta_s: f64,
    pub eta_pb: f64,
    pub eta_sg: f64,
    pub norm_that_z: f64,
    pub norm_tz22: f64,
    pub norm_that_w: f64,
    pub norm_tw22: f64,
    pub alpha_k1: f64,
    pub gamma_k1: f64,
    pub bound_a: f64,
    pub bound_b: f64,
    pub bound_g: f64,
    pub true_err_a: f64,
    pub true_err_b: f64,
    pub true_err_g: f64,
}

/// `‖(Q(idx, :))⁻¹‖₂` for a `k`-column orthonormal `Q`.
pub fn interpolation_constant(q: &DenseMatrix, idx: &[usize], block: &'static str) -> Result<f64> {
    if idx.len() != q.cols() {
        return Err(Error::dim(
            "interpolation_constant",
            format!("{} indices for {} columns", idx.len(), q.cols()),
        ));
    }
    if idx.is_empty() {
        return Ok(1.0);
    }
    let s = singular_values(&q.select_rows(idx))?;
    let smin = s[s.len() - 1];
    if smin <= f64::EPSILON * s[0] || smin == 0.0 {
        return Err(Error::DegenerateSelection { block });
    }
    Ok(1.0 / smin)
}

/// Leading `k` columns of `Q`, then `‖T̂‖` and `‖T₂₂‖` of the `R` factor.
fn trailing_blocks(x: &DenseMatrix, k: usize) -> Result<(DenseMatrix, f64, f64)> {
    let n = x.cols();
    let f = qr(x, QrMode::Full, Pivoting::None)?;
    let qk = f.q.leading_columns(k);
    if k == n {
        return Ok((qk, 0.0, 0.0));
    }
    let t_hat = f.r.block(0..n, k..n);
    let t22 = f.r.block(k..n, k..n);
    Ok((qk, spectral_norm(&t_hat)?, spectral_norm(&t22)?))
}

fn trailing_max(d: &[f64], k: usize) -> f64 {
    d.iter().skip(k).fold(0.0f64, |m, v| m.max(*v))
}

/// Interpolation constants, truncation quantities, bounds and observed
/// spectral-norm errors for an RSVD-CUR built from `factors`.
pub fn error_bound_report(
    a: &DenseMatrix,
    b: &DenseMatrix,
    g: &DenseMatrix,
    result: &RsvdCurResult,
    factors: &RsvdFactors,
) -> Result<ErrorBoundReport> {
    let k = result.k;
    let t = factors.truncate(k)?;
    let (qz, norm_that_z, norm_tz22) = trailing_blocks(&factors.z, k)?;
    let (qw, norm_that_w, norm_tw22) = trailing_blocks(&factors.w, k)?;

    let eta_p = interpolation_constant(&qw, &result.p, "p")?;
    let eta_s = interpolation_constant(&qz, &result.s, "s")?;
    let eta_pb = interpolation_constant(&t.u, &result.p_b, "p_B")?;
    let eta_sg = interpolation_constant(&t.v, &result.s_g, "s_G")?;

    let alpha_k1 = trailing_max(&factors.alpha, k);
    let gamma_k1 = trailing_max(&factors.d_g, k);

    let bound_a = alpha_k1 * (eta_p * norm_that_z * norm_tw22 + eta_s * norm_tz22 * norm_that_w);
    let bound_b = eta_pb * norm_tz22 + eta_s * norm_that_z;
    let bound_g = gamma_k1 * (eta_p * norm_that_w + eta_sg * norm_tw22);

    let err = |x: &DenseMatrix, y: DenseMatrix| spectral_norm(&x.sub(&y));
    Ok(ErrorBoundReport {
        k,
        eta_p,
        eta_s,
        eta_pb,
        eta_sg,
        norm_that_z,
        norm_tz22,
        norm_that_w,
        norm_tw22,
        alpha_k1,
        gamma_k1,
        bound_a,
        bound_b,
        bound_g,
        true_err_a: err(a, result.reconstruct_a(a))?,
        true_err_b: err(b, result.reconstruct_b(b))?,
        true_err_g: err(g, result.reconstruct_g(g))?,
    })
}
