//! Recovery of a sparse low-rank matrix from an observation polluted by
//! correlated noise `B·F·G`, comparing SVD/CUR of the observation with the
//! restricted SVD and RSVD-CUR of `(A_E, B, G)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::generators::{inexact_cholesky, perturb, sparse_nonneg_lowrank, CovarianceSpec};
use super::rng::stream_seed;
use crate::cur::middle_matrix;
use crate::dense::{cholesky, spectral_norm, svd, SvdMode};
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::rsvd::rsvd;
use crate::selection::Selector;

#[derive(Clone, Debug, PartialEq)]
pub struct NoiseRecoveryConfig {
    pub m: usize,
    pub n: usize,
    pub rank: usize,
    pub eps: f64,
    /// Nonzero fraction of each sparse factor vector.
    pub density: f64,
    pub ks: Vec<usize>,
    pub seeds: Vec<u64>,
    /// Row covariance `BᵀB`; `B` is its upper triangular Cholesky factor.
    pub b_cov: CovarianceSpec,
    /// Column covariance `GᵀG`, factored the same way.
    pub g_cov: CovarianceSpec,
    pub selector: Selector,
    /// Hand perturbed factors to the RSVD while the noise uses exact ones.
    pub inexact: bool,
}

impl NoiseRecoveryConfig {
    /// `m = 1000`, `n = 100`, rank 30, CS(ν=2, ξ=0.25) rows, AR(1)(ν=1,
    /// ξ=0.99) columns, five seeds, `k = 1..=30`.
    pub fn desk_scale(eps: f64) -> Self {
        Self::with_dims(1000, 100, 30, eps)
    }

    /// The full-size problem: `m = 10000`, `n = 1000`, rank 100, ten seeds.
    pub fn full_scale(eps: f64) -> Self {
        let mut cfg = Self::with_dims(10000, 1000, 100, eps);
        cfg.seeds = (0..10).collect();
        cfg
    }

    fn with_dims(m: usize, n: usize, rank: usize, eps: f64) -> Self {
        Self {
            m,
            n,
            rank,
            eps,
            density: 0.025,
            ks: (1..=30.min(n)).collect(),
            seeds: (0..5).collect(),
            b_cov: CovarianceSpec::compound_symmetry(m, 2.0, 0.25),
            g_cov: CovarianceSpec::ar1(n, 1.0, 0.99),
            selector: Selector::Deim,
            inexact: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if !(self.eps > 0.0 && self.eps.is_finite()) {
            return bad(format!("noise level must be positive, got {}", self.eps));
        }
        if self.m < self.n || self.n == 0 {
            return bad(format!(
                "need m >= n >= 1, got m = {}, n = {}",
                self.m, self.n
            ));
        }
        if self.rank == 0 || self.rank > self.n {
            return bad(format!("rank {} must lie in 1..={}", self.rank, self.n));
        }
        if let Some(k) = self.ks.iter().find(|&&k| k == 0 || k > self.n) {
            return bad(format!("k = {k} must lie in 1..={}", self.n));
        }
        if self.seeds.is_empty() {
            return bad("at least one seed is required".into());
        }
        if self.b_cov.size != self.m || self.g_cov.size != self.n {
            return bad("covariance sizes must equal m and n".into());
        }
        self.b_cov.validate()?;
        self.g_cov.validate()
    }
}

/// Mean relative spectral errors `‖A − Ã_k‖/‖A‖` at one `k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseRecoveryRow {
    pub k: usize,
    pub svd_err: f64,
    pub cur_err: f64,
    pub rsvd_err: f64,
    pub rsvdcur_err: f64,
}

/// Runs every seed (in parallel) and averages the four errors per `k`.
pub fn noise_recovery_experiment(cfg: &NoiseRecoveryConfig) -> Result<Vec<NoiseRecoveryRow>> {
    cfg.validate()?;
    let b = cholesky(&cfg.b_cov.matrix()?)?.transpose();
    let g = cholesky(&cfg.g_cov.matrix()?)?.transpose();
    let per_seed: Vec<Vec<[f64; 4]>> = cfg
        .seeds
        .par_iter()
        .map(|&seed| recovery_trial(cfg, &b, &g, seed))
        .collect::<Result<_>>()?;
    let count = per_seed.len() as f64;
    Ok(cfg
        .ks
        .iter()
        .enumerate()
        .map(|(i, &k)| {
            let mut sum = [0.0; 4];
            for trial in &per_seed {
                for (s, v) in sum.iter_mut().zip(trial[i]) {
                    *s += v;
                }
            }
            NoiseRecoveryRow {
                k,
                svd_err: sum[0] / count,
                cur_err: sum[1] / count,
                rsvd_err: sum[2] / count,
                rsvdcur_err: sum[3] / count,
            }
        })
        .collect())
}

fn recovery_trial(
    cfg: &NoiseRecoveryConfig,
    b: &DenseMatrix,
    g: &DenseMatrix,
    seed: u64,
) -> Result<Vec<[f64; 4]>> {
    let a = sparse_nonneg_lowrank(cfg.m, cfg.n, cfg.rank, cfg.density, stream_seed(seed, 0))?;
    let a_e = perturb(&a, b, g, cfg.eps, stream_seed(seed, 1))?;
    let (b_used, g_used) = if cfg.inexact {
        (
            inexact_cholesky(b, stream_seed(seed, 2)),
            inexact_cholesky(g, stream_seed(seed, 3)),
        )
    } else {
        (b.clone(), g.clone())
    };
    let norm_a = spectral_norm(&a)?;
    let rel = |approx: DenseMatrix| -> Result<f64> { Ok(spectral_norm(&a.sub(&approx))? / norm_a) };
    let cur_approx = |cols: &[usize], rows: &[usize]| -> Result<DenseMatrix> {
        let c = a_e.select_columns(cols);
        let r = a_e.select_rows(rows);
        Ok(c.matmul(&middle_matrix(&a_e, &c, &r)?).matmul(&r))
    };

    let sv = svd(&a_e, SvdMode::Thin)?;
    let f = rsvd(&a_e, &b_used, &g_used)?;
    cfg.ks
        .iter()
        .map(|&k| {
            let uk = sv.u.leading_columns(k);
            let vk = sv.v.leading_columns(k);
            let svd_err = rel(uk.scale_columns(&sv.s[..k]).matmul_t(&vk))?;
            let cur_err = rel(cur_approx(
                &cfg.selector.select(&vk)?,
                &cfg.selector.select(&uk)?,
            )?)?;
            let t = f.truncate(k)?;
            let rsvd_err = rel(t.a_k())?;
            let rsvdcur_err = rel(cur_approx(
                &cfg.selector.select(&t.w)?,
                &cfg.selector.select(&t.z)?,
            )?)?;
            Ok([svd_err, cur_err, rsvd_err, rsvdcur_err])
        })
        .collect()
}
