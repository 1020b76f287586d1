//! Variable subset selection for the constrained Gauss–Markov model
//!
//! ```text
//! min ‖y‖² + ‖f‖²   subject to   b = A·x + B·y,   f = G·x
//! ```
//!
//! The fit of a system is the residual norm of the stacked least-squares
//! problem `[A B; G 0]·[x; y] ≈ [b; f]`. The reduced system keeps columns
//! `p` of `A` and `G` and `p_B` of `B`, selected by DEIM on a regularized
//! restricted SVD.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::generators::MatrixGenerator;
use super::rng::{rng_from_seed, standard_normals, stream_seed};
use crate::dense::LeastSquares;
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::rsvd::rsvd_regularized;
use crate::selection::deim;

#[derive(Clone, Debug, PartialEq)]
pub struct GaussMarkovConfig {
    pub m: usize,
    pub n: usize,
    pub l: usize,
    pub d: usize,
    pub gen_a: MatrixGenerator,
    pub gen_b: MatrixGenerator,
    pub gen_g: MatrixGenerator,
    pub trials: usize,
    pub ks: Vec<usize>,
    pub seed: u64,
    /// Weight of the identity blocks appended to `B` and `G`.
    pub mu: f64,
}

impl Default for GaussMarkovConfig {
    fn default() -> Self {
        Self {
            m: 1000,
            n: 100,
            l: 50,
            d: 10,
            gen_a: MatrixGenerator::Randn,
            gen_b: MatrixGenerator::Randn,
            gen_g: MatrixGenerator::Randn,
            trials: 100,
            ks: vec![10, 20, 30],
            seed: 0,
            mu: 1e-8,
        }
    }
}

impl GaussMarkovConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if [self.m, self.n, self.l, self.d].contains(&0) {
            return bad("all dimensions must be positive".into());
        }
        if self.m + self.d < self.n + self.l {
            return bad(
                "the full system [A B; G 0] must have at least as many rows as columns".into(),
            );
        }
        if self.trials == 0 {
            return bad("at least one trial is required".into());
        }
        let kmax = self.n.min(self.l).min(self.m);
        if let Some(k) = self.ks.iter().find(|&&k| k == 0 || k > kmax) {
            return bad(format!("k = {k} must lie in 1..={kmax}"));
        }
        if !(self.mu > 0.0 && self.mu.is_finite()) {
            return bad(format!("mu must be positive, got {}", self.mu));
        }
        for g in [self.gen_a, self.gen_b, self.gen_g] {
            if let MatrixGenerator::Randsvd(kappa) = g {
                if !(kappa >= 1.0 && kappa.is_finite()) {
                    return bad(format!("condition number must be >= 1, got {kappa}"));
                }
            }
        }
        Ok(())
    }
}

/// Mean residuals over all trials at one `k`; `full_residual` repeats on
/// every row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaussMarkovRow {
    pub k: usize,
    pub reduced_residual: f64,
    pub full_residual: f64,
}

pub fn gauss_markov_experiment(cfg: &GaussMarkovConfig) -> Result<Vec<GaussMarkovRow>> {
    cfg.validate()?;
    let per_trial: Vec<(f64, Vec<f64>)> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| gauss_markov_trial(cfg, stream_seed(cfg.seed, t as u64)))
        .collect::<Result<_>>()?;
    let count = per_trial.len() as f64;
    let full = per_trial.iter().map(|t| t.0).sum::<f64>() / count;
    Ok(cfg
        .ks
        .iter()
        .enumerate()
        .map(|(i, &k)| GaussMarkovRow {
            k,
            reduced_residual: per_trial.iter().map(|t| t.1[i]).sum::<f64>() / count,
            full_residual: full,
        })
        .collect())
}

/// Residual norm of `[A B; G 0]·[x; y] ≈ [b; f]`.
pub fn stacked_residual(
    a: &DenseMatrix,
    b: &DenseMatrix,
    g: &DenseMatrix,
    rhs_b: &[f64],
    rhs_f: &[f64],
) -> Result<f64> {
    let zero = DenseMatrix::zeros(g.rows(), b.cols());
    let top = DenseMatrix::hstack(&[a, b]);
    let bottom = DenseMatrix::hstack(&[g, &zero]);
    let system = DenseMatrix::vstack(&[&top, &bottom]);
    let rhs: Vec<f64> = rhs_b.iter().chain(rhs_f).copied().collect();
    Ok(LeastSquares::new(&system)?.residual_norms(&DenseMatrix::column_vector(&rhs))?[0])
}

fn gauss_markov_trial(cfg: &GaussMarkovConfig, seed: u64) -> Result<(f64, Vec<f64>)> {
    let mut rng = rng_from_seed(seed);
    let a = cfg.gen_a.generate(cfg.m, cfg.n, &mut rng)?;
    let b = cfg.gen_b.generate(cfg.m, cfg.l, &mut rng)?;
    let g = cfg.gen_g.generate(cfg.d, cfg.n, &mut rng)?;
    let rhs_b = standard_normals(&mut rng, cfg.m);
    let rhs_f = standard_normals(&mut rng, cfg.d);

    let full = stacked_residual(&a, &b, &g, &rhs_b, &rhs_f)?;
    let reg = rsvd_regularized(&a, &b, &g, cfg.mu)?;
    let reduced = cfg
        .ks
        .iter()
        .map(|&k| {
            let t = reg.factors.truncate(k)?;
            let p = deim(&t.w, None)?;
            let p_b = deim(&t.u, Some(reg.b_cols))?;
            stacked_residual(
                &a.select_columns(&p),
                &b.select_columns(&p_b),
                &g.select_columns(&p),
                &rhs_b,
                &rhs_f,
            )
        })
        .collect::<Result<_>>()?;
    Ok((full, reduced))
}
