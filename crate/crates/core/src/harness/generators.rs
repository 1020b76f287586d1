//! Random test problems and structured covariance factors.

use std::str::FromStr;

use rand::seq::index::sample;
use rand::Rng;

use super::rng::{rng_from_seed, standard_normals, HarnessRng};
use crate::dense::{qr, spectral_norm, Pivoting, QrMode};
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CovarianceKind {
    CompoundSymmetry,
    Ar1,
}

/// A homogeneous covariance structure with variance `nu²` and correlation
/// `xi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CovarianceSpec {
    pub kind: CovarianceKind,
    pub size: usize,
    pub nu: f64,
    pub xi: f64,
}

impl CovarianceSpec {
    pub fn compound_symmetry(size: usize, nu: f64, xi: f64) -> Self {
        Self {
            kind: CovarianceKind::CompoundSymmetry,
            size,
            nu,
            xi,
        }
    }

    pub fn ar1(size: usize, nu: f64, xi: f64) -> Self {
        Self {
            kind: CovarianceKind::Ar1,
            size,
            nu,
            xi,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.xi > -1.0 && self.xi < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "correlation must lie in (-1, 1), got {}",
                self.xi
            )));
        }
        if !(self.nu > 0.0 && self.nu.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "nu must be positive, got {}",
                self.nu
            )));
        }
        if self.size == 0 {
            return Err(Error::InvalidConfig(
                "covariance size must be positive".into(),
            ));
        }
        Ok(())
    }

    pub fn matrix(&self) -> Result<DenseMatrix> {
        match self.kind {
            CovarianceKind::CompoundSymmetry => cs_covariance(self),
            CovarianceKind::Ar1 => ar1_covariance(self),
        }
    }
}

/// `ν²` on the diagonal, `ν²ξ` elsewhere.
pub fn cs_covariance(spec: &CovarianceSpec) -> Result<DenseMatrix> {
    spec.validate()?;
    let v = spec.nu * spec.nu;
    Ok(DenseMatrix::from_fn(spec.size, spec.size, |i, j| {
        if i == j {
            v
        } else {
            v * spec.xi
        }
    }))
}

/// Entry `(i, j)` is `ν²·ξ^|i−j|`.
pub fn ar1_covariance(spec: &CovarianceSpec) -> Result<DenseMatrix> {
    spec.validate()?;
    let v = spec.nu * spec.nu;
    let powers: Vec<f64> = (0..spec.size)
        .scan(1.0, |p, _| {
            let cur = *p;
            *p *= spec.xi;
            Some(cur)
        })
        .collect();
    Ok(DenseMatrix::from_fn(spec.size, spec.size, |i, j| {
        v * powers[i.abs_diff(j)]
    }))
}

/// How a random matrix of a given shape is drawn.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MatrixGenerator {
    Randn,
    /// Haar singular vectors with geometrically spaced singular values from
    /// 1 down to `1/κ`.
    Randsvd(f64),
}

impl MatrixGenerator {
    pub fn generate(&self, rows: usize, cols: usize, rng: &mut HarnessRng) -> Result<DenseMatrix> {
        match *self {
            MatrixGenerator::Randn => Ok(gaussian_from(rows, cols, rng)),
            MatrixGenerator::Randsvd(kappa) => randsvd_from(rows, cols, kappa, rng),
        }
    }
}

impl FromStr for MatrixGenerator {
    type Err = Error;

    /// `randn` or `randsvd:<kappa>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        if s == "randn" {
            return Ok(MatrixGenerator::Randn);
        }
        if let Some(k) = s.strip_prefix("randsvd:") {
            let kappa: f64 = k
                .parse()
                .map_err(|_| Error::InvalidConfig(format!("bad condition number `{k}`")))?;
            if !(kappa >= 1.0 && kappa.is_finite()) {
                return Err(Error::InvalidConfig(format!(
                    "condition number must be >= 1, got {kappa}"
                )));
            }
            return Ok(MatrixGenerator::Randsvd(kappa));
        }
        Err(Error::InvalidConfig(format!(
            "unknown generator `{s}` (expected randn or randsvd:K)"
        )))
    }
}

impl std::fmt::Display for MatrixGenerator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MatrixGenerator::Randn => write!(f, "randn"),
            MatrixGenerator::Randsvd(k) => write!(f, "randsvd:{k}"),
        }
    }
}

/// i.i.d. standard normal entries.
pub fn gaussian_matrix(rows: usize, cols: usize, seed: u64) -> DenseMatrix {
    gaussian_from(rows, cols, &mut rng_from_seed(seed))
}

pub(crate) fn gaussian_from(rows: usize, cols: usize, rng: &mut HarnessRng) -> DenseMatrix {
    DenseMatrix::from_vec(rows, cols, standard_normals(rng, rows * cols))
}

/// `Σⱼ wⱼ·xⱼ·yⱼᵀ` with `wⱼ = 2/j` for `j ≤ 10` and `1/j` afterwards.
///
/// Each factor vector has exactly `max(1, round(density·len))` nonzero
/// entries at distinct uniformly chosen positions, with values uniform in
/// `[0, 1)`.
pub fn sparse_nonneg_lowrank(
    m: usize,
    n: usize,
    rank: usize,
    density: f64,
    seed: u64,
) -> Result<DenseMatrix> {
    if rank > m.min(n) {
        return Err(Error::InvalidConfig(format!(
            "rank {rank} exceeds min({m}, {n})"
        )));
    }
    if !(density > 0.0 && density <= 1.0) {
        return Err(Error::InvalidConfig(format!(
            "density must lie in (0, 1], got {density}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut x = DenseMatrix::zeros(m, rank);
    let mut y = DenseMatrix::zeros(n, rank);
    for j in 0..rank {
        let w = if j < 10 { 2.0 } else { 1.0 } / (j + 1) as f64;
        fill_sparse_column(&mut x, j, density, 1.0, &mut rng);
        fill_sparse_column(&mut y, j, density, w, &mut rng);
    }
    Ok(x.matmul_t(&y))
}

fn fill_sparse_column(
    x: &mut DenseMatrix,
    j: usize,
    density: f64,
    scale: f64,
    rng: &mut HarnessRng,
) {
    let len = x.rows();
    let count = ((density * len as f64).round() as usize).clamp(1, len);
    let cols = x.cols();
    let data = x.data_mut();
    for i in sample(rng, len, count).into_iter() {
        data[i * cols + j] = scale * rng.gen::<f64>();
    }
}

/// `n × k` matrix with Haar-distributed orthonormal columns: the `Q` factor
/// of a Gaussian matrix with the signs of `R`'s diagonal moved into `Q`.
pub(crate) fn haar_stiefel(n: usize, k: usize, rng: &mut HarnessRng) -> Result<DenseMatrix> {
    let f = qr(&gaussian_from(n, k, rng), QrMode::Thin, Pivoting::None)?;
    let signs: Vec<f64> =
        f.r.diagonal()
            .iter()
            .map(|d| if *d < 0.0 { -1.0 } else { 1.0 })
            .collect();
    Ok(f.q.scale_columns(&signs))
}

/// Haar-distributed orthogonal `n × n` matrix.
pub fn haar_orthogonal(n: usize, seed: u64) -> Result<DenseMatrix> {
    haar_stiefel(n, n, &mut rng_from_seed(seed))
}

/// `U·diag(σ)·Vᵀ` with Haar `U`, `V` and `σᵢ = κ^(−i/(r−1))`, `r = min(rows, cols)`.
pub fn randsvd_matrix(rows: usize, cols: usize, kappa: f64, seed: u64) -> Result<DenseMatrix> {
    randsvd_from(rows, cols, kappa, &mut rng_from_seed(seed))
}

pub(crate) fn randsvd_from(
    rows: usize,
    cols: usize,
    kappa: f64,
    rng: &mut HarnessRng,
) -> Result<DenseMatrix> {
    if !(kappa >= 1.0 && kappa.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "condition number must be >= 1, got {kappa}"
        )));
    }
    let r = rows.min(cols);
    let u = haar_stiefel(rows, r, rng)?;
    let v = haar_stiefel(cols, r, rng)?;
    let sigma: Vec<f64> = (0..r)
        .map(|i| {
            if r == 1 {
                1.0
            } else {
                kappa.powf(-(i as f64) / (r - 1) as f64)
            }
        })
        .collect();
    Ok(u.scale_columns(&sigma).matmul_t(&v))
}

/// `A + ε·(‖A‖/‖B·F·G‖)·B·F·G` with Gaussian `F`, spectral norms throughout.
pub fn perturb(
    a: &DenseMatrix,
    b: &DenseMatrix,
    g: &DenseMatrix,
    eps: f64,
    seed: u64,
) -> Result<DenseMatrix> {
    if b.rows() != a.rows() || g.cols() != a.cols() {
        return Err(Error::dim(
            "perturb",
            "B must have m rows and G must have n columns",
        ));
    }
    if eps == 0.0 {
        return Ok(a.clone());
    }
    let na = if a.is_empty() { 0.0 } else { spectral_norm(a)? };
    if na == 0.0 {
        return Err(Error::DegenerateScale);
    }
    let f = gaussian_matrix(b.cols(), g.rows(), seed);
    let e = b.matmul(&f).matmul(g);
    let ne = spectral_norm(&e)?;
    if ne == 0.0 {
        return Err(Error::DegenerateScale);
    }
    Ok(a.add(&e.scale(eps * na / ne)))
}

/// Multiplies every off-diagonal entry of a triangular factor by an
/// independent uniform draw from `[0.9, 1.1]`; the diagonal is kept.
pub fn inexact_cholesky(l: &DenseMatrix, seed: u64) -> DenseMatrix {
    let mut rng = rng_from_seed(seed);
    DenseMatrix::from_fn(l.rows(), l.cols(), |i, j| {
        let v = l.get(i, j);
        if i == j || v == 0.0 {
            v
        } else {
            v * rng.gen_range(0.9..=1.1)
        }
    })
}
