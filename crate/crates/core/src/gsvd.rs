//! Van Loan-form generalized SVD of a matrix pair `(A, G)` sharing a column
//! dimension:
//!
//! ```text
//! A·X = U·diag(γ),   G·X = V·[diag(σ) | 0],   γᵢ² + σᵢ² = 1,
//! ```
//!
//! with `U`, `V` orthonormal columns, `X` nonsingular and `σ` nonincreasing.
//!
//! The pair is handled through the stacked matrix `[A; G]`: a thin QR of
//! the column-equilibrated stack gives `[Q_A; Q_G]·R`, the SVD of `Q_G`
//! yields `σ` and the rotation `Ẑ`, and `X = D⁻¹·R⁻¹·Ẑ`. Column scaling of
//! the stack changes only `X`, so the rank test on `R` is scale invariant.

use crate::dense::qr::{complete_orthonormal, HouseholderQr};
use crate::dense::{svd, SvdMode, RANK_TOL};
use crate::error::{Error, Result};
use crate::matrix::{gemm, DenseMatrix};

/// Generalized singular value factors of a pair `(A, G)`, `A` being
/// `p × r` and `G` being `q × r`.
#[derive(Clone, Debug)]
pub struct GsvdFactors {
    /// `p × r`, orthonormal columns.
    pub u: DenseMatrix,
    /// `q × min(q, r)`, orthonormal columns.
    pub v: DenseMatrix,
    /// `r × r`, nonsingular.
    pub x: DenseMatrix,
    /// `X⁻ᵀ`, so that `A = U·diag(γ)·Yᵀ` and `G = V·[diag(σ) | 0]·Yᵀ`.
    pub y: DenseMatrix,
    pub gamma: Vec<f64>,
    /// Nonincreasing; entries past `min(q, r)` are exactly zero.
    pub sigma: Vec<f64>,
}

impl GsvdFactors {
    /// Threshold below which a `γᵢ` is treated as zero.
    pub fn gamma_tol(r: usize) -> f64 {
        1e-12 * (r as f64).sqrt()
    }

    /// `U·diag(γ)·Yᵀ`.
    pub fn reconstruct_a(&self) -> DenseMatrix {
        self.u.scale_columns(&self.gamma).matmul_t(&self.y)
    }

    /// `V·[diag(σ) | 0]·Yᵀ`.
    pub fn reconstruct_g(&self) -> DenseMatrix {
        let k = self.v.cols();
        self.v
            .scale_columns(&self.sigma[..k])
            .matmul_t(&self.y.leading_columns(k))
    }
}

/// GSVD of `(A, G)` through the stacked QR. Requires `p ≥ r` and a stack
/// `[A; G]` of full column rank.
pub fn gsvd_stacked(a: &DenseMatrix, g: &DenseMatrix) -> Result<GsvdFactors> {
    let core = gsvd_core(a, g, true, "[A; G]")?;
    Ok(GsvdFactors {
        u: core.u,
        v: core.v,
        x: core.x.expect("requested"),
        y: core.y,
        gamma: core.gamma,
        sigma: core.sigma,
    })
}

pub(crate) struct GsvdCore {
    pub u: DenseMatrix,
    pub v: DenseMatrix,
    pub x: Option<DenseMatrix>,
    pub y: DenseMatrix,
    pub gamma: Vec<f64>,
    pub sigma: Vec<f64>,
}

pub(crate) fn gsvd_core(
    a: &DenseMatrix,
    g: &DenseMatrix,
    want_x: bool,
    stack_name: &'static str,
) -> Result<GsvdCore> {
    let (p, r) = a.shape();
    let q = g.rows();
    if g.cols() != r {
        return Err(Error::dim(
            "gsvd",
            format!("A is {p}x{r} but G is {q}x{}", g.cols()),
        ));
    }
    if r == 0 || p < r {
        return Err(Error::dim(
            "gsvd",
            format!("need rows(A) >= cols(A) >= 1, got {p}x{r}"),
        ));
    }
    let h = p + q;

    // Column-equilibrated stack, column-major.
    let mut d = vec![0.0; r];
    let mut s = vec![0.0; h * r];
    for j in 0..r {
        let col = &mut s[j * h..(j + 1) * h];
        for (i, c) in col.iter_mut().enumerate() {
            *c = if i < p { a.get(i, j) } else { g.get(i - p, j) };
        }
        let norm = col.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::RankDeficient {
                matrix: stack_name,
                index: j,
            });
        }
        d[j] = norm;
        col.iter_mut().for_each(|v| *v /= norm);
    }
    let f = HouseholderQr::factor(s, h, r);
    let rdiag = f.r_diag();
    let rmax = rdiag.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if let Some(index) = rdiag.iter().position(|v| v.abs() <= RANK_TOL * rmax) {
        return Err(Error::RankDeficient {
            matrix: stack_name,
            index,
        });
    }
    let rmat = f.r();

    // Q_G = rows p.. of the thin Q, obtained as the top of Qᵀ·[0; I_q].
    let kq = q.min(r);
    let (sigma_head, vg, zhat) = if q == 0 {
        (
            Vec::new(),
            DenseMatrix::zeros(0, 0),
            DenseMatrix::identity(r),
        )
    } else {
        let mut e = vec![0.0; h * q];
        for i in 0..q {
            e[i * h + p + i] = 1.0;
        }
        f.apply_qt(&mut e, q, h);
        let qg = DenseMatrix::from_fn(q, r, |i, j| e[i * h + j]);
        let dec = svd(&qg, SvdMode::FullRight)?;
        let sig: Vec<f64> = dec.s.iter().map(|v| v.min(1.0)).collect();
        (sig, dec.u, dec.v)
    };
    let mut sigma = vec![0.0; r];
    sigma[..kq].copy_from_slice(&sigma_head[..kq]);

    // [Q_A Ẑ; Q_G Ẑ] = Q·[Ẑ; 0].
    let mut m = vec![0.0; h * r];
    for j in 0..r {
        for i in 0..r {
            m[j * h + i] = zhat.get(i, j);
        }
    }
    f.apply_q(&mut m, r, h);

    let mut gamma = vec![0.0; r];
    let mut rho = vec![1.0; r];
    for j in 0..r {
        let graw = m[j * h..j * h + p]
            .iter()
            .map(|v| v * v)
            .sum::<f64>()
            .sqrt();
        rho[j] = graw.hypot(sigma[j]);
        gamma[j] = graw / rho[j];
        sigma[j] /= rho[j];
    }

    let tol = GsvdFactors::gamma_tol(r);
    let good: Vec<usize> = (0..r).filter(|&j| gamma[j] > tol).collect();
    for j in 0..r {
        if gamma[j] <= tol {
            gamma[j] = 0.0;
            sigma[j] = 1.0;
        }
    }
    let ugood = DenseMatrix::from_fn(p, good.len(), |i, c| {
        let j = good[c];
        m[j * h + i] / (gamma[j] * rho[j])
    });
    let good_gamma: Vec<f64> = good.iter().map(|&j| gamma[j]).collect();
    let ugood = reorthonormalize(ugood, &good_gamma);
    let u = if good.len() == r {
        ugood
    } else {
        let full = complete_orthonormal(&ugood, r);
        let mut next_extra = good.len();
        let mut next_good = 0;
        let mut cols = Vec::with_capacity(r);
        for j in 0..r {
            if next_good < good.len() && good[next_good] == j {
                cols.push(next_good);
                next_good += 1;
            } else {
                cols.push(next_extra);
                next_extra += 1;
            }
        }
        full.select_columns(&cols)
    };

    // Y = D·Rᵀ·Ẑ·diag(ρ).
    let mut y = DenseMatrix::zeros(r, r);
    gemm(1.0, rmat.view().t(), zhat.view(), 0.0, y.view_mut());
    let y = y.scale_rows(&d).scale_columns(&rho);
    let x = want_x.then(|| {
        let inv_rho: Vec<f64> = rho.iter().map(|v| 1.0 / v).collect();
        let inv_d: Vec<f64> = d.iter().map(|v| 1.0 / v).collect();
        crate::dense::solve_triangular(
            &rmat,
            &zhat,
            crate::dense::Uplo::Upper,
            crate::dense::Side::Left,
        )
        .expect("diagonal checked above")
        .scale_rows(&inv_d)
        .scale_columns(&inv_rho)
    });

    let mut out = GsvdCore {
        u,
        v: vg,
        x,
        y,
        gamma,
        sigma,
    };
    enforce_order(&mut out, kq);
    Ok(out)
}

/// Restores `σ` nonincreasing after normalization (only roundoff-level
/// swaps are possible).
fn enforce_order(f: &mut GsvdCore, kq: usize) {
    let r = f.sigma.len();
    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by(|&i, &j| f.sigma[j].total_cmp(&f.sigma[i]).then(i.cmp(&j)));
    if order.iter().enumerate().all(|(i, &j)| i == j) {
        return;
    }
    f.sigma = order.iter().map(|&j| f.sigma[j]).collect();
    f.gamma = order.iter().map(|&j| f.gamma[j]).collect();
    f.u = f.u.select_columns(&order);
    f.y = f.y.select_columns(&order);
    f.x = f.x.as_ref().map(|x| x.select_columns(&order));
    // V pairs with the leading kq columns; a permutation confined to them.
    if order[..kq].iter().all(|&j| j < kq) {
        f.v = f.v.select_columns(&order[..kq]);
    }
}

/// A column with small `γ` is a quotient by `γ` and carries a direction
/// error of order `ε/γ`. Such columns are projected against the accurate
/// ones and orthonormalized among themselves by decreasing `γ`; the change
/// in `U·diag(γ)` stays at rounding level.
fn reorthonormalize(u: DenseMatrix, gamma: &[f64]) -> DenseMatrix {
    const WEAK: f64 = 0.5;
    let mut weak: Vec<usize> = (0..gamma.len()).filter(|&c| gamma[c] < WEAK).collect();
    if weak.is_empty() {
        return u;
    }
    weak.sort_by(|&x, &y| gamma[y].total_cmp(&gamma[x]));
    let strong: Vec<usize> = (0..gamma.len()).filter(|&c| gamma[c] >= WEAK).collect();
    let s = u.select_columns(&strong);
    let mut w = u.select_columns(&weak);
    if !strong.is_empty() {
        for _ in 0..2 {
            w = w.sub(&s.matmul(&s.t_matmul(&w)));
        }
    }
    let (rows, cols) = w.shape();
    let f = HouseholderQr::factor(w.to_col_major(), rows, cols);
    let signs: Vec<f64> = f
        .r_diag()
        .iter()
        .map(|d| if *d < 0.0 { -1.0 } else { 1.0 })
        .collect();
    let q = f.thin_q().scale_columns(&signs);
    let mut out = u;
    let total = out.cols();
    let data = out.data_mut();
    for (c, &col) in weak.iter().enumerate() {
        for i in 0..rows {
            data[i * total + col] = q.get(i, c);
        }
    }
    out
}
