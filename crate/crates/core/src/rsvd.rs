//! Restricted SVD of a triplet `(A, B, G)`, `A` being `m × n`, `B` being
//! `m × ℓ` and `G` being `d × n`:
//!
//! ```text
//! A = Z·D_A·Wᵀ,   B = Z·D_B·Uᵀ,   G = V·D_G·Wᵀ
//! ```
//!
//! computed as two chained generalized SVDs. The first splits `(A, G)`; the
//! second splits the transposed pair `(Bᵀ·U₁, [Σ₁⁻¹Γ₁ | 0])`. The free
//! scaling of `D_G` is fixed to `γᵢ = σᵢ/√(σᵢ²+1)`, which makes
//! `αᵢ² + βᵢ² + γᵢ² = 1`.

use crate::dense::qr::complete_orthonormal;
use crate::dense::spectral_norm;
use crate::error::{Error, Result};
use crate::gsvd::{gsvd_core, GsvdFactors};
use crate::matrix::DenseMatrix;

/// Full restricted SVD factors.
///
/// The diagonal blocks are stored so that, in both orientations,
///
/// ```text
/// A = Z·[diag(α) quasi-diagonal m × n]·Wᵀ
/// B = Z·diag(d_b)·Uᵀ        (U is ℓ × m)
/// G = V·diag(d_g)·Wᵀ        (V is d × n)
/// ```
///
/// `alpha`, `beta` and `gamma` hold the first `min(m, n)` entries of the
/// three diagonals, ordered so that the restricted values `α/(βγ)` are
/// nonincreasing.
#[derive(Clone, Debug)]
pub struct RsvdFactors {
    pub z: DenseMatrix,
    pub w: DenseMatrix,
    pub u: DenseMatrix,
    pub v: DenseMatrix,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub gamma: Vec<f64>,
    /// Length `m`; entries past `min(m, n)` are exactly one.
    pub d_b: Vec<f64>,
    /// Length `n`; entries past `min(m, n)` are exactly one.
    pub d_g: Vec<f64>,
    /// Set when `m < n` and the factors were obtained from `(Aᵀ, Gᵀ, Bᵀ)`.
    /// In that orientation `β` is nonincreasing and `γ` nondecreasing.
    pub transposed: bool,
}

/// Leading-`k` slices of [`RsvdFactors`].
#[derive(Clone, Debug)]
pub struct TruncatedRsvd {
    pub z: DenseMatrix,
    pub w: DenseMatrix,
    pub u: DenseMatrix,
    pub v: DenseMatrix,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub gamma: Vec<f64>,
    pub k: usize,
}

/// [`RsvdFactors`] of an augmented triplet. Columns of `B̃` at or past
/// `b_cols` and rows of `G̃` at or past `g_rows` are artificial.
#[derive(Clone, Debug)]
pub struct RegularizedRsvd {
    pub factors: RsvdFactors,
    pub b_cols: usize,
    pub g_rows: usize,
    pub artificial_b_cols: usize,
    pub artificial_g_rows: usize,
}

impl RsvdFactors {
    /// Number of nontrivial triples, `min(m, n)`.
    pub fn rank(&self) -> usize {
        self.alpha.len()
    }

    pub fn reconstruct_a(&self) -> DenseMatrix {
        let r = self.rank();
        self.z
            .leading_columns(r)
            .scale_columns(&self.alpha)
            .matmul_t(&self.w.leading_columns(r))
    }

    pub fn reconstruct_b(&self) -> DenseMatrix {
        self.z.scale_columns(&self.d_b).matmul_t(&self.u)
    }

    pub fn reconstruct_g(&self) -> DenseMatrix {
        self.v.scale_columns(&self.d_g).matmul_t(&self.w)
    }

    /// `αᵢ/(βᵢγᵢ)`, nonincreasing.
    pub fn restricted_values(&self) -> Result<Vec<f64>> {
        restricted_values(self)
    }

    pub fn truncate(&self, k: usize) -> Result<TruncatedRsvd> {
        truncate(self, k)
    }
}

impl TruncatedRsvd {
    pub fn a_k(&self) -> DenseMatrix {
        self.z.scale_columns(&self.alpha).matmul_t(&self.w)
    }

    pub fn b_k(&self) -> DenseMatrix {
        self.z.scale_columns(&self.beta).matmul_t(&self.u)
    }

    pub fn g_k(&self) -> DenseMatrix {
        self.v.scale_columns(&self.gamma).matmul_t(&self.w)
    }
}

/// Restricted SVD of `(A, B, G)`.
///
/// Requires `B` of full row rank `m` (so `ℓ ≥ m`), `G` of full column rank
/// `n` (so `d ≥ n`) and `A` of numerically full rank.
pub fn rsvd(a: &DenseMatrix, b: &DenseMatrix, g: &DenseMatrix) -> Result<RsvdFactors> {
    let (m, n) = a.shape();
    if m == 0 || n == 0 {
        return Err(Error::dim("rsvd", "empty A"));
    }
    if b.rows() != m {
        return Err(Error::dim(
            "rsvd",
            format!("A has {m} rows but B has {}", b.rows()),
        ));
    }
    if g.cols() != n {
        return Err(Error::dim(
            "rsvd",
            format!("A has {n} columns but G has {}", g.cols()),
        ));
    }
    if b.cols() < m {
        return Err(Error::RankDeficient {
            matrix: "B",
            index: b.cols(),
        });
    }
    if g.rows() < n {
        return Err(Error::RankDeficient {
            matrix: "G",
            index: g.rows(),
        });
    }
    if m >= n {
        return chain(a, b, g, ["A", "B", "G"]);
    }
    let t = chain(
        &a.transpose(),
        &g.transpose(),
        &b.transpose(),
        ["A", "G", "B"],
    )?;
    Ok(RsvdFactors {
        z: t.w,
        w: t.z,
        u: t.v,
        v: t.u,
        alpha: t.alpha,
        beta: t.gamma,
        gamma: t.beta,
        d_b: t.d_g,
        d_g: t.d_b,
        transposed: true,
    })
}

/// Restricted SVD of `(A, [B | μ‖B‖·I_m], [G; μ‖G‖·I_n])`, which exists
/// for any shapes of `B` and `G`. With `μ = 0` no augmentation happens.
pub fn rsvd_regularized(
    a: &DenseMatrix,
    b: &DenseMatrix,
    g: &DenseMatrix,
    mu: f64,
) -> Result<RegularizedRsvd> {
    if !(mu.is_finite() && mu >= 0.0) {
        return Err(Error::InvalidConfig(format!(
            "regularization weight must be finite and nonnegative, got {mu}"
        )));
    }
    let (m, n) = a.shape();
    if mu == 0.0 {
        return Ok(RegularizedRsvd {
            factors: rsvd(a, b, g)?,
            b_cols: b.cols(),
            g_rows: g.rows(),
            artificial_b_cols: 0,
            artificial_g_rows: 0,
        });
    }
    if b.rows() != m || g.cols() != n {
        return Err(Error::dim(
            "rsvd_regularized",
            "B must have m rows and G must have n columns",
        ));
    }
    let nb = if b.is_empty() { 0.0 } else { spectral_norm(b)? };
    let ng = if g.is_empty() { 0.0 } else { spectral_norm(g)? };
    // An all-zero block still gets a unit-scaled identity.
    let sb = mu * if nb > 0.0 { nb } else { 1.0 };
    let sg = mu * if ng > 0.0 { ng } else { 1.0 };
    let bt = DenseMatrix::hstack(&[b, &DenseMatrix::identity(m).scale(sb)]);
    let gt = DenseMatrix::vstack(&[g, &DenseMatrix::identity(n).scale(sg)]);
    Ok(RegularizedRsvd {
        factors: rsvd(a, &bt, &gt)?,
        b_cols: b.cols(),
        g_rows: g.rows(),
        artificial_b_cols: m,
        artificial_g_rows: n,
    })
}

/// Leading-`k` columns of every factor, `1 ≤ k ≤ min(m, n)`.
pub fn truncate(f: &RsvdFactors, k: usize) -> Result<TruncatedRsvd> {
    let r = f.rank();
    if k == 0 || k > r {
        return Err(Error::RankOutOfRange { k, max: r });
    }
    Ok(TruncatedRsvd {
        z: f.z.leading_columns(k),
        w: f.w.leading_columns(k),
        u: f.u.leading_columns(k),
        v: f.v.leading_columns(k),
        alpha: f.alpha[..k].to_vec(),
        beta: f.beta[..k].to_vec(),
        gamma: f.gamma[..k].to_vec(),
        k,
    })
}

/// Restricted singular values `αᵢ/(βᵢγᵢ)`.
pub fn restricted_values(f: &RsvdFactors) -> Result<Vec<f64>> {
    f.alpha
        .iter()
        .zip(f.beta.iter().zip(&f.gamma))
        .enumerate()
        .map(|(index, (a, (b, g)))| {
            let v = a / (b * g);
            if b * g == 0.0 || !v.is_finite() {
                Err(Error::DegenerateTriple { index })
            } else {
                Ok(v)
            }
        })
        .collect()
}

/// The double-GSVD chain for `m ≥ n`, `ℓ ≥ m`, `d ≥ n`. `names` labels
/// `(A, B, G)` in rank errors.
fn chain(
    a: &DenseMatrix,
    b: &DenseMatrix,
    g: &DenseMatrix,
    names: [&'static str; 3],
) -> Result<RsvdFactors> {
    let (m, n) = a.shape();
    let [name_a, name_b, name_g] = names;

    let s1 = gsvd_core(a, g, false, name_g)?;
    let tol = GsvdFactors::gamma_tol(n);
    if let Some(index) = s1.sigma.iter().position(|&s| s <= tol) {
        return Err(Error::RankDeficient {
            matrix: name_g,
            index,
        });
    }
    if let Some(index) = s1.gamma.iter().position(|&c| c <= tol) {
        return Err(Error::RankDeficient {
            matrix: name_a,
            index,
        });
    }
    let u1 = complete_orthonormal(&s1.u, m);

    // Second pair: (Bᵀ·U₁, [Σ₁⁻¹Γ₁ | 0]).
    let btu = b.t_matmul(&u1);
    let ratio: Vec<f64> = s1.gamma.iter().zip(&s1.sigma).map(|(c, s)| c / s).collect();
    let dt = DenseMatrix::from_fn(n, m, |i, j| if i == j { ratio[i] } else { 0.0 });
    let s2 = gsvd_core(&btu, &dt, false, name_b)?;
    let sigma2 = &s2.sigma[..n];
    if let Some(index) = sigma2.iter().position(|&s| s <= GsvdFactors::gamma_tol(m)) {
        return Err(Error::RankDeficient {
            matrix: name_a,
            index,
        });
    }

    let gamma_g: Vec<f64> = sigma2.iter().map(|s| s / s.hypot(1.0)).collect();
    let alpha: Vec<f64> = sigma2.iter().map(|s| s * s / s.hypot(1.0)).collect();
    let d_b = s2.gamma.clone();

    let z = u1.matmul(&s2.y);
    // W = Y₁·Σ₁·V₂·Γ_G⁻¹.
    let inv_gg: Vec<f64> = gamma_g.iter().map(|v| 1.0 / v).collect();
    let w =
        s1.y.scale_columns(&s1.sigma)
            .matmul(&s2.v)
            .scale_columns(&inv_gg);
    let v = s1.v.matmul(&s2.v);

    Ok(RsvdFactors {
        z,
        w,
        u: s2.u,
        v,
        beta: d_b[..n].to_vec(),
        alpha,
        gamma: gamma_g.clone(),
        d_b,
        d_g: gamma_g,
        transposed: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(x: &DenseMatrix, y: &DenseMatrix) -> f64 {
        x.sub(y).frobenius_norm() / y.frobenius_norm()
    }

    #[test]
    fn identity_weights_give_singular_values() {
        let a = DenseMatrix::from_diag(&[2.0, 1.0]);
        let i2 = DenseMatrix::identity(2);
        let f = rsvd(&a, &i2, &i2).unwrap();
        let rv = f.restricted_values().unwrap();
        assert!((rv[0] - 2.0).abs() < 1e-12 && (rv[1] - 1.0).abs() < 1e-12);
        for i in 0..2 {
            let t = f.alpha[i].powi(2) + f.beta[i].powi(2) + f.gamma[i].powi(2);
            assert!((t - 1.0).abs() < 1e-14);
        }
        assert!(rel(&f.reconstruct_a(), &a) < 1e-13);
        assert!(rel(&f.reconstruct_b(), &i2) < 1e-13);
        assert!(rel(&f.reconstruct_g(), &i2) < 1e-13);
    }

    #[test]
    fn wide_a_uses_transposed_chain() {
        let a = DenseMatrix::from_rows(&[[1.0, 2.0, 0.5], [0.0, 1.0, -1.0]]).unwrap();
        let b = DenseMatrix::from_rows(&[[2.0, 0.0], [1.0, 1.0]]).unwrap();
        let g =
            DenseMatrix::from_rows(&[[1.0, 0.0, 0.0], [0.5, 2.0, 0.0], [0.0, 0.1, 1.0]]).unwrap();
        let f = rsvd(&a, &b, &g).unwrap();
        assert!(f.transposed);
        assert_eq!(
            (f.z.shape(), f.w.shape(), f.u.shape(), f.v.shape()),
            ((2, 2), (3, 3), (2, 2), (3, 3))
        );
        assert!(rel(&f.reconstruct_a(), &a) < 1e-12);
        assert!(rel(&f.reconstruct_b(), &b) < 1e-12);
        assert!(rel(&f.reconstruct_g(), &g) < 1e-12);
        let rv = f.restricted_values().unwrap();
        assert!(rv[0] >= rv[1]);
    }

    #[test]
    fn short_b_needs_regularization() {
        let a = DenseMatrix::from_rows(&[[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]]).unwrap();
        let b = DenseMatrix::from_rows(&[[1.0], [0.0], [2.0]]).unwrap();
        let g = DenseMatrix::identity(2);
        assert!(matches!(
            rsvd(&a, &b, &g),
            Err(Error::RankDeficient { matrix: "B", .. })
        ));
        assert!(matches!(
            rsvd_regularized(&a, &b, &g, 0.0),
            Err(Error::RankDeficient { matrix: "B", .. })
        ));
        let r = rsvd_regularized(&a, &b, &g, 1e-8).unwrap();
        assert_eq!(
            (r.b_cols, r.artificial_b_cols, r.g_rows, r.artificial_g_rows),
            (1, 3, 2, 2)
        );
        assert_eq!(r.factors.u.rows(), 4);
    }

    #[test]
    fn rank_deficient_g_is_named() {
        let a = DenseMatrix::identity(2);
        let g = DenseMatrix::from_rows(&[[1.0, 1.0], [1.0, 1.0]]).unwrap();
        assert!(matches!(
            rsvd(&a, &DenseMatrix::identity(2), &g),
            Err(Error::RankDeficient { matrix: "G", .. })
        ));
    }

    #[test]
    fn truncation_bounds() {
        let a = DenseMatrix::from_diag(&[2.0, 1.0]);
        let f = rsvd(&a, &DenseMatrix::identity(2), &DenseMatrix::identity(2)).unwrap();
        assert!(matches!(f.truncate(0), Err(Error::RankOutOfRange { .. })));
        assert!(matches!(f.truncate(3), Err(Error::RankOutOfRange { .. })));
        let t = f.truncate(2).unwrap();
        assert!(rel(&t.a_k(), &a) < 1e-13);
    }
}
