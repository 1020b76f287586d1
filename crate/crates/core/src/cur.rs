//! CUR-type decompositions: plain CUR, RSVD-CUR of a triplet, the
//! generalized CUR of a pair, and the one-sided RSVD interpolative
//! decomposition.

use crate::dense::{svd, LeastSquares, SvdMode, RANK_TOL};
use crate::error::{Error, Result};
use crate::matrix::{DenseMatrix, IndexList};
use crate::rsvd::{rsvd, RsvdFactors};
use crate::selection::Selector;

/// `A ≈ A(:, p)·M·A(s, :)`.
#[derive(Clone, Debug)]
pub struct CurResult {
    pub col_indices: IndexList,
    pub row_indices: IndexList,
    pub middle: DenseMatrix,
    pub selector: Selector,
}

impl CurResult {
    pub fn reconstruct(&self, a: &DenseMatrix) -> DenseMatrix {
        cmr(a, &self.col_indices, &self.middle, &self.row_indices)
    }
}

/// Coupled CUR factors of a triplet:
///
/// ```text
/// A ≈ A(:, p)·M_A·A(s, :),   B ≈ B(:, p_B)·M_B·B(s, :),   G ≈ G(:, p)·M_G·G(s_G, :)
/// ```
#[derive(Clone, Debug)]
pub struct RsvdCurResult {
    pub p: IndexList,
    pub s: IndexList,
    pub p_b: IndexList,
    pub s_g: IndexList,
    pub m_a: DenseMatrix,
    pub m_b: DenseMatrix,
    pub m_g: DenseMatrix,
    pub k: usize,
    pub selector: Selector,
}

impl RsvdCurResult {
    pub fn reconstruct_a(&self, a: &DenseMatrix) -> DenseMatrix {
        cmr(a, &self.p, &self.m_a, &self.s)
    }

    pub fn reconstruct_b(&self, b: &DenseMatrix) -> DenseMatrix {
        cmr(b, &self.p_b, &self.m_b, &self.s)
    }

    pub fn reconstruct_g(&self, g: &DenseMatrix) -> DenseMatrix {
        cmr(g, &self.p, &self.m_g, &self.s_g)
    }
}

/// Generalized CUR of a pair `(A, G)`: the `B = I` restriction of
/// [`RsvdCurResult`].
#[derive(Clone, Debug)]
pub struct GcurResult {
    pub p: IndexList,
    pub s: IndexList,
    pub s_g: IndexList,
    pub m_a: DenseMatrix,
    pub m_g: DenseMatrix,
    pub k: usize,
    pub selector: Selector,
}

impl GcurResult {
    pub fn reconstruct_a(&self, a: &DenseMatrix) -> DenseMatrix {
        cmr(a, &self.p, &self.m_a, &self.s)
    }

    pub fn reconstruct_g(&self, g: &DenseMatrix) -> DenseMatrix {
        cmr(g, &self.p, &self.m_g, &self.s_g)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdSide {
    Columns,
    Rows,
}

/// One-sided interpolative decomposition of a triplet.
///
/// Column side: `indices = p` (columns of `A` and `G`), `coupled = p_B`
/// (columns of `B`), and `X ≈ X(:, idx)·coeff_x`.
/// Row side: `indices = s` (rows of `A` and `B`), `coupled = s_G` (rows of
/// `G`), and `X ≈ coeff_x·X(idx, :)`.
#[derive(Clone, Debug)]
pub struct RsvdIdResult {
    pub side: IdSide,
    pub indices: IndexList,
    pub coupled: IndexList,
    pub coeff_a: DenseMatrix,
    pub coeff_b: DenseMatrix,
    pub coeff_g: DenseMatrix,
}

impl RsvdIdResult {
    pub fn reconstruct_a(&self, a: &DenseMatrix) -> DenseMatrix {
        self.apply(a, &self.indices, &self.coeff_a)
    }

    pub fn reconstruct_b(&self, b: &DenseMatrix) -> DenseMatrix {
        let idx = match self.side {
            IdSide::Columns => &self.coupled,
            IdSide::Rows => &self.indices,
        };
        self.apply(b, idx, &self.coeff_b)
    }

    pub fn reconstruct_g(&self, g: &DenseMatrix) -> DenseMatrix {
        let idx = match self.side {
            IdSide::Columns => &self.indices,
            IdSide::Rows => &self.coupled,
        };
        self.apply(g, idx, &self.coeff_g)
    }

    fn apply(&self, x: &DenseMatrix, idx: &IndexList, coeff: &DenseMatrix) -> DenseMatrix {
        match self.side {
            IdSide::Columns => x.select_columns(idx).matmul(coeff),
            IdSide::Rows => coeff.matmul(&x.select_rows(idx)),
        }
    }
}

fn cmr(a: &DenseMatrix, cols: &[usize], m: &DenseMatrix, rows: &[usize]) -> DenseMatrix {
    a.select_columns(cols)
        .matmul(m)
        .matmul(&a.select_rows(rows))
}

/// `M = C⁺·A·R⁺` via two QR least-squares solves.
pub fn middle_matrix(a: &DenseMatrix, c: &DenseMatrix, r: &DenseMatrix) -> Result<DenseMatrix> {
    if c.rows() != a.rows() || r.cols() != a.cols() {
        return Err(Error::dim(
            "middle_matrix",
            format!(
                "A is {}x{}, C is {}x{}, R is {}x{}",
                a.rows(),
                a.cols(),
                c.rows(),
                c.cols(),
                r.rows(),
                r.cols()
            ),
        ));
    }
    let ca = LeastSquares::named(c, "C")?.solve(a)?;
    let mt = LeastSquares::named(&r.transpose(), "R")?.solve(&ca.transpose())?;
    Ok(mt.transpose())
}

/// CUR of `A` with indices selected from its leading `k` singular vectors.
pub fn cur(a: &DenseMatrix, k: usize, selector: Selector) -> Result<CurResult> {
    let r = a.rows().min(a.cols());
    if k == 0 || k > r {
        return Err(Error::RankOutOfRange { k, max: r });
    }
    let f = svd(a, SvdMode::Thin)?;
    if f.s[k - 1] <= RANK_TOL * f.s[0] || f.s[k - 1] == 0.0 {
        return Err(Error::RankDeficient {
            matrix: "A",
            index: k - 1,
        });
    }
    let p = selector.select(&f.v.leading_columns(k))?;
    let s = selector.select(&f.u.leading_columns(k))?;
    let middle = middle_matrix(a, &a.select_columns(&p), &a.select_rows(&s))?;
    Ok(CurResult {
        col_indices: p,
        row_indices: s,
        middle,
        selector,
    })
}

/// RSVD-CUR of `(A, B, G)` at rank `k`.
pub fn rsvd_cur(
    a: &DenseMatrix,
    b: &DenseMatrix,
    g: &DenseMatrix,
    k: usize,
    selector: Selector,
) -> Result<RsvdCurResult> {
    let f = rsvd(a, b, g)?;
    rsvd_cur_from_factors(a, b, g, &f, k, selector)
}

/// RSVD-CUR reusing precomputed restricted SVD factors of `(A, B, G)`.
pub fn rsvd_cur_from_factors(
    a: &DenseMatrix,
    b: &DenseMatrix,
    g: &DenseMatrix,
    f: &RsvdFactors,
    k: usize,
    selector: Selector,
) -> Result<RsvdCurResult> {
    let t = f.truncate(k)?;
    let p = selector.select(&t.w)?;
    let s = selector.select(&t.z)?;
    let p_b = selector.select(&t.u)?;
    let s_g = selector.select(&t.v)?;
    let m_a = middle_matrix(a, &a.select_columns(&p), &a.select_rows(&s))?;
    let m_b = middle_matrix(b, &b.select_columns(&p_b), &b.select_rows(&s))?;
    let m_g = middle_matrix(g, &g.select_columns(&p), &g.select_rows(&s_g))?;
    Ok(RsvdCurResult {
        p,
        s,
        p_b,
        s_g,
        m_a,
        m_b,
        m_g,
        k,
        selector,
    })
}

/// Generalized CUR of `(A, G)`, computed as the RSVD-CUR of `(A, I, G)`.
pub fn gcur(a: &DenseMatrix, g: &DenseMatrix, k: usize, selector: Selector) -> Result<GcurResult> {
    let full = rsvd_cur(a, &DenseMatrix::identity(a.rows()), g, k, selector)?;
    Ok(GcurResult {
        p: full.p,
        s: full.s,
        s_g: full.s_g,
        m_a: full.m_a,
        m_g: full.m_g,
        k,
        selector,
    })
}

/// Column or row RSVD interpolative decomposition of `(A, B, G)`.
pub fn rsvd_id(
    a: &DenseMatrix,
    b: &DenseMatrix,
    g: &DenseMatrix,
    k: usize,
    side: IdSide,
    selector: Selector,
) -> Result<RsvdIdResult> {
    let t = rsvd(a, b, g)?.truncate(k)?;
    match side {
        IdSide::Columns => {
            let p = selector.select(&t.w)?;
            let p_b = selector.select(&t.u)?;
            let coeff = |x: &DenseMatrix, idx: &IndexList, name| {
                LeastSquares::named(&x.select_columns(idx), name)?.solve(x)
            };
            Ok(RsvdIdResult {
                side,
                coeff_a: coeff(a, &p, "C_A")?,
                coeff_b: coeff(b, &p_b, "C_B")?,
                coeff_g: coeff(g, &p, "C_G")?,
                indices: p,
                coupled: p_b,
            })
        }
        IdSide::Rows => {
            let s = selector.select(&t.z)?;
            let s_g = selector.select(&t.v)?;
            let coeff = |x: &DenseMatrix, idx: &IndexList, name| {
                Ok::<_, Error>(
                    LeastSquares::named(&x.select_rows(idx).transpose(), name)?
                        .solve(&x.transpose())?
                        .transpose(),
                )
            };
            Ok(RsvdIdResult {
                side,
                coeff_a: coeff(a, &s, "R_A")?,
                coeff_b: coeff(b, &s, "R_B")?,
                coeff_g: coeff(g, &s_g, "R_G")?,
                indices: s,
                coupled: s_g,
            })
        }
    }
}
