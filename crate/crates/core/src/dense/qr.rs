//! Householder QR: blocked (compact WY) unpivoted factorization and the
//! Businger–Golub column-pivoted variant.

use crate::error::{Error, Result};
use crate::matrix::{gemm, DenseMatrix, IndexList, View, ViewMut};

const BLOCK: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QrMode {
    /// `Q` is `rows × min(rows, cols)`.
    Thin,
    /// `Q` is `rows × rows`.
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pivoting {
    None,
    /// Greedy largest remaining column norm, ties to the lowest index.
    Column,
}

#[derive(Clone, Debug)]
pub struct Qr {
    pub q: DenseMatrix,
    pub r: DenseMatrix,
    /// `A·Π = Q·R` where column `j` of `A·Π` is column `pivots[j]` of `A`.
    pub pivots: Option<IndexList>,
}

/// QR factorization of `a`.
pub fn qr(a: &DenseMatrix, mode: QrMode, pivoting: Pivoting) -> Result<Qr> {
    let (m, n) = a.shape();
    if a.is_empty() {
        return Err(Error::dim("qr", "empty matrix"));
    }
    if mode == QrMode::Full && m < n {
        return Err(Error::dim(
            "qr",
            format!("full mode needs rows >= cols, got {m}x{n}"),
        ));
    }
    let (f, pivots) = match pivoting {
        Pivoting::None => (HouseholderQr::factor(a.to_col_major(), m, n), None),
        Pivoting::Column => {
            let (f, p) = HouseholderQr::factor_pivoted(a.to_col_major(), m, n);
            (f, Some(IndexList::new(p, n)?))
        }
    };
    let (q, r) = match mode {
        QrMode::Thin => (f.thin_q(), f.r()),
        QrMode::Full => (f.full_q(), f.r_full()),
    };
    Ok(Qr { q, r, pivots })
}

/// Householder factorization in LAPACK storage: column-major, `R` on and
/// above the diagonal, reflector tails below it, `H_j = I − τ_j v_j v_jᵀ`
/// with `v_j[0] = 1`.
#[derive(Clone, Debug)]
pub(crate) struct HouseholderQr {
    m: usize,
    n: usize,
    qr: Vec<f64>,
    tau: Vec<f64>,
}

impl HouseholderQr {
    pub fn factor(mut a: Vec<f64>, m: usize, n: usize) -> Self {
        debug_assert_eq!(a.len(), m * n);
        let kmax = m.min(n);
        let mut tau = vec![0.0; kmax];
        let mut j0 = 0;
        while j0 < kmax {
            let jb = BLOCK.min(kmax - j0);
            for (j, t) in tau.iter_mut().enumerate().skip(j0).take(jb) {
                *t = make_reflector(&mut a, m, j);
                apply_reflector_to_cols(&mut a, m, j, *t, j + 1..j0 + jb);
            }
            if j0 + jb < n {
                let v = explicit_v(&a, m, j0, jb);
                let t = block_t(&v, m - j0, jb, &tau[j0..j0 + jb]);
                let nc = n - j0 - jb;
                let off = (j0 + jb) * m + j0;
                apply_block(&v, &t, m - j0, jb, &mut a[off..], nc, m, true);
            }
            j0 += jb;
        }
        Self { m, n, qr: a, tau }
    }

    /// Column-pivoted factorization; remaining column norms are recomputed
    /// at every step so the greedy choice is exact.
    pub fn factor_pivoted(mut a: Vec<f64>, m: usize, n: usize) -> (Self, Vec<usize>) {
        let kmax = m.min(n);
        let mut tau = vec![0.0; kmax];
        let mut perm: Vec<usize> = (0..n).collect();
        for j in 0..kmax {
            let mut best = j;
            let mut best_norm = -1.0;
            for c in j..n {
                let col = &a[c * m + j..(c + 1) * m];
                let s: f64 = col.iter().map(|v| v * v).sum();
                if s > best_norm {
                    best_norm = s;
                    best = c;
                }
            }
            if best != j {
                for i in 0..m {
                    a.swap(j * m + i, best * m + i);
                }
                perm.swap(j, best);
            }
            tau[j] = make_reflector(&mut a, m, j);
            apply_reflector_to_cols(&mut a, m, j, tau[j], j + 1..n);
        }
        (Self { m, n, qr: a, tau }, perm)
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn r_diag(&self) -> Vec<f64> {
        (0..self.m.min(self.n))
            .map(|j| self.qr[j * self.m + j])
            .collect()
    }

    /// Economy `R`, `min(m, n) × n`.
    pub fn r(&self) -> DenseMatrix {
        let k = self.m.min(self.n);
        DenseMatrix::from_fn(k, self.n, |i, j| {
            if i <= j {
                self.qr[j * self.m + i]
            } else {
                0.0
            }
        })
    }

    fn r_full(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.m, self.n, |i, j| {
            if i <= j {
                self.qr[j * self.m + i]
            } else {
                0.0
            }
        })
    }

    pub fn thin_q(&self) -> DenseMatrix {
        let k = self.m.min(self.n);
        DenseMatrix::from_col_major(self.m, k, &self.q_columns(k))
    }

    pub fn full_q(&self) -> DenseMatrix {
        DenseMatrix::from_col_major(self.m, self.m, &self.q_columns(self.m))
    }

    /// First `cols` columns of `Q`, column-major.
    pub fn q_columns(&self, cols: usize) -> Vec<f64> {
        let m = self.m;
        let mut c = vec![0.0; m * cols];
        for j in 0..cols.min(m) {
            c[j * m + j] = 1.0;
        }
        // Columns left of a block are still canonical vectors supported
        // above its rows, so only the trailing columns need updating.
        self.apply(&mut c, cols, m, false, true);
        c
    }

    /// Columns `start..end` of `Q`, column-major.
    pub(crate) fn q_column_range(&self, start: usize, end: usize) -> Vec<f64> {
        let m = self.m;
        let cols = end - start;
        let mut c = vec![0.0; m * cols];
        for j in 0..cols {
            c[j * m + start + j] = 1.0;
        }
        self.apply(&mut c, cols, m, false, false);
        c
    }

    /// `c ← Q·c` for a column-major `m × cols` block with leading dimension `ld`.
    pub fn apply_q(&self, c: &mut [f64], cols: usize, ld: usize) {
        self.apply(c, cols, ld, false, false);
    }

    /// `c ← Qᵀ·c`.
    pub fn apply_qt(&self, c: &mut [f64], cols: usize, ld: usize) {
        self.apply(c, cols, ld, true, false);
    }

    fn apply(&self, c: &mut [f64], cols: usize, ld: usize, transpose: bool, skip_left: bool) {
        let m = self.m;
        let kmax = self.tau.len();
        let starts: Vec<usize> = (0..kmax).step_by(BLOCK).collect();
        let mut run = |j0: usize| {
            let jb = BLOCK.min(kmax - j0);
            let first = if skip_left { j0.min(cols) } else { 0 };
            if first >= cols {
                return;
            }
            let v = explicit_v(&self.qr, m, j0, jb);
            let t = block_t(&v, m - j0, jb, &self.tau[j0..j0 + jb]);
            let off = first * ld + j0;
            apply_block(
                &v,
                &t,
                m - j0,
                jb,
                &mut c[off..],
                cols - first,
                ld,
                transpose,
            );
        };
        if transpose {
            starts.iter().copied().for_each(&mut run);
        } else {
            starts.iter().rev().copied().for_each(&mut run);
        }
    }
}

/// Turns column `j` (rows `j..m`) into a reflector; returns τ and leaves
/// `β` on the diagonal.
fn make_reflector(a: &mut [f64], m: usize, j: usize) -> f64 {
    let col = &mut a[j * m + j..(j + 1) * m];
    let alpha = col[0];
    let tail = &col[1..];
    let scale = tail.iter().fold(0.0f64, |s, v| s.max(v.abs()));
    if scale == 0.0 {
        return 0.0;
    }
    let xnorm = scale
        * tail
            .iter()
            .map(|v| (v / scale) * (v / scale))
            .sum::<f64>()
            .sqrt();
    let beta = -alpha.hypot(xnorm).copysign(alpha);
    let tau = (beta - alpha) / beta;
    let inv = 1.0 / (alpha - beta);
    col[1..].iter_mut().for_each(|v| *v *= inv);
    col[0] = beta;
    tau
}

fn apply_reflector_to_cols(
    a: &mut [f64],
    m: usize,
    j: usize,
    tau: f64,
    cols: std::ops::Range<usize>,
) {
    if tau == 0.0 {
        return;
    }
    let (head, rest) = a.split_at_mut((j + 1) * m);
    let v = &head[j * m + j + 1..(j + 1) * m];
    for c in cols {
        let off = (c - j - 1) * m + j;
        let col = &mut rest[off..off + m - j];
        let w = col[0] + v.iter().zip(&col[1..]).map(|(x, y)| x * y).sum::<f64>();
        let s = tau * w;
        col[0] -= s;
        col[1..].iter_mut().zip(v).for_each(|(y, x)| *y -= s * x);
    }
}

/// Explicit `(m − j0) × jb` reflector block with unit diagonal, column-major.
fn explicit_v(qr: &[f64], m: usize, j0: usize, jb: usize) -> Vec<f64> {
    let mv = m - j0;
    let mut v = vec![0.0; mv * jb];
    for c in 0..jb {
        let src = &qr[(j0 + c) * m + j0..(j0 + c + 1) * m];
        let dst = &mut v[c * mv..(c + 1) * mv];
        dst[c] = 1.0;
        dst[c + 1..].copy_from_slice(&src[c + 1..]);
    }
    v
}

/// Upper-triangular `T` with `H_0 ⋯ H_{jb−1} = I − V T Vᵀ` (column-major).
fn block_t(v: &[f64], mv: usize, jb: usize, tau: &[f64]) -> Vec<f64> {
    let mut t = vec![0.0; jb * jb];
    for i in 0..jb {
        t[i * jb + i] = tau[i];
        if i == 0 || tau[i] == 0.0 {
            continue;
        }
        let vi = &v[i * mv..(i + 1) * mv];
        let z: Vec<f64> = (0..i)
            .map(|r| {
                v[r * mv + i..(r + 1) * mv]
                    .iter()
                    .zip(&vi[i..])
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect();
        for r in 0..i {
            let s: f64 = (r..i).map(|c| t[c * jb + r] * z[c]).sum();
            t[i * jb + r] = -tau[i] * s;
        }
    }
    t
}

/// `c ← (I − V T Vᵀ)·c` or, with `transpose`, `c ← (I − V Tᵀ Vᵀ)·c`, where `c`
/// is column-major `mv × nc` with leading dimension `ld`.
#[allow(clippy::too_many_arguments)]
fn apply_block(
    v: &[f64],
    t: &[f64],
    mv: usize,
    jb: usize,
    c: &mut [f64],
    nc: usize,
    ld: usize,
    transpose: bool,
) {
    if nc == 0 {
        return;
    }
    let vv = View::col_major(v, mv, jb, mv);
    let mut w = vec![0.0; jb * nc];
    gemm(
        1.0,
        vv.t(),
        View::col_major(c, mv, nc, ld),
        0.0,
        ViewMut::col_major(&mut w, jb, nc, jb),
    );
    // w ← T·w or Tᵀ·w (T upper triangular, small).
    let mut tw = vec![0.0; jb * nc];
    for col in 0..nc {
        let wc = &w[col * jb..(col + 1) * jb];
        let out = &mut tw[col * jb..(col + 1) * jb];
        for r in 0..jb {
            out[r] = if transpose {
                (0..=r).map(|k| t[r * jb + k] * wc[k]).sum()
            } else {
                (r..jb).map(|k| t[k * jb + r] * wc[k]).sum()
            };
        }
    }
    gemm(
        -1.0,
        vv,
        View::col_major(&tw, jb, nc, jb),
        1.0,
        ViewMut::col_major(c, mv, nc, ld),
    );
}

/// Extends orthonormal columns `q` (`m × c`) to `m × total` orthonormal
/// columns `[q | extra]`, deterministically.
pub(crate) fn complete_orthonormal(q: &DenseMatrix, total: usize) -> DenseMatrix {
    let (m, c) = q.shape();
    assert!(c <= total && total <= m);
    if c == total {
        return q.clone();
    }
    if c == 0 {
        return DenseMatrix::from_fn(m, total, |i, j| if i == j { 1.0 } else { 0.0 });
    }
    let f = HouseholderQr::factor(q.to_col_major(), m, c);
    let extra = DenseMatrix::from_col_major(m, total - c, &f.q_column_range(c, total));
    DenseMatrix::hstack(&[q, &extra])
}
