//! Greedy interpolation index selection on basis matrices.

use crate::dense::qr::HouseholderQr;
use crate::dense::{LeastSquares, RANK_TOL};
use crate::error::{Error, Result};
use crate::matrix::{DenseMatrix, IndexList};

/// Index selection rule.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Selector {
    #[default]
    Deim,
    Qdeim,
}

impl Selector {
    pub fn select(self, u: &DenseMatrix) -> Result<IndexList> {
        match self {
            Selector::Deim => deim(u, None),
            Selector::Qdeim => qdeim(u),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Selector::Deim => "deim",
            Selector::Qdeim => "qdeim",
        }
    }
}

impl std::str::FromStr for Selector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "deim" => Ok(Selector::Deim),
            "qdeim" | "q-deim" => Ok(Selector::Qdeim),
            other => Err(Error::InvalidConfig(format!("unknown selector `{other}`"))),
        }
    }
}

/// DEIM row selection on the columns of `u` (`m × k`, `k ≤ m`).
///
/// Only rows below `row_limit` (default `m`) are candidates. Ties in the
/// residual maximum go to the lowest row index.
pub fn deim(u: &DenseMatrix, row_limit: Option<usize>) -> Result<IndexList> {
    let (m, k) = u.shape();
    let limit = row_limit.unwrap_or(m);
    if limit > m {
        return Err(Error::dim(
            "deim",
            format!("row limit {limit} exceeds {m} rows"),
        ));
    }
    if k > limit {
        return Err(Error::dim(
            "deim",
            format!("{k} columns but only {limit} candidate rows"),
        ));
    }
    let mut s: Vec<usize> = Vec::with_capacity(k);
    for j in 0..k {
        let col = u.column(j);
        let residual = if j == 0 {
            col
        } else {
            let sub = u.select_rows(&s).leading_columns(j);
            let rhs = DenseMatrix::from_fn(j, 1, |i, _| u.get(s[i], j));
            let c = LeastSquares::new(&sub)
                .map_err(|_| Error::SelectionBreakdown { step: j })?
                .solve(&rhs)?;
            let fit = u.leading_columns(j).matvec(c.as_slice());
            col.iter().zip(&fit).map(|(a, b)| a - b).collect()
        };
        let scale = u.column(j).iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        let (best, value) = argmax_abs(&residual[..limit]);
        if value <= RANK_TOL * scale || value == 0.0 {
            return Err(Error::SelectionBreakdown { step: j });
        }
        s.push(best);
    }
    IndexList::new(s, m)
}

/// Q-DEIM: the first `k` pivots of a column-pivoted QR of `uᵀ`.
pub fn qdeim(u: &DenseMatrix) -> Result<IndexList> {
    let (m, k) = u.shape();
    if k > m {
        return Err(Error::dim(
            "qdeim",
            format!("{k} columns but only {m} rows"),
        ));
    }
    if k == 0 {
        return IndexList::new(Vec::new(), m);
    }
    // Row-major U is column-major Uᵀ.
    let (f, perm) = HouseholderQr::factor_pivoted(u.as_slice().to_vec(), k, m);
    let diag = f.r_diag();
    let lead = diag[0].abs();
    if let Some(step) = diag
        .iter()
        .position(|d| d.abs() <= RANK_TOL * lead || *d == 0.0)
    {
        return Err(Error::SelectionBreakdown { step });
    }
    IndexList::new(perm[..k].to_vec(), m)
}

fn argmax_abs(x: &[f64]) -> (usize, f64) {
    let mut best = (0, f64::NEG_INFINITY);
    for (i, v) in x.iter().enumerate() {
        if v.abs() > best.1 {
            best = (i, v.abs());
        }
    }
    best
}
