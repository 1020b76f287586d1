//! Result tables as CSV or JSON, and JSON records of computed
//! decompositions with 0-based index lists.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::io_error;
use crate::bounds::ErrorBoundReport;
use crate::cur::{CurResult, GcurResult, RsvdCurResult};
use crate::dense::spectral_norm;
use crate::error::{Error, Result};
use crate::harness::{GaussMarkovRow, MultiviewSelection, NoiseRecoveryRow};
use crate::matrix::DenseMatrix;
use crate::selection::Selector;

/// A row type with a fixed CSV header.
pub trait TableRow: Serialize + DeserializeOwned {
    const HEADER: &'static [&'static str];
}

impl TableRow for NoiseRecoveryRow {
    const HEADER: &'static [&'static str] = &["k", "svd_err", "cur_err", "rsvd_err", "rsvdcur_err"];
}

impl TableRow for GaussMarkovRow {
    const HEADER: &'static [&'static str] = &["k", "reduced_residual", "full_residual"];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResultFormat {
    Csv,
    Json,
}

impl std::str::FromStr for ResultFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(ResultFormat::Csv),
            "json" => Ok(ResultFormat::Json),
            other => Err(Error::InvalidConfig(format!(
                "unknown result format {other:?} (expected csv or json)"
            ))),
        }
    }
}

pub(super) fn csv_error(path: &Path, e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line() as usize);
    match e.into_kind() {
        csv::ErrorKind::Io(source) => io_error(path, source),
        kind => Error::Parse {
            path: path.to_path_buf(),
            line,
            msg: format!("{kind:?}"),
        },
    }
}

/// Writes the header even for an empty table.
pub fn write_csv<R: TableRow>(path: impl AsRef<Path>, rows: &[R]) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| io_error(path, e))?;
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(file);
    w.write_record(R::HEADER).map_err(|e| csv_error(path, e))?;
    for row in rows {
        w.serialize(row).map_err(|e| csv_error(path, e))?;
    }
    w.flush().map_err(|e| io_error(path, e))
}

/// Reads a table written by [`write_csv`]; the header must match exactly.
pub fn read_csv<R: TableRow>(path: impl AsRef<Path>) -> Result<Vec<R>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| io_error(path, e))?;
    let mut r = csv::Reader::from_reader(BufReader::new(file));
    let header = r.headers().map_err(|e| csv_error(path, e))?;
    if header.iter().ne(R::HEADER.iter().copied()) {
        return Err(Error::Parse {
            path: path.to_path_buf(),
            line: 1,
            msg: format!("expected header `{}`", R::HEADER.join(",")),
        });
    }
    r.deserialize()
        .map(|row| row.map_err(|e| csv_error(path, e)))
        .collect()
}

pub fn write_json<T: Serialize + ?Sized>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| io_error(path, e))?;
    let mut w = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| io_error(path, e.into()))?;
    w.write_all(b"\n")
        .and_then(|_| w.flush())
        .map_err(|e| io_error(path, e))
}

pub fn read_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| io_error(path, e))?;
    serde_json::from_reader(BufReader::new(file)).map_err(|e| Error::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        msg: e.to_string(),
    })
}

/// Writes a table as CSV or as a JSON array of row objects.
pub fn write_results<R: TableRow>(
    path: impl AsRef<Path>,
    rows: &[R],
    format: ResultFormat,
) -> Result<()> {
    match format {
        ResultFormat::Csv => write_csv(path, rows),
        ResultFormat::Json => write_json(path, rows),
    }
}

/// Row-major flattening of a matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlatMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl From<&DenseMatrix> for FlatMatrix {
    fn from(m: &DenseMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data: m.as_slice().to_vec(),
        }
    }
}

impl FlatMatrix {
    pub fn to_matrix(&self) -> Result<DenseMatrix> {
        DenseMatrix::new(self.rows, self.cols, self.data.clone())
    }
}

/// A computed CUR-type decomposition. `errors` holds relative
/// spectral-norm reconstruction errors keyed by matrix name.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionRecord {
    pub kind: String,
    pub k: usize,
    pub selector: String,
    pub col_indices: Vec<usize>,
    pub row_indices: Vec<usize>,
    pub p_b: Option<Vec<usize>>,
    pub s_g: Option<Vec<usize>>,
    pub middle: BTreeMap<String, FlatMatrix>,
    pub errors: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<ErrorBoundReport>,
}

fn relative_error(x: &DenseMatrix, approx: &DenseMatrix) -> Result<f64> {
    let norm = spectral_norm(x)?;
    let err = spectral_norm(&x.sub(approx))?;
    Ok(if norm == 0.0 { err } else { err / norm })
}

impl DecompositionRecord {
    pub fn from_cur(a: &DenseMatrix, r: &CurResult) -> Result<Self> {
        Ok(Self {
            kind: "cur".into(),
            k: r.col_indices.len(),
            selector: r.selector.name().into(),
            col_indices: r.col_indices.to_vec(),
            row_indices: r.row_indices.to_vec(),
            p_b: None,
            s_g: None,
            middle: BTreeMap::from([("A".to_string(), FlatMatrix::from(&r.middle))]),
            errors: BTreeMap::from([("A".to_string(), relative_error(a, &r.reconstruct(a))?)]),
            bounds: None,
        })
    }

    pub fn from_gcur(a: &DenseMatrix, g: &DenseMatrix, r: &GcurResult) -> Result<Self> {
        Ok(Self {
            kind: "gcur".into(),
            k: r.k,
            selector: r.selector.name().into(),
            col_indices: r.p.to_vec(),
            row_indices: r.s.to_vec(),
            p_b: None,
            s_g: Some(r.s_g.to_vec()),
            middle: BTreeMap::from([
                ("A".to_string(), FlatMatrix::from(&r.m_a)),
                ("G".to_string(), FlatMatrix::from(&r.m_g)),
            ]),
            errors: BTreeMap::from([
                ("A".to_string(), relative_error(a, &r.reconstruct_a(a))?),
                ("G".to_string(), relative_error(g, &r.reconstruct_g(g))?),
            ]),
            bounds: None,
        })
    }

    pub fn from_rsvd_cur(
        a: &DenseMatrix,
        b: &DenseMatrix,
        g: &DenseMatrix,
        r: &RsvdCurResult,
        bounds: Option<ErrorBoundReport>,
    ) -> Result<Self> {
        Ok(Self {
            kind: "rsvd-cur".into(),
            k: r.k,
            selector: r.selector.name().into(),
            col_indices: r.p.to_vec(),
            row_indices: r.s.to_vec(),
            p_b: Some(r.p_b.to_vec()),
            s_g: Some(r.s_g.to_vec()),
            middle: BTreeMap::from([
                ("A".to_string(), FlatMatrix::from(&r.m_a)),
                ("B".to_string(), FlatMatrix::from(&r.m_b)),
                ("G".to_string(), FlatMatrix::from(&r.m_g)),
            ]),
            errors: BTreeMap::from([
                ("A".to_string(), relative_error(a, &r.reconstruct_a(a))?),
                ("B".to_string(), relative_error(b, &r.reconstruct_b(b))?),
                ("G".to_string(), relative_error(g, &r.reconstruct_g(g))?),
            ]),
            bounds,
        })
    }
}

/// Features chosen from two views, 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureSelectionRecord {
    pub k: usize,
    pub selector: String,
    pub view1_features: Vec<usize>,
    pub view2_features: Vec<usize>,
}

impl FeatureSelectionRecord {
    pub fn new(sel: &MultiviewSelection, selector: Selector) -> Self {
        Self {
            k: sel.view1_features.len(),
            selector: selector.name().into(),
            view1_features: sel.view1_features.to_vec(),
            view2_features: sel.view2_features.to_vec(),
        }
    }
}
