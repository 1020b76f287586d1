use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use super::io_error;
use super::results::csv_error;
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

/// Reads a numeric CSV file with one sample per row. With `header` the
/// first line is skipped. Every row must have the same number of fields.
pub fn read_csv_matrix(path: impl AsRef<Path>, header: bool) -> Result<DenseMatrix> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| io_error(path, e))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(header)
        .trim(csv::Trim::All)
        .from_reader(BufReader::new(file));
    let parse_error = |line: usize, msg: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        msg,
    };
    let mut cols = None;
    let mut data = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| csv_error(path, e))?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if *cols.get_or_insert(record.len()) != record.len() {
            return Err(parse_error(
                line,
                format!(
                    "expected {} fields, found {}",
                    cols.unwrap_or(0),
                    record.len()
                ),
            ));
        }
        for field in &record {
            let v: f64 = field
                .parse()
                .map_err(|_| parse_error(line, format!("not a number: {field:?}")))?;
            if !v.is_finite() {
                return Err(parse_error(line, format!("non-finite value {field:?}")));
            }
            data.push(v);
        }
    }
    let Some(cols) = cols else {
        return Err(parse_error(1, "no data rows".into()));
    };
    DenseMatrix::new(data.len() / cols, cols, data)
}
