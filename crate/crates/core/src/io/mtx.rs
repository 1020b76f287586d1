//! Dense reader and writer for the Matrix Market exchange format.
//!
//! Reading accepts `array` and `coordinate` layouts of `real general`
//! matrices. Coordinate entries are 1-based in the file; repeated entries
//! are summed. Writing always emits the `array` layout, column by column,
//! with 17 significant digits so that a round trip is exact.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::io_error;
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

pub fn read_matrix_market(path: impl AsRef<Path>) -> Result<DenseMatrix> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    parse_matrix_market(&text, path)
}

/// Parses Matrix Market text; `path` is only used in error messages.
pub fn parse_matrix_market(text: &str, path: &Path) -> Result<DenseMatrix> {
    let fail = |line: usize, msg: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        msg,
    };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));

    let (hline, header) = lines.next().ok_or_else(|| fail(1, "empty file".into()))?;
    let tokens: Vec<String> = header
        .split_whitespace()
        .map(str::to_ascii_lowercase)
        .collect();
    if tokens.len() != 5 || tokens[0] != "%%matrixmarket" || tokens[1] != "matrix" {
        return Err(fail(hline, format!("malformed header `{header}`")));
    }
    let coordinate = match tokens[2].as_str() {
        "array" => false,
        "coordinate" => true,
        other => return Err(fail(hline, format!("unknown format `{other}`"))),
    };
    if tokens[3] != "real" {
        return Err(fail(
            hline,
            format!("unsupported field `{}` (only real)", tokens[3]),
        ));
    }
    if tokens[4] != "general" {
        return Err(fail(
            hline,
            format!("unsupported symmetry `{}` (only general)", tokens[4]),
        ));
    }

    let mut data_lines = lines.filter(|(_, l)| {
        let t = l.trim_start();
        !t.is_empty() && !t.starts_with('%')
    });
    let (sline, size) = data_lines
        .next()
        .ok_or_else(|| fail(hline + 1, "missing size line".into()))?;
    let dims: Vec<usize> = size
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| fail(sline, format!("bad size line `{size}`: {e}")))?;
    let expected = if coordinate { 3 } else { 2 };
    if dims.len() != expected {
        return Err(fail(
            sline,
            format!("size line needs {expected} integers, got `{size}`"),
        ));
    }
    let (rows, cols) = (dims[0], dims[1]);
    let mut values = vec![0.0; rows * cols];

    let parse_value = |line: usize, tok: &str| -> Result<f64> {
        let v: f64 = tok
            .parse()
            .map_err(|_| fail(line, format!("bad value `{tok}`")))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(fail(line, format!("non-finite value `{tok}`")))
        }
    };

    let mut count = 0;
    let total = if coordinate { dims[2] } else { rows * cols };
    let mut last_line = sline;
    for (line, l) in data_lines {
        last_line = line;
        let toks: Vec<&str> = l.split_whitespace().collect();
        if count == total {
            return Err(fail(line, "more entries than declared".into()));
        }
        if coordinate {
            if toks.len() != 3 {
                return Err(fail(line, format!("expected `row col value`, got `{l}`")));
            }
            let index = |tok: &str, bound: usize| -> Result<usize> {
                match tok.parse::<usize>() {
                    Ok(i) if (1..=bound).contains(&i) => Ok(i - 1),
                    Ok(i) => Err(fail(line, format!("index {i} out of bounds 1..={bound}"))),
                    Err(_) => Err(fail(line, format!("bad index `{tok}`"))),
                }
            };
            let i = index(toks[0], rows)?;
            let j = index(toks[1], cols)?;
            values[i * cols + j] += parse_value(line, toks[2])?;
        } else {
            if toks.len() != 1 {
                return Err(fail(
                    line,
                    format!("expected one value per line, got `{l}`"),
                ));
            }
            let (i, j) = (count % rows, count / rows);
            values[i * cols + j] = parse_value(line, toks[0])?;
        }
        count += 1;
    }
    if count != total {
        return Err(fail(
            last_line,
            format!("expected {total} entries, found {count}"),
        ));
    }
    DenseMatrix::new(rows, cols, values)
}

pub fn write_matrix_market(path: impl AsRef<Path>, a: &DenseMatrix) -> Result<()> {
    let path = path.as_ref();
    let mut out = String::with_capacity(32 + 24 * a.rows() * a.cols());
    out.push_str("%%MatrixMarket matrix array real general\n");
    let _ = writeln!(out, "{} {}", a.rows(), a.cols());
    for j in 0..a.cols() {
        for i in 0..a.rows() {
            let _ = writeln!(out, "{:.16e}", a.get(i, j));
        }
    }
    fs::write(path, out).map_err(|e| io_error(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<DenseMatrix> {
        parse_matrix_market(text, Path::new("t.mtx"))
    }

    #[test]
    fn coordinate_is_one_based() {
        let a =
            parse("%%MatrixMarket matrix coordinate real general\n% c\n2 3 2\n1 1 5.0\n2 3 -1\n")
                .unwrap();
        assert_eq!(
            a,
            DenseMatrix::from_rows(&[[5.0, 0.0, 0.0], [0.0, 0.0, -1.0]]).unwrap()
        );
    }

    #[test]
    fn array_is_column_major() {
        let a = parse("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n4\n").unwrap();
        assert_eq!(
            a,
            DenseMatrix::from_rows(&[[1.0, 3.0], [2.0, 4.0]]).unwrap()
        );
    }

    #[test]
    fn rejects_with_line_numbers() {
        let line = |text: &str| match parse(text) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        };
        assert_eq!(
            line("%%MatrixMarket matrix coordinate pattern general\n2 2 1\n1 1\n"),
            1
        );
        assert_eq!(
            line("%%MatrixMarket matrix array complex general\n1 1\n1 0\n"),
            1
        );
        assert_eq!(
            line("%%MatrixMarket matrix array real symmetric\n1 1\n1\n"),
            1
        );
        assert_eq!(line("%%MatrixMarket matrix\n1 1\n1\n"), 1);
        assert_eq!(
            line("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1.0\n"),
            3
        );
        assert_eq!(
            line("%%MatrixMarket matrix array real general\n2 1\n1\nx\n"),
            4
        );
        assert_eq!(
            line("%%MatrixMarket matrix array real general\n2 1\n1\n"),
            3
        );
        assert_eq!(
            line("%%MatrixMarket matrix array real general\n1 1\n1\n2\n"),
            4
        );
    }
}
