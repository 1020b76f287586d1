//! Matrix Market files, CSV result tables, JSON decomposition records and
//! numeric CSV views.

mod mtx;
mod results;
mod views;

pub use mtx::{parse_matrix_market, read_matrix_market, write_matrix_market};
pub use results::{
    read_csv, read_json, write_csv, write_json, write_results, DecompositionRecord,
    FeatureSelectionRecord, FlatMatrix, ResultFormat, TableRow,
};
pub use views::read_csv_matrix;

use std::path::Path;

use crate::error::Error;

pub(crate) fn io_error(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.to_path_buf(),
        source,
    }
}
