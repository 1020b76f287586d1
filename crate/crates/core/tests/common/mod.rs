#![allow(dead_code)]

use tricur::dense::spectral_norm;
use tricur::harness::gaussian_matrix;
use tricur::DenseMatrix;

/// `‖x − y‖_F / ‖y‖_F`.
pub fn rel(x: &DenseMatrix, y: &DenseMatrix) -> f64 {
    x.sub(y).frobenius_norm() / y.frobenius_norm()
}

pub fn spectral_rel(x: &DenseMatrix, y: &DenseMatrix) -> f64 {
    spectral_norm(&x.sub(y)).unwrap() / spectral_norm(y).unwrap()
}

pub fn randn(rows: usize, cols: usize, seed: u64) -> DenseMatrix {
    gaussian_matrix(rows, cols, seed)
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}
