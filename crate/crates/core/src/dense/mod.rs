//! Dense factorization and solver kernels.

mod cholesky;
mod lstsq;
pub(crate) mod qr;
mod svd;
mod triangular;

pub use cholesky::cholesky;
pub use lstsq::{least_squares, least_squares_right, LeastSquares, RANK_TOL};
pub use qr::{qr, Pivoting, Qr, QrMode};
pub use svd::{singular_values, spectral_norm, svd, Svd, SvdMode};
pub use triangular::{solve_triangular, Side, Uplo};
