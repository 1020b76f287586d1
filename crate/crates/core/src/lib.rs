//! CUR, generalized CUR and restricted-SVD-guided CUR decompositions of
//! dense matrices, with DEIM and Q-DEIM index selection.
//!
//! The dense kernels (Householder QR, Jacobi SVD, Cholesky) sit under
//! [`dense`]; [`gsvd`] and [`rsvd`] build the generalized and restricted
//! SVDs on top of them, and [`cur`] turns those into index-based
//! factorizations. [`harness`] holds the random generators and experiments,
//! [`io`] the file formats.

pub mod bounds;
pub mod cur;
pub mod dense;
pub mod error;
pub mod gsvd;
pub mod harness;
pub mod io;
pub mod matrix;
pub mod rsvd;
pub mod selection;

pub use error::{Error, Result};
pub use matrix::{DenseMatrix, IndexList};
