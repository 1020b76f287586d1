//! Random problem generators and the experiment drivers.

pub mod gauss_markov;
pub mod generators;
pub mod multiview;
pub mod noise;
pub mod rng;

pub use gauss_markov::{
    gauss_markov_experiment, stacked_residual, GaussMarkovConfig, GaussMarkovRow,
};
pub use generators::{
    ar1_covariance, cs_covariance, gaussian_matrix, haar_orthogonal, inexact_cholesky, perturb,
    randsvd_matrix, sparse_nonneg_lowrank, CovarianceKind, CovarianceSpec, MatrixGenerator,
};
pub use multiview::{knn_classify, multiview_select, standardize, MultiviewSelection};
pub use noise::{noise_recovery_experiment, NoiseRecoveryConfig, NoiseRecoveryRow};
