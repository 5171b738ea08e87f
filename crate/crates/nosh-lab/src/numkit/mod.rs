//! Numeric foundation: labeled columnar data, least squares, and
//! heteroskedasticity-robust covariance.
//!
//! Everything here is deliberately small and explicit. Estimation code in
//! [`crate::ivest`] builds on three primitives:
//!
//! * [`Dataset`] — named, equal-length, all-finite `f64` columns;
//! * [`fit_least_squares`] — QR-based ordinary least squares with an explicit
//!   rank check that names the offending columns;
//! * [`sandwich_cov`] — the HC0 ("sandwich") covariance for just-identified
//!   instrumental-variable moment conditions, of which ordinary least squares
//!   is the special case where instruments and regressors coincide.

mod dataset;
mod lsq;

pub use dataset::Dataset;
pub use lsq::{
    fit_least_squares, sample_cov, sample_mean, sample_median, sandwich_cov, DesignMatrix,
    LinearFit,
};

use thiserror::Error;

/// Errors produced by the numeric layer.
#[derive(Debug, Error)]
pub enum NumError {
    /// Inputs violated a shape or value precondition (empty, length mismatch,
    /// non-finite entries, duplicate or empty column names, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A requested column does not exist in the dataset.
    #[error("unknown column {0:?}")]
    UnknownColumn(String),

    /// The design matrix is rank deficient; `columns` names the columns whose
    /// QR pivots fell below the relative tolerance.
    #[error("rank-deficient design: column(s) {columns:?} are linearly dependent on the others")]
    RankDeficient { columns: Vec<String> },

    /// The instrument/regressor cross-product matrix is (numerically)
    /// singular, which signals weak or collinear instruments.
    #[error("singular instrument cross-product involving column(s) {columns:?}: instruments are weak or collinear")]
    SingularCrossProduct { columns: Vec<String> },
}
