//! Beta regression with logit mean link and constant precision, used to
//! re-estimate the quality formula's coefficients from evaluation data.
//!
//! The response `y ∈ (0, 1)` follows `Beta(μφ, (1−μ)φ)` with
//! `logit(μ) = x·β`. Estimation is by maximum likelihood.

mod dataset;
mod density;
mod diagnostics;
mod fit;
mod simulate;
mod special;

use thiserror::Error;

pub use dataset::{read_dataset, write_dataset, CoefficientRow, FitReport, HEADER};
pub use density::{beta_log_density, log_likelihood};
pub use diagnostics::{residuals, standardized_residual, wald_pvalue, wald_pvalues, ResidualSet};
pub use fit::{fit, fit_with, score, BetaRegFit, FitOptions, InitialValues};
pub use simulate::{simulate, synthetic_design};
pub use special::trigamma;

/// One response with its covariate row (intercept included).
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Observation {
    pub y: f64,
    pub x: Vec<f64>,
}

impl Observation {
    pub fn new(y: f64, x: Vec<f64>) -> Self {
        Observation { y, x }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BetaRegError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("domain error at row {row}: {message}")]
    DomainAt { row: usize, message: String },
    #[error("design matrix is rank deficient (collinear columns {columns:?})")]
    RankDeficient { columns: Vec<usize> },
    #[error("need at least {} observations for {p} coefficients, got {n}", p + 1)]
    InsufficientData { n: usize, p: usize },
    #[error("fit did not converge after {} iterations (gradient norm {:.3e})", .0.iterations, .0.gradient_norm)]
    NotConverged(Box<BetaRegFit>),
    #[error("dataset: {0}")]
    Dataset(String),
}

impl BetaRegError {
    pub(crate) fn at_row(self, row: usize) -> Self {
        match self {
            BetaRegError::Domain(message) => BetaRegError::DomainAt { row, message },
            other => other,
        }
    }
}
