//! Delimited dataset files and the fit report.
//!
//! Datasets carry one header row, `y,cov_s,cov_c,cov_r,cov_cp,lexp,nl`,
//! with covariates already multiplied by their role selectors. The
//! intercept column is added on read.

use std::fmt::Write as _;

use serde::Serialize;

use super::{residuals, BetaRegError, BetaRegFit, Observation, ResidualSet};
use crate::scoring::Coefficients;

pub const HEADER: [&str; 7] = ["y", "cov_s", "cov_c", "cov_r", "cov_cp", "lexp", "nl"];

/// Parse a dataset. Row numbers in errors count data rows from 1.
pub fn read_dataset(text: &str) -> Result<Vec<Observation>, BetaRegError> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| BetaRegError::Dataset(e.to_string()))?;
    let found: Vec<&str> = header.iter().collect();
    if found != HEADER {
        return Err(BetaRegError::Dataset(format!(
            "header must be `{}`, found `{}`",
            HEADER.join(","),
            found.join(",")
        )));
    }
    let mut out = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let row = i + 1;
        let record = record.map_err(|e| BetaRegError::DomainAt { row, message: e.to_string() })?;
        let values = record
            .iter()
            .zip(HEADER)
            .map(|(field, name)| {
                field.parse::<f64>().map_err(|_| BetaRegError::DomainAt {
                    row,
                    message: format!("column {name}: `{field}` is not a number"),
                })
            })
            .collect::<Result<Vec<f64>, _>>()?;
        let y = values[0];
        if !(y > 0.0 && y < 1.0) {
            return Err(BetaRegError::DomainAt {
                row,
                message: format!("y = {y} is outside the open interval (0, 1)"),
            });
        }
        let mut x = Vec::with_capacity(7);
        x.push(1.0);
        x.extend_from_slice(&values[1..]);
        out.push(Observation::new(y, x));
    }
    Ok(out)
}

/// Inverse of [`read_dataset`] for rows with an intercept in column 0.
pub fn write_dataset(data: &[Observation]) -> String {
    let mut out = HEADER.join(",");
    out.push('\n');
    for o in data {
        let _ = write!(out, "{:.17}", o.y);
        for v in o.x.iter().skip(1) {
            let _ = write!(out, ",{v}");
        }
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoefficientRow {
    pub name: String,
    pub description: String,
    pub estimate: f64,
    pub std_error: f64,
    pub z: f64,
    pub p_value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitReport {
    pub n: usize,
    pub coefficients: Vec<CoefficientRow>,
    pub phi: f64,
    pub phi_std_error: f64,
    pub loglik: f64,
    pub iterations: usize,
    pub converged: bool,
    pub residual_mean: f64,
    #[serde(skip)]
    pub residuals: ResidualSet,
}

impl FitReport {
    pub fn new(fit: &BetaRegFit, data: &[Observation]) -> Self {
        let descriptions: Vec<String> = if fit.n_coefficients() == 7 {
            Coefficients::DESCRIPTIONS.iter().map(|s| s.to_string()).collect()
        } else {
            (1..=fit.n_coefficients()).map(|j| format!("x{j}")).collect()
        };
        let coefficients = fit
            .beta_hat
            .iter()
            .zip(&fit.se)
            .zip(&fit.p_values)
            .zip(descriptions)
            .enumerate()
            .map(|(j, (((&estimate, &std_error), &p_value), description))| CoefficientRow {
                name: format!("B{}", j + 1),
                description,
                estimate,
                std_error,
                z: estimate / std_error,
                p_value,
            })
            .collect();
        let residuals = residuals(fit, data);
        FitReport {
            n: data.len(),
            coefficients,
            phi: fit.phi_hat,
            phi_std_error: fit.phi_se,
            loglik: fit.loglik,
            iterations: fit.iterations,
            converged: fit.converged,
            residual_mean: residuals.mean(),
            residuals,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("fit report serializes");
        s.push('\n');
        s
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "Beta regression (logit link, constant precision), n = {}", self.n);
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "{:<12} {:<12} {:>14} {:>12} {:>10} {:>10}",
            "Coefficient", "Description", "Estimate", "Std. Error", "z", "p-Value"
        );
        for r in &self.coefficients {
            let _ = writeln!(
                out,
                "{:<12} {:<12} {:>14.6} {:>12.6} {:>10.3} {:>10.4}",
                r.name, r.description, r.estimate, r.std_error, r.z, r.p_value
            );
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "Precision phi: {:.6} (std. error {:.6})", self.phi, self.phi_std_error);
        let _ = writeln!(out, "Log-likelihood: {:.6}", self.loglik);
        let _ = writeln!(out, "Iterations: {}   Converged: {}", self.iterations, self.converged);
        let _ = writeln!(out, "Mean standardized residual: {:.6}", self.residual_mean);
        out
    }
}
