use libm::erfc;
use serde::Serialize;

use super::density::dot;
use super::{BetaRegFit, Observation};
use crate::scoring::logistic;

/// Standardized residuals `(yᵢ − μ̂ᵢ) / sqrt(μ̂ᵢ(1 − μ̂ᵢ)/(1 + φ̂))` by index.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualSet {
    pub pairs: Vec<(usize, f64)>,
}

impl ResidualSet {
    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.pairs.iter().map(|&(_, r)| r)
    }

    pub fn mean(&self) -> f64 {
        if self.pairs.is_empty() {
            return 0.0;
        }
        self.values().sum::<f64>() / self.pairs.len() as f64
    }

    /// Plot-ready `index,residual` lines with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,residual\n");
        for (i, r) in &self.pairs {
            out.push_str(&format!("{i},{r:.9}\n"));
        }
        out
    }
}

pub fn standardized_residual(y: f64, mu: f64, phi: f64) -> f64 {
    (y - mu) / (mu * (1.0 - mu) / (1.0 + phi)).sqrt()
}

/// Residuals of `data` under a fitted model. Indices are 1-based.
pub fn residuals(fit: &BetaRegFit, data: &[Observation]) -> ResidualSet {
    let pairs = data
        .iter()
        .enumerate()
        .map(|(i, o)| {
            let mu = logistic(dot(&o.x, &fit.beta_hat));
            (i + 1, standardized_residual(o.y, mu, fit.phi_hat))
        })
        .collect();
    ResidualSet { pairs }
}

/// Two-sided normal tail probability of a Wald statistic.
pub fn wald_pvalue(z: f64) -> f64 {
    if z.is_nan() {
        return f64::NAN;
    }
    erfc(z.abs() / std::f64::consts::SQRT_2)
}

pub fn wald_pvalues(fit: &BetaRegFit) -> Vec<f64> {
    fit.z_values().into_iter().map(wald_pvalue).collect()
}
