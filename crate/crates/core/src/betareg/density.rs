use super::special::ln_gamma;
use super::{BetaRegError, Observation};
use crate::scoring::logistic;

/// Log density of the beta distribution in mean/precision form:
/// `Beta(μφ, (1−μ)φ)` evaluated at `y`.
pub fn beta_log_density(y: f64, mu: f64, phi: f64) -> Result<f64, BetaRegError> {
    if !(y > 0.0 && y < 1.0) {
        return Err(BetaRegError::Domain(format!("response y = {y} must lie in (0, 1)")));
    }
    if !(mu > 0.0 && mu < 1.0) {
        return Err(BetaRegError::Domain(format!("mean mu = {mu} must lie in (0, 1)")));
    }
    if !(phi > 0.0 && phi.is_finite()) {
        return Err(BetaRegError::Domain(format!("precision phi = {phi} must be positive and finite")));
    }
    Ok(log_density_unchecked(y, mu, phi))
}

pub(crate) fn log_density_unchecked(y: f64, mu: f64, phi: f64) -> f64 {
    let a = mu * phi;
    let b = (1.0 - mu) * phi;
    ln_gamma(phi) - ln_gamma(a) - ln_gamma(b) + (a - 1.0) * y.ln() + (b - 1.0) * (1.0 - y).ln()
}

/// Log-density together with the summed magnitude of its terms, which
/// bounds the rounding error of the evaluation.
pub(crate) fn log_density_with_scale(y: f64, mu: f64, phi: f64) -> (f64, f64) {
    let a = mu * phi;
    let b = (1.0 - mu) * phi;
    let terms = [ln_gamma(phi), -ln_gamma(a), -ln_gamma(b), (a - 1.0) * y.ln(), (b - 1.0) * (1.0 - y).ln()];
    (terms.iter().sum(), terms.iter().map(|t| t.abs()).sum())
}

pub(crate) fn dot(x: &[f64], beta: &[f64]) -> f64 {
    x.iter().zip(beta).map(|(a, b)| a * b).sum()
}

/// Log-likelihood of a logit-link beta regression.
pub fn log_likelihood(beta: &[f64], phi: f64, data: &[Observation]) -> Result<f64, BetaRegError> {
    let mut total = 0.0;
    for (i, obs) in data.iter().enumerate() {
        if obs.x.len() != beta.len() {
            return Err(BetaRegError::Domain(format!(
                "observation {i} has {} covariates, coefficient vector has {}",
                obs.x.len(),
                beta.len()
            )));
        }
        let mu = logistic(dot(&obs.x, beta));
        total += beta_log_density(obs.y, mu, phi).map_err(|e| e.at_row(i + 1))?;
    }
    Ok(total)
}
