//! Maximum-likelihood fitting of the constant-precision beta regression.
//!
//! Parameters are `θ = (β, ω)` with `φ = exp(ω)`. Each iteration takes a
//! Newton step on the observed information when it is positive definite
//! and a Fisher-scoring step otherwise, halving the step until the
//! log-likelihood does not decrease. "Does not decrease" is judged up to
//! the rounding error of the log-likelihood sum itself; without that slack
//! the last quadratically convergent steps, whose gain is far below one ulp
//! of the total, would be rejected and the score would stall.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::density::{dot, log_density_unchecked, log_density_with_scale};
use super::special::{digamma, trigamma};
use super::{BetaRegError, Observation};
use crate::scoring::logistic;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    pub max_iterations: usize,
    /// Convergence requires the largest relative parameter step below this.
    pub step_tolerance: f64,
    /// ... and the Euclidean norm of the score below this.
    pub gradient_tolerance: f64,
    pub max_halvings: u32,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions { max_iterations: 200, step_tolerance: 1e-8, gradient_tolerance: 1e-6, max_halvings: 40 }
    }
}

/// Starting point for the optimizer.
#[derive(Debug, Clone, PartialEq)]
pub struct InitialValues {
    pub beta: Vec<f64>,
    pub phi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BetaRegFit {
    pub beta_hat: Vec<f64>,
    pub phi_hat: f64,
    pub se: Vec<f64>,
    pub phi_se: f64,
    pub p_values: Vec<f64>,
    pub loglik: f64,
    pub converged: bool,
    pub iterations: usize,
    pub gradient_norm: f64,
    /// Log-likelihood after each accepted iteration, starting value first.
    /// Non-decreasing up to the rounding error of the sum.
    pub loglik_trace: Vec<f64>,
    /// Fitted means μ̂ᵢ in observation order.
    pub fitted: Vec<f64>,
    /// True when the standard errors fell back to expected information.
    pub expected_information_se: bool,
}

impl BetaRegFit {
    pub fn n_coefficients(&self) -> usize {
        self.beta_hat.len()
    }

    pub fn z_values(&self) -> Vec<f64> {
        self.beta_hat.iter().zip(&self.se).map(|(b, s)| b / s).collect()
    }
}

/// Log-likelihood, score and both information matrices at one point.
pub(crate) struct Evaluation {
    pub loglik: f64,
    pub score: DVector<f64>,
    pub observed: DMatrix<f64>,
    pub expected: DMatrix<f64>,
}

pub(crate) fn check_data(data: &[Observation]) -> Result<usize, BetaRegError> {
    let p = data.first().map(|o| o.x.len()).ok_or(BetaRegError::InsufficientData { n: 0, p: 0 })?;
    if p == 0 {
        return Err(BetaRegError::Domain("observations have no covariates".into()));
    }
    for (i, obs) in data.iter().enumerate() {
        if obs.x.len() != p {
            return Err(BetaRegError::DomainAt {
                row: i + 1,
                message: format!("expected {p} covariates, found {}", obs.x.len()),
            });
        }
        if !(obs.y > 0.0 && obs.y < 1.0) {
            return Err(BetaRegError::DomainAt {
                row: i + 1,
                message: format!("response y = {} must lie strictly inside (0, 1)", obs.y),
            });
        }
        if let Some(v) = obs.x.iter().find(|v| !v.is_finite()) {
            return Err(BetaRegError::DomainAt { row: i + 1, message: format!("non-finite covariate {v}") });
        }
    }
    if data.len() < p + 1 {
        return Err(BetaRegError::InsufficientData { n: data.len(), p });
    }
    Ok(p)
}

fn design(data: &[Observation], p: usize) -> DMatrix<f64> {
    DMatrix::from_fn(data.len(), p, |i, j| data[i].x[j])
}

/// Rejects designs whose column-normalized form is numerically rank deficient.
pub(crate) fn check_rank(x: &DMatrix<f64>) -> Result<(), BetaRegError> {
    let mut scaled = x.clone();
    for (j, mut col) in scaled.column_iter_mut().enumerate() {
        let norm = col.norm();
        if norm == 0.0 {
            return Err(BetaRegError::RankDeficient { columns: vec![j] });
        }
        col /= norm;
    }
    let svd = scaled.svd(false, true);
    let sv = &svd.singular_values;
    let (imin, smin) =
        sv.iter().enumerate().fold((0, f64::INFINITY), |acc, (i, &s)| if s < acc.1 { (i, s) } else { acc });
    let smax = sv.max();
    if smin <= 1e-10 * smax {
        let v_t = svd.v_t.expect("requested V");
        let null = v_t.row(imin);
        let columns = (0..null.len()).filter(|&j| null[j].abs() > 0.1).collect();
        return Err(BetaRegError::RankDeficient { columns });
    }
    Ok(())
}

fn initial_values(x: &DMatrix<f64>, data: &[Observation]) -> Result<InitialValues, BetaRegError> {
    let (n, p) = x.shape();
    let z = DVector::from_iterator(n, data.iter().map(|o| (o.y / (1.0 - o.y)).ln()));
    let beta = x
        .clone()
        .svd(true, true)
        .solve(&z, 1e-12)
        .map_err(|e| BetaRegError::Domain(format!("least-squares start failed: {e}")))?;
    let eta = x * &beta;
    let resid = &z - &eta;
    let s2 = resid.norm_squared() / (n - p) as f64;
    let phi = if s2 > 0.0 {
        let total: f64 = eta
            .iter()
            .map(|&e| {
                let mu = logistic(e);
                let v = mu * (1.0 - mu);
                // μ(1−μ) / σᵢ² with σᵢ² = s² (μ(1−μ))²
                1.0 / (s2 * v)
            })
            .sum();
        total / n as f64 - 1.0
    } else {
        1.0
    };
    Ok(InitialValues { beta: beta.iter().copied().collect(), phi: if phi.is_finite() { phi.max(1.0) } else { 1.0 } })
}

/// Log-likelihood at `(β, ω)` and its rounding slack, or `-inf` where μ
/// leaves (0, 1) numerically.
fn loglik_at(theta: &DVector<f64>, data: &[Observation]) -> (f64, f64) {
    let p = theta.len() - 1;
    let phi = theta[p].exp();
    if !(phi > 0.0 && phi.is_finite()) {
        return (f64::NEG_INFINITY, 0.0);
    }
    let beta = theta.rows(0, p);
    let (mut total, mut scale) = (0.0, 0.0);
    for obs in data {
        let mu = logistic(dot(&obs.x, beta.as_slice()));
        if !(mu > 0.0 && mu < 1.0) {
            return (f64::NEG_INFINITY, 0.0);
        }
        let (v, m) = log_density_with_scale(obs.y, mu, phi);
        total += v;
        scale += m;
    }
    if total.is_nan() {
        (f64::NEG_INFINITY, 0.0)
    } else {
        (total, ROUNDING_ULPS * f64::EPSILON * scale)
    }
}

/// Multiplier on `ε · Σ|terms|` used as the acceptance slack.
const ROUNDING_ULPS: f64 = 16.0;

/// Score and information in the `(β, ω)` parameterization.
pub(crate) fn evaluate(theta: &DVector<f64>, data: &[Observation]) -> Evaluation {
    let p = theta.len() - 1;
    let phi = theta[p].exp();
    let beta = theta.rows(0, p);
    let k = p + 1;
    let mut score = DVector::zeros(k);
    let mut observed = DMatrix::zeros(k, k);
    let mut expected = DMatrix::zeros(k, k);
    let mut loglik = 0.0;
    let (psi_phi, tri_phi) = (digamma(phi), trigamma(phi));

    for obs in data {
        let mu = logistic(dot(&obs.x, beta.as_slice()));
        let (a, b) = (mu * phi, (1.0 - mu) * phi);
        let (tri_a, tri_b) = (trigamma(a), trigamma(b));
        let g = mu * (1.0 - mu);
        let y_star = (obs.y / (1.0 - obs.y)).ln();
        let mu_star = digamma(a) - digamma(b);
        let diff = y_star - mu_star;
        loglik += log_density_unchecked(obs.y, mu, phi);

        // Derivatives with respect to η and φ.
        let l_eta = phi * diff * g;
        let l_phi = mu * diff + (1.0 - obs.y).ln() - digamma(b) + psi_phi;
        let l_eta_eta = -phi * phi * (tri_a + tri_b) * g * g + phi * diff * g * (1.0 - 2.0 * mu);
        let cross = tri_a * mu - tri_b * (1.0 - mu);
        let l_eta_phi = g * (diff - phi * cross);
        let l_phi_phi = tri_phi - mu * mu * tri_a - (1.0 - mu) * (1.0 - mu) * tri_b;

        // Expected counterparts (E[y*] = μ*).
        let e_eta_eta = phi * phi * (tri_a + tri_b) * g * g;
        let e_eta_phi = g * phi * cross;
        let e_phi_phi = -l_phi_phi;

        for r in 0..p {
            let xr = obs.x[r];
            score[r] += l_eta * xr;
            for c in 0..=r {
                let xrc = xr * obs.x[c];
                observed[(r, c)] -= l_eta_eta * xrc;
                expected[(r, c)] += e_eta_eta * xrc;
            }
            // ω = ln φ: ∂/∂ω = φ ∂/∂φ
            observed[(p, r)] -= phi * l_eta_phi * xr;
            expected[(p, r)] += phi * e_eta_phi * xr;
        }
        score[p] += phi * l_phi;
        observed[(p, p)] -= phi * l_phi + phi * phi * l_phi_phi;
        expected[(p, p)] += phi * phi * e_phi_phi;
    }
    for r in 0..k {
        for c in (r + 1)..k {
            observed[(r, c)] = observed[(c, r)];
            expected[(r, c)] = expected[(c, r)];
        }
    }
    Evaluation { loglik, score, observed, expected }
}

/// Analytic score with respect to `(β, φ)` (precision on its natural scale).
pub fn score(beta: &[f64], phi: f64, data: &[Observation]) -> Vec<f64> {
    let mut theta: Vec<f64> = beta.to_vec();
    theta.push(phi.ln());
    let eval = evaluate(&DVector::from_vec(theta), data);
    let mut out: Vec<f64> = eval.score.iter().copied().collect();
    let last = out.len() - 1;
    out[last] /= phi;
    out
}

fn relative_step(step: &DVector<f64>, theta: &DVector<f64>) -> f64 {
    step.iter().zip(theta.iter()).map(|(d, t)| d.abs() / t.abs().max(1.0)).fold(0.0, f64::max)
}

fn newton_direction(eval: &Evaluation) -> Option<DVector<f64>> {
    let chol = eval.observed.clone().cholesky()?;
    Some(chol.solve(&eval.score))
}

fn scoring_direction(eval: &Evaluation) -> Option<DVector<f64>> {
    if let Some(chol) = eval.expected.clone().cholesky() {
        return Some(chol.solve(&eval.score));
    }
    eval.expected.clone().svd(true, true).solve(&eval.score, 1e-12).ok()
}

/// Fit the model by maximum likelihood.
///
/// Fails with [`BetaRegError::NotConverged`] (carrying the last iterate)
/// when the tolerances in `options` are not met.
pub fn fit(data: &[Observation], init: Option<InitialValues>) -> Result<BetaRegFit, BetaRegError> {
    fit_with(data, init, FitOptions::default())
}

pub fn fit_with(
    data: &[Observation],
    init: Option<InitialValues>,
    options: FitOptions,
) -> Result<BetaRegFit, BetaRegError> {
    let p = check_data(data)?;
    let x = design(data, p);
    check_rank(&x)?;
    let start = match init {
        Some(v) => {
            if v.beta.len() != p || v.phi.is_nan() || v.phi <= 0.0 {
                return Err(BetaRegError::Domain("initial values do not match the design".into()));
            }
            v
        }
        None => initial_values(&x, data)?,
    };

    let mut theta = DVector::from_iterator(p + 1, start.beta.iter().copied().chain([start.phi.ln()]));
    let (mut ll, mut slack) = loglik_at(&theta, data);
    if !ll.is_finite() {
        return Err(BetaRegError::Domain("log-likelihood is not finite at the starting values".into()));
    }
    let mut trace = vec![ll];
    let mut converged = false;
    let mut iterations = 0;
    let mut eval = evaluate(&theta, data);

    while iterations < options.max_iterations {
        let Some(direction) = newton_direction(&eval).or_else(|| scoring_direction(&eval)) else {
            break;
        };
        let grad_norm = eval.score.norm();
        if relative_step(&direction, &theta) < options.step_tolerance && grad_norm < options.gradient_tolerance {
            converged = true;
            break;
        }
        iterations += 1;

        let mut t = 1.0;
        let mut accepted = None;
        for _ in 0..=options.max_halvings {
            let candidate = &theta + &direction * t;
            let (cand_ll, cand_slack) = loglik_at(&candidate, data);
            if cand_ll >= ll - slack.max(cand_slack) {
                accepted = Some((candidate, cand_ll, cand_slack));
                break;
            }
            t *= 0.5;
        }
        match accepted {
            Some((candidate, cand_ll, cand_slack)) => {
                theta = candidate;
                ll = cand_ll;
                slack = cand_slack;
                trace.push(ll);
                eval = evaluate(&theta, data);
            }
            None => {
                // No ascent possible along the direction: at the optimum up
                // to rounding, or stalled.
                converged = grad_norm < options.gradient_tolerance;
                break;
            }
        }
    }

    let result = summarize(&theta, &eval, data, converged, iterations, trace);
    if result.converged {
        Ok(result)
    } else {
        Err(BetaRegError::NotConverged(Box::new(result)))
    }
}

fn summarize(
    theta: &DVector<f64>,
    eval: &Evaluation,
    data: &[Observation],
    converged: bool,
    iterations: usize,
    trace: Vec<f64>,
) -> BetaRegFit {
    let p = theta.len() - 1;
    let phi = theta[p].exp();
    let (cov, fallback) = match eval.observed.clone().cholesky() {
        Some(chol) => (chol.inverse(), false),
        None => {
            (eval.expected.clone().try_inverse().unwrap_or_else(|| DMatrix::from_element(p + 1, p + 1, f64::NAN)), true)
        }
    };
    let se: Vec<f64> = (0..p).map(|j| cov[(j, j)].sqrt()).collect();
    let beta_hat: Vec<f64> = theta.rows(0, p).iter().copied().collect();
    let p_values = beta_hat.iter().zip(&se).map(|(b, s)| super::wald_pvalue(b / s)).collect();
    BetaRegFit {
        fitted: data.iter().map(|o| logistic(dot(&o.x, &beta_hat))).collect(),
        beta_hat,
        phi_hat: phi,
        se,
        // delta method from the log scale
        phi_se: phi * cov[(p, p)].sqrt(),
        p_values,
        loglik: eval.loglik,
        converged,
        iterations,
        gradient_norm: eval.score.norm(),
        loglik_trace: trace,
        expected_information_se: fallback,
    }
}
