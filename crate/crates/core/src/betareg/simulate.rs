//! Synthetic data for parameter-recovery checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Distribution};

use super::density::dot;
use super::{BetaRegError, Observation};
use crate::scoring::logistic;

/// Draw `yᵢ ~ Beta(μᵢφ, (1−μᵢ)φ)` with `μᵢ = logistic(xᵢ·β)`.
///
/// Deterministic for a fixed seed. A draw that lands exactly on 0 or 1 is
/// moved one machine epsilon inside the interval.
pub fn simulate(beta: &[f64], phi: f64, design: &[Vec<f64>], seed: u64) -> Result<Vec<Observation>, BetaRegError> {
    if !(phi > 0.0 && phi.is_finite()) {
        return Err(BetaRegError::Domain(format!("precision phi = {phi} must be positive and finite")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    design
        .iter()
        .enumerate()
        .map(|(i, x)| {
            if x.len() != beta.len() {
                return Err(BetaRegError::DomainAt {
                    row: i + 1,
                    message: format!("expected {} covariates, found {}", beta.len(), x.len()),
                });
            }
            let mu = logistic(dot(x, beta));
            let dist = Beta::new(mu * phi, (1.0 - mu) * phi)
                .map_err(|e| BetaRegError::DomainAt { row: i + 1, message: format!("beta draw: {e}") })?;
            let y = dist.sample(&mut rng);
            let y = if y <= 0.0 {
                f64::EPSILON
            } else if y >= 1.0 {
                1.0 - f64::EPSILON
            } else {
                y
            };
            Ok(Observation::new(y, x.clone()))
        })
        .collect()
}

const RUBRIC: [f64; 5] = [0.0, 25.0, 50.0, 75.0, 100.0];

fn goal_mean<R: Rng>(rng: &mut R, questions: usize) -> f64 {
    (0..questions).map(|_| RUBRIC[rng.random_range(0..RUBRIC.len())]).sum::<f64>() / questions as f64
}

/// Covariate rows shaped like pooled evaluation records:
/// `[1, Cov_S·Sb, Cov_C·Co, Cov_R·Re, Cov_Cp·Cp, LExp, Nl]`.
///
/// Goal means average uniformly drawn rubric grades (3, 2, 2 and 2
/// questions); each role selector is on with probability 1/2, LExp with
/// probability 1/2 and Nl with probability 1/5.
pub fn synthetic_design(n: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let cov = [goal_mean(&mut rng, 3), goal_mean(&mut rng, 2), goal_mean(&mut rng, 2), goal_mean(&mut rng, 2)];
            let mut row = Vec::with_capacity(7);
            row.push(1.0);
            for c in cov {
                row.push(if rng.random_bool(0.5) { c } else { 0.0 });
            }
            row.push(f64::from(u8::from(rng.random_bool(0.5))));
            row.push(f64::from(u8::from(rng.random_bool(0.2))));
            row
        })
        .collect()
}
