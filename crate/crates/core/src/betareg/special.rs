//! Polygamma helpers for the beta likelihood derivatives.

pub use statrs::function::gamma::{digamma, ln_gamma};

/// Trigamma function ψ'(x) for x > 0.
///
/// Upward recurrence ψ'(x) = ψ'(x + 1) + 1/x² until x ≥ 10, then the
/// asymptotic Bernoulli series.
pub fn trigamma(x: f64) -> f64 {
    if x.is_nan() || x <= 0.0 || x.is_infinite() {
        return f64::NAN;
    }
    let mut x = x;
    let mut acc = 0.0;
    while x < 10.0 {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    let z = 1.0 / (x * x);
    // 1/x + 1/(2x²) + Σ B_2k / x^(2k+1)
    let series = z
        * (1.0 / 6.0
            + z * (-1.0 / 30.0 + z * (1.0 / 42.0 + z * (-1.0 / 30.0 + z * (5.0 / 66.0 + z * (-691.0 / 2730.0))))));
    acc + 1.0 / x + z / 2.0 + series / x
}
