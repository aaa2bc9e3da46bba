//! Real digamma function ψ = Γ'/Γ.

use crate::error::{Error, Result};
use crate::numeric::CompensatedSum;

/// Arguments below this are shifted up with ψ(x+1) = ψ(x) + 1/x before the
/// asymptotic series is used.
const SHIFT_THRESHOLD: f64 = 10.0;

/// B₂ₙ/(2n) for n = 1..7, i.e. through B₁₄.
const SERIES: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
];

/// |B₁₆/16|, the first omitted coefficient.
const FIRST_OMITTED: f64 = 3617.0 / 510.0 / 16.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DigammaResult {
    pub value: f64,
    pub est_abs_error: f64,
}

/// ψ(x) for finite `x > 0`.
pub fn digamma(x: f64) -> Result<DigammaResult> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!(
            "digamma requires finite x > 0, got {x}"
        )));
    }
    // Shift terms and the series share one compensated accumulator so that
    // ψ(x) and ψ(x+1) differ by a correctly rounded 1/x.
    let mut acc = CompensatedSum::new();
    let mut shift = 0.0;
    let mut y = x;
    while y < SHIFT_THRESHOLD {
        acc.add(-1.0 / y);
        shift += 1.0 / y;
        y += 1.0;
    }
    let inv2 = 1.0 / (y * y);
    // Horner in 1/y² for Σ B₂ₙ/(2n y²ⁿ).
    let tail = SERIES.iter().rev().fold(0.0, |acc, c| (acc + c) * inv2);
    acc.add(y.ln());
    acc.add(-0.5 / y);
    acc.add(-tail);
    let value = acc.value();

    let truncation = FIRST_OMITTED * inv2.powi(8);
    let rounding = 4.0 * f64::EPSILON * (y.ln().abs() + shift + value.abs());
    Ok(DigammaResult {
        value,
        est_abs_error: truncation + rounding,
    })
}
