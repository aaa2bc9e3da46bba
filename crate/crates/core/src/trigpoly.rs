//! Even cosine polynomials `p(φ) = Σ a_k cos(kφ)` and their admissibility
//! certificate.
//!
//! A polynomial is admissible when every coefficient is non-negative,
//! `a₀ < a₁`, and `p(φ) ≥ 0` for all `φ`. Non-negativity is certified on a
//! uniform grid over `[0, π]` (evenness and periodicity cover the rest) with
//! a second-order interpolation slack: on a cell of width `h`,
//! `p ≥ min(p(φᵢ), p(φᵢ₊₁)) − L₂h²/8` where `L₂ = Σ k²|a_k|` bounds `|p''|`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classical::BoundConfig;
use crate::error::{Error, Result};
use crate::numeric::CompensatedSum;

/// Coefficients of the degree-16 polynomial that produces the published
/// region constants, verbatim as decimal strings.
pub const MT16_COEFFS: [&str; 17] = [
    "1",
    "1.74126664022806",
    "1.128282822804652",
    "0.5065272432186642",
    "0.1253566902628852",
    "2.372710620e-26",
    "2.818732841e-22",
    "0.01201214561729989",
    "0.006875849760911001",
    "2.064157910e-23",
    "6.601587090e-11",
    "0.001608306592372963",
    "0.001017994683287104",
    "6.728831293e-11",
    "3.682448595e-11",
    "2.949853019e-6",
    "0.00003713656497",
];

/// A cosine polynomial with finite coefficients `(a₀, …, a_n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPoly {
    coeffs: Vec<f64>,
}

impl TrigPoly {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyPolynomial);
        }
        if let Some(index) = coeffs.iter().position(|a| !a.is_finite()) {
            return Err(Error::NonFiniteCoefficient { index });
        }
        Ok(Self { coeffs })
    }

    /// The embedded degree-16 polynomial.
    pub fn mt16() -> Self {
        let coeffs = MT16_COEFFS
            .iter()
            .map(|s| s.parse().expect("embedded coefficient literal"))
            .collect();
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn a0(&self) -> f64 {
        self.coeffs[0]
    }

    /// `a₁`, or 0 for a constant polynomial.
    pub fn a1(&self) -> f64 {
        self.coeffs.get(1).copied().unwrap_or(0.0)
    }

    /// `Σ a_k`, which is also `p(0)`.
    pub fn coeff_sum(&self) -> f64 {
        self.coeffs
            .iter()
            .copied()
            .collect::<CompensatedSum>()
            .value()
    }

    pub fn eval(&self, phi: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| a * (k as f64 * phi).cos())
            .collect::<CompensatedSum>()
            .value()
    }

    /// `Σ k|a_k|`, a Lipschitz constant for `p`.
    pub fn lipschitz(&self) -> f64 {
        self.weighted_abs_sum(1)
    }

    /// `Σ k²|a_k|`, a bound on `|p''|`.
    pub fn curvature_bound(&self) -> f64 {
        self.weighted_abs_sum(2)
    }

    fn weighted_abs_sum(&self, power: i32) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| (k as f64).powi(power) * a.abs())
            .collect::<CompensatedSum>()
            .value()
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.coeffs.iter().map(|a| a * factor).collect())
    }

    /// Extends with zero coefficients up to `degree`; never truncates.
    pub fn padded(&self, degree: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < degree + 1 {
            coeffs.resize(degree + 1, 0.0);
        }
        Self { coeffs }
    }

    /// Checks `a_k ≥ 0` for all k and `a₀ < a₁`, the constraints every bound
    /// formula relies on.
    pub fn check_coefficients(&self) -> Result<()> {
        if let Some(k) = self.coeffs.iter().position(|a| *a < 0.0) {
            return Err(Error::Inadmissible(format!(
                "a_{k} = {} < 0",
                self.coeffs[k]
            )));
        }
        if !(self.a0() < self.a1()) {
            return Err(Error::Inadmissible(format!(
                "a0 = {} is not below a1 = {}",
                self.a0(),
                self.a1()
            )));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: PolyFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if file.coeffs.len() != file.degree + 1 {
            return Err(Error::DegreeMismatch {
                degree: file.degree,
                len: file.coeffs.len(),
            });
        }
        let coeffs = file
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, s)| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Parse(format!("coeffs[{k}] = {s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(coeffs)
    }

    pub fn to_json(&self) -> String {
        let file = PolyFile {
            degree: self.degree(),
            coeffs: self.coeffs.iter().map(|a| format_coeff(*a)).collect(),
        };
        serde_json::to_string_pretty(&file).expect("polynomial file serializes")
    }
}

/// On-disk form: `{"degree": n, "coeffs": ["a0", …, "an"]}` with decimal
/// strings so that ingest rounds exactly once.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyFile {
    degree: usize,
    coeffs: Vec<String>,
}

// Shortest round-tripping decimal; exponent form for tiny magnitudes.
fn format_coeff(a: f64) -> String {
    if a != 0.0 && a.abs() < 1e-4 {
        format!("{a:e}")
    } else {
        format!("{a}")
    }
}

/// Outcome of [`verify_admissible`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdmissibilityReport {
    pub nonneg_ok: bool,
    pub coeff_sign_ok: bool,
    pub a0_lt_a1_ok: bool,
    /// Certified lower bound for `min p` over `[0, π]`.
    pub min_value_lower_bound: f64,
    /// Grid angle where the smallest sample occurred.
    pub witness_phi: f64,
    /// `p(witness_phi)`.
    pub grid_min: f64,
    pub grid_points: usize,
}

impl AdmissibilityReport {
    pub fn admissible(&self) -> bool {
        self.nonneg_ok && self.coeff_sign_ok && self.a0_lt_a1_ok
    }
}

/// Certifies membership in the admissible class on `cfg.nonneg_grid_points`
/// points with tolerance `cfg.nonneg_tol`.
pub fn verify_admissible(p: &TrigPoly, cfg: &BoundConfig) -> Result<AdmissibilityReport> {
    let points = cfg.nonneg_grid_points;
    if points < 2 {
        return Err(Error::Domain(format!(
            "verification grid needs at least 2 points, got {points}"
        )));
    }
    let h = PI / (points - 1) as f64;
    let values: Vec<f64> = (0..points)
        .into_par_iter()
        .map(|i| p.eval(grid_angle(i, points, h)))
        .collect();
    let (bound, argmin) = grid_lower_bound(&values, h, p.curvature_bound());
    let coeffs = p.coeffs();
    Ok(AdmissibilityReport {
        nonneg_ok: bound >= -cfg.nonneg_tol,
        coeff_sign_ok: coeffs.iter().all(|a| *a >= 0.0),
        a0_lt_a1_ok: p.a0() < p.a1(),
        min_value_lower_bound: bound,
        witness_phi: grid_angle(argmin, points, h),
        grid_min: values[argmin],
        grid_points: points,
    })
}

fn grid_angle(i: usize, points: usize, h: f64) -> f64 {
    if i + 1 == points {
        PI
    } else {
        i as f64 * h
    }
}

/// Returns the certified lower bound over all cells and the index of the
/// smallest sample. Ties resolve to the lowest index.
pub(crate) fn grid_lower_bound(values: &[f64], h: f64, curvature: f64) -> (f64, usize) {
    let slack = curvature * h * h / 8.0;
    let mut argmin = 0;
    for (i, v) in values.iter().enumerate() {
        if *v < values[argmin] {
            argmin = i;
        }
    }
    let cell_min = values
        .windows(2)
        .map(|w| w[0].min(w[1]))
        .fold(values[argmin], f64::min);
    (cell_min - slack, argmin)
}

/// Cached cosine table for repeated certification on a fixed coarse grid,
/// used where many nearby polynomials are checked.
#[derive(Debug, Clone)]
pub struct GridCertifier {
    points: usize,
    terms: usize,
    h: f64,
    // row-major: cos_table[k * points + i] = cos(k φᵢ)
    cos_table: Vec<f64>,
}

impl GridCertifier {
    pub fn new(degree: usize, points: usize) -> Result<Self> {
        if points < 2 {
            return Err(Error::Domain(format!(
                "certification grid needs at least 2 points, got {points}"
            )));
        }
        let h = PI / (points - 1) as f64;
        let terms = degree + 1;
        let mut cos_table = Vec::with_capacity(terms * points);
        for k in 0..terms {
            cos_table.extend((0..points).map(|i| (k as f64 * grid_angle(i, points, h)).cos()));
        }
        Ok(Self {
            points,
            terms,
            h,
            cos_table,
        })
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn column(&self, k: usize) -> &[f64] {
        &self.cos_table[k * self.points..(k + 1) * self.points]
    }

    /// Samples of `p` on the grid.
    pub fn values(&self, coeffs: &[f64]) -> Vec<f64> {
        assert!(
            coeffs.len() <= self.terms,
            "polynomial degree exceeds certifier degree"
        );
        let mut out = vec![0.0; self.points];
        for (k, a) in coeffs.iter().enumerate() {
            if *a == 0.0 {
                continue;
            }
            for (o, c) in out.iter_mut().zip(self.column(k)) {
                *o += a * c;
            }
        }
        out
    }

    /// Certified lower bound of `min p` from grid samples.
    pub fn lower_bound(&self, values: &[f64], coeffs: &[f64]) -> f64 {
        let curvature: f64 = coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| (k * k) as f64 * a.abs())
            .sum();
        grid_lower_bound(values, self.h, curvature).0
    }
}
