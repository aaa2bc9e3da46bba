//! Constants of the classical zero-free region `σ ≥ 1 − 1/(C₁ log d_L +
//! C₂ n_L log|t| + C₃ n_L + C₄)` for `|t| ≥ 1`.
//!
//! The chain is: the differenced terms `Σ_k(σ,t) = F(σ+ikt,1) − κF(σ₁+ikt,1)`
//! bounded by `α_ε` (k = 0) and `B_ε(k)`; the gamma-factor terms bounded by
//! `d_ε(0)` (k = 0) and `S(k,ε) = min(S₁, S₂)` from two bounds on `Ξ`; and
//! finally the constants `c₁…c₄` divided by `M = max_r a₁/(1+r) − a₀/r`.

pub mod audit;

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{check_range, Error, Result};
use crate::numeric::{bisect, central_diff, round_up, round_up_published, CompensatedSum};
use crate::specialfun::digamma;
use crate::trigpoly::TrigPoly;

pub use audit::{AuditFinding, AuditReport};

/// Largest ε for which the monotonicity arguments are stated.
pub const EPSILON_MAX: f64 = 0.15;

/// Finite-difference step for every derivative check.
pub const FD_STEP: f64 = 1e-6;

/// How the Method I term `Ξ₂` is bounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Xi2Bound {
    /// `Ξ₂(1+ε, k, 1, δ)`, reproducing the published table.
    Published,
    /// The larger of `Ξ₂(1+ε, k, 1, δ)`, the audit-grid maximum and the
    /// `t → ∞` limit 0.
    Audited,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundConfig {
    pub epsilon: f64,
    pub kmax: usize,
    pub grid_points_t: usize,
    pub grid_points_sigma: usize,
    /// Upper end of the t-range of the audit grids.
    pub t_max: f64,
    pub nonneg_tol: f64,
    pub nonneg_grid_points: usize,
    pub table_round_dp: u32,
    pub xi2_bound: Xi2Bound,
}

impl Default for BoundConfig {
    fn default() -> Self {
        Self {
            epsilon: 0.01,
            kmax: 16,
            grid_points_t: 400,
            grid_points_sigma: 400,
            t_max: 100.0,
            nonneg_tol: 1e-9,
            nonneg_grid_points: 1_000_001,
            table_round_dp: 8,
            xi2_bound: Xi2Bound::Published,
        }
    }
}

impl BoundConfig {
    pub fn new(epsilon: f64) -> Result<Self> {
        let cfg = Self {
            epsilon,
            ..Self::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_kmax(mut self, kmax: usize) -> Self {
        self.kmax = kmax;
        self
    }

    pub fn validate(&self) -> Result<()> {
        validate_epsilon(self.epsilon)?;
        if self.kmax == 0 {
            return Err(Error::Domain("kmax must be positive".into()));
        }
        if self.grid_points_t < 2 || self.grid_points_sigma < 2 {
            return Err(Error::Domain(
                "audit grids need at least 2 points per axis".into(),
            ));
        }
        check_range("t_max", self.t_max, "(1, inf)", self.t_max > 1.0)?;
        check_range(
            "nonneg_tol",
            self.nonneg_tol,
            "(0, inf)",
            self.nonneg_tol > 0.0,
        )?;
        if self.table_round_dp == 0 {
            return Err(Error::Domain("table_round_dp must be positive".into()));
        }
        Ok(())
    }
}

fn validate_epsilon(epsilon: f64) -> Result<f64> {
    check_range(
        "epsilon",
        epsilon,
        "(0, 0.15]",
        epsilon > 0.0 && epsilon <= EPSILON_MAX,
    )
}

fn validate_k(k: usize) -> Result<()> {
    if k == 0 {
        Err(Error::Domain("k must be a positive integer".into()))
    } else {
        Ok(())
    }
}

/// κ = 1/√5, the largest constant for which Stečkin's inequality holds.
pub fn kappa() -> f64 {
    1.0 / 5f64.sqrt()
}

/// (1 − κ)/2, the weight of log d_L and of the log-terms of the gamma factor.
pub fn half_one_minus_kappa() -> f64 {
    (1.0 - kappa()) / 2.0
}

/// σ₁(σ) = (1 + √(1 + 4σ²))/2, the positive root of x² − x = σ².
pub fn sigma1(sigma: f64) -> Result<f64> {
    if !sigma.is_finite() {
        return Err(Error::Domain(format!(
            "sigma1 requires a finite argument, got {sigma}"
        )));
    }
    Ok(shifted(sigma))
}

#[inline]
fn shifted(sigma: f64) -> f64 {
    0.5 * (1.0 + (1.0 + 4.0 * sigma * sigma).sqrt())
}

// Re(1/(re + i·im))
#[inline]
fn re_recip(re: f64, im: f64) -> f64 {
    re / (re * re + im * im)
}

/// F(s, z) = Re(1/(s − z) + 1/(s − 1 + z̄)).
pub fn eval_f(s_re: f64, s_im: f64, z_re: f64, z_im: f64) -> Result<f64> {
    let (u_re, u_im) = (s_re - z_re, s_im - z_im);
    let (v_re, v_im) = (s_re - 1.0 + z_re, s_im - z_im);
    if u_re == 0.0 && u_im == 0.0 {
        return Err(Error::Pole("s = z"));
    }
    if v_re == 0.0 && v_im == 0.0 {
        return Err(Error::Pole("s = 1 - conj(z)"));
    }
    Ok(re_recip(u_re, u_im) + re_recip(v_re, v_im))
}

/// g(σ, β) = −1/(σ−1+β) + κ/(σ₁−β) + κ/(σ₁−1+β), the correction left after
/// isolating the zero's −1/(σ−β) term for k = 1.
pub fn stechkin_gap(sigma: f64, beta: f64) -> Result<f64> {
    check_range(
        "sigma",
        sigma,
        "[1, 1.15]",
        (1.0..=1.0 + EPSILON_MAX).contains(&sigma),
    )?;
    check_range("beta", beta, "[0.85, 1]", (0.85..=1.0).contains(&beta))?;
    Ok(stechkin_gap_unchecked(sigma, beta))
}

pub(crate) fn stechkin_gap_unchecked(sigma: f64, beta: f64) -> f64 {
    let s1 = shifted(sigma);
    let k = kappa();
    -1.0 / (sigma - 1.0 + beta) + k / (s1 - beta) + k / (s1 - 1.0 + beta)
}

/// h(σ) = 1/σ − κ/σ₁ − κ/(σ₁ − 1), so that Σ₀(σ) = 1/(σ−1) + h(σ).
pub fn h_func(sigma: f64) -> Result<f64> {
    check_range("sigma", sigma, "(0, inf)", sigma > 0.0)?;
    Ok(h_unchecked(sigma))
}

fn h_unchecked(sigma: f64) -> f64 {
    let s1 = shifted(sigma);
    let k = kappa();
    1.0 / sigma - k / s1 - k / (s1 - 1.0)
}

/// α_ε = h(1 + ε).
pub fn alpha_eps(epsilon: f64) -> Result<f64> {
    validate_epsilon(epsilon)?;
    Ok(h_unchecked(1.0 + epsilon))
}

/// Σ_k(σ, t) = F(σ+ikt, 1) − κF(σ₁+ikt, 1) in real form.
pub fn sigma_k(sigma: f64, t: f64, k: usize) -> Result<f64> {
    if !sigma.is_finite() || !t.is_finite() {
        return Err(Error::Domain("sigma_k requires finite arguments".into()));
    }
    if sigma == 0.0 || (sigma == 1.0 && (k == 0 || t == 0.0)) {
        return Err(Error::Pole("Sigma_k at sigma = 1 with kt = 0"));
    }
    Ok(sigma_k_unchecked(sigma, t, k))
}

#[inline]
pub(crate) fn sigma_k_unchecked(sigma: f64, t: f64, k: usize) -> f64 {
    let s1 = shifted(sigma);
    let kt = k as f64 * t;
    let kt2 = kt * kt;
    let kap = kappa();
    sigma / (sigma * sigma + kt2) + (sigma - 1.0) / ((sigma - 1.0).powi(2) + kt2)
        - kap * s1 / (s1 * s1 + kt2)
        - kap * (s1 - 1.0) / ((s1 - 1.0).powi(2) + kt2)
}

/// `B_ε(k)` for k = 1..=kmax: `Σ_k(1+ε, 1)` rounded up at
/// `cfg.table_round_dp` places. Fails when the audit grid contradicts the
/// claim that `(1+ε, 1)` maximises `Σ_k`.
pub fn b_eps_table(cfg: &BoundConfig) -> Result<Vec<f64>> {
    cfg.validate()?;
    let grid = audit::AuditGrid::from_config(cfg);
    let rows: Vec<(f64, AuditReport)> = (1..=cfg.kmax)
        .into_par_iter()
        .map(|k| {
            let mut report = AuditReport::default();
            report.push(audit::sigma_k_max_audit(cfg.epsilon, k, &grid));
            report.push(audit::sigma_k_monotonicity_audit(cfg.epsilon, k, &grid));
            let raw = sigma_k_unchecked(1.0 + cfg.epsilon, 1.0, k);
            (round_up(raw, cfg.table_round_dp), report)
        })
        .collect();
    let mut out = Vec::with_capacity(rows.len());
    for (value, report) in rows {
        if let Some(f) = report.failures().next() {
            return Err(Error::Audit(format!("{}: {}", f.name, f.detail)));
        }
        out.push(value);
    }
    Ok(out)
}

/// The two δ-branches `½(ψ((1+ε+δ)/2) − κψ((σ₁(1+ε)+δ)/2))` for δ = 0, 1.
pub fn d_eps0_branches(epsilon: f64) -> Result<[f64; 2]> {
    validate_epsilon(epsilon)?;
    let sigma = 1.0 + epsilon;
    let s1 = shifted(sigma);
    let branch = |delta: f64| -> Result<f64> {
        let lhs = digamma((sigma + delta) / 2.0)?.value;
        let rhs = digamma((s1 + delta) / 2.0)?.value;
        Ok(0.5 * (lhs - kappa() * rhs))
    };
    Ok([branch(0.0)?, branch(1.0)?])
}

/// d_ε(0), the larger of the two gamma-factor branches at σ = 1 + ε.
pub fn d_eps0(epsilon: f64) -> Result<f64> {
    let [b0, b1] = d_eps0_branches(epsilon)?;
    Ok(b0.max(b1))
}

/// δ in Γ((s+δ)/2): 0 for real places, 1 for complex places.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GammaShift {
    Zero,
    One,
}

impl GammaShift {
    pub const BOTH: [GammaShift; 2] = [GammaShift::Zero, GammaShift::One];

    pub fn value(self) -> f64 {
        match self {
            GammaShift::Zero => 0.0,
            GammaShift::One => 1.0,
        }
    }
}

/// Ξ₁ = −(σ+δ)/(2((σ+δ)² + k²t²)) + κ(σ₁+δ)/(2((σ₁+δ)² + k²t²)).
pub fn xi1(sigma: f64, k: usize, t: f64, delta: GammaShift) -> f64 {
    let d = delta.value();
    let a = sigma + d;
    let b = shifted(sigma) + d;
    let kt2 = (k as f64 * t).powi(2);
    -a / (2.0 * (a * a + kt2)) + kappa() * b / (2.0 * (b * b + kt2))
}

/// Ξ₂ = ¼ log(1 + ((σ+δ)/kt)²) − (κ/4) log(1 + ((σ₁+δ)/kt)²).
pub fn xi2(sigma: f64, k: usize, t: f64, delta: GammaShift) -> f64 {
    let d = delta.value();
    let kt = k as f64 * t;
    let a = (sigma + d) / kt;
    let b = (shifted(sigma) + d) / kt;
    0.25 * (a * a).ln_1p() - 0.25 * kappa() * (b * b).ln_1p()
}

/// Ξ(σ, k, t, δ) = Ξ₁ + Ξ₂, the remainder in McCurley's expansion.
pub fn xi(sigma: f64, k: usize, t: f64, delta: GammaShift) -> f64 {
    xi1(sigma, k, t, delta) + xi2(sigma, k, t, delta)
}

/// Scan range and step for the stationary point of `t ↦ Ξ(1+ε, k, t, 1)`.
const T_STAR_SCAN_MAX: f64 = 100.0;
const T_STAR_SCAN_STEP: f64 = 1e-2;

/// t_k(ε): the unique t ≥ 1 where `∂Ξ(1+ε,k,t,1)/∂t` vanishes, or 1 when the
/// derivative is already non-negative on `[1, ∞)`.
pub fn t_star(k: usize, epsilon: f64) -> Result<f64> {
    validate_k(k)?;
    validate_epsilon(epsilon)?;
    let sigma = 1.0 + epsilon;
    let deriv = |t: f64| central_diff(|u| xi(sigma, k, u, GammaShift::One), t, FD_STEP);

    let steps = ((T_STAR_SCAN_MAX - 1.0) / T_STAR_SCAN_STEP).round() as usize;
    let mut brackets = Vec::new();
    let mut prev_t = 1.0;
    let mut prev_d = deriv(prev_t);
    for i in 1..=steps {
        let t = 1.0 + i as f64 * T_STAR_SCAN_STEP;
        let d = deriv(t);
        if prev_d.signum() != d.signum() && prev_d != 0.0 {
            brackets.push((prev_t, t));
        }
        prev_t = t;
        prev_d = d;
    }
    match brackets.as_slice() {
        [] if deriv(1.0) >= 0.0 => Ok(1.0),
        [] => Err(Error::NoRoot),
        [(lo, hi)] => bisect(deriv, *lo, *hi, 1e-8).ok_or(Error::NoRoot),
        many => Err(Error::AmbiguousRoot { count: many.len() }),
    }
}

/// 𝒜(k, δ, ε), the Method II bound on Ξ.
pub fn a_bound(k: usize, delta: GammaShift, epsilon: f64) -> Result<f64> {
    validate_k(k)?;
    validate_epsilon(epsilon)?;
    Ok(match (delta, k) {
        (GammaShift::Zero, _) => 0.0,
        (GammaShift::One, 1) => xi(1.0 + epsilon, 1, 1.0, GammaShift::One),
        (GammaShift::One, 2) => xi(1.0 + EPSILON_MAX, 2, 1.0, GammaShift::One),
        (GammaShift::One, _) => 0.0,
    })
}

/// Terms shared by both methods: (1−κ)/2·log(k/2) plus the two arctangent
/// corrections with McCurley's θᵢ at their worst case 1.
fn mccurley_tail(k: usize, delta: GammaShift) -> f64 {
    let kf = k as f64;
    let d = delta.value();
    let golden = shifted(1.0);
    half_one_minus_kappa() * (kf / 2.0).ln()
        + (PI / 2.0 - ((1.0 + d) / kf).atan()) / (2.0 * kf)
        + kappa() * (PI / 2.0 - ((golden + d) / kf).atan()) / (2.0 * kf)
}

/// 𝒮₁(k, ε), Method I with the published Ξ₂ bound.
pub fn s1k(k: usize, epsilon: f64) -> Result<f64> {
    validate_k(k)?;
    validate_epsilon(epsilon)?;
    Ok(GammaShift::BOTH
        .iter()
        .map(|&d| mccurley_tail(k, d) + xi2(1.0 + epsilon, k, 1.0, d))
        .fold(f64::NEG_INFINITY, f64::max))
}

/// 𝒮₁(k, ε) with Ξ₂ bounded by its audited supremum over `grid`.
pub fn s1k_audited(k: usize, epsilon: f64, grid: &audit::AuditGrid) -> Result<f64> {
    validate_k(k)?;
    validate_epsilon(epsilon)?;
    Ok(GammaShift::BOTH
        .iter()
        .map(|&d| mccurley_tail(k, d) + audit::xi2_audited_sup(epsilon, k, d, grid))
        .fold(f64::NEG_INFINITY, f64::max))
}

/// 𝒮₂(k, ε), Method II.
pub fn s2k(k: usize, epsilon: f64) -> Result<f64> {
    let mut best = f64::NEG_INFINITY;
    for d in GammaShift::BOTH {
        best = best.max(mccurley_tail(k, d) + a_bound(k, d, epsilon)?);
    }
    Ok(best)
}

/// 𝒮(k, ε) = min(𝒮₁, 𝒮₂).
pub fn sk(k: usize, epsilon: f64) -> Result<f64> {
    Ok(s1k(k, epsilon)?.min(s2k(k, epsilon)?))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaRow {
    pub k: usize,
    /// Σ_k(1+ε, 1) before rounding.
    pub b_eps_raw: f64,
    pub b_eps: f64,
    pub s1: f64,
    pub s2: f64,
    pub s: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GammaBoundTable {
    pub epsilon: f64,
    pub xi2_bound: Xi2Bound,
    pub alpha_eps: f64,
    pub d_eps0: f64,
    pub rows: Vec<GammaRow>,
    pub audit: AuditReport,
}

impl GammaBoundTable {
    pub fn row(&self, k: usize) -> Option<&GammaRow> {
        self.rows.get(k.checked_sub(1)?)
    }
}

/// All per-k bounds for one ε together with the audit of every monotonicity
/// claim they rest on. The `B_ε` audits are fatal; the remaining findings are
/// recorded in `audit` for the caller to act on.
pub fn gamma_bound_table(cfg: &BoundConfig) -> Result<GammaBoundTable> {
    cfg.validate()?;
    let eps = cfg.epsilon;
    let b_eps = b_eps_table(cfg)?;
    let grid = audit::AuditGrid::from_config(cfg);

    let rows: Vec<(GammaRow, AuditReport)> = (1..=cfg.kmax)
        .into_par_iter()
        .map(|k| -> Result<(GammaRow, AuditReport)> {
            let s1 = match cfg.xi2_bound {
                Xi2Bound::Published => s1k(k, eps)?,
                Xi2Bound::Audited => s1k_audited(k, eps, &grid)?,
            };
            let s2 = s2k(k, eps)?;
            let mut report = AuditReport::default();
            for d in GammaShift::BOTH {
                report.push(audit::xi2_max_audit(eps, k, d, &grid, cfg.xi2_bound));
            }
            report.push(audit::method_two_audit(eps, k, &grid));
            let row = GammaRow {
                k,
                b_eps_raw: sigma_k_unchecked(1.0 + eps, 1.0, k),
                b_eps: b_eps[k - 1],
                s1,
                s2,
                s: s1.min(s2),
            };
            Ok((row, report))
        })
        .collect::<Result<_>>()?;

    let mut audit = AuditReport::default();
    audit.push(audit::h_increasing_audit(cfg.grid_points_sigma));
    audit.push(audit::xi1_nonpositive_audit(10_000, 0x5eed));
    audit.push(audit::d_eps0_audit(eps, cfg.grid_points_sigma));
    let mut table_rows = Vec::with_capacity(rows.len());
    for (row, report) in rows {
        audit.extend(report);
        table_rows.push(row);
    }
    Ok(GammaBoundTable {
        epsilon: eps,
        xi2_bound: cfg.xi2_bound,
        alpha_eps: alpha_eps(eps)?,
        d_eps0: d_eps0(eps)?,
        rows: table_rows,
        audit,
    })
}

/// The optimal auxiliary ratio `r* = √a₀/(√a₁ − √a₀)` and
/// `M = a₁/(1+r*) − a₀/r*`.
pub fn m_constant(p: &TrigPoly) -> Result<(f64, f64)> {
    p.check_coefficients()?;
    let (a0, a1) = (p.a0(), p.a1());
    if a0 == 0.0 {
        return Err(Error::Inadmissible("a0 = 0 leaves M unbounded in r".into()));
    }
    // √a₁ − √a₀ = (a₁ − a₀)/(√a₁ + √a₀) avoids the cancellation.
    let (d, s) = (a1 - a0, a1.sqrt() + a0.sqrt());
    let r = a0.sqrt() * s / d;
    Ok((r, (d / s) * (d / s)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionConstants {
    pub epsilon: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
    pub m: f64,
    pub r_opt: f64,
    /// `(C₁, C₂, C₃, C₄) = (c₁, c₂, c₃, c₄)/M`.
    pub ratios: [f64; 4],
    /// The ratios rounded up to at least four decimals and four significant digits.
    pub published: [f64; 4],
}

/// Region constants for `p`, regenerating the bound table from `cfg`.
pub fn region_constants(p: &TrigPoly, cfg: &BoundConfig) -> Result<RegionConstants> {
    if cfg.kmax != p.degree() {
        return Err(Error::Domain(format!(
            "kmax = {} must equal the polynomial degree {}",
            cfg.kmax,
            p.degree()
        )));
    }
    let table = gamma_bound_table(cfg)?;
    region_constants_from_table(p, &table)
}

pub fn region_constants_from_table(
    p: &TrigPoly,
    table: &GammaBoundTable,
) -> Result<RegionConstants> {
    p.check_coefficients()?;
    if table.rows.len() < p.degree() {
        return Err(Error::Domain(format!(
            "bound table covers k <= {} but the polynomial has degree {}",
            table.rows.len(),
            p.degree()
        )));
    }
    let (r_opt, m) = m_constant(p)?;
    let q = half_one_minus_kappa();
    let a = p.coeffs();
    let tail = |k: usize| &table.rows[k - 1];

    let c1 = q * a.iter().copied().collect::<CompensatedSum>().value();
    let c2 = q * a[1..].iter().copied().collect::<CompensatedSum>().value();
    let mut c3 = CompensatedSum::new();
    c3.add(a[0] * (table.d_eps0 - q * PI.ln()));
    let mut c4 = CompensatedSum::new();
    c4.add(table.alpha_eps * a[0]);
    for (k, &ak) in a.iter().enumerate().skip(1) {
        c3.add(ak * (q * (k as f64 / PI).ln() + tail(k).s));
        c4.add(ak * tail(k).b_eps);
    }
    let (c3, c4) = (c3.value(), c4.value());
    let ratios = [c1 / m, c2 / m, c3 / m, c4 / m];
    Ok(RegionConstants {
        epsilon: table.epsilon,
        c1,
        c2,
        c3,
        c4,
        m,
        r_opt,
        ratios,
        published: ratios.map(|x| round_up_published(x, 4, 4)),
    })
}

/// 1/(C₁ log d_L + C₂ n_L log t + C₃ n_L + C₄), the width of the zero-free strip.
pub fn zero_free_width(consts: &[f64; 4], log_dl: f64, n_l: u32, t: f64) -> Result<f64> {
    check_range("log_dl", log_dl, "[0, inf)", log_dl >= 0.0)?;
    check_range("t", t, "[1, inf)", t >= 1.0)?;
    if n_l == 0 {
        return Err(Error::Domain("n_L must be positive".into()));
    }
    let n = n_l as f64;
    let denom = consts[0] * log_dl + consts[1] * n * t.ln() + consts[2] * n + consts[3];
    if !(denom > 0.0) {
        return Err(Error::Domain(format!("non-positive denominator {denom}")));
    }
    Ok(1.0 / denom)
}

#[cfg(test)]
mod tests;
