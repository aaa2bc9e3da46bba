//! Numerical audits of the monotonicity and maximisation claims the bound
//! table rests on. Each audit samples a grid, checks the claim with central
//! finite differences or direct comparison, and reports the worst violation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{
    d_eps0_branches, h_unchecked, kappa, shifted, sigma_k_unchecked, stechkin_gap_unchecked, xi,
    xi1, xi2, BoundConfig, GammaShift, Xi2Bound, EPSILON_MAX, FD_STEP,
};
use crate::numeric::{central_diff, linspace};

/// Slack allowed when comparing a grid maximum with the claimed maximiser.
pub const MAX_TOL: f64 = 1e-10;
/// Slack allowed on the sign of a finite-difference derivative.
pub const SIGN_TOL: f64 = 1e-12;
/// Lower end of the σ-grid; σ = 1 itself is a pole of Σ₀.
pub const SIGMA_FLOOR: f64 = 1.0 + 1e-6;
/// Abscissa used for the `t → ∞` limit checks.
pub const T_LIMIT: f64 = 1e8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditFinding {
    pub name: String,
    pub passed: bool,
    /// Largest violation found; non-positive when the claim held everywhere.
    pub worst: f64,
    pub detail: String,
}

impl AuditFinding {
    fn new(name: impl Into<String>, worst: f64, tol: f64, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: worst <= tol,
            worst,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct AuditReport {
    pub findings: Vec<AuditFinding>,
}

impl AuditReport {
    pub fn push(&mut self, finding: AuditFinding) {
        self.findings.push(finding);
    }

    pub fn extend(&mut self, other: AuditReport) {
        self.findings.extend(other.findings);
    }

    pub fn passed(&self) -> bool {
        self.findings.iter().all(|f| f.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AuditFinding> {
        self.findings.iter().filter(|f| !f.passed)
    }
}

/// Sample points of the (σ, t) rectangle `[1+10⁻⁶, 1+ε] × [1, t_max]`.
#[derive(Debug, Clone)]
pub struct AuditGrid {
    pub epsilon: f64,
    pub sigma: Vec<f64>,
    pub t: Vec<f64>,
}

impl AuditGrid {
    pub fn new(epsilon: f64, sigma_points: usize, t_points: usize, t_max: f64) -> Self {
        Self {
            epsilon,
            sigma: linspace(SIGMA_FLOOR, 1.0 + epsilon, sigma_points).collect(),
            t: linspace(1.0, t_max, t_points).collect(),
        }
    }

    pub fn from_config(cfg: &BoundConfig) -> Self {
        Self::new(
            cfg.epsilon,
            cfg.grid_points_sigma,
            cfg.grid_points_t,
            cfg.t_max,
        )
    }

    fn max_over<F: Fn(f64, f64) -> f64>(&self, f: F) -> (f64, f64, f64) {
        let mut best = (f64::NEG_INFINITY, f64::NAN, f64::NAN);
        for &s in &self.sigma {
            for &t in &self.t {
                let v = f(s, t);
                if v > best.0 {
                    best = (v, s, t);
                }
            }
        }
        best
    }

    /// σ-samples spanning the full claimed range `[1, 1.15]`.
    fn sigma_full_range(&self) -> impl Iterator<Item = f64> {
        linspace(1.0, 1.0 + EPSILON_MAX, self.sigma.len())
    }
}

/// The grid maximum of `Σ_k` must sit at `(1+ε, 1)`, and the `t → ∞` limit
/// (zero) must not exceed it.
pub fn sigma_k_max_audit(epsilon: f64, k: usize, grid: &AuditGrid) -> AuditFinding {
    let corner = sigma_k_unchecked(1.0 + epsilon, 1.0, k);
    let (max, s, t) = grid.max_over(|s, t| sigma_k_unchecked(s, t, k));
    let limit = sigma_k_unchecked(1.0 + epsilon, T_LIMIT, k);
    let worst = (max - corner).max(limit - corner);
    AuditFinding::new(
        format!("Sigma_k max at (1+eps,1), k={k}"),
        worst,
        MAX_TOL,
        format!("grid max {max:.12e} at (sigma={s}, t={t}); corner {corner:.12e}"),
    )
}

/// `∂Σ_k/∂t ≤ 0` on the grid and `∂Σ_k(σ,1)/∂σ ≥ 0` for `σ ∈ [1, 1.15]`.
pub fn sigma_k_monotonicity_audit(epsilon: f64, k: usize, grid: &AuditGrid) -> AuditFinding {
    let _ = epsilon;
    let mut worst = f64::NEG_INFINITY;
    let mut at = (f64::NAN, f64::NAN);
    for &s in &grid.sigma {
        for &t in &grid.t {
            let d = central_diff(|u| sigma_k_unchecked(s, u, k), t, FD_STEP);
            if d > worst {
                worst = d;
                at = (s, t);
            }
        }
    }
    for s in grid.sigma_full_range() {
        let d = -central_diff(|u| sigma_k_unchecked(u, 1.0, k), s, FD_STEP);
        if d > worst {
            worst = d;
            at = (s, 1.0);
        }
    }
    AuditFinding::new(
        format!("Sigma_k decreasing in t, increasing in sigma, k={k}"),
        worst,
        SIGN_TOL,
        format!(
            "worst signed derivative {worst:.3e} at (sigma={}, t={})",
            at.0, at.1
        ),
    )
}

/// Supremum of `Ξ₂(·, k, ·, δ)` seen on the grid, including the corner and
/// the `t → ∞` limit 0.
pub fn xi2_audited_sup(epsilon: f64, k: usize, delta: GammaShift, grid: &AuditGrid) -> f64 {
    let corner = xi2(1.0 + epsilon, k, 1.0, delta);
    let (max, _, _) = grid.max_over(|s, t| xi2(s, k, t, delta));
    corner.max(max).max(0.0)
}

/// The Method I bound on `Ξ₂` must dominate the grid maximum and the
/// `t → ∞` limit.
pub fn xi2_max_audit(
    epsilon: f64,
    k: usize,
    delta: GammaShift,
    grid: &AuditGrid,
    mode: Xi2Bound,
) -> AuditFinding {
    let used = match mode {
        Xi2Bound::Published => xi2(1.0 + epsilon, k, 1.0, delta),
        Xi2Bound::Audited => xi2_audited_sup(epsilon, k, delta, grid),
    };
    let (max, s, t) = grid.max_over(|s, t| xi2(s, k, t, delta));
    let limit = xi2(1.0 + epsilon, k, T_LIMIT, delta);
    let worst = (max - used).max(limit - used);
    AuditFinding::new(
        format!("Xi2 max at (1+eps,1), k={k}, delta={}", delta.value()),
        worst,
        MAX_TOL,
        format!(
            "bound {used:.12e}; grid max {max:.12e} at (sigma={s}, t={t}); t->inf limit {limit:.3e}"
        ),
    )
}

/// The sign claims behind `𝒜(k, δ, ε)`:
/// `Ξ` increasing in t with limit 0 for δ = 0, and for δ = 1 when k ∉ {1,2,3};
/// `Ξ` increasing in σ for δ = 1, k ∈ {1,2,3}; and the endpoint comparisons
/// that pick `Ξ(1+ε,1,1,1)`, `Ξ(1.15,2,1,1)` and 0 for k = 1, 2, 3.
pub fn method_two_audit(epsilon: f64, k: usize, grid: &AuditGrid) -> AuditFinding {
    let mut worst = f64::NEG_INFINITY;
    let mut note = String::new();
    let mut record = |v: f64, what: String| {
        if v > worst {
            worst = v;
            note = what;
        }
    };

    let mut deltas = vec![GammaShift::Zero];
    if k > 3 {
        deltas.push(GammaShift::One);
    }
    for &d in &deltas {
        for &s in &grid.sigma {
            for &t in &grid.t {
                let dt = central_diff(|u| xi(s, k, u, d), t, FD_STEP);
                record(
                    -dt,
                    format!("dXi/dt < 0 at (sigma={s}, t={t}, delta={})", d.value()),
                );
            }
            let lim = xi(s, k, T_LIMIT, d).abs() - 1e-12;
            record(lim, format!("|Xi(t=1e8)| > 1e-12 at sigma={s}"));
        }
    }
    if k <= 3 {
        for s in grid.sigma_full_range() {
            for &t in &grid.t {
                let ds = central_diff(|u| xi(u, k, t, GammaShift::One), s, FD_STEP);
                record(-ds, format!("dXi/dsigma < 0 at (sigma={s}, t={t})"));
            }
        }
        let at_one = xi(1.0 + epsilon, k, 1.0, GammaShift::One);
        match k {
            1 => record(-at_one, format!("Xi(1+eps,1,1,1) = {at_one:.3e} < 0")),
            2 => {
                let cap = xi(1.0 + EPSILON_MAX, 2, 1.0, GammaShift::One);
                record(
                    at_one - cap,
                    format!("Xi(1+eps,2,1,1) exceeds Xi(1.15,2,1,1) = {cap:.3e}"),
                );
                record(-cap, format!("Xi(1.15,2,1,1) = {cap:.3e} < 0"));
            }
            _ => record(at_one, format!("Xi(1+eps,3,1,1) = {at_one:.3e} > 0")),
        }
    }
    AuditFinding::new(
        format!("Method II sign claims, k={k}"),
        worst,
        SIGN_TOL,
        format!("worst {worst:.3e}: {note}"),
    )
}

/// `h` increasing on `(1, 1.15]`.
pub fn h_increasing_audit(points: usize) -> AuditFinding {
    let worst = linspace(SIGMA_FLOOR, 1.0 + EPSILON_MAX, points)
        .map(|s| -central_diff(h_unchecked, s, FD_STEP))
        .fold(f64::NEG_INFINITY, f64::max);
    AuditFinding::new(
        "h increasing on (1, 1.15]",
        worst,
        SIGN_TOL,
        format!("largest -dh/dsigma {worst:.3e}"),
    )
}

/// `Ξ₁ ≤ 0` at `n` random points of `σ ∈ (1, 1.15]`, `k ≤ 16`, `t ∈ (0, 100]`.
pub fn xi1_nonpositive_audit(n: usize, seed: u64) -> AuditFinding {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..n {
        let s = rng.random_range(SIGMA_FLOOR..=1.0 + EPSILON_MAX);
        let k = rng.random_range(1..=16usize);
        let t = rng.random_range(1e-3..=100.0);
        let d = if rng.random_bool(0.5) {
            GammaShift::One
        } else {
            GammaShift::Zero
        };
        worst = worst.max(xi1(s, k, t, d));
    }
    AuditFinding::new(
        "Xi1 <= 0",
        worst,
        0.0,
        format!("largest Xi1 over {n} random points {worst:.3e}"),
    )
}

/// The δ-branches of `d_ε(0)` are maximised at `σ = 1 + ε` over `(1, 1+ε]`.
pub fn d_eps0_audit(epsilon: f64, points: usize) -> AuditFinding {
    let at_end = d_eps0_branches(epsilon).map(|b| b[0].max(b[1]));
    let mut worst = f64::NEG_INFINITY;
    if let Ok(end) = at_end {
        for s in linspace(SIGMA_FLOOR, 1.0 + epsilon, points) {
            if let Ok(b) = d_eps0_branches(s - 1.0) {
                worst = worst.max(b[0].max(b[1]) - end);
            }
        }
    }
    AuditFinding::new(
        "d_eps(0) maximised at sigma = 1+eps",
        worst,
        MAX_TOL,
        format!("largest excess over the endpoint {worst:.3e}"),
    )
}

/// `g(σ, β) ≤ 10⁻¹²` on an `n × n` grid of `(1, 1.15] × [0.85, 1]`.
pub fn stechkin_gap_audit(n: usize) -> AuditFinding {
    let mut worst = f64::NEG_INFINITY;
    for s in linspace(1.0 + 1e-9, 1.0 + EPSILON_MAX, n) {
        for b in linspace(0.85, 1.0, n) {
            worst = worst.max(stechkin_gap_unchecked(s, b));
        }
    }
    AuditFinding::new(
        "stechkin_gap <= 1e-12",
        worst,
        1e-12,
        format!("largest g {worst:.3e}"),
    )
}

/// `F(s, z) − κF(s'₁, z) ≥ −10⁻¹²` at `n` random points with
/// `1 < σ ≤ 1.25`, `0 < Re z < 1`.
pub fn stechkin_inequality_audit(n: usize, seed: u64) -> AuditFinding {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kap = kappa();
    let mut worst = f64::NEG_INFINITY;
    let mut evaluated = 0usize;
    for _ in 0..n {
        let s = rng.random_range(1.0 + 1e-12..=1.25);
        let t = rng.random_range(-50.0..50.0);
        let zr = rng.random_range(1e-12..1.0);
        let zi = rng.random_range(-50.0..50.0);
        let lhs = super::eval_f(s, t, zr, zi);
        let rhs = super::eval_f(shifted(s), t, zr, zi);
        if let (Ok(a), Ok(b)) = (lhs, rhs) {
            worst = worst.max(-(a - kap * b));
            evaluated += 1;
        }
    }
    AuditFinding::new(
        "Stechkin F(s,z) - kappa F(s1',z) >= 0",
        worst,
        1e-12,
        format!("{evaluated} points; most negative value {:.3e}", -worst),
    )
}
