//! The low-height region `|t| < 1`: a possible real zero `β` satisfies
//! `β ≤ 1 − 1/(R log d_L)` with `R = max(1/c_A, 1/c_B, 1/c_C)`.
//!
//! Ordinates `t log d_L` are split at `d₁ < d₂` into three ranges. Range A
//! has a closed-form bound; ranges B and C take the smallest root in `c` of
//! `E_B(d₁, d₂, r, c)` and `E_C(d₂, r, c)`, with `r` chosen to make `1/c`
//! as small as possible.

use rayon::prelude::*;
use serde::Serialize;

use crate::classical::half_one_minus_kappa;
use crate::error::{Constraint, Error, Result};
use crate::numeric::{bisect, golden_section_min};
use crate::trigpoly::TrigPoly;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegionSplit {
    pub d1: f64,
    pub d2: f64,
}

impl RegionSplit {
    pub fn new(d1: f64, d2: f64) -> Result<Self> {
        if !(d1 > 0.0 && d1.is_finite() && d2.is_finite()) {
            return Err(Error::Domain(format!(
                "split needs finite d1 > 0, got ({d1}, {d2})"
            )));
        }
        if !(d2 > d1) {
            return Err(Error::Domain(format!(
                "split needs d1 < d2, got ({d1}, {d2})"
            )));
        }
        Ok(Self { d1, d2 })
    }
}

/// Resolution of the `r`- and `c`-searches.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolverConfig {
    /// Grid step of the `r`-scan.
    pub r_step: f64,
    /// Width at which golden-section refinement of `r` stops.
    pub r_tol: f64,
    /// `c`-scan step while optimising `r` (first sign change only).
    pub c_step_search: f64,
    /// `c`-scan step of the final root count at the optimum.
    pub c_step: f64,
    /// Bisection width for roots in `c`.
    pub c_tol: f64,
    /// Upper end of the region A `r`-search `(d₁, ra_max]`.
    pub ra_max: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            r_step: 1e-4,
            r_tol: 1e-6,
            c_step_search: 1e-4,
            c_step: 1e-6,
            c_tol: 1e-12,
            ra_max: 10.0,
        }
    }
}

impl SolverConfig {
    /// A cheaper configuration for sweeping many splits.
    pub fn coarse() -> Self {
        Self {
            r_step: 1e-2,
            c_step: 1e-4,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("r_step", self.r_step),
            ("r_tol", self.r_tol),
            ("c_step_search", self.c_step_search),
            ("c_step", self.c_step),
            ("c_tol", self.c_tol),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::Domain(format!("{name} must lie in (0, 1), got {v}")));
            }
        }
        if !(self.ra_max > 0.0 && self.ra_max.is_finite()) {
            return Err(Error::Domain(format!(
                "ra_max must be positive, got {}",
                self.ra_max
            )));
        }
        Ok(())
    }
}

/// Smallest admissible `c` in range A:
/// `(√(r² − d₁²(1+qr)²) − qr²)/(1+qr)` with `q = (1−κ)/2`.
pub fn ca_closed_form(d1: f64, r: f64) -> Result<f64> {
    let q = half_one_minus_kappa();
    let w = 1.0 + q * r;
    let mut disc = r * r - d1 * d1 * w * w;
    if disc < 0.0 {
        // Accept a rounding-level negative discriminant as the boundary case.
        if disc < -8.0 * f64::EPSILON * r * r {
            return Err(Error::Domain(format!(
                "negative discriminant {disc:e} at d1 = {d1}, r = {r}"
            )));
        }
        disc = 0.0;
    }
    Ok((disc.sqrt() - q * r * r) / w)
}

/// `1/r − 2(r+c)/((r+c)² + d₁²) + (1−κ)/2`, which must be non-negative in
/// range A; the closed form makes it vanish.
pub fn region_a_residual(d1: f64, r: f64, c: f64) -> f64 {
    let x = r + c;
    1.0 / r - 2.0 * x / (x * x + d1 * d1) + half_one_minus_kappa()
}

/// Optimum of one range: the auxiliary ratio `r`, the root `c`, `1/c`, the
/// defining residual at `(r, c)`, and the number of sign changes seen in `c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegionOptimum {
    pub r: f64,
    pub c: f64,
    pub inv_c: f64,
    pub residual: f64,
    /// Whether the defining expression is negative just below `c` and
    /// non-negative just above. Always true for range A.
    pub sign_ok: bool,
    pub sign_changes: usize,
}

/// Minimises `1/c_A` over `r ∈ (d₁, ra_max]`.
pub fn optimize_ca(d1: f64, solver: &SolverConfig) -> Result<RegionOptimum> {
    solver.validate()?;
    if !(d1 > 0.0 && d1.is_finite()) {
        return Err(Error::Domain(format!("d1 must be positive, got {d1}")));
    }
    let inv = |r: f64| match ca_closed_form(d1, r) {
        Ok(c) if c > 0.0 => 1.0 / c,
        _ => f64::INFINITY,
    };
    let steps = ((solver.ra_max - d1) / solver.r_step).floor() as usize;
    let (i_best, v_best) = (1..=steps)
        .map(|i| inv(d1 + i as f64 * solver.r_step))
        .enumerate()
        .fold(
            (0, f64::INFINITY),
            |acc, (i, v)| if v < acc.1 { (i + 1, v) } else { acc },
        );
    if !v_best.is_finite() {
        return Err(Error::Infeasible(format!(
            "no r in (d1, {}] gives c_A > 0 for d1 = {d1}",
            solver.ra_max
        )));
    }
    let r0 = d1 + i_best as f64 * solver.r_step;
    let lo = (r0 - solver.r_step).max(d1 + solver.r_tol);
    let hi = (r0 + solver.r_step).min(solver.ra_max);
    let (r, v) = golden_section_min(inv, lo, hi, solver.r_tol);
    let (r, v) = if v <= v_best { (r, v) } else { (r0, v_best) };
    let c = 1.0 / v;
    let residual = region_a_residual(d1, r, c);
    Ok(RegionOptimum {
        r,
        c,
        inv_c: v,
        residual,
        sign_ok: true,
        sign_changes: 1,
    })
}

/// A defining expression `E(r, c)` of ranges B or C.
pub trait RegionEvaluator: Sync {
    fn name(&self) -> &'static str;
    /// `E(r, c)`; fails with the violated constraint outside the feasible box.
    fn eval(&self, r: f64, c: f64) -> Result<f64>;
    /// Open upper end of the `c`-scan at this `r`.
    fn c_upper(&self, r: f64) -> f64;
}

/// Coefficient data shared by the B and C evaluators.
#[derive(Debug, Clone)]
struct Coefficients {
    a: Vec<f64>,
    tail: f64,
}

impl Coefficients {
    fn new(p: &TrigPoly) -> Result<Self> {
        p.check_coefficients()?;
        Ok(Self {
            a: p.coeffs().to_vec(),
            tail: half_one_minus_kappa() * p.coeff_sum(),
        })
    }

    fn ratio(&self) -> f64 {
        self.a[0] / (self.a[1] - self.a[0])
    }

    fn c_upper(&self, r: f64) -> f64 {
        (r / self.ratio()).min(1.0)
    }

    fn check(&self, d2: f64, r: f64, c: f64) -> Result<()> {
        let fail = |k| Err(Error::Constraint(k));
        if !(c > 0.0 && c < 1.0) {
            return fail(Constraint::CInUnitInterval);
        }
        if !(r > 0.0 && r < 1.0) {
            return fail(Constraint::RInUnitInterval);
        }
        if !(self.ratio() * c < r) {
            return fail(Constraint::CoefficientRatio);
        }
        if !(d2 > (r * (r + c)).sqrt() / 2.0) {
            return fail(Constraint::SecondSplit);
        }
        Ok(())
    }
}

/// Checks every constraint of ranges B and C at `(r, c)`.
pub fn constraint_audit(p: &TrigPoly, d2: f64, r: f64, c: f64) -> Result<Vec<(Constraint, bool)>> {
    let co = Coefficients::new(p)?;
    Ok(vec![
        (Constraint::CInUnitInterval, c > 0.0 && c < 1.0),
        (Constraint::RInUnitInterval, r > 0.0 && r < 1.0),
        (Constraint::CoefficientRatio, co.ratio() * c < r),
        (Constraint::SecondSplit, d2 > (r * (r + c)).sqrt() / 2.0),
    ])
}

#[derive(Debug, Clone)]
pub struct RegionB {
    co: Coefficients,
    split: RegionSplit,
}

impl RegionB {
    pub fn new(p: &TrigPoly, split: RegionSplit) -> Result<Self> {
        Ok(Self {
            co: Coefficients::new(p)?,
            split,
        })
    }
}

impl RegionEvaluator for RegionB {
    fn name(&self) -> &'static str {
        "B"
    }

    fn eval(&self, r: f64, c: f64) -> Result<f64> {
        let RegionSplit { d1, d2 } = self.split;
        self.co.check(d2, r, c)?;
        let a = &self.co.a;
        let (a0, a1) = (a[0], a[1]);
        let x = r + c;
        let (x2, r2, d1s, d2s) = (x * x, r * r, d1 * d1, d2 * d2);
        let mut v = a0 / r - a1 / x + a1 * r / (r2 + d1s)
            - a0 * x / (x2 + d1s)
            - a0 * x / (x2 + d2s)
            - a1 * x / (x2 + 4.0 * d2s)
            + self.co.tail;
        for (k, &ak) in a.iter().enumerate().skip(2) {
            let (kf, km, kp) = (k as f64, (k - 1) as f64, (k + 1) as f64);
            v += ak
                * (r / (r2 + kf * kf * d1s) - x / (x2 + km * km * d2s) - x / (x2 + kp * kp * d2s));
        }
        Ok(v)
    }

    fn c_upper(&self, r: f64) -> f64 {
        self.co.c_upper(r)
    }
}

pub fn eval_eb(p: &TrigPoly, split: RegionSplit, r: f64, c: f64) -> Result<f64> {
    RegionB::new(p, split)?.eval(r, c)
}

#[derive(Debug, Clone)]
pub struct RegionC {
    co: Coefficients,
    d2: f64,
}

impl RegionC {
    pub fn new(p: &TrigPoly, d2: f64) -> Result<Self> {
        if !(d2 > 0.0 && d2.is_finite()) {
            return Err(Error::Domain(format!("d2 must be positive, got {d2}")));
        }
        Ok(Self {
            co: Coefficients::new(p)?,
            d2,
        })
    }
}

impl RegionEvaluator for RegionC {
    fn name(&self) -> &'static str {
        "C"
    }

    fn eval(&self, r: f64, c: f64) -> Result<f64> {
        let d2 = self.d2;
        self.co.check(d2, r, c)?;
        let (a0, a1) = (self.co.a[0], self.co.a[1]);
        let x = r + c;
        let d2s = d2 * d2;
        Ok(a0 / r - a1 / x + a1 * r / (r * r + d2s) - a0 * x / (x * x + d2s) + self.co.tail)
    }

    fn c_upper(&self, r: f64) -> f64 {
        self.co.c_upper(r)
    }
}

pub fn eval_ec(p: &TrigPoly, d2: f64, r: f64, c: f64) -> Result<f64> {
    RegionC::new(p, d2)?.eval(r, c)
}

/// The first root of `c ↦ E(r, c)` and the number of sign changes seen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RootScan {
    pub c: f64,
    pub sign_changes: usize,
}

/// Scans `c` over `(0, min(1, c_upper(r)))` at `step`, bisects the first
/// sign change to `tol`. With `count_all` the scan runs to the end and counts
/// every change; otherwise it stops at the first.
fn scan_root<E: RegionEvaluator + ?Sized>(
    e: &E,
    r: f64,
    step: f64,
    tol: f64,
    count_all: bool,
) -> Result<RootScan> {
    let upper = e.c_upper(r).min(1.0);
    let f = |c: f64| e.eval(r, c);
    let mut first: Option<(f64, f64)> = None;
    let mut changes = 0;
    let mut prev: Option<(f64, bool)> = None;
    let mut i = 1usize;
    loop {
        let c = i as f64 * step;
        if c >= upper {
            break;
        }
        let v = match f(c) {
            Ok(v) => v,
            Err(Error::Constraint(_)) if prev.is_some() => break,
            Err(err) => return Err(err),
        };
        let negative = v < 0.0;
        if let Some((pc, pneg)) = prev {
            if pneg != negative {
                changes += 1;
                if first.is_none() {
                    first = Some((pc, c));
                    if !count_all {
                        break;
                    }
                }
            }
        }
        prev = Some((c, negative));
        i += 1;
    }
    let (lo, hi) = first.ok_or(Error::NoRoot)?;
    let g = |c: f64| f(c).unwrap_or(f64::NAN);
    let c = bisect(g, lo, hi, tol).ok_or(Error::NoRoot)?;
    Ok(RootScan {
        c,
        sign_changes: changes,
    })
}

/// Smallest root in `c` at fixed `r`, with all sign changes counted.
pub fn smallest_root_in_c<E: RegionEvaluator + ?Sized>(
    e: &E,
    r: f64,
    solver: &SolverConfig,
) -> Result<RootScan> {
    scan_root(e, r, solver.c_step, solver.c_tol, true)
}

/// Minimises `1/c` over `r ∈ (0, 1)`: grid at `r_step`, golden-section
/// refinement to `r_tol`, then a full root count at the optimum.
pub fn optimize_region<E: RegionEvaluator + ?Sized>(
    e: &E,
    solver: &SolverConfig,
) -> Result<RegionOptimum> {
    solver.validate()?;
    let inv = |r: f64| match scan_root(e, r, solver.c_step_search, solver.c_tol, false) {
        Ok(s) if s.c > 0.0 => 1.0 / s.c,
        _ => f64::INFINITY,
    };
    let steps = (1.0 / solver.r_step).round() as usize;
    let values: Vec<f64> = (1..steps)
        .into_par_iter()
        .map(|i| inv(i as f64 * solver.r_step))
        .collect();
    let (i_best, v_best) = values
        .iter()
        .enumerate()
        .fold(
            (0, f64::INFINITY),
            |acc, (i, &v)| if v < acc.1 { (i + 1, v) } else { acc },
        );
    if !v_best.is_finite() {
        return Err(Error::Infeasible(format!(
            "no r in (0, 1) gives a root of E_{}",
            e.name()
        )));
    }
    let r0 = i_best as f64 * solver.r_step;
    let lo = (r0 - solver.r_step).max(solver.r_tol);
    let hi = (r0 + solver.r_step).min(1.0 - solver.r_tol);
    let (r_gold, v_gold) = golden_section_min(inv, lo, hi, solver.r_tol);
    let r = if v_gold <= v_best { r_gold } else { r0 };

    let scan = smallest_root_in_c(e, r, solver)?;
    let c = scan.c;
    let residual = e.eval(r, c)?;
    let probe = 1e-9_f64.max(4.0 * solver.c_tol);
    let below = e.eval(r, c - probe).map(|v| v < 0.0).unwrap_or(false);
    let above = e.eval(r, c + probe).map(|v| v >= 0.0).unwrap_or(false);
    Ok(RegionOptimum {
        r,
        c,
        inv_c: 1.0 / c,
        residual,
        sign_ok: below && above,
        sign_changes: scan.sign_changes,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstraintCheck {
    pub region: &'static str,
    pub constraint: Constraint,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExceptionalResult {
    pub split: RegionSplit,
    pub a: RegionOptimum,
    pub b: RegionOptimum,
    pub c: RegionOptimum,
    /// `max(1/c_A, 1/c_B, 1/c_C)`.
    pub big_r: f64,
    pub constraints: Vec<ConstraintCheck>,
}

impl ExceptionalResult {
    pub fn constraints_ok(&self) -> bool {
        self.constraints.iter().all(|c| c.satisfied)
    }

    /// Residual within `tol` and the sign flips across the root, for all
    /// three regions.
    pub fn residuals_ok(&self, tol: f64) -> bool {
        [&self.a, &self.b, &self.c]
            .iter()
            .all(|o| o.residual.abs() <= tol && o.sign_ok)
    }
}

fn assemble(
    p: &TrigPoly,
    split: RegionSplit,
    a: RegionOptimum,
    b: RegionOptimum,
    c: RegionOptimum,
) -> Result<ExceptionalResult> {
    let mut constraints = Vec::new();
    for (region, opt) in [("B", &b), ("C", &c)] {
        for (constraint, satisfied) in constraint_audit(p, split.d2, opt.r, opt.c)? {
            constraints.push(ConstraintCheck {
                region,
                constraint,
                satisfied,
            });
        }
    }
    Ok(ExceptionalResult {
        split,
        big_r: a.inv_c.max(b.inv_c).max(c.inv_c),
        a,
        b,
        c,
        constraints,
    })
}

/// All three region optima and `R` for one split.
pub fn compute_r(
    p: &TrigPoly,
    split: RegionSplit,
    solver: &SolverConfig,
) -> Result<ExceptionalResult> {
    let split = RegionSplit::new(split.d1, split.d2)?;
    let a = optimize_ca(split.d1, solver)?;
    let b = optimize_region(&RegionB::new(p, split)?, solver)?;
    let c = optimize_region(&RegionC::new(p, split.d2)?, solver)?;
    assemble(p, split, a, b, c)
}

/// An inclusive grid `lo, lo + step, …` up to `hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sweep {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl Sweep {
    pub fn new(lo: f64, hi: f64, step: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(Error::Domain(format!("empty sweep [{lo}, {hi}]")));
        }
        if !(step > 0.0) {
            return Err(Error::Domain(format!(
                "sweep step must be positive, got {step}"
            )));
        }
        Ok(Self { lo, hi, step })
    }

    pub fn single(x: f64) -> Self {
        Self {
            lo: x,
            hi: x,
            step: 1.0,
        }
    }

    pub fn points(&self) -> Vec<f64> {
        let n = ((self.hi - self.lo) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|i| self.lo + i as f64 * self.step).collect()
    }
}

/// One evaluated `(d₁, d₂)` cell of a split search.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchCell {
    pub d1: f64,
    pub d2: f64,
    pub inv_a: Option<f64>,
    pub inv_b: Option<f64>,
    pub inv_c: Option<f64>,
    pub big_r: Option<f64>,
    pub feasible: bool,
    /// Why the cell was skipped, when it was.
    pub skip_reason: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SplitSearch {
    pub best: Option<ExceptionalResult>,
    pub cells: Vec<SearchCell>,
}

/// Exhaustive search over `(d₁, d₂)` minimising `R`. Infeasible cells are
/// logged and skipped; ties go to the first cell in `d₁`-major order.
pub fn search_split(
    p: &TrigPoly,
    d1: Sweep,
    d2: Sweep,
    solver: &SolverConfig,
) -> Result<SplitSearch> {
    solver.validate()?;
    p.check_coefficients()?;
    let d1s = d1.points();
    let d2s = d2.points();
    let region_a: Vec<Result<RegionOptimum>> =
        d1s.par_iter().map(|&d| optimize_ca(d, solver)).collect();
    let region_c: Vec<Result<RegionOptimum>> = d2s
        .par_iter()
        .map(|&d| RegionC::new(p, d).and_then(|e| optimize_region(&e, solver)))
        .collect();

    let pairs: Vec<(usize, usize)> = (0..d1s.len())
        .flat_map(|i| (0..d2s.len()).map(move |j| (i, j)))
        .collect();
    let evaluated: Vec<(SearchCell, Option<ExceptionalResult>)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (x1, x2) = (d1s[i], d2s[j]);
            let mut cell = SearchCell {
                d1: x1,
                d2: x2,
                inv_a: region_a[i].as_ref().ok().map(|o| o.inv_c),
                inv_b: None,
                inv_c: region_c[j].as_ref().ok().map(|o| o.inv_c),
                big_r: None,
                feasible: false,
                skip_reason: None,
            };
            let result = (|| -> Result<ExceptionalResult> {
                let split = RegionSplit::new(x1, x2)?;
                let a = region_a[i].clone()?;
                let c = region_c[j].clone()?;
                let b = optimize_region(&RegionB::new(p, split)?, solver)?;
                assemble(p, split, a, b, c)
            })();
            match result {
                Ok(res) => {
                    cell.inv_b = Some(res.b.inv_c);
                    cell.big_r = Some(res.big_r);
                    cell.feasible = res.constraints_ok();
                    if !cell.feasible {
                        cell.skip_reason = Some("constraint audit failed at the optimum".into());
                    }
                    (cell, Some(res))
                }
                Err(err) => {
                    cell.skip_reason = Some(err.to_string());
                    (cell, None)
                }
            }
        })
        .collect();

    let mut best: Option<ExceptionalResult> = None;
    let mut cells = Vec::with_capacity(evaluated.len());
    for (cell, res) in evaluated {
        if let (true, Some(res)) = (cell.feasible, res) {
            if best.as_ref().is_none_or(|b| res.big_r < b.big_r) {
                best = Some(res);
            }
        }
        cells.push(cell);
    }
    Ok(SplitSearch { best, cells })
}
