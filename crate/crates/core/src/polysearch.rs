//! Simulated annealing over admissible cosine polynomials.
//!
//! The chain pins `a₀ = 1` (every objective is invariant under rescaling),
//! perturbs one coefficient per step with a Gaussian whose width shrinks
//! with the temperature, and screens each proposal with a certified
//! non-negativity bound on a coarse grid. The best polynomial found is
//! certified on the full grid at the end.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::Serialize;

use crate::classical::{half_one_minus_kappa, m_constant, BoundConfig};
use crate::error::{Error, Result};
use crate::exceptional::{compute_r, RegionSplit, SolverConfig};
use crate::trigpoly::{verify_admissible, AdmissibilityReport, GridCertifier, TrigPoly};

/// Steps between full recomputations of the incrementally updated samples.
const RESYNC_EVERY: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Objective {
    /// `C₁ = c₁/M`, the coefficient of `log d_L`.
    C1Ratio,
    /// `R` of the low-height region at a fixed split.
    RExceptional {
        split: RegionSplit,
        solver: SolverConfig,
    },
}

/// The selected objective, or `+∞` when the coefficient constraints fail or
/// the pipeline has no feasible point. Neither objective depends on the
/// bound tables, so `_cfg` only fixes the calling convention.
pub fn objective_value(p: &TrigPoly, _cfg: &BoundConfig, which: &Objective) -> f64 {
    if p.check_coefficients().is_err() {
        return f64::INFINITY;
    }
    match which {
        Objective::C1Ratio => match m_constant(p) {
            Ok((_, m)) if m > 0.0 => half_one_minus_kappa() * p.coeff_sum() / m,
            _ => f64::INFINITY,
        },
        Objective::RExceptional { split, solver } => compute_r(p, *split, solver)
            .map(|r| r.big_r)
            .unwrap_or(f64::INFINITY),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnnealConfig {
    pub degree: usize,
    pub seed: u64,
    pub initial_temp: f64,
    pub cooling_rate: f64,
    pub steps: usize,
    pub move_scale: f64,
    pub objective: Objective,
    /// Points of the coarse non-negativity screen applied to every proposal.
    pub coarse_grid_points: usize,
}

impl Default for AnnealConfig {
    fn default() -> Self {
        Self {
            degree: 16,
            seed: 1,
            initial_temp: 1.0,
            cooling_rate: 0.9995,
            steps: 10_000,
            move_scale: 0.05,
            objective: Objective::C1Ratio,
            coarse_grid_points: 10_001,
        }
    }
}

impl AnnealConfig {
    pub fn validate(&self) -> Result<()> {
        if self.degree == 0 {
            return Err(Error::Domain("degree must be positive".into()));
        }
        if self.steps == 0 {
            return Err(Error::Domain("steps must be at least 1".into()));
        }
        if !(self.initial_temp > 0.0 && self.initial_temp.is_finite()) {
            return Err(Error::Domain(format!(
                "initial_temp must be positive, got {}",
                self.initial_temp
            )));
        }
        if !(self.cooling_rate > 0.0 && self.cooling_rate < 1.0) {
            return Err(Error::Domain(format!(
                "cooling_rate must lie in (0, 1), got {}",
                self.cooling_rate
            )));
        }
        if !(self.move_scale > 0.0 && self.move_scale.is_finite()) {
            return Err(Error::Domain(format!(
                "move_scale must be positive, got {}",
                self.move_scale
            )));
        }
        if self.coarse_grid_points < 2 {
            return Err(Error::Domain("coarse grid needs at least 2 points".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceRow {
    pub step: usize,
    pub temperature: f64,
    pub current_value: f64,
    pub best_value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnnealResult {
    #[serde(serialize_with = "serialize_poly")]
    pub best: TrigPoly,
    pub best_value: f64,
    pub start_value: f64,
    pub accepted: usize,
    pub trace: Vec<TraceRow>,
    /// Full-grid certificate of `best`.
    pub certificate: AdmissibilityReport,
}

fn serialize_poly<S: serde::Serializer>(
    p: &TrigPoly,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(p.coeffs())
}

/// Runs one annealing chain from `start`, which must pass the full
/// certificate of `cfg` after padding to `acfg.degree` and scaling to `a₀ = 1`.
pub fn anneal(start: &TrigPoly, acfg: &AnnealConfig, cfg: &BoundConfig) -> Result<AnnealResult> {
    acfg.validate()?;
    cfg.validate()?;
    if start.degree() > acfg.degree {
        return Err(Error::Domain(format!(
            "start has degree {} above the search degree {}",
            start.degree(),
            acfg.degree
        )));
    }
    if !(start.a0() > 0.0) {
        return Err(Error::Inadmissible(
            "a0 must be positive to pin it to 1".into(),
        ));
    }
    let start = start.scaled(1.0 / start.a0())?.padded(acfg.degree);
    let report = verify_admissible(&start, cfg)?;
    if !report.admissible() {
        return Err(Error::Inadmissible(format!(
            "start polynomial fails certification (lower bound {:e} at phi = {})",
            report.min_value_lower_bound, report.witness_phi
        )));
    }
    let start_value = objective_value(&start, cfg, &acfg.objective);
    if !start_value.is_finite() {
        return Err(Error::Inadmissible(
            "objective is infinite at the start polynomial".into(),
        ));
    }

    let certifier = GridCertifier::new(acfg.degree, acfg.coarse_grid_points)?;
    let mut rng = ChaCha8Rng::seed_from_u64(acfg.seed);
    let unit = Normal::new(0.0, 1.0).expect("unit normal");

    let mut current = start.coeffs().to_vec();
    let mut samples = certifier.values(&current);
    let mut current_value = start_value;
    let mut best_value = start_value;
    // Every improvement, so that the final certificate can fall back.
    let mut improvements: Vec<(Vec<f64>, f64)> = vec![(current.clone(), start_value)];
    let mut trace = Vec::with_capacity(acfg.steps);
    let mut accepted = 0;
    let mut temp = acfg.initial_temp;

    for step in 1..=acfg.steps {
        let k = rng.random_range(1..=acfg.degree);
        let delta: f64 = unit.sample(&mut rng) * acfg.move_scale * temp;
        let new_ak = (current[k] + delta).max(0.0);
        let shift = new_ak - current[k];
        let u: f64 = rng.random();

        if shift != 0.0 {
            let mut proposal = current.clone();
            proposal[k] = new_ak;
            let moved: Vec<f64> = samples
                .iter()
                .zip(certifier.column(k))
                .map(|(v, c)| v + shift * c)
                .collect();
            if certifier.lower_bound(&moved, &proposal) >= -cfg.nonneg_tol {
                let poly = TrigPoly::new(proposal.clone())?;
                let value = objective_value(&poly, cfg, &acfg.objective);
                let diff = value - current_value;
                if value.is_finite() && (diff <= 0.0 || u < (-diff / temp).exp()) {
                    current = proposal;
                    samples = moved;
                    current_value = value;
                    accepted += 1;
                    if value < best_value {
                        best_value = value;
                        improvements.push((current.clone(), value));
                    }
                }
            }
        }
        if step % RESYNC_EVERY == 0 {
            samples = certifier.values(&current);
        }
        trace.push(TraceRow {
            step,
            temperature: temp,
            current_value,
            best_value,
        });
        temp *= acfg.cooling_rate;
    }

    for (coeffs, value) in improvements.into_iter().rev() {
        let poly = TrigPoly::new(coeffs)?;
        let certificate = verify_admissible(&poly, cfg)?;
        if certificate.admissible() {
            return Ok(AnnealResult {
                best: poly,
                best_value: value,
                start_value,
                accepted,
                trace,
                certificate,
            });
        }
    }
    unreachable!("the start polynomial passed certification")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> BoundConfig {
        BoundConfig::default()
    }

    #[test]
    fn c1_ratio_of_embedded_polynomial() {
        let v = objective_value(&TrigPoly::mt16(), &cfg(), &Objective::C1Ratio);
        assert!((v - 12.24106100).abs() < 1e-6, "{v}");
    }

    #[test]
    fn square_form_is_worse() {
        let sq = TrigPoly::new(vec![3.0, 4.0, 1.0]).unwrap();
        let v = objective_value(&sq, &cfg(), &Objective::C1Ratio);
        let q = half_one_minus_kappa();
        let want = q * 8.0 / (2.0 - 3f64.sqrt()).powi(2);
        assert!((v - want).abs() < 1e-12 * want);
        assert!(v > objective_value(&TrigPoly::mt16(), &cfg(), &Objective::C1Ratio));
    }

    #[test]
    fn infeasible_maps_to_infinity() {
        let bad = TrigPoly::new(vec![4.0, 3.0, 1.0]).unwrap();
        assert_eq!(
            objective_value(&bad, &cfg(), &Objective::C1Ratio),
            f64::INFINITY
        );
        let neg = TrigPoly::new(vec![1.0, 2.0, -0.1]).unwrap();
        assert_eq!(
            objective_value(&neg, &cfg(), &Objective::C1Ratio),
            f64::INFINITY
        );
    }

    #[test]
    fn exceptional_objective_matches_compute_r() {
        let split = RegionSplit::new(1.0015, 2.318).unwrap();
        let solver = SolverConfig::coarse();
        let p = TrigPoly::mt16();
        let v = objective_value(&p, &cfg(), &Objective::RExceptional { split, solver });
        assert_eq!(v, compute_r(&p, split, &solver).unwrap().big_r);
    }

    #[test]
    fn rejects_bad_configs_and_starts() {
        let sq = TrigPoly::new(vec![3.0, 4.0, 1.0]).unwrap();
        let base = AnnealConfig {
            degree: 4,
            steps: 10,
            ..AnnealConfig::default()
        };
        for bad in [
            AnnealConfig { steps: 0, ..base },
            AnnealConfig {
                cooling_rate: 1.0,
                ..base
            },
            AnnealConfig {
                initial_temp: 0.0,
                ..base
            },
            AnnealConfig { degree: 1, ..base },
        ] {
            assert!(anneal(&sq, &bad, &cfg()).is_err());
        }
        let negative_at_pi = TrigPoly::new(vec![1.0, 3.0]).unwrap();
        assert!(matches!(
            anneal(&negative_at_pi, &base, &cfg()),
            Err(Error::Inadmissible(_))
        ));
    }

    #[test]
    fn short_chain_never_worsens_best() {
        let sq = TrigPoly::new(vec![3.0, 4.0, 1.0]).unwrap();
        let acfg = AnnealConfig {
            degree: 4,
            steps: 2_000,
            ..AnnealConfig::default()
        };
        let res = anneal(&sq, &acfg, &cfg()).unwrap();
        assert!(res.best_value <= res.start_value);
        assert!(res
            .trace
            .windows(2)
            .all(|w| w[1].best_value <= w[0].best_value));
        assert!(res.certificate.admissible());
        assert_eq!(res.best.a0(), 1.0);
        assert_eq!(res.trace.len(), 2_000);
    }
}
