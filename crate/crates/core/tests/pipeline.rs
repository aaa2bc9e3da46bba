use proptest::prelude::*;

use zfr_core::classical::half_one_minus_kappa;
use zfr_core::exceptional::{search_split, Sweep};
use zfr_core::numeric::ulps_between;
use zfr_core::polysearch::{anneal, objective_value};
use zfr_core::trigpoly::verify_admissible;
use zfr_core::{AnnealConfig, BoundConfig, Objective, SolverConfig, TrigPoly};

fn square_form() -> TrigPoly {
    TrigPoly::new(vec![3.0, 4.0, 1.0]).unwrap()
}

#[test]
fn refining_the_split_grid_never_raises_r() {
    let p = TrigPoly::mt16();
    let solver = SolverConfig::coarse();
    // Steps differ by a factor of two, so every coarse point is bit-identical
    // to a fine one.
    let coarse = search_split(
        &p,
        Sweep::new(1.0, 1.008, 0.004).unwrap(),
        Sweep::new(2.31, 2.326, 0.008).unwrap(),
        &solver,
    )
    .unwrap();
    let fine = search_split(
        &p,
        Sweep::new(1.0, 1.008, 0.002).unwrap(),
        Sweep::new(2.31, 2.326, 0.004).unwrap(),
        &solver,
    )
    .unwrap();
    assert_eq!(coarse.cells.len(), 9);
    assert_eq!(fine.cells.len(), 25);
    for cell in &coarse.cells {
        let twin = fine
            .cells
            .iter()
            .find(|f| f.d1 == cell.d1 && f.d2 == cell.d2)
            .expect("coarse point present in fine grid");
        assert_eq!(twin.big_r, cell.big_r);
    }
    let r_coarse = coarse.best.unwrap().big_r;
    let r_fine = fine.best.unwrap().big_r;
    assert!(r_fine <= r_coarse, "{r_fine} > {r_coarse}");
}

#[test]
fn anneal_is_bit_identical_per_seed() {
    let acfg = AnnealConfig {
        degree: 6,
        seed: 0xdead_beef,
        steps: 1_500,
        ..AnnealConfig::default()
    };
    let cfg = BoundConfig::default();
    let a = anneal(&square_form(), &acfg, &cfg).unwrap();
    let b = anneal(&square_form(), &acfg, &cfg).unwrap();
    assert_eq!(a.trace, b.trace);
    assert_eq!(a.best.coeffs(), b.best.coeffs());
    assert_eq!(a.accepted, b.accepted);

    let other = anneal(&square_form(), &AnnealConfig { seed: 1, ..acfg }, &cfg).unwrap();
    assert_ne!(a.trace, other.trace);
}

#[test]
fn anneal_from_embedded_polynomial_never_worsens() {
    // The printed coefficients dip to about -2.0e-4 near phi = 2.06, so the
    // chain runs with a tolerance that admits the start.
    let cfg = BoundConfig {
        nonneg_tol: 2.5e-4,
        ..BoundConfig::default()
    };
    let acfg = AnnealConfig {
        steps: 10_000,
        seed: 3,
        ..AnnealConfig::default()
    };
    let res = anneal(&TrigPoly::mt16(), &acfg, &cfg).unwrap();
    assert!((res.start_value - 12.24106100).abs() < 1e-6);
    assert!(res.best_value <= 12.24106100 + 1e-9, "{}", res.best_value);
    assert!(res.certificate.admissible());
}

#[test]
fn degree_four_search_improves_on_square_form() {
    let cfg = BoundConfig::default();
    let acfg = AnnealConfig {
        degree: 4,
        steps: 100_000,
        seed: 11,
        ..AnnealConfig::default()
    };
    let res = anneal(&square_form(), &acfg, &cfg).unwrap();
    // Oracle: the square form in closed form, (1-kappa)/2 * 8 / (2 - sqrt 3)^2.
    let start = half_one_minus_kappa() * 8.0 / (2.0 - 3f64.sqrt()).powi(2);
    assert!((res.start_value - start).abs() < 1e-12 * start);
    assert!(
        res.best_value < start - 1.0,
        "{} vs {start}",
        res.best_value
    );
    // Still above the degree-16 optimum.
    assert!(res.best_value > 12.24106100);

    let recomputed = objective_value(&res.best, &cfg, &Objective::C1Ratio);
    assert_eq!(recomputed, res.best_value);
    assert!(verify_admissible(&res.best, &cfg).unwrap().admissible());
    assert!(res
        .trace
        .windows(2)
        .all(|w| w[1].best_value <= w[0].best_value));
}

// Ulps of C1 that input rounding alone can move: fl(λ a_k) carries up to
// half an ulp per coefficient, and M ∝ (a₁ − a₀)² amplifies a relative
// change in a₀ or a₁ by about 2 a_k/(a₁ − a₀).
fn rounding_allowance(p: &TrigPoly) -> u64 {
    let (a0, a1) = (p.a0(), p.a1());
    (a0 / (a1 - a0) + a1 / (a1 - a0) + 1.0).ceil() as u64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn c1_ratio_is_invariant_under_exact_scaling(e in -40i32..40) {
        let cfg = BoundConfig::default();
        for p in [TrigPoly::mt16(), square_form()] {
            let base = objective_value(&p, &cfg, &Objective::C1Ratio);
            let scaled = objective_value(&p.scaled(2f64.powi(e)).unwrap(), &cfg, &Objective::C1Ratio);
            prop_assert!(ulps_between(base, scaled) <= 4, "{} vs {}", base, scaled);
        }
    }

    #[test]
    fn c1_ratio_is_scale_invariant_up_to_input_rounding(lambda in 1e-3f64..1e3) {
        let cfg = BoundConfig::default();
        for p in [TrigPoly::mt16(), square_form()] {
            let base = objective_value(&p, &cfg, &Objective::C1Ratio);
            let scaled = objective_value(&p.scaled(lambda).unwrap(), &cfg, &Objective::C1Ratio);
            let allowed = 4 + rounding_allowance(&p);
            prop_assert!(ulps_between(base, scaled) <= allowed, "{} vs {} (allowed {})", base, scaled, allowed);
        }
    }
}
