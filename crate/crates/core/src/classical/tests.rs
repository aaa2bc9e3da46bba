use super::audit::{self, AuditGrid};
use super::*;
use crate::numeric::{linspace, ulps_between};
use crate::reference::{
    B_EPS_001, B_EPS_015, C_RATIOS_001, C_RATIOS_015, M_CLOSED_FORM, M_CONSTANT, S_015,
};
use proptest::prelude::*;

fn cfg(eps: f64) -> BoundConfig {
    BoundConfig::new(eps).unwrap()
}

// Σ_k through the complex definition F(σ+ikt, 1) − κF(σ₁+ikt, 1).
fn sigma_k_via_f(s: f64, t: f64, k: usize) -> f64 {
    let kt = k as f64 * t;
    eval_f(s, kt, 1.0, 0.0).unwrap() - kappa() * eval_f(shifted(s), kt, 1.0, 0.0).unwrap()
}

#[test]
fn kappa_values() {
    assert_eq!(kappa(), 0.447_213_595_499_957_9);
    assert!(ulps_between(5.0 * kappa() * kappa(), 1.0) <= 2);
    assert!((half_one_minus_kappa() - 0.276_393_202_250_021_1).abs() < 1e-16);
}

#[test]
fn sigma1_values() {
    assert_eq!(sigma1(1.0).unwrap(), 1.618_033_988_749_895);
    assert_eq!(sigma1(0.0).unwrap(), 1.0);
    let v = sigma1(1.15).unwrap();
    assert!((v * v - v - 1.3225).abs() <= 4.0 * f64::EPSILON * 2.0);
    assert!(sigma1(f64::NAN).is_err());
}

#[test]
fn eval_f_values() {
    assert_eq!(eval_f(2.0, 0.0, 1.0, 0.0).unwrap(), 1.5);
    // s − 1 + z̄ is real when Im s = Im z, so the second term is 1/(σ−1+β).
    let v = eval_f(1.01, 1.0, 0.99, 1.0).unwrap();
    assert!((v - 51.0).abs() < 1e-9, "{v}");
    assert_eq!(eval_f(1.0, 2.0, 1.0, 2.0), Err(Error::Pole("s = z")));
    assert_eq!(
        eval_f(0.3, 2.0, 0.7, 2.0),
        Err(Error::Pole("s = 1 - conj(z)"))
    );
}

#[test]
fn stechkin_gap_values() {
    assert!(stechkin_gap(1.0, 1.0).unwrap().abs() < 1e-12);
    assert!(stechkin_gap(1.01, 0.99).unwrap() < 0.0);
    let far = stechkin_gap(1.15, 0.85).unwrap();
    assert!(far < 0.0 && far < stechkin_gap(1.0, 1.0).unwrap());
    assert!(stechkin_gap(1.2, 0.9).is_err());
    assert!(stechkin_gap(1.1, 0.8).is_err());
}

#[test]
fn h_values() {
    assert!(h_func(1.0).unwrap().abs() < 1e-12);
    assert!(h_func(1.01).unwrap() < h_func(1.15).unwrap());
    // High-precision value; the printed upper bound 0.021467 is 3e-6 too small.
    assert!((h_func(1.15).unwrap() - 0.021_469_949_773_311_004).abs() < 1e-15);
    assert!(h_func(0.0).is_err());
}

#[test]
fn alpha_values() {
    assert!((alpha_eps(0.15).unwrap() - 0.021_469_949_773_311_004).abs() < 1e-15);
    assert_eq!(alpha_eps(0.01).unwrap(), h_func(1.01).unwrap());
    assert!(alpha_eps(1e-9).unwrap().abs() < 1e-8);
    assert!(alpha_eps(0.0).is_err());
    assert!(alpha_eps(0.2).is_err());
}

#[test]
fn sigma_zero_splits_into_pole_and_h() {
    for s in [1.001, 1.01, 1.1, 1.15] {
        let lhs = sigma_k(s, 1.0, 0).unwrap() - 1.0 / (s - 1.0);
        assert!((lhs - h_func(s).unwrap()).abs() < 1e-9, "{s}");
    }
    assert!(sigma_k(1.0, 1.0, 0).is_err());
}

#[test]
fn sigma_k_matches_complex_definition() {
    for k in 1..=16 {
        for (s, t) in [(1.01, 1.0), (1.15, 1.0), (1.07, 3.5)] {
            let a = sigma_k(s, t, k).unwrap();
            let b = sigma_k_via_f(s, t, k);
            assert!((a - b).abs() < 1e-15, "k={k} s={s} t={t}");
        }
    }
}

#[test]
fn b_eps_small_epsilon_matches_printed_column() {
    let b = b_eps_table(&cfg(0.01)).unwrap();
    assert_eq!(b, B_EPS_001.to_vec());
}

#[test]
fn b_eps_large_epsilon_printed_entries_are_upper_bounds() {
    let b = b_eps_table(&cfg(0.15)).unwrap();
    for (k, (&got, &printed)) in b.iter().zip(&B_EPS_015).enumerate() {
        let raw = sigma_k(1.15, 1.0, k + 1).unwrap();
        assert!(raw <= printed && printed - raw < 1e-7, "k={}", k + 1);
        assert!(got >= raw && got - raw <= 1e-8);
    }
    assert_eq!(b[1], 0.06869804);
    assert_eq!(b[15], 0.00071302);
}

#[test]
fn b_eps_strictly_decreasing_and_dominates_grid() {
    for eps in [0.01, 0.15] {
        let c = BoundConfig {
            grid_points_sigma: 60,
            grid_points_t: 60,
            ..cfg(eps)
        };
        let b = b_eps_table(&c).unwrap();
        assert!(b.windows(2).all(|w| w[1] < w[0]));
        for (i, &bk) in b.iter().enumerate() {
            let k = i + 1;
            let brute = linspace(1.0 + 1e-6, 1.0 + eps, 60)
                .flat_map(|s| linspace(1.0, 100.0, 60).map(move |t| sigma_k_via_f(s, t, k)))
                .fold(f64::NEG_INFINITY, f64::max);
            assert!(brute <= bk, "k={k}");
        }
    }
}

#[test]
fn d_eps0_values() {
    assert!((d_eps0(0.01).unwrap() + 0.2500763736).abs() <= 5e-10);
    let [b0, b1] = d_eps0_branches(0.15).unwrap();
    assert!(b1 > b0);
    assert_eq!(d_eps0(0.15).unwrap(), b1);
    for eps in linspace(0.001, 0.15, 150) {
        let [b0, b1] = d_eps0_branches(eps).unwrap();
        assert!(b0 < 0.0 && b1 < 0.0, "{eps}");
    }
}

#[test]
fn xi_values() {
    assert!(xi2(1.15, 1, 1.0, GammaShift::One) > 0.0);
    for d in GammaShift::BOTH {
        for k in [1, 5, 16] {
            assert!(xi(1.07, k, 1e8, d).abs() < 1e-12);
        }
    }
    assert!(xi(1.15, 2, 1.0, GammaShift::One) > 0.0);
    assert!(xi(1.15, 3, 1.0, GammaShift::One) < 0.0);
    assert!(xi(1.01, 3, 1.0, GammaShift::One) < 0.0);
}

#[test]
fn t_star_values() {
    assert!((t_star(1, 0.15).unwrap() - 3.2308).abs() < 1e-3);
    assert!((t_star(2, 0.15).unwrap() - 1.6154).abs() < 1e-3);
    assert!((t_star(3, 0.15).unwrap() - 1.0769).abs() < 1e-3);
    assert_eq!(t_star(3, 0.01).unwrap(), 1.0);
    // Ξ depends on t only through kt.
    let t1 = t_star(1, 0.15).unwrap();
    assert!((t_star(2, 0.15).unwrap() - t1 / 2.0).abs() < 1e-6);
    assert!(t_star(0, 0.1).is_err());
}

#[test]
fn a_bound_cases() {
    assert_eq!(a_bound(5, GammaShift::One, 0.15).unwrap(), 0.0);
    assert_eq!(a_bound(3, GammaShift::Zero, 0.15).unwrap(), 0.0);
    assert_eq!(
        a_bound(1, GammaShift::One, 0.15).unwrap(),
        xi(1.15, 1, 1.0, GammaShift::One)
    );
    assert_eq!(
        a_bound(2, GammaShift::One, 0.01).unwrap(),
        xi(1.15, 2, 1.0, GammaShift::One)
    );
}

#[test]
fn s_values_match_printed_table() {
    for (i, row) in S_015.iter().enumerate() {
        let k = i + 1;
        let got = [
            s1k(k, 0.15).unwrap(),
            s2k(k, 0.15).unwrap(),
            sk(k, 0.15).unwrap(),
        ];
        for j in 0..3 {
            assert!(
                (got[j] - row[j]).abs() < 1e-9,
                "k={k} col={j}: {} vs {}",
                got[j],
                row[j]
            );
        }
        assert_eq!(got[2] == got[1], k <= 4, "crossover at k={k}");
    }
}

#[test]
fn published_table_rows_and_audits() {
    let table = gamma_bound_table(&cfg(0.15)).unwrap();
    assert_eq!(table.rows.len(), 16);
    for row in &table.rows {
        assert_eq!(row.s, row.s1.min(row.s2));
    }
    assert!(table.row(0).is_none());
    assert_eq!(table.row(16).unwrap().k, 16);
    // The δ = 0 Method I bound is not the supremum of Ξ₂ for large k.
    let failed: Vec<_> = table.audit.failures().map(|f| f.name.clone()).collect();
    assert!(
        failed
            .iter()
            .any(|n| n == "Xi2 max at (1+eps,1), k=16, delta=0"),
        "{failed:?}"
    );
    assert!(
        failed.iter().all(|n| n.starts_with("Xi2 max")),
        "{failed:?}"
    );
}

#[test]
fn audited_mode_passes_every_audit() {
    let c = BoundConfig {
        xi2_bound: Xi2Bound::Audited,
        grid_points_sigma: 100,
        grid_points_t: 100,
        ..cfg(0.15)
    };
    let table = gamma_bound_table(&c).unwrap();
    assert!(
        table.audit.passed(),
        "{:?}",
        table.audit.failures().collect::<Vec<_>>()
    );
    for row in &table.rows {
        let published = s1k(row.k, 0.15).unwrap();
        assert!(row.s1 >= published);
    }
}

#[test]
fn global_audits_pass() {
    assert!(audit::stechkin_gap_audit(400).passed);
    assert!(audit::stechkin_inequality_audit(10_000, 7).passed);
    assert!(audit::xi1_nonpositive_audit(10_000, 11).passed);
    assert!(audit::h_increasing_audit(400).passed);
    assert!(audit::d_eps0_audit(0.15, 400).passed);
}

#[test]
fn sigma_audits_pass_on_full_grid() {
    let grid = AuditGrid::from_config(&cfg(0.15));
    for k in [1, 8, 16] {
        assert!(audit::sigma_k_max_audit(0.15, k, &grid).passed);
        assert!(audit::sigma_k_monotonicity_audit(0.15, k, &grid).passed);
    }
}

#[test]
fn method_two_audit_passes() {
    for eps in [0.01, 0.15] {
        let grid = AuditGrid::new(eps, 80, 80, 100.0);
        for k in 1..=16 {
            let f = audit::method_two_audit(eps, k, &grid);
            assert!(f.passed, "eps={eps} k={k}: {}", f.detail);
        }
    }
}

#[test]
fn m_constant_closed_form_and_grid_oracle() {
    let p = TrigPoly::mt16();
    let (r, m) = m_constant(&p).unwrap();
    assert!((m - M_CONSTANT).abs() < 1e-9);
    assert!(
        ulps_between(m, M_CLOSED_FORM) <= 4,
        "{m} vs {M_CLOSED_FORM}"
    );
    let brute = linspace(0.01, 10.0, 1_000_001)
        .map(|r| p.a1() / (1.0 + r) - p.a0() / r)
        .fold(f64::NEG_INFINITY, f64::max);
    assert!(brute <= m + 1e-15 && m - brute < 1e-10);
    assert!(r > 0.0);
}

#[test]
fn region_constants_match_printed_values() {
    let p = TrigPoly::mt16();
    for (eps, want) in [(0.15, C_RATIOS_015), (0.01, C_RATIOS_001)] {
        let c = BoundConfig {
            grid_points_sigma: 40,
            grid_points_t: 40,
            ..cfg(eps)
        };
        let rc = region_constants(&p, &c).unwrap();
        for (i, (got, want)) in rc.ratios.iter().zip(want).enumerate() {
            assert!((got - want).abs() < 1e-6, "eps={eps} C{}", i + 1);
        }
        let diff = rc.c1 - rc.c2;
        let expect = half_one_minus_kappa() * p.a0();
        assert!(
            (diff - expect).abs() <= 4.0 * f64::EPSILON * rc.c1,
            "{diff} vs {expect}"
        );
    }
    let c = BoundConfig {
        grid_points_sigma: 40,
        grid_points_t: 40,
        ..cfg(0.01)
    };
    let rc = region_constants(&p, &c).unwrap();
    assert_eq!(rc.published, [12.2411, 9.5347, 0.05017, 2.2692]);
}

#[test]
fn region_constants_rejects_degree_mismatch() {
    let p = TrigPoly::new(vec![3.0, 4.0, 1.0]).unwrap();
    assert!(region_constants(&p, &cfg(0.01)).is_err());
    let bad = TrigPoly::new(vec![4.0, 3.0, 1.0]).unwrap();
    assert!(region_constants(&bad, &cfg(0.01).with_kmax(2)).is_err());
}

#[test]
fn zero_free_width_values() {
    let c = [12.2411, 9.5347, 0.05017, 2.2692];
    let w = zero_free_width(&c, 0.0, 1, 1.0).unwrap();
    assert!((w - 1.0 / (0.05017 + 2.2692)).abs() < 1e-15);
    let base = zero_free_width(&c, 2.0, 2, 5.0).unwrap();
    assert!(zero_free_width(&c, 3.0, 2, 5.0).unwrap() < base);
    assert!(zero_free_width(&c, 2.0, 3, 5.0).unwrap() < base);
    assert!(zero_free_width(&c, 2.0, 2, 6.0).unwrap() < base);
    assert!(zero_free_width(&[0.0, 0.0, -1.0, 0.5], 0.0, 1, 1.0).is_err());
    assert!(zero_free_width(&c, 0.0, 0, 1.0).is_err());
}

#[test]
fn config_validation() {
    assert!(BoundConfig::new(0.0).is_err());
    assert!(BoundConfig::new(0.16).is_err());
    assert!(BoundConfig::new(0.15).is_ok());
    assert!(cfg(0.1).with_kmax(0).validate().is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn sigma1_satisfies_defining_identity(s in 0.0f64..10.0) {
        let v = sigma1(s).unwrap();
        prop_assert!((v * v - v - s * s).abs() <= 8.0 * f64::EPSILON * (v * v).max(1.0));
    }

    #[test]
    fn f_symmetric_under_reflection(sr in 1.0f64..1.5, si in -5.0f64..5.0, zr in 0.01f64..0.99, zi in -5.0f64..5.0) {
        let a = eval_f(sr, si, zr, zi).unwrap();
        let b = eval_f(sr, si, 1.0 - zr, zi).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
    }

    #[test]
    fn xi1_never_positive(s in 1.0f64..1.15, k in 1usize..=16, t in 0.01f64..100.0, one in any::<bool>()) {
        let d = if one { GammaShift::One } else { GammaShift::Zero };
        prop_assert!(xi1(s, k, t, d) <= 0.0);
    }

    #[test]
    fn sk_is_rowwise_min(k in 1usize..=16, eps in 0.001f64..=0.15) {
        prop_assert_eq!(sk(k, eps).unwrap(), s1k(k, eps).unwrap().min(s2k(k, eps).unwrap()));
    }
}
