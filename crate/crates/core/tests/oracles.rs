use burgers_core::exact::{lambda, EigenMode, SeparableSolution, SteadyProfile};
use burgers_core::grid::{Field1D, Grid1D};
use burgers_core::solver::{evolve, EvolveSpec};
use burgers_core::strain::StrainModel;
use burgers_core::verification::crosscheck::{cross_check_transform, CrossCheckParams, Verdict};
use burgers_core::verification::{
    decay_rate_fit, discrete_spectrum, ode_residual, pde_residual_steady, DiscrepancyKind, DiscrepancyReport,
};
use proptest::prelude::*;

fn grid() -> Grid1D {
    Grid1D::new(10.0, 1001).unwrap()
}

#[test]
fn evolved_first_mode_decays_at_unit_rate() {
    let mode = EigenMode::new(1, 1.0).unwrap();
    let initial = Field1D::from_fn(grid(), |x| mode.eval(x));
    let out = evolve(&initial, &EvolveSpec::similarity(1.0, 1.0)).unwrap();
    let series: Vec<(f64, f64)> = out.norms.iter().map(|s| (s.time, s.l2)).collect();
    let fit = decay_rate_fit(&series).unwrap();
    assert!((fit.rate - 1.0).abs() < 1e-3, "{fit:?}");
    let ratio = out.norms.last().unwrap().l2 / out.norms[0].l2;
    assert!((ratio - (-1f64).exp()).abs() < 1e-3);
}

#[test]
fn superposition_tracks_the_closed_form() {
    let sol = SeparableSolution::new(2.0, &[(1.0, 0), (-0.5, 2), (0.25, 3)]).unwrap();
    let initial = Field1D::try_from_fn(grid(), |x| sol.omega(x, 0.0)).unwrap();
    let out = evolve(&initial, &EvolveSpec::similarity(2.0, 0.5).with_norm_samples(0)).unwrap();
    let expected = Field1D::try_from_fn(grid(), |x| sol.omega(x, 0.5)).unwrap();
    assert!(out.field.max_abs_diff(&expected) < 1e-3);
}

#[test]
fn cross_check_winner_is_stable_across_modes() {
    let strain = StrainModel::rational(-0.5, -1.0).unwrap();
    for (n, t_end) in [(0, 1.0), (1, 0.5), (2, 0.5)] {
        let r = cross_check_transform(&CrossCheckParams::new(strain, 1.0, n, t_end).with_points(801)).unwrap();
        assert_eq!(r.verdict, Verdict::Winner { alpha: 1.5 }, "n = {n}");
    }
}

#[test]
fn implied_alpha_is_the_substitution_value() {
    let strain = StrainModel::rational(-0.5, -1.0).unwrap();
    let r = cross_check_transform(
        &CrossCheckParams::new(strain, 1.0, 0, 1.0).with_points(401).with_implied_alpha(true),
    )
    .unwrap();
    assert!((r.implied_alpha.unwrap() - 1.5).abs() < 0.02, "{:?}", r.implied_alpha);
}

#[test]
fn discrepancy_report_serialises_four_items() {
    let strain = StrainModel::rational(-0.5, -1.0).unwrap();
    let cross = cross_check_transform(&CrossCheckParams::new(strain, 1.0, 0, 1.0).with_points(801)).unwrap();
    let report = DiscrepancyReport::build(&cross).unwrap();
    let json = serde_json::to_value(&report).unwrap();
    let items = json["items"].as_array().unwrap();
    assert_eq!(items.len(), 4);
    assert_eq!(items[0]["item"], "AlphaMapping");
    assert!(report.get(DiscrepancyKind::WPrefactor).unwrap().oracle_evidence.separation > 1e4);
}

#[test]
fn spectrum_report_json_shape() {
    let r = discrete_spectrum(0.5, &grid(), 2).unwrap();
    let json = serde_json::to_value(&r).unwrap();
    assert_eq!(json["growing_modes"], serde_json::json!([0]));
    assert_eq!(json["computed"][1][0], 1);
    assert_eq!(json["grid"]["num_points"], 1001);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn spectrum_follows_the_eigenvalue_law(alpha in 0.8f64..3.0) {
        let r = discrete_spectrum(alpha, &Grid1D::new(10.0, 1001).unwrap(), 4).unwrap();
        for (n, v) in &r.computed {
            prop_assert!((v - lambda(*n, alpha)).abs() < 1e-3);
        }
    }

    #[test]
    fn steady_profile_solves_its_ode(alpha in 0.4f64..3.0) {
        let g = Grid1D::new(6.0, 121).unwrap();
        prop_assert!(pde_residual_steady(alpha, &g).unwrap() < 1e-7);
    }

    #[test]
    fn steady_amplitude_is_linear(alpha in 0.4f64..3.0, c in -5.0f64..5.0, xi in -6.0f64..6.0) {
        let unit = SteadyProfile::new(alpha, 1.0).unwrap().omega(xi).unwrap();
        let scaled = SteadyProfile::new(alpha, c).unwrap().omega(xi).unwrap();
        prop_assert!((scaled - c * unit).abs() <= 1e-14 * unit.abs().max(1e-300) * c.abs().max(1.0));
    }

    #[test]
    fn eigenmodes_solve_their_ode(alpha in 0.4f64..3.0, n in 0usize..8) {
        let mode = EigenMode::new(n, alpha).unwrap();
        let g = Grid1D::new(mode.decay_cutoff(1e-12), 101).unwrap();
        let r = ode_residual(|x| Ok(mode.eval(x)), alpha, mode.lambda(), &g).unwrap();
        prop_assert!(r < 1e-6, "residual {r}");
    }
}
