use std::f64::consts::PI;

use impurity_casimir::{
    energy_density_point_closed, energy_density_point_integral, relative_difference, CouplingConvention, CouplingF64,
    QuadratureConfigF64, RadialPointF64,
};
use proptest::prelude::*;

const RADII: [f64; 5] = [0.1, 0.5, 1.0, 2.0, 10.0];
const GAMMAS: [f64; 3] = [0.1, 1.0, 10.0];

fn point(r: f64) -> RadialPointF64 {
    RadialPointF64::new(r).unwrap()
}

fn integral(r: f64, alpha: f64) -> f64 {
    let result = energy_density_point_integral(point(r), alpha, &QuadratureConfigF64::default()).unwrap();
    assert!(result.converged, "|x|={r}, alpha={alpha}: {result:?}");
    result.value
}

fn closed(r: f64, gamma: f64) -> f64 {
    energy_density_point_closed(point(r), gamma).unwrap()
}

#[test]
fn integral_and_closed_forms_agree_on_grid() {
    for r in RADII {
        for gamma in GAMMAS {
            let i = integral(r, 2.0 * PI * PI / gamma);
            let c = closed(r, gamma);
            let rel = relative_difference(i, c);
            assert!(rel <= 1e-8, "|x|={r}, gamma={gamma}: {i:e} vs {c:e}, rel {rel:e}");
        }
    }
}

#[test]
fn forms_agree_at_large_rho() {
    // ρ = 2|x|/γ up to 2e4: the closed form is a difference of near-equal terms
    for (r, gamma) in [(100.0, 0.01), (50.0, 0.1), (10.0, 0.001)] {
        let rel = relative_difference(integral(r, 2.0 * PI * PI / gamma), closed(r, gamma));
        assert!(rel <= 1e-8, "|x|={r}, gamma={gamma}: rel {rel:e}");
    }
}

#[test]
fn rho_one_is_exact() {
    let exact = 1.0 / (8.0 * PI * PI);
    assert!(relative_difference(closed(1.0, 2.0), exact) <= 1e-12);
    assert!(relative_difference(integral(1.0, PI * PI), exact) <= 1e-8);
}

#[test]
fn scaling_law() {
    for (r, gamma) in [(0.3, 1.0), (1.0, 1.0), (2.5, 0.2)] {
        for s in [0.5, 2.0, 7.0] {
            let scaled = closed(s * r, s * gamma);
            let expected = closed(r, gamma) / s.powi(4);
            assert!(
                relative_difference(scaled, expected) <= 1e-10,
                "s={s}, |x|={r}, gamma={gamma}"
            );
            let alpha = 2.0 * PI * PI / gamma;
            let scaled = integral(s * r, alpha / s);
            let expected = integral(r, alpha) / s.powi(4);
            assert!(relative_difference(scaled, expected) <= 1e-10, "integral, s={s}");
        }
    }
}

#[test]
fn coupling_round_trips() {
    for v in [1e-6, 0.01, 0.3, 1.0, 2.0 * PI * PI, 8.0 * PI.powi(3), 1e3, 1e8] {
        let alpha = CouplingF64::alpha(v).unwrap();
        let back = alpha
            .convert(CouplingConvention::FermiPizzoccheroGamma)
            .convert(CouplingConvention::AlbeverioAlphaA)
            .convert(CouplingConvention::ZiemianAlpha);
        assert!(
            relative_difference(back.value(), v) <= 4.0 * f64::EPSILON,
            "alpha={v}: {}",
            back.value()
        );

        let gamma = CouplingF64::gamma(v).unwrap();
        let direct = gamma.to_ziemian_alpha();
        let via_a = CouplingF64::alpha_a(gamma.to_albeverio()).unwrap().to_ziemian_alpha();
        assert!(relative_difference(direct, via_a) <= 1e-15, "gamma={v}");
    }
}

#[test]
fn coupling_reference_values() {
    let gamma = CouplingF64::gamma(1.0).unwrap();
    assert!(relative_difference(gamma.to_ziemian_alpha(), 2.0 * PI * PI) <= 1e-15);
    assert!(relative_difference(gamma.to_albeverio(), 1.0 / (4.0 * PI)) <= 1e-15);
    let alpha = CouplingF64::alpha(8.0 * PI.powi(3)).unwrap();
    assert!(relative_difference(alpha.to_albeverio(), 1.0) <= 1e-15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn positive_and_decreasing(log_r in -2.0f64..2.0, log_alpha in -2.0f64..2.0) {
        let r = 10f64.powf(log_r);
        let alpha = 10f64.powf(log_alpha);
        let gamma = 2.0 * PI * PI / alpha;
        let here = integral(r, alpha);
        let c = closed(r, gamma);
        prop_assert!(here > 0.0 && c > 0.0);
        prop_assert!(integral(r, alpha * 1.01) < here);
        prop_assert!(integral(r * 1.01, alpha) < here);
        prop_assert!(closed(r, gamma / 1.01) < c);
        prop_assert!(closed(r * 1.01, gamma) < c);
    }
}
