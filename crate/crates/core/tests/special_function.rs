use impurity_casimir::{integrate_semi_infinite, script_e, QuadratureConfigF64};

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

#[test]
fn agrees_with_defining_integral() {
    let config = QuadratureConfigF64::new(1e-15, 1e-13).unwrap();
    for rho in log_grid(1e-3, 1e3, 20) {
        let q = integrate_semi_infinite(|v: f64| (-rho * v).exp() / (1.0 + v), &config).unwrap();
        let e = script_e(rho).unwrap();
        let rel = ((q.value - e) / e).abs();
        assert!(q.converged, "rho={rho}: {q:?}");
        assert!(rel <= 1e-10, "rho={rho}: quadrature {} vs {e}, rel {rel:e}", q.value);
    }
}

#[test]
fn satisfies_its_differential_equation() {
    // 𝔈'(ρ) = 𝔈(ρ) - 1/ρ
    for rho in log_grid(1e-3, 1e4, 30) {
        let h = 1e-4 * rho;
        let derivative = (script_e(rho + h).unwrap() - script_e(rho - h).unwrap()) / (2.0 * h);
        let expected = script_e(rho).unwrap() - 1.0 / rho;
        let rel = ((derivative - expected) / expected).abs();
        assert!(rel <= 1e-6, "rho={rho}: {derivative} vs {expected}, rel {rel:e}");
    }
}

#[test]
fn strict_bounds_on_wide_range() {
    for rho in log_grid(1e-4, 1e6, 200) {
        let e = script_e(rho).unwrap();
        assert!(1.0 / (1.0 + rho) < e && e < 1.0 / rho, "rho={rho}: {e}");
    }
}

#[test]
fn smooth_across_branch_switch() {
    let below: f64 = script_e(1.0 - 1e-9).unwrap();
    let at: f64 = script_e(1.0).unwrap();
    let above: f64 = script_e(1.0 + 1e-9).unwrap();
    // slope 𝔈(1) - 1 ≈ -0.404
    assert!((below - at - 0.404e-9).abs() < 1e-11);
    assert!((at - above - 0.404e-9).abs() < 1e-11);
}

#[test]
fn strictly_decreasing() {
    let values: Vec<f64> = log_grid(1e-4, 1e6, 500)
        .into_iter()
        .map(|rho| script_e(rho).unwrap())
        .collect();
    assert!(values.windows(2).all(|w| w[1] < w[0]));
}
