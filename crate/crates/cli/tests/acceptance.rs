//! One PASS/FAIL line per acceptance criterion, each at its stated tolerance.
//! Exits non-zero if any criterion fails.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use impurity_casimir::{
    convergence_study, energy_density_point_closed, energy_density_point_integral, errors_strictly_decreasing,
    exponential_identity_check, integrate_semi_infinite, relative_difference, resolvent_config,
    resolvent_identity_check, script_e, BuiltinShapeF64, CouplingConvention, CouplingF64, QuadratureConfigF64,
    RadialPointF64,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

struct Report {
    failures: usize,
}

impl Report {
    fn record(&mut self, name: &str, passed: bool, detail: String) {
        println!("{} {name:<34} {detail}", if passed { "PASS" } else { "FAIL" });
        if !passed {
            self.failures += 1;
        }
    }
}

fn point(r: f64) -> RadialPointF64 {
    RadialPointF64::new(r).unwrap()
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

fn integral(r: f64, alpha: f64) -> f64 {
    let res = energy_density_point_integral(point(r), alpha, &QuadratureConfigF64::default()).unwrap();
    if res.converged {
        res.value
    } else {
        f64::NAN
    }
}

fn closed(r: f64, gamma: f64) -> f64 {
    energy_density_point_closed(point(r), gamma).unwrap()
}

/// Maximum that lets a NaN through, so failed samples surface as FAIL.
fn worst(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(
        0.0,
        |m: f64, v| if m.is_nan() || v.is_nan() { f64::NAN } else { m.max(v) },
    )
}

fn timed<V>(f: impl FnOnce() -> V) -> (V, Duration) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed())
}

fn equivalence(report: &mut Report) {
    let (dev, elapsed) = timed(|| {
        let mut devs = Vec::new();
        for r in [0.1, 0.5, 1.0, 2.0, 10.0] {
            for gamma in [0.1, 1.0, 10.0] {
                devs.push(relative_difference(
                    integral(r, 2.0 * PI * PI / gamma),
                    closed(r, gamma),
                ));
            }
        }
        worst(devs)
    });
    report.record(
        "equivalence_grid",
        dev <= 1e-8 && elapsed < Duration::from_secs(5),
        format!("max_rel={dev:.3e} tol=1e-8 time={elapsed:.2?} limit=5s"),
    );
}

fn identity(report: &mut Report) {
    let config = QuadratureConfigF64::default();
    let dev = worst(log_grid(0.01, 100.0, 20).into_iter().map(|rho| {
        let check = exponential_identity_check(rho, &config).unwrap();
        if check.lhs.converged {
            check.deviation()
        } else {
            f64::NAN
        }
    }));
    report.record("exponential_identity", dev <= 1e-10, format!("max_abs={dev:.3e} tol=1e-10"));
}

fn resolvent(report: &mut Report) {
    let config = resolvent_config();
    let dev = worst([0.5f64, 1.0, 10.0].into_iter().map(|k| {
        let r = resolvent_identity_check(k, &config).unwrap();
        if r.converged {
            (r.value - k).abs() / k
        } else {
            f64::NAN
        }
    }));
    report.record(
        "resolvent_identity",
        dev <= 1e-8,
        format!("max_dev/k={dev:.3e} tol=1e-8"),
    );
}

fn rho_one(report: &mut Report) {
    let exact = 1.0 / (8.0 * PI * PI);
    let c = relative_difference(closed(1.0, 2.0), exact);
    let i = relative_difference(integral(1.0, PI * PI), exact);
    report.record(
        "rho_one_exact",
        c <= 1e-12 && i <= 1e-8,
        format!("closed_rel={c:.3e} tol=1e-12 integral_rel={i:.3e} tol=1e-8"),
    );
}

fn point_limit(report: &mut Report) {
    let ball = BuiltinShapeF64::ball(1.0).unwrap();
    let ((rows, decreasing), elapsed) = timed(|| {
        let rows = convergence_study(
            point(1.0),
            2.0 * PI * PI,
            &ball,
            &[0.5, 0.1, 0.01, 0.001],
            &QuadratureConfigF64::default(),
        )
        .unwrap();
        let ok = errors_strictly_decreasing(&rows) && rows.iter().all(|r| r.density.converged);
        (rows, ok)
    });
    let last = rows.last().unwrap().relative_error();
    report.record(
        "lambda_to_zero_limit",
        decreasing && last <= 1e-2 && elapsed < Duration::from_secs(60),
        format!("decreasing={decreasing} final_rel={last:.3e} tol=1e-2 time={elapsed:.2?} limit=60s"),
    );
    report.record(
        "lambda_to_zero_limit_tightened",
        decreasing && last <= 1e-3,
        format!("final_rel={last:.3e} tol=1e-3"),
    );
}

fn special(report: &mut Report) {
    let bounds_ok = log_grid(1e-4, 1e6, 400).into_iter().all(|rho| {
        let e: f64 = script_e(rho).unwrap();
        1.0 / (1.0 + rho) < e && e < 1.0 / rho
    });
    let ode = worst(log_grid(1e-3, 1e4, 30).into_iter().map(|rho| {
        let h = 1e-4 * rho;
        let derivative = (script_e(rho + h).unwrap() - script_e(rho - h).unwrap()) / (2.0 * h);
        let expected = script_e(rho).unwrap() - 1.0 / rho;
        ((derivative - expected) / expected).abs()
    }));
    let config = QuadratureConfigF64::new(1e-15, 1e-13).unwrap();
    let oracle = worst(log_grid(1e-3, 1e3, 20).into_iter().map(|rho| {
        let q = integrate_semi_infinite(|v: f64| (-rho * v).exp() / (1.0 + v), &config).unwrap();
        relative_difference(q.value, script_e(rho).unwrap())
    }));
    report.record(
        "special_function_suite",
        bounds_ok && ode <= 1e-6 && oracle <= 1e-10,
        format!("bounds={bounds_ok} ode_rel={ode:.3e} tol=1e-6 oracle_rel={oracle:.3e} tol=1e-10"),
    );
}

fn positivity_monotonicity(report: &mut Report) {
    let mut rng = StdRng::seed_from_u64(20261019);
    let mut violations = 0;
    for _ in 0..200 {
        let r = 10f64.powf(rng.random_range(-2.0..2.0));
        let alpha = 10f64.powf(rng.random_range(-2.0..2.0));
        let gamma = 2.0 * PI * PI / alpha;
        let here = integral(r, alpha);
        let c = closed(r, gamma);
        let conditions = [
            here > 0.0,
            c > 0.0,
            integral(r, alpha * 1.001) < here,
            integral(r * 1.001, alpha) < here,
            closed(r, gamma / 1.001) < c,
            closed(r * 1.001, gamma) < c,
        ];
        violations += conditions.iter().filter(|ok| !**ok).count();
    }
    report.record(
        "positivity_monotonicity",
        violations == 0,
        format!("samples=200 violations={violations}"),
    );
}

fn scaling(report: &mut Report) {
    let mut devs = Vec::new();
    for (r, gamma) in [(0.3, 1.0), (1.0, 1.0), (2.5, 0.2)] {
        for s in [0.5, 2.0, 7.0] {
            devs.push(relative_difference(
                closed(s * r, s * gamma),
                closed(r, gamma) / s.powi(4),
            ));
            let alpha = 2.0 * PI * PI / gamma;
            devs.push(relative_difference(
                integral(s * r, alpha / s),
                integral(r, alpha) / s.powi(4),
            ));
        }
    }
    let dev = worst(devs);
    report.record("scaling_law", dev <= 1e-10, format!("max_rel={dev:.3e} tol=1e-10"));
}

fn coupling(report: &mut Report) {
    let mut round_trip = 0.0f64;
    let mut routes = 0.0f64;
    for v in log_grid(1e-8, 1e8, 50) {
        let back = CouplingF64::alpha(v)
            .unwrap()
            .convert(CouplingConvention::FermiPizzoccheroGamma)
            .convert(CouplingConvention::AlbeverioAlphaA)
            .convert(CouplingConvention::ZiemianAlpha);
        round_trip = round_trip.max(relative_difference(back.value(), v));
        let gamma = CouplingF64::gamma(v).unwrap();
        let via_a = CouplingF64::alpha_a(gamma.to_albeverio()).unwrap().to_ziemian_alpha();
        routes = routes.max(relative_difference(gamma.to_ziemian_alpha(), via_a));
    }
    let eps4 = 4.0 * f64::EPSILON;
    report.record(
        "coupling_round_trips",
        round_trip <= eps4 && routes <= 1e-15,
        format!("round_trip_rel={round_trip:.3e} tol=4eps routes_rel={routes:.3e} tol=1e-15"),
    );
}

fn full_verify(report: &mut Report) {
    let (output, elapsed) = timed(|| {
        Command::new(env!("CARGO_BIN_EXE_impurity-casimir"))
            .arg("verify")
            .output()
            .expect("binary runs")
    });
    let text = String::from_utf8_lossy(&output.stdout);
    let checks = text.lines().filter(|l| l.starts_with("CHECK ")).count();
    let all_pass = output.status.success() && checks >= 4 && text.lines().all(|l| l.ends_with(" PASS"));
    report.record(
        "verify_command",
        all_pass && elapsed < Duration::from_secs(120),
        format!("checks={checks} all_pass={all_pass} time={elapsed:.2?} limit=120s"),
    );
}

fn main() -> ExitCode {
    let mut report = Report { failures: 0 };
    equivalence(&mut report);
    identity(&mut report);
    resolvent(&mut report);
    rho_one(&mut report);
    point_limit(&mut report);
    special(&mut report);
    positivity_monotonicity(&mut report);
    scaling(&mut report);
    coupling(&mut report);
    full_verify(&mut report);
    if report.failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{} acceptance criteria failed", report.failures);
        ExitCode::FAILURE
    }
}
