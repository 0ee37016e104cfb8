//! The verification suite: each check reduces to one deviation compared with a
//! threshold, either absolute or relative.

use std::f64::consts::PI;

use impurity_casimir::{
    convergence_study, energy_density_point_closed, energy_density_point_integral, errors_strictly_decreasing,
    exponential_identity_check, integrate_semi_infinite, relative_difference, resolvent_config,
    resolvent_identity_check, script_e, BuiltinShapeF64, CouplingConvention, CouplingF64, QuadratureConfigF64,
    RadialPointF64,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::settings::RunFile;
use crate::{Failure, VerifyArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Measure {
    Absolute,
    Relative,
}

struct Check {
    name: &'static str,
    measure: Measure,
    tolerance: f64,
    run: fn() -> Result<f64, impurity_casimir::Error>,
}

pub struct Outcome {
    pub name: &'static str,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "CHECK {:<24} max_dev={:<11.3e} tol={:<8.1e} {}",
            self.name,
            self.max_deviation,
            self.tolerance,
            if self.passed { "PASS" } else { "FAIL" }
        )
    }
}

fn checks() -> Vec<Check> {
    vec![
        Check {
            name: "exponential_identity",
            measure: Measure::Absolute,
            tolerance: 1e-10,
            run: exponential_identity,
        },
        Check {
            name: "resolvent_identity",
            measure: Measure::Relative,
            tolerance: 1e-8,
            run: resolvent_identity,
        },
        Check {
            name: "equivalence",
            measure: Measure::Relative,
            tolerance: 1e-8,
            run: equivalence,
        },
        Check {
            name: "rho_one_closed",
            measure: Measure::Relative,
            tolerance: 1e-12,
            run: rho_one_closed,
        },
        Check {
            name: "rho_one_integral",
            measure: Measure::Relative,
            tolerance: 1e-8,
            run: rho_one_integral,
        },
        Check {
            name: "scaling_law",
            measure: Measure::Relative,
            tolerance: 1e-10,
            run: scaling_law,
        },
        Check {
            name: "coupling_round_trip",
            measure: Measure::Relative,
            tolerance: 1e-15,
            run: coupling_round_trip,
        },
        Check {
            name: "special_bounds",
            measure: Measure::Absolute,
            tolerance: 0.0,
            run: special_bounds,
        },
        Check {
            name: "special_ode",
            measure: Measure::Relative,
            tolerance: 1e-6,
            run: special_ode,
        },
        Check {
            name: "special_oracle",
            measure: Measure::Relative,
            tolerance: 1e-10,
            run: special_oracle,
        },
        Check {
            name: "positivity_monotonicity",
            measure: Measure::Absolute,
            tolerance: 0.0,
            run: positivity_monotonicity,
        },
        Check {
            name: "point_limit",
            measure: Measure::Relative,
            tolerance: 1e-2,
            run: point_limit,
        },
    ]
}

/// Runs every check with optional threshold overrides, in a fixed order.
pub fn run_suite(abs_override: Option<f64>, rel_override: Option<f64>) -> Vec<Outcome> {
    checks()
        .par_iter()
        .map(|check| {
            let tolerance = match check.measure {
                Measure::Absolute => abs_override.unwrap_or(check.tolerance),
                Measure::Relative => rel_override.unwrap_or(check.tolerance),
            };
            // a check that cannot even be evaluated counts as an infinite deviation
            let max_deviation = (check.run)().unwrap_or(f64::INFINITY);
            Outcome {
                name: check.name,
                max_deviation,
                tolerance,
                passed: max_deviation <= tolerance,
            }
        })
        .collect()
}

pub fn run(args: VerifyArgs, file: &RunFile) -> Result<(), Failure> {
    let abs = file.pick(args.abs_tol, "abs-tol")?;
    let rel = file.pick(args.rel_tol, "rel-tol")?;
    for t in [abs, rel].into_iter().flatten() {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Failure::usage(format!(
                "tolerance override {t} must be finite and >= 0"
            )));
        }
    }
    let outcomes = run_suite(abs, rel);
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    if failed > 0 {
        return Err(Failure::verification(format!(
            "{failed} of {} checks failed",
            outcomes.len()
        )));
    }
    Ok(())
}

fn log_grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (n - 1) as f64).exp())
}

fn point(r: f64) -> Result<RadialPointF64, impurity_casimir::Error> {
    RadialPointF64::new(r)
}

fn max_of(
    mut values: impl Iterator<Item = Result<f64, impurity_casimir::Error>>,
) -> Result<f64, impurity_casimir::Error> {
    values.try_fold(0.0f64, |m, v| v.map(|v| nan_max(m, v)))
}

fn tight() -> QuadratureConfigF64 {
    QuadratureConfigF64::new(1e-14, 1e-13).expect("valid tolerances")
}

fn exponential_identity() -> Result<f64, impurity_casimir::Error> {
    let config = tight();
    max_of(log_grid(0.01, 100.0, 20).map(|rho| exponential_identity_check(rho, &config).map(|c| c.deviation())))
}

fn resolvent_identity() -> Result<f64, impurity_casimir::Error> {
    let config = resolvent_config();
    max_of(
        [0.5f64, 1.0, 10.0]
            .into_iter()
            .map(|k| resolvent_identity_check(k, &config).map(|r| (r.value - k).abs() / k)),
    )
}

fn integral(r: f64, alpha: f64) -> Result<f64, impurity_casimir::Error> {
    let result = energy_density_point_integral(point(r)?, alpha, &QuadratureConfigF64::default())?;
    Ok(if result.converged { result.value } else { f64::NAN })
}

fn equivalence() -> Result<f64, impurity_casimir::Error> {
    let mut worst = 0.0f64;
    for r in [0.1, 0.5, 1.0, 2.0, 10.0] {
        for gamma in [0.1, 1.0, 10.0] {
            let i = integral(r, 2.0 * PI * PI / gamma)?;
            let c = energy_density_point_closed(point(r)?, gamma)?;
            worst = nan_max(worst, relative_difference(i, c));
        }
    }
    Ok(worst)
}

/// `max` that propagates NaN, so a failed sample cannot hide.
fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

fn rho_one_closed() -> Result<f64, impurity_casimir::Error> {
    let v = energy_density_point_closed(point(1.0)?, 2.0)?;
    Ok(relative_difference(v, 1.0 / (8.0 * PI * PI)))
}

fn rho_one_integral() -> Result<f64, impurity_casimir::Error> {
    Ok(relative_difference(integral(1.0, PI * PI)?, 1.0 / (8.0 * PI * PI)))
}

fn scaling_law() -> Result<f64, impurity_casimir::Error> {
    let mut worst = 0.0f64;
    for (r, gamma) in [(0.3, 1.0), (1.0, 1.0), (2.5, 0.2)] {
        let base = energy_density_point_closed(point(r)?, gamma)?;
        for s in [0.5, 2.0, 7.0] {
            let scaled = energy_density_point_closed(point(s * r)?, s * gamma)?;
            worst = nan_max(worst, relative_difference(scaled, base / s.powi(4)));
        }
    }
    Ok(worst)
}

fn coupling_round_trip() -> Result<f64, impurity_casimir::Error> {
    let mut worst = 0.0f64;
    for v in [1e-6, 0.01, 0.3, 1.0, 2.0 * PI * PI, 8.0 * PI.powi(3), 1e3, 1e8] {
        let back = CouplingF64::alpha(v)?
            .convert(CouplingConvention::FermiPizzoccheroGamma)
            .convert(CouplingConvention::AlbeverioAlphaA)
            .convert(CouplingConvention::ZiemianAlpha);
        worst = nan_max(worst, relative_difference(back.value(), v));
        let gamma = CouplingF64::gamma(v)?;
        let via_a = CouplingF64::alpha_a(gamma.to_albeverio())?.to_ziemian_alpha();
        worst = nan_max(worst, relative_difference(gamma.to_ziemian_alpha(), via_a));
    }
    Ok(worst)
}

/// Largest violation of `1/(1+ρ) < 𝔈(ρ) < 1/ρ`; zero when the bounds hold strictly.
fn special_bounds() -> Result<f64, impurity_casimir::Error> {
    max_of(log_grid(1e-4, 1e6, 200).map(|rho| {
        let e = script_e(rho)?;
        let lower = 1.0 / (1.0 + rho);
        let upper = 1.0 / rho;
        Ok(if lower < e && e < upper {
            0.0
        } else {
            (lower - e).max(e - upper).max(f64::MIN_POSITIVE)
        })
    }))
}

fn special_ode() -> Result<f64, impurity_casimir::Error> {
    max_of(log_grid(1e-3, 1e4, 30).map(|rho| {
        let h = 1e-4 * rho;
        let derivative = (script_e(rho + h)? - script_e(rho - h)?) / (2.0 * h);
        let expected = script_e(rho)? - 1.0 / rho;
        Ok(((derivative - expected) / expected).abs())
    }))
}

fn special_oracle() -> Result<f64, impurity_casimir::Error> {
    let config = tight();
    max_of(log_grid(1e-3, 1e3, 20).map(|rho| {
        let q = integrate_semi_infinite(|v: f64| (-rho * v).exp() / (1.0 + v), &config)?;
        Ok(relative_difference(q.value, script_e(rho)?))
    }))
}

/// Number of violated positivity or monotonicity conditions over 200
/// log-uniform samples of `(|x|, α)` in `[1e-2, 1e2]²`.
fn positivity_monotonicity() -> Result<f64, impurity_casimir::Error> {
    let mut rng = StdRng::seed_from_u64(0x5eed_ca51);
    let samples: Vec<(f64, f64)> = (0..200)
        .map(|_| {
            (
                10f64.powf(rng.random_range(-2.0..2.0)),
                10f64.powf(rng.random_range(-2.0..2.0)),
            )
        })
        .collect();
    let violations = samples
        .par_iter()
        .map(|&(r, alpha)| -> Result<usize, impurity_casimir::Error> {
            let gamma = 2.0 * PI * PI / alpha;
            let here = integral(r, alpha)?;
            let closed = energy_density_point_closed(point(r)?, gamma)?;
            let conditions = [
                here > 0.0,
                closed > 0.0,
                integral(r, alpha * 1.01)? < here,
                integral(r * 1.01, alpha)? < here,
                energy_density_point_closed(point(r)?, gamma / 1.01)? < closed,
                energy_density_point_closed(point(r * 1.01)?, gamma)? < closed,
            ];
            Ok(conditions.iter().filter(|ok| !**ok).count())
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(violations.iter().sum::<usize>() as f64)
}

/// Relative error of the smallest-λ row of the ball(1) study, or infinity if
/// the error column fails to decrease strictly.
fn point_limit() -> Result<f64, impurity_casimir::Error> {
    let ball = BuiltinShapeF64::ball(1.0)?;
    let rows = convergence_study(
        point(1.0)?,
        2.0 * PI * PI,
        &ball,
        &[0.5, 0.1, 0.01, 0.001],
        &QuadratureConfigF64::default(),
    )?;
    if !errors_strictly_decreasing(&rows) || rows.iter().any(|r| !r.density.converged) {
        return Ok(f64::INFINITY);
    }
    Ok(rows.last().map_or(f64::INFINITY, |r| r.relative_error()))
}
