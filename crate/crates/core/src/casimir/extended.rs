//! Rescaled model with an extended impurity and its point-like limit `λ → 0⁺`.
//!
//! ```text
//! ℰ(x, λ) = (1/2π) ∫_0^∞ [H'_λ(r)² - r² H_λ(r)²] / t_λ(ir) dr
//! H_λ  =  √(π/2) ĝ(iλr) e^{-|x|r} / |x|
//! H'_λ = -√(π/2) ĝ(iλr) (1+|x|r) e^{-|x|r} / |x|²
//! t_λ(ir) = α + 2π ∫_ℝ r²/(r²+p²) ĝ(λp)² dp
//! ```
//!
//! The numerator collapses to `(π/2) ĝ(iλr)² (1+2|x|r) e^{-2|x|r} / |x|⁴`,
//! which is what the radial integrand evaluates (the literal difference of
//! squares cancels catastrophically for large `r`).

use std::cell::{Cell, RefCell};

use rayon::prelude::*;

use super::point::{energy_density_point_closed, RadialPoint};
use super::shape::ShapeFunction;
use crate::error::{ensure_nonnegative, ensure_positive, Error, Result};
use crate::quadrature::{
    integrate_real_line, integrate_semi_infinite, IntegrationResult, QuadratureConfig, TailCutStrategy,
};
use crate::Real;

/// `t_0(ir) = α + 2π²r`.
pub fn t_zero<T: Real>(r: T, alpha: T) -> Result<T> {
    ensure_nonnegative("r", r)?;
    ensure_nonnegative("alpha", alpha)?;
    Ok(alpha + T::lit(2.0) * T::PI() * T::PI() * r)
}

/// `t_λ(ir) = α + 2π ∫_ℝ r²/(r²+p²) ĝ(λp)² dp`.
///
/// Integrated in the variable `q = p/r`, i.e. `α + 2πr ∫_ℝ ĝ(λrq)²/(1+q²) dq`,
/// always with the algebraic map (the ball profile has an oscillating `p⁻⁴`
/// tail that double-exponential rules undersample). Only the tolerances and
/// refinement budget of `config` are used.
pub fn t_lambda<T, S>(
    r: T,
    alpha: T,
    shape: &S,
    lambda: T,
    config: &QuadratureConfig<T>,
) -> Result<IntegrationResult<T>>
where
    T: Real,
    S: ShapeFunction<T> + ?Sized,
{
    ensure_positive("r", r)?;
    ensure_nonnegative("alpha", alpha)?;
    ensure_nonnegative("lambda", lambda)?;
    let scale = T::lit(2.0) * T::PI() * r;
    let lr = lambda * r;
    let inner = config
        .with_strategy(TailCutStrategy::AlgebraicSubstitution)
        .for_prefactor(scale);
    let integral = integrate_real_line(
        |q: T| {
            let g = shape.ghat_real(lr * q);
            g * g / (T::one() + q * q)
        },
        &inner,
    )?;
    Ok(integral.scaled(scale).offset(alpha))
}

fn imag_factor<T, S>(r: T, x: RadialPoint<T>, shape: &S, lambda: T) -> Result<T>
where
    T: Real,
    S: ShapeFunction<T> + ?Sized,
{
    ensure_positive("r", r)?;
    ensure_nonnegative("lambda", lambda)?;
    let d = x.radius();
    let a = shape.growth_bound();
    // ĝ(iλr)·e^{-|x|r}, grouped so that neither factor overflows when λa < |x|
    let v = if a.is_finite() {
        shape.ghat_imag_scaled(lambda * r)? * ((lambda * a - d) * r).exp()
    } else {
        shape.ghat_imag(lambda * r)? * (-d * r).exp()
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Domain {
            name: "lambda*r",
            value: (lambda * r).as_f64(),
            requirement: "imaginary-axis factor overflows; need lambda * growth_bound < |x|",
        })
    }
}

/// `H_λ(r, |x|) = √(π/2) ĝ(iλr) e^{-|x|r} / |x|`.
pub fn h_lambda<T, S>(r: T, x: RadialPoint<T>, shape: &S, lambda: T) -> Result<T>
where
    T: Real,
    S: ShapeFunction<T> + ?Sized,
{
    let sqrt_half_pi = T::FRAC_PI_2().sqrt();
    Ok(sqrt_half_pi * imag_factor(r, x, shape, lambda)? / x.radius())
}

/// `H'_λ(r, |x|) = -√(π/2) ĝ(iλr) (1+|x|r) e^{-|x|r} / |x|²`, the derivative in `|x|`.
pub fn h_prime_lambda<T, S>(r: T, x: RadialPoint<T>, shape: &S, lambda: T) -> Result<T>
where
    T: Real,
    S: ShapeFunction<T> + ?Sized,
{
    let d = x.radius();
    let sqrt_half_pi = T::FRAC_PI_2().sqrt();
    Ok(-sqrt_half_pi * imag_factor(r, x, shape, lambda)? * (T::one() + d * r) / (d * d))
}

/// Checks `λ·a < |x|`, the condition under which the radial integral converges.
pub fn check_growth_bound<T, S>(x: RadialPoint<T>, shape: &S, lambda: T) -> Result<()>
where
    T: Real,
    S: ShapeFunction<T> + ?Sized,
{
    ensure_nonnegative("lambda", lambda)?;
    let a = shape.growth_bound();
    if !a.is_finite() {
        return Err(Error::ImaginaryAxisUnsupported { shape: shape.label() });
    }
    if lambda * a < x.radius() {
        Ok(())
    } else {
        Err(Error::GrowthBound {
            lambda: lambda.as_f64(),
            growth_bound: a.as_f64(),
            radius: x.radius().as_f64(),
        })
    }
}

/// Energy density `ℰ(x, λ)` of the extended impurity.
///
/// Each radial sample evaluates `t_λ(ir)` by a nested quadrature at a tenth of
/// the outer relative tolerance; the worst relative inner error is folded into
/// the returned error estimate. `λ = 0` is accepted and gives the point-like
/// density in integral form.
pub fn energy_density_extended<T, S>(
    x: RadialPoint<T>,
    alpha: T,
    shape: &S,
    lambda: T,
    config: &QuadratureConfig<T>,
) -> Result<IntegrationResult<T>>
where
    T: Real,
    S: ShapeFunction<T> + ?Sized,
{
    ensure_positive("alpha", alpha)?;
    check_growth_bound(x, shape, lambda)?;
    config.validate()?;

    let d = x.radius();
    let two = T::lit(2.0);
    let decay = two * (d - lambda * shape.growth_bound());
    let prefactor = T::one() / (T::lit(4.0) * d.powi(4));
    let mut inner = *config;
    inner.rel_tol = config.rel_tol / T::lit(10.0);

    let inner_converged = Cell::new(true);
    let inner_rel_err = Cell::new(T::zero());
    let inner_evals = Cell::new(0usize);
    let failure: RefCell<Option<Error>> = RefCell::new(None);

    let integrand = |r: T| -> T {
        let numerator = shape
            .ghat_imag_scaled(lambda * r)
            .map(|g| g * g * (-decay * r).exp() * (T::one() + two * d * r));
        let numerator = match numerator {
            Ok(n) => n,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                return T::nan();
            }
        };
        if numerator == T::zero() {
            return T::zero();
        }
        match t_lambda(r, alpha, shape, lambda, &inner) {
            Ok(t) => {
                inner_evals.set(inner_evals.get() + t.evaluations);
                if !t.converged {
                    inner_converged.set(false);
                }
                inner_rel_err.set(inner_rel_err.get().max(t.error_estimate / t.value.abs()));
                numerator / t.value
            }
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                T::nan()
            }
        }
    };

    let outer = integrate_semi_infinite(integrand, &config.for_prefactor(prefactor));
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let outer = outer?.scaled(prefactor);
    let error_estimate = outer.error_estimate + inner_rel_err.get() * outer.value.abs();
    Ok(IntegrationResult {
        value: outer.value,
        error_estimate,
        evaluations: outer.evaluations + inner_evals.get(),
        converged: outer.converged && inner_converged.get() && error_estimate <= config.tolerance_for(outer.value),
    })
}

/// One row of a `λ → 0⁺` study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow<T> {
    pub lambda: T,
    pub density: IntegrationResult<T>,
    pub point_limit: T,
    pub abs_error: T,
}

impl<T: Real> ConvergenceRow<T> {
    pub fn relative_error(&self) -> T {
        self.abs_error / self.point_limit.abs()
    }
}

/// Extended densities for a strictly decreasing list of `λ`, each compared
/// with the closed-form point density at `γ = 2π²/α`. Rows are computed in
/// parallel and returned in input order.
pub fn convergence_study<T, S>(
    x: RadialPoint<T>,
    alpha: T,
    shape: &S,
    lambdas: &[T],
    config: &QuadratureConfig<T>,
) -> Result<Vec<ConvergenceRow<T>>>
where
    T: Real,
    S: ShapeFunction<T> + ?Sized,
{
    ensure_positive("alpha", alpha)?;
    for (i, &lambda) in lambdas.iter().enumerate() {
        ensure_positive("lambda", lambda)?;
        if i > 0 && !(lambda < lambdas[i - 1]) {
            return Err(Error::Domain {
                name: "lambda",
                value: lambda.as_f64(),
                requirement: "lambda list must be strictly decreasing",
            });
        }
        check_growth_bound(x, shape, lambda)?;
    }
    let gamma = T::lit(2.0) * T::PI() * T::PI() / alpha;
    let point_limit = energy_density_point_closed(x, gamma)?;
    lambdas
        .par_iter()
        .map(|&lambda| {
            let density = energy_density_extended(x, alpha, shape, lambda, config)?;
            Ok(ConvergenceRow {
                lambda,
                density,
                point_limit,
                abs_error: (density.value - point_limit).abs(),
            })
        })
        .collect()
}

/// `true` when the error column strictly decreases down the rows.
pub fn errors_strictly_decreasing<T: Real>(rows: &[ConvergenceRow<T>]) -> bool {
    rows.windows(2).all(|w| w[1].abs_error < w[0].abs_error)
}
