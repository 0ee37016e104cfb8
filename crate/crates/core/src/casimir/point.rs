//! Energy density of a single point-like impurity, in integral and closed form.

use crate::error::{ensure_positive, Result};
use crate::quadrature::{integrate_semi_infinite, IntegrationResult, QuadratureConfig, TailCutStrategy};
use crate::special::script_e;
use crate::Real;

/// Distance `|x| > 0` from the impurity. The density diverges at the impurity itself.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct RadialPoint<T>(T);

impl<T: Real> RadialPoint<T> {
    pub fn new(radius: T) -> Result<Self> {
        ensure_positive("radius", radius)?;
        Ok(Self(radius))
    }

    pub fn radius(self) -> T {
        self.0
    }
}

/// `ℰ(x) = 1/(4|x|⁴) ∫_0^∞ (1+2|x|r)/(α+2π²r)·e^{-2|x|r} dr`.
///
/// The quadrature runs with `abs_tol` rescaled by the prefactor, so the
/// returned error estimate refers to the density itself.
pub fn energy_density_point_integral<T: Real>(
    x: RadialPoint<T>,
    alpha: T,
    config: &QuadratureConfig<T>,
) -> Result<IntegrationResult<T>> {
    ensure_positive("alpha", alpha)?;
    let d = x.radius();
    let two = T::lit(2.0);
    let two_pi_sq = two * T::PI() * T::PI();
    let prefactor = T::one() / (T::lit(4.0) * d.powi(4));
    let integrand = |r: T| (T::one() + two * d * r) / (alpha + two_pi_sq * r) * (-two * d * r).exp();
    Ok(integrate_semi_infinite(integrand, &config.for_prefactor(prefactor))?.scaled(prefactor))
}

/// `⟨T₀₀⟩(x) = [1 + (1-ρ)𝔈(ρ)] / (8π²|x|⁴)` with `ρ = 2|x|/γ`.
///
/// For large `ρ` the bracket behaves like `2/ρ` and is formed by cancellation,
/// so its relative rounding error grows like `ε·ρ`.
pub fn energy_density_point_closed<T: Real>(x: RadialPoint<T>, gamma: T) -> Result<T> {
    ensure_positive("gamma", gamma)?;
    let d = x.radius();
    let rho = T::lit(2.0) * d / gamma;
    let bracket = T::one() + (T::one() - rho) * script_e(rho)?;
    Ok(bracket / (T::lit(8.0) * T::PI() * T::PI() * d.powi(4)))
}

/// Both sides of `∫_0^∞ (1+ρv)/(1+v)·e^{-ρv} dv = 1 + (1-ρ)𝔈(ρ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityCheck<T> {
    /// Quadrature of the left-hand side.
    pub lhs: IntegrationResult<T>,
    /// Closed form through [`script_e`].
    pub rhs: T,
}

impl<T: Real> IdentityCheck<T> {
    pub fn deviation(&self) -> T {
        (self.lhs.value - self.rhs).abs()
    }
}

pub fn exponential_identity_check<T: Real>(rho: T, config: &QuadratureConfig<T>) -> Result<IdentityCheck<T>> {
    ensure_positive("rho", rho)?;
    let lhs = integrate_semi_infinite(|v: T| (T::one() + rho * v) / (T::one() + v) * (-rho * v).exp(), config)?;
    let rhs = T::one() + (T::one() - rho) * script_e(rho)?;
    Ok(IdentityCheck { lhs, rhs })
}

/// Quadrature of `-(2/π) ∫_0^∞ [r²/(r²+k²) - 1] dr`, which equals `k`.
///
/// The bracket tends to zero only through cancellation of two O(1) terms, so
/// far-out samples carry no information. Use
/// [`TailCutStrategy::AlgebraicSubstitution`] (never samples the far tail) or
/// [`TailCutStrategy::ExplicitAnalyticTail`]; see [`resolvent_config`].
pub fn resolvent_identity_check<T: Real>(k: T, config: &QuadratureConfig<T>) -> Result<IntegrationResult<T>> {
    ensure_positive("k", k)?;
    let k2 = k * k;
    let factor = -T::lit(2.0) / T::PI();
    let integral = integrate_semi_infinite(
        |r: T| {
            let r2 = r * r;
            r2 / (r2 + k2) - T::one()
        },
        &config.for_prefactor(factor),
    )?;
    Ok(integral.scaled(factor))
}

/// Difference of the separate identities for `k` and `p`; equals `k - p`.
pub fn resolvent_difference_check<T: Real>(k: T, p: T, config: &QuadratureConfig<T>) -> Result<IntegrationResult<T>> {
    ensure_positive("k", k)?;
    ensure_positive("p", p)?;
    let (k2, p2) = (k * k, p * p);
    let factor = -T::lit(2.0) / T::PI();
    let integral = integrate_semi_infinite(
        |r: T| {
            let r2 = r * r;
            (r2 / (r2 + k2) - T::one()) - (r2 / (r2 + p2) - T::one())
        },
        &config.for_prefactor(factor),
    )?;
    Ok(integral.scaled(factor))
}

/// The default configuration switched to the algebraic map, as recommended for
/// [`resolvent_identity_check`].
pub fn resolvent_config<T: Real>() -> QuadratureConfig<T> {
    QuadratureConfig::default().with_strategy(TailCutStrategy::AlgebraicSubstitution)
}
