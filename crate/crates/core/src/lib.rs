//! Renormalized vacuum energy density of a massless scalar field near a single
//! delta-like impurity.
//!
//! * [`quadrature`]: adaptive integration over `[0, ∞)` and `(-∞, ∞)` with
//!   error estimates.
//! * [`special`]: `𝔈(ρ) = e^ρ·E₁(ρ)`.
//! * [`casimir`]: point-like density in integral and closed form, the extended
//!   (rescaled) impurity and its `λ → 0⁺` limit, coupling conventions.
//!
//! Everything is generic over the scalar type ([`Real`], implemented for `f32`
//! and `f64`). The `*F64` aliases below name the double-precision instances.
//!
//! ```
//! use impurity_casimir::{
//!     energy_density_point_closed, energy_density_point_integral, CouplingF64, QuadratureConfigF64, RadialPointF64,
//! };
//!
//! let coupling = CouplingF64::gamma(1.0)?;
//! let x = RadialPointF64::new(1.0)?;
//! let integral = energy_density_point_integral(x, coupling.to_ziemian_alpha(), &QuadratureConfigF64::default())?;
//! let closed = energy_density_point_closed(x, coupling.to_gamma())?;
//! assert!(integral.converged && (integral.value - closed).abs() < 1e-12 * closed);
//! # Ok::<(), impurity_casimir::Error>(())
//! ```

// `!(a < b)` is used on purpose throughout: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod casimir;
mod error;
pub mod quadrature;
mod scalar;
pub mod special;

pub use casimir::*;
pub use error::{Error, Result};
pub use quadrature::{
    integrate_interval, integrate_real_line, integrate_semi_infinite, IntegrationResult, QuadratureConfig,
    TailCutStrategy,
};
pub use scalar::{relative_difference, Real};
pub use special::script_e;

pub type QuadratureConfigF64 = QuadratureConfig<f64>;
pub type IntegrationResultF64 = IntegrationResult<f64>;
pub type CouplingF64 = Coupling<f64>;
pub type RadialPointF64 = RadialPoint<f64>;
pub type BuiltinShapeF64 = BuiltinShape<f64>;
pub type EnergyDensityProfileF64 = EnergyDensityProfile<f64>;
pub type ConvergenceRowF64 = ConvergenceRow<f64>;

pub type QuadratureConfigF32 = QuadratureConfig<f32>;
pub type IntegrationResultF32 = IntegrationResult<f32>;
pub type CouplingF32 = Coupling<f32>;
pub type RadialPointF32 = RadialPoint<f32>;
