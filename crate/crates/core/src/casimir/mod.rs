//! Vacuum energy density of a scalar field near a single delta-like impurity.
//!
//! All quantities are in natural units (ħ = c = 1) with dimensionless lengths.

mod coupling;
mod extended;
mod point;
mod profile;
mod shape;

pub use coupling::{Coupling, CouplingConvention};
pub use extended::{
    check_growth_bound, convergence_study, energy_density_extended, errors_strictly_decreasing, h_lambda,
    h_prime_lambda, t_lambda, t_zero, ConvergenceRow,
};
pub use point::{
    energy_density_point_closed, energy_density_point_integral, exponential_identity_check, resolvent_config,
    resolvent_difference_check, resolvent_identity_check, IdentityCheck, RadialPoint,
};
pub use profile::{radial_grid, EnergyDensityProfile, GridScale, ProfileSample};
pub use shape::{builtin_shape, BuiltinShape, FnShape, ShapeFunction, ShapeKind};
