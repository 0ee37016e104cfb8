//! Sampled radial profiles of the energy density.

use std::io::{self, Write};

use rayon::prelude::*;

use super::coupling::Coupling;
use super::extended::energy_density_extended;
use super::point::{energy_density_point_integral, RadialPoint};
use super::shape::{BuiltinShape, ShapeFunction};
use crate::error::{ensure_positive, Error, Result};
use crate::quadrature::QuadratureConfig;
use crate::Real;

/// Spacing of a radial grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GridScale {
    Linear,
    #[default]
    Log,
}

/// `count` radii from `min` to `max` inclusive. A single-point grid is `[min]`.
pub fn radial_grid<T: Real>(min: T, max: T, count: usize, scale: GridScale) -> Result<Vec<T>> {
    ensure_positive("rmin", min)?;
    ensure_positive("rmax", max)?;
    if count == 0 {
        return Err(Error::Domain {
            name: "rcount",
            value: 0.0,
            requirement: "must be >= 1",
        });
    }
    if count == 1 {
        return Ok(vec![min]);
    }
    if !(max > min) {
        return Err(Error::Domain {
            name: "rmax",
            value: max.as_f64(),
            requirement: "must exceed rmin when rcount > 1",
        });
    }
    let last = T::from_usize_lossy(count - 1);
    let mut grid: Vec<T> = (0..count)
        .map(|i| {
            let f = T::from_usize_lossy(i) / last;
            match scale {
                GridScale::Linear => min + (max - min) * f,
                GridScale::Log => (min.ln() + (max.ln() - min.ln()) * f).exp(),
            }
        })
        .collect();
    // pin the endpoints exactly
    grid[0] = min;
    grid[count - 1] = max;
    Ok(grid)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileSample<T> {
    pub radius: T,
    pub density: T,
    pub error_estimate: T,
    pub converged: bool,
}

/// A radial profile for one coupling, point-like (`shape = None`, `λ = 0`) or
/// extended.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyDensityProfile<T> {
    pub coupling: Coupling<T>,
    pub shape: Option<BuiltinShape<T>>,
    pub lambda: T,
    pub samples: Vec<ProfileSample<T>>,
}

impl<T: Real> EnergyDensityProfile<T> {
    /// Integral-form point density at each radius. Radii must be strictly increasing.
    pub fn point(coupling: Coupling<T>, radii: &[T], config: &QuadratureConfig<T>) -> Result<Self> {
        check_radii(radii)?;
        let alpha = coupling.to_ziemian_alpha();
        let samples = radii
            .par_iter()
            .map(|&r| {
                let res = energy_density_point_integral(RadialPoint::new(r)?, alpha, config)?;
                Ok(ProfileSample {
                    radius: r,
                    density: res.value,
                    error_estimate: res.error_estimate,
                    converged: res.converged,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            coupling,
            shape: None,
            lambda: T::zero(),
            samples,
        })
    }

    /// Extended-impurity density at each radius; every radius must satisfy `λ·a < |x|`.
    pub fn extended(
        coupling: Coupling<T>,
        shape: BuiltinShape<T>,
        lambda: T,
        radii: &[T],
        config: &QuadratureConfig<T>,
    ) -> Result<Self> {
        check_radii(radii)?;
        let alpha = coupling.to_ziemian_alpha();
        let samples = radii
            .par_iter()
            .map(|&r| {
                let res = energy_density_extended(RadialPoint::new(r)?, alpha, &shape, lambda, config)?;
                Ok(ProfileSample {
                    radius: r,
                    density: res.value,
                    error_estimate: res.error_estimate,
                    converged: res.converged,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            coupling,
            shape: Some(shape),
            lambda,
            samples,
        })
    }

    pub fn all_converged(&self) -> bool {
        self.samples.iter().all(|s| s.converged)
    }

    /// Writes `radius,density,error_estimate` rows with 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "radius,density,error_estimate")?;
        for s in &self.samples {
            writeln!(out, "{:.16e},{:.16e},{:.16e}", s.radius, s.density, s.error_estimate)?;
        }
        Ok(())
    }

    pub fn shape_label(&self) -> Option<String> {
        self.shape.as_ref().map(ShapeFunction::label)
    }
}

fn check_radii<T: Real>(radii: &[T]) -> Result<()> {
    for (i, &r) in radii.iter().enumerate() {
        ensure_positive("radius", r)?;
        if i > 0 && !(r > radii[i - 1]) {
            return Err(Error::Domain {
                name: "radius",
                value: r.as_f64(),
                requirement: "radii must be strictly increasing",
            });
        }
    }
    Ok(())
}
