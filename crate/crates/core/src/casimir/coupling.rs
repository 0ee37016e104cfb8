use std::fmt;

use crate::error::{ensure_positive, Result};
use crate::Real;

/// The three parametrizations of the impurity strength.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CouplingConvention {
    /// `α`, units of 1/length; enters as `α + 2π²r`.
    ZiemianAlpha,
    /// `γ`, units of length; enters through `ρ = 2|x|/γ`.
    FermiPizzoccheroGamma,
    /// `α_A`, units of 1/length; the point-interaction parameter of Albeverio et al.
    AlbeverioAlphaA,
}

impl fmt::Display for CouplingConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::ZiemianAlpha => "alpha",
            Self::FermiPizzoccheroGamma => "gamma",
            Self::AlbeverioAlphaA => "alpha_a",
        })
    }
}

/// A positive impurity strength in one of the conventions.
///
/// The dictionary is `α = 2π²/γ = 8π³·α_A`, equivalently `α_A = 1/(4πγ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coupling<T> {
    convention: CouplingConvention,
    value: T,
}

fn two_pi_squared<T: Real>() -> T {
    T::lit(2.0) * T::PI() * T::PI()
}

fn eight_pi_cubed<T: Real>() -> T {
    T::lit(8.0) * T::PI() * T::PI() * T::PI()
}

fn four_pi<T: Real>() -> T {
    T::lit(4.0) * T::PI()
}

impl<T: Real> Coupling<T> {
    pub fn new(convention: CouplingConvention, value: T) -> Result<Self> {
        ensure_positive(
            match convention {
                CouplingConvention::ZiemianAlpha => "alpha",
                CouplingConvention::FermiPizzoccheroGamma => "gamma",
                CouplingConvention::AlbeverioAlphaA => "alpha_a",
            },
            value,
        )?;
        Ok(Self { convention, value })
    }

    pub fn alpha(value: T) -> Result<Self> {
        Self::new(CouplingConvention::ZiemianAlpha, value)
    }

    pub fn gamma(value: T) -> Result<Self> {
        Self::new(CouplingConvention::FermiPizzoccheroGamma, value)
    }

    pub fn alpha_a(value: T) -> Result<Self> {
        Self::new(CouplingConvention::AlbeverioAlphaA, value)
    }

    pub fn convention(&self) -> CouplingConvention {
        self.convention
    }

    pub fn value(&self) -> T {
        self.value
    }

    pub fn to_ziemian_alpha(&self) -> T {
        match self.convention {
            CouplingConvention::ZiemianAlpha => self.value,
            CouplingConvention::FermiPizzoccheroGamma => two_pi_squared::<T>() / self.value,
            CouplingConvention::AlbeverioAlphaA => eight_pi_cubed::<T>() * self.value,
        }
    }

    pub fn to_gamma(&self) -> T {
        match self.convention {
            CouplingConvention::ZiemianAlpha => two_pi_squared::<T>() / self.value,
            CouplingConvention::FermiPizzoccheroGamma => self.value,
            CouplingConvention::AlbeverioAlphaA => T::one() / (four_pi::<T>() * self.value),
        }
    }

    pub fn to_albeverio(&self) -> T {
        match self.convention {
            CouplingConvention::ZiemianAlpha => self.value / eight_pi_cubed::<T>(),
            CouplingConvention::FermiPizzoccheroGamma => T::one() / (four_pi::<T>() * self.value),
            CouplingConvention::AlbeverioAlphaA => self.value,
        }
    }

    /// Re-expresses the same coupling in another convention.
    pub fn convert(&self, to: CouplingConvention) -> Self {
        let value = match to {
            CouplingConvention::ZiemianAlpha => self.to_ziemian_alpha(),
            CouplingConvention::FermiPizzoccheroGamma => self.to_gamma(),
            CouplingConvention::AlbeverioAlphaA => self.to_albeverio(),
        };
        Self { convention: to, value }
    }
}

impl<T: Real> fmt::Display for Coupling<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}", self.convention, self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn gamma_one() {
        let c = Coupling::gamma(1.0).unwrap();
        assert!((c.to_ziemian_alpha() - 2.0 * PI * PI).abs() < 1e-14);
        assert!((c.to_ziemian_alpha() - 19.7392088).abs() < 1e-6);
        assert!((c.to_albeverio() - 1.0 / (4.0 * PI)).abs() < 1e-16);
        assert!((c.to_albeverio() - 0.0795775).abs() < 1e-7);
    }

    #[test]
    fn albeverio_one() {
        let c = Coupling::alpha_a(1.0).unwrap();
        assert!((c.to_ziemian_alpha() - 8.0 * PI.powi(3)).abs() < 1e-12);
        assert!((c.to_ziemian_alpha() - 248.050213).abs() < 1e-5);
    }

    #[test]
    fn nonpositive_rejected() {
        assert!(Coupling::gamma(0.0).is_err());
        assert!(Coupling::alpha(-1.0).is_err());
        assert!(Coupling::alpha_a(f64::NAN).is_err());
        assert!(Coupling::alpha(f64::INFINITY).is_err());
    }

    #[test]
    fn convert_is_identity_on_own_convention() {
        let c = Coupling::alpha(3.5).unwrap();
        assert_eq!(c.convert(CouplingConvention::ZiemianAlpha), c);
        assert_eq!(c.to_string(), "alpha=3.5");
    }
}
