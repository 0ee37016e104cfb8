use thiserror::Error;

/// Errors raised by the quadrature engine and the physics operations.
///
/// Scalar payloads are stored as `f64` regardless of the scalar type used for
/// the computation, so the error type stays non-generic.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid quadrature configuration: {0}")]
    InvalidConfig(&'static str),

    #[error("integrand returned non-finite value {value} at sample point {point}")]
    NonFiniteSample { point: f64, value: f64 },

    #[error("{name} = {value} is out of domain: {requirement}")]
    Domain {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },

    #[error("extended density diverges: lambda * growth_bound = {lambda} * {growth_bound} must be < |x| = {radius}")]
    GrowthBound {
        lambda: f64,
        growth_bound: f64,
        radius: f64,
    },

    #[error("shape `{shape}` cannot be evaluated on the imaginary axis")]
    ImaginaryAxisUnsupported { shape: String },
}

pub type Result<V> = std::result::Result<V, Error>;

pub(crate) fn ensure_positive<T: crate::Real>(name: &'static str, value: T) -> Result<()> {
    if value > T::zero() && value.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value: value.as_f64(),
            requirement: "must be finite and > 0",
        })
    }
}

pub(crate) fn ensure_nonnegative<T: crate::Real>(name: &'static str, value: T) -> Result<()> {
    if value >= T::zero() && value.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value: value.as_f64(),
            requirement: "must be finite and >= 0",
        })
    }
}

pub(crate) fn ensure_finite_bounds<T: crate::Real>(a: T, b: T) -> Result<()> {
    for (name, v) in [("lower bound", a), ("upper bound", b)] {
        if !v.is_finite() {
            return Err(Error::Domain {
                name,
                value: v.as_f64(),
                requirement: "must be finite",
            });
        }
    }
    Ok(())
}
