//! Fourier profiles `ĝ` of extended impurities.
//!
//! A shape supplies `ĝ` on the real axis and, separately, on the imaginary
//! axis. The library never continues `ĝ` analytically on its own; each shape
//! provides its own closed form for `ĝ(is)` together with the exponential
//! growth rate `a` in `|ĝ(is)| ≤ C·e^{a·s}`. For the extended density the
//! condition `λ·a < |x|` is this crate's sufficient condition for the radial
//! integral to converge.

use std::fmt;
use std::sync::Arc;

use crate::error::{ensure_positive, Error, Result};
use crate::Real;

/// Fourier profile of an extended impurity, normalized so that `ĝ(0) = 1`.
pub trait ShapeFunction<T: Real>: Send + Sync {
    fn label(&self) -> String;

    /// `ĝ(k)` for real `k`.
    fn ghat_real(&self, k: T) -> T;

    /// `ĝ(is)` for real `s ≥ 0`.
    fn ghat_imag(&self, s: T) -> Result<T>;

    /// Smallest `a` with `|ĝ(is)| ≤ C·e^{a·s}`; `+∞` for super-exponential growth.
    fn growth_bound(&self) -> T;

    /// `ĝ(is)·e^{-a·s}`, bounded for large `s`. Shapes whose `ĝ(is)` overflows
    /// should override this with an overflow-free form.
    fn ghat_imag_scaled(&self, s: T) -> Result<T> {
        let a = self.growth_bound();
        if !a.is_finite() {
            return Err(Error::ImaginaryAxisUnsupported { shape: self.label() });
        }
        Ok(self.ghat_imag(s)? * (-a * s).exp())
    }
}

/// Parameters of the built-in profiles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ShapeKind<T> {
    /// `ĝ ≡ 1`: no λ-dependence at all.
    Trivial,
    /// Uniform ball of radius `a`: `ĝ(k) = 3(sin ka - ka·cos ka)/(ka)³`.
    Ball(T),
    /// Gaussian of width `w`: `ĝ(k) = e^{-k²w²/2}`. Real axis only.
    Gaussian(T),
}

/// A validated built-in shape.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BuiltinShape<T> {
    kind: ShapeKind<T>,
}

/// Validates the parameter of `kind` and returns the shape.
pub fn builtin_shape<T: Real>(kind: ShapeKind<T>) -> Result<BuiltinShape<T>> {
    match kind {
        ShapeKind::Trivial => {}
        ShapeKind::Ball(a) => ensure_positive("ball radius", a)?,
        ShapeKind::Gaussian(w) => ensure_positive("gaussian width", w)?,
    }
    Ok(BuiltinShape { kind })
}

impl<T: Real> BuiltinShape<T> {
    pub fn trivial() -> Self {
        Self {
            kind: ShapeKind::Trivial,
        }
    }

    pub fn ball(radius: T) -> Result<Self> {
        builtin_shape(ShapeKind::Ball(radius))
    }

    pub fn gaussian(width: T) -> Result<Self> {
        builtin_shape(ShapeKind::Gaussian(width))
    }

    pub fn kind(&self) -> ShapeKind<T> {
        self.kind
    }
}

// Below this argument the ball profile is summed from its power series; the
// closed forms lose about ε/x² to cancellation.
const BALL_SERIES_CUTOFF: f64 = 1.0;

/// `Σ_{k≥1} 6k·(σx²)^{k-1}/(2k+1)!` with `σ = ±1`.
fn ball_series<T: Real>(x: T, sign: T) -> T {
    let x2 = sign * x * x;
    let mut term = T::one();
    let mut sum = T::one();
    for k in 2..40 {
        let kf = T::from_usize_lossy(k);
        // term_k / term_{k-1} = σx²·k / ((k-1)(2k)(2k+1))
        term = term * x2 * kf / ((kf - T::one()) * T::lit(2.0) * kf * (T::lit(2.0) * kf + T::one()));
        sum = sum + term;
        if term.abs() <= T::epsilon() * sum.abs() {
            break;
        }
    }
    sum
}

/// `3(sin x - x cos x)/x³ = 1 - x²/10 + x⁴/280 - …`
fn ball_real<T: Real>(x: T) -> T {
    let x = x.abs();
    if x < T::lit(BALL_SERIES_CUTOFF) {
        ball_series(x, -T::one())
    } else {
        T::lit(3.0) * (x.sin() - x * x.cos()) / (x * x * x)
    }
}

/// `3(x cosh x - sinh x)/x³ = 1 + x²/10 + x⁴/280 + …`
fn ball_imag<T: Real>(x: T) -> T {
    if x < T::lit(BALL_SERIES_CUTOFF) {
        ball_series(x, T::one())
    } else {
        T::lit(3.0) * (x * x.cosh() - x.sinh()) / (x * x * x)
    }
}

/// `ball_imag(x)·e^{-x}` without forming `cosh x`.
fn ball_imag_scaled<T: Real>(x: T) -> T {
    if x < T::lit(BALL_SERIES_CUTOFF) {
        ball_imag(x) * (-x).exp()
    } else {
        let half = T::lit(0.5);
        let e = (-T::lit(2.0) * x).exp();
        T::lit(3.0) * (x * half * (T::one() + e) - half * (T::one() - e)) / (x * x * x)
    }
}

fn ensure_imag_arg<T: Real>(s: T) -> Result<()> {
    if s >= T::zero() && s.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            name: "s",
            value: s.as_f64(),
            requirement: "imaginary-axis argument must be finite and >= 0",
        })
    }
}

impl<T: Real> ShapeFunction<T> for BuiltinShape<T> {
    fn label(&self) -> String {
        match self.kind {
            ShapeKind::Trivial => "trivial".to_string(),
            ShapeKind::Ball(a) => format!("ball({a})"),
            ShapeKind::Gaussian(w) => format!("gaussian({w})"),
        }
    }

    fn ghat_real(&self, k: T) -> T {
        match self.kind {
            ShapeKind::Trivial => T::one(),
            ShapeKind::Ball(a) => ball_real(k * a),
            ShapeKind::Gaussian(w) => {
                let kw = k * w;
                (-kw * kw / T::lit(2.0)).exp()
            }
        }
    }

    fn ghat_imag(&self, s: T) -> Result<T> {
        ensure_imag_arg(s)?;
        match self.kind {
            ShapeKind::Trivial => Ok(T::one()),
            ShapeKind::Ball(a) => {
                let v = ball_imag(s * a);
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(Error::Domain {
                        name: "s",
                        value: s.as_f64(),
                        requirement: "ball profile overflows on the imaginary axis here; use the scaled form",
                    })
                }
            }
            ShapeKind::Gaussian(_) => Err(Error::ImaginaryAxisUnsupported { shape: self.label() }),
        }
    }

    fn growth_bound(&self) -> T {
        match self.kind {
            ShapeKind::Trivial => T::zero(),
            ShapeKind::Ball(a) => a,
            ShapeKind::Gaussian(_) => T::infinity(),
        }
    }

    fn ghat_imag_scaled(&self, s: T) -> Result<T> {
        ensure_imag_arg(s)?;
        match self.kind {
            ShapeKind::Trivial => Ok(T::one()),
            ShapeKind::Ball(a) => Ok(ball_imag_scaled(s * a)),
            ShapeKind::Gaussian(_) => Err(Error::ImaginaryAxisUnsupported { shape: self.label() }),
        }
    }
}

type ScalarFn<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

/// A user-supplied shape given as two closures and a growth bound.
#[derive(Clone)]
pub struct FnShape<T> {
    label: String,
    ghat_real: ScalarFn<T>,
    ghat_imag: ScalarFn<T>,
    growth_bound: T,
}

impl<T: Real> FnShape<T> {
    /// Checks the normalization `ĝ(0) = 1` on both axes (to `1e3·ε`).
    pub fn new(
        label: impl Into<String>,
        ghat_real: impl Fn(T) -> T + Send + Sync + 'static,
        ghat_imag: impl Fn(T) -> T + Send + Sync + 'static,
        growth_bound: T,
    ) -> Result<Self> {
        if !(growth_bound >= T::zero()) {
            return Err(Error::Domain {
                name: "growth_bound",
                value: growth_bound.as_f64(),
                requirement: "must be >= 0",
            });
        }
        let tol = T::lit(1e3) * T::epsilon();
        for (name, v) in [
            ("ghat_real(0)", ghat_real(T::zero())),
            ("ghat_imag(0)", ghat_imag(T::zero())),
        ] {
            if !((v - T::one()).abs() <= tol) {
                return Err(Error::Domain {
                    name,
                    value: v.as_f64(),
                    requirement: "shape must be normalized to 1 at the origin",
                });
            }
        }
        Ok(Self {
            label: label.into(),
            ghat_real: Arc::new(ghat_real),
            ghat_imag: Arc::new(ghat_imag),
            growth_bound,
        })
    }
}

impl<T> fmt::Debug for FnShape<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnShape")
            .field("label", &self.label)
            .finish_non_exhaustive()
    }
}

impl<T: Real> ShapeFunction<T> for FnShape<T> {
    fn label(&self) -> String {
        self.label.clone()
    }

    fn ghat_real(&self, k: T) -> T {
        (self.ghat_real)(k)
    }

    fn ghat_imag(&self, s: T) -> Result<T> {
        ensure_imag_arg(s)?;
        let v = (self.ghat_imag)(s);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Domain {
                name: "s",
                value: s.as_f64(),
                requirement: "shape is not finite on the imaginary axis here",
            })
        }
    }

    fn growth_bound(&self) -> T {
        self.growth_bound
    }
}
