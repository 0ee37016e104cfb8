//! Adaptive quadrature over `[0, ∞)` and `(-∞, ∞)`.
//!
//! Three strategies are available for the unbounded range, selected through
//! [`TailCutStrategy`]:
//!
//! * [`TailCutStrategy::ExponentialSubstitution`]: double-exponential rules
//!   (exp-sinh on the half line, sinh-sinh on the whole line), refined by
//!   halving the step. Best for the exponentially decaying integrands that
//!   make up most of the energy-density work.
//! * [`TailCutStrategy::AlgebraicSubstitution`]: `r = u/(1-u)` on the half line
//!   and `p = u/(1-u²)` on the whole line, followed by globally adaptive
//!   Gauss–Kronrod (10/21) bisection. Nodes never touch `u = ±1`, so integrands
//!   that lose precision far out (`r²/(r²+k²) - 1`) are never sampled there.
//! * [`TailCutStrategy::ExplicitAnalyticTail`]: Gauss–Kronrod on geometrically
//!   growing panels `[0, R]`, plus a power-law tail `∫_R^∞ c r^{-p} dr` fitted
//!   from samples at `R`, `2R`, `4R`.
//!
//! Every routine returns an [`IntegrationResult`] carrying an error estimate;
//! failing to meet the tolerance is reported through `converged = false`, never
//! through a silently wrong value. A non-finite integrand sample is a hard error.

mod double_exponential;
mod kronrod;
mod tail;

use std::cell::Cell;

use crate::error::{Error, Result};
use crate::Real;

pub use kronrod::integrate_interval;

/// How an unbounded range is brought onto something finite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum TailCutStrategy {
    #[default]
    ExponentialSubstitution,
    AlgebraicSubstitution,
    ExplicitAnalyticTail,
}

/// Tolerances and refinement budget.
///
/// `max_refinement` is a level count. Double-exponential rules halve their step
/// at most that many times (roughly `18·2^L` samples); Gauss–Kronrod bisection
/// keeps at most `2^L` subintervals; the explicit tail strategy grows the cutoff
/// at most `L` times.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig<T> {
    pub abs_tol: T,
    pub rel_tol: T,
    pub max_refinement: usize,
    pub tail_cut_strategy: TailCutStrategy,
}

impl<T: Real> Default for QuadratureConfig<T> {
    fn default() -> Self {
        Self {
            abs_tol: T::lit(1e-12),
            rel_tol: T::lit(1e-10),
            max_refinement: 12,
            tail_cut_strategy: TailCutStrategy::ExponentialSubstitution,
        }
    }
}

impl<T: Real> QuadratureConfig<T> {
    pub fn new(abs_tol: T, rel_tol: T) -> Result<Self> {
        let config = Self {
            abs_tol,
            rel_tol,
            ..Self::default()
        };
        config.validate()?;
        Ok(config)
    }

    pub fn with_strategy(mut self, strategy: TailCutStrategy) -> Self {
        self.tail_cut_strategy = strategy;
        self
    }

    pub fn with_max_refinement(mut self, levels: usize) -> Self {
        self.max_refinement = levels;
        self
    }

    /// Config for an integral whose value will be multiplied by `factor`
    /// afterwards: the absolute tolerance is divided accordingly so the scaled
    /// result still honors `abs_tol`.
    pub fn for_prefactor(mut self, factor: T) -> Self {
        let factor = factor.abs();
        if factor > T::zero() && factor.is_finite() {
            self.abs_tol = self.abs_tol / factor;
        }
        self
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |t: T| t >= T::zero() && t.is_finite();
        if !ok(self.abs_tol) || !ok(self.rel_tol) {
            return Err(Error::InvalidConfig("tolerances must be finite and >= 0"));
        }
        if self.abs_tol == T::zero() && self.rel_tol == T::zero() {
            return Err(Error::InvalidConfig("at least one of abs_tol, rel_tol must be > 0"));
        }
        if self.max_refinement == 0 {
            return Err(Error::InvalidConfig("max_refinement must be >= 1"));
        }
        Ok(())
    }

    /// `max(abs_tol, rel_tol·|value|)`.
    pub fn tolerance_for(&self, value: T) -> T {
        self.abs_tol.max(self.rel_tol * value.abs())
    }

    pub(crate) fn max_segments(&self) -> usize {
        1usize << self.max_refinement.min(24)
    }
}

/// Outcome of a quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationResult<T> {
    pub value: T,
    pub error_estimate: T,
    pub evaluations: usize,
    pub converged: bool,
}

impl<T: Real> IntegrationResult<T> {
    /// Multiplies value and error estimate by `factor`.
    pub fn scaled(self, factor: T) -> Self {
        Self {
            value: self.value * factor,
            error_estimate: self.error_estimate * factor.abs(),
            ..self
        }
    }

    /// Adds a constant known exactly.
    pub fn offset(self, shift: T) -> Self {
        Self {
            value: self.value + shift,
            ..self
        }
    }

    /// Sum of two independent results; errors add.
    pub fn combine(self, other: Self) -> Self {
        Self {
            value: self.value + other.value,
            error_estimate: self.error_estimate + other.error_estimate,
            evaluations: self.evaluations + other.evaluations,
            converged: self.converged && other.converged,
        }
    }
}

/// Wraps a user integrand: counts evaluations and rejects non-finite samples.
pub(crate) struct Sampler<'f, T, F> {
    f: &'f F,
    count: Cell<usize>,
    _marker: std::marker::PhantomData<T>,
}

impl<'f, T: Real, F: Fn(T) -> T> Sampler<'f, T, F> {
    pub(crate) fn new(f: &'f F) -> Self {
        Self {
            f,
            count: Cell::new(0),
            _marker: std::marker::PhantomData,
        }
    }

    pub(crate) fn eval(&self, x: T) -> Result<T> {
        self.count.set(self.count.get() + 1);
        let v = (self.f)(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFiniteSample {
                point: x.as_f64(),
                value: v.as_f64(),
            })
        }
    }

    pub(crate) fn evaluations(&self) -> usize {
        self.count.get()
    }
}

/// Integrates `f` over `(0, ∞)`.
pub fn integrate_semi_infinite<T, F>(f: F, config: &QuadratureConfig<T>) -> Result<IntegrationResult<T>>
where
    T: Real,
    F: Fn(T) -> T,
{
    config.validate()?;
    let sampler = Sampler::new(&f);
    let (value, error) = match config.tail_cut_strategy {
        TailCutStrategy::ExponentialSubstitution => double_exponential::exp_sinh(|r| sampler.eval(r), config)?,
        TailCutStrategy::AlgebraicSubstitution => {
            let g = |u: T| {
                let one_minus = T::one() - u;
                let r = u / one_minus;
                Ok(sampler.eval(r)? / (one_minus * one_minus))
            };
            let (v, e, _) = kronrod::adaptive(g, T::zero(), T::one(), config)?;
            (v, e)
        }
        TailCutStrategy::ExplicitAnalyticTail => tail::half_line(&|r| sampler.eval(r), config)?,
    };
    Ok(finish(value, error, sampler.evaluations(), config))
}

/// Integrates `f` over `(-∞, ∞)`.
pub fn integrate_real_line<T, F>(f: F, config: &QuadratureConfig<T>) -> Result<IntegrationResult<T>>
where
    T: Real,
    F: Fn(T) -> T,
{
    config.validate()?;
    let sampler = Sampler::new(&f);
    let (value, error) = match config.tail_cut_strategy {
        TailCutStrategy::ExponentialSubstitution => double_exponential::sinh_sinh(|p| sampler.eval(p), config)?,
        TailCutStrategy::AlgebraicSubstitution => {
            let g = |u: T| {
                let d = (T::one() - u) * (T::one() + u);
                let p = u / d;
                Ok(sampler.eval(p)? * (T::one() + u * u) / (d * d))
            };
            let (v, e, _) = kronrod::adaptive(g, -T::one(), T::one(), config)?;
            (v, e)
        }
        TailCutStrategy::ExplicitAnalyticTail => {
            let half = config.for_prefactor(T::lit(2.0));
            let (vp, ep) = tail::half_line(&|p| sampler.eval(p), &half)?;
            let (vm, em) = tail::half_line(&|p: T| sampler.eval(-p), &half)?;
            (vp + vm, ep + em)
        }
    };
    Ok(finish(value, error, sampler.evaluations(), config))
}

fn finish<T: Real>(value: T, error: T, evaluations: usize, config: &QuadratureConfig<T>) -> IntegrationResult<T> {
    IntegrationResult {
        value,
        error_estimate: error,
        evaluations,
        converged: error.is_finite() && error <= config.tolerance_for(value),
    }
}
