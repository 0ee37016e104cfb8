//! Double-exponential (exp-sinh / sinh-sinh) trapezoidal rules with step halving.

use std::cell::Cell;

use super::QuadratureConfig;
use crate::error::Result;
use crate::Real;

const INITIAL_STEP: f64 = 0.5;
const MIN_LEVEL: usize = 3;

/// Largest `|ln x|` the rules sample. Capped so that `x⁴` stays finite in the
/// scalar type: user integrands routinely square their argument.
fn log_range<T: Real>() -> T {
    (T::max_value().ln() / T::lit(5.0)).min(T::lit(70.0))
}

fn t_max<T: Real>() -> T {
    (T::lit(2.0) * log_range::<T>() / T::PI()).asinh()
}

/// `∫_0^∞ g(r) dr` with `r = exp(π/2·sinh t)`.
pub(crate) fn exp_sinh<T, G>(g: G, config: &QuadratureConfig<T>) -> Result<(T, T)>
where
    T: Real,
    G: FnMut(T) -> Result<T>,
{
    let half_pi = T::FRAC_PI_2();
    trapezoid_levels(
        |t: T| {
            let x = (half_pi * t.sinh()).exp();
            (x, x * half_pi * t.cosh())
        },
        g,
        config,
    )
}

/// `∫_{-∞}^{∞} g(p) dp` with `p = sinh(π/2·sinh t)`.
pub(crate) fn sinh_sinh<T, G>(g: G, config: &QuadratureConfig<T>) -> Result<(T, T)>
where
    T: Real,
    G: FnMut(T) -> Result<T>,
{
    let half_pi = T::FRAC_PI_2();
    trapezoid_levels(
        |t: T| {
            let u = half_pi * t.sinh();
            (u.sinh(), u.cosh() * half_pi * t.cosh())
        },
        g,
        config,
    )
}

fn trapezoid_levels<T, M, G>(map: M, mut g: G, config: &QuadratureConfig<T>) -> Result<(T, T)>
where
    T: Real,
    M: Fn(T) -> (T, T),
    G: FnMut(T) -> Result<T>,
{
    let t_end = t_max::<T>();
    // the coarsest step, at most INITIAL_STEP, divides t_end exactly
    let half_count = (t_end / T::lit(INITIAL_STEP)).ceil().to_usize().unwrap_or(1).max(1);
    let h0 = t_end / T::from_usize_lossy(half_count);

    // Outermost nodes with a nonzero term. If the integrand drops to exactly
    // zero while the weighted term is still sizable (underflow, or an integrand
    // that loses all its digits to cancellation), the missing tail is bounded
    // by that last term.
    let left = Cell::new((T::infinity(), T::zero()));
    let right = Cell::new((T::neg_infinity(), T::zero()));
    let edges = || left.get().1 + right.get().1;
    let mut term = |t: T| -> Result<(T, T)> {
        let (x, w) = map(t);
        if w == T::zero() || !w.is_finite() {
            return Ok((T::zero(), T::zero()));
        }
        let v = w * g(x)?;
        if v != T::zero() {
            if t < left.get().0 {
                left.set((t, v.abs()));
            }
            if t > right.get().0 {
                right.set((t, v.abs()));
            }
        }
        Ok((v, v.abs()))
    };

    let mut sum = T::zero();
    let mut abs_sum = T::zero();
    for k in 0..=2 * half_count {
        let t = (T::from_usize_lossy(k) - T::from_usize_lossy(half_count)) * h0;
        let (v, a) = term(t)?;
        sum = sum + v;
        abs_sum = abs_sum + a;
    }

    let mut h = h0;
    let mut estimate = h * sum;
    let mut diff = T::infinity();
    let max_level = config.max_refinement.max(1);
    let floor = |h: T, abs_sum: T| T::lit(20.0) * T::epsilon() * h * abs_sum;

    for level in 1..=max_level {
        h = h / T::lit(2.0);
        let odd_count = (2 * half_count) << (level - 1);
        for j in 0..odd_count {
            // t = -t_grid + (2j+1)·h
            let t = -T::from_usize_lossy(half_count) * h0 + T::from_usize_lossy(2 * j + 1) * h;
            let (v, a) = term(t)?;
            sum = sum + v;
            abs_sum = abs_sum + a;
        }
        let next = h * sum;
        diff = (next - estimate).abs();
        estimate = next;
        let error = diff + edges() + floor(h, abs_sum);
        if level >= MIN_LEVEL.min(max_level) && error <= config.tolerance_for(estimate) {
            return Ok((estimate, error));
        }
    }
    Ok((estimate, diff + edges() + floor(h, abs_sum)))
}
