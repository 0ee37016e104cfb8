use super::{kronrod, QuadratureConfig};
use crate::error::Result;
use crate::Real;

const FIRST_CUTOFF: f64 = 1.0;
const CUTOFF_GROWTH: f64 = 4.0;

/// `∫_0^∞ g` as Gauss–Kronrod over panels `[0,1], [1,4], [4,16], …` plus a
/// power-law tail beyond the current cutoff. The cutoff grows until the tail
/// is resolved or the refinement budget runs out.
pub(crate) fn half_line<T, G>(g: &G, config: &QuadratureConfig<T>) -> Result<(T, T)>
where
    T: Real,
    G: Fn(T) -> Result<T>,
{
    let panels = T::from_usize_lossy(config.max_refinement + 1);
    let mut panel_config = *config;
    panel_config.abs_tol = config.abs_tol / (T::lit(2.0) * panels);

    let mut lo = T::zero();
    let mut hi = T::lit(FIRST_CUTOFF);
    let mut body = T::zero();
    let mut body_err = T::zero();
    let mut tail = (T::zero(), T::infinity());

    for _ in 0..=config.max_refinement {
        let (v, e, _) = kronrod::adaptive(g, lo, hi, &panel_config)?;
        body = body + v;
        body_err = body_err + e;
        tail = power_law_tail(g, hi)?;
        let half_tol = config.tolerance_for(body + tail.0) / T::lit(2.0);
        if tail.1 <= half_tol {
            break;
        }
        lo = hi;
        hi = hi * T::lit(CUTOFF_GROWTH);
    }
    Ok((body + tail.0, body_err + tail.1))
}

/// Fits `g(r) ≈ c·r^{-p}` beyond `cutoff` and integrates it analytically.
///
/// The exponent is estimated twice, from `(R, 2R)` and from `(2R, 4R)`; the
/// disagreement between the two tails is the error estimate.
fn power_law_tail<T, G>(g: &G, cutoff: T) -> Result<(T, T)>
where
    T: Real,
    G: Fn(T) -> Result<T>,
{
    let two = T::lit(2.0);
    let f1 = g(cutoff)?;
    let f2 = g(two * cutoff)?;
    let f3 = g(two * two * cutoff)?;
    let zero = T::zero();

    if f1 == zero && f2 == zero && f3 == zero {
        return Ok((zero, zero));
    }
    if f2 == zero && f3 == zero {
        return Ok((zero, f1.abs() * cutoff));
    }
    let same_sign = (f1 > zero && f2 > zero && f3 > zero) || (f1 < zero && f2 < zero && f3 < zero);
    if !same_sign || f2.abs() >= f1.abs() || f3.abs() >= f2.abs() {
        return Ok((zero, T::infinity()));
    }
    let p_near = (f1 / f2).log2();
    let p_far = (f2 / f3).log2();
    if p_near <= T::one() || p_far <= T::one() {
        return Ok((zero, T::infinity()));
    }
    let near = f1 * cutoff / (p_near - T::one());
    let far = f1 * cutoff / (p_far - T::one());
    Ok((far, (near - far).abs()))
}
