use super::{IntegrationResult, QuadratureConfig, Sampler};
use crate::error::Result;
use crate::Real;

// Gauss–Kronrod 10/21 abscissae and weights. Odd indices of XGK are the
// 10-point Gauss nodes.
const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
];

const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077208980222700,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];

#[derive(Debug, Clone, Copy)]
struct Segment<T> {
    a: T,
    b: T,
    value: T,
    error: T,
    splittable: bool,
}

/// One application of the 21-point Kronrod rule with the QUADPACK error heuristic.
fn gk21<T, G>(g: &mut G, a: T, b: T) -> Result<(T, T)>
where
    T: Real,
    G: FnMut(T) -> Result<T>,
{
    let half = T::lit(0.5);
    let center = half * (a + b);
    let half_len = half * (b - a);
    let abs_half_len = half_len.abs();

    let mut fv1 = [T::zero(); 10];
    let mut fv2 = [T::zero(); 10];

    let f_center = g(center)?;
    let mut res_gauss = T::zero();
    let mut res_kronrod = f_center * T::lit(WGK[10]);
    let mut res_abs = res_kronrod.abs();

    for (j, &wg) in WG.iter().enumerate() {
        let jtw = 2 * j + 1;
        let dx = half_len * T::lit(XGK[jtw]);
        let f1 = g(center - dx)?;
        let f2 = g(center + dx)?;
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        res_gauss = res_gauss + T::lit(wg) * (f1 + f2);
        res_kronrod = res_kronrod + T::lit(WGK[jtw]) * (f1 + f2);
        res_abs = res_abs + T::lit(WGK[jtw]) * (f1.abs() + f2.abs());
    }
    for j in 0..5 {
        let jtwm1 = 2 * j;
        let dx = half_len * T::lit(XGK[jtwm1]);
        let f1 = g(center - dx)?;
        let f2 = g(center + dx)?;
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        res_kronrod = res_kronrod + T::lit(WGK[jtwm1]) * (f1 + f2);
        res_abs = res_abs + T::lit(WGK[jtwm1]) * (f1.abs() + f2.abs());
    }

    let mean = res_kronrod * half;
    let mut res_asc = T::lit(WGK[10]) * (f_center - mean).abs();
    for j in 0..10 {
        res_asc = res_asc + T::lit(WGK[j]) * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let err = ((res_kronrod - res_gauss) * half_len).abs();
    let value = res_kronrod * half_len;
    Ok((
        value,
        rescale_error(err, res_abs * abs_half_len, res_asc * abs_half_len),
    ))
}

fn rescale_error<T: Real>(err: T, res_abs: T, res_asc: T) -> T {
    let mut scaled = err;
    if res_asc != T::zero() && scaled != T::zero() {
        let scale = (T::lit(200.0) * scaled / res_asc).powf(T::lit(1.5));
        scaled = if scale < T::one() { res_asc * scale } else { res_asc };
    }
    let eps = T::epsilon();
    if res_abs > T::min_positive_value() / (T::lit(50.0) * eps) {
        scaled = scaled.max(T::lit(50.0) * eps * res_abs);
    }
    scaled
}

/// Globally adaptive bisection of `[a, b]`: always split the segment with the
/// largest error estimate until the total meets the tolerance or the segment
/// budget is spent. Returns `(value, error, segment_count)`.
pub(crate) fn adaptive<T, G>(mut g: G, a: T, b: T, config: &QuadratureConfig<T>) -> Result<(T, T, usize)>
where
    T: Real,
    G: FnMut(T) -> Result<T>,
{
    let (value, error) = gk21(&mut g, a, b)?;
    let mut segments = vec![Segment {
        a,
        b,
        value,
        error,
        splittable: true,
    }];
    let max_segments = config.max_segments().max(1);
    let min_width = T::lit(64.0) * T::epsilon();

    loop {
        let (total, total_err) = totals(&segments);
        if total_err <= config.tolerance_for(total) || segments.len() >= max_segments {
            return Ok((total, total_err, segments.len()));
        }
        let worst = segments
            .iter()
            .enumerate()
            .filter(|(_, s)| s.splittable)
            .max_by(|(_, x), (_, y)| x.error.partial_cmp(&y.error).unwrap_or(std::cmp::Ordering::Equal))
            .map(|(i, _)| i);
        let Some(i) = worst else {
            return Ok((total, total_err, segments.len()));
        };
        let seg = segments[i];
        let mid = T::lit(0.5) * (seg.a + seg.b);
        let scale = seg.a.abs().max(seg.b.abs()).max(T::min_positive_value());
        if (seg.b - seg.a).abs() <= min_width * scale || mid <= seg.a.min(seg.b) || mid >= seg.a.max(seg.b) {
            segments[i].splittable = false;
            continue;
        }
        let (v1, e1) = gk21(&mut g, seg.a, mid)?;
        let (v2, e2) = gk21(&mut g, mid, seg.b)?;
        segments[i] = Segment {
            a: seg.a,
            b: mid,
            value: v1,
            error: e1,
            splittable: true,
        };
        segments.insert(
            i + 1,
            Segment {
                a: mid,
                b: seg.b,
                value: v2,
                error: e2,
                splittable: true,
            },
        );
    }
}

fn totals<T: Real>(segments: &[Segment<T>]) -> (T, T) {
    segments
        .iter()
        .fold((T::zero(), T::zero()), |(v, e), s| (v + s.value, e + s.error))
}

/// Adaptive Gauss–Kronrod quadrature of `f` over the finite interval `[a, b]`.
pub fn integrate_interval<T, F>(f: F, a: T, b: T, config: &QuadratureConfig<T>) -> Result<IntegrationResult<T>>
where
    T: Real,
    F: Fn(T) -> T,
{
    config.validate()?;
    crate::error::ensure_finite_bounds(a, b)?;
    let sampler = Sampler::new(&f);
    let (value, error, _) = adaptive(|x| sampler.eval(x), a, b, config)?;
    Ok(IntegrationResult {
        value,
        error_estimate: error,
        evaluations: sampler.evaluations(),
        converged: error <= config.tolerance_for(value),
    })
}
