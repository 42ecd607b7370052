//! Globally adaptive 21-point Gauss–Kronrod quadrature (QUADPACK `qag` style).

use crate::{Error, Real, Result};

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

const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077208980202326,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];

// 10-point Gauss weights for the odd-indexed Kronrod abscissae
const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

/// Tolerances and budget for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GkOptions<T> {
    pub abs_tol: T,
    pub rel_tol: T,
    /// Maximum number of subintervals kept at once.
    pub max_intervals: usize,
}

impl<T: Real> GkOptions<T> {
    pub fn new(abs_tol: T, rel_tol: T) -> Self {
        Self {
            abs_tol,
            rel_tol,
            max_intervals: 2000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<T> {
    pub value: T,
    pub abs_err: T,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment<T> {
    a: T,
    b: T,
    value: T,
    err: T,
}

fn gk21<T, F>(f: &mut F, a: T, b: T) -> Result<Segment<T>>
where
    T: Real,
    F: FnMut(T) -> Result<T>,
{
    let half = T::lit(0.5);
    let center = half * (a + b);
    let half_len = half * (b - a);
    let f_center = f(center)?;

    let mut res_gauss = T::zero();
    let mut res_kronrod = f_center * T::lit(WGK[10]);
    let mut res_abs = res_kronrod.abs();
    let mut fv1 = [T::zero(); 10];
    let mut fv2 = [T::zero(); 10];

    for j in 0..10 {
        let x = half_len * T::lit(XGK[j]);
        let f1 = f(center - x)?;
        let f2 = f(center + x)?;
        fv1[j] = f1;
        fv2[j] = f2;
        let w = T::lit(WGK[j]);
        res_kronrod = res_kronrod + w * (f1 + f2);
        res_abs = res_abs + w * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_gauss = res_gauss + T::lit(WG[j / 2]) * (f1 + f2);
        }
    }

    let mean = res_kronrod * half;
    let mut res_asc = T::lit(WGK[10]) * (f_center - mean).abs();
    for j in 0..10 {
        res_asc = res_asc + T::lit(WGK[j]) * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let scale = half_len.abs();
    let value = res_kronrod * half_len;
    let res_abs = res_abs * scale;
    let res_asc = res_asc * scale;
    let mut err = ((res_kronrod - res_gauss) * half_len).abs();

    if res_asc != T::zero() && err != T::zero() {
        let r = (T::lit(200.0) * err / res_asc).powf(T::lit(1.5));
        err = if r < T::one() { res_asc * r } else { res_asc };
    }
    let eps50 = T::lit(50.0) * T::epsilon();
    if res_abs > T::min_positive_value() / eps50 {
        err = err.max(eps50 * res_abs);
    }
    Ok(Segment { a, b, value, err })
}

/// Integrate `f` over `[a, b]`.
pub fn integrate<T, F>(f: F, a: T, b: T, opts: GkOptions<T>) -> Result<QuadResult<T>>
where
    T: Real,
    F: FnMut(T) -> Result<T>,
{
    integrate_segments(f, &[a, b], opts)
}

/// Integrate `f` over `[breaks[0], breaks[last]]`, starting from the
/// subdivision given by `breaks` (strictly increasing).
pub fn integrate_segments<T, F>(mut f: F, breaks: &[T], opts: GkOptions<T>) -> Result<QuadResult<T>>
where
    T: Real,
    F: FnMut(T) -> Result<T>,
{
    if breaks.len() < 2 {
        return Err(Error::Argument(
            "quadrature needs at least two break points".into(),
        ));
    }
    if breaks.iter().any(|p| !p.is_finite()) || breaks.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Argument(
            "quadrature break points must be finite and increasing".into(),
        ));
    }

    let mut segments = Vec::with_capacity(breaks.len() - 1);
    for w in breaks.windows(2) {
        segments.push(gk21(&mut f, w[0], w[1])?);
    }
    let mut evaluations = 21 * segments.len();

    loop {
        let value = segments.iter().fold(T::zero(), |s, g| s + g.value);
        let abs_err = segments.iter().fold(T::zero(), |s, g| s + g.err);
        if abs_err <= opts.abs_tol.max(opts.rel_tol * value.abs()) {
            return Ok(QuadResult {
                value,
                abs_err,
                evaluations,
            });
        }
        let fail = |reason: &str| Error::Convergence {
            reason: reason.to_string(),
            best: value.to_f64_lossy(),
            abs_err: abs_err.to_f64_lossy(),
        };
        if segments.len() >= opts.max_intervals {
            return Err(fail("quadrature interval budget exhausted"));
        }
        let (worst, _) =
            segments
                .iter()
                .enumerate()
                .fold((0, T::neg_infinity()), |(bi, be), (i, g)| {
                    if g.err > be {
                        (i, g.err)
                    } else {
                        (bi, be)
                    }
                });
        let g = segments.swap_remove(worst);
        let mid = T::lit(0.5) * (g.a + g.b);
        if mid <= g.a || mid >= g.b {
            return Err(fail("quadrature interval collapsed to machine precision"));
        }
        segments.push(gk21(&mut f, g.a, mid)?);
        segments.push(gk21(&mut f, mid, g.b)?);
        evaluations += 42;
    }
}
