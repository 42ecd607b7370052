//! Modified Bessel functions of imaginary order, `I_{±iν}(x)` and `K_{iν}(x)`, for real `ν` and `x > 0`.
//!
//! Two independent routes are available for `K_{iν}`:
//!
//! * **series combination**: `K_{iν} = (π/2i) (I_{−iν} − I_{iν}) / sinh πν` with both
//!   `I` summed from their power series. Both `I` grow like `eˣ` while `K` decays like
//!   `e⁻ˣ`, so the route loses about `2x − πν` nats to cancellation once `x` exceeds
//!   `πν/2`; it is used below [`series_switch`].
//! * **integral representation**: `K_{iν}(x) = ∫₀^∞ e^{−x cosh t} cos νt dt` by the
//!   trapezoidal rule, which converges geometrically in the step for this analytic,
//!   rapidly decaying integrand. Its cancellation grows like `e^{πν/2}` for `x < ν`,
//!   which is why it only takes over above the switch.
//!
//! Derivatives are always obtained by differentiating the active representation term
//! by term, never by differencing.

use num_complex::Complex;
use num_traits::Zero;

use crate::gamma::{log_gamma, reciprocal_gamma};
use crate::{Error, Real, Result};

const MAX_ORDER: f64 = 50.0;
/// Largest `x` accepted by the power series for `I_{±iν}`.
pub const SERIES_MAX_X: f64 = 30.0;
const SERIES_MIN_SWITCH: f64 = 2.0;
/// Below this `|ν|` the series combination is `0/0`-like and the integral is used.
const SERIES_MIN_ORDER: f64 = 0.01;
const SERIES_TAIL: f64 = 1e-18;
const SERIES_MAX_TERMS: usize = 500;
/// `-ln(1e-18)`: the integral is truncated once the scaled integrand is below `e^{-41.5}`.
const INTEGRAL_TAIL_NATS: f64 = 41.5;

/// Order `ν` of `K_{iν}`, with `|ν| ≤ 50`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Order<T>(T);

impl<T: Real> Order<T> {
    pub fn new(nu: T) -> Result<Self> {
        if !nu.is_finite() || nu.abs() > T::lit(MAX_ORDER) {
            return Err(Error::Domain(format!(
                "order must be finite with |nu| <= 50, got {nu}"
            )));
        }
        Ok(Self(nu))
    }

    #[inline]
    pub fn get(self) -> T {
        self.0
    }

    pub fn abs(self) -> Self {
        Self(self.0.abs())
    }

    /// Internal offsets such as `ν ± h` may step just past the public cap.
    pub(crate) fn new_unchecked(nu: T) -> Self {
        Self(nu)
    }
}

/// Strictly positive, finite argument `x`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Abscissa<T>(T);

impl<T: Real> Abscissa<T> {
    pub fn new(x: T) -> Result<Self> {
        if !x.is_finite() || x <= T::zero() {
            return Err(Error::Range(format!("x must be finite and > 0, got {x}")));
        }
        Ok(Self(x))
    }

    #[inline]
    pub fn get(self) -> T {
        self.0
    }
}

/// Selects `I_{+iν}` or `I_{−iν}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    SeriesCombination,
    IntegralRepresentation,
    LargeXAsymptotic,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::SeriesCombination => "series-combination",
            Method::IntegralRepresentation => "integral-representation",
            Method::LargeXAsymptotic => "large-x-asymptotic",
        }
    }
}

/// An evaluated function value with an absolute error estimate and the route used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FunctionValue<T, V = T> {
    pub value: V,
    pub abs_err: T,
    pub method: Method,
}

/// Residual of the modified Bessel equation, raw and normalised by the sum of
/// the magnitudes of its terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeResidual<T> {
    pub residual: T,
    pub normalized: T,
}

/// Largest `x` at which `K_{iν}` is still taken from the series combination:
/// `max(2, πν/2)`, capped at 30.
pub fn series_switch<T: Real>(nu: T) -> T {
    let s = (T::FRAC_PI_2() * nu.abs()).max(T::lit(SERIES_MIN_SWITCH));
    s.min(T::lit(SERIES_MAX_X))
}

fn auto_method<T: Real>(nu: T, x: T) -> Method {
    if nu.abs() >= T::lit(SERIES_MIN_ORDER) && x <= series_switch(nu) {
        Method::SeriesCombination
    } else {
        Method::IntegralRepresentation
    }
}

/// Power-series sums for `I_{iν}(x)` (`ν` signed) and its first two x-derivatives.
#[derive(Debug, Clone, Copy)]
struct SeriesSums<T> {
    value: Complex<T>,
    d1: Complex<T>,
    d2: Complex<T>,
    /// Σ|term|, the scale the rounding error is proportional to.
    magnitude: T,
    magnitude_d1: T,
    magnitude_d2: T,
    rel_err: T,
}

fn i_series<T: Real>(nu: T, x: T) -> SeriesSums<T> {
    let half_x = x * T::lit(0.5);
    let ln_h = half_x.ln();
    let order = Complex::new(T::zero(), nu);
    let one = T::one();

    // (x/2)^{iν} / Γ(1 + iν)
    let mut term = Complex::from_polar(one, nu * ln_h) * reciprocal_gamma(Complex::new(one, nu));
    let h2 = half_x * half_x;
    let inv_x = x.recip();

    let mut value = Complex::zero();
    let mut d1 = Complex::zero();
    let mut d2 = Complex::zero();
    let (mut magnitude, mut magnitude_d1, mut magnitude_d2) = (T::zero(), T::zero(), T::zero());
    let mut small_run = 0;

    for k in 0..SERIES_MAX_TERMS {
        if k > 0 {
            let kk = T::from_usize(k).unwrap();
            term = term * h2 / (Complex::new(kk, nu) * kk);
        }
        // d/dx (x/2)^{2k+iν} = (2k+iν)/x · (x/2)^{2k+iν}
        let p = order + T::from_usize(2 * k).unwrap();
        let t1 = term * p * inv_x;
        let t2 = t1 * (p - one) * inv_x;
        value = value + term;
        d1 = d1 + t1;
        d2 = d2 + t2;
        magnitude = magnitude + term.norm();
        magnitude_d1 = magnitude_d1 + t1.norm();
        magnitude_d2 = magnitude_d2 + t2.norm();

        if term.norm() < T::lit(SERIES_TAIL) * value.norm() {
            small_run += 1;
            if small_run == 3 {
                break;
            }
        } else {
            small_run = 0;
        }
    }

    // rounding in the terms, the phase ν ln(x/2) and ln Γ(1+iν) ≈ −πν/2
    let rel_err = T::epsilon() * (T::lit(16.0) + (nu * ln_h).abs() + T::PI() * nu.abs());
    SeriesSums {
        value,
        d1,
        d2,
        magnitude,
        magnitude_d1,
        magnitude_d2,
        rel_err,
    }
}

/// `K_{iν}`, `K'`, `K''` at one point, each with an error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct KTriple<T> {
    pub k: T,
    pub dk: T,
    pub d2k: T,
    pub err_k: T,
    pub err_dk: T,
    pub err_d2k: T,
    pub method: Method,
    /// |Im| of the series combination relative to its modulus (zero off the series path).
    pub imag_residue: T,
}

fn k_series<T: Real>(nu: T, x: T) -> Result<KTriple<T>> {
    if nu == T::zero() {
        return Err(Error::Domain(
            "series combination is 0/0 at nu = 0; use the integral representation".into(),
        ));
    }
    if x > T::lit(SERIES_MAX_X) {
        return Err(Error::Range(format!(
            "series combination needs x <= 30, got {x}"
        )));
    }
    let plus = i_series(nu, x);
    let minus = i_series(-nu, x);
    let sinh = (T::PI() * nu).sinh();
    // (π/2i)(I₋ − I₊)/sinh πν
    let factor = Complex::new(T::zero(), -T::FRAC_PI_2() / sinh);
    let combine = |m: Complex<T>, p: Complex<T>| factor * (m - p);
    let k = combine(minus.value, plus.value);
    let dk = combine(minus.d1, plus.d1);
    let d2k = combine(minus.d2, plus.d2);

    let scale = T::FRAC_PI_2() / sinh.abs();
    let rel = plus.rel_err.max(minus.rel_err);
    let sinh_err = T::lit(4.0) * T::epsilon();
    let imag_residue = if k.norm() > T::zero() {
        k.im.abs() / k.norm()
    } else {
        T::zero()
    };
    Ok(KTriple {
        k: k.re,
        dk: dk.re,
        d2k: d2k.re,
        err_k: scale * rel * (plus.magnitude + minus.magnitude) + sinh_err * k.re.abs(),
        err_dk: scale * rel * (plus.magnitude_d1 + minus.magnitude_d1) + sinh_err * dk.re.abs(),
        err_d2k: scale * rel * (plus.magnitude_d2 + minus.magnitude_d2) + sinh_err * d2k.re.abs(),
        method: Method::SeriesCombination,
        imag_residue,
    })
}

/// Truncation point `T` with `x (cosh T − 1) − 2T ≥ 41.5`.
fn integral_cutoff<T: Real>(x: T) -> T {
    let mut t = (T::one() + T::lit(INTEGRAL_TAIL_NATS) / x).acosh();
    for _ in 0..6 {
        t = (T::one() + (T::lit(INTEGRAL_TAIL_NATS) + T::lit(2.0) * t) / x).acosh();
    }
    t
}

fn integral_step<T: Real>(nu: T, x: T) -> T {
    let by_order = T::PI() * T::PI() / (T::lit(INTEGRAL_TAIL_NATS) + T::PI() * nu + x);
    let by_width = T::lit(0.6) / x.sqrt();
    T::lit(0.1).min(by_order).min(by_width)
}

fn k_integral<T: Real>(nu: T, x: T) -> KTriple<T> {
    let cutoff = integral_cutoff(x);
    let h = integral_step(nu, x);
    let n = (cutoff / h).ceil().to_usize().unwrap_or(1).max(1);
    let h = cutoff / T::from_usize(n).unwrap();
    let half_h = h * T::lit(0.5);

    // scaled integrands e^{−x(cosh t − 1)} coshᵐ t cos νt, m = 0, 1, 2
    let f = |t: T| {
        let ch = t.cosh();
        let base = (-x * (ch - T::one())).exp() * (nu * t).cos();
        [base, base * ch, base * ch * ch]
    };

    let mut coarse = [T::zero(); 3];
    let mut fine_extra = [T::zero(); 3];
    let mut abs_sum = [T::zero(); 3];
    let f0 = f(T::zero());
    for m in 0..3 {
        coarse[m] = f0[m] * T::lit(0.5);
        abs_sum[m] = f0[m].abs();
    }
    for j in 1..=n {
        let t = h * T::from_usize(j).unwrap();
        let v = f(t);
        let w = f(t - half_h);
        for m in 0..3 {
            coarse[m] = coarse[m] + v[m];
            fine_extra[m] = fine_extra[m] + w[m];
            abs_sum[m] = abs_sum[m] + v[m].abs() + w[m].abs();
        }
    }

    let scale = (-x).exp();
    let mut out = [T::zero(); 3];
    let mut err = [T::zero(); 3];
    for m in 0..3 {
        let c = coarse[m] * h;
        let fine = (coarse[m] + fine_extra[m]) * half_h;
        out[m] = fine * scale;
        let rounding = T::lit(8.0) * T::epsilon() * abs_sum[m] * half_h;
        err[m] = ((fine - c).abs() + rounding) * scale;
    }
    KTriple {
        k: out[0],
        dk: -out[1],
        d2k: out[2],
        err_k: err[0],
        err_dk: err[1],
        err_d2k: err[2],
        method: Method::IntegralRepresentation,
        imag_residue: T::zero(),
    }
}

fn k_largex<T: Real>(nu: T, x: T) -> Result<KTriple<T>> {
    let lead = largex_leading(x)?;
    // first neglected correction of the Hankel expansion, (1 + 4ν²)/(8x)
    let corr = (T::one() + T::lit(4.0) * nu * nu) / (T::lit(8.0) * x);
    let half_x = T::lit(0.5) / x;
    let dk = -lead * (T::one() + half_x);
    let d2k = lead * (T::one() + T::lit(2.0) * half_x);
    Ok(KTriple {
        k: lead,
        dk,
        d2k,
        err_k: lead * corr,
        err_dk: dk.abs() * corr,
        err_d2k: d2k.abs() * corr,
        method: Method::LargeXAsymptotic,
        imag_residue: T::zero(),
    })
}

fn largex_leading<T: Real>(x: T) -> Result<T> {
    if x < T::lit(5.0) {
        return Err(Error::Range(format!(
            "large-x form is only claimed for x >= 5, got {x}"
        )));
    }
    Ok((T::PI() / (T::lit(2.0) * x)).sqrt() * (-x).exp())
}

/// `K_{iν}`, `K'` and `K''` at `x` by the given route. `K` is even in `ν`, so
/// only `|ν|` enters.
pub(crate) fn k_triple<T: Real>(
    order: Order<T>,
    x: Abscissa<T>,
    method: Method,
) -> Result<KTriple<T>> {
    let nu = order.get().abs();
    let x = x.get();
    match method {
        Method::SeriesCombination => k_series(nu, x),
        Method::IntegralRepresentation => Ok(k_integral(nu, x)),
        Method::LargeXAsymptotic => k_largex(nu, x),
    }
}

pub(crate) fn k_triple_auto<T: Real>(order: Order<T>, x: Abscissa<T>) -> Result<KTriple<T>> {
    k_triple(order, x, auto_method(order.get().abs(), x.get()))
}

/// `I_{±iν}(x)` by its power series, for `x ≤ 30`.
pub fn besseli_imag<T: Real>(
    order: Order<T>,
    x: Abscissa<T>,
    sign: Sign,
) -> Result<FunctionValue<T, Complex<T>>> {
    if x.get() > T::lit(SERIES_MAX_X) {
        return Err(Error::Range(format!(
            "besseli_imag needs x <= 30, got {}",
            x.get()
        )));
    }
    let nu = match sign {
        Sign::Plus => order.get(),
        Sign::Minus => -order.get(),
    };
    let s = i_series(nu, x.get());
    Ok(FunctionValue {
        value: s.value,
        abs_err: s.rel_err * s.magnitude,
        method: Method::SeriesCombination,
    })
}

/// Residual of `x²F'' + xF' + (ν² − x²)F = 0` for `F = I_{±iν}`.
pub fn besseli_ode_residual<T: Real>(
    order: Order<T>,
    x: Abscissa<T>,
    sign: Sign,
) -> Result<OdeResidual<T>> {
    if x.get() > T::lit(SERIES_MAX_X) {
        return Err(Error::Range(format!(
            "besseli_imag needs x <= 30, got {}",
            x.get()
        )));
    }
    let nu = match sign {
        Sign::Plus => order.get(),
        Sign::Minus => -order.get(),
    };
    let xv = x.get();
    let s = i_series(nu, xv);
    let a = s.d2 * (xv * xv);
    let b = s.d1 * xv;
    let c = s.value * (nu * nu - xv * xv);
    let r = (a + b + c).norm();
    let denom = a.norm() + b.norm() + c.norm();
    Ok(OdeResidual {
        residual: r,
        normalized: if denom > T::zero() { r / denom } else { r },
    })
}

/// `K_{iν}(x)`, real, using the series combination for `x ≤ max(2, πν/2)` and the
/// integral representation beyond (and for `|ν| < 0.01`).
pub fn besselk_imag<T: Real>(order: Order<T>, x: Abscissa<T>) -> Result<FunctionValue<T>> {
    let t = k_triple_auto(order, x)?;
    Ok(FunctionValue {
        value: t.k,
        abs_err: t.err_k,
        method: t.method,
    })
}

/// `K_{iν}(x)` by a forced route. The series route rejects `ν = 0` and `x > 30`;
/// the asymptotic route rejects `x < 5`.
pub fn besselk_imag_with<T: Real>(
    order: Order<T>,
    x: Abscissa<T>,
    method: Method,
) -> Result<FunctionValue<T>> {
    let t = k_triple(order, x, method)?;
    Ok(FunctionValue {
        value: t.k,
        abs_err: t.err_k,
        method: t.method,
    })
}

/// `dK_{iν}/dx` by termwise differentiation of the route [`besselk_imag`] uses.
pub fn besselk_dx<T: Real>(order: Order<T>, x: Abscissa<T>) -> Result<FunctionValue<T>> {
    let t = k_triple_auto(order, x)?;
    Ok(FunctionValue {
        value: t.dk,
        abs_err: t.err_dk,
        method: t.method,
    })
}

/// Imaginary part left over by the series combination, relative to its modulus.
pub fn besselk_realness_residue<T: Real>(order: Order<T>, x: Abscissa<T>) -> Result<T> {
    Ok(k_series(order.get().abs(), x.get())?.imag_residue)
}

/// Leading small-x oscillation `√(π/(ν sinh πν)) cos(−ν ln(x/2) + arg Γ(iν))`, for `0 < x ≤ 2`.
pub fn besselk_smallx_approx<T: Real>(order: Order<T>, x: Abscissa<T>) -> Result<T> {
    let nu = order.get().abs();
    if nu == T::zero() {
        return Err(Error::Domain("small-x form degenerates at nu = 0".into()));
    }
    if x.get() > T::lit(2.0) {
        return Err(Error::Range(format!(
            "small-x form is only claimed for x <= 2, got {}",
            x.get()
        )));
    }
    let g = log_gamma(Complex::new(T::zero(), nu))?;
    let amp = (T::PI() / (nu * (T::PI() * nu).sinh())).sqrt();
    let ln_half = (x.get() * T::lit(0.5)).ln();
    Ok(amp * (-nu * ln_half + g.phase).cos())
}

/// Leading large-x decay `√(π/(2x)) e^{−x}`, independent of `ν`; for `x ≥ 5`.
pub fn besselk_largex_approx<T: Real>(_order: Order<T>, x: Abscissa<T>) -> Result<T> {
    largex_leading(x.get())
}

/// `d/dx(x K') + (ν²/x − x) K`, normalised by the sum of the magnitudes of its three terms.
pub fn ode_residual<T: Real>(order: Order<T>, x: Abscissa<T>) -> Result<OdeResidual<T>> {
    let t = k_triple_auto(order, x)?;
    let nu = order.get();
    let xv = x.get();
    // d/dx(x K') = x K'' + K'
    let a = xv * t.d2k;
    let b = t.dk;
    let c = (nu * nu / xv - xv) * t.k;
    let r = a + b + c;
    let denom = a.abs() + b.abs() + c.abs();
    Ok(OdeResidual {
        residual: r,
        normalized: if denom > T::zero() {
            r.abs() / denom
        } else {
            r.abs()
        },
    })
}
