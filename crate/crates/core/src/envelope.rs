//! Phase-averaged error envelopes for oscillatory residuals.
//!
//! Residuals such as `K − (small-x form)` behave like `x^p G(ln x)` with `G`
//! quasi-periodic, so single-point ratios are meaningless. The envelope at
//! `x₀` is the RMS of `|r(x)| (x₀/x)^q` over log-uniform samples spanning a
//! window centred on `x₀`. The detrending exponent `q` only equalises the
//! weights inside a window; the ratio of two envelopes one factor `ρ` apart is
//! still `ρ^p`, whatever `q` is.

use crate::{Error, Real, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeSpec<T> {
    /// Window width in decades, centred (in log) on the evaluation point.
    pub decades: T,
    pub samples: usize,
    pub detrend: T,
}

impl<T: Real> EnvelopeSpec<T> {
    pub fn new(decades: T, samples: usize, detrend: T) -> Self {
        Self {
            decades,
            samples,
            detrend,
        }
    }
}

/// Sample points of the window around `center`.
pub fn window<T: Real>(center: T, spec: &EnvelopeSpec<T>) -> Vec<T> {
    let ten = T::lit(10.0);
    let n = T::from_usize(spec.samples - 1).unwrap_or(T::one());
    (0..spec.samples)
        .map(|j| {
            let f = T::from_usize(j).unwrap() / n - T::lit(0.5);
            center * ten.powf(spec.decades * f)
        })
        .collect()
}

pub fn error_envelope<T, F>(mut residual: F, center: T, spec: &EnvelopeSpec<T>) -> Result<T>
where
    T: Real,
    F: FnMut(T) -> Result<T>,
{
    if spec.samples < 2 || !(spec.decades > T::zero()) {
        return Err(Error::Argument(
            "envelope needs >= 2 samples and a positive window".into(),
        ));
    }
    if !(center > T::zero()) {
        return Err(Error::Argument(format!(
            "envelope center must be > 0, got {center}"
        )));
    }
    let mut acc = T::zero();
    for x in window(center, spec) {
        let r = residual(x)?.abs() * (center / x).powf(spec.detrend);
        acc = acc + r * r;
    }
    Ok((acc / T::from_usize(spec.samples).unwrap()).sqrt())
}
