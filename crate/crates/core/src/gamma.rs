//! Complex gamma function.
//!
//! `ln Γ` is evaluated by shifting the argument until `|w| ≥ 10` and summing
//! the Stirling series there; the left half-plane goes through the
//! reflection formula. Results are returned as a modulus/phase split so that
//! values far outside the binary64 range of `Γ` itself are still usable.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::real::wrap_phase;
use crate::{Error, Real, Result};

/// `ln |Γ(z)|` together with the principal `arg Γ(z) ∈ (−π, π]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaEval<T> {
    pub log_modulus: T,
    pub phase: T,
}

impl<T: Real> GammaEval<T> {
    pub fn modulus(&self) -> T {
        self.log_modulus.exp()
    }

    /// `Γ(z)` itself; overflows to infinity where `|Γ(z)|` does.
    pub fn value(&self) -> Complex<T> {
        Complex::from_polar(self.modulus(), self.phase)
    }
}

// B_{2k} / (2k (2k - 1)), k = 1..=10
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];

const STIRLING_MIN_MODULUS: f64 = 10.0;
const MAX_MODULUS: f64 = 1e4;

fn is_nonpositive_integer<T: Real>(z: Complex<T>) -> bool {
    z.im == T::zero() && z.re <= T::zero() && z.re == z.re.round()
}

/// `ln Γ(z)` for `Re z ≥ 1/2`. The imaginary part is the branch that is
/// continuous in `z` and vanishes on the positive real axis.
pub(crate) fn ln_gamma_right<T: Real>(z: Complex<T>) -> Complex<T> {
    let one = Complex::<T>::one();
    let mut w = z;
    let mut shift = Complex::<T>::zero();
    while w.norm() < T::lit(STIRLING_MIN_MODULUS) {
        shift = shift + w.ln();
        w = w + one;
    }
    let half = T::lit(0.5);
    let half_ln_two_pi = (T::TAU()).ln() * half;
    let mut s = (w - half) * w.ln() - w + half_ln_two_pi;
    let winv = w.inv();
    let winv2 = winv * winv;
    let mut pow = winv;
    for c in STIRLING {
        s = s + pow * T::lit(c);
        pow = pow * winv2;
    }
    s - shift
}

/// `ln sin(πz)` for `Im z ≥ 0`, any branch. Stable for large `Im z`.
fn ln_sin_pi_upper<T: Real>(z: Complex<T>) -> Complex<T> {
    let two = T::lit(2.0);
    let a = z.re - two * (z.re / two).round();
    let b = z.im;
    let zr = Complex::new(a, b);
    // sin(πz) = e^{-iπz} (e^{2iπz} - 1) / (2i)
    let ang = T::TAU() * a;
    let damp = (-T::TAU() * b).exp();
    let e_minus_one = Complex::new(damp * ang.cos() - T::one(), damp * ang.sin());
    let minus_i_pi_z = Complex::new(T::PI() * zr.im, -T::PI() * zr.re);
    let ln_two_i = Complex::new(two.ln(), T::FRAC_PI_2());
    minus_i_pi_z + e_minus_one.ln() - ln_two_i
}

/// `ln Γ(z)` on some branch (principal only up to multiples of 2πi), for
/// `Im z ≥ 0` away from the poles.
fn ln_gamma_upper<T: Real>(z: Complex<T>) -> Complex<T> {
    if z.re >= T::lit(0.5) {
        ln_gamma_right(z)
    } else {
        let one = Complex::<T>::one();
        Complex::from(T::PI().ln()) - ln_sin_pi_upper(z) - ln_gamma_right(one - z)
    }
}

/// Principal-branch log-gamma split into `ln |Γ(z)|` and `arg Γ(z)`.
///
/// Poles, non-finite input and `|z| > 10⁴` are domain errors. Large `|Γ|`
/// is not an error; only its logarithm is formed.
pub fn log_gamma<T: Real>(z: Complex<T>) -> Result<GammaEval<T>> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("log_gamma of non-finite {z:?}")));
    }
    if z.norm() > T::lit(MAX_MODULUS) {
        return Err(Error::Domain(format!(
            "log_gamma supports |z| <= 1e4, got {z:?}"
        )));
    }
    if is_nonpositive_integer(z) {
        return Err(Error::Domain(format!("log_gamma pole at {}", z.re)));
    }
    // Γ(conj z) = conj Γ(z); evaluate in the upper half-plane only.
    let lower = z.im < T::zero();
    let ln = ln_gamma_upper(if lower { z.conj() } else { z });
    let phase = if lower { -ln.im } else { ln.im };
    Ok(GammaEval {
        log_modulus: ln.re,
        phase: wrap_phase(phase),
    })
}

/// `1/Γ(z)`, an entire function: exactly zero at `0, −1, −2, ...`.
///
/// Non-finite input propagates as NaN.
pub fn reciprocal_gamma<T: Real>(z: Complex<T>) -> Complex<T> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Complex::new(T::nan(), T::nan());
    }
    if is_nonpositive_integer(z) {
        return Complex::zero();
    }
    let lower = z.im < T::zero();
    let w = if lower { z.conj() } else { z };
    let r = if w.re >= T::lit(0.5) {
        (-ln_gamma_right(w)).exp()
    } else {
        // 1/Γ(w) = sin(πw) Γ(1 − w) / π
        let one = Complex::<T>::one();
        (ln_sin_pi_upper(w) + ln_gamma_right(one - w) - T::PI().ln()).exp()
    };
    if lower {
        r.conj()
    } else {
        r
    }
}

fn check_imag_order<T: Real>(nu: T, what: &str) -> Result<()> {
    if !nu.is_finite() || nu == T::zero() {
        return Err(Error::Domain(format!(
            "{what}: nu must be finite and nonzero, got {nu}"
        )));
    }
    if nu.abs() > T::lit(100.0) {
        return Err(Error::Domain(format!(
            "{what}: |nu| <= 100 required, got {nu}"
        )));
    }
    Ok(())
}

/// `|Γ(iν)| = √(π / (ν sinh πν))`, even in `ν`.
pub fn abs_gamma_imag<T: Real>(nu: T) -> Result<T> {
    check_imag_order(nu, "abs_gamma_imag")?;
    let n = nu.abs();
    Ok((T::PI() / (n * (T::PI() * n).sinh())).sqrt())
}

/// Principal `arg Γ(iν)`. Odd in `ν` (conjugate symmetry), not unwrapped.
pub fn arg_gamma_imag<T: Real>(nu: T) -> Result<T> {
    check_imag_order(nu, "arg_gamma_imag")?;
    Ok(log_gamma(Complex::new(T::zero(), nu))?.phase)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn log_gamma_at_one_and_half() {
        let g = log_gamma(c(1.0, 0.0)).unwrap();
        assert!(g.log_modulus.abs() < 1e-14);
        assert_eq!(g.phase, 0.0);

        let g = log_gamma(c(0.5, 0.0)).unwrap();
        assert!((g.log_modulus - PI.sqrt().ln()).abs() < 1e-14);
        assert_eq!(g.phase, 0.0);

        // Γ(5) = 24
        let g = log_gamma(c(5.0, 0.0)).unwrap();
        assert!((g.log_modulus - 24f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn log_gamma_on_imaginary_unit() {
        let g = log_gamma(c(0.0, 1.0)).unwrap();
        let expected = (PI / PI.sinh()).sqrt().ln();
        assert!((g.log_modulus - expected).abs() < 1e-14);
        assert!((g.phase - -1.8724366472624298171).abs() < 1e-14);
    }

    #[test]
    fn log_gamma_against_reference() {
        let g = log_gamma(c(3.0, 4.0)).unwrap();
        assert!((g.log_modulus - -1.7566267846037841105).abs() < 1e-14);
        assert!((g.phase - wrap_phase(4.7426644380346579282)).abs() < 1e-14);

        let g = log_gamma(c(-7.3, 2.0)).unwrap();
        assert!((g.log_modulus - -13.327732047581360053).abs() < 1e-12);
        assert!((g.phase - wrap_phase(-20.373400309173530449)).abs() < 1e-12);

        let g = log_gamma(c(2.0, 1.0)).unwrap();
        assert!((g.phase - 0.48375784292991511173).abs() < 1e-14);
    }

    #[test]
    fn log_gamma_rejects_poles_and_far_field() {
        assert!(matches!(log_gamma(c(0.0, 0.0)), Err(Error::Domain(_))));
        assert!(matches!(log_gamma(c(-3.0, 0.0)), Err(Error::Domain(_))));
        assert!(matches!(log_gamma(c(2e4, 0.0)), Err(Error::Domain(_))));
        assert!(matches!(log_gamma(c(f64::NAN, 0.0)), Err(Error::Domain(_))));
        // next to a pole is fine
        assert!(log_gamma(c(-3.0, 1e-9)).is_ok());
    }

    #[test]
    fn log_gamma_large_argument_does_not_overflow() {
        let g = log_gamma(c(500.0, 0.0)).unwrap();
        // ln Γ(500) = ln 499!
        let expected: f64 = (1..500).map(|k| (k as f64).ln()).sum();
        assert!(rel(g.log_modulus, expected) < 1e-14);
        assert!(g.modulus().is_infinite());
    }

    #[test]
    fn reciprocal_gamma_zeros_and_values() {
        assert_eq!(reciprocal_gamma(c(0.0, 0.0)), c(0.0, 0.0));
        assert_eq!(reciprocal_gamma(c(-4.0, 0.0)), c(0.0, 0.0));
        let r = reciprocal_gamma(c(3.0, 0.0));
        assert!((r.re - 0.5).abs() < 1e-15 && r.im.abs() < 1e-16);

        let r = reciprocal_gamma(c(1.0, 1.0));
        let expected = c(1.8307443965905246942, 0.56960764103668180603);
        assert!((r - expected).norm() / expected.norm() < 1e-14);
        let via_log = log_gamma(c(1.0, 1.0)).unwrap().value().inv();
        assert!((r - via_log).norm() / expected.norm() < 1e-14);

        let r = reciprocal_gamma(c(-2.5, 0.5));
        let expected = c(-2.1666522722209709081, 1.3397856165916867837);
        assert!((r - expected).norm() / expected.norm() < 1e-13);

        let r = reciprocal_gamma(c(-2.5, -0.5));
        assert!((r - expected.conj()).norm() / expected.norm() < 1e-13);
    }

    #[test]
    fn reciprocal_gamma_small_near_pole() {
        // 1/Γ(−n + ε) ≈ (−1)^n n! ε
        let eps = 1e-7;
        let r = reciprocal_gamma(c(-2.0 + eps, 0.0));
        assert!(rel(r.re, 2.0 * eps) < 1e-6, "{r}");
    }

    #[test]
    fn abs_gamma_imag_closed_form() {
        let v = abs_gamma_imag(1.0).unwrap();
        assert!(rel(v, (PI / PI.sinh()).sqrt()) < 1e-15);
        assert_eq!(abs_gamma_imag(-2.0).unwrap(), abs_gamma_imag(2.0).unwrap());
        let via_log = log_gamma(c(0.0, 1.0)).unwrap().modulus();
        assert!(rel(via_log, v) < 1e-12);
        assert!(matches!(abs_gamma_imag(0.0), Err(Error::Domain(_))));
        assert!(matches!(abs_gamma_imag(101.0), Err(Error::Domain(_))));
    }

    #[test]
    fn arg_gamma_imag_values() {
        let a = arg_gamma_imag(0.7).unwrap();
        let b = arg_gamma_imag(-0.7).unwrap();
        assert_eq!(a + b, 0.0);

        // Γ(iν) ≈ 1/(iν) − γ for small ν
        let small = arg_gamma_imag(1e-6).unwrap();
        assert!((small + PI / 2.0).abs() < 1e-5);
        assert!((small - -1.5707969040105615204).abs() < 1e-14);

        assert!((arg_gamma_imag(1.0_f64).unwrap() - -1.8724366472624298171).abs() < 1e-14);
        assert!((arg_gamma_imag(0.5_f64).unwrap() - -1.8148546257003243819).abs() < 1e-14);
        assert!(matches!(arg_gamma_imag(0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn single_precision_instantiation() {
        let g = log_gamma(Complex::new(0.0_f32, 1.0)).unwrap();
        let expected = (std::f32::consts::PI / std::f32::consts::PI.sinh())
            .sqrt()
            .ln();
        assert!((g.log_modulus - expected).abs() < 1e-5);
    }
}
