use num_complex::Complex;

use crate::bessel::{k_triple_auto, KTriple};
use crate::gamma::log_gamma;
use crate::quad::{integrate_segments, GkOptions};
use crate::{besselk_imag, Abscissa, Error, Order, Real, Result};

/// Below this `|ν − ν'|` the closed form is refused in favour of [`diagonal_limit`].
pub const NEAR_DIAGONAL: f64 = 1e-8;
const DIAGONAL_STEP: f64 = 1e-4;
const DIAGONAL_AGREEMENT: f64 = 1e-6;
const ASYMPTOTIC_MAX_XI: f64 = 0.1;

/// `(ν, ν', ξ)`: one truncated overlap integral `∫_ξ^∞ K_{iν} K_{iν'} dx/x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairSpec<T> {
    pub nu: Order<T>,
    pub nu_prime: Order<T>,
    pub xi: T,
}

impl<T: Real> PairSpec<T> {
    pub fn new(nu: T, nu_prime: T, xi: T) -> Result<Self> {
        let nu = positive_order(nu)?;
        let nu_prime = positive_order(nu_prime)?;
        Abscissa::new(xi)?;
        Ok(Self { nu, nu_prime, xi })
    }

    pub fn swapped(self) -> Self {
        Self {
            nu: self.nu_prime,
            nu_prime: self.nu,
            xi: self.xi,
        }
    }
}

pub(crate) fn positive_order<T: Real>(nu: T) -> Result<Order<T>> {
    if !(nu > T::zero()) {
        return Err(Error::Domain(format!("orders must be > 0, got {nu}")));
    }
    Order::new(nu)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelMethod {
    BoundaryTerm,
    Quadrature,
    Asymptotic,
}

impl KernelMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            KernelMethod::BoundaryTerm => "boundary-term",
            KernelMethod::Quadrature => "quadrature",
            KernelMethod::Asymptotic => "asymptotic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelValue<T> {
    pub value: T,
    pub abs_err: T,
    pub method: KernelMethod,
}

/// Tolerances for [`kernel_quadrature`]; `upper` is chosen so that the tail
/// beyond it, bounded through `|K_{iν}(x)| ≤ √(π/2x) e^{−x}`, stays below `abs_tol`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec<T> {
    pub abs_tol: T,
    pub rel_tol: T,
    pub upper: T,
    pub max_intervals: usize,
}

impl<T: Real> QuadratureSpec<T> {
    pub fn new(abs_tol: T, rel_tol: T) -> Result<Self> {
        if !(abs_tol > T::zero()) || !(rel_tol >= T::zero()) {
            return Err(Error::Argument(
                "quadrature tolerances must be positive".into(),
            ));
        }
        let mut upper = T::lit(2.0);
        while Self::tail_bound(upper) >= abs_tol {
            upper = upper + T::lit(0.25);
        }
        Ok(Self {
            abs_tol,
            rel_tol,
            upper,
            max_intervals: 4000,
        })
    }

    /// `∫_U^∞ K_{iν} K_{iν'} dx/x ≤ π e^{−2U} / (4U²)`.
    pub fn tail_bound(upper: T) -> T {
        T::PI() * (-T::lit(2.0) * upper).exp() / (T::lit(4.0) * upper * upper)
    }

    pub(crate) fn gk(&self, share: T) -> GkOptions<T> {
        GkOptions {
            abs_tol: self.abs_tol * share,
            rel_tol: self.rel_tol,
            max_intervals: self.max_intervals,
        }
    }
}

impl Default for QuadratureSpec<f64> {
    fn default() -> Self {
        Self::new(1e-12, 1e-12).expect("valid default tolerances")
    }
}

/// Closed-form boundary term from precomputed `K`, `K'` at `ξ` for both orders.
pub(crate) fn boundary_from<T: Real>(
    nu: T,
    a: &KTriple<T>,
    nu_prime: T,
    b: &KTriple<T>,
    xi: T,
) -> KernelValue<T> {
    // canonical ordering makes the ν ↔ ν' symmetry exact
    let (nu, a, nu_prime, b) = if nu <= nu_prime {
        (nu, a, nu_prime, b)
    } else {
        (nu_prime, b, nu, a)
    };
    let denom = nu * nu - nu_prime * nu_prime;
    let wronskian = a.k * b.dk - b.k * a.dk;
    let value = -xi * wronskian / denom;
    let propagated = xi
        * (b.dk.abs() * a.err_k
            + a.k.abs() * b.err_dk
            + a.dk.abs() * b.err_k
            + b.k.abs() * a.err_dk)
        / denom.abs();
    let rounding =
        xi * T::lit(4.0) * T::epsilon() * (a.k * b.dk).abs().max((b.k * a.dk).abs()) / denom.abs();
    KernelValue {
        value,
        abs_err: propagated + rounding,
        method: KernelMethod::BoundaryTerm,
    }
}

fn check_off_diagonal<T: Real>(nu: T, nu_prime: T) -> Result<()> {
    let gap = (nu - nu_prime).abs();
    if gap < T::lit(NEAR_DIAGONAL) {
        return Err(Error::NearDiagonal {
            gap: gap.to_f64_lossy(),
        });
    }
    Ok(())
}

/// Truncated overlap integral from the boundary term at `ξ`: four special-function values.
pub fn kernel_boundary<T: Real>(pair: PairSpec<T>) -> Result<KernelValue<T>> {
    let (nu, nu_prime) = (pair.nu.get(), pair.nu_prime.get());
    check_off_diagonal(nu, nu_prime)?;
    let xi = Abscissa::new(pair.xi)?;
    let a = k_triple_auto(pair.nu, xi)?;
    let b = k_triple_auto(pair.nu_prime, xi)?;
    Ok(boundary_from(nu, &a, nu_prime, &b, pair.xi))
}

/// Truncated overlap integral by adaptive quadrature, plus the tail bound beyond `spec.upper`.
///
/// On `(ξ, 2)` the variable is `u = ln x`, in which the small-x oscillation of
/// both factors is a plain trigonometric one.
pub fn kernel_quadrature<T: Real>(
    pair: PairSpec<T>,
    spec: &QuadratureSpec<T>,
) -> Result<KernelValue<T>> {
    let xi = pair.xi;
    Abscissa::new(xi)?;
    let two = T::lit(2.0);
    let upper = if xi < spec.upper {
        spec.upper
    } else {
        two * xi
    };
    let product = |x: T| -> Result<T> {
        let x = Abscissa::new(x)?;
        Ok(besselk_imag(pair.nu, x)?.value * besselk_imag(pair.nu_prime, x)?.value)
    };

    let mut value = T::zero();
    let mut abs_err = QuadratureSpec::tail_bound(upper);
    let half = T::lit(0.5);

    if xi < two {
        let (u0, u1) = (xi.ln(), two.min(upper).ln());
        let pieces = ((u1 - u0).ceil().to_usize().unwrap_or(1)).max(1);
        let breaks: Vec<T> = (0..=pieces)
            .map(|j| u0 + (u1 - u0) * T::from_usize(j).unwrap() / T::from_usize(pieces).unwrap())
            .collect();
        let r = integrate_segments(|u: T| product(u.exp()), &breaks, spec.gk(half))?;
        value = value + r.value;
        abs_err = abs_err + r.abs_err;
    }
    let lo = xi.max(two);
    if upper > lo {
        let r = integrate_segments(|x: T| Ok(product(x)? / x), &[lo, upper], spec.gk(half))?;
        value = value + r.value;
        abs_err = abs_err + r.abs_err;
    }
    Ok(KernelValue {
        value,
        abs_err,
        method: KernelMethod::Quadrature,
    })
}

/// `π / (2√(νν' sinh πν sinh πν'))`.
pub fn asymptotic_prefactor<T: Real>(nu: T, nu_prime: T) -> T {
    let pi = T::PI();
    pi / (T::lit(2.0) * (nu * nu_prime * (pi * nu).sinh() * (pi * nu_prime).sinh()).sqrt())
}

/// The two sinc-type terms of the small-`ξ` kernel, prefactor included:
/// `(direct, reflected)` with phases `−(ν ∓ ν') ln(ξ/2) + arg Γ(iν) ∓ arg Γ(iν')`.
/// The direct term needs `ν ≠ ν'`; the reflected one is regular everywhere on `ν, ν' > 0`.
pub fn asymptotic_terms<T: Real>(nu: T, nu_prime: T, xi: T) -> Result<(T, T)> {
    let g = log_gamma(Complex::new(T::zero(), nu))?.phase;
    let gp = log_gamma(Complex::new(T::zero(), nu_prime))?.phase;
    let ln_half = (xi * T::lit(0.5)).ln();
    let pre = asymptotic_prefactor(nu, nu_prime);
    let diff = nu - nu_prime;
    let sum = nu + nu_prime;
    let direct = if diff == T::zero() {
        T::nan()
    } else {
        pre * (-diff * ln_half + g - gp).sin() / diff
    };
    let reflected = pre * (-sum * ln_half + g + gp).sin() / sum;
    Ok((direct, reflected))
}

/// The small-`ξ` (sinc) form of the truncated overlap integral, before the limit; `ξ ≤ 0.1`.
pub fn kernel_asymptotic<T: Real>(pair: PairSpec<T>) -> Result<KernelValue<T>> {
    let (mut nu, mut nu_prime) = (pair.nu.get(), pair.nu_prime.get());
    check_off_diagonal(nu, nu_prime)?;
    if !(pair.xi <= T::lit(ASYMPTOTIC_MAX_XI)) {
        return Err(Error::Range(format!(
            "asymptotic kernel needs xi <= 0.1, got {}",
            pair.xi
        )));
    }
    if nu > nu_prime {
        std::mem::swap(&mut nu, &mut nu_prime);
    }
    let (direct, reflected) = asymptotic_terms(nu, nu_prime, pair.xi)?;
    let value = direct + reflected;
    Ok(KernelValue {
        value,
        // error of the form itself is O(ξ²); this is only the rounding part
        abs_err: T::lit(8.0)
            * T::epsilon()
            * (direct.abs() + reflected.abs())
            * (T::one() - pair.xi.ln()),
        method: KernelMethod::Asymptotic,
    })
}

pub(crate) fn diagonal_from<T: Real>(
    nu: Order<T>,
    at_nu: &KTriple<T>,
    xi: Abscissa<T>,
) -> Result<T> {
    let n = nu.get();
    let h = T::lit(DIAGONAL_STEP).min(n * T::lit(0.25));
    let symmetric = |step: T| -> Result<T> {
        let up = k_triple_auto(Order::new_unchecked(n + step), xi)?;
        let down = k_triple_auto(Order::new_unchecked(n - step), xi)?;
        let b_up = boundary_from(n, at_nu, n + step, &up, xi.get()).value;
        let b_down = boundary_from(n, at_nu, n - step, &down, xi.get()).value;
        Ok((b_up + b_down) * T::lit(0.5))
    };
    let coarse = symmetric(h)?;
    let fine = symmetric(h * T::lit(0.5))?;
    let extrapolated = (T::lit(4.0) * fine - coarse) / T::lit(3.0);
    let disagreement = (extrapolated - fine).abs();
    if disagreement > T::lit(DIAGONAL_AGREEMENT) * extrapolated.abs() {
        return Err(Error::Convergence {
            reason: "diagonal Richardson extrapolation disagrees by more than 1e-6".into(),
            best: extrapolated.to_f64_lossy(),
            abs_err: disagreement.to_f64_lossy(),
        });
    }
    Ok(extrapolated)
}

/// `∫_ξ^∞ K_{iν}²(x) dx/x`: the boundary term continued to `ν' = ν` by a symmetric
/// difference in `ν'` (steps `10⁻⁴` and `5·10⁻⁵`) with Richardson extrapolation.
pub fn diagonal_limit<T: Real>(nu: T, xi: T) -> Result<T> {
    let order = positive_order(nu)?;
    if !(xi > T::zero() && xi <= T::lit(2.0)) {
        return Err(Error::Range(format!(
            "diagonal limit needs xi in (0, 2], got {xi}"
        )));
    }
    let x = Abscissa::new(xi)?;
    let at_nu = k_triple_auto(order, x)?;
    diagonal_from(order, &at_nu, x)
}
