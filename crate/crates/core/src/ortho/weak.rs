use crate::bessel::k_triple_auto;
use crate::quad::integrate;
use crate::{Abscissa, Error, Order, QuadratureSpec, Real, Result, TestFunction};

use super::kernel::{asymptotic_terms, boundary_from, diagonal_from, positive_order};

/// Nodes closer than this to `ν' = ν` take the diagonal limit instead of the closed form.
pub const DIAGONAL_WINDOW: f64 = 1e-6;
const MAX_XI: f64 = 0.1;
/// Lowest order integrated over; the test functions are negligible well before it.
const MIN_ORDER: f64 = 1e-3;

/// `π² / (2ν sinh πν)`, the weight multiplying `δ(ν − ν')`.
pub fn orthogonality_weight<T: Real>(nu: T) -> T {
    let pi = T::PI();
    pi * pi / (T::lit(2.0) * nu * (pi * nu).sinh())
}

/// `a = −ln(ξ/2)`, the frequency of the sinc kernel in `ν − ν'`.
pub fn limit_parameter<T: Real>(xi: T) -> T {
    -(xi * T::lit(0.5)).ln()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeakLimitRow<T> {
    pub xi: T,
    pub a: T,
    /// `S(ξ) = ∫ dν' (∫_ξ^∞ K_{iν} K_{iν'} dx/x) φ(ν')`
    pub smeared: T,
    pub error: T,
    pub relative_error: T,
    /// `|∫ dν' (reflected sinc term) φ(ν')|`, the finite-ξ remnant of `δ(ν + ν')`.
    pub reflected_term: T,
    pub quad_err: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeakLimitReport<T> {
    pub nu: T,
    pub phi: TestFunction<T>,
    /// `π²/(2ν sinh πν) φ(ν)`
    pub target: T,
    pub rows: Vec<WeakLimitRow<T>>,
    /// Reflected term at the smallest `ξ`.
    pub reflected_term_bound: T,
}

impl<T: Real> WeakLimitReport<T> {
    pub fn xi_sequence(&self) -> Vec<T> {
        self.rows.iter().map(|r| r.xi).collect()
    }

    pub fn smeared_values(&self) -> Vec<T> {
        self.rows.iter().map(|r| r.smeared).collect()
    }

    pub fn errors(&self) -> Vec<T> {
        self.rows.iter().map(|r| r.error).collect()
    }

    /// Errors decrease along the sequence, allowing at most one step that
    /// grows by less than `slack` (relative).
    pub fn is_converging(&self, slack: T) -> bool {
        errors_converge(&self.errors(), slack)
    }
}

pub(crate) fn errors_converge<T: Real>(errors: &[T], slack: T) -> bool {
    let mut exceptions = 0;
    for w in errors.windows(2) {
        if w[1] < w[0] {
            continue;
        }
        if w[1] < w[0] * (T::one() + slack) {
            exceptions += 1;
        } else {
            return false;
        }
    }
    exceptions <= 1
}

/// Smears the truncated overlap integral against `φ(ν')` for each cutoff and
/// compares with `π²/(2ν sinh πν) φ(ν)`.
///
/// The `ν'` integral uses the closed boundary term (diagonal limit within
/// `10⁻⁶` of `ν`). `ξ` values must decrease strictly and lie in `(0, 0.1]`.
pub fn weak_limit_test<T: Real>(
    nu: T,
    xi_sequence: &[T],
    phi: &TestFunction<T>,
    spec: &QuadratureSpec<T>,
) -> Result<WeakLimitReport<T>> {
    let order = positive_order(nu)?;
    if xi_sequence.is_empty() {
        return Err(Error::Argument("xi sequence is empty".into()));
    }
    if xi_sequence
        .iter()
        .any(|&x| !(x > T::zero() && x <= T::lit(MAX_XI)))
    {
        return Err(Error::Argument("every xi must lie in (0, 0.1]".into()));
    }
    if xi_sequence.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::Argument(
            "xi sequence must be strictly decreasing".into(),
        ));
    }
    let (lo, hi) = phi.support();
    let lo = lo.max(T::lit(MIN_ORDER));
    let hi = hi.min(T::lit(50.0));
    if !(lo < hi) {
        return Err(Error::Argument(
            "test function support misses the order range".into(),
        ));
    }
    let target = orthogonality_weight(nu) * phi.eval(nu);

    let mut rows = Vec::with_capacity(xi_sequence.len());
    for &xi in xi_sequence {
        let x = Abscissa::new(xi)?;
        let at_nu = k_triple_auto(order, x)?;
        let diagonal = diagonal_from(order, &at_nu, x)?;
        let window = T::lit(DIAGONAL_WINDOW);

        let smeared = integrate(
            |nu_prime: T| {
                let w = phi.eval(nu_prime);
                if w == T::zero() {
                    return Ok(T::zero());
                }
                let kernel = if (nu_prime - nu).abs() < window {
                    diagonal
                } else {
                    let b = k_triple_auto(Order::new_unchecked(nu_prime), x)?;
                    boundary_from(nu, &at_nu, nu_prime, &b, xi).value
                };
                Ok(kernel * w)
            },
            lo,
            hi,
            spec.gk(T::one()),
        )?;

        let reflected = integrate(
            |nu_prime: T| {
                let w = phi.eval(nu_prime);
                if w == T::zero() {
                    return Ok(T::zero());
                }
                Ok(asymptotic_terms(nu, nu_prime, xi)?.1 * w)
            },
            lo,
            hi,
            spec.gk(T::one()),
        )?;

        let error = (smeared.value - target).abs();
        rows.push(WeakLimitRow {
            xi,
            a: limit_parameter(xi),
            smeared: smeared.value,
            error,
            relative_error: error / target.abs(),
            reflected_term: reflected.value.abs(),
            quad_err: smeared.abs_err,
        });
    }
    let reflected_term_bound = rows.last().map(|r| r.reflected_term).unwrap_or(T::zero());
    Ok(WeakLimitReport {
        nu,
        phi: *phi,
        target,
        rows,
        reflected_term_bound,
    })
}
