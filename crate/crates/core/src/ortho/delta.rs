use crate::gamma::arg_gamma_imag;
use crate::quad::integrate;
use crate::real::wrap_phase;
use crate::{Error, Order, QuadratureSpec, Real, Result, TestFunction};

const MAX_PHASE_STEP: f64 = 0.25;
const SLOPE_STEP: f64 = 1e-6;

/// Continuous phase `f(η) = arg Γ(iν) − arg Γ(i(ν − η))` for `|η| < ν`.
///
/// Principal values of `arg Γ` wrap; the tracker unwraps by continuity from
/// its last evaluation, walking in steps of at most 0.25 (the phase moves by
/// less than `π` over such a step for `ν ≤ 50`). `f(0) = 0` exactly.
#[derive(Debug, Clone)]
pub struct PhaseTracker<T> {
    nu: T,
    reference: T,
    last_eta: T,
    last: T,
}

impl<T: Real> PhaseTracker<T> {
    pub fn new(nu: Order<T>) -> Result<Self> {
        let nu = nu.get();
        if !(nu > T::zero()) {
            return Err(Error::Domain(format!(
                "phase function needs nu > 0, got {nu}"
            )));
        }
        Ok(Self {
            nu,
            reference: arg_gamma_imag(nu)?,
            last_eta: T::zero(),
            last: T::zero(),
        })
    }

    pub fn nu(&self) -> T {
        self.nu
    }

    fn principal(&self, eta: T) -> Result<T> {
        Ok(wrap_phase(self.reference - arg_gamma_imag(self.nu - eta)?))
    }

    pub fn eval(&mut self, eta: T) -> Result<T> {
        if !(eta.abs() < self.nu) {
            return Err(Error::Domain(format!(
                "phase function needs |eta| < nu = {}, got {eta}",
                self.nu
            )));
        }
        let span = eta - self.last_eta;
        let steps = (span.abs() / T::lit(MAX_PHASE_STEP))
            .ceil()
            .to_usize()
            .unwrap_or(1)
            .max(1);
        let mut prev = self.last;
        for j in 1..=steps {
            let e = if j == steps {
                eta
            } else {
                self.last_eta + span * T::from_usize(j).unwrap() / T::from_usize(steps).unwrap()
            };
            let raw = self.principal(e)?;
            let turns = ((prev - raw) / T::TAU()).round();
            prev = raw + turns * T::TAU();
        }
        self.last_eta = eta;
        self.last = prev;
        Ok(prev)
    }
}

/// `f(η)` for a single `η`; see [`PhaseTracker`].
pub fn phase_function<T: Real>(nu: Order<T>, eta: T) -> Result<T> {
    PhaseTracker::new(nu)?.eval(eta)
}

/// Delta-sequence kernel `sin(aη + f(η)) / (πη)`; at `η = 0` the removable value
/// `(a + f'(0))/π`, with `f'(0)` by central difference at step `10⁻⁶`.
pub fn delta_model<T, F>(a: T, eta: T, mut f: F) -> Result<T>
where
    T: Real,
    F: FnMut(T) -> Result<T>,
{
    if !(a > T::zero()) || !a.is_finite() {
        return Err(Error::Argument(format!("delta model needs a > 0, got {a}")));
    }
    if !eta.is_finite() {
        return Err(Error::Argument(format!(
            "delta model needs finite eta, got {eta}"
        )));
    }
    if eta == T::zero() {
        let h = T::lit(SLOPE_STEP);
        let slope = (f(h)? - f(-h)?) / (h + h);
        return Ok((a + slope) / T::PI());
    }
    Ok((a * eta + f(eta)?).sin() / (T::PI() * eta))
}

/// `∫ dν' delta_model(a, ν − ν', f_ν) φ(ν')` against its limit `φ(ν)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaSmear<T> {
    pub a: T,
    pub value: T,
    pub target: T,
    pub error: T,
    pub quad_err: T,
}

/// Smears the delta sequence built on the phase function of `ν` against `φ`.
/// The integration runs over φ's support clipped to the phase function's
/// domain `0 < ν' < 2ν`.
pub fn delta_smear<T: Real>(
    nu: Order<T>,
    a: T,
    phi: &TestFunction<T>,
    spec: &QuadratureSpec<T>,
) -> Result<DeltaSmear<T>> {
    let mut tracker = PhaseTracker::new(nu)?;
    let n = nu.get();
    let (lo, hi) = phi.support();
    let margin = T::lit(1e-9) * n;
    let lo = lo.max(margin);
    let hi = hi.min(n + n - margin);
    if !(lo < hi) {
        return Err(Error::Argument(
            "test function support misses 0 < nu' < 2 nu".into(),
        ));
    }
    let r = integrate(
        |nu_prime: T| {
            let w = phi.eval(nu_prime);
            if w == T::zero() {
                return Ok(T::zero());
            }
            Ok(delta_model(a, n - nu_prime, |e| tracker.eval(e))? * w)
        },
        lo,
        hi,
        spec.gk(T::one()),
    )?;
    let target = phi.eval(n);
    Ok(DeltaSmear {
        a,
        value: r.value,
        target,
        error: (r.value - target).abs(),
        quad_err: r.abs_err,
    })
}
