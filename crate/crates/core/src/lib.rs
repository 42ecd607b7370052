//! Macdonald functions of purely imaginary order, `K_{iν}(x)`, and a
//! step-by-step numerical reproduction of their continuum orthogonality
//!
//! ```text
//! ∫₀^∞ K_{iν}(x) K_{iν'}(x) dx / x = π² / (2ν sinh πν) · δ(ν − ν')      (ν, ν' > 0)
//! ```
//!
//! The crate is organised bottom-up:
//!
//! * [`gamma`]: complex log-gamma, reciprocal gamma and the closed forms of
//!   `|Γ(iν)|` and `arg Γ(iν)`.
//! * [`bessel`]: `I_{±iν}(x)` by power series, `K_{iν}(x)` by the series
//!   combination or by the `cosh` integral, analytic x-derivatives, the two
//!   asymptotic forms and the ODE residual.
//! * [`quad`]: adaptive Gauss–Kronrod quadrature used by the verification layer.
//! * [`ortho`]: the truncated overlap integral in closed (Wronskian) form and
//!   by quadrature, its small-cutoff sinc form, the delta-sequence model, and
//!   the weak-limit test against smooth test functions.
//!
//! Every numeric routine is generic over the scalar type through [`Real`];
//! the `*64` aliases below fix it to `f64`, which is what the accuracy
//! guarantees are stated for.

pub mod bessel;
pub mod envelope;
mod error;
pub mod gamma;
pub mod ortho;
pub mod quad;
mod real;
pub mod testfn;

pub use error::{Error, Result};
pub use real::Real;

pub use num_complex::Complex;

pub use bessel::{
    besseli_imag, besseli_ode_residual, besselk_dx, besselk_imag, besselk_imag_with,
    besselk_largex_approx, besselk_realness_residue, besselk_smallx_approx, ode_residual,
    series_switch, Abscissa, FunctionValue, Method, OdeResidual, Order, Sign,
};
pub use gamma::{abs_gamma_imag, arg_gamma_imag, log_gamma, reciprocal_gamma, GammaEval};
pub use ortho::{
    delta_model, delta_smear, diagonal_limit, kernel_asymptotic, kernel_boundary,
    kernel_quadrature, limit_parameter, orthogonality_weight, phase_function, weak_limit_test,
    DeltaSmear, KernelMethod, KernelValue, PairSpec, PhaseTracker, QuadratureSpec, WeakLimitReport,
    WeakLimitRow,
};
pub use testfn::{TestFunction, TestFunctionKind};

/// Double-precision complex number.
pub type Complex64 = Complex<f64>;
/// Single-precision complex number.
pub type Complex32 = Complex<f32>;

pub type GammaEval64 = GammaEval<f64>;
pub type Order64 = Order<f64>;
pub type Abscissa64 = Abscissa<f64>;
/// `K_{iν}(x)` (or a derivative) evaluated in double precision.
pub type FunctionValue64 = FunctionValue<f64>;
/// `I_{±iν}(x)` evaluated in double precision.
pub type ComplexFunctionValue64 = FunctionValue<f64, Complex64>;
pub type PairSpec64 = PairSpec<f64>;
pub type KernelValue64 = KernelValue<f64>;
pub type QuadratureSpec64 = QuadratureSpec<f64>;
pub type TestFunction64 = TestFunction<f64>;
pub type WeakLimitReport64 = WeakLimitReport<f64>;
