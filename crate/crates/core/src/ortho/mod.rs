//! Numerical walk-through of the continuum orthogonality of `K_{iν}`.
//!
//! For `ν ≠ ν'` the truncated overlap integral has a closed form given by the
//! Wronskian-type boundary term of the self-adjoint Bessel operator,
//!
//! ```text
//! ∫_ξ^∞ K_{iν} K_{iν'} dx/x = −ξ [K_{iν}(ξ) K'_{iν'}(ξ) − K_{iν'}(ξ) K'_{iν}(ξ)] / (ν² − ν'²),
//! ```
//!
//! which [`kernel_boundary`] evaluates and [`kernel_quadrature`] checks by
//! direct integration. As `ξ → 0` the right side becomes a sinc-type kernel in
//! `ν − ν'` with frequency `a = −ln(ξ/2)` ([`kernel_asymptotic`]), a delta
//! sequence ([`delta_model`]); smearing it against a test function
//! ([`weak_limit_test`]) approaches `π²/(2ν sinh πν) φ(ν)`.

mod delta;
mod kernel;
mod weak;

pub use delta::{delta_model, delta_smear, phase_function, DeltaSmear, PhaseTracker};
pub use kernel::{
    asymptotic_prefactor, asymptotic_terms, diagonal_limit, kernel_asymptotic, kernel_boundary,
    kernel_quadrature, KernelMethod, KernelValue, PairSpec, QuadratureSpec, NEAR_DIAGONAL,
};
pub use weak::{
    limit_parameter, orthogonality_weight, weak_limit_test, WeakLimitReport, WeakLimitRow,
    DIAGONAL_WINDOW,
};
