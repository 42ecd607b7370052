//! Smooth test functions φ(ν') used to probe distributional limits.

use crate::{Error, Real, Result};

/// `ln 10¹²`: beyond `√` of this many widths a Gaussian bump is below `10⁻¹²`.
const GAUSSIAN_CUT_NATS: f64 = 27.631021115928547;
const OUTSIDE_MASS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestFunctionKind {
    /// `exp(−((t − c)/w)²)`
    Gaussian,
    /// `exp(1 − 1/(1 − s²))` for `|s| < 1`, `s = (t − c)/w`; zero outside.
    SmoothCompactBump,
}

impl TestFunctionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TestFunctionKind::Gaussian => "gaussian",
            TestFunctionKind::SmoothCompactBump => "bump",
        }
    }
}

/// A bump of unit height centred at `center`.
///
/// Construction enforces that the mass outside `(0, ∞)` is below `10⁻¹²` of
/// the total, so the bump lives on positive orders only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestFunction<T> {
    kind: TestFunctionKind,
    center: T,
    width: T,
}

impl<T: Real> TestFunction<T> {
    pub fn new(kind: TestFunctionKind, center: T, width: T) -> Result<Self> {
        if !(center.is_finite() && center > T::zero()) {
            return Err(Error::Argument(format!(
                "test function center must be > 0, got {center}"
            )));
        }
        if !(width.is_finite() && width > T::zero()) {
            return Err(Error::Argument(format!(
                "test function width must be > 0, got {width}"
            )));
        }
        let inside = match kind {
            TestFunctionKind::Gaussian => {
                // erfc(u)/2 ≤ e^{−u²} / (2u√π)
                let u = center / width;
                let bound = (-u * u).exp() / (T::lit(2.0) * u * T::PI().sqrt());
                bound < T::lit(OUTSIDE_MASS)
            }
            TestFunctionKind::SmoothCompactBump => center >= width,
        };
        if !inside {
            return Err(Error::Argument(format!(
                "{} test function ({center}, {width}) leaks onto nu' <= 0",
                kind.as_str()
            )));
        }
        Ok(Self {
            kind,
            center,
            width,
        })
    }

    pub fn gaussian(center: T, width: T) -> Result<Self> {
        Self::new(TestFunctionKind::Gaussian, center, width)
    }

    pub fn bump(center: T, width: T) -> Result<Self> {
        Self::new(TestFunctionKind::SmoothCompactBump, center, width)
    }

    pub fn kind(&self) -> TestFunctionKind {
        self.kind
    }

    pub fn center(&self) -> T {
        self.center
    }

    pub fn width(&self) -> T {
        self.width
    }

    pub fn eval(&self, t: T) -> T {
        let s = (t - self.center) / self.width;
        match self.kind {
            TestFunctionKind::Gaussian => (-s * s).exp(),
            TestFunctionKind::SmoothCompactBump => {
                let q = T::one() - s * s;
                if q <= T::zero() {
                    T::zero()
                } else {
                    (T::one() - q.recip()).exp()
                }
            }
        }
    }

    /// Interval outside of which φ is below `10⁻¹²` (exactly zero for the compact bump).
    pub fn support(&self) -> (T, T) {
        let r = match self.kind {
            TestFunctionKind::Gaussian => self.width * T::lit(GAUSSIAN_CUT_NATS).sqrt(),
            TestFunctionKind::SmoothCompactBump => self.width,
        };
        (self.center - r, self.center + r)
    }
}
