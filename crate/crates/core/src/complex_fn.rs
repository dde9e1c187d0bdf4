//! Complex scalar helpers: evaluation knobs, principal-branch log-gamma and
//! branch-safe argument increments.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point `sigma + i t` in the complex plane.
pub type ComplexValue = Complex64;

/// Truncation and tolerance knobs shared by series evaluation and contour
/// refinement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalParams {
    /// Absolute error goal for series evaluations.
    pub target_eps: f64,
    /// Upper bound on the main-sum length of Euler–Maclaurin evaluation.
    pub max_series_terms: usize,
    /// Maximum bisection depth per base step when refining a contour.
    pub max_refine_depth: usize,
}

impl Default for EvalParams {
    fn default() -> Self {
        Self {
            target_eps: 1e-10,
            max_series_terms: 200_000,
            max_refine_depth: 40,
        }
    }
}

impl EvalParams {
    pub fn with_target_eps(target_eps: f64) -> Result<Self> {
        let p = Self {
            target_eps,
            ..Self::default()
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.target_eps.is_finite() && self.target_eps > 0.0) {
            return Err(Error::InvalidParams(format!(
                "target_eps must be positive and finite, got {}",
                self.target_eps
            )));
        }
        if self.max_series_terms < 16 {
            return Err(Error::InvalidParams(format!(
                "max_series_terms must be at least 16, got {}",
                self.max_series_terms
            )));
        }
        if self.max_refine_depth < 4 {
            return Err(Error::InvalidParams(format!(
                "max_refine_depth must be at least 4, got {}",
                self.max_refine_depth
            )));
        }
        Ok(())
    }
}

/// Distance from the poles of Gamma inside which `complex_log_gamma` refuses.
pub const GAMMA_POLE_GUARD: f64 = 1e-10;

/// Real part above which the Stirling series is applied directly.
const STIRLING_SHIFT: f64 = 10.0;

/// `B_{2k} / (2k (2k - 1))` for k = 1..=10.
const STIRLING_COEFFS: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43_867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

/// `0.5 * ln(2 pi)`
const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// Principal branch of `ln Gamma(s)`, continuous on the plane cut along the
/// non-positive real axis.
///
/// Arguments with `Re(s) < 10` are lifted with `ln Gamma(s) = ln Gamma(s + n) - sum ln(s + k)`
/// before the Stirling series is applied; each logarithm is principal, so the
/// sum is the continuous continuation from the positive real axis.
pub fn complex_log_gamma(s: ComplexValue) -> Result<ComplexValue> {
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::Domain(s.re, "log-gamma needs a finite argument"));
    }
    if s.im.abs() < GAMMA_POLE_GUARD
        && s.re < GAMMA_POLE_GUARD
        && (s.re - s.re.round()).abs() < GAMMA_POLE_GUARD
    {
        return Err(Error::GammaPole(s));
    }

    let mut z = s;
    let mut shift = Complex64::new(0.0, 0.0);
    while z.re < STIRLING_SHIFT {
        shift += z.ln();
        z += 1.0;
    }
    Ok(stirling(z) - shift)
}

fn stirling(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut power = inv;
    for c in STIRLING_COEFFS {
        series += power * c;
        power *= inv2;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_TWO_PI + series
}

/// `Im ln(b / a)` on the principal branch, in `(-pi, pi]`.
pub fn principal_arg_delta(a: ComplexValue, b: ComplexValue) -> Result<f64> {
    if a.norm() < f64::MIN_POSITIVE || b.norm() < f64::MIN_POSITIVE {
        return Err(Error::ZeroOperand);
    }
    let ratio = b * a.conj();
    let d = ratio.im.atan2(ratio.re);
    Ok(if d <= -PI { PI } else { d })
}
