//! Zero counts `N(T)` and height-window counts `N(T + delta) - N(T - delta)`.
//!
//! `N(T) = theta(T)/pi + 1 + (1/pi) * (change of arg zeta along the L-path)`,
//! where the L-path runs from `1 + eps` up to `1 + eps + iT` and across to
//! `1/2 + iT`. Tracking starts on the real axis where `zeta(1 + eps)` is real
//! and positive, which fixes the argument there at 0.
//!
//! A window count is the difference of two such counts. It is assembled both
//! from the two L-path terms separately and from a single path joining the
//! two critical-line end points; the two must agree.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::complex_fn::{ComplexValue, EvalParams};
use crate::contour::{
    backlund_l_path, count_real_part_sign_changes, track_arg_along, window_side_path,
    ArgTrackResult, ContourPath,
};
use crate::error::{Error, Result};
use crate::zeta::{theta_exact, zeta};

/// Half-widths tried by [`select_window_params`], in order.
pub const DELTA_LADDER: [f64; 6] = [0.5, 0.45, 0.35, 0.25, 0.18, 0.12];

/// Strip margins tried by [`select_window_params`] for each half-width.
pub const EPSILON_LADDER: [f64; 4] = [0.1, 0.15, 0.08, 0.2];

/// Smallest `|zeta|` an accepted window contour may reach.
pub const LADDER_MIN_ABS_ZETA: f64 = 1e-6;

/// Largest distance from an integer a count may have before rounding.
pub const QUANTIZATION_BAND: f64 = 0.1;

/// Height offsets tried by [`count_zeros_to`] when a contour meets a zero.
const HEIGHT_RETRIES: [f64; 6] = [0.0, 0.01, -0.01, 0.02, -0.02, 0.03];

/// A height window `(T - delta, T + delta]` together with the margin `eps`
/// of the counting contours.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindowSpec {
    pub t_center: f64,
    pub delta: f64,
    pub epsilon: f64,
}

impl WindowSpec {
    pub fn new(t_center: f64, delta: f64, epsilon: f64) -> Result<Self> {
        let w = Self {
            t_center,
            delta,
            epsilon,
        };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_center.is_finite() && self.delta.is_finite() && self.epsilon.is_finite()) {
            return Err(Error::Domain(
                self.t_center,
                "window parameters must be finite",
            ));
        }
        if self.delta <= 0.0 {
            return Err(Error::Domain(
                self.delta,
                "window half-width must be positive",
            ));
        }
        if self.epsilon <= 0.0 {
            return Err(Error::Domain(self.epsilon, "strip margin must be positive"));
        }
        if self.t_center - self.delta <= 2.0 {
            return Err(Error::Domain(self.t_center, "window must stay above t = 2"));
        }
        Ok(())
    }

    pub fn lower(&self) -> f64 {
        self.t_center - self.delta
    }

    pub fn upper(&self) -> f64 {
        self.t_center + self.delta
    }
}

/// Every term of the window decomposition.
///
/// `c11_term` and `c12_term` are the L-path terms at the upper and lower
/// heights; `c2_term` comes from the single joining path and equals their
/// difference. `bound_satisfied` records `window_count <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindowReport {
    pub t_center: f64,
    pub theta_term: f64,
    pub c11_term: f64,
    pub c12_term: f64,
    pub c2_term: f64,
    pub window_count: i64,
    pub sign_changes_c11: usize,
    pub sign_changes_c12: usize,
    pub bound_satisfied: bool,
    pub delta_used: f64,
    pub epsilon_used: f64,
}

impl WindowReport {
    /// Both L-paths keep `Re zeta` of one sign, so each term lies in
    /// `[-1/2, 1/2]`.
    pub fn hypothesis_holds(&self) -> bool {
        self.sign_changes_c11 == 0 && self.sign_changes_c12 == 0
    }
}

fn zeta_value(p: &EvalParams) -> impl Fn(ComplexValue) -> Result<ComplexValue> + '_ {
    move |s| zeta(s, p).map(|e| e.value)
}

/// Tracks `arg zeta` along a pole-guarded path.
pub fn track_zeta(path: &ContourPath, p: &EvalParams) -> Result<ArgTrackResult> {
    path.check_pole_guard()?;
    track_arg_along(path, &zeta_value(p), p)
}

fn round_checked(value: f64) -> Result<i64> {
    let r = value.round();
    if (value - r).abs() >= QUANTIZATION_BAND || !value.is_finite() {
        return Err(Error::Quantization { value });
    }
    Ok(r as i64)
}

fn count_once(height: f64, epsilon: f64, p: &EvalParams) -> Result<i64> {
    let path = backlund_l_path(epsilon, height)?;
    let arg = track_zeta(&path, p)?.arg_change;
    round_checked(theta_exact(height)? / PI + 1.0 + arg / PI)
}

/// Number of zeros of zeta with `0 < Im s < height` in the critical strip,
/// counted with multiplicity.
///
/// If the contour meets a zero the height is nudged by up to 0.03 and the
/// count retried.
pub fn count_zeros_to(height: f64, epsilon: f64, p: &EvalParams) -> Result<i64> {
    if !(height.is_finite() && height > 2.0) {
        return Err(Error::Domain(height, "zero count needs height > 2"));
    }
    if !(epsilon > 0.0 && epsilon <= 0.5) {
        return Err(Error::Domain(
            epsilon,
            "zero count needs epsilon in (0, 0.5]",
        ));
    }
    let mut last = None;
    for dh in HEIGHT_RETRIES {
        match count_once(height + dh, epsilon, p) {
            Ok(n) => return Ok(n),
            Err(
                e @ (Error::ZeroOnPath { .. }
                | Error::Quantization { .. }
                | Error::RefinementBudget { .. }),
            ) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

/// `(theta(T + delta) - theta(T - delta)) / pi`.
pub fn theta_window_term(w: &WindowSpec) -> Result<f64> {
    w.validate()?;
    Ok((theta_exact(w.upper())? - theta_exact(w.lower())?) / PI)
}

/// Computes the full decomposition of `N(T + delta) - N(T - delta)`.
pub fn window_count(w: &WindowSpec, p: &EvalParams) -> Result<WindowReport> {
    let theta_term = theta_window_term(w)?;
    let upper = backlund_l_path(w.epsilon, w.upper())?;
    let lower = backlund_l_path(w.epsilon, w.lower())?;
    let side = window_side_path(w.epsilon, w.lower(), w.upper())?;

    let c11_term = track_zeta(&upper, p)?.arg_change / PI;
    let c12_term = track_zeta(&lower, p)?.arg_change / PI;
    let c2_term = track_zeta(&side, p)?.arg_change / PI;
    let window_count = round_checked(theta_term + c2_term)?;

    let sign_changes_c11 = count_real_part_sign_changes(&upper, p)?.changes;
    let sign_changes_c12 = count_real_part_sign_changes(&lower, p)?.changes;

    Ok(WindowReport {
        t_center: w.t_center,
        theta_term,
        c11_term,
        c12_term,
        c2_term,
        window_count,
        sign_changes_c11,
        sign_changes_c12,
        bound_satisfied: window_count <= 1,
        delta_used: w.delta,
        epsilon_used: w.epsilon,
    })
}

/// `true` when `zeta` stays above [`LADDER_MIN_ABS_ZETA`] along the L-path.
fn l_path_clear(epsilon: f64, height: f64, p: &EvalParams) -> Result<bool> {
    let path = backlund_l_path(epsilon, height)?;
    match track_zeta(&path, p) {
        Ok(r) => Ok(r.min_abs_f > LADDER_MIN_ABS_ZETA),
        Err(Error::ZeroOnPath { .. } | Error::RefinementBudget { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

/// First `(delta, epsilon)` from the candidate ladders whose two L-paths keep
/// clear of zeros of zeta.
pub fn select_window_params(t_center: f64, p: &EvalParams) -> Result<WindowSpec> {
    if !(t_center.is_finite() && t_center > 3.0) {
        return Err(Error::Domain(t_center, "window selection needs t > 3"));
    }
    for delta in DELTA_LADDER {
        for epsilon in EPSILON_LADDER {
            let w = WindowSpec::new(t_center, delta, epsilon)?;
            if l_path_clear(epsilon, w.upper(), p)? && l_path_clear(epsilon, w.lower(), p)? {
                return Ok(w);
            }
        }
    }
    Err(Error::LadderExhausted { t_center })
}

/// Rectangle `[-eps, 1 + eps] x [T - delta, T + delta]` enclosing the window.
pub fn window_rectangle(w: &WindowSpec) -> Result<ContourPath> {
    crate::contour::rect_boundary(-w.epsilon, 1.0 + w.epsilon, w.lower(), w.upper())
}

/// Zeros in the window recounted as the winding of xi around its rectangle.
pub fn xi_window_recount(w: &WindowSpec, p: &EvalParams) -> Result<i64> {
    w.validate()?;
    let rect = window_rectangle(w)?;
    crate::contour::winding_number(&rect, &|s: Complex64| crate::zeta::xi_normalized(s, p), p)
}
