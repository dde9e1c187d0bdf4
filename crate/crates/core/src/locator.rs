//! Critical-line zeros from sign changes of Hardy's Z, and range verification
//! that pairs those zeros with window counts.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::backlund::{window_count, WindowReport, WindowSpec, EPSILON_LADDER};
use crate::complex_fn::EvalParams;
use crate::error::{Error, Result};
use crate::zeta::hardy_z;

/// Default scan step for [`verify_range`].
pub const DEFAULT_SCAN_STEP: f64 = 0.1;

/// Bisection stops once the bracket is at most this wide.
pub const REFINEMENT_WIDTH: f64 = 1e-9;

/// A critical-line zero located by a sign change of Z.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroRecord {
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    pub refined_t: f64,
    pub refinement_width: f64,
    pub window_verified: bool,
}

/// A window whose contours could not be placed clear of zeros.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnverifiableWindow {
    pub t_lo: f64,
    pub t_hi: f64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RangeSummary {
    pub total_zeros: usize,
    pub total_windows: usize,
    pub verified_windows: usize,
    pub unverifiable_windows: usize,
    /// Centres of windows whose count differs from the zeros found on the line.
    pub discrepancies: Vec<f64>,
    /// Centres of windows where the one-sign hypothesis held but the count
    /// exceeded one or an L-path term left `[-1/2, 1/2]`.
    pub bound_violations: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RangeReport {
    pub t_min: f64,
    pub t_max: f64,
    pub zeros: Vec<ZeroRecord>,
    pub windows: Vec<WindowReport>,
    pub unverifiable: Vec<UnverifiableWindow>,
    pub summary: RangeSummary,
}

impl RangeReport {
    pub fn all_verified(&self) -> bool {
        self.unverifiable.is_empty()
            && self.summary.discrepancies.is_empty()
            && self.summary.bound_violations.is_empty()
    }
}

fn refine_bracket(mut lo: f64, mut z_lo: f64, mut hi: f64, p: &EvalParams) -> Result<ZeroRecord> {
    while hi - lo > REFINEMENT_WIDTH {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let z_mid = hardy_z(mid, p)?;
        if (z_mid < 0.0) == (z_lo < 0.0) {
            lo = mid;
            z_lo = z_mid;
        } else {
            hi = mid;
        }
    }
    Ok(ZeroRecord {
        bracket_lo: lo,
        bracket_hi: hi,
        refined_t: 0.5 * (lo + hi),
        refinement_width: hi - lo,
        window_verified: false,
    })
}

/// Brackets every sign change of `Z` on a grid of spacing at most
/// `initial_step`, then bisects each bracket to width `1e-9`.
///
/// Zeros of even multiplicity, or pairs closer than the grid spacing, are
/// invisible here; compare against [`crate::count_zeros_to`] to detect them.
pub fn scan_zeros(
    t_min: f64,
    t_max: f64,
    initial_step: f64,
    p: &EvalParams,
) -> Result<Vec<ZeroRecord>> {
    if !(t_min.is_finite() && t_max.is_finite() && 2.0 <= t_min && t_min < t_max) {
        return Err(Error::Domain(t_min, "scan needs 2 <= t_min < t_max"));
    }
    if !(initial_step > 0.0 && initial_step <= 0.25) {
        return Err(Error::Domain(
            initial_step,
            "scan step must lie in (0, 0.25]",
        ));
    }
    let n = ((t_max - t_min) / initial_step).ceil().max(1.0) as usize;
    let grid: Vec<f64> = (0..=n)
        .map(|k| {
            if k == n {
                t_max
            } else {
                t_min + (t_max - t_min) * k as f64 / n as f64
            }
        })
        .collect();
    let values = grid
        .par_iter()
        .map(|&t| hardy_z(t, p))
        .collect::<Result<Vec<_>>>()?;

    let brackets: Vec<(f64, f64, f64)> = (0..n)
        .filter(|&k| (values[k] < 0.0) != (values[k + 1] < 0.0))
        .map(|k| (grid[k], values[k], grid[k + 1]))
        .collect();
    brackets
        .par_iter()
        .map(|&(lo, z_lo, hi)| refine_bracket(lo, z_lo, hi, p))
        .collect()
}

/// [`verify_range_with_step`] at the default scan step.
pub fn verify_range(t_min: f64, t_max: f64, p: &EvalParams) -> Result<RangeReport> {
    verify_range_with_step(t_min, t_max, DEFAULT_SCAN_STEP, p)
}

enum WindowOutcome {
    Done(WindowReport),
    Unverifiable(UnverifiableWindow),
}

fn verify_window(lo: f64, hi: f64, p: &EvalParams) -> Result<WindowOutcome> {
    let mut reason = String::new();
    for epsilon in EPSILON_LADDER {
        let w = WindowSpec::new(0.5 * (lo + hi), 0.5 * (hi - lo), epsilon)?;
        match window_count(&w, p) {
            Ok(r) => return Ok(WindowOutcome::Done(r)),
            Err(
                e @ (Error::ZeroOnPath { .. }
                | Error::Quantization { .. }
                | Error::RefinementBudget { .. }),
            ) => reason = e.to_string(),
            Err(e) => return Err(e),
        }
    }
    Ok(WindowOutcome::Unverifiable(UnverifiableWindow {
        t_lo: lo,
        t_hi: hi,
        reason,
    }))
}

/// Scans `[t_min, t_max]` for critical-line zeros, partitions the range into
/// one window per zero (split at midpoints between neighbouring zeros, outer
/// windows clamped to the range) and checks that each window count equals the
/// number of zeros found on the line inside it.
pub fn verify_range_with_step(
    t_min: f64,
    t_max: f64,
    step: f64,
    p: &EvalParams,
) -> Result<RangeReport> {
    if !(t_min.is_finite() && t_max.is_finite() && t_min > 3.0 && t_max > t_min) {
        return Err(Error::Domain(t_min, "verification needs 3 < t_min < t_max"));
    }
    let mut zeros = scan_zeros(t_min, t_max, step, p)?;

    let mut bounds = vec![t_min];
    bounds.extend(
        zeros
            .windows(2)
            .map(|z| 0.5 * (z[0].refined_t + z[1].refined_t)),
    );
    bounds.push(t_max);

    let outcomes = bounds
        .par_windows(2)
        .map(|b| verify_window(b[0], b[1], p))
        .collect::<Result<Vec<_>>>()?;

    let mut windows = Vec::new();
    let mut unverifiable = Vec::new();
    let mut discrepancies = Vec::new();
    let mut bound_violations = Vec::new();
    for (i, outcome) in outcomes.into_iter().enumerate() {
        let (lo, hi) = (bounds[i], bounds[i + 1]);
        match outcome {
            WindowOutcome::Done(r) => {
                let on_line = zeros
                    .iter()
                    .filter(|z| lo < z.refined_t && z.refined_t <= hi)
                    .count() as i64;
                if r.window_count == on_line {
                    for z in zeros
                        .iter_mut()
                        .filter(|z| lo < z.refined_t && z.refined_t <= hi)
                    {
                        z.window_verified = true;
                    }
                } else {
                    discrepancies.push(r.t_center);
                }
                let half = 0.5 + 1e-6;
                if r.hypothesis_holds()
                    && (!r.bound_satisfied || r.c11_term.abs() > half || r.c12_term.abs() > half)
                {
                    bound_violations.push(r.t_center);
                }
                windows.push(r);
            }
            WindowOutcome::Unverifiable(u) => unverifiable.push(u),
        }
    }

    let summary = RangeSummary {
        total_zeros: zeros.len(),
        total_windows: bounds.len() - 1,
        verified_windows: windows.len() - discrepancies.len(),
        unverifiable_windows: unverifiable.len(),
        discrepancies,
        bound_violations,
    };
    Ok(RangeReport {
        t_min,
        t_max,
        zeros,
        windows,
        unverifiable,
        summary,
    })
}
