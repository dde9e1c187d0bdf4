//! Numerical zero counting for the Riemann zeta function.
//!
//! The crate evaluates zeta, xi and the Riemann–Siegel theta function, tracks
//! the continuous argument of analytic functions along axis-aligned contours,
//! and combines the two into zero counts `N(T)` and height-window counts
//! `N(T + delta) - N(T - delta)`. An independent sign-change scan of Hardy's Z
//! function locates critical-line zeros so every window count can be checked
//! against the zeros actually found on the line.

pub mod backlund;
pub mod complex_fn;
pub mod contour;
pub mod error;
pub mod locator;
pub mod zeta;

pub use backlund::{
    count_zeros_to, select_window_params, theta_window_term, window_count, WindowReport, WindowSpec,
};
pub use complex_fn::{complex_log_gamma, principal_arg_delta, ComplexValue, EvalParams};
pub use contour::{
    backlund_l_path, count_real_part_sign_changes, rect_boundary, track_arg_along, winding_number,
    ArgTrackResult, ContourPath, SignChangeCount,
};
pub use error::{Error, Result};
pub use locator::{
    scan_zeros, verify_range, verify_range_with_step, RangeReport, RangeSummary,
    UnverifiableWindow, ZeroRecord,
};
pub use zeta::{hardy_z, theta_asymptotic, theta_exact, xi, zeta, zeta_prime, ZetaEvaluation};
