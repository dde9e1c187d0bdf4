//! Axis-aligned contours and branch-tracked argument accumulation.
//!
//! `Im` of the integral of `f'/f` along a path is the continuous change of
//! `arg f` along it. The tracker samples `f` adaptively and sums principal
//! argument increments between neighbouring samples; once every increment is
//! small the sum telescopes to the continuous change, so the only error left
//! is the error in the end-point values of `f`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::complex_fn::{principal_arg_delta, ComplexValue, EvalParams};
use crate::error::{Error, Result};
use crate::zeta::{zeta_and_prime, ZETA_POLE_GUARD};

/// `|f|` below which a path is considered to pass through a zero.
pub const ZERO_ON_PATH_THRESHOLD: f64 = 1e-8;

/// Finest path-parameter step used when separating sign changes of `Re zeta`.
pub const SIGN_CHANGE_RESOLUTION: f64 = 1e-4;

/// Initial sample spacing before adaptive refinement.
const BASE_STEP: f64 = 0.25;

const SIGN_SCAN_STEP: f64 = 0.05;

/// Ordered polyline of axis-aligned segments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContourPath {
    vertices: Vec<ComplexValue>,
    closed: bool,
}

impl ContourPath {
    pub fn new(vertices: Vec<ComplexValue>, closed: bool) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::InvalidPath(
                "a path needs at least two vertices".into(),
            ));
        }
        if vertices
            .iter()
            .any(|v| !(v.re.is_finite() && v.im.is_finite()))
        {
            return Err(Error::InvalidPath("non-finite vertex".into()));
        }
        for w in vertices.windows(2) {
            let same_re = w[0].re == w[1].re;
            let same_im = w[0].im == w[1].im;
            if same_re == same_im {
                return Err(Error::InvalidPath(format!(
                    "segment {} -> {} is not axis-aligned with non-zero length",
                    w[0], w[1]
                )));
            }
        }
        if closed && vertices.first() != vertices.last() {
            return Err(Error::InvalidPath(
                "closed path must end where it starts".into(),
            ));
        }
        Ok(Self { vertices, closed })
    }

    pub fn vertices(&self) -> &[ComplexValue] {
        &self.vertices
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn start(&self) -> ComplexValue {
        self.vertices[0]
    }

    pub fn end(&self) -> ComplexValue {
        self.vertices[self.vertices.len() - 1]
    }

    pub fn segments(&self) -> impl Iterator<Item = (ComplexValue, ComplexValue)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn length(&self) -> f64 {
        self.segments().map(|(a, b)| (b - a).norm()).sum()
    }

    /// Same geometry traversed backwards.
    pub fn reversed(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Self {
            vertices,
            closed: self.closed,
        }
    }

    /// `self` followed by `next`; `next` must begin where `self` ends.
    pub fn concat(&self, next: &ContourPath) -> Result<Self> {
        if self.end() != next.start() {
            return Err(Error::InvalidPath(format!(
                "cannot join a path ending at {} to one starting at {}",
                self.end(),
                next.start()
            )));
        }
        let mut vertices = self.vertices.clone();
        vertices.extend_from_slice(&next.vertices[1..]);
        let closed = vertices.first() == vertices.last();
        // Collinear joins are fine; a zero-length join cannot occur since both
        // inputs are valid.
        Ok(Self { vertices, closed })
    }

    /// Splits every segment into `pieces` equal parts.
    pub fn refined(&self, pieces: usize) -> Self {
        let pieces = pieces.max(1);
        let mut vertices = vec![self.start()];
        for (a, b) in self.segments() {
            for k in 1..pieces {
                let mut v = a + (b - a) * (k as f64 / pieces as f64);
                // keep the fixed coordinate bit-identical
                if a.re == b.re {
                    v.re = a.re;
                } else {
                    v.im = a.im;
                }
                vertices.push(v);
            }
            vertices.push(b);
        }
        Self {
            vertices,
            closed: self.closed,
        }
    }

    /// A closed path re-based to begin at vertex `k`.
    pub fn starting_at(&self, k: usize) -> Result<Self> {
        if !self.closed {
            return Err(Error::InvalidPath(
                "only closed paths can be re-based".into(),
            ));
        }
        let n = self.vertices.len() - 1;
        let k = k % n;
        let mut vertices: Vec<_> = (0..n).map(|i| self.vertices[(k + i) % n]).collect();
        vertices.push(vertices[0]);
        Ok(Self {
            vertices,
            closed: true,
        })
    }

    /// Smallest distance from any point of the path to `z`.
    pub fn distance_to(&self, z: ComplexValue) -> f64 {
        self.segments()
            .map(|(a, b)| {
                let d = b - a;
                let u = (((z - a) * d.conj()).re / d.norm_sqr()).clamp(0.0, 1.0);
                (a + d * u - z).norm()
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Rejects paths that come within the guard radius of the zeta pole.
    pub fn check_pole_guard(&self) -> Result<()> {
        if self.distance_to(Complex64::new(1.0, 0.0)) < ZETA_POLE_GUARD {
            Err(Error::PoleGuard)
        } else {
            Ok(())
        }
    }
}

/// Closed counterclockwise boundary of `[sigma_min, sigma_max] x [t_min, t_max]`.
pub fn rect_boundary(
    sigma_min: f64,
    sigma_max: f64,
    t_min: f64,
    t_max: f64,
) -> Result<ContourPath> {
    if !(sigma_min < sigma_max && t_min < t_max) {
        return Err(Error::InvalidPath(format!(
            "empty rectangle [{sigma_min}, {sigma_max}] x [{t_min}, {t_max}]"
        )));
    }
    let c = Complex64::new;
    ContourPath::new(
        vec![
            c(sigma_min, t_min),
            c(sigma_max, t_min),
            c(sigma_max, t_max),
            c(sigma_min, t_max),
            c(sigma_min, t_min),
        ],
        true,
    )
}

/// `1 + eps -> 1 + eps + i h -> 1/2 + i h`: the leg of the zero-counting
/// rectangle whose argument change carries the fluctuating part of `N(h)`.
pub fn backlund_l_path(epsilon: f64, height: f64) -> Result<ContourPath> {
    if !(epsilon > 0.0 && height > 1.0) {
        return Err(Error::InvalidPath(format!(
            "L-path needs epsilon > 0 and height > 1 (got {epsilon}, {height})"
        )));
    }
    let c = Complex64::new;
    ContourPath::new(
        vec![
            c(1.0 + epsilon, 0.0),
            c(1.0 + epsilon, height),
            c(0.5, height),
        ],
        false,
    )
}

/// `1/2 + i lo -> 1 + eps + i lo -> 1 + eps + i hi -> 1/2 + i hi`.
///
/// This is the reversed lower L-path followed by the upper one with the
/// shared stretch of `Re s = 1 + eps` below `lo` cancelled, so its argument
/// change equals the difference of the two L-path changes.
pub fn window_side_path(epsilon: f64, lo: f64, hi: f64) -> Result<ContourPath> {
    if !(epsilon > 0.0 && lo < hi) {
        return Err(Error::InvalidPath(format!(
            "window path needs epsilon > 0 and lo < hi (got {epsilon}, {lo}, {hi})"
        )));
    }
    let c = Complex64::new;
    ContourPath::new(
        vec![
            c(0.5, lo),
            c(1.0 + epsilon, lo),
            c(1.0 + epsilon, hi),
            c(0.5, hi),
        ],
        false,
    )
}

/// Outcome of tracking `arg f` along a path.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArgTrackResult {
    /// Continuous change of `arg f` in radians.
    pub arg_change: f64,
    pub samples_used: usize,
    pub min_abs_f: f64,
}

/// One accepted sample of a tracked path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArgSample {
    pub point: ComplexValue,
    pub value: ComplexValue,
    pub accumulated_arg: f64,
}

struct Tracker<'a, F> {
    f: &'a F,
    max_depth: usize,
    samples: Vec<ArgSample>,
    accumulated: f64,
    min_abs: f64,
    keep_samples: bool,
    count: usize,
}

impl<F> Tracker<'_, F>
where
    F: Fn(ComplexValue) -> Result<ComplexValue>,
{
    fn eval(&mut self, s: ComplexValue) -> Result<ComplexValue> {
        let v = (self.f)(s)?;
        let m = v.norm();
        if !m.is_finite() {
            return Err(Error::Domain(
                s.re,
                "function value is not finite on the path",
            ));
        }
        if m < ZERO_ON_PATH_THRESHOLD {
            return Err(Error::ZeroOnPath { at: s, abs: m });
        }
        self.min_abs = self.min_abs.min(m);
        Ok(v)
    }

    fn push(&mut self, point: ComplexValue, value: ComplexValue) {
        self.count += 1;
        if self.keep_samples {
            self.samples.push(ArgSample {
                point,
                value,
                accumulated_arg: self.accumulated,
            });
        }
    }

    /// Accumulates the increment from `(a, fa)` to `(b, fb)`, bisecting until
    /// neighbouring samples are close enough that the principal increment is
    /// the continuous one.
    fn refine(
        &mut self,
        a: ComplexValue,
        fa: ComplexValue,
        b: ComplexValue,
        fb: ComplexValue,
        depth: usize,
    ) -> Result<()> {
        let delta = principal_arg_delta(fa, fb)?;
        if delta.abs() < FRAC_PI_2 && (fb / fa - 1.0).norm() < 0.5 {
            self.accumulated += delta;
            self.push(b, fb);
            return Ok(());
        }
        if depth >= self.max_depth {
            return Err(Error::RefinementBudget { at: a });
        }
        let mut m = (a + b) * 0.5;
        if a.re == b.re {
            m.re = a.re;
        } else {
            m.im = a.im;
        }
        let fm = self.eval(m)?;
        self.refine(a, fa, m, fm, depth + 1)?;
        self.refine(m, fm, b, fb, depth + 1)
    }
}

/// Tracks `arg f` along `path`, returning every accepted sample.
pub fn trace_arg_along<F>(
    path: &ContourPath,
    f: &F,
    p: &EvalParams,
) -> Result<(ArgTrackResult, Vec<ArgSample>)>
where
    F: Fn(ComplexValue) -> Result<ComplexValue>,
{
    run_tracker(path, f, p, true)
}

/// Continuous change of `arg f` along `path`, i.e. `Im` of the integral of
/// `f'/f`.
pub fn track_arg_along<F>(path: &ContourPath, f: &F, p: &EvalParams) -> Result<ArgTrackResult>
where
    F: Fn(ComplexValue) -> Result<ComplexValue>,
{
    run_tracker(path, f, p, false).map(|(r, _)| r)
}

fn run_tracker<F>(
    path: &ContourPath,
    f: &F,
    p: &EvalParams,
    keep_samples: bool,
) -> Result<(ArgTrackResult, Vec<ArgSample>)>
where
    F: Fn(ComplexValue) -> Result<ComplexValue>,
{
    p.validate()?;
    let mut tr = Tracker {
        f,
        max_depth: p.max_refine_depth,
        samples: Vec::new(),
        accumulated: 0.0,
        min_abs: f64::INFINITY,
        keep_samples,
        count: 0,
    };
    let start = path.start();
    let mut prev = tr.eval(start)?;
    tr.push(start, prev);
    for (a, b) in path.segments() {
        let pieces = ((b - a).norm() / BASE_STEP).ceil().max(1.0) as usize;
        let mut left = a;
        for k in 1..=pieces {
            let right = if k == pieces {
                b
            } else {
                let mut v = a + (b - a) * (k as f64 / pieces as f64);
                if a.re == b.re {
                    v.re = a.re;
                } else {
                    v.im = a.im;
                }
                v
            };
            let fr = tr.eval(right)?;
            tr.refine(left, prev, right, fr, 0)?;
            left = right;
            prev = fr;
        }
    }
    let result = ArgTrackResult {
        arg_change: tr.accumulated,
        samples_used: tr.count,
        min_abs_f: tr.min_abs,
    };
    Ok((result, tr.samples))
}

/// Winding number of `f` around the origin along a closed path, i.e. zeros
/// minus poles of `f` enclosed by a counterclockwise path.
pub fn winding_number<F>(closed_path: &ContourPath, f: &F, p: &EvalParams) -> Result<i64>
where
    F: Fn(ComplexValue) -> Result<ComplexValue>,
{
    if !closed_path.is_closed() {
        return Err(Error::InvalidPath(
            "winding number needs a closed path".into(),
        ));
    }
    let turns = track_arg_along(closed_path, f, p)?.arg_change / (2.0 * PI);
    let rounded = turns.round();
    if (turns - rounded).abs() > 0.1 {
        return Err(Error::Quantization { value: turns });
    }
    Ok(rounded as i64)
}

/// Sign changes of `Re zeta` along a path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SignChangeCount {
    pub changes: usize,
    /// Near-touches of zero that could not be told apart from a double
    /// crossing at the finest resolution; counted as no change.
    pub tangency_warnings: usize,
}

#[derive(Clone, Copy)]
struct ReSample {
    u: f64,
    re: f64,
    slope: f64,
}

/// Counts sign changes of `Re zeta` along `path`.
///
/// Samples start `0.05` apart and are bisected wherever the values and
/// directional derivatives at the ends of an interval leave room for an
/// unseen pair of crossings, down to a step of `1e-4`.
pub fn count_real_part_sign_changes(path: &ContourPath, p: &EvalParams) -> Result<SignChangeCount> {
    p.validate()?;
    path.check_pole_guard()?;
    let mut total = SignChangeCount::default();
    for (a, b) in path.segments() {
        let len = (b - a).norm();
        let dir = (b - a) / len;
        let sample = |u: f64| -> Result<ReSample> {
            let mut s = a + dir * u;
            if a.re == b.re {
                s.re = a.re;
            } else {
                s.im = a.im;
            }
            let (z, dz) = zeta_and_prime(s, p)?;
            Ok(ReSample {
                u,
                re: z.value.re,
                slope: (dz.value * dir).re,
            })
        };
        let pieces = (len / SIGN_SCAN_STEP).ceil().max(1.0) as usize;
        let mut left = sample(0.0)?;
        for k in 1..=pieces {
            let u = if k == pieces {
                len
            } else {
                len * k as f64 / pieces as f64
            };
            let right = sample(u)?;
            count_interval(&sample, left, right, &mut total)?;
            left = right;
        }
    }
    Ok(total)
}

fn count_interval<S>(sample: &S, l: ReSample, r: ReSample, acc: &mut SignChangeCount) -> Result<()>
where
    S: Fn(f64) -> Result<ReSample>,
{
    let h = r.u - l.u;
    let crosses = (l.re < 0.0) != (r.re < 0.0);
    let max_slope = l.slope.abs().max(r.slope.abs());
    let resolved = if crosses {
        let secant = r.re - l.re;
        l.slope * secant > 0.0 && r.slope * secant > 0.0
    } else {
        l.re.abs().min(r.re.abs()) > h * max_slope
    };
    if resolved {
        if crosses {
            acc.changes += 1;
        }
        return Ok(());
    }
    if h <= SIGN_CHANGE_RESOLUTION {
        if crosses {
            acc.changes += 1;
        } else {
            acc.tangency_warnings += 1;
        }
        return Ok(());
    }
    let m = sample(0.5 * (l.u + r.u))?;
    count_interval(sample, l, m, acc)?;
    count_interval(sample, m, r, acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn p() -> EvalParams {
        EvalParams::default()
    }

    #[test]
    fn rectangle_construction() {
        let r = rect_boundary(0.0, 1.0, 0.0, 1.0).unwrap();
        assert_eq!(r.vertices().len(), 5);
        assert!(r.is_closed());
        assert_eq!(r.vertices()[1], c(1.0, 0.0));
        assert_eq!(r.vertices()[2], c(1.0, 1.0));
        // signed area positive = counterclockwise
        let area: f64 = r
            .segments()
            .map(|(a, b)| a.re * b.im - b.re * a.im)
            .sum::<f64>()
            * 0.5;
        assert!((area - 1.0).abs() < 1e-15);
        assert!(r.check_pole_guard().is_err());
        assert!(rect_boundary(0.0, 1.0, 2.0, 2.0).is_err());
        assert!(rect_boundary(1.0, 0.0, 0.0, 2.0).is_err());

        let window = rect_boundary(-0.1, 1.1, 19.5, 20.5).unwrap();
        assert!(window.check_pole_guard().is_ok());
        assert_eq!(window.vertices()[0], c(-0.1, 19.5));
    }

    #[test]
    fn l_path_construction() {
        let l = backlund_l_path(0.1, 20.0).unwrap();
        assert_eq!(l.vertices(), &[c(1.1, 0.0), c(1.1, 20.0), c(0.5, 20.0)]);
        assert!(!l.is_closed());
        assert!(backlund_l_path(0.0, 20.0).is_err());
        assert!(backlund_l_path(0.1, 0.5).is_err());
    }

    #[test]
    fn path_validation() {
        assert!(ContourPath::new(vec![c(0.0, 0.0)], false).is_err());
        assert!(ContourPath::new(vec![c(0.0, 0.0), c(1.0, 1.0)], false).is_err());
        assert!(ContourPath::new(vec![c(0.0, 0.0), c(0.0, 0.0)], false).is_err());
        assert!(ContourPath::new(vec![c(0.0, 0.0), c(1.0, 0.0)], true).is_err());
    }

    #[test]
    fn identity_winds_once_around_square() {
        let sq = rect_boundary(-1.0, 1.0, -1.0, 1.0).unwrap();
        let r = track_arg_along(&sq, &|z| Ok(z), &p()).unwrap();
        assert!((r.arg_change - 2.0 * PI).abs() < 1e-9);
        assert!(r.min_abs_f >= 1.0 - 1e-12);
    }

    #[test]
    fn winding_examples() {
        let sq = rect_boundary(-0.5, 0.5, -0.5, 0.5).unwrap();
        assert_eq!(winding_number(&sq, &|z| Ok(z * z), &p()).unwrap(), 2);
        assert_eq!(winding_number(&sq, &|z| Ok(z - 10.0), &p()).unwrap(), 0);
        let open = backlund_l_path(0.1, 2.0).unwrap();
        assert!(winding_number(&open, &|z| Ok(z), &p()).is_err());
    }

    #[test]
    fn zero_on_path_is_reported() {
        let sq = rect_boundary(-0.5, 0.5, -0.5, 0.5).unwrap();
        let err = track_arg_along(&sq, &|z| Ok(z - c(0.5, 0.1)), &p()).unwrap_err();
        assert!(matches!(err, Error::ZeroOnPath { .. }), "{err:?}");
    }

    #[test]
    fn refinement_budget_is_reported() {
        let shallow = EvalParams {
            max_refine_depth: 4,
            ..p()
        };
        let sq = rect_boundary(-0.5, 0.5, -0.5, 0.5).unwrap();
        let err = track_arg_along(&sq, &|z| Ok(z - c(0.5 + 1e-6, 0.1)), &shallow).unwrap_err();
        assert!(matches!(err, Error::RefinementBudget { .. }), "{err:?}");
    }

    #[test]
    fn reversal_and_concatenation() {
        let f = |z: Complex64| Ok((z - c(0.3, 0.2)) * (z + c(0.1, 0.7)) / (z - c(2.0, -0.4)));
        let p1 = ContourPath::new(vec![c(-1.0, -1.0), c(1.0, -1.0), c(1.0, 1.0)], false).unwrap();
        let p2 = ContourPath::new(vec![c(1.0, 1.0), c(-1.0, 1.0), c(-1.0, 0.3)], false).unwrap();
        let a = track_arg_along(&p1, &f, &p()).unwrap().arg_change;
        let b = track_arg_along(&p2, &f, &p()).unwrap().arg_change;
        let ab = track_arg_along(&p1.concat(&p2).unwrap(), &f, &p())
            .unwrap()
            .arg_change;
        let rev = track_arg_along(&p1.reversed(), &f, &p())
            .unwrap()
            .arg_change;
        assert!((ab - a - b).abs() < 1e-9);
        assert!((rev + a).abs() < 1e-9);
        assert!(p2.concat(&p1).is_err());
    }

    #[test]
    fn winding_invariant_under_refinement_and_rebasing() {
        let f = |z: Complex64| Ok((z - c(0.2, 0.1)).powi(3) / (z + c(0.4, -0.3)));
        let sq = rect_boundary(-1.0, 1.0, -1.0, 1.0).unwrap();
        let base = winding_number(&sq, &f, &p()).unwrap();
        assert_eq!(base, 2);
        assert_eq!(winding_number(&sq.refined(7), &f, &p()).unwrap(), base);
        for k in 0..4 {
            assert_eq!(
                winding_number(&sq.starting_at(k).unwrap(), &f, &p()).unwrap(),
                base
            );
        }
    }

    #[test]
    fn distance_and_pole_guard() {
        let l = backlund_l_path(0.0005, 3.0).unwrap();
        assert!(l.check_pole_guard().is_err());
        let l = backlund_l_path(0.1, 3.0).unwrap();
        assert!((l.distance_to(c(1.0, 0.0)) - 0.1).abs() < 1e-15);
        assert!(matches!(
            count_real_part_sign_changes(&backlund_l_path(0.0005, 3.0).unwrap(), &p()),
            Err(Error::PoleGuard)
        ));
    }

    #[test]
    fn re_zeta_positive_right_of_one() {
        let seg = ContourPath::new(vec![c(1.5, 0.0), c(2.0, 0.0)], false).unwrap();
        let n = count_real_part_sign_changes(&seg, &p()).unwrap();
        assert_eq!(n, SignChangeCount::default());
    }

    #[test]
    fn re_zeta_changes_sign_through_first_zero() {
        let seg = ContourPath::new(vec![c(0.5, 13.5), c(0.5, 14.5)], false).unwrap();
        let n = count_real_part_sign_changes(&seg, &p()).unwrap();
        assert!(n.changes >= 1);
    }

    #[test]
    fn window_side_path_geometry() {
        let w = window_side_path(0.1, 19.5, 20.5).unwrap();
        assert_eq!(w.start(), c(0.5, 19.5));
        assert_eq!(w.end(), c(0.5, 20.5));
        assert!(window_side_path(0.1, 2.0, 1.0).is_err());
    }
}
