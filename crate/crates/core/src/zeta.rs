//! Riemann zeta, its derivative, the completed xi function, Riemann–Siegel
//! theta and Hardy's Z on the critical line.
//!
//! Zeta is evaluated by Euler–Maclaurin summation with a main sum of length
//! `N = max(ceil(|t|/2) + 10, 20)` and twelve Bernoulli correction terms. The
//! magnitude of the first omitted correction serves as the error estimate; `N`
//! is doubled until that estimate meets `target_eps`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::complex_fn::{complex_log_gamma, ComplexValue, EvalParams};
use crate::error::{Error, Result};

/// Radius of the excluded disc around the pole at `s = 1`.
pub const ZETA_POLE_GUARD: f64 = 1e-3;

/// Largest imaginary residue tolerated by [`hardy_z`] before the rotation is
/// declared inconsistent.
pub const HARDY_Z_RESIDUE_LIMIT: f64 = 1e-8;

const BERNOULLI_TERMS: usize = 12;

/// `B_{2k} / (2k)!` for k = 1..=13; the last entry only feeds the error estimate.
const BERNOULLI_OVER_FACTORIAL: [f64; BERNOULLI_TERMS + 1] = [
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40_320.0,
    5.0 / 66.0 / 3_628_800.0,
    -691.0 / 2730.0 / 479_001_600.0,
    7.0 / 6.0 / 87_178_291_200.0,
    -3617.0 / 510.0 / 20_922_789_888_000.0,
    43_867.0 / 798.0 / 6_402_373_705_728_000.0,
    -174_611.0 / 330.0 / 2_432_902_008_176_640_000.0,
    854_513.0 / 138.0 / 1.124_000_727_777_607_7e21,
    -236_364_091.0 / 2730.0 / 6.204_484_017_332_394e23,
    8_553_103.0 / 6.0 / 4.032_914_611_266_056_4e26,
];

/// A zeta-family value together with its estimated absolute truncation error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZetaEvaluation {
    pub value: ComplexValue,
    pub est_abs_err: f64,
}

/// Pieces of one Euler–Maclaurin pass at main-sum length `n`.
///
/// `regular` collects everything except `N^{1-s}/(s-1)`, which is kept apart
/// as `pole_numer` so callers can cancel the pole analytically.
struct EmPass {
    regular: Complex64,
    pole_numer: Complex64,
    d_regular: Complex64,
    ln_n: f64,
    err: f64,
}

fn em_pass(s: Complex64, n: usize, derivative: bool) -> EmPass {
    let mut regular = Complex64::new(0.0, 0.0);
    let mut d_regular = Complex64::new(0.0, 0.0);
    for k in 1..n {
        let ln_k = (k as f64).ln();
        let term = (-s * ln_k).exp();
        regular += term;
        if derivative {
            d_regular -= term * ln_k;
        }
    }
    let ln_n = (n as f64).ln();
    let n_pow = (-s * ln_n).exp();
    regular += n_pow * 0.5;
    if derivative {
        d_regular -= n_pow * (0.5 * ln_n);
    }

    // rising = s (s+1) ... (s+2k-2), tracked with its derivative in s.
    let mut rising = s;
    let mut d_rising = Complex64::new(1.0, 0.0);
    let mut n_power = n_pow / n as f64; // N^{-s-1}
    let inv_n2 = 1.0 / (n as f64 * n as f64);
    let mut err = 0.0;
    for (k, &c) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        let term = rising * n_power * c;
        if k == BERNOULLI_TERMS {
            err = term.norm();
            if derivative {
                err = err.max(((d_rising - rising * ln_n) * n_power * c).norm());
            }
            break;
        }
        regular += term;
        if derivative {
            d_regular += (d_rising - rising * ln_n) * n_power * c;
        }
        for j in [2 * k + 1, 2 * k + 2] {
            let f = s + j as f64;
            d_rising = d_rising * f + rising;
            rising *= f;
        }
        n_power *= inv_n2;
    }

    EmPass {
        regular,
        pole_numer: n_pow * n as f64,
        d_regular,
        ln_n,
        err,
    }
}

fn initial_terms(s: Complex64) -> usize {
    ((s.im.abs() / 2.0).ceil() as usize + 10).max(20)
}

/// Runs Euler–Maclaurin passes with a doubling main sum until the error
/// estimate meets the target.
fn converge(s: Complex64, p: &EvalParams, derivative: bool) -> Result<EmPass> {
    p.validate()?;
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::Domain(s.re, "zeta needs a finite argument"));
    }
    let mut n = initial_terms(s).min(p.max_series_terms);
    loop {
        let pass = em_pass(s, n, derivative);
        if pass.err <= p.target_eps {
            return Ok(pass);
        }
        if n >= p.max_series_terms {
            return Err(Error::NonConvergence {
                terms: n,
                est_err: pass.err,
            });
        }
        n = (2 * n).min(p.max_series_terms);
    }
}

fn check_pole(s: Complex64) -> Result<()> {
    if (s - 1.0).norm() < ZETA_POLE_GUARD {
        Err(Error::ZetaPole(s))
    } else {
        Ok(())
    }
}

impl EmPass {
    fn zeta(&self, s: Complex64) -> Complex64 {
        self.regular + self.pole_numer / (s - 1.0)
    }

    fn zeta_prime(&self, s: Complex64) -> Complex64 {
        let w = s - 1.0;
        self.d_regular - self.pole_numer * (self.ln_n * w + 1.0) / (w * w)
    }
}

/// `zeta(s)` by Euler–Maclaurin summation.
pub fn zeta(s: ComplexValue, p: &EvalParams) -> Result<ZetaEvaluation> {
    check_pole(s)?;
    let e = converge(s, p, false)?;
    Ok(ZetaEvaluation {
        value: e.zeta(s),
        est_abs_err: e.err,
    })
}

/// `zeta'(s)` from the term-wise differentiated Euler–Maclaurin formula.
pub fn zeta_prime(s: ComplexValue, p: &EvalParams) -> Result<ZetaEvaluation> {
    check_pole(s)?;
    let e = converge(s, p, true)?;
    Ok(ZetaEvaluation {
        value: e.zeta_prime(s),
        est_abs_err: e.err,
    })
}

/// `zeta(s)` and `zeta'(s)` from a single differentiated pass.
pub fn zeta_and_prime(s: ComplexValue, p: &EvalParams) -> Result<(ZetaEvaluation, ZetaEvaluation)> {
    check_pole(s)?;
    let e = converge(s, p, true)?;
    Ok((
        ZetaEvaluation {
            value: e.zeta(s),
            est_abs_err: e.err,
        },
        ZetaEvaluation {
            value: e.zeta_prime(s),
            est_abs_err: e.err,
        },
    ))
}

/// `(s - 1) zeta(s)`, finite at `s = 1` where it equals 1.
pub fn zeta_times_s_minus_one(s: ComplexValue, p: &EvalParams) -> Result<ZetaEvaluation> {
    let e = converge(s, p, false)?;
    Ok(ZetaEvaluation {
        value: e.regular * (s - 1.0) + e.pole_numer,
        est_abs_err: e.err * (s - 1.0).norm(),
    })
}

/// `ln( pi^{-s/2} Gamma(1 + s/2) )`
fn ln_xi_factor(s: Complex64) -> Result<Complex64> {
    Ok(complex_log_gamma(1.0 + s * 0.5)? - s * (0.5 * PI.ln()))
}

/// The completed zeta function `xi(s) = s(s-1)/2 pi^{-s/2} Gamma(s/2) zeta(s)`.
///
/// Written as `pi^{-s/2} Gamma(1 + s/2) (s-1) zeta(s)` so neither the Gamma pole
/// at 0 nor the zeta pole at 1 appears.
pub fn xi(s: ComplexValue, p: &EvalParams) -> Result<ComplexValue> {
    let z = zeta_times_s_minus_one(s, p)?;
    Ok(ln_xi_factor(s)?.exp() * z.value)
}

/// `xi(s) * exp(pi |Im s| / 4)`.
///
/// The positive real factor cancels the exponential decay of the Gamma factor
/// so magnitudes stay near unity high in the strip. Argument and zeros are
/// those of `xi`.
pub fn xi_normalized(s: ComplexValue, p: &EvalParams) -> Result<ComplexValue> {
    let z = zeta_times_s_minus_one(s, p)?;
    Ok((ln_xi_factor(s)? + 0.25 * PI * s.im.abs()).exp() * z.value)
}

/// Riemann–Siegel theta `Im ln Gamma(1/4 + it/2) - (t/2) ln pi`.
pub fn theta_exact(t: f64) -> Result<f64> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::Domain(t, "theta needs t > 0"));
    }
    let lg = complex_log_gamma(Complex64::new(0.25, 0.5 * t))?;
    Ok(lg.im - 0.5 * t * PI.ln())
}

/// The five-term expansion
/// `(t/2) ln(t/2pi) - t/2 - pi/8 + 1/(48t) + 7/(5760 t^3)`.
pub fn theta_asymptotic(t: f64) -> Result<f64> {
    if !(t.is_finite() && t >= 10.0) {
        return Err(Error::Domain(t, "asymptotic theta needs t >= 10"));
    }
    Ok(0.5 * t * (t / (2.0 * PI)).ln() - 0.5 * t - PI / 8.0
        + 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t * t * t))
}

/// Hardy's `Z(t) = exp(i theta(t)) zeta(1/2 + it)`, real for real `t`.
pub fn hardy_z(t: f64, p: &EvalParams) -> Result<f64> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::Domain(t, "Z needs t > 0"));
    }
    let theta = theta_exact(t)?;
    let z = zeta(Complex64::new(0.5, t), p)?.value;
    let rotated = Complex64::from_polar(1.0, theta) * z;
    if rotated.im.abs() > HARDY_Z_RESIDUE_LIMIT {
        return Err(Error::RotationResidue {
            t,
            residue: rotated.im.abs(),
        });
    }
    Ok(rotated.re)
}
