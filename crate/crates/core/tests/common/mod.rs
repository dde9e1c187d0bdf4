//! Test-only oracles that share no code path with the library evaluators.
#![allow(dead_code)]

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

const EULER_ORDER: usize = 40;

/// Dirichlet eta by direct summation of the first `M` terms and a fixed-order
/// Euler transformation of the alternating tail.
pub fn eta(s: Complex64) -> Complex64 {
    let m = (2.0 * s.im.abs()).ceil() as usize + 50;
    let term = |n: usize| (-s * ((n + 1) as f64).ln()).exp();
    let mut head = Complex64::new(0.0, 0.0);
    for n in 0..m {
        let t = term(n);
        if n % 2 == 0 {
            head += t;
        } else {
            head -= t;
        }
    }
    // tail = (-1)^m * sum_n (-1)^n u_n with u_n = term(m + n)
    let u: Vec<Complex64> = (0..EULER_ORDER).map(|j| term(m + j)).collect();
    let mut diffs = u.clone();
    let mut tail = Complex64::new(0.0, 0.0);
    let mut scale = 0.5;
    for k in 0..EULER_ORDER {
        let d = diffs[0];
        tail += if k % 2 == 0 { d * scale } else { -d * scale };
        scale *= 0.5;
        for j in 0..diffs.len() - 1 - k {
            diffs[j] = diffs[j + 1] - diffs[j];
        }
    }
    if m % 2 == 1 {
        tail = -tail;
    }
    head + tail
}

/// `zeta(s) = eta(s) / (1 - 2^{1-s})`.
pub fn zeta(s: Complex64) -> Complex64 {
    let two_pow = ((1.0 - s) * 2f64.ln()).exp();
    eta(s) / (1.0 - two_pow)
}

/// Stirling-type expansion of theta carried to the t^-9 term; accurate to
/// better than 1e-9 for t >= 5.
pub fn theta(t: f64) -> f64 {
    0.5 * t * (t / (2.0 * PI)).ln() - 0.5 * t - PI / 8.0
        + 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t.powi(3))
        + 31.0 / (80640.0 * t.powi(5))
        + 127.0 / (430080.0 * t.powi(7))
        + 511.0 / (1216512.0 * t.powi(9))
}

pub fn hardy_z(t: f64) -> f64 {
    (Complex64::from_polar(1.0, theta(t)) * zeta(Complex64::new(0.5, t))).re
}

/// Critical-line zero ordinates in `[5, 200]` from a fine sign-change scan of
/// the oracle Z, bisected to 1e-10.
pub fn zero_ordinates() -> &'static [f64] {
    static ZEROS: OnceLock<Vec<f64>> = OnceLock::new();
    ZEROS.get_or_init(|| {
        let step = 0.02;
        let mut zeros = Vec::new();
        let mut t0 = 5.0;
        let mut z0 = hardy_z(t0);
        while t0 < 200.0 {
            let t1 = t0 + step;
            let z1 = hardy_z(t1);
            if (z0 < 0.0) != (z1 < 0.0) {
                let (mut lo, mut hi, zlo) = (t0, t1, z0);
                while hi - lo > 1e-10 {
                    let mid = 0.5 * (lo + hi);
                    if (hardy_z(mid) < 0.0) == (zlo < 0.0) {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                zeros.push(0.5 * (lo + hi));
            }
            t0 = t1;
            z0 = z1;
        }
        zeros
    })
}

pub fn zeros_below(t: f64) -> usize {
    zero_ordinates().iter().filter(|&&z| z < t).count()
}
