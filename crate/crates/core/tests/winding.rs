use std::time::Instant;

use backlund_core::{rect_boundary, track_arg_along, winding_number, ContourPath, EvalParams};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rational(
    zeros: Vec<Complex64>,
    poles: Vec<Complex64>,
) -> impl Fn(Complex64) -> backlund_core::Result<Complex64> {
    move |z| {
        let num: Complex64 = zeros.iter().map(|a| z - a).product();
        let den: Complex64 = poles.iter().map(|b| z - b).product();
        Ok(num / den)
    }
}

fn random_point(rng: &mut ChaCha8Rng, path: &ContourPath) -> Complex64 {
    loop {
        let z = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        if path.distance_to(z) >= 0.1 {
            return z;
        }
    }
}

fn inside(z: Complex64) -> bool {
    z.re.abs() < 1.5 && z.im.abs() < 1.5
}

#[test]
fn randomized_rational_functions() {
    let p = EvalParams::default();
    let rect = rect_boundary(-1.5, 1.5, -1.5, 1.5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let started = Instant::now();
    for case in 0..50 {
        let nz = rng.gen_range(0..=4);
        let np = rng.gen_range(0..=4);
        let zeros: Vec<_> = (0..nz).map(|_| random_point(&mut rng, &rect)).collect();
        let poles: Vec<_> = (0..np).map(|_| random_point(&mut rng, &rect)).collect();
        let expect = zeros.iter().filter(|z| inside(**z)).count() as i64
            - poles.iter().filter(|z| inside(**z)).count() as i64;
        let f = rational(zeros, poles);
        assert_eq!(
            winding_number(&rect, &f, &p).unwrap(),
            expect,
            "case {case}"
        );
        let start = case % 4;
        assert_eq!(
            winding_number(&rect.starting_at(start).unwrap().refined(3), &f, &p).unwrap(),
            expect
        );
    }
    assert!(started.elapsed().as_secs_f64() < 5.0);
}

#[test]
fn four_zeros_five_poles() {
    let p = EvalParams::default();
    let rect = rect_boundary(-2.0, 2.0, -1.5, 1.5).unwrap();
    let a = Complex64::new(0.2, 0.1);
    let poles = vec![
        Complex64::new(-1.2, 0.8),
        Complex64::new(1.1, -0.9),
        Complex64::new(-0.6, -1.0),
        Complex64::new(1.4, 1.0),
        Complex64::new(0.0, -0.3),
    ];
    let f = rational(vec![a; 4], poles);
    let r = track_arg_along(&rect, &f, &p).unwrap();
    assert!((r.arg_change + 2.0 * std::f64::consts::PI).abs() < 1e-6);
    assert_eq!(winding_number(&rect, &f, &p).unwrap(), -1);
}
