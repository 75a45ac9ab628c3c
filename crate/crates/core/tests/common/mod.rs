//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use isentropes_core::{Dyadic, Family, ParamPoint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const LOG4: f64 = 1.386_294_361_119_890_6;

pub fn stunted_f64(v: f64, x: f64) -> (f64, i8) {
    if x < v / 2.0 {
        (2.0 * x, 1)
    } else if x > 1.0 - v / 2.0 {
        (2.0 - 2.0 * x, -1)
    } else {
        (v, 0)
    }
}

pub fn logistic_f64(v: f64, x: f64) -> (f64, i8) {
    (4.0 * v * x * (1.0 - x), if x < 0.5 { 1 } else { -1 })
}

/// Iterates `f^1(x) ..= f^kmax(x)` with the slope-sign product along the way.
pub fn orbit_with_signs(p: &ParamPoint, x: f64, kmax: usize) -> Vec<(f64, i8)> {
    let g: fn(f64, f64) -> (f64, i8) = match p.family {
        Family::Q => logistic_f64,
        Family::St => stunted_f64,
    };
    let (mut y, mut sign) = (x, 1i8);
    (0..kmax)
        .map(|_| {
            for h in [p.v, p.w] {
                let (z, s) = g(h, y);
                y = z;
                sign *= s;
            }
            (y, sign)
        })
        .collect()
}

/// Negative-type fixed points of `f^k` for `k = 1..=kmax`: downward diagonal
/// crossings on a uniform grid where the slope-sign product is `-1` at an end
/// or the middle of the bracketing step.
pub fn scan_neg(p: &ParamPoint, kmax: usize, samples: usize) -> Vec<u64> {
    let mut counts = vec![0u64; kmax];
    let mut prev = orbit_with_signs(p, 0.0, kmax);
    for i in 1..=samples {
        let x0 = (i - 1) as f64 / samples as f64;
        let x1 = i as f64 / samples as f64;
        let next = orbit_with_signs(p, x1, kmax);
        let mut mid: Option<Vec<(f64, i8)>> = None;
        for k in 0..kmax {
            if prev[k].0 - x0 > 0.0 && next[k].0 - x1 <= 0.0 {
                let m = mid.get_or_insert_with(|| orbit_with_signs(p, 0.5 * (x0 + x1), kmax));
                if prev[k].1 < 0 || m[k].1 < 0 || next[k].1 < 0 {
                    counts[k] += 1;
                }
            }
        }
        prev = next;
    }
    counts
}

pub fn random_params(seed: u64, count: usize) -> Vec<ParamPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            if i % 2 == 0 {
                ParamPoint::q(rng.gen(), rng.gen())
            } else {
                let d = |r: &mut ChaCha8Rng| Dyadic::new(r.gen_range(1..=4096), 12);
                ParamPoint::st(d(&mut rng), d(&mut rng))
            }
        })
        .collect()
}
