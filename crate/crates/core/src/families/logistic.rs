//! Logistic maps `q_v(x) = 4 v x (1 - x)` and derivative bookkeeping along
//! alternating orbits.

use crate::symbolic::{Kind, Lane, Symbol};

/// Distance from `1/2` below which an iterate is coded as the critical symbol.
pub const TOL_SYM: f64 = 1e-12;

pub fn eval_logistic(v: f64, x: f64) -> f64 {
    4.0 * v * x * (1.0 - x)
}

/// `∂q_v/∂x`.
pub fn dlogistic_dx(v: f64, x: f64) -> f64 {
    4.0 * v * (1.0 - 2.0 * x)
}

/// `∂q_v/∂v`.
pub fn dlogistic_dv(x: f64) -> f64 {
    4.0 * x * (1.0 - x)
}

pub fn q_symbol(lane: Lane, x: f64, tol_sym: f64) -> Symbol {
    let kind = if (x - 0.5).abs() < tol_sym {
        Kind::C
    } else if x < 0.5 {
        Kind::L
    } else {
        Kind::R
    };
    Symbol::new(lane, kind)
}

/// One orbit point together with its partial derivatives in `v` and `w`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    pub x: f64,
    pub dv: f64,
    pub dw: f64,
}

/// `steps` alternating iterates starting from the constant `x0` in `start`,
/// with forward-mode derivatives in both parameters. Element `k` is the
/// `k`-th iterate; element `0` is `x0`.
pub fn q_orbit_jets(v: f64, w: f64, x0: f64, start: Lane, steps: usize) -> Vec<Jet> {
    let mut out = Vec::with_capacity(steps + 1);
    let mut j = Jet { x: x0, dv: 0.0, dw: 0.0 };
    out.push(j);
    let mut lane = start;
    for _ in 0..steps {
        let (a, is_v) = match lane {
            Lane::One => (v, true),
            Lane::Two => (w, false),
        };
        let slope = dlogistic_dx(a, j.x);
        let own = dlogistic_dv(j.x);
        j = Jet {
            x: eval_logistic(a, j.x),
            dv: slope * j.dv + if is_v { own } else { 0.0 },
            dw: slope * j.dw + if is_v { 0.0 } else { own },
        };
        out.push(j);
        lane = lane.other();
    }
    out
}
