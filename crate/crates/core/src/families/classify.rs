use serde::Serialize;

use super::logistic::{dlogistic_dx, eval_logistic};
use crate::symbolic::Lane;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HyperbolicType {
    /// Both critical points lie in the immediate basin of one attracting cycle.
    Bitransitive,
    /// One attracting cycle; only one critical point is in its immediate basin.
    Capture,
    /// Each critical orbit is attracted to its own cycle.
    DisjointSinks,
    NonHyperbolicOrUndecided,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HyperbolicClass {
    pub kind: HyperbolicType,
    /// Both critical orbits share the attracting boundary fixed point `0`.
    pub degenerate: bool,
    /// Pair periods of the cycles attracting `γ₁` and `γ₂`, when found.
    pub periods: [Option<usize>; 2],
    pub multipliers: [Option<f64>; 2],
}

const MAX_CYCLE: usize = 128;
const CLOSE: f64 = 1e-11;

#[derive(Clone, Debug)]
struct Cycle {
    /// Points of the cycle, element 0 in lane `lane0`.
    points: Vec<f64>,
    lane0: Lane,
    multiplier: f64,
}

impl Cycle {
    fn points_in(&self, lane: Lane) -> impl Iterator<Item = f64> + '_ {
        let off = if lane == self.lane0 { 0 } else { 1 };
        self.points.iter().skip(off).step_by(2).copied()
    }

    fn contains(&self, lane: Lane, x: f64, tol: f64) -> bool {
        self.points_in(lane).any(|c| (c - x).abs() < tol)
    }
}

fn param(v: f64, w: f64, lane: Lane) -> f64 {
    if lane == Lane::One {
        v
    } else {
        w
    }
}

/// Follow the orbit of `x0` until its tail repeats with an even period; return
/// the cycle if it is attracting.
fn attracting_cycle(v: f64, w: f64, x0: f64, start: Lane, max_iter: usize, tol: f64) -> Option<Cycle> {
    let mut hist: Vec<f64> = Vec::with_capacity(4 * MAX_CYCLE);
    let mut x = x0;
    let mut lane = start;
    for step in 0..max_iter {
        hist.push(x);
        if hist.len() > 4 * MAX_CYCLE {
            hist.drain(..2 * MAX_CYCLE);
        }
        let k = hist.len() - 1;
        for p in (2..=MAX_CYCLE).step_by(2) {
            if k < 2 * p {
                break;
            }
            if (0..p).all(|i| (hist[k - i] - hist[k - i - p]).abs() < CLOSE) {
                let lane0 = if (step + 1 - p) % 2 == 0 { start } else { start.other() };
                let points: Vec<f64> = hist[k + 1 - p..=k].to_vec();
                let mut mult = 1.0;
                let mut l = lane0;
                for &c in &points {
                    mult *= dlogistic_dx(param(v, w, l), c);
                    l = l.other();
                }
                if mult.abs() < 1.0 - tol {
                    return Some(Cycle { points, lane0, multiplier: mult });
                }
                break;
            }
        }
        x = eval_logistic(param(v, w, lane), x);
        lane = lane.other();
    }
    None
}

/// Whether the whole segment between `1/2` and the nearest cycle point in the
/// same lane is attracted to the cycle.
fn in_immediate_basin(v: f64, w: f64, cycle: &Cycle, lane: Lane, max_iter: usize) -> bool {
    let Some(target) = cycle.points_in(lane).min_by(|a, b| (a - 0.5).abs().partial_cmp(&(b - 0.5).abs()).unwrap())
    else {
        return false;
    };
    const SAMPLES: usize = 64;
    let budget = max_iter.min(200_000);
    (0..=SAMPLES).all(|i| {
        let x0 = 0.5 + (target - 0.5) * i as f64 / SAMPLES as f64;
        let mut x = x0;
        let mut l = lane;
        for step in 0..budget {
            if step % 2 == 0 && l == lane && cycle.contains(l, x, 1e-7) {
                return true;
            }
            x = eval_logistic(param(v, w, l), x);
            l = l.other();
        }
        false
    })
}

fn same_cycle(a: &Cycle, b: &Cycle) -> bool {
    a.points.len() == b.points.len() && b.points_in(Lane::One).all(|x| a.contains(Lane::One, x, 1e-8))
}

/// Numerical classification of the pair `(q_v, q_w)` by the attracting cycles
/// of its two critical orbits.
pub fn classify_hyperbolic(v: f64, w: f64, max_iter: usize, tol: f64) -> HyperbolicClass {
    let c1 = attracting_cycle(v, w, 0.5, Lane::One, max_iter, tol);
    let c2 = attracting_cycle(v, w, 0.5, Lane::Two, max_iter, tol);
    let periods = [c1.as_ref().map(|c| c.points.len()), c2.as_ref().map(|c| c.points.len())];
    let multipliers = [c1.as_ref().map(|c| c.multiplier), c2.as_ref().map(|c| c.multiplier)];
    let (kind, degenerate) = match (&c1, &c2) {
        (Some(a), Some(b)) if same_cycle(a, b) => {
            let degenerate = a.points.iter().all(|x| x.abs() < 1e-8);
            let b1 = in_immediate_basin(v, w, a, Lane::One, max_iter);
            let b2 = in_immediate_basin(v, w, a, Lane::Two, max_iter);
            let kind = match (b1, b2) {
                (true, true) => HyperbolicType::Bitransitive,
                (true, false) | (false, true) => HyperbolicType::Capture,
                (false, false) => HyperbolicType::NonHyperbolicOrUndecided,
            };
            (kind, degenerate)
        }
        (Some(_), Some(_)) => (HyperbolicType::DisjointSinks, false),
        _ => (HyperbolicType::NonHyperbolicOrUndecided, false),
    };
    HyperbolicClass { kind, degenerate, periods, multipliers }
}
