//! The two model families: logistic pairs `(q_v, q_w)` in floating point and
//! stunted tent pairs `(st_v, st_w)` in exact dyadic arithmetic.

mod classify;
pub mod logistic;
pub mod stunted;

pub use classify::{classify_hyperbolic, HyperbolicClass, HyperbolicType};
pub use logistic::{eval_logistic, q_orbit_jets, q_symbol, Jet, TOL_SYM};
pub use stunted::{eval_stunted, on_plateau, st_symbol};

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::symbolic::{Itinerary, Lane, OrderData};

/// Tolerance for recognizing a repeated state along a logistic orbit.
pub const TOL_ORBIT: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "st")]
    St,
    #[serde(rename = "q")]
    Q,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::St => "st",
            Family::Q => "q",
        })
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        match s {
            "st" | "ST" => Ok(Family::St),
            "q" | "Q" => Ok(Family::Q),
            _ => Err(Error::Parse(format!("unknown family '{s}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamPoint {
    pub v: f64,
    pub w: f64,
    pub family: Family,
}

impl ParamPoint {
    pub fn new(v: f64, w: f64, family: Family) -> Result<ParamPoint> {
        if !(0.0..=1.0).contains(&v) || !(0.0..=1.0).contains(&w) {
            return Err(Error::Domain(format!("parameters ({v}, {w}) outside the unit square")));
        }
        Ok(ParamPoint { v, w, family })
    }

    pub fn q(v: f64, w: f64) -> ParamPoint {
        ParamPoint { v, w, family: Family::Q }
    }

    pub fn st(v: Dyadic, w: Dyadic) -> ParamPoint {
        ParamPoint { v: v.to_f64(), w: w.to_f64(), family: Family::St }
    }

    /// Exact dyadic parameters (every finite double is dyadic).
    pub fn dyadic(&self) -> Result<(Dyadic, Dyadic)> {
        Ok((Dyadic::from_f64(self.v)?, Dyadic::from_f64(self.w)?))
    }
}

/// Periods and preperiods count individual map applications, so a pair
/// orbit always has even period.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OrbitStatus {
    Periodic { period: usize },
    EventuallyPeriodic { preperiod: usize, period: usize },
    Truncated,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitRecord<T> {
    pub start: Lane,
    pub points: Vec<T>,
    pub itinerary: Itinerary,
    pub status: OrbitStatus,
}

impl<T> OrbitRecord<T> {
    pub fn lane_of(&self, k: usize) -> Lane {
        if k.is_multiple_of(2) {
            self.start
        } else {
            self.start.other()
        }
    }
}

fn build_itinerary(symbols: Vec<crate::symbolic::Symbol>, status: OrbitStatus) -> Itinerary {
    let r = match status {
        OrbitStatus::Periodic { period } => Itinerary::new(Vec::new(), symbols[..period].to_vec()),
        OrbitStatus::EventuallyPeriodic { preperiod, period } => {
            Itinerary::new(symbols[..preperiod].to_vec(), symbols[preperiod..preperiod + period].to_vec())
        }
        OrbitStatus::Truncated => Itinerary::finite(symbols),
    };
    r.expect("orbit symbols alternate lanes").normalized()
}

/// Exact orbit of `x0` under alternating `st_v`, `st_w`. Repetition is
/// detected exactly; `points` ends at the first repeated state.
pub fn st_orbit(v: Dyadic, w: Dyadic, x0: Dyadic, start: Lane, max_steps: usize) -> OrbitRecord<Dyadic> {
    let mut seen: [HashMap<Dyadic, usize>; 2] = [HashMap::new(), HashMap::new()];
    let mut points = vec![x0];
    let mut symbols = Vec::new();
    let mut lane = start;
    let mut x = x0;
    let mut status = OrbitStatus::Truncated;
    for k in 0..=max_steps {
        if let Some(&j) = seen[k % 2].get(&x) {
            points.pop();
            status = if j == 0 {
                OrbitStatus::Periodic { period: k }
            } else {
                OrbitStatus::EventuallyPeriodic { preperiod: j, period: k - j }
            };
            break;
        }
        if k == max_steps {
            break;
        }
        seen[k % 2].insert(x, k);
        symbols.push(st_symbol(lane, x));
        x = eval_stunted(if lane == Lane::One { v } else { w }, x);
        points.push(x);
        lane = lane.other();
    }
    if status == OrbitStatus::Truncated {
        points.truncate(symbols.len());
    }
    let itinerary = build_itinerary(symbols, status);
    OrbitRecord { start, points, itinerary, status }
}

/// Floating-point orbit of `x0` under alternating `q_v`, `q_w`. A state
/// within `tol` of an earlier state in the same lane closes the orbit.
pub fn q_orbit(v: f64, w: f64, x0: f64, start: Lane, max_steps: usize, tol: f64) -> OrbitRecord<f64> {
    const WINDOW: usize = 1024;
    let mut points = vec![x0];
    let mut symbols = Vec::new();
    let mut lane = start;
    let mut status = OrbitStatus::Truncated;
    'outer: for k in 0..max_steps {
        let x = points[k];
        let lo = k.saturating_sub(WINDOW);
        for j in (lo..k).rev().filter(|j| (k - j) % 2 == 0) {
            if (points[j] - x).abs() < tol {
                status = if j == 0 {
                    OrbitStatus::Periodic { period: k }
                } else {
                    OrbitStatus::EventuallyPeriodic { preperiod: j, period: k - j }
                };
                points.pop();
                break 'outer;
            }
        }
        symbols.push(q_symbol(lane, x, TOL_SYM));
        points.push(eval_logistic(if lane == Lane::One { v } else { w }, x));
        lane = lane.other();
    }
    if status == OrbitStatus::Truncated {
        points.truncate(symbols.len());
    }
    let itinerary = build_itinerary(symbols, status);
    OrbitRecord { start, points, itinerary, status }
}

/// Orbit of `x0` in either family; ST parameters and `x0` are taken as exact
/// dyadics and reported back as doubles.
pub fn pair_orbit(p: &ParamPoint, x0: f64, max_steps: usize, start: Lane) -> Result<OrbitRecord<f64>> {
    if !(0.0..=1.0).contains(&x0) {
        return Err(Error::Domain(format!("initial point {x0} outside [0,1]")));
    }
    match p.family {
        Family::Q => Ok(q_orbit(p.v, p.w, x0, start, max_steps, TOL_ORBIT)),
        Family::St => {
            let (v, w) = p.dyadic()?;
            let r = st_orbit(v, w, Dyadic::from_f64(x0)?, start, max_steps);
            Ok(OrbitRecord {
                start: r.start,
                points: r.points.iter().map(|d| d.to_f64()).collect(),
                itinerary: r.itinerary,
                status: r.status,
            })
        }
    }
}

/// Critical points of `q_w ∘ q_v` in lane one.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum QCritical {
    RealTriple(f64, f64, f64),
    Degenerate,
    ComplexPair,
}

pub fn critical_points_q_composition(v: f64) -> QCritical {
    if v > 0.5 {
        let c1 = 0.5 * (1.0 - (1.0 - 0.5 / v).sqrt());
        QCritical::RealTriple(c1, 0.5, 1.0 - c1)
    } else if v == 0.5 {
        QCritical::Degenerate
    } else {
        QCritical::ComplexPair
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Critical {
    Gamma1,
    Gamma2,
}

impl Critical {
    pub fn lane(self) -> Lane {
        match self {
            Critical::Gamma1 => Lane::One,
            Critical::Gamma2 => Lane::Two,
        }
    }
}

/// Order-data of a periodic orbit listed from a point in `start`.
fn order_data_from_cycle<T: PartialOrd + Copy>(cycle: &[T], start: Lane) -> Option<OrderData> {
    let off = if start == Lane::One { 0 } else { 1 };
    let p = cycle.len();
    let xs: Vec<T> = (0..p / 2).map(|k| cycle[(2 * k + off) % p]).collect();
    let ys: Vec<T> = (0..p / 2).map(|k| cycle[(2 * k + off + 1) % p]).collect();
    OrderData::from_orbit(&xs, &ys)
}

/// Smallest period `2n ≤ max_period` of the chosen critical point, with the
/// order-data of its orbit.
///
/// ST orbits are exact. For Q a return close to `1/2` is only accepted when a
/// Newton step on the period condition, `|G| / |∇G|`, is at most `tol`.
pub fn detect_periodic_critical(
    p: &ParamPoint,
    which: Critical,
    max_period: usize,
    tol: f64,
) -> Option<(usize, OrderData)> {
    let lane = which.lane();
    match p.family {
        Family::St => {
            let (v, w) = p.dyadic().ok()?;
            let r = st_orbit(v, w, Dyadic::HALF, lane, max_period);
            match r.status {
                OrbitStatus::Periodic { period } => Some((period, order_data_from_cycle(&r.points, lane)?)),
                _ => None,
            }
        }
        Family::Q => {
            let jets = q_orbit_jets(p.v, p.w, 0.5, lane, max_period);
            for k in (2..=max_period).step_by(2) {
                let g = jets[k].x - 0.5;
                let grad = jets[k].dv.hypot(jets[k].dw);
                let close = if grad > 0.0 { g.abs() / grad <= tol } else { g.abs() <= tol };
                if close && g.abs() < 1e-6 {
                    let cycle: Vec<f64> = jets[..k].iter().map(|j| j.x).collect();
                    return Some((k, order_data_from_cycle(&cycle, lane)?));
                }
            }
            None
        }
    }
}
