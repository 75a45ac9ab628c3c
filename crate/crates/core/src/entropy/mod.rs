//! Topological entropy of `f = g_w ∘ g_v` from lap growth and from counts of
//! negative-type fixed points, single points or whole parameter grids.

mod laps;
mod maps;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{Family, ParamPoint};
use laps::LapSolver;
pub use laps::LAP_BUDGET;
use maps::{resolve, Pair, Resolved, Unimodal};

/// Turning and plateau-edge points of `f^k` with the slope sign of each lap.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LapStructure {
    /// Interior lap boundaries, ascending.
    pub breakpoints: Vec<f64>,
    /// `1` increasing, `-1` decreasing, `0` constant; one more than breakpoints.
    pub lap_signs: Vec<i8>,
}

fn to_u64(x: u128) -> Result<u64> {
    u64::try_from(x).map_err(|_| Error::Budget(format!("count {x} does not fit in 64 bits")))
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 || k > 31 {
        return Err(Error::Domain(format!("iterate count {k} outside 1..=31")));
    }
    Ok(())
}

/// Number of laps of `f^k`.
pub fn lap_count(p: &ParamPoint, k: usize) -> Result<u64> {
    check_k(k)?;
    let counts = match resolve(p)? {
        Resolved::Q(pair) => laps::lap_counts(&pair, k),
        Resolved::St(pair) => laps::lap_counts(&pair, k),
    };
    match counts.get(k - 1) {
        Some(&c) => to_u64(c),
        None => Err(Error::Budget(format!("lap images of f^{k} exceed {LAP_BUDGET}"))),
    }
}

/// Number of fixed points of negative type of `f^k`.
pub fn neg_count(p: &ParamPoint, k: usize) -> Result<u64> {
    check_k(k)?;
    to_u64(match resolve(p)? {
        Resolved::Q(pair) => laps::neg_count(&pair, k)?,
        Resolved::St(pair) => laps::neg_count(&pair, k)?,
    })
}

fn structure<M: LapSolver>(pair: &Pair<M>, k: usize) -> Result<LapStructure> {
    let laps = laps::explicit_laps(pair, k)?;
    Ok(LapStructure {
        breakpoints: laps.iter().skip(1).map(|l| M::to_f64(l.x0)).collect(),
        lap_signs: laps.iter().map(|l| l.sign).collect(),
    })
}

/// Explicit lap list of `f^k` (at most [`LAP_BUDGET`] laps).
pub fn lap_structure(p: &ParamPoint, k: usize) -> Result<LapStructure> {
    check_k(k)?;
    match resolve(p)? {
        Resolved::Q(pair) => structure(&pair, k),
        Resolved::St(pair) => structure(&pair, k),
    }
}

/// `Neg(f^k)` counted on the explicit lap list rather than by preimage
/// counting.
pub fn neg_count_explicit(p: &ParamPoint, k: usize) -> Result<u64> {
    check_k(k)?;
    to_u64(match resolve(p)? {
        Resolved::Q(pair) => laps::neg_from_laps::<maps::QMap>(&laps::explicit_laps(&pair, k)?),
        Resolved::St(pair) => laps::neg_from_laps::<maps::StMap>(&laps::explicit_laps(&pair, k)?),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropyEstimate {
    /// Reported value: the lap-growth estimate.
    pub h: f64,
    pub h_lap: f64,
    pub h_neg: f64,
    /// Spread between the two estimates.
    pub err: f64,
    /// Largest iterate used by each estimator.
    pub k_lap: usize,
    pub k_neg: usize,
}

fn estimate<M: Unimodal>(pair: &Pair<M>, kmax: usize) -> EntropyEstimate {
    let counts = laps::lap_counts(pair, kmax);
    let k_lap = counts.len();
    let ratios: Vec<f64> = counts.windows(2).map(|w| (w[1] as f64 / w[0] as f64).ln()).collect();
    let tail = &ratios[ratios.len().saturating_sub(3)..];
    let h_lap = if tail.is_empty() { 0.0 } else { tail.iter().sum::<f64>() / tail.len() as f64 };
    let (mut h_neg, mut k_neg) = (0.0, 0);
    for k in (1..=kmax).rev() {
        if let Ok(neg) = laps::neg_count(pair, k) {
            h_neg = if neg > 1 { (neg as f64).ln() / k as f64 } else { 0.0 };
            k_neg = k;
            break;
        }
    }
    EntropyEstimate { h: h_lap, h_lap, h_neg, err: (h_lap - h_neg).abs(), k_lap, k_neg }
}

/// Entropy of `f` from lap growth over the last three ratios up to `kmax`,
/// with `(1/k) log⁺ Neg(f^k)` as a cross-check; their spread is the error bar.
pub fn entropy_estimate(p: &ParamPoint, kmax: usize) -> Result<EntropyEstimate> {
    if !(4..=31).contains(&kmax) {
        return Err(Error::Domain(format!("kmax {kmax} outside 4..=31")));
    }
    Ok(match resolve(p)? {
        Resolved::Q(pair) => estimate(&pair, kmax),
        Resolved::St(pair) => estimate(&pair, kmax),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Estimator {
    #[serde(rename = "neg_growth")]
    NegGrowth,
    #[serde(rename = "lap_growth")]
    LapGrowth,
}

impl std::fmt::Display for Estimator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Estimator::NegGrowth => "neg_growth",
            Estimator::LapGrowth => "lap_growth",
        })
    }
}

/// Entropy estimates on a `res × res` lattice of nodes covering the closed
/// parameter square.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropyGrid {
    pub family: Family,
    pub res: usize,
    pub kmax: usize,
    pub estimator: Estimator,
    /// Row-major by `w`: entry `j * res + i` is the node `(v_i, w_j)`.
    pub estimates: Vec<EntropyEstimate>,
}

/// Coordinate of node `i` of a `res`-node lattice on `[0, 1]`, endpoints
/// included.
pub fn grid_coordinate(res: usize, i: usize) -> f64 {
    if i + 1 == res {
        1.0
    } else {
        i as f64 / (res - 1) as f64
    }
}

impl EntropyGrid {
    pub fn point(&self, i: usize, j: usize) -> ParamPoint {
        ParamPoint { v: grid_coordinate(self.res, i), w: grid_coordinate(self.res, j), family: self.family }
    }

    pub fn estimate(&self, i: usize, j: usize) -> &EntropyEstimate {
        &self.estimates[j * self.res + i]
    }

    /// Value reported by the grid's estimator.
    pub fn value(&self, i: usize, j: usize) -> f64 {
        let e = self.estimate(i, j);
        match self.estimator {
            Estimator::LapGrowth => e.h_lap,
            Estimator::NegGrowth => e.h_neg,
        }
    }

    pub fn err(&self, i: usize, j: usize) -> f64 {
        self.estimate(i, j).err
    }

    /// Grid with the other estimator's values reported.
    pub fn with_estimator(mut self, estimator: Estimator) -> EntropyGrid {
        self.estimator = estimator;
        self
    }
}

/// Evaluate [`entropy_estimate`] on every lattice node, in parallel.
pub fn entropy_grid(family: Family, res: usize, kmax: usize) -> Result<EntropyGrid> {
    if res < 2 {
        return Err(Error::Domain(format!("grid resolution {res} below 2")));
    }
    let estimates = (0..res * res)
        .into_par_iter()
        .map(|idx| {
            let p = ParamPoint { v: grid_coordinate(res, idx % res), w: grid_coordinate(res, idx / res), family };
            entropy_estimate(&p, kmax)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EntropyGrid { family, res, kmax, estimator: Estimator::LapGrowth, estimates })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonotonicityViolation {
    pub index: usize,
    /// Largest value seen before `index`.
    pub running_max: f64,
    pub value: f64,
    pub allowance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonotonicityReport {
    pub points: Vec<ParamPoint>,
    pub estimates: Vec<EntropyEstimate>,
    pub violations: Vec<MonotonicityViolation>,
    pub passed: bool,
}

/// Check that entropy does not decrease along `path`: each value may fall
/// below the running maximum by at most the two error bars involved.
pub fn entropy_monotonicity_audit(path: &[ParamPoint], kmax: usize) -> Result<MonotonicityReport> {
    let estimates = path.par_iter().map(|p| entropy_estimate(p, kmax)).collect::<Result<Vec<_>>>()?;
    let mut violations = Vec::new();
    let mut best: Option<(f64, f64)> = None;
    for (i, e) in estimates.iter().enumerate() {
        if let Some((max, max_err)) = best {
            let allowance = max_err + e.err;
            if e.h < max - allowance - 1e-12 {
                violations.push(MonotonicityViolation { index: i, running_max: max, value: e.h, allowance });
            }
        }
        if best.is_none_or(|(m, _)| e.h > m) {
            best = Some((e.h, e.err));
        }
    }
    let passed = violations.is_empty();
    Ok(MonotonicityReport { points: path.to_vec(), estimates, violations, passed })
}
