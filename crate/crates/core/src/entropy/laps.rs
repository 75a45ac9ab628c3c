//! Lap counting and negative-type fixed points of `f^k`, where `f` is the
//! composition of two unimodal factors.
//!
//! `f^k` is a composition of `2k` unimodal steps. Following the image of each
//! lap step by step only needs the image interval and the orientation, so laps
//! with the same image merge into one weighted entry and the bookkeeping stays
//! polynomial in `k` even when the lap count grows like `4^k`.

use std::collections::BTreeMap;

use super::maps::{Pair, Unimodal};
use crate::error::{Error, Result};

/// Upper bound on distinct intervals and on explicitly listed laps.
pub const LAP_BUDGET: usize = 10_000_000;

/// What borders a non-flat piece at one end of its image interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Edge {
    /// An end of the domain.
    Open,
    /// A maximal constant run.
    Flat,
    /// A non-flat piece folding back onto the same value from the same side.
    Turn,
}

/// Weighted non-flat pieces `(lo, hi, orientation, edges) -> count`, plus the
/// number of maximal constant runs, which never split again.
type Entries<M> = BTreeMap<
    (<M as Unimodal>::Key, <M as Unimodal>::Key, i8, Edge, Edge),
    (<M as Unimodal>::X, <M as Unimodal>::X, u128),
>;

struct Multiset<M: Unimodal> {
    entries: Entries<M>,
    runs: u128,
}

impl<M: Unimodal> Multiset<M> {
    fn single(lo: M::X, hi: M::X) -> Multiset<M> {
        let mut entries = BTreeMap::new();
        if lo < hi {
            entries.insert((M::key(lo), M::key(hi), 1, Edge::Open, Edge::Open), (lo, hi, 1));
        }
        Multiset { entries, runs: 0 }
    }

    fn step(&self, g: M) -> Result<Multiset<M>> {
        let mut out: Entries<M> = BTreeMap::new();
        // Twice the change in the number of constant runs.
        let mut halves: i128 = 0;
        let breaks = g.breaks();
        for (&(_, _, o, e_lo, e_hi), &(lo, hi, c)) in &self.entries {
            let mut cuts = vec![lo];
            cuts.extend(breaks.iter().copied().filter(|&b| lo < b && b < hi));
            cuts.push(hi);
            let slopes: Vec<i8> = cuts.windows(2).map(|w| g.piece_slope(w[0], w[1])).collect();
            let last = slopes.len() - 1;
            for (t, w) in cuts.windows(2).enumerate() {
                let inner = |u: usize| if slopes[u] == 0 { Edge::Flat } else { Edge::Turn };
                let a_edge = if t == 0 { e_lo } else { inner(t - 1) };
                let b_edge = if t == last { e_hi } else { inner(t + 1) };
                if slopes[t] == 0 {
                    let joins = |e: Edge| match e {
                        Edge::Open => 0,
                        Edge::Flat => 2,
                        Edge::Turn => 1,
                    };
                    let ends = if t == 0 { joins(e_lo) } else { 0 } + if t == last { joins(e_hi) } else { 0 };
                    halves += (2 - ends) * c as i128;
                    continue;
                }
                let s = slopes[t];
                let (ya, yb) = (g.eval(w[0]), g.eval(w[1]));
                let (ya, yb, ea, eb) = if s > 0 { (ya, yb, a_edge, b_edge) } else { (yb, ya, b_edge, a_edge) };
                let (ea, eb) = if M::FLAT { (ea, eb) } else { (Edge::Open, Edge::Open) };
                out.entry((M::key(ya), M::key(yb), o * s, ea, eb)).or_insert((ya, yb, 0)).2 += c;
            }
        }
        if out.len() > LAP_BUDGET {
            return Err(Error::Budget(format!("more than {LAP_BUDGET} distinct lap images")));
        }
        let runs = self.runs as i128 + halves / 2;
        Ok(Multiset { entries: out, runs: runs as u128 })
    }

    fn total(&self) -> u128 {
        self.entries.values().map(|e| e.2).sum::<u128>() + self.runs
    }

    fn total_with(&self, o: i8) -> u128 {
        self.entries.iter().filter(|(k, _)| k.2 == o).map(|(_, e)| e.2).sum()
    }
}

/// Lap counts `L(f^k)` for `k = 1..=kmax`, stopping early at the budget.
pub(crate) fn lap_counts<M: Unimodal>(pair: &Pair<M>, kmax: usize) -> Vec<u128> {
    let mut ms = Multiset::<M>::single(M::zero(), M::one());
    let mut out = Vec::with_capacity(kmax);
    for i in 0..2 * kmax {
        match ms.step(pair.step(i)) {
            Ok(next) => ms = next,
            Err(_) => break,
        }
        if i % 2 == 1 {
            out.push(ms.total());
        }
    }
    out
}

/// Number of `x` in `[lo, hi]` with `G_m(x) = b` inside a lap of `G_m`,
/// split by the orientation of `G_m` there.
fn preimages<M: Unimodal>(pair: &Pair<M>, m: usize, lo: M::X, hi: M::X, b: M::X) -> Result<(u128, u128)> {
    if lo >= hi {
        return Ok((0, 0));
    }
    let mut ms = Multiset::<M>::single(lo, hi);
    for i in 0..m {
        ms = ms.step(pair.step(i))?;
    }
    let (mut plus, mut minus) = (0, 0);
    for (&(_, _, o, _, _), &(a, z, c)) in &ms.entries {
        if a < b && b < z {
            match o {
                1 => plus += c,
                -1 => minus += c,
                _ => {}
            }
        }
    }
    Ok((plus, minus))
}

/// `Neg(f^k)`: decreasing laps of `f^k` whose graph crosses the diagonal.
///
/// A decreasing lap `[x0, x1]` crosses unless `f^k(x0) ≤ x0` or
/// `f^k(x1) ≥ x1`, and the two failures exclude each other. Interior lap
/// endpoints are first hits of a break point `b` of step `m + 1`, where
/// `f^k` takes the value `V_m` of the remaining steps applied to `g(b)`, so
/// failures are counted as preimages of `b` on the correct side of `V_m`.
pub(crate) fn neg_count<M: Unimodal>(pair: &Pair<M>, k: usize) -> Result<u128> {
    let n = 2 * k;
    let mut full = Multiset::<M>::single(M::zero(), M::one());
    for i in 0..n {
        full = full.step(pair.step(i))?;
    }
    let decreasing = full.total_with(-1);
    let mut fail = 0u128;
    for m in 0..n {
        let g = pair.step(m);
        for (b, side, slope) in g.events() {
            let top = g.eval(b);
            let o = pair.side_orientation(m + 1, n, top, -1);
            if o == 0 {
                continue;
            }
            let value = pair.run(m + 1, n, top);
            let s = -slope * o;
            let (lo, hi) = if side * s > 0 { (value, M::one()) } else { (M::zero(), value) };
            let (plus, minus) = preimages(pair, m, lo, hi, b)?;
            fail += if s > 0 { plus } else { minus };
        }
    }
    let (zero, one) = (M::zero(), M::one());
    if pair.side_orientation(0, n, zero, 1) == -1 && pair.run(0, n, zero) <= zero {
        fail += 1;
    }
    if pair.side_orientation(0, n, one, -1) == -1 && pair.run(0, n, one) >= one {
        fail += 1;
    }
    decreasing
        .checked_sub(fail)
        .ok_or_else(|| Error::Numeric(format!("{fail} failing laps exceed {decreasing} decreasing laps")))
}

/// One lap of `G_m` with its endpoint values and slope sign (0 when flat).
#[derive(Clone, Copy, Debug)]
pub(crate) struct ExplicitLap<X> {
    pub x0: X,
    pub x1: X,
    pub y0: X,
    pub y1: X,
    pub sign: i8,
}

/// Maximal laps of `f^k` listed one by one, with the breakpoints found lap by
/// lap.
pub(crate) fn explicit_laps<M: LapSolver>(pair: &Pair<M>, k: usize) -> Result<Vec<ExplicitLap<M::X>>> {
    let (zero, one) = (M::zero(), M::one());
    let mut laps = vec![ExplicitLap { x0: zero, x1: one, y0: zero, y1: one, sign: 1 }];
    for m in 0..2 * k {
        let g = pair.step(m);
        let breaks = g.breaks();
        let mut next: Vec<ExplicitLap<M::X>> = Vec::with_capacity(laps.len() * 2);
        for lap in &laps {
            let (lo, hi) = if lap.y0 <= lap.y1 { (lap.y0, lap.y1) } else { (lap.y1, lap.y0) };
            let mut cuts: Vec<(M::X, M::X)> = vec![(lap.x0, lap.y0)];
            let mut inner: Vec<(M::X, M::X)> = if lap.sign == 0 {
                Vec::new()
            } else {
                breaks
                    .iter()
                    .filter(|&&b| lo < b && b < hi)
                    .map(|&b| (M::solve_on_lap(pair, m, lap.x0, lap.x1, lap.y0, lap.sign, b), b))
                    .collect()
            };
            if lap.sign < 0 {
                inner.reverse();
            }
            cuts.extend(inner);
            cuts.push((lap.x1, lap.y1));
            for w in cuts.windows(2) {
                let (ya, yb) = (w[0].1, w[1].1);
                let (plo, phi) = if ya <= yb { (ya, yb) } else { (yb, ya) };
                let s = if lap.sign == 0 { 0 } else { g.piece_slope(plo, phi) };
                let piece = ExplicitLap { x0: w[0].0, x1: w[1].0, y0: g.eval(ya), y1: g.eval(yb), sign: lap.sign * s };
                match next.last_mut() {
                    Some(prev) if prev.sign == piece.sign => {
                        prev.x1 = piece.x1;
                        prev.y1 = piece.y1;
                    }
                    _ => next.push(piece),
                }
            }
        }
        if next.len() > LAP_BUDGET {
            return Err(Error::Budget(format!("more than {LAP_BUDGET} explicit laps")));
        }
        laps = next;
    }
    Ok(laps)
}

/// Root of `G_m(x) = b` on a lap, for factor types that need a solver.
pub(crate) trait LapSolver: Unimodal {
    fn solve_on_lap(
        pair: &Pair<Self>,
        m: usize,
        x0: Self::X,
        x1: Self::X,
        y0: Self::X,
        sign: i8,
        b: Self::X,
    ) -> Self::X;
}

impl LapSolver for super::maps::QMap {
    fn solve_on_lap(pair: &Pair<Self>, m: usize, x0: f64, x1: f64, y0: f64, sign: i8, b: f64) -> f64 {
        let _ = y0;
        let (mut lo, mut hi) = (x0, x1);
        // Bisection on the monotone lap; the comparison flips on decreasing laps.
        while hi - lo > 1e-13 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let below = pair.run(0, m, mid) < b;
            if below == (sign > 0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

impl LapSolver for super::maps::StMap {
    fn solve_on_lap(
        _pair: &Pair<Self>,
        m: usize,
        x0: crate::Dyadic,
        _x1: crate::Dyadic,
        y0: crate::Dyadic,
        sign: i8,
        b: crate::Dyadic,
    ) -> crate::Dyadic {
        // Non-flat laps of G_m are affine with slope ±2^m.
        let d = (b - y0).scale_pow2(-(m as i32));
        if sign > 0 {
            x0 + d
        } else {
            x0 - d
        }
    }
}

/// Negative-type fixed points counted directly on explicit laps.
pub(crate) fn neg_from_laps<M: Unimodal>(laps: &[ExplicitLap<M::X>]) -> u128 {
    laps.iter().filter(|l| l.sign < 0 && l.y0 >= l.x0 && l.y1 < l.x1).count() as u128
}
