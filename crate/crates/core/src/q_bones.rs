//! Numerical bones of the logistic pair family.
//!
//! A left bone of `od` is the curve of parameters where `γ₁ = 1/2` is periodic
//! with order-data `od`; a right bone is the same for `γ₂`. Both are traced
//! in local coordinates `(a, b)` where the bone ends on `b = 1`: `(a, b) =
//! (v, w)` on the left and `(w, v)` on the right.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::logistic::{q_orbit_jets, Jet};
use crate::families::ParamPoint;
use crate::geometry::{lerp, polyline_crossings, Pt};
use crate::st_bones::{joint_from_cycles, Side};
use crate::symbolic::{check_admissible, order_data_to_bicritical_itinerary, JointOrderData, Kind, Lane, OrderData};

/// Corrector tolerance on the periodicity residual.
pub const TOL_CORR: f64 = 1e-11;
/// Smallest tangent angle accepted at a crossing.
pub const ANGLE_MIN: f64 = 1e-3;
pub const DEFAULT_STEP: f64 = 1e-3;

const MIN_STEP: f64 = 1e-8;
const MAX_STEP_FACTOR: f64 = 8.0;
const STEP_BUDGET: usize = 400_000;
const MAX_TURN: f64 = 0.2;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum QVertexKind {
    #[serde(rename = "primary")]
    Primary,
    #[serde(rename = "secondary")]
    Secondary(JointOrderData),
    #[serde(rename = "boundary")]
    Boundary,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QVertex {
    /// Position along the polyline, as a fractional point index.
    pub position: f64,
    pub v: f64,
    pub w: f64,
    pub kind: QVertexKind,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceMeta {
    pub step_init: f64,
    pub tol_corr: f64,
    pub min_step: f64,
    pub max_step: f64,
    pub accepted: usize,
    pub rejected: usize,
    pub max_residual: f64,
    pub mean_residual: f64,
    pub complete: bool,
    pub diagnostic: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QBone {
    pub side: Side,
    pub order_data: OrderData,
    /// Points `(v, w)` from the first boundary endpoint to the second.
    pub polyline: Vec<(f64, f64)>,
    pub vertices: Vec<QVertex>,
    pub trace_meta: TraceMeta,
}

impl QBone {
    pub fn primary(&self) -> Option<&QVertex> {
        self.vertices.iter().find(|x| x.kind == QVertexKind::Primary)
    }
}

/// Periodicity residual and orbit of the traced critical point at a point in
/// local coordinates.
struct Eval {
    g: f64,
    ga: f64,
    gb: f64,
    jets: Vec<Jet>,
}

/// The defining equation of one bone.
struct Problem {
    side: Side,
    od: OrderData,
    steps: usize,
    /// Orbit index at which the traced critical point meets the other one at
    /// the primary vertex.
    meet: usize,
    tol: f64,
}

impl Problem {
    fn new(od: &OrderData, side: Side) -> Result<Problem> {
        if !check_admissible(od) {
            return Err(Error::Domain(format!("order-data {od} is not admissible")));
        }
        let it = order_data_to_bicritical_itinerary(od)?;
        let steps = od.period();
        let p = (0..steps)
            .find(|&i| it.get(i).is_some_and(|s| s.kind == Kind::C && s.lane == Lane::Two))
            .ok_or_else(|| Error::Domain(format!("no second critical point in the cycle of {od}")))?;
        let meet = match side {
            Side::Left => p,
            Side::Right => steps - p,
        };
        Ok(Problem { side, od: od.clone(), steps, meet, tol: TOL_CORR })
    }

    fn start_lane(&self) -> Lane {
        match self.side {
            Side::Left => Lane::One,
            Side::Right => Lane::Two,
        }
    }

    fn to_vw(&self, a: f64, b: f64) -> Pt {
        match self.side {
            Side::Left => (a, b),
            Side::Right => (b, a),
        }
    }

    fn eval(&self, a: f64, b: f64) -> Eval {
        let (v, w) = self.to_vw(a, b);
        let jets = q_orbit_jets(v, w, 0.5, self.start_lane(), self.steps);
        let last = jets[self.steps];
        let (ga, gb) = match self.side {
            Side::Left => (last.dv, last.dw),
            Side::Right => (last.dw, last.dv),
        };
        Eval { g: last.x - 0.5, ga, gb, jets }
    }

    /// Exact period and matching order-data of the orbit in `e`.
    fn orbit_matches(&self, e: &Eval) -> bool {
        let n = self.steps / 2;
        let divisor_hit =
            (1..n).filter(|d| n.is_multiple_of(*d)).any(|d| (e.jets[2 * d].x - 0.5).abs() <= 10.0 * self.tol);
        if divisor_hit {
            return false;
        }
        let pts: Vec<f64> = e.jets[..self.steps].iter().map(|j| j.x).collect();
        let (xs, ys) = split_lanes(&pts, self.start_lane());
        OrderData::from_orbit(&xs, &ys).as_ref() == Some(&self.od)
    }

    fn marker(&self, e: &Eval) -> f64 {
        e.jets[self.meet].x - 0.5
    }
}

/// Split one period of an orbit into lane-1 points `x_k` and lane-2 points
/// `y_k` with `x_k ↦ y_k ↦ x_{k+1}`.
fn split_lanes(pts: &[f64], start: Lane) -> (Vec<f64>, Vec<f64>) {
    let evens: Vec<f64> = pts.iter().step_by(2).copied().collect();
    let odds: Vec<f64> = pts.iter().skip(1).step_by(2).copied().collect();
    match start {
        Lane::One => (evens, odds),
        Lane::Two => {
            let mut ys = evens;
            ys.rotate_left(1);
            (odds, ys)
        }
    }
}

fn boundary_samples(period: usize) -> usize {
    if period <= 8 {
        1 << 14
    } else {
        1 << 17
    }
}

/// Root of `g(a, 1)` in `[lo, hi]`, where the sign changes, by Newton steps
/// safeguarded with bisection.
fn boundary_root(pr: &Problem, mut lo: f64, mut hi: f64) -> f64 {
    let mut glo = pr.eval(lo, 1.0).g;
    let mut a = 0.5 * (lo + hi);
    for _ in 0..200 {
        let e = pr.eval(a, 1.0);
        if e.g.abs() < 1e-15 {
            return a;
        }
        if (e.g > 0.0) == (glo > 0.0) {
            lo = a;
            glo = e.g;
        } else {
            hi = a;
        }
        let newton = a - e.g / e.ga;
        a = if e.ga != 0.0 && newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
        if hi - lo < 1e-16 {
            break;
        }
    }
    a
}

fn endpoints_local(pr: &Problem) -> Result<(f64, f64)> {
    let samples = boundary_samples(pr.steps);
    let at = |i: usize| (i as f64 + 0.5) / samples as f64;
    let mut roots = Vec::new();
    let mut prev = pr.eval(at(0), 1.0).g;
    for i in 1..samples {
        let cur = pr.eval(at(i), 1.0).g;
        if (prev > 0.0) != (cur > 0.0) {
            let a = boundary_root(pr, at(i - 1), at(i));
            let e = pr.eval(a, 1.0);
            if e.g.abs() < pr.tol && pr.orbit_matches(&e) {
                roots.push(a);
            }
        }
        prev = cur;
    }
    match roots.as_slice() {
        [a1, a2] => Ok((*a1, *a2)),
        _ => Err(Error::Numeric(format!(
            "found {} boundary endpoints for {} bone {} at {} samples",
            roots.len(),
            pr.side,
            pr.od,
            samples
        ))),
    }
}

/// The two boundary endpoints of the left bone of `od` on `w = 1`, as
/// `v`-coordinates in increasing order.
pub fn q_boundary_endpoints(od: &OrderData) -> Result<(f64, f64)> {
    endpoints_local(&Problem::new(od, Side::Left)?)
}

fn unit_tangent(e: &Eval) -> Option<Pt> {
    let norm = e.ga.hypot(e.gb);
    (norm > 0.0 && norm.is_finite()).then(|| (-e.gb / norm, e.ga / norm))
}

/// Pseudo-arclength corrector: Newton on `g = 0` restricted to the line
/// through `pred` orthogonal to `t`.
fn correct(pr: &Problem, pred: Pt, t: Pt, h: f64) -> Option<(Pt, Eval)> {
    let (mut a, mut b) = pred;
    for _ in 0..12 {
        let e = pr.eval(a, b);
        let r2 = t.0 * (a - pred.0) + t.1 * (b - pred.1);
        let det = e.ga * t.1 - e.gb * t.0;
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        let da = (-e.g * t.1 + r2 * e.gb) / det;
        let db = (-r2 * e.ga + e.g * t.0) / det;
        a += da;
        b += db;
        if (a - pred.0).hypot(b - pred.1) > h {
            return None;
        }
        if da.hypot(db) < 1e-14 {
            let e = pr.eval(a, b);
            return (e.g.abs() < pr.tol).then_some(((a, b), e));
        }
    }
    let e = pr.eval(a, b);
    (e.g.abs() < pr.tol).then_some(((a, b), e))
}

/// Generic damped Newton iteration for two equations in two unknowns.
fn newton2<F>(f: F, start: Pt, tol: f64) -> Option<Pt>
where
    F: Fn(f64, f64) -> ([f64; 2], [[f64; 2]; 2]),
{
    let (mut a, mut b) = start;
    for _ in 0..60 {
        let (r, j) = f(a, b);
        if !(r[0].is_finite() && r[1].is_finite()) {
            return None;
        }
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        let da = (-r[0] * j[1][1] + r[1] * j[0][1]) / det;
        let db = (-r[1] * j[0][0] + r[0] * j[1][0]) / det;
        let len = da.hypot(db);
        let scale = if len > 0.05 { 0.05 / len } else { 1.0 };
        a += scale * da;
        b += scale * db;
        if len < 1e-15 || (r[0].abs().max(r[1].abs()) < tol && len < 1e-12) {
            let (r, _) = f(a, b);
            return (r[0].abs().max(r[1].abs()) < tol).then_some((a, b));
        }
    }
    let (r, _) = f(a, b);
    (r[0].abs().max(r[1].abs()) < tol).then_some((a, b))
}

/// Residual of "the critical point starting in `start` returns to `1/2`
/// after `steps` iterates", with its gradient in `(v, w)`.
fn return_residual(v: f64, w: f64, start: Lane, steps: usize) -> (f64, [f64; 2]) {
    let j = q_orbit_jets(v, w, 0.5, start, steps)[steps];
    (j.x - 0.5, [j.dv, j.dw])
}

/// Newton on the bicritical system `{γ₁ reaches γ₂ after p steps, γ₂ reaches
/// γ₁ after 2n − p steps}`.
fn polish_primary(od: &OrderData, seed: Pt) -> Result<Pt> {
    let left = Problem::new(od, Side::Left)?;
    let (p, q) = (left.meet, left.steps - left.meet);
    let f = |v: f64, w: f64| {
        let (r1, g1) = return_residual(v, w, Lane::One, p);
        let (r2, g2) = return_residual(v, w, Lane::Two, q);
        ([r1, r2], [g1, g2])
    };
    let (v, w) = newton2(f, seed, 1e-13)
        .ok_or_else(|| Error::Numeric(format!("primary Newton for {od} diverged from ({}, {})", seed.0, seed.1)))?;
    let e = left.eval(v, w);
    let pts: Vec<f64> = e.jets[..left.steps].iter().map(|j| j.x).collect();
    let (xs, ys) = split_lanes(&pts, Lane::One);
    if OrderData::from_orbit(&xs, &ys).as_ref() != Some(od) {
        return Err(Error::Numeric(format!("primary Newton for {od} converged to ({v}, {w}) with other order-data")));
    }
    Ok((v, w))
}

/// Trace the bone of `od` on `side` from one boundary endpoint to the other.
pub fn q_trace_bone(od: &OrderData, side: Side, step_init: f64) -> Result<QBone> {
    q_trace_bone_with(od, side, step_init, TOL_CORR)
}

/// [`q_trace_bone`] with an explicit corrector tolerance on `|G|`.
pub fn q_trace_bone_with(od: &OrderData, side: Side, step_init: f64, tol_corr: f64) -> Result<QBone> {
    if !(step_init > 0.0 && step_init <= 0.1) {
        return Err(Error::Domain(format!("step_init {step_init} outside (0, 0.1]")));
    }
    if !(tol_corr > 0.0 && tol_corr <= 1e-6) {
        return Err(Error::Domain(format!("tol_corr {tol_corr} outside (0, 1e-6]")));
    }
    let mut pr = Problem::new(od, side)?;
    pr.tol = tol_corr;
    let (a1, a2) = endpoints_local(&pr)?;
    let max_step = MAX_STEP_FACTOR * step_init;

    let mut z = (a1, 1.0);
    let mut e = pr.eval(z.0, z.1);
    let mut t = unit_tangent(&e).ok_or_else(|| Error::Numeric(format!("singular Jacobian at endpoint of {od}")))?;
    if t.1 > 0.0 {
        t = (-t.0, -t.1);
    }
    let mut local: Vec<Pt> = vec![z];
    let mut markers = vec![pr.marker(&e)];
    let mut residuals = vec![e.g.abs()];
    let mut h = step_init;
    let (mut min_used, mut max_used) = (f64::INFINITY, 0.0f64);
    let (mut accepted, mut rejected, mut streak) = (0usize, 0usize, 0usize);
    let mut complete = false;
    let mut diagnostic = None;

    while accepted + rejected < STEP_BUDGET {
        let pred = (z.0 + h * t.0, z.1 + h * t.1);
        let step = correct(&pr, pred, t, h).and_then(|(zn, en)| {
            let mut tn = unit_tangent(&en)?;
            if tn.0 * t.0 + tn.1 * t.1 < 0.0 {
                tn = (-tn.0, -tn.1);
            }
            let turn = (tn.0 * t.0 + tn.1 * t.1).clamp(-1.0, 1.0).acos();
            (turn < MAX_TURN && (zn.1 > 1.0 || pr.orbit_matches(&en))).then_some((zn, en, tn))
        });
        let Some((zn, en, tn)) = step else {
            rejected += 1;
            streak = 0;
            h *= 0.5;
            if h < MIN_STEP {
                diagnostic = Some(format!("step fell below {MIN_STEP} at ({}, {})", z.0, z.1));
                break;
            }
            continue;
        };
        if zn.1 > 1.0 {
            if local.len() < 3 {
                rejected += 1;
                h *= 0.5;
                continue;
            }
            let s = (1.0 - z.1) / (zn.1 - z.1);
            let guess = z.0 + s * (zn.0 - z.0);
            if (guess - a2).abs() > 1e-3 {
                return Err(Error::Numeric(format!("{side} bone {od} reached the boundary at {guess}, expected {a2}")));
            }
            local.push((a2, 1.0));
            let eb = pr.eval(a2, 1.0);
            markers.push(pr.marker(&eb));
            residuals.push(eb.g.abs());
            complete = true;
            accepted += 1;
            break;
        }
        if !(0.0..=1.0).contains(&zn.0) || zn.1 < 0.0 {
            return Err(Error::Numeric(format!("{side} bone {od} left the unit square at ({}, {})", zn.0, zn.1)));
        }
        min_used = min_used.min(h);
        max_used = max_used.max(h);
        accepted += 1;
        streak += 1;
        z = zn;
        e = en;
        t = tn;
        local.push(z);
        markers.push(pr.marker(&e));
        residuals.push(e.g.abs());
        if streak >= 5 {
            h = (2.0 * h).min(max_step);
            streak = 0;
        }
    }
    if !complete && diagnostic.is_none() {
        diagnostic = Some(format!("step budget {STEP_BUDGET} exhausted at ({}, {})", z.0, z.1));
    }

    let mut polyline: Vec<Pt> = local.iter().map(|&(a, b)| pr.to_vw(a, b)).collect();
    let mut vertices = vec![QVertex { position: 0.0, v: polyline[0].0, w: polyline[0].1, kind: QVertexKind::Boundary }];
    if let Some(i) = (1..markers.len()).find(|&i| (markers[i - 1] > 0.0) != (markers[i] > 0.0)) {
        let s = markers[i - 1] / (markers[i - 1] - markers[i]);
        let seed = lerp(polyline[i - 1], polyline[i], s);
        let p = polish_primary(od, seed)?;
        polyline.insert(i, p);
        let (a, b) = pr.to_vw(p.0, p.1);
        residuals.insert(i, pr.eval(a, b).g.abs());
        vertices.push(QVertex { position: i as f64, v: p.0, w: p.1, kind: QVertexKind::Primary });
    }
    if complete {
        let last = *polyline.last().unwrap();
        vertices.push(QVertex {
            position: (polyline.len() - 1) as f64,
            v: last.0,
            w: last.1,
            kind: QVertexKind::Boundary,
        });
    }
    let max_residual = residuals.iter().copied().fold(0.0, f64::max);
    let mean_residual = residuals.iter().sum::<f64>() / residuals.len() as f64;
    Ok(QBone {
        side,
        order_data: od.clone(),
        polyline,
        vertices,
        trace_meta: TraceMeta {
            step_init,
            tol_corr,
            min_step: if min_used.is_finite() { min_used } else { step_init },
            max_step: max_used,
            accepted,
            rejected,
            max_residual,
            mean_residual,
            complete,
            diagnostic,
        },
    })
}

/// The parameter where `γ₁` and `γ₂` lie on one cycle with order-data `od`.
pub fn q_primary_intersection(od: &OrderData) -> Result<ParamPoint> {
    let bone = q_trace_bone(od, Side::Left, DEFAULT_STEP)?;
    let p = bone.primary().ok_or_else(|| Error::Numeric(format!("traced left bone of {od} has no primary vertex")))?;
    let (v, w) = polish_primary(od, (p.v, p.w))?;
    Ok(ParamPoint::q(v, w))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum QCrossingKind {
    #[serde(rename = "primary")]
    Primary,
    #[serde(rename = "secondary")]
    Secondary(JointOrderData),
}

/// A polished crossing of a left and a right Q bone.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QCrossing {
    pub v: f64,
    pub w: f64,
    pub kind: QCrossingKind,
    /// Segment indices in the left and right polylines that seeded it.
    pub segments: (usize, usize),
}

fn polish_joint(od1: &OrderData, od2: &OrderData, seed: Pt) -> Option<Pt> {
    let (s1, s2) = (od1.period(), od2.period());
    let f = |v: f64, w: f64| {
        let (r1, g1) = return_residual(v, w, Lane::One, s1);
        let (r2, g2) = return_residual(v, w, Lane::Two, s2);
        ([r1, r2], [g1, g2])
    };
    newton2(f, seed, 1e-12)
}

fn classify_joint(left: &Problem, right: &Problem, p: Pt) -> Result<QCrossingKind> {
    let e1 = left.eval(p.0, p.1);
    let e2 = right.eval(p.1, p.0);
    if !left.orbit_matches(&e1) || !right.orbit_matches(&e2) {
        return Err(Error::Numeric(format!("crossing ({}, {}) lost the bone order-data", p.0, p.1)));
    }
    if left.od == right.od && left.marker(&e1).abs() < 1e-6 {
        return Ok(QCrossingKind::Primary);
    }
    let c1: Vec<f64> = e1.jets[..left.steps].iter().map(|j| j.x).collect();
    let c2: Vec<f64> = e2.jets[..right.steps].iter().map(|j| j.x).collect();
    Ok(QCrossingKind::Secondary(joint_from_cycles(&c1, &c2)?))
}

fn crossings_once(left: &QBone, right: &QBone) -> Result<Option<Vec<QCrossing>>> {
    let lp = Problem::new(&left.order_data, Side::Left)?;
    let rp = Problem::new(&right.order_data, Side::Right)?;
    let raw = polyline_crossings(&left.polyline, &right.polyline);
    let mut out: Vec<QCrossing> = Vec::new();
    for (i, t, j, _) in raw {
        let seed = lerp(left.polyline[i], left.polyline[i + 1], t);
        let kind0 = if lp.od == rp.od && lp.marker(&lp.eval(seed.0, seed.1)).abs() < 1e-3 {
            Some(QCrossingKind::Primary)
        } else {
            None
        };
        let p = match kind0 {
            Some(_) => polish_primary(&lp.od, seed)?,
            None => polish_joint(&lp.od, &rp.od, seed).ok_or_else(|| {
                Error::Numeric(format!(
                    "crossing of {} and {} near ({}, {}) failed to polish",
                    lp.od, rp.od, seed.0, seed.1
                ))
            })?,
        };
        let kind = classify_joint(&lp, &rp, p)?;
        if let Some(c) = out.iter().find(|c| (c.v - p.0).hypot(c.w - p.1) < 1e-9) {
            // A crossing through a shared polyline vertex is seen from the
            // neighbouring segments too; any other repeat is an ambiguous seed.
            if c.segments.0.abs_diff(i) <= 1 && c.segments.1.abs_diff(j) <= 1 {
                continue;
            }
            return Ok(None);
        }
        out.push(QCrossing { v: p.0, w: p.1, kind, segments: (i, j) });
    }
    let mut seen = Vec::new();
    for c in &out {
        if let QCrossingKind::Secondary(j) = &c.kind {
            if seen.contains(&j) {
                return Ok(None);
            }
            seen.push(j);
        }
    }
    out.sort_by(|a, b| a.v.total_cmp(&b.v).then(a.w.total_cmp(&b.w)));
    Ok(Some(out))
}

/// All crossings of a traced left and right bone, including the primary
/// one when both carry the same order-data. Ambiguous seeds trigger a
/// re-trace of both bones at half the step.
pub fn q_bone_crossings(left: &QBone, right: &QBone) -> Result<Vec<QCrossing>> {
    if left.side != Side::Left || right.side != Side::Right {
        return Err(Error::Domain("expected a left bone and a right bone".into()));
    }
    if let Some(c) = crossings_once(left, right)? {
        return Ok(c);
    }
    let mut step = left.trace_meta.step_init.min(right.trace_meta.step_init);
    for _ in 0..4 {
        step *= 0.5;
        let l = q_trace_bone(&left.order_data, Side::Left, step)?;
        let r = q_trace_bone(&right.order_data, Side::Right, step)?;
        if let Some(c) = crossings_once(&l, &r)? {
            return Ok(c);
        }
    }
    Err(Error::Numeric(format!(
        "crossings of {} and {} stay ambiguous down to step {step}",
        left.order_data, right.order_data
    )))
}

/// Secondary crossings of a left and a right bone with their joint order-data.
pub fn q_secondary_intersections(left: &QBone, right: &QBone) -> Result<Vec<(ParamPoint, JointOrderData)>> {
    Ok(q_bone_crossings(left, right)?
        .into_iter()
        .filter_map(|c| match c.kind {
            QCrossingKind::Secondary(j) => Some((ParamPoint::q(c.v, c.w), j)),
            QCrossingKind::Primary => None,
        })
        .collect())
}

/// Angle between the tangents of bones `a` and `b` at `crossing`, in
/// `[0, π/2]`.
pub fn transversality_check(a: &QBone, b: &QBone, crossing: &ParamPoint) -> Result<f64> {
    if a.side == b.side && a.order_data == b.order_data {
        return Err(Error::Domain("a bone is not transverse to itself".into()));
    }
    let grad = |bone: &QBone| -> Result<[f64; 2]> {
        let start = match bone.side {
            Side::Left => Lane::One,
            Side::Right => Lane::Two,
        };
        let (r, g) = return_residual(crossing.v, crossing.w, start, bone.order_data.period());
        if r.abs() > 1e-8 {
            return Err(Error::Domain(format!(
                "({}, {}) is not on the {} bone {}",
                crossing.v, crossing.w, bone.side, bone.order_data
            )));
        }
        let norm = g[0].hypot(g[1]);
        if !(norm > 1e-14 && norm.is_finite()) {
            return Err(Error::Numeric(format!("singular Jacobian of {} at the crossing", bone.order_data)));
        }
        Ok([g[0] / norm, g[1] / norm])
    };
    let (ga, gb) = (grad(a)?, grad(b)?);
    let cos = (ga[0] * gb[0] + ga[1] * gb[1]).abs().min(1.0);
    Ok(cos.acos())
}
