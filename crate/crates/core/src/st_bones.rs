//! Exact bones of the stunted tent model space.
//!
//! Every quantity here is a dyadic rational. A left bone is the three-segment
//! path `{v1} × [w0, 1] ∪ [v1, v2] × {w0} ∪ {v2} × [w0, 1]`; a right bone is
//! the mirror image (coordinates exchanged) of the left bone of the swapped
//! order-data.

use serde::Serialize;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::families::stunted::{eval_stunted, st_branch, StBranch};
use crate::families::{st_orbit, OrbitStatus};
use crate::symbolic::{
    check_admissible, compare_itineraries, order_data_to_bicritical_itinerary, Itinerary, JointOrderData, Kind, Lane,
    OrderData, Symbol,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    #[serde(rename = "left")]
    Left,
    #[serde(rename = "right")]
    Right,
}

impl std::str::FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Side> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            _ => Err(Error::Parse(format!("unknown side '{s}'"))),
        }
    }
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum DistinguishedKind {
    Primary,
    Secondary(JointOrderData),
    Capture,
}

/// A parameter on a bone where the free critical point (`γ₂` on left bones,
/// `γ₁` on right bones) is eventually periodic through a critical point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistinguishedPoint {
    pub v: Dyadic,
    pub w: Dyadic,
    pub kind: DistinguishedKind,
    /// Itinerary of the free critical point.
    pub itinerary2: Itinerary,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StBone {
    pub side: Side,
    pub order_data: OrderData,
    pub v0: Dyadic,
    pub w0: Dyadic,
    /// Positions of the two legs: `v`-coordinates for a left bone,
    /// `w`-coordinates for a right bone.
    pub v1: Dyadic,
    pub v2: Dyadic,
    pub distinguished: Vec<DistinguishedPoint>,
}

/// A closed axis-parallel segment `(v_a, w_a) – (v_b, w_b)`.
pub type Segment = ((Dyadic, Dyadic), (Dyadic, Dyadic));

impl StBone {
    /// The three segments: first leg, horizontal (left) or vertical (right)
    /// middle segment, second leg.
    pub fn segments(&self) -> [Segment; 3] {
        let one = Dyadic::ONE;
        let base = match self.side {
            Side::Left => self.w0,
            Side::Right => self.v0,
        };
        let left =
            [((self.v1, one), (self.v1, base)), ((self.v1, base), (self.v2, base)), ((self.v2, base), (self.v2, one))];
        match self.side {
            Side::Left => left,
            Side::Right => left.map(|((a, b), (c, d))| ((b, a), (d, c))),
        }
    }

    /// Whether `(v, w)` lies on the bone's geometry.
    pub fn contains(&self, v: Dyadic, w: Dyadic) -> bool {
        self.segments()
            .iter()
            .any(|&((va, wa), (vb, wb))| v >= va.min(vb) && v <= va.max(vb) && w >= wa.min(wb) && w <= wa.max(wb))
    }

    /// Boundary endpoints, ordered along the bone.
    pub fn endpoints(&self) -> [(Dyadic, Dyadic); 2] {
        let s = self.segments();
        [s[0].0, s[2].1]
    }
}

fn param_for(lane: Lane, v: Dyadic, w: Dyadic) -> Dyadic {
    if lane == Lane::One {
        v
    } else {
        w
    }
}

/// Invert the branches named by `symbols` starting from `target`, walking
/// backwards; `symbols[i]` is the lap of the point that maps to the next one.
fn back_substitute(symbols: &[Symbol], target: Dyadic) -> Dyadic {
    symbols.iter().rev().fold(target, |y, s| match s.kind {
        Kind::L => y.half(),
        Kind::R => Dyadic::ONE - y.half(),
        Kind::C => unreachable!("critical symbols are excluded by the caller"),
    })
}

/// Forward check that the orbit of `γ₁` at `(v, w)` follows `period` with every
/// non-critical point strictly inside its monotone lap.
fn follows_strictly(period: &[Symbol], v: Dyadic, w: Dyadic) -> bool {
    let mut x = Dyadic::HALF;
    for s in period {
        let h = param_for(s.lane, v, w);
        let ok = match s.kind {
            Kind::C => x == Dyadic::HALF,
            Kind::L => st_branch(h, x) == StBranch::Up,
            Kind::R => st_branch(h, x) == StBranch::Down,
        };
        if !ok {
            return false;
        }
        x = eval_stunted(h, x);
    }
    x == Dyadic::HALF
}

/// The unique stunted tent pair with a bicritical orbit of order-data `od`.
pub fn st_bicritical_params(od: &OrderData) -> Result<(Dyadic, Dyadic)> {
    let it = order_data_to_bicritical_itinerary(od)?;
    let per = it.period();
    let p = per.iter().position(|s| s.lane == Lane::Two && s.kind == Kind::C).expect("bicritical itinerary");
    let v = back_substitute(&per[1..p], Dyadic::HALF);
    let w = back_substitute(&per[p + 1..], Dyadic::HALF);
    if !follows_strictly(per, v, w) {
        return Err(Error::Infeasible(format!("back-substitution for {od} does not reproduce its itinerary")));
    }
    Ok((v, w))
}

/// `x_p` as an affine function `a·v + b` of `v`, where `x_1 = v` and the
/// branches of `x_1 … x_{p-1}` are given.
fn affine_forward(symbols: &[Symbol]) -> (Dyadic, Dyadic) {
    symbols.iter().fold((Dyadic::ONE, Dyadic::ZERO), |(a, b), s| match s.kind {
        Kind::L => (a.double(), b.double()),
        Kind::R => (-a.double(), Dyadic::from_int(2) - b.double()),
        Kind::C => unreachable!("critical symbols are excluded by the caller"),
    })
}

fn left_bone(od: &OrderData) -> Result<StBone> {
    let (v0, w0) = st_bicritical_params(od)?;
    let it = order_data_to_bicritical_itinerary(od)?;
    let per = it.period();
    let p = per.iter().position(|s| s.lane == Lane::Two && s.kind == Kind::C).unwrap();
    let (a, b) = affine_forward(&per[1..p]);
    let lo_edge = w0.half();
    let hi_edge = Dyadic::ONE - w0.half();
    let sa = Dyadic::solve_pow2_affine(a, b, lo_edge).expect("slope is a power of two");
    let sb = Dyadic::solve_pow2_affine(a, b, hi_edge).expect("slope is a power of two");
    let (v1, v2) = if sa < sb { (sa, sb) } else { (sb, sa) };
    if !(v1 < v0 && v0 < v2) {
        return Err(Error::Infeasible(format!("bone of {od} violates v1 < v0 < v2")));
    }
    for (v, w) in [(v1, w0), (v2, w0), (v1, Dyadic::ONE), (v2, Dyadic::ONE)] {
        let r = st_orbit(v, w, Dyadic::HALF, Lane::One, od.period());
        let ok = r.status == (OrbitStatus::Periodic { period: od.period() })
            && cycle_order_data(&r.points, Lane::One).as_ref() == Some(od);
        if !ok {
            return Err(Error::Infeasible(format!("bone of {od} fails at ({v}, {w})")));
        }
    }
    let primary = DistinguishedPoint {
        v: v0,
        w: w0,
        kind: DistinguishedKind::Primary,
        itinerary2: st_orbit(v0, w0, Dyadic::HALF, Lane::Two, 4 * od.period()).itinerary,
    };
    Ok(StBone { side: Side::Left, order_data: od.clone(), v0, w0, v1, v2, distinguished: vec![primary] })
}

fn cycle_order_data(points: &[Dyadic], start: Lane) -> Option<OrderData> {
    let off = if start == Lane::One { 0 } else { 1 };
    let p = points.len();
    let xs: Vec<Dyadic> = (0..p / 2).map(|k| points[(2 * k + off) % p]).collect();
    let ys: Vec<Dyadic> = (0..p / 2).map(|k| points[(2 * k + off + 1) % p]).collect();
    OrderData::from_orbit(&xs, &ys)
}

fn swap_lanes(it: &Itinerary) -> Itinerary {
    let flip = |s: &[Symbol]| s.iter().map(|x| Symbol::new(x.lane.other(), x.kind)).collect::<Vec<_>>();
    Itinerary::new(flip(it.preperiod()), flip(it.period())).expect("lane swap keeps alternation")
}

fn mirror_point(p: DistinguishedPoint) -> DistinguishedPoint {
    let kind = match p.kind {
        DistinguishedKind::Secondary(j) => DistinguishedKind::Secondary(
            JointOrderData::new(j.tau().to_vec(), j.sigma().to_vec()).expect("mirrored joint order-data stays valid"),
        ),
        k => k,
    };
    DistinguishedPoint { v: p.w, w: p.v, kind, itinerary2: swap_lanes(&p.itinerary2) }
}

fn mirror_bone(b: StBone) -> StBone {
    StBone {
        side: Side::Right,
        order_data: b.order_data.swapped(),
        v0: b.w0,
        w0: b.v0,
        v1: b.v1,
        v2: b.v2,
        distinguished: b.distinguished.into_iter().map(mirror_point).collect(),
    }
}

/// The left or right bone of order-data `od`.
pub fn st_bone(od: &OrderData, side: Side) -> Result<StBone> {
    if !check_admissible(od) {
        return Err(Error::Domain(format!("inadmissible order-data {od}")));
    }
    match side {
        Side::Left => left_bone(od),
        Side::Right => Ok(mirror_bone(left_bone(&od.swapped())?)),
    }
}

/// Joint order-data of a `γ₁` cycle `c1` (starting in lane 1) and a `γ₂`
/// cycle `c2` (starting in lane 2).
pub(crate) fn joint_from_cycles<T: PartialOrd + Copy>(c1: &[T], c2: &[T]) -> Result<JointOrderData> {
    let xs1: Vec<T> = c1.iter().step_by(2).copied().collect();
    let ys1: Vec<T> = c1.iter().skip(1).step_by(2).copied().collect();
    let ys2: Vec<T> = c2.iter().step_by(2).copied().collect();
    let xs2: Vec<T> = c2.iter().skip(1).step_by(2).copied().collect();
    JointOrderData::from_orbits(&xs1, &ys1, &ys2, &xs2)
}

/// Classify the parameter `(v, w)` by the orbit of `γ₂` relative to the
/// periodic orbit of `γ₁`, looking `depth` steps ahead.
fn classify_left_point(v: Dyadic, w: Dyadic, depth: usize, cycle1: &[Dyadic]) -> Option<DistinguishedPoint> {
    let mut x = Dyadic::HALF;
    let mut lane = Lane::Two;
    let mut pts = vec![x];
    for _ in 0..depth {
        x = eval_stunted(param_for(lane, v, w), x);
        lane = lane.other();
        if x == Dyadic::HALF {
            let it2 = st_orbit(v, w, Dyadic::HALF, Lane::Two, 4 * (depth + cycle1.len()) + 8).itinerary;
            let kind = if lane == Lane::One {
                DistinguishedKind::Capture
            } else {
                DistinguishedKind::Secondary(joint_from_cycles(cycle1, &pts).ok()?)
            };
            return Some(DistinguishedPoint { v, w, kind, itinerary2: it2 });
        }
        pts.push(x);
    }
    None
}

/// Affine function `a·w + b` with a conservative floating-point interval of
/// `w` on which the branch history leading to it is possible.
#[derive(Clone, Copy)]
struct Node {
    a: Dyadic,
    b: Dyadic,
    lane: Lane,
    lo: f64,
    hi: f64,
}

const EPS: f64 = 1e-12;

/// Restrict `[lo, hi]` to `{w : c·w + d ≤ 0}` (with slack).
fn restrict(lo: f64, hi: f64, c: f64, d: f64) -> Option<(f64, f64)> {
    if c == 0.0 {
        return if d <= EPS { Some((lo, hi)) } else { None };
    }
    let r = -d / c;
    let (nlo, nhi) = if c > 0.0 { (lo, hi.min(r + EPS)) } else { (lo.max(r - EPS), hi) };
    (nlo <= nhi).then_some((nlo, nhi))
}

/// Candidate parameters `w ∈ [w_min, 1]` at which some iterate `1..=depth`
/// of `γ₂` equals `1/2`, for fixed `v`.
fn vertical_candidates(v: Dyadic, w_min: Dyadic, depth: usize) -> Vec<Dyadic> {
    let half = Dyadic::HALF;
    let mut out = Vec::new();
    // x_1 = st_w(1/2) = w.
    let mut stack =
        vec![(Node { a: Dyadic::ONE, b: Dyadic::ZERO, lane: Lane::One, lo: w_min.to_f64(), hi: 1.0 }, 1usize)];
    while let Some((n, k)) = stack.pop() {
        if !n.a.is_zero() {
            if let Some(ws) = Dyadic::solve_pow2_affine(n.a, n.b, half) {
                let wf = ws.to_f64();
                if ws >= w_min && ws <= Dyadic::ONE && wf >= n.lo - EPS && wf <= n.hi + EPS {
                    out.push(ws);
                }
            }
        }
        if k == depth {
            continue;
        }
        let (a, b) = (n.a.to_f64(), n.b.to_f64());
        let next_lane = n.lane.other();
        let mut push = |range: Option<(f64, f64)>, na: Dyadic, nb: Dyadic| {
            if let Some((lo, hi)) = range {
                stack.push((Node { a: na, b: nb, lane: next_lane, lo, hi }, k + 1));
            }
        };
        let two = Dyadic::from_int(2);
        match n.lane {
            Lane::One => {
                let (e1, e2) = (v.half().to_f64(), 1.0 - v.half().to_f64());
                push(restrict(n.lo, n.hi, a, b - e1), n.a.double(), n.b.double());
                let flat = restrict(n.lo, n.hi, -a, e1 - b).and_then(|(l, h)| restrict(l, h, a, b - e2));
                push(flat, Dyadic::ZERO, v);
                push(restrict(n.lo, n.hi, -a, e2 - b), -n.a.double(), two - n.b.double());
            }
            Lane::Two => {
                push(restrict(n.lo, n.hi, a - 0.5, b), n.a.double(), n.b.double());
                let flat = restrict(n.lo, n.hi, 0.5 - a, -b).and_then(|(l, h)| restrict(l, h, a + 0.5, b - 1.0));
                push(flat, Dyadic::ONE, Dyadic::ZERO);
                push(restrict(n.lo, n.hi, -(a + 0.5), 1.0 - b), -n.a.double(), two - n.b.double());
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Distinguished points of depth at most `m` along the whole bone, ordered
/// from the first boundary endpoint through the primary vertex to the second.
///
/// Points on the middle segment are all capture points with a common
/// itinerary; only the primary vertex is listed from it.
pub fn st_distinguished_points(bone: &StBone, m: usize) -> Vec<DistinguishedPoint> {
    match bone.side {
        Side::Left => left_distinguished(bone, m),
        Side::Right => {
            let left = left_bone(&bone.order_data.swapped()).expect("bone was constructed before");
            left_distinguished(&left, m).into_iter().map(mirror_point).collect()
        }
    }
}

fn left_distinguished(bone: &StBone, m: usize) -> Vec<DistinguishedPoint> {
    let depth = 2 * m;
    let leg = |v: Dyadic| -> Vec<DistinguishedPoint> {
        let cycle1 = st_orbit(v, Dyadic::ONE, Dyadic::HALF, Lane::One, bone.order_data.period()).points;
        vertical_candidates(v, bone.w0, depth)
            .into_iter()
            .filter(|&w| w > bone.w0)
            .filter_map(|w| classify_left_point(v, w, depth, &cycle1))
            .collect()
    };
    let mut first = leg(bone.v1);
    first.reverse();
    let primary = bone.distinguished.iter().find(|p| p.kind == DistinguishedKind::Primary).cloned();
    let mut out = first;
    out.extend(primary);
    out.extend(leg(bone.v2));
    out
}

/// Classification of an arbitrary point of a left bone, following `γ₂` for
/// `depth` steps.
pub fn st_classify_on_bone(bone: &StBone, v: Dyadic, w: Dyadic, depth: usize) -> Option<DistinguishedPoint> {
    if bone.side != Side::Left || !bone.contains(v, w) {
        return None;
    }
    if (v, w) == (bone.v0, bone.w0) {
        return bone.distinguished.iter().find(|p| p.kind == DistinguishedKind::Primary).cloned();
    }
    let cycle1 = st_orbit(v, w, Dyadic::HALF, Lane::One, bone.order_data.period()).points;
    classify_left_point(v, w, depth, &cycle1)
}

/// Whether consecutive free-critical-point itineraries along one leg change
/// strictly and always in the same direction.
pub fn strictly_monotone(points: &[DistinguishedPoint]) -> bool {
    let mut dir = None;
    for pair in points.windows(2) {
        let Ok(ord) = compare_itineraries(&pair[0].itinerary2, &pair[1].itinerary2) else { return false };
        if ord == std::cmp::Ordering::Equal {
            return false;
        }
        match dir {
            None => dir = Some(ord),
            Some(d) if d != ord => return false,
            _ => {}
        }
    }
    true
}

/// Crossing of a left and a right ST bone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StCrossing {
    pub v: Dyadic,
    pub w: Dyadic,
    pub kind: DistinguishedKind,
}

/// All points where `left` and `right` meet, classified exactly.
pub fn st_crossings(left: &StBone, right: &StBone) -> Result<Vec<StCrossing>> {
    if left.side != Side::Left || right.side != Side::Right {
        return Err(Error::Domain("expected a left bone and a right bone".into()));
    }
    let mut pts = Vec::new();
    for &((va, wa), (vb, wb)) in &left.segments() {
        for &((vc, wc), (vd, wd)) in &right.segments() {
            let (vlo, vhi) = (va.min(vb).max(vc.min(vd)), va.max(vb).min(vc.max(vd)));
            let (wlo, whi) = (wa.min(wb).max(wc.min(wd)), wa.max(wb).min(wc.max(wd)));
            if vlo > vhi || wlo > whi {
                continue;
            }
            if vlo != vhi || wlo != whi {
                return Err(Error::Numeric(format!(
                    "bones {} and {} overlap along a segment",
                    left.order_data, right.order_data
                )));
            }
            pts.push((vlo, wlo));
        }
    }
    pts.sort();
    pts.dedup();
    pts.into_iter()
        .map(|(v, w)| {
            let kind = classify_crossing(v, w, &left.order_data, &right.order_data)?;
            Ok(StCrossing { v, w, kind })
        })
        .collect()
}

fn classify_crossing(v: Dyadic, w: Dyadic, od1: &OrderData, od2: &OrderData) -> Result<DistinguishedKind> {
    let o1 = st_orbit(v, w, Dyadic::HALF, Lane::One, od1.period());
    let o2 = st_orbit(v, w, Dyadic::HALF, Lane::Two, od2.period());
    if o1.status != (OrbitStatus::Periodic { period: od1.period() })
        || o2.status != (OrbitStatus::Periodic { period: od2.period() })
    {
        return Err(Error::Numeric(format!("crossing ({v}, {w}) is not periodic for both critical points")));
    }
    if o1.points.iter().skip(1).step_by(2).any(|&y| y == Dyadic::HALF) {
        return Ok(DistinguishedKind::Primary);
    }
    Ok(DistinguishedKind::Secondary(joint_from_cycles(&o1.points, &o2.points)?))
}

/// The unique ST parameter whose critical orbits are disjoint and periodic
/// with joint order-data `jod`.
pub fn st_secondary_intersection(jod: &JointOrderData) -> Result<(Dyadic, Dyadic)> {
    let left = st_bone(&jod.first_order_data(), Side::Left)?;
    let right = st_bone(&jod.second_order_data(), Side::Right)?;
    let hits: Vec<(Dyadic, Dyadic)> = st_crossings(&left, &right)?
        .into_iter()
        .filter(|c| c.kind == DistinguishedKind::Secondary(jod.clone()))
        .map(|c| (c.v, c.w))
        .collect();
    match hits.as_slice() {
        [p] => Ok(*p),
        [] => Err(Error::Infeasible(format!("no stunted pair realizes joint order-data {jod}"))),
        _ => Err(Error::Numeric(format!("joint order-data {jod} realized {} times", hits.len()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::admissible_order_data;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    fn od(s: &[usize], t: &[usize]) -> OrderData {
        OrderData::new(s.to_vec(), t.to_vec()).unwrap()
    }

    #[test]
    fn period_two_parameters() {
        assert_eq!(st_bicritical_params(&od(&[1], &[1])).unwrap(), (d("1/2"), d("1/2")));
    }

    #[test]
    fn period_four_parameters() {
        assert_eq!(st_bicritical_params(&od(&[1, 2], &[2, 1])).unwrap(), (d("7/8"), d("1/2")));
        assert_eq!(st_bicritical_params(&od(&[2, 1], &[1, 2])).unwrap(), (d("1/2"), d("7/8")));
    }

    #[test]
    fn period_two_bone_shape() {
        let b = st_bone(&od(&[1], &[1]), Side::Left).unwrap();
        assert_eq!((b.v1, b.v2, b.w0), (d("1/4"), d("3/4"), d("1/2")));
        let r = st_bone(&od(&[1], &[1]), Side::Right).unwrap();
        assert_eq!((r.v1, r.v2, r.v0), (d("1/4"), d("3/4"), d("1/2")));
        assert!(r.contains(d("7/8"), d("1/4")));
        assert!(!r.contains(d("1/4"), d("7/8")));
    }

    #[test]
    fn four_bone_legs() {
        let b = st_bone(&od(&[1, 2], &[2, 1]), Side::Left).unwrap();
        assert_eq!((b.v1, b.v2), (d("13/16"), d("15/16")));
    }

    #[test]
    fn four_two_crossings_have_the_known_joint_data() {
        let left = st_bone(&od(&[1, 2], &[2, 1]), Side::Left).unwrap();
        let right = st_bone(&od(&[1], &[1]), Side::Right).unwrap();
        let xs = st_crossings(&left, &right).unwrap();
        assert_eq!(xs.len(), 2);
        let want = [
            (d("13/16"), d("3/4"), JointOrderData::new(vec![2, 3, 1], vec![3, 2, 1]).unwrap()),
            (d("15/16"), d("3/4"), JointOrderData::new(vec![1, 3, 2], vec![2, 3, 1]).unwrap()),
        ];
        for (c, (v, w, j)) in xs.iter().zip(want) {
            assert_eq!((c.v, c.w), (v, w));
            assert_eq!(c.kind, DistinguishedKind::Secondary(j));
        }
    }

    #[test]
    fn same_order_data_meets_at_primary_and_one_secondary() {
        let o = od(&[1, 2], &[2, 1]);
        let left = st_bone(&o, Side::Left).unwrap();
        let right = st_bone(&o, Side::Right).unwrap();
        let xs = st_crossings(&left, &right).unwrap();
        assert_eq!(xs.len(), 2);
        assert!(xs.iter().any(|c| c.kind == DistinguishedKind::Primary && (c.v, c.w) == (d("7/8"), d("1/2"))));
        assert!(xs.iter().any(|c| matches!(c.kind, DistinguishedKind::Secondary(_))));
    }

    #[test]
    fn period_two_distinguished() {
        // The left and right period-2 bones also cross at (3/4, 3/4), where
        // each critical point has its own period-2 orbit.
        let b = st_bone(&od(&[1], &[1]), Side::Left).unwrap();
        let m1 = st_distinguished_points(&b, 1);
        let kinds: Vec<_> = m1.iter().map(|p| (p.v, p.w, p.kind.clone())).collect();
        let j = JointOrderData::new(vec![2, 1], vec![2, 1]).unwrap();
        assert_eq!(
            kinds,
            vec![
                (d("1/2"), d("1/2"), DistinguishedKind::Primary),
                (d("3/4"), d("3/4"), DistinguishedKind::Secondary(j)),
            ]
        );
        let m2 = st_distinguished_points(&b, 2);
        let ws: Vec<Dyadic> = m2
            .iter()
            .filter(|p| matches!(p.kind, DistinguishedKind::Secondary(_)))
            .map(|p| {
                assert_eq!(p.v, d("3/4"));
                p.w
            })
            .collect();
        assert_eq!(ws, vec![d("3/4"), d("13/16"), d("15/16")]);
    }

    #[test]
    fn horizontal_segment_is_capture() {
        let b = st_bone(&od(&[1, 2], &[2, 1]), Side::Left).unwrap();
        assert!(b.v1 < Dyadic::new(53, 6) && Dyadic::new(55, 6) < b.v0);
        let its: Vec<Itinerary> = (53..=55)
            .map(|num| {
                let p = st_classify_on_bone(&b, Dyadic::new(num, 6), b.w0, 16).unwrap();
                assert_eq!(p.kind, DistinguishedKind::Capture);
                p.itinerary2
            })
            .collect();
        assert!(its.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn boundary_endpoint_itinerary() {
        for o in admissible_order_data(2) {
            let b = st_bone(&o, Side::Left).unwrap();
            for v in [b.v1, b.v2] {
                let it = st_orbit(v, Dyadic::ONE, Dyadic::HALF, Lane::Two, 50).itinerary;
                assert_eq!(it.to_string(), "G2 R1 | L2 L1");
            }
        }
    }

    #[test]
    fn secondary_solver_matches_crossing() {
        let j = JointOrderData::new(vec![2, 3, 1], vec![3, 2, 1]).unwrap();
        assert_eq!(st_secondary_intersection(&j).unwrap(), (d("13/16"), d("3/4")));
    }
}
