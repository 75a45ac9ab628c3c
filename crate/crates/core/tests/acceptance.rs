//! Acceptance suite. Each criterion prints one PASS or FAIL line with its
//! metrics and its runtime against the budget. A failing criterion is
//! reported, never turned into a panic, so every line is always printed.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use isentropes_core::entropy::{entropy_estimate, entropy_grid, entropy_monotonicity_audit, neg_count, EntropyGrid};
use isentropes_core::families::st_symbol;
use isentropes_core::q_bones::{
    q_bone_crossings, q_primary_intersection, q_trace_bone, transversality_check, QBone, QCrossingKind, DEFAULT_STEP,
};
use isentropes_core::skeleton::{
    build_skeleton, isentrope_extract, refinement_audit_grids, vertex_correspondence, Correspondence, SkeletonComplex,
};
use isentropes_core::st_bones::{st_bicritical_params, st_bone, st_crossings, DistinguishedKind, Side, StBone};
use isentropes_core::symbolic::{
    admissible_order_data, check_admissible, order_data_to_bicritical_itinerary, Lane, Symbol,
};
use isentropes_core::{Dyadic, Family, JointOrderData, OrderData, ParamPoint};

use common::{random_params, scan_neg, LOG4};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn criterion(number: usize, title: &str, budget: Duration, check: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let result = panic::catch_unwind(AssertUnwindSafe(check));
    let elapsed = start.elapsed();
    let (pass, detail) = match result {
        Ok(o) if elapsed > budget => (false, format!("{}; over budget", o.detail)),
        Ok(o) => (o.pass, o.detail),
        Err(e) => {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            (false, format!("panicked: {msg}"))
        }
    };
    println!(
        "{} criterion {number} ({title}): {detail} [{:.1} s of {} s]",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    pass
}

/// Descent once means descent forever: increasing, then decreasing.
fn unimodal(p: &[usize]) -> bool {
    let mut falling = false;
    for w in p.windows(2) {
        if w[1] < w[0] {
            falling = true;
        } else if falling {
            return false;
        }
    }
    true
}

/// Whether `i ↦ τ(σ(i))` is a single n-cycle.
fn single_cycle(sigma: &[usize], tau: &[usize]) -> bool {
    let n = sigma.len();
    let mut i = 1;
    for step in 1..=n {
        i = tau[sigma[i - 1] - 1];
        if i == 1 {
            return step == n;
        }
    }
    false
}

fn order_data_enumeration() -> Outcome {
    let counts: Vec<usize> = (1..=3).map(|n| admissible_order_data(n).len()).collect();
    let (mut pairs, mut disagreements) = (0, 0);
    for n in 1..=5 {
        let perms: Vec<Vec<usize>> = (1..=n).permutations(n).collect();
        let mut brute = BTreeSet::new();
        for s in &perms {
            for t in &perms {
                pairs += 1;
                let od = OrderData::new(s.clone(), t.clone()).unwrap();
                let ok = unimodal(s) && unimodal(t) && single_cycle(s, t);
                if ok != check_admissible(&od) {
                    disagreements += 1;
                }
                if ok {
                    brute.insert(od);
                }
            }
        }
        let listed = admissible_order_data(n);
        if listed.len() != brute.len() || listed.into_iter().collect::<BTreeSet<_>>() != brute {
            disagreements += 1;
        }
    }
    outcome(
        counts == [1, 2, 5] && disagreements == 0,
        format!("counts {counts:?} for periods 2, 4, 6; {pairs} pairs brute-forced for n <= 5, {disagreements} disagreements"),
    )
}

/// `min(v, T(x))` with `T` the full tent map.
fn stunted(v: Dyadic, x: Dyadic) -> Dyadic {
    let tent = if x <= Dyadic::HALF { x.double() } else { Dyadic::from_int(2) - x.double() };
    tent.min(v)
}

/// Orbit of `1/2` started in `start`, `steps` points long, alternating the
/// maps `st_v` (lane 1) and `st_w` (lane 2). Returns the points and lanes.
fn critical_orbit(v: Dyadic, w: Dyadic, start: Lane, steps: usize) -> Vec<(Dyadic, Lane)> {
    let (mut x, mut lane) = (Dyadic::HALF, start);
    (0..=steps)
        .map(|_| {
            let here = (x, lane);
            x = stunted(if lane == Lane::One { v } else { w }, x);
            lane = lane.other();
            here
        })
        .collect()
}

/// Order-data of the bone through `(v, w)` whose critical point starts in
/// `start`, if that critical point has exact period `2n`.
fn simulated_bone(v: Dyadic, w: Dyadic, start: Lane, n: usize) -> Option<OrderData> {
    let orbit = critical_orbit(v, w, start, 2 * n);
    let returns = |d: usize| orbit[2 * d].0 == Dyadic::HALF;
    if !returns(n) || (1..n).any(returns) {
        return None;
    }
    let pts: Vec<Dyadic> = orbit[..2 * n].iter().map(|p| p.0).collect();
    let (xs, ys): (Vec<Dyadic>, Vec<Dyadic>) = match start {
        Lane::One => (pts.iter().step_by(2).copied().collect(), pts.iter().skip(1).step_by(2).copied().collect()),
        Lane::Two => {
            let xs = pts.iter().skip(1).step_by(2).copied().collect();
            let mut ys: Vec<Dyadic> = pts.iter().step_by(2).copied().collect();
            ys.rotate_left(1);
            (xs, ys)
        }
    };
    OrderData::from_orbit(&xs, &ys)
}

fn st_bicritical_solver() -> Outcome {
    let (mut checked, mut failures) = (0, Vec::new());
    for n in 1..=5 {
        for od in admissible_order_data(n) {
            checked += 1;
            let (v, w) = st_bicritical_params(&od).unwrap();
            let orbit = critical_orbit(v, w, Lane::One, 2 * n);
            let symbols: Vec<Symbol> = orbit[..2 * n].iter().map(|&(x, lane)| st_symbol(lane, x)).collect();
            let itinerary = order_data_to_bicritical_itinerary(&od).unwrap();
            let ok = simulated_bone(v, w, Lane::One, n).as_ref() == Some(&od) && symbols == itinerary.period();
            if !ok {
                failures.push(od.to_string());
            }
        }
    }
    let od1 = OrderData::new(vec![1], vec![1]).unwrap();
    let half = st_bicritical_params(&od1).unwrap() == (Dyadic::HALF, Dyadic::HALF);
    outcome(
        failures.is_empty() && half,
        format!(
            "{checked} order-data up to period 10 simulated exactly, mismatches: {}; period 2 at (1/2, 1/2): {half}",
            if failures.is_empty() { "none".to_string() } else { failures.join(", ") }
        ),
    )
}

fn dyadic(num: i128, exp: u32) -> Dyadic {
    Dyadic::new(num, exp)
}

fn normalized(seg: ((Dyadic, Dyadic), (Dyadic, Dyadic))) -> ((Dyadic, Dyadic), (Dyadic, Dyadic)) {
    (seg.0.min(seg.1), seg.0.max(seg.1))
}

/// Legs at `v1 < v2` around the primary coordinate, middle segment strictly
/// inside the square.
fn three_segment_shape(b: &StBone) -> bool {
    let (along, across) = match b.side {
        Side::Left => (b.v0, b.w0),
        Side::Right => (b.w0, b.v0),
    };
    b.v1 < along && along < b.v2 && across > Dyadic::ZERO && across < Dyadic::ONE
}

fn st_bone_geometry() -> Outcome {
    let od1 = OrderData::new(vec![1], vec![1]).unwrap();
    let left = st_bone(&od1, Side::Left).unwrap();
    let (q1, q3, h, one) = (dyadic(1, 2), dyadic(3, 2), Dyadic::HALF, Dyadic::ONE);
    let expected: BTreeSet<_> = [((q1, h), (q1, one)), ((q1, h), (q3, h)), ((q3, h), (q3, one))].into_iter().collect();
    let got: BTreeSet<_> = left.segments().into_iter().map(normalized).collect();
    let exact = got == expected;

    let mut bones = Vec::new();
    for n in 1..=4 {
        for od in admissible_order_data(n) {
            for side in [Side::Left, Side::Right] {
                bones.push((n, st_bone(&od, side).unwrap()));
            }
        }
    }
    let bad_shape = bones.iter().filter(|(_, b)| !three_segment_shape(b)).count();

    let exp = 9;
    let size = 1i128 << exp;
    let mut mismatches = 0usize;
    let mut on_bones = 0usize;
    for a in 0..=size {
        for c in 0..=size {
            let (v, w) = (dyadic(a, exp), dyadic(c, exp));
            let mut sim: BTreeMap<(Side, usize), Option<OrderData>> = BTreeMap::new();
            for (n, b) in &bones {
                let lane = if b.side == Side::Left { Lane::One } else { Lane::Two };
                let oracle = sim.entry((b.side, *n)).or_insert_with(|| simulated_bone(v, w, lane, *n));
                let simulated = oracle.as_ref() == Some(&b.order_data);
                on_bones += simulated as usize;
                if simulated != b.contains(v, w) {
                    mismatches += 1;
                }
            }
        }
    }
    outcome(
        exact && bad_shape == 0 && mismatches == 0,
        format!(
            "period-2 left bone exact: {exact}; {} bones up to period 8, {bad_shape} fail the shape check; \
             2^-{exp} grid oracle: {on_bones} bone points, {mismatches} disagreements",
            bones.len()
        ),
    )
}

fn q_period_two_bone() -> Outcome {
    let od1 = OrderData::new(vec![1], vec![1]).unwrap();
    let bone = q_trace_bone(&od1, Side::Left, DEFAULT_STEP).unwrap();
    let dev = bone.polyline.iter().map(|&(v, w)| (w - 1.0 / (8.0 * v * (1.0 - v))).abs()).fold(0.0, f64::max);
    let (first, last) = (bone.polyline[0], *bone.polyline.last().unwrap());
    let r = 2f64.sqrt() / 4.0;
    let targets = [(0.5 - r, 1.0), (0.5 + r, 1.0)];
    let gap = |p: (f64, f64), q: (f64, f64)| (p.0 - q.0).abs().max((p.1 - q.1).abs());
    let end_err =
        gap(first, targets[0]).min(gap(first, targets[1])).max(gap(last, targets[0]).min(gap(last, targets[1])));
    let ends_differ = gap(first, last) > 0.5;
    let p = q_primary_intersection(&od1).unwrap();
    let primary_err = gap((p.v, p.w), (0.5, 0.5));
    outcome(
        dev < 1e-8 && end_err < 1e-9 && ends_differ && primary_err < 1e-9,
        format!(
            "{} points, max deviation {dev:.2e}; endpoint error {end_err:.2e}; primary error {primary_err:.2e}",
            bone.polyline.len()
        ),
    )
}

fn q_bones_up_to(n: usize, side: Side) -> Vec<QBone> {
    (1..=n).flat_map(admissible_order_data).map(|od| q_trace_bone(&od, side, DEFAULT_STEP).unwrap()).collect()
}

fn st_bones_up_to(n: usize, side: Side) -> Vec<StBone> {
    (1..=n).flat_map(admissible_order_data).map(|od| st_bone(&od, side).unwrap()).collect()
}

/// Labels along every bone of `a`, and along the same bone of `b`, must
/// agree in order.
fn bone_orders_agree(a: &SkeletonComplex, b: &SkeletonComplex) -> bool {
    a.bones.iter().enumerate().all(|(i, bone)| {
        let Some(k) = b.bones.iter().position(|x| x.side() == bone.side() && x.order_data() == bone.order_data())
        else {
            return false;
        };
        let la: Vec<_> = a.bone_vertices[i].iter().map(|&v| &a.vertices[v].label).collect();
        let lb: Vec<_> = b.bone_vertices[k].iter().map(|&v| &b.vertices[v].label).collect();
        la == lb
    })
}

fn intersection_combinatorics() -> Outcome {
    let mut histogram: BTreeMap<usize, usize> = BTreeMap::new();
    let (st_left, st_right) = (st_bones_up_to(3, Side::Left), st_bones_up_to(3, Side::Right));
    for l in &st_left {
        for r in &st_right {
            *histogram.entry(st_crossings(l, r).unwrap().len()).or_default() += 1;
        }
    }
    let (q_left, q_right) = (q_bones_up_to(3, Side::Left), q_bones_up_to(3, Side::Right));
    for l in &q_left {
        for r in &q_right {
            *histogram.entry(q_bone_crossings(l, r).unwrap().len()).or_default() += 1;
        }
    }
    let counts_ok = histogram.keys().all(|c| [0, 2, 4].contains(c));

    let four = OrderData::new(vec![1, 2], vec![2, 1]).unwrap();
    let two = OrderData::new(vec![1], vec![1]).unwrap();
    let expected: BTreeSet<JointOrderData> = [
        JointOrderData::new(vec![2, 3, 1], vec![3, 2, 1]).unwrap(),
        JointOrderData::new(vec![1, 3, 2], vec![2, 3, 1]).unwrap(),
    ]
    .into_iter()
    .collect();
    let st_joint: Vec<JointOrderData> =
        st_crossings(&st_bone(&four, Side::Left).unwrap(), &st_bone(&two, Side::Right).unwrap())
            .unwrap()
            .into_iter()
            .filter_map(|c| match c.kind {
                DistinguishedKind::Secondary(j) => Some(j),
                _ => None,
            })
            .collect();
    let q_cross = q_bone_crossings(
        &q_trace_bone(&four, Side::Left, DEFAULT_STEP).unwrap(),
        &q_trace_bone(&two, Side::Right, DEFAULT_STEP).unwrap(),
    )
    .unwrap();
    let q_joint: Vec<JointOrderData> = q_cross
        .into_iter()
        .filter_map(|c| match c.kind {
            QCrossingKind::Secondary(j) => Some(j),
            QCrossingKind::Primary => None,
        })
        .collect();
    let as_set = |v: &[JointOrderData]| v.iter().cloned().collect::<BTreeSet<_>>();
    let fig_ok =
        st_joint.len() == 2 && q_joint.len() == 2 && as_set(&st_joint) == expected && as_set(&q_joint) == expected;

    let mut bijections = Vec::new();
    for n in 2..=3 {
        let st = build_skeleton(Family::St, n).unwrap();
        let q = build_skeleton(Family::Q, n).unwrap();
        let ok = matches!(vertex_correspondence(&st, &q).unwrap(), Correspondence::Bijection { .. })
            && st.vertices.len() == q.vertices.len()
            && bone_orders_agree(&st, &q)
            && bone_orders_agree(&q, &st);
        bijections.push(ok);
    }
    outcome(
        counts_ok && fig_ok && bijections.iter().all(|&b| b),
        format!(
            "crossing-count histogram {histogram:?}; left-4 x right-2 joint order-data match: {fig_ok}; \
             order-preserving bijection for n = 2, 3: {bijections:?}"
        ),
    )
}

fn entropy_anchors() -> Outcome {
    let corners: Vec<f64> = [ParamPoint::q(1.0, 1.0), ParamPoint::st(Dyadic::ONE, Dyadic::ONE)]
        .iter()
        .map(|p| entropy_estimate(p, 14).unwrap().h)
        .collect();
    let corner_ok = corners.iter().all(|h| (h - LOG4).abs() <= 0.02);

    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let mut worst_zero: f64 = 0.0;
    let mut sampled = 0;
    while sampled < 20 {
        let (v, w): (f64, f64) = (rng.gen(), rng.gen());
        if v * w >= 1.0 / 16.0 {
            continue;
        }
        sampled += 1;
        let dv = Dyadic::from_f64((v * 1024.0).round() / 1024.0).unwrap();
        let dw = Dyadic::from_f64((w * 1024.0).floor() / 1024.0).unwrap();
        for p in [ParamPoint::q(v, w), ParamPoint::st(dv, dw)] {
            worst_zero = worst_zero.max(entropy_estimate(&p, 12).unwrap().h.abs());
        }
    }

    let mut neg_mismatches = 0;
    let params = random_params(2024, 50);
    for p in &params {
        let scanned = scan_neg(p, 6, 1_000_000);
        for k in 1..=6 {
            if neg_count(p, k).unwrap() != scanned[k - 1] {
                neg_mismatches += 1;
            }
        }
    }
    outcome(
        corner_ok && worst_zero <= 0.01 && neg_mismatches == 0,
        format!(
            "h(1,1) = {:.4} (Q), {:.4} (ST) vs log 4 = {LOG4:.4}; max |h| on {sampled} points per family with vw < 1/16: {worst_zero:.2e}; \
             Neg vs diagonal scan on {} parameters, k <= 6: {neg_mismatches} mismatches",
            corners[0],
            corners[1],
            params.len()
        ),
    )
}

fn st_grid_violations(g: &EntropyGrid) -> usize {
    let res = g.res;
    let mut bad = 0;
    for j in 0..res {
        for i in 0..res - 1 {
            for ((a, b), (c, d)) in [((i, j), (i + 1, j)), ((j, i), (j, i + 1))] {
                let (lo, hi) = (g.estimate(a, b), g.estimate(c, d));
                if hi.h < lo.h - lo.err - hi.err - 1e-12 {
                    bad += 1;
                }
            }
        }
    }
    bad
}

fn monotonicity_suite() -> Outcome {
    let g = entropy_grid(Family::St, 64, 14).unwrap();
    let st_bad = st_grid_violations(&g);

    let mut paths: Vec<Vec<ParamPoint>> = vec![
        (0..=100).map(|i| ParamPoint::q(i as f64 / 100.0, 1.0)).collect(),
        (0..=100).map(|i| ParamPoint::q(1.0, i as f64 / 100.0)).collect(),
    ];
    for bone in [q_bones_up_to(2, Side::Left), q_bones_up_to(2, Side::Right)].concat() {
        let k = bone.primary().unwrap().position as usize;
        let arcs = [bone.polyline[..=k].iter().rev().copied().collect::<Vec<_>>(), bone.polyline[k..].to_vec()];
        for arc in arcs {
            let stride = (arc.len() / 40).max(1);
            let mut path: Vec<ParamPoint> = arc.iter().step_by(stride).map(|&(v, w)| ParamPoint::q(v, w)).collect();
            let last = *arc.last().unwrap();
            path.push(ParamPoint::q(last.0, last.1));
            paths.push(path);
        }
    }
    let q_failed = paths.iter().filter(|p| !entropy_monotonicity_audit(p, 14).unwrap().passed).count();
    outcome(
        st_bad == 0 && q_failed == 0,
        format!(
            "ST 64x64 grid: {st_bad} neighbour pairs decrease beyond the error bars; \
             Q: {q_failed} of {} paths (top, right, {} bone arcs) fail the audit",
            paths.len(),
            paths.len() - 2
        ),
    )
}

fn isentrope_connectedness() -> Outcome {
    let levels = [0.1, 0.5, std::f64::consts::LN_2, 1.0, 1.3];
    let big = entropy_grid(Family::Q, 256, 12).unwrap();
    let mut components = Vec::new();
    for &h0 in &levels {
        let iso = isentrope_extract(&big, h0).unwrap();
        let mut sizes = iso.component_sizes.clone();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        components.push((h0, iso.components, sizes));
    }
    let connected = components.iter().all(|c| c.1 == 1);

    let grids: Vec<EntropyGrid> = [32, 64, 128].iter().map(|&r| entropy_grid(Family::Q, r, 12).unwrap()).collect();
    let mut refinement = Vec::new();
    for &h0 in &levels {
        let report = refinement_audit_grids(&grids, h0).unwrap();
        let strict = report.levels.windows(2).all(|w| w[1].max_variation < w[0].max_variation);
        let variation: Vec<String> = report.levels.iter().map(|l| format!("{:.4}", l.max_variation)).collect();
        refinement.push((h0, strict && report.nested.iter().all(|&n| n), variation));
    }
    let refined = refinement.iter().all(|r| r.1);

    let comp_text: Vec<String> = components
        .iter()
        .map(|(h0, c, sizes)| {
            let shown: Vec<String> = sizes.iter().take(6).map(|s| s.to_string()).collect();
            let more = if sizes.len() > 6 { ", ..." } else { "" };
            format!("h0 {h0:.4}: {c} (sizes {}{more})", shown.join(", "))
        })
        .collect();
    let ref_text: Vec<String> = refinement
        .iter()
        .map(|(h0, ok, v)| format!("h0 {h0:.4}: {} {}", v.join(" > "), if *ok { "ok" } else { "not strict" }))
        .collect();
    outcome(
        connected && refined,
        format!(
            "components on the 256x256 Q grid: {}; refinement 32/64/128 variation: {}",
            comp_text.join("; "),
            ref_text.join("; ")
        ),
    )
}

fn orient(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> f64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

fn on_segment(a: (f64, f64), b: (f64, f64), p: (f64, f64)) -> bool {
    p.0 >= a.0.min(b.0) && p.0 <= a.0.max(b.0) && p.1 >= a.1.min(b.1) && p.1 <= a.1.max(b.1)
}

/// Closed-segment intersection by orientation signs.
fn meet(p1: (f64, f64), p2: (f64, f64), q1: (f64, f64), q2: (f64, f64)) -> bool {
    let (d1, d2) = (orient(q1, q2, p1), orient(q1, q2, p2));
    let (d3, d4) = (orient(p1, p2, q1), orient(p1, p2, q2));
    if d1 * d2 < 0.0 && d3 * d4 < 0.0 {
        return true;
    }
    (d1 == 0.0 && on_segment(q1, q2, p1))
        || (d2 == 0.0 && on_segment(q1, q2, p2))
        || (d3 == 0.0 && on_segment(p1, p2, q1))
        || (d4 == 0.0 && on_segment(p1, p2, q2))
}

/// Every pair of non-adjacent segments, checked directly.
fn self_intersects(line: &[(f64, f64)]) -> bool {
    let m = line.len().saturating_sub(1);
    (0..m).any(|i| (i + 2..m).any(|j| meet(line[i], line[i + 1], line[j], line[j + 1])))
}

fn structural_invariants() -> Outcome {
    let mut euler = Vec::new();
    for (family, top) in [(Family::St, 5), (Family::Q, 4)] {
        for n in 1..=top {
            euler.push(build_skeleton(family, n).unwrap().euler_characteristic());
        }
    }
    let euler_ok = euler.iter().all(|&x| x == 2);

    let (left, right) = (q_bones_up_to(4, Side::Left), q_bones_up_to(4, Side::Right));
    let mut crossing_selves = 0;
    let mut min_vw = f64::INFINITY;
    for bone in left.iter().chain(&right) {
        if self_intersects(&bone.polyline) {
            crossing_selves += 1;
        }
        min_vw = bone.polyline.iter().map(|&(v, w)| v * w).fold(min_vw, f64::min);
    }

    let (mut crossings, mut min_angle) = (0, f64::INFINITY);
    let short = |b: &&QBone| b.order_data.n() <= 3;
    for l in left.iter().filter(short) {
        for r in right.iter().filter(short) {
            for c in q_bone_crossings(l, r).unwrap() {
                crossings += 1;
                min_angle = min_angle.min(transversality_check(l, r, &ParamPoint::q(c.v, c.w)).unwrap());
            }
        }
    }
    outcome(
        euler_ok && crossing_selves == 0 && min_vw > 1.0 / 16.0 && min_angle > 1e-3,
        format!(
            "Euler characteristics {euler:?} (ST n <= 5, Q n <= 4); {} Q bones up to period 8, {crossing_selves} self-intersecting, \
             min vw {min_vw:.4}; {crossings} crossings up to period 6, min angle {min_angle:.4} rad",
            left.len() + right.len()
        ),
    )
}

fn main() {
    let secs = Duration::from_secs;
    let results = [
        criterion(1, "order-data enumeration", secs(1), order_data_enumeration),
        criterion(2, "ST bicritical solver", secs(10), st_bicritical_solver),
        criterion(3, "ST bone geometry", secs(30), st_bone_geometry),
        criterion(4, "Q period-2 bone", secs(5), q_period_two_bone),
        criterion(5, "intersection combinatorics", secs(300), intersection_combinatorics),
        criterion(6, "entropy anchors", secs(120), entropy_anchors),
        criterion(7, "monotonicity suite", secs(300), monotonicity_suite),
        criterion(8, "isentrope connectedness", secs(1800), isentrope_connectedness),
        criterion(9, "structural invariants", secs(300), structural_invariants),
    ];
    let passed = results.iter().filter(|&&r| r).count();
    println!("acceptance: {passed} of {} criteria passed", results.len());
}
