use isentropes_core::entropy::{entropy_grid, entropy_monotonicity_audit, MonotonicityReport};
use isentropes_core::export::{grid_csv, grid_pgm, isentrope_csv, overlay_pgm};
use isentropes_core::families::{classify_hyperbolic, HyperbolicClass};
use isentropes_core::geometry::Pt;
use isentropes_core::q_bones::{self, q_bone_crossings, q_trace_bone_with, transversality_check, QCrossingKind};
use isentropes_core::skeleton::{build_skeleton, isentrope_extract, vertex_correspondence, SkeletonBone};
use isentropes_core::st_bones::{st_bone, st_crossings, DistinguishedKind, Side};
use isentropes_core::symbolic::{admissible_order_data, order_data_to_bicritical_itinerary};
use isentropes_core::{Dyadic, Error, Family, Itinerary, JointOrderData, OrderData, ParamPoint};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Command, TraceArgs};
use crate::error::CliError;
use crate::output::Output;

pub fn run(command: &Command, out: &mut Output) -> Result<(), CliError> {
    match command {
        Command::Orderdata { order } => orderdata(require(order.require())?, out),
        Command::Bones { family, order, trace } => bones(*family, require(order.require())?, trace, out),
        Command::Trace { family, order_data, side, trace } => {
            let bone = build_bone(*family, order_data, *side, trace)?;
            out.json(&format!("{side}.bone.json"), &bone)
        }
        Command::Intersections { family, order, trace } => {
            intersections(*family, require(order.require())?, trace, out)
        }
        Command::EntropyGrid { family, grid } => {
            let g = entropy_grid(*family, grid.res, grid.kmax)?;
            out.text("grid.csv", &grid_csv(&g))?;
            out.bytes("grid.pgm", &grid_pgm(&g))
        }
        Command::Isentrope { family, grid, h0, order } => {
            let g = entropy_grid(*family, grid.res, grid.kmax)?;
            let iso = isentrope_extract(&g, *h0)?;
            let curves = match require(order.get())? {
                Some(n) => bones_up_to(*family, n, &default_trace())?.iter().map(|b| b.polyline()).collect(),
                None => Vec::new(),
            };
            out.text("grid.csv", &grid_csv(&g))?;
            out.bytes("grid.pgm", &grid_pgm(&g))?;
            out.json("isentrope.json", &iso)?;
            out.text("isentrope.csv", &isentrope_csv(&iso))?;
            out.bytes("overlay.pgm", &overlay_pgm(&g, &curves, &iso.polylines))
        }
        Command::Skeleton { family, order, correspond } => {
            let n = require(order.require())?;
            let c = build_skeleton(*family, n)?;
            out.json("skeleton.json", &c)?;
            if *correspond {
                let other = build_skeleton(other_family(*family), n)?;
                out.json("correspondence.json", &vertex_correspondence(&c, &other)?)?;
            }
            Ok(())
        }
        Command::AuditMonotonicity { family, grid, order } => {
            audit(*family, grid.res, grid.kmax, require(order.get())?, out)
        }
        Command::Classify { v, w, max_iter, tol_orbit } => {
            let p = ParamPoint::new(*v, *w, Family::Q)?;
            let class = classify_hyperbolic(p.v, p.w, *max_iter, *tol_orbit);
            out.json("classify.json", &Classification { v: p.v, w: p.w, class })
        }
    }
}

fn require<T>(r: Result<T, String>) -> Result<T, CliError> {
    r.map_err(CliError::Config)
}

fn default_trace() -> TraceArgs {
    TraceArgs { step: q_bones::DEFAULT_STEP, tol_corr: q_bones::TOL_CORR }
}

fn other_family(f: Family) -> Family {
    match f {
        Family::St => Family::Q,
        Family::Q => Family::St,
    }
}

#[derive(Serialize)]
struct OrderDataRecord {
    order_data: OrderData,
    sigma: Vec<usize>,
    tau: Vec<usize>,
    bicritical_itinerary: Itinerary,
}

#[derive(Serialize)]
struct OrderDataList {
    n: usize,
    period: usize,
    count: usize,
    order_data: Vec<OrderDataRecord>,
}

fn orderdata(n: usize, out: &mut Output) -> Result<(), CliError> {
    let order_data = admissible_order_data(n)
        .into_iter()
        .map(|od| {
            Ok(OrderDataRecord {
                sigma: od.sigma().to_vec(),
                tau: od.tau().to_vec(),
                bicritical_itinerary: order_data_to_bicritical_itinerary(&od)?,
                order_data: od,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    out.json("orderdata.json", &OrderDataList { n, period: 2 * n, count: order_data.len(), order_data })
}

fn build_bone(family: Family, od: &OrderData, side: Side, trace: &TraceArgs) -> Result<SkeletonBone, Error> {
    Ok(match family {
        Family::St => SkeletonBone::St(st_bone(od, side)?),
        Family::Q => SkeletonBone::Q(q_trace_bone_with(od, side, trace.step, trace.tol_corr)?),
    })
}

/// Left and right bones for every admissible order-data in `ods`, in that
/// order.
fn build_bones(family: Family, ods: &[OrderData], trace: &TraceArgs) -> Result<Vec<SkeletonBone>, Error> {
    let jobs: Vec<(&OrderData, Side)> = ods.iter().flat_map(|od| [(od, Side::Left), (od, Side::Right)]).collect();
    jobs.into_par_iter().map(|(od, side)| build_bone(family, od, side, trace)).collect()
}

fn bones_up_to(family: Family, n: usize, trace: &TraceArgs) -> Result<Vec<SkeletonBone>, Error> {
    let ods: Vec<OrderData> = (1..=n).flat_map(admissible_order_data).collect();
    build_bones(family, &ods, trace)
}

fn bones(family: Family, n: usize, trace: &TraceArgs, out: &mut Output) -> Result<(), CliError> {
    let ods = admissible_order_data(n);
    for (k, pair) in build_bones(family, &ods, trace)?.chunks(2).enumerate() {
        for bone in pair {
            out.json(&format!("{}-{:02}.bone.json", bone.side(), k + 1), bone)?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct CrossingRecord {
    v: f64,
    w: f64,
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    joint_order_data: Option<JointOrderData>,
    /// Exact coordinates of stunted crossings.
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<(Dyadic, Dyadic)>,
    /// Angle between the bone tangents at logistic crossings, in radians.
    #[serde(skip_serializing_if = "Option::is_none")]
    angle: Option<f64>,
}

#[derive(Serialize)]
struct PairRecord {
    left: OrderData,
    right: OrderData,
    count: usize,
    crossings: Vec<CrossingRecord>,
}

fn crossings(left: &SkeletonBone, right: &SkeletonBone) -> Result<Vec<CrossingRecord>, Error> {
    match (left, right) {
        (SkeletonBone::St(l), SkeletonBone::St(r)) => Ok(st_crossings(l, r)?
            .into_iter()
            .map(|c| {
                let (kind, joint) = match c.kind {
                    DistinguishedKind::Primary => ("primary", None),
                    DistinguishedKind::Secondary(j) => ("secondary", Some(j)),
                    DistinguishedKind::Capture => ("capture", None),
                };
                CrossingRecord {
                    v: c.v.to_f64(),
                    w: c.w.to_f64(),
                    kind,
                    joint_order_data: joint,
                    exact: Some((c.v, c.w)),
                    angle: None,
                }
            })
            .collect()),
        (SkeletonBone::Q(l), SkeletonBone::Q(r)) => q_bone_crossings(l, r)?
            .into_iter()
            .map(|c| {
                let angle = transversality_check(l, r, &ParamPoint::q(c.v, c.w))?;
                let (kind, joint) = match c.kind {
                    QCrossingKind::Primary => ("primary", None),
                    QCrossingKind::Secondary(j) => ("secondary", Some(j)),
                };
                Ok(CrossingRecord { v: c.v, w: c.w, kind, joint_order_data: joint, exact: None, angle: Some(angle) })
            })
            .collect(),
        _ => Err(Error::Domain("bones from different families".into())),
    }
}

fn intersections(family: Family, n: usize, trace: &TraceArgs, out: &mut Output) -> Result<(), CliError> {
    let all = bones_up_to(family, n, trace)?;
    let lefts: Vec<&SkeletonBone> = all.iter().filter(|b| b.side() == Side::Left).collect();
    let rights: Vec<&SkeletonBone> = all.iter().filter(|b| b.side() == Side::Right).collect();
    let pairs: Vec<(&SkeletonBone, &SkeletonBone)> =
        lefts.iter().flat_map(|&l| rights.iter().map(move |&r| (l, r))).collect();
    let records = pairs
        .into_par_iter()
        .map(|(l, r)| {
            let crossings = crossings(l, r)?;
            Ok(PairRecord {
                left: l.order_data().clone(),
                right: r.order_data().clone(),
                count: crossings.len(),
                crossings,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    out.json("intersections.json", &records)
}

#[derive(Serialize)]
struct PathAudit {
    name: String,
    #[serde(flatten)]
    report: MonotonicityReport,
}

#[derive(Serialize)]
struct AuditReport {
    family: Family,
    kmax: usize,
    passed: bool,
    paths: Vec<PathAudit>,
}

fn dist(a: Pt, b: Pt) -> f64 {
    (a.0 - b.0).hypot(a.1 - b.1)
}

/// `count` points spaced evenly by arclength along `line`.
fn resample(line: &[Pt], count: usize) -> Vec<Pt> {
    let total: f64 = line.windows(2).map(|s| dist(s[0], s[1])).sum();
    if total == 0.0 || count < 2 {
        return vec![line[0]];
    }
    let mut out = Vec::with_capacity(count);
    let (mut seg, mut walked) = (0, 0.0);
    for k in 0..count {
        let target = total * k as f64 / (count - 1) as f64;
        while seg + 2 < line.len() && walked + dist(line[seg], line[seg + 1]) < target {
            walked += dist(line[seg], line[seg + 1]);
            seg += 1;
        }
        let len = dist(line[seg], line[seg + 1]);
        let t = if len > 0.0 { ((target - walked) / len).clamp(0.0, 1.0) } else { 0.0 };
        let (a, b) = (line[seg], line[seg + 1]);
        out.push(if k + 1 == count { *line.last().unwrap() } else { (a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1)) });
    }
    out
}

/// The two arcs of `line` from `p` to either end, `p` first.
fn split_at(line: &[Pt], p: Pt) -> [Vec<Pt>; 2] {
    let gap = |s: &[Pt]| {
        let (a, b) = (s[0], s[1]);
        let d = (b.0 - a.0, b.1 - a.1);
        let len2 = d.0 * d.0 + d.1 * d.1;
        let t = if len2 > 0.0 { (((p.0 - a.0) * d.0 + (p.1 - a.1) * d.1) / len2).clamp(0.0, 1.0) } else { 0.0 };
        dist(p, (a.0 + t * d.0, a.1 + t * d.1))
    };
    let k = (0..line.len() - 1).min_by(|&i, &j| gap(&line[i..i + 2]).total_cmp(&gap(&line[j..j + 2]))).unwrap_or(0);
    let mut first = vec![p];
    first.extend(line[..=k].iter().rev().filter(|&&q| q != p));
    let mut second = vec![p];
    second.extend(line[k + 1..].iter().filter(|&&q| q != p));
    [first, second]
}

fn primary(bone: &SkeletonBone) -> Result<Pt, Error> {
    match bone {
        SkeletonBone::St(b) => Ok((b.v0.to_f64(), b.w0.to_f64())),
        SkeletonBone::Q(b) => b
            .primary()
            .map(|x| (x.v, x.w))
            .ok_or_else(|| Error::Numeric(format!("{} bone {} has no primary vertex", b.side, b.order_data))),
    }
}

fn audit(family: Family, res: usize, kmax: usize, n: Option<usize>, out: &mut Output) -> Result<(), CliError> {
    let edge = |f: &dyn Fn(f64) -> Pt| (0..res).map(|i| f(i as f64 / (res - 1) as f64)).collect::<Vec<Pt>>();
    let mut paths: Vec<(String, Vec<Pt>)> =
        vec![("top edge".into(), edge(&|t| (t, 1.0))), ("right edge".into(), edge(&|t| (1.0, t)))];
    if let Some(n) = n {
        for bone in bones_up_to(family, n, &default_trace())? {
            let p = primary(&bone)?;
            for (k, arc) in split_at(&bone.polyline(), p).iter().enumerate() {
                let name = format!("{} {} arc {}", bone.side(), bone.order_data(), k + 1);
                paths.push((name, resample(arc, res)));
            }
        }
    }
    let paths = paths
        .into_iter()
        .map(|(name, pts)| {
            let points = pts
                .iter()
                .map(|&(v, w)| ParamPoint::new(v.clamp(0.0, 1.0), w.clamp(0.0, 1.0), family))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(PathAudit { name, report: entropy_monotonicity_audit(&points, kmax)? })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let passed = paths.iter().all(|p| p.report.passed);
    out.json("audit.json", &AuditReport { family, kmax, passed, paths })
}

#[derive(Serialize)]
struct Classification {
    v: f64,
    w: f64,
    #[serde(flatten)]
    class: HyperbolicClass,
}
