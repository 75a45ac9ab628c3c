//! n-skeletons of both model spaces as planar cell complexes, the vertex
//! correspondence between them, and grid-level isentropes.
//!
//! The complex is assembled as a plane graph: vertices are bone crossings,
//! bone endpoints and the corners of the square; edges are bone and boundary
//! fragments between consecutive vertices. Faces are the orbits of the
//! half-edge successor map built from the angular order at each vertex, so
//! the Euler relation certifies that the geometric rotation system is planar.

mod correspond;
mod isentrope;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::Family;
use crate::geometry::Pt;
use crate::q_bones::{q_bone_crossings, q_trace_bone, QBone, QCrossingKind, DEFAULT_STEP};
use crate::st_bones::{st_bone, st_crossings, DistinguishedKind, Side, StBone};
use crate::symbolic::{admissible_order_data, JointOrderData, OrderData};

pub use correspond::{vertex_correspondence, Correspondence, Counterexample};
pub use isentrope::{
    isentrope_extract, refinement_audit, refinement_audit_grids, GridCell, Isentrope, RefinementLevel, RefinementReport,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VertexLabel {
    /// Corners counterclockwise from `(0, 0)`.
    Corner {
        index: u8,
    },
    /// `end` is 0 at the endpoint nearer the origin, 1 at the other.
    Endpoint {
        side: Side,
        order_data: OrderData,
        end: u8,
    },
    Primary {
        order_data: OrderData,
    },
    Secondary {
        joint: JointOrderData,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SkeletonVertex {
    pub id: usize,
    pub v: f64,
    pub w: f64,
    pub label: VertexLabel,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Carrier {
    Bone { side: Side, order_data: OrderData },
    Boundary,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SkeletonEdge {
    pub id: usize,
    pub from: usize,
    pub to: usize,
    pub carrier: Carrier,
    pub polyline: Vec<Pt>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SkeletonFace {
    pub id: usize,
    /// The unbounded face of the sphere completion.
    pub outer: bool,
    /// Vertex ids around the face, with the face on the left.
    pub cycle: Vec<usize>,
    pub signed_area: f64,
    /// Faces sharing an edge with this one.
    pub neighbors: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum SkeletonBone {
    St(StBone),
    Q(QBone),
}

impl SkeletonBone {
    pub fn side(&self) -> Side {
        match self {
            SkeletonBone::St(b) => b.side,
            SkeletonBone::Q(b) => b.side,
        }
    }

    pub fn order_data(&self) -> &OrderData {
        match self {
            SkeletonBone::St(b) => &b.order_data,
            SkeletonBone::Q(b) => &b.order_data,
        }
    }

    /// The bone as a polyline from its first boundary endpoint to its second.
    pub fn polyline(&self) -> Vec<Pt> {
        match self {
            SkeletonBone::St(b) => {
                let s = b.segments();
                [s[0].0, s[0].1, s[1].1, s[2].1].iter().map(|&(v, w)| (v.to_f64(), w.to_f64())).collect()
            }
            SkeletonBone::Q(b) => b.polyline.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SkeletonComplex {
    pub family: Family,
    pub n: usize,
    pub bones: Vec<SkeletonBone>,
    pub vertices: Vec<SkeletonVertex>,
    pub edges: Vec<SkeletonEdge>,
    pub faces: Vec<SkeletonFace>,
    /// Vertex ids along each bone, first endpoint to second, parallel to
    /// `bones`.
    pub bone_vertices: Vec<Vec<usize>>,
    /// Vertex ids counterclockwise around the square from `(0, 0)`.
    pub boundary_vertices: Vec<usize>,
}

impl SkeletonComplex {
    /// `V − E + F` with the outer face counted.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    pub fn find_vertex(&self, label: &VertexLabel) -> Option<&SkeletonVertex> {
        self.vertices.iter().find(|x| &x.label == label)
    }
}

/// A vertex found on a bone, before ids are assigned.
struct Mark {
    bone: usize,
    at: Pt,
    label: VertexLabel,
}

/// Build the n-skeleton of `family`: all left and right bones of period at
/// most `2n` together with the boundary of the square.
pub fn build_skeleton(family: Family, n: usize) -> Result<SkeletonComplex> {
    let limit = match family {
        Family::Q => 4,
        Family::St => 5,
    };
    if n == 0 || n > limit {
        return Err(Error::Domain(format!("skeleton order {n} outside 1..={limit} for {family}")));
    }
    let ods: Vec<OrderData> = (1..=n).flat_map(admissible_order_data).collect();
    let keys: Vec<(Side, &OrderData)> =
        [Side::Left, Side::Right].iter().flat_map(|&s| ods.iter().map(move |o| (s, o))).collect();
    let bones: Vec<SkeletonBone> = keys
        .par_iter()
        .map(|&(side, od)| match family {
            Family::St => st_bone(od, side).map(SkeletonBone::St),
            Family::Q => q_trace_bone(od, side, DEFAULT_STEP).map(SkeletonBone::Q),
        })
        .collect::<Result<_>>()?;
    let m = ods.len();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (0..m).map(move |j| (i, m + j))).collect();
    let crossings: Vec<Vec<(Pt, VertexLabel)>> =
        pairs.par_iter().map(|&(l, r)| crossing_marks(&bones[l], &bones[r])).collect::<Result<_>>()?;

    let mut marks = Vec::new();
    for (b, bone) in bones.iter().enumerate() {
        let line = bone.polyline();
        for (end, &at) in [line[0], line[line.len() - 1]].iter().enumerate() {
            let label =
                VertexLabel::Endpoint { side: bone.side(), order_data: bone.order_data().clone(), end: end as u8 };
            marks.push(Mark { bone: b, at, label });
        }
    }
    for (&(l, r), found) in pairs.iter().zip(&crossings) {
        for (at, label) in found {
            marks.push(Mark { bone: l, at: *at, label: label.clone() });
            marks.push(Mark { bone: r, at: *at, label: label.clone() });
        }
    }
    assemble(family, n, bones, marks)
}

fn crossing_marks(left: &SkeletonBone, right: &SkeletonBone) -> Result<Vec<(Pt, VertexLabel)>> {
    let primary = |od: &OrderData| VertexLabel::Primary { order_data: od.clone() };
    Ok(match (left, right) {
        (SkeletonBone::St(l), SkeletonBone::St(r)) => st_crossings(l, r)?
            .into_iter()
            .map(|c| {
                let label = match c.kind {
                    DistinguishedKind::Primary => primary(&l.order_data),
                    DistinguishedKind::Secondary(joint) => VertexLabel::Secondary { joint },
                    DistinguishedKind::Capture => unreachable!("crossings are periodic for both critical points"),
                };
                ((c.v.to_f64(), c.w.to_f64()), label)
            })
            .collect(),
        (SkeletonBone::Q(l), SkeletonBone::Q(r)) => q_bone_crossings(l, r)?
            .into_iter()
            .map(|c| {
                let label = match c.kind {
                    QCrossingKind::Primary => primary(&l.order_data),
                    QCrossingKind::Secondary(joint) => VertexLabel::Secondary { joint },
                };
                ((c.v, c.w), label)
            })
            .collect(),
        _ => return Err(Error::Domain("bones from different families".into())),
    })
}

/// Fractional index of the point of `line` nearest to `p`.
fn locate(line: &[Pt], p: Pt) -> f64 {
    let mut best = (f64::INFINITY, 0.0);
    for (i, s) in line.windows(2).enumerate() {
        let (dx, dy) = (s[1].0 - s[0].0, s[1].1 - s[0].1);
        let len2 = dx * dx + dy * dy;
        let t = if len2 > 0.0 { (((p.0 - s[0].0) * dx + (p.1 - s[0].1) * dy) / len2).clamp(0.0, 1.0) } else { 0.0 };
        let d = (s[0].0 + t * dx - p.0).hypot(s[0].1 + t * dy - p.1);
        if d < best.0 {
            best = (d, i as f64 + t);
        }
    }
    best.1
}

/// Polyline of `line` between fractional positions `a < b`, with exact
/// endpoints `pa` and `pb`.
fn sub_polyline(line: &[Pt], a: f64, b: f64, pa: Pt, pb: Pt) -> Vec<Pt> {
    let mut out = vec![pa];
    let first = a.floor() as usize + 1;
    let last = b.ceil() as usize;
    for &q in line.iter().take(last).skip(first) {
        let prev = out[out.len() - 1];
        if (q.0 - prev.0).hypot(q.1 - prev.1) > 1e-12 {
            out.push(q);
        }
    }
    if out.len() > 1 && (pb.0 - out[out.len() - 1].0).hypot(pb.1 - out[out.len() - 1].1) <= 1e-12 {
        out.pop();
    }
    out.push(pb);
    out
}

/// Counterclockwise perimeter coordinate in `[0, 4)`.
fn perimeter(p: Pt) -> f64 {
    let (v, w) = p;
    if w == 0.0 && v < 1.0 {
        v
    } else if v == 1.0 && w < 1.0 {
        1.0 + w
    } else if w == 1.0 && v > 0.0 {
        3.0 - v
    } else {
        4.0 - w
    }
}

fn assemble(family: Family, n: usize, bones: Vec<SkeletonBone>, marks: Vec<Mark>) -> Result<SkeletonComplex> {
    let tol = match family {
        Family::St => 0.0,
        Family::Q => 1e-9,
    };
    let mut vertices: Vec<SkeletonVertex> = Vec::new();
    let corners = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
    for (i, &(v, w)) in corners.iter().enumerate() {
        vertices.push(SkeletonVertex { id: i, v, w, label: VertexLabel::Corner { index: i as u8 } });
    }
    let mut on_bone: Vec<Vec<(f64, usize)>> = vec![Vec::new(); bones.len()];
    let lines: Vec<Vec<Pt>> = bones.iter().map(SkeletonBone::polyline).collect();
    for mark in marks {
        let existing = vertices.iter().find(|x| (x.v - mark.at.0).abs() <= tol && (x.w - mark.at.1).abs() <= tol);
        let id = match existing {
            Some(x) if x.label == mark.label => x.id,
            Some(x) => {
                return Err(Error::Numeric(format!(
                    "vertices {:?} and {:?} coincide at ({}, {})",
                    x.label, mark.label, x.v, x.w
                )))
            }
            None => {
                let id = vertices.len();
                vertices.push(SkeletonVertex { id, v: mark.at.0, w: mark.at.1, label: mark.label });
                id
            }
        };
        let line = &lines[mark.bone];
        let pos = match &vertices[id].label {
            VertexLabel::Endpoint { end: 0, .. } => 0.0,
            VertexLabel::Endpoint { .. } => (line.len() - 1) as f64,
            _ => locate(line, mark.at),
        };
        if !on_bone[mark.bone].iter().any(|&(_, x)| x == id) {
            on_bone[mark.bone].push((pos, id));
        }
    }

    let mut edges: Vec<SkeletonEdge> = Vec::new();
    let mut bone_vertices = Vec::with_capacity(bones.len());
    for (b, bone) in bones.iter().enumerate() {
        let list = &mut on_bone[b];
        list.sort_by(|x, y| x.0.total_cmp(&y.0));
        for w in list.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::Numeric(format!(
                    "two vertices at one position on {} bone {}",
                    bone.side(),
                    bone.order_data()
                )));
            }
            let (pa, pb) = ((vertices[w[0].1].v, vertices[w[0].1].w), (vertices[w[1].1].v, vertices[w[1].1].w));
            edges.push(SkeletonEdge {
                id: edges.len(),
                from: w[0].1,
                to: w[1].1,
                carrier: Carrier::Bone { side: bone.side(), order_data: bone.order_data().clone() },
                polyline: sub_polyline(&lines[b], w[0].0, w[1].0, pa, pb),
            });
        }
        bone_vertices.push(list.iter().map(|x| x.1).collect());
    }

    let mut ring: Vec<(f64, usize)> = vertices
        .iter()
        .filter(|x| matches!(x.label, VertexLabel::Corner { .. } | VertexLabel::Endpoint { .. }))
        .map(|x| (perimeter((x.v, x.w)), x.id))
        .collect();
    ring.sort_by(|a, b| a.0.total_cmp(&b.0));
    for k in 0..ring.len() {
        let (a, b) = (ring[k].1, ring[(k + 1) % ring.len()].1);
        edges.push(SkeletonEdge {
            id: edges.len(),
            from: a,
            to: b,
            carrier: Carrier::Boundary,
            polyline: vec![(vertices[a].v, vertices[a].w), (vertices[b].v, vertices[b].w)],
        });
    }
    let boundary_vertices = ring.iter().map(|x| x.1).collect();
    let faces = trace_faces(vertices.len(), &edges)?;
    Ok(SkeletonComplex { family, n, bones, vertices, edges, faces, bone_vertices, boundary_vertices })
}

/// Direction in which half-edge `h` leaves its origin.
fn leaving_angle(edges: &[SkeletonEdge], h: usize) -> f64 {
    let line = &edges[h / 2].polyline;
    let (a, b) = if h.is_multiple_of(2) { (line[0], line[1]) } else { (line[line.len() - 1], line[line.len() - 2]) };
    (b.1 - a.1).atan2(b.0 - a.0)
}

fn origin(edges: &[SkeletonEdge], h: usize) -> usize {
    if h.is_multiple_of(2) {
        edges[h / 2].from
    } else {
        edges[h / 2].to
    }
}

/// Faces as orbits of the successor map that keeps each face on the left.
fn trace_faces(nv: usize, edges: &[SkeletonEdge]) -> Result<Vec<SkeletonFace>> {
    let nh = 2 * edges.len();
    let mut around: Vec<Vec<(f64, usize)>> = vec![Vec::new(); nv];
    for h in 0..nh {
        around[origin(edges, h)].push((leaving_angle(edges, h), h));
    }
    let mut rank = vec![0usize; nh];
    for list in &mut around {
        list.sort_by(|a, b| a.0.total_cmp(&b.0));
        for (k, &(_, h)) in list.iter().enumerate() {
            rank[h] = k;
        }
    }
    if let Some(v) = around.iter().position(|l| l.len() < 2) {
        return Err(Error::Numeric(format!("vertex {v} has degree below 2")));
    }
    let next = |h: usize| {
        let twin = h ^ 1;
        let list = &around[origin(edges, twin)];
        list[(rank[twin] + list.len() - 1) % list.len()].1
    };
    let mut face_of = vec![usize::MAX; nh];
    let mut faces = Vec::new();
    for start in 0..nh {
        if face_of[start] != usize::MAX {
            continue;
        }
        let id = faces.len();
        let (mut h, mut cycle, mut area) = (start, Vec::new(), 0.0);
        loop {
            face_of[h] = id;
            cycle.push(origin(edges, h));
            let line = &edges[h / 2].polyline;
            let pts: Box<dyn Iterator<Item = &Pt>> =
                if h % 2 == 0 { Box::new(line.iter()) } else { Box::new(line.iter().rev()) };
            let pts: Vec<&Pt> = pts.collect();
            area += pts.windows(2).map(|s| s[0].0 * s[1].1 - s[1].0 * s[0].1).sum::<f64>() / 2.0;
            h = next(h);
            if h == start {
                break;
            }
            if cycle.len() > nh {
                return Err(Error::Numeric("face traversal does not close".into()));
            }
        }
        faces.push(SkeletonFace { id, outer: false, cycle, signed_area: area, neighbors: Vec::new() });
    }
    let outer: Vec<usize> = faces.iter().filter(|f| f.signed_area < 0.0).map(|f| f.id).collect();
    if outer.len() != 1 {
        return Err(Error::Numeric(format!("{} faces have negative orientation", outer.len())));
    }
    faces[outer[0]].outer = true;
    let mut adjacency: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for e in 0..edges.len() {
        let (a, b) = (face_of[2 * e], face_of[2 * e + 1]);
        if a != b {
            adjacency.entry(a).or_default().push(b);
            adjacency.entry(b).or_default().push(a);
        }
    }
    for (f, mut list) in adjacency {
        list.sort_unstable();
        list.dedup();
        faces[f].neighbors = list;
    }
    Ok(faces)
}
