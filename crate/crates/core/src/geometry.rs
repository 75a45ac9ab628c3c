//! Planar segment utilities shared by bone intersection and skeleton assembly.

use std::collections::HashMap;

pub type Pt = (f64, f64);

fn cross(o: Pt, a: Pt, b: Pt) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Intersection of segments `p1p2` and `q1q2` as parameters `(t, u)` along
/// each, when they cross at a single point. Parallel segments give `None`.
pub fn segment_intersection(p1: Pt, p2: Pt, q1: Pt, q2: Pt) -> Option<(f64, f64)> {
    let r = (p2.0 - p1.0, p2.1 - p1.1);
    let s = (q2.0 - q1.0, q2.1 - q1.1);
    let denom = r.0 * s.1 - r.1 * s.0;
    if denom == 0.0 {
        return None;
    }
    let qp = (q1.0 - p1.0, q1.1 - p1.1);
    let t = (qp.0 * s.1 - qp.1 * s.0) / denom;
    let u = (qp.0 * r.1 - qp.1 * r.0) / denom;
    ((0.0..=1.0).contains(&t) && (0.0..=1.0).contains(&u)).then_some((t, u))
}

pub fn lerp(a: Pt, b: Pt, t: f64) -> Pt {
    (a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1))
}

/// Whether two closed segments share at least one point (including touching
/// and collinear overlap).
pub fn segments_touch(p1: Pt, p2: Pt, q1: Pt, q2: Pt) -> bool {
    let d1 = cross(q1, q2, p1);
    let d2 = cross(q1, q2, p2);
    let d3 = cross(p1, p2, q1);
    let d4 = cross(p1, p2, q2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    let on = |a: Pt, b: Pt, c: Pt, d: f64| {
        d == 0.0 && c.0 >= a.0.min(b.0) && c.0 <= a.0.max(b.0) && c.1 >= a.1.min(b.1) && c.1 <= a.1.max(b.1)
    };
    on(q1, q2, p1, d1) || on(q1, q2, p2, d2) || on(p1, p2, q1, d3) || on(p1, p2, q2, d4)
}

/// Uniform-grid bucketing of segments over the unit square for candidate
/// pair queries.
pub struct SegmentGrid {
    cells: usize,
    buckets: HashMap<(usize, usize), Vec<usize>>,
}

impl SegmentGrid {
    pub fn new(cells: usize) -> SegmentGrid {
        SegmentGrid { cells: cells.max(1), buckets: HashMap::new() }
    }

    fn cell_range(&self, a: f64, b: f64) -> (usize, usize) {
        let c = self.cells as f64;
        let clamp = |x: f64| ((x * c).floor().max(0.0) as usize).min(self.cells - 1);
        (clamp(a.min(b)), clamp(a.max(b)))
    }

    pub fn insert(&mut self, id: usize, a: Pt, b: Pt) {
        let (i0, i1) = self.cell_range(a.0, b.0);
        let (j0, j1) = self.cell_range(a.1, b.1);
        for i in i0..=i1 {
            for j in j0..=j1 {
                self.buckets.entry((i, j)).or_default().push(id);
            }
        }
    }

    /// Ids of segments whose buckets overlap the bounding box of `a b`,
    /// sorted and deduplicated.
    pub fn query(&self, a: Pt, b: Pt) -> Vec<usize> {
        let (i0, i1) = self.cell_range(a.0, b.0);
        let (j0, j1) = self.cell_range(a.1, b.1);
        let mut out = Vec::new();
        for i in i0..=i1 {
            for j in j0..=j1 {
                if let Some(v) = self.buckets.get(&(i, j)) {
                    out.extend_from_slice(v);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// All crossings between two polylines as `(segment in a, t, segment in b, u)`.
pub fn polyline_crossings(a: &[Pt], b: &[Pt]) -> Vec<(usize, f64, usize, f64)> {
    let mut grid = SegmentGrid::new(256);
    for j in 0..b.len().saturating_sub(1) {
        grid.insert(j, b[j], b[j + 1]);
    }
    let mut out = Vec::new();
    for i in 0..a.len().saturating_sub(1) {
        for j in grid.query(a[i], a[i + 1]) {
            if let Some((t, u)) = segment_intersection(a[i], a[i + 1], b[j], b[j + 1]) {
                out.push((i, t, j, u));
            }
        }
    }
    out
}

/// Whether a polyline crosses itself anywhere other than at shared vertices
/// of consecutive segments.
pub fn polyline_self_intersects(a: &[Pt]) -> bool {
    let mut grid = SegmentGrid::new(256);
    for j in 0..a.len().saturating_sub(1) {
        grid.insert(j, a[j], a[j + 1]);
    }
    (0..a.len().saturating_sub(1)).any(|i| {
        grid.query(a[i], a[i + 1])
            .into_iter()
            .filter(|&j| j > i + 1)
            .any(|j| segments_touch(a[i], a[i + 1], a[j], a[j + 1]))
    })
}
