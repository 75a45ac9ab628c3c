use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::entropy::{entropy_grid, grid_coordinate, EntropyGrid, Estimator};
use crate::error::{Error, Result};
use crate::families::Family;
use crate::geometry::Pt;

/// The square between lattice nodes `(i, j)` and `(i + 1, j + 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GridCell {
    pub i: usize,
    pub j: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Isentrope {
    pub h0: f64,
    pub res: usize,
    pub estimator: Estimator,
    /// Cells whose padded corner range contains `h0`, row-major.
    pub cells: Vec<GridCell>,
    /// Number of 8-connected components of `cells`.
    pub components: usize,
    pub component_sizes: Vec<usize>,
    /// Marching-squares contours of the reported values at level `h0`.
    pub polylines: Vec<Vec<Pt>>,
}

impl Isentrope {
    pub fn contains(&self, cell: GridCell) -> bool {
        self.cells.binary_search_by(|c| (c.j, c.i).cmp(&(cell.j, cell.i))).is_ok()
    }
}

fn corners(c: GridCell) -> [(usize, usize); 4] {
    [(c.i, c.j), (c.i + 1, c.j), (c.i + 1, c.j + 1), (c.i, c.j + 1)]
}

/// Smallest and largest corner value of a cell, and its largest error bar.
fn corner_range(grid: &EntropyGrid, c: GridCell) -> (f64, f64, f64) {
    corners(c).iter().fold((f64::INFINITY, f64::NEG_INFINITY, 0.0f64), |(lo, hi, e), &(i, j)| {
        let x = grid.value(i, j);
        (lo.min(x), hi.max(x), e.max(grid.err(i, j)))
    })
}

fn bracketing(grid: &EntropyGrid, h0: f64) -> Vec<GridCell> {
    let m = grid.res - 1;
    let mut out = Vec::new();
    for j in 0..m {
        for i in 0..m {
            let c = GridCell { i, j };
            let (lo, hi, e) = corner_range(grid, c);
            if lo - e <= h0 && h0 <= hi + e {
                out.push(c);
            }
        }
    }
    out
}

/// Sizes of the 8-connected components of `cells` on an `m × m` board, in
/// order of their first cell.
fn components(cells: &[GridCell], m: usize) -> Vec<usize> {
    let mut mark = vec![0u8; m * m];
    for c in cells {
        mark[c.j * m + c.i] = 1;
    }
    let mut sizes = Vec::new();
    for c in cells {
        if mark[c.j * m + c.i] != 1 {
            continue;
        }
        let mut size = 0;
        let mut queue = VecDeque::from([(c.i, c.j)]);
        mark[c.j * m + c.i] = 2;
        while let Some((i, j)) = queue.pop_front() {
            size += 1;
            for dj in -1i64..=1 {
                for di in -1i64..=1 {
                    let (ni, nj) = (i as i64 + di, j as i64 + dj);
                    if ni < 0 || nj < 0 || ni >= m as i64 || nj >= m as i64 {
                        continue;
                    }
                    let k = nj as usize * m + ni as usize;
                    if mark[k] == 1 {
                        mark[k] = 2;
                        queue.push_back((ni as usize, nj as usize));
                    }
                }
            }
        }
        sizes.push(size);
    }
    sizes
}

/// Lattice edge: `(0, i, j)` joins nodes `(i, j)` and `(i + 1, j)`, `(1, i, j)`
/// joins `(i, j)` and `(i, j + 1)`.
type EdgeKey = (u8, usize, usize);

fn edge_point(grid: &EntropyGrid, h0: f64, (dir, i, j): EdgeKey) -> Pt {
    let (i2, j2) = if dir == 0 { (i + 1, j) } else { (i, j + 1) };
    let (a, b) = (grid.value(i, j), grid.value(i2, j2));
    let t = (h0 - a) / (b - a);
    let (x0, y0) = (grid_coordinate(grid.res, i), grid_coordinate(grid.res, j));
    let (x1, y1) = (grid_coordinate(grid.res, i2), grid_coordinate(grid.res, j2));
    (x0 + t * (x1 - x0), y0 + t * (y1 - y0))
}

fn contours(grid: &EntropyGrid, h0: f64) -> Vec<Vec<Pt>> {
    let m = grid.res - 1;
    let mut segments: Vec<(EdgeKey, EdgeKey)> = Vec::new();
    for j in 0..m {
        for i in 0..m {
            let inside = corners(GridCell { i, j }).map(|(a, b)| grid.value(a, b) >= h0);
            // Edges in corner order: bottom, right, top, left.
            let sides: [EdgeKey; 4] = [(0, i, j), (1, i + 1, j), (0, i, j + 1), (1, i, j)];
            let cut: Vec<usize> = (0..4).filter(|&k| inside[k] != inside[(k + 1) % 4]).collect();
            match cut.len() {
                2 => segments.push((sides[cut[0]], sides[cut[1]])),
                4 => {
                    let centre = corners(GridCell { i, j }).iter().map(|&(a, b)| grid.value(a, b)).sum::<f64>() / 4.0;
                    // Cut off the corners that the centre value does not join.
                    let joined = centre >= h0;
                    for k in 0..4 {
                        if inside[k] != joined {
                            segments.push((sides[(k + 3) % 4], sides[k]));
                        }
                    }
                }
                _ => {}
            }
        }
    }
    let mut at: BTreeMap<EdgeKey, Vec<usize>> = BTreeMap::new();
    for (s, &(a, b)) in segments.iter().enumerate() {
        at.entry(a).or_default().push(s);
        at.entry(b).or_default().push(s);
    }
    let mut used = vec![false; segments.len()];
    let mut out = Vec::new();
    let starts: Vec<EdgeKey> =
        at.iter().filter(|(_, v)| v.len() == 1).map(|(k, _)| *k).chain(at.keys().copied()).collect();
    for start in starts {
        let Some(&first) = at[&start].iter().find(|&&s| !used[s]) else { continue };
        let mut keys = vec![start];
        let (mut key, mut seg) = (start, first);
        loop {
            used[seg] = true;
            let (a, b) = segments[seg];
            key = if a == key { b } else { a };
            keys.push(key);
            match at[&key].iter().find(|&&s| !used[s]) {
                Some(&s) => seg = s,
                None => break,
            }
        }
        out.push(keys.into_iter().map(|k| edge_point(grid, h0, k)).collect());
    }
    out
}

/// Grid-level isentrope at `h0`: bracketing cells padded by the error bars,
/// their 8-connected components, and contour lines of the reported values.
pub fn isentrope_extract(grid: &EntropyGrid, h0: f64) -> Result<Isentrope> {
    if !(0.0..=4f64.ln() + 1e-12).contains(&h0) {
        return Err(Error::Domain(format!("level {h0} outside [0, log 4]")));
    }
    let cells = bracketing(grid, h0);
    let component_sizes = components(&cells, grid.res - 1);
    Ok(Isentrope {
        h0,
        res: grid.res,
        estimator: grid.estimator,
        components: component_sizes.len(),
        component_sizes,
        polylines: contours(grid, h0),
        cells,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RefinementLevel {
    pub res: usize,
    pub cells: usize,
    pub components: usize,
    /// Largest corner spread over the bracketing cells.
    pub max_variation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RefinementReport {
    pub h0: f64,
    pub levels: Vec<RefinementLevel>,
    /// For each consecutive pair, whether every finer bracketing cell lies
    /// within one coarse cell of the coarser bracketing set.
    pub nested: Vec<bool>,
    /// Each level's variation is below the previous one, or both are zero.
    pub variation_decreasing: bool,
    pub passed: bool,
}

/// [`refinement_audit`] on precomputed grids of increasing resolution.
pub fn refinement_audit_grids(grids: &[EntropyGrid], h0: f64) -> Result<RefinementReport> {
    if grids.windows(2).any(|g| g[1].res <= g[0].res) {
        return Err(Error::Domain("resolutions must increase".into()));
    }
    let sets: Vec<Vec<GridCell>> = grids.iter().map(|g| bracketing(g, h0)).collect();
    let levels: Vec<RefinementLevel> = grids
        .iter()
        .zip(&sets)
        .map(|(g, cells)| RefinementLevel {
            res: g.res,
            cells: cells.len(),
            components: components(cells, g.res - 1).len(),
            max_variation: cells.iter().map(|&c| corner_range(g, c)).map(|(lo, hi, _)| hi - lo).fold(0.0, f64::max),
        })
        .collect();
    let nested = (1..grids.len())
        .map(|k| {
            let (coarse, fine) = (grids[k - 1].res - 1, grids[k].res - 1);
            let mut mark = vec![false; coarse * coarse];
            for c in &sets[k - 1] {
                mark[c.j * coarse + c.i] = true;
            }
            let near = |i: usize, j: usize| {
                (i.saturating_sub(1)..=(i + 1).min(coarse - 1))
                    .any(|a| (j.saturating_sub(1)..=(j + 1).min(coarse - 1)).any(|b| mark[b * coarse + a]))
            };
            let to_coarse = |x: usize| ((((x as f64 + 0.5) / fine as f64) * coarse as f64) as usize).min(coarse - 1);
            sets[k].iter().all(|c| near(to_coarse(c.i), to_coarse(c.j)))
        })
        .collect::<Vec<bool>>();
    let variation_decreasing = levels
        .windows(2)
        .all(|l| l[1].max_variation < l[0].max_variation || (l[0].max_variation == 0.0 && l[1].max_variation == 0.0));
    let passed = variation_decreasing && nested.iter().all(|&x| x);
    Ok(RefinementReport { h0, levels, nested, variation_decreasing, passed })
}

/// Compare the bracketing sets of `h0` on grids of increasing resolution:
/// finer sets should stay near coarser ones and cells should vary less.
pub fn refinement_audit(family: Family, h0: f64, resolutions: &[usize], kmax: usize) -> Result<RefinementReport> {
    let grids = resolutions.iter().map(|&r| entropy_grid(family, r, kmax)).collect::<Result<Vec<_>>>()?;
    refinement_audit_grids(&grids, h0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::EntropyEstimate;

    fn synthetic(res: usize, f: impl Fn(f64, f64) -> f64) -> EntropyGrid {
        let mut estimates = Vec::new();
        for j in 0..res {
            for i in 0..res {
                let h = f(grid_coordinate(res, i), grid_coordinate(res, j));
                estimates.push(EntropyEstimate { h, h_lap: h, h_neg: h, err: 0.0, k_lap: 1, k_neg: 1 });
            }
        }
        EntropyGrid { family: Family::Q, res, kmax: 4, estimator: Estimator::LapGrowth, estimates }
    }

    #[test]
    fn straight_level_line() {
        let g = synthetic(11, |v, _| v);
        let iso = isentrope_extract(&g, 0.55).unwrap();
        assert_eq!(iso.components, 1);
        assert_eq!(iso.cells.len(), 10);
        assert_eq!(iso.polylines.len(), 1);
        assert!(iso.polylines[0].iter().all(|p| (p.0 - 0.55).abs() < 1e-12));
    }

    #[test]
    fn two_separate_bands() {
        let g = synthetic(21, |v, _| if v < 0.5 { v } else { 1.0 - v });
        let iso = isentrope_extract(&g, 0.22).unwrap();
        assert_eq!(iso.components, 2);
        assert_eq!(iso.polylines.len(), 2);
    }

    #[test]
    fn closed_contour_around_a_peak() {
        let g = synthetic(33, |v, w| 1.0 - (v - 0.5).hypot(w - 0.5));
        let iso = isentrope_extract(&g, 0.8).unwrap();
        assert_eq!(iso.components, 1);
        assert_eq!(iso.polylines.len(), 1);
        let line = &iso.polylines[0];
        assert_eq!(line.first(), line.last());
    }

    #[test]
    fn constant_grids_have_no_variation() {
        let grids: Vec<EntropyGrid> = [8, 16, 32].iter().map(|&r| synthetic(r, |_, _| 0.3)).collect();
        let r = refinement_audit_grids(&grids, 0.3).unwrap();
        assert!(r.levels.iter().all(|l| l.max_variation == 0.0 && l.components == 1));
        assert!(r.passed);
    }

    #[test]
    fn linear_grids_refine() {
        let grids: Vec<EntropyGrid> = [9, 17, 33].iter().map(|&r| synthetic(r, |v, w| v + w)).collect();
        let r = refinement_audit_grids(&grids, 0.9).unwrap();
        assert!(r.passed, "{r:?}");
    }
}
