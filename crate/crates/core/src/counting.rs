//! Covering and packing counts on mesh cells.
//!
//! The r-mesh is anchored at the origin: the cell of `p` is `floor(p_i / r)` per
//! coordinate. Local counts restrict to the closed ball `B(x, R)`.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashMap};

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::geometry::{dist_unchecked, FiniteApprox, Metric, Point};

/// A sup or inf of local counts together with the center that attains it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LocalCountResult {
    pub count: usize,
    #[serde(skip)]
    pub witness: Point,
    /// Serialization index of the witness.
    pub witness_index: usize,
}

#[inline]
fn cell_key(v: f64, r: f64) -> f64 {
    // `+ 0.0` folds -0.0 into 0.0 so equal cells compare equal under total_cmp
    (v / r).floor() + 0.0
}

fn check_r(r: f64) -> Result<()> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(invalid("r", "must be positive and finite"));
    }
    Ok(())
}

fn check_scales(big_r: f64, r: f64) -> Result<()> {
    check_r(r)?;
    if !big_r.is_finite() || r >= big_r {
        return Err(invalid("r", format!("need 0 < r < R, got r={r}, R={big_r}")));
    }
    Ok(())
}

/// Number of occupied cells of the r-mesh.
pub fn mesh_cover_count(f: &FiniteApprox, r: f64) -> Result<usize> {
    check_r(r)?;
    Ok(mesh_count_points(f.points(), r))
}

pub(crate) fn mesh_count_points(points: &[Point], r: f64) -> usize {
    if points.is_empty() {
        return 0;
    }
    if points[0].dim() == 1 {
        let mut keys: Vec<f64> = points.iter().map(|p| cell_key(p.x(), r)).collect();
        keys.sort_unstable_by(f64::total_cmp);
        keys.dedup();
        keys.len()
    } else {
        let mut keys: Vec<(f64, f64)> =
            points.iter().map(|p| (cell_key(p.y(), r), cell_key(p.x(), r))).collect();
        keys.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        keys.dedup();
        keys.len()
    }
}

/// Greedy packing: scan in serialization order, keep a point iff it is
/// farther than `2r` from every kept center.
pub fn packing_count(f: &FiniteApprox, r: f64) -> Result<usize> {
    check_r(r)?;
    Ok(packing_centers(f.points(), f.metric(), r).len())
}

/// Indices of the greedy packing centers.
pub fn packing_centers(points: &[Point], metric: Metric, r: f64) -> Vec<usize> {
    let side = 2.0 * r;
    let two_d = points.first().is_some_and(|p| p.dim() == 2);
    let key = |p: &Point| {
        (cell_key(p.x(), side), if two_d { cell_key(p.y(), side) } else { 0.0 })
    };
    let huge = points.iter().any(|p| {
        let (a, b) = key(p);
        a.abs() >= 4.5e15 || b.abs() >= 4.5e15
    });
    let mut kept: Vec<usize> = Vec::new();
    if huge {
        // neighbouring keys are not representable; fall back to a plain scan
        for (i, p) in points.iter().enumerate() {
            if kept.iter().all(|&j| dist_unchecked(p, &points[j], metric) > side) {
                kept.push(i);
            }
        }
        return kept;
    }
    let mut grid: HashMap<(u64, u64), Vec<usize>> = HashMap::new();
    let dys: &[f64] = if two_d { &[-1.0, 0.0, 1.0] } else { &[0.0] };
    for (i, p) in points.iter().enumerate() {
        let (kx, ky) = key(p);
        let clear = [-1.0, 0.0, 1.0].iter().all(|dx| {
            dys.iter().all(|dy| {
                let k = ((kx + dx + 0.0).to_bits(), (ky + dy + 0.0).to_bits());
                grid.get(&k).is_none_or(|v| {
                    v.iter().all(|&j| dist_unchecked(p, &points[j], metric) > side)
                })
            })
        });
        if clear {
            kept.push(i);
            grid.entry((kx.to_bits(), ky.to_bits())).or_default().push(i);
        }
    }
    kept
}

/// Mesh count of the sample points in the closed ball `B(x, R)`.
pub fn local_cover_count(f: &FiniteApprox, x: &Point, big_r: f64, r: f64) -> Result<usize> {
    check_scales(big_r, r)?;
    if x.dim() != f.dim() {
        return Err(Error::DimensionMismatch(x.dim(), f.dim()));
    }
    let idx = f.points().iter().position(|p| p == x).ok_or(Error::NotASamplePoint)?;
    Ok(LocalCounter::new(f)?.local(idx, big_r, r))
}

/// Maximum local count over all sample centers.
pub fn sup_local_count(f: &FiniteApprox, big_r: f64, r: f64) -> Result<LocalCountResult> {
    LocalCounter::new(f)?.sup(big_r, r)
}

/// Minimum local count over all sample centers.
pub fn inf_local_count(f: &FiniteApprox, big_r: f64, r: f64) -> Result<LocalCountResult> {
    LocalCounter::new(f)?.inf(big_r, r)
}

/// Reusable index for repeated local counts on one set.
pub struct LocalCounter<'a> {
    points: &'a [Point],
    metric: Metric,
    engine: Engine,
}

enum Engine {
    Line(LineIndex),
    Plane(CenterTree),
}

impl<'a> LocalCounter<'a> {
    pub fn new(f: &'a FiniteApprox) -> Result<Self> {
        let points = f.points();
        if points.is_empty() {
            return Err(invalid("F", "empty point set"));
        }
        let d = points[0].dim();
        if points.iter().any(|p| p.dim() != d) {
            return Err(Error::DimensionMismatch(d, 3 - d));
        }
        let engine = if d == 1 {
            Engine::Line(LineIndex::new(points))
        } else {
            Engine::Plane(CenterTree::new(points))
        };
        Ok(LocalCounter { points, metric: f.metric(), engine })
    }

    /// Local count centered at the sample point with serialization index `idx`.
    pub fn local(&self, idx: usize, big_r: f64, r: f64) -> usize {
        let c = &self.points[idx];
        match &self.engine {
            Engine::Line(li) => li.count_at(c.x(), big_r, r),
            Engine::Plane(_) => {
                let grid = Grid::new(self.points, r);
                grid.count_at(c.x(), c.y(), big_r, self.metric)
            }
        }
    }

    pub fn sup(&self, big_r: f64, r: f64) -> Result<LocalCountResult> {
        check_scales(big_r, r)?;
        Ok(self.extremum(big_r, r, true))
    }

    pub fn inf(&self, big_r: f64, r: f64) -> Result<LocalCountResult> {
        check_scales(big_r, r)?;
        Ok(self.extremum(big_r, r, false))
    }

    /// Value of [`LocalCounter::sup`] or [`LocalCounter::inf`] without resolving the tie witness,
    /// which lets the planar search discard ties early.
    pub fn extreme_count(&self, big_r: f64, r: f64, want_max: bool) -> Result<usize> {
        check_scales(big_r, r)?;
        Ok(self.search(big_r, r, want_max, false).0)
    }

    fn extremum(&self, big_r: f64, r: f64, want_max: bool) -> LocalCountResult {
        let (count, idx) = self.search(big_r, r, want_max, true);
        LocalCountResult { count, witness: self.points[idx], witness_index: idx }
    }

    fn search(&self, big_r: f64, r: f64, want_max: bool, witness: bool) -> (usize, usize) {
        match &self.engine {
            Engine::Line(li) => li.extremum(big_r, r, want_max, !witness),
            Engine::Plane(tree) => {
                let grid = Grid::new(self.points, r);
                tree.extremum(&grid, self.metric, big_r, want_max, witness)
            }
        }
    }
}

/// `true` when `(count, idx)` beats `(best_count, best_idx)`.
#[inline]
fn better(count: usize, idx: usize, best: Option<(usize, usize)>, want_max: bool) -> bool {
    match best {
        None => true,
        Some((bc, bi)) => {
            let ord = if want_max { count.cmp(&bc) } else { bc.cmp(&count) };
            ord == Ordering::Greater || (ord == Ordering::Equal && idx < bi)
        }
    }
}

struct LineIndex {
    xs: Vec<f64>,
    order: Vec<usize>,
}

impl LineIndex {
    fn new(points: &[Point]) -> Self {
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&a, &b| points[a].x().total_cmp(&points[b].x()).then(a.cmp(&b)));
        let xs = order.iter().map(|&i| points[i].x()).collect();
        LineIndex { xs, order }
    }

    /// Sorted-position window `[lo, hi)` of points within `big_r` of `c`.
    fn window(&self, c: f64, big_r: f64) -> (usize, usize) {
        let lo = self.xs.partition_point(|&x| x < c && (x - c).abs() > big_r);
        let hi = self.xs.partition_point(|&x| x <= c || (x - c).abs() <= big_r);
        (lo, hi)
    }

    fn count_at(&self, c: f64, big_r: f64, r: f64) -> usize {
        let (lo, hi) = self.window(c, big_r);
        let mut n = 0;
        let mut prev = f64::NAN;
        for &x in &self.xs[lo..hi] {
            let k = cell_key(x, r);
            if k != prev {
                n += 1;
                prev = k;
            }
        }
        n
    }

    /// With `settle`, a minimum search returns as soon as it sees a count of 1.
    fn extremum(&self, big_r: f64, r: f64, want_max: bool, settle: bool) -> (usize, usize) {
        let n = self.xs.len();
        // prefix[i] = number of cell changes among sorted positions 1..=i
        let mut prefix = Vec::with_capacity(n);
        let mut acc = 0usize;
        let mut prev = cell_key(self.xs[0], r);
        prefix.push(0);
        for &x in &self.xs[1..] {
            let k = cell_key(x, r);
            if k != prev {
                acc += 1;
                prev = k;
            }
            prefix.push(acc);
        }
        let mut best: Option<(usize, usize)> = None;
        let (mut lo, mut hi) = (0usize, 0usize);
        for i in 0..n {
            let c = self.xs[i];
            while (c - self.xs[lo]).abs() > big_r {
                lo += 1;
            }
            if hi < i + 1 {
                hi = i + 1;
            }
            while hi < n && (self.xs[hi] - c).abs() <= big_r {
                hi += 1;
            }
            let count = 1 + prefix[hi - 1] - prefix[lo];
            let idx = self.order[i];
            if better(count, idx, best, want_max) {
                best = Some((count, idx));
                if settle && !want_max && count == 1 {
                    break;
                }
            }
        }
        best.expect("nonempty")
    }
}

/// Occupied cells of one mesh, grouped by row, with the points of each cell.
struct Grid<'a> {
    r: f64,
    rows: Vec<f64>,
    row_start: Vec<usize>,
    cols: Vec<f64>,
    /// Per-cell bounding box of its points: `[xmin, xmax, ymin, ymax]`.
    bounds: Vec<[f64; 4]>,
    /// Per-cell range into `blocks`.
    block_start: Vec<usize>,
    /// Spatially compact runs of `members` with their bounding boxes.
    blocks: Vec<Block>,
    members: Vec<usize>,
    points: &'a [Point],
}

impl<'a> Grid<'a> {
    fn new(points: &'a [Point], r: f64) -> Self {
        let mut keyed: Vec<(f64, f64, usize)> = points
            .iter()
            .enumerate()
            .map(|(i, p)| (cell_key(p.y(), r), cell_key(p.x(), r), i))
            .collect();
        keyed.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)).then(a.2.cmp(&b.2)));
        let mut rows = Vec::new();
        let mut row_start = Vec::new();
        let mut cols = Vec::new();
        let mut cell_start = Vec::new();
        let mut members = Vec::with_capacity(keyed.len());
        for (j, &(ry, cx, i)) in keyed.iter().enumerate() {
            let new_row = j == 0 || keyed[j - 1].0 != ry;
            if new_row {
                rows.push(ry);
                row_start.push(cols.len());
            }
            if new_row || keyed[j - 1].1 != cx {
                cols.push(cx);
                cell_start.push(members.len());
            }
            members.push(i);
        }
        row_start.push(cols.len());
        cell_start.push(members.len());
        let mut bounds = Vec::with_capacity(cols.len());
        let mut block_start = Vec::with_capacity(cols.len() + 1);
        let mut blocks = Vec::new();
        for w in cell_start.windows(2) {
            block_start.push(blocks.len());
            split_blocks(points, &mut members[w[0]..w[1]], w[0], 0, &mut blocks);
            bounds.push(bbox(points, &members[w[0]..w[1]]));
        }
        block_start.push(blocks.len());
        Grid { r, rows, row_start, cols, bounds, block_start, blocks, members, points }
    }

    fn cell_hit(&self, cell: usize, c: &Point, rad: f64, metric: Metric) -> bool {
        match box_test(&self.bounds[cell], c, rad, metric) {
            Some(hit) => hit,
            None => self.blocks[self.block_start[cell]..self.block_start[cell + 1]].iter().any(|b| {
                box_test(&b.bounds, c, rad, metric).unwrap_or_else(|| {
                    self.members[b.start..b.end]
                        .iter()
                        .any(|&i| dist_unchecked(&self.points[i], c, metric) <= rad)
                })
            }),
        }
    }

    /// Number of cells holding at least one point within `rad` of `(cx, cy)`.
    fn count_at(&self, cx: f64, cy: f64, rad: f64, metric: Metric) -> usize {
        if rad < 0.0 {
            return 0;
        }
        let r = self.r;
        let center = Point::plane(cx, cy);
        let eps = 1e-9 * (rad + cx.abs() + cy.abs() + r);
        let half = |dy: f64| -> Option<f64> {
            if dy > rad {
                return None;
            }
            Some(match metric {
                Metric::Euclidean => ((rad - dy) * (rad + dy)).sqrt(),
                Metric::Sup => rad,
            })
        };
        let row_lo = cell_key(cy - rad - eps, r);
        let row_hi = cell_key(cy + rad + eps, r);
        let a = self.rows.partition_point(|&k| k < row_lo);
        let b = self.rows.partition_point(|&k| k <= row_hi);
        let mut total = 0;
        for k in a..b {
            let y0 = self.rows[k] * r;
            let y1 = y0 + r;
            let dy_min = if cy < y0 {
                y0 - cy
            } else if cy > y1 {
                cy - y1
            } else {
                0.0
            };
            let dy_max = (cy - y0).abs().max((cy - y1).abs());
            let Some(w_out) = half((dy_min - eps).max(0.0)) else { continue };
            let w_out = w_out + eps;
            let cells = &self.cols[self.row_start[k]..self.row_start[k + 1]];
            let base = self.row_start[k];
            let c_lo = cell_key(cx - w_out, r);
            let c_hi = cell_key(cx + w_out, r);
            let ca = cells.partition_point(|&c| c < c_lo);
            let cb = cells.partition_point(|&c| c <= c_hi);
            let (ia, ib) = match half(dy_max + eps) {
                Some(w) if w > 2.0 * eps => {
                    let w_in = w - eps;
                    let lo = ((cx - w_in) / r).ceil();
                    let hi = ((cx + w_in) / r).floor() - 1.0;
                    let ia = cells.partition_point(|&c| c < lo).clamp(ca, cb);
                    let ib = cells.partition_point(|&c| c <= hi).clamp(ia, cb);
                    (ia, ib)
                }
                _ => (cb, cb),
            };
            total += ib - ia;
            for j in (ca..ia).chain(ib..cb) {
                if self.cell_hit(base + j, &center, rad, metric) {
                    total += 1;
                }
            }
        }
        total
    }
}

const BLOCK_SIZE: usize = 16;

struct Block {
    start: usize,
    end: usize,
    bounds: [f64; 4],
}

/// `[xmin, xmax, ymin, ymax]` of the given points.
fn bbox(points: &[Point], idx: &[usize]) -> [f64; 4] {
    idx.iter().fold([f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY], |b, &i| {
        let (x, y) = (points[i].x(), points[i].y());
        [b[0].min(x), b[1].max(x), b[2].min(y), b[3].max(y)]
    })
}

/// Reorders `idx` by recursive median splits and records runs of at most `BLOCK_SIZE`.
fn split_blocks(points: &[Point], idx: &mut [usize], offset: usize, axis: usize, out: &mut Vec<Block>) {
    if idx.len() <= BLOCK_SIZE {
        out.push(Block { start: offset, end: offset + idx.len(), bounds: bbox(points, idx) });
        return;
    }
    let mid = idx.len() / 2;
    idx.select_nth_unstable_by(mid, |&a, &b| {
        points[a].coords()[axis].total_cmp(&points[b].coords()[axis]).then(a.cmp(&b))
    });
    let (lo, hi) = idx.split_at_mut(mid);
    split_blocks(points, lo, offset, 1 - axis, out);
    split_blocks(points, hi, offset + mid, 1 - axis, out);
}

/// Decides from a bounding box alone whether some point in it lies within `rad` of `c`:
/// `Some(false)` when none can, `Some(true)` when all do, `None` when undecided.
fn box_test(b: &[f64; 4], c: &Point, rad: f64, metric: Metric) -> Option<bool> {
    let [x0, x1, y0, y1] = *b;
    let norm = |dx: f64, dy: f64| match metric {
        Metric::Euclidean => dx.hypot(dy),
        Metric::Sup => dx.max(dy),
    };
    let near = norm((x0 - c.x()).max(c.x() - x1).max(0.0), (y0 - c.y()).max(c.y() - y1).max(0.0));
    let tol = 1e-12 * (rad + c.x().abs() + c.y().abs() + x0.abs().max(x1.abs()) + y0.abs().max(y1.abs()));
    if near > rad + tol {
        return Some(false);
    }
    let far = norm((c.x() - x0).abs().max((c.x() - x1).abs()), (c.y() - y0).abs().max((c.y() - y1).abs()));
    if far < rad - tol {
        return Some(true);
    }
    None
}

const LEAF_SIZE: usize = 16;

struct Node {
    start: usize,
    end: usize,
    lo: [f64; 2],
    hi: [f64; 2],
    min_idx: usize,
    children: Option<(usize, usize)>,
}

/// k-d tree over the centers, used to bound local counts of whole groups.
struct CenterTree {
    perm: Vec<usize>,
    nodes: Vec<Node>,
    coords: Vec<[f64; 2]>,
}

impl CenterTree {
    fn new(points: &[Point]) -> Self {
        let coords: Vec<[f64; 2]> = points.iter().map(|p| [p.x(), p.y()]).collect();
        let mut tree = CenterTree { perm: (0..points.len()).collect(), nodes: Vec::new(), coords };
        tree.build(0, points.len());
        tree
    }

    fn build(&mut self, start: usize, end: usize) -> usize {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        let mut min_idx = usize::MAX;
        for &i in &self.perm[start..end] {
            for a in 0..2 {
                lo[a] = lo[a].min(self.coords[i][a]);
                hi[a] = hi[a].max(self.coords[i][a]);
            }
            min_idx = min_idx.min(i);
        }
        let id = self.nodes.len();
        self.nodes.push(Node { start, end, lo, hi, min_idx, children: None });
        if end - start > LEAF_SIZE {
            let axis = if hi[0] - lo[0] >= hi[1] - lo[1] { 0 } else { 1 };
            let mid = (start + end) / 2;
            let coords = &self.coords;
            self.perm[start..end].select_nth_unstable_by(mid - start, |&a, &b| {
                coords[a][axis].total_cmp(&coords[b][axis]).then(a.cmp(&b))
            });
            let l = self.build(start, mid);
            let r = self.build(mid, end);
            self.nodes[id].children = Some((l, r));
        }
        id
    }

    /// Bound on the local count of every center in `node`: an upper bound when
    /// `want_max`, a lower bound otherwise.
    fn bound(&self, node: &Node, grid: &Grid, metric: Metric, big_r: f64, want_max: bool) -> usize {
        let mx = 0.5 * (node.lo[0] + node.hi[0]);
        let my = 0.5 * (node.lo[1] + node.hi[1]);
        let hx = 0.5 * (node.hi[0] - node.lo[0]);
        let hy = 0.5 * (node.hi[1] - node.lo[1]);
        let h = match metric {
            Metric::Euclidean => hx.hypot(hy),
            Metric::Sup => hx.max(hy),
        };
        let slack = 1e-9 * (big_r + h + mx.abs() + my.abs()) + 2.0 * f64::EPSILON * h;
        if want_max {
            grid.count_at(mx, my, big_r + h + slack, metric)
        } else {
            let rad = big_r - h - slack;
            if rad < 0.0 {
                1
            } else {
                grid.count_at(mx, my, rad, metric).max(1)
            }
        }
    }

    fn extremum(&self, grid: &Grid, metric: Metric, big_r: f64, want_max: bool, witness: bool) -> (usize, usize) {
        // heap key: most promising bound first, then lowest serialization index
        let key = |b: usize, node: usize| {
            let sb = if want_max { b as i64 } else { -(b as i64) };
            (sb, Reverse(self.nodes[node].min_idx), node)
        };
        let mut heap = BinaryHeap::new();
        heap.push(key(self.bound(&self.nodes[0], grid, metric, big_r, want_max), 0));
        let mut best: Option<(usize, usize)> = None;
        let prunable = |b: usize, node: &Node, best: Option<(usize, usize)>| match best {
            None => false,
            Some((bc, bi)) => {
                let worse = if want_max { b < bc } else { b > bc };
                worse || (b == bc && (!witness || node.min_idx > bi))
            }
        };
        while let Some((sb, _, id)) = heap.pop() {
            let b = sb.unsigned_abs() as usize;
            let node = &self.nodes[id];
            if prunable(b, node, best) {
                continue;
            }
            match node.children {
                None => {
                    for &i in &self.perm[node.start..node.end] {
                        let [x, y] = self.coords[i];
                        let c = grid.count_at(x, y, big_r, metric);
                        if better(c, i, best, want_max) {
                            best = Some((c, i));
                        }
                    }
                }
                Some((l, r)) => {
                    for child in [l, r] {
                        let cb = self.bound(&self.nodes[child], grid, metric, big_r, want_max);
                        if !prunable(cb, &self.nodes[child], best) {
                            heap.push(key(cb, child));
                        }
                    }
                }
            }
        }
        best.expect("nonempty")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Metric::Euclidean;

    fn line(xs: &[f64]) -> FiniteApprox {
        FiniteApprox::new(xs.iter().map(|&x| Point::line(x)).collect(), 1e-3, Euclidean, "t")
    }

    #[test]
    fn three_point_examples() {
        let f = line(&[0.0, 0.5, 1.0]);
        assert_eq!(mesh_cover_count(&f, 0.3).unwrap(), 3);
        assert_eq!(packing_count(&f, 0.2).unwrap(), 3);
        assert_eq!(local_cover_count(&f, &Point::line(0.0), 0.6, 0.3).unwrap(), 2);
        let s = sup_local_count(&f, 0.6, 0.3).unwrap();
        assert_eq!((s.count, s.witness), (3, Point::line(0.5)));
        let i = inf_local_count(&f, 0.6, 0.3).unwrap();
        assert_eq!((i.count, i.witness_index), (2, 0));
    }

    #[test]
    fn small_packing_and_singletons() {
        assert_eq!(packing_count(&line(&[0.0, 0.1]), 0.2).unwrap(), 1);
        let one = FiniteApprox::new(vec![Point::line(0.3)], 0.1, Euclidean, "s");
        assert_eq!(mesh_cover_count(&one, 1e-9).unwrap(), 1);
        assert_eq!(packing_count(&one, 1.0).unwrap(), 1);
        assert_eq!(sup_local_count(&one, 0.5, 0.1).unwrap().count, 1);
        assert_eq!(inf_local_count(&one, 0.5, 0.1).unwrap().count, 1);
    }

    #[test]
    fn argument_errors() {
        let f = line(&[0.0, 0.5, 1.0]);
        assert!(mesh_cover_count(&f, 0.0).is_err());
        assert!(packing_count(&f, -1.0).is_err());
        assert!(local_cover_count(&f, &Point::line(0.0), 0.3, 0.3).is_err());
        assert_eq!(
            local_cover_count(&f, &Point::line(0.25), 0.6, 0.3),
            Err(Error::NotASamplePoint)
        );
        assert!(sup_local_count(&f, 0.1, 0.2).is_err());
    }

    #[test]
    fn isolated_center_counts_one() {
        let f = line(&[0.0, 0.5, 1.0]);
        assert_eq!(local_cover_count(&f, &Point::line(1.0), 0.4, 0.01).unwrap(), 1);
    }

    #[test]
    fn negative_zero_shares_a_cell() {
        let f = line(&[-0.0, 0.0001]);
        assert_eq!(mesh_count_points(f.points(), 0.5), 1);
    }

    #[test]
    fn grid_counts_are_uniform_inside() {
        let s = 1.0 / 128.0;
        let pts: Vec<Point> = (0..60)
            .flat_map(|i| (0..60).map(move |j| Point::plane(i as f64 * s, j as f64 * s)))
            .collect();
        let f = FiniteApprox::new(pts, s / 2.0, Euclidean, "grid");
        let counter = LocalCounter::new(&f).unwrap();
        let counts: Vec<usize> = (0..f.len())
            .filter(|&k| {
                let p = f.points()[k];
                (10.0 * s..49.5 * s).contains(&p.x()) && (10.0 * s..49.5 * s).contains(&p.y())
            })
            .map(|k| counter.local(k, 10.0 * s, s))
            .collect();
        assert!(counts.len() > 100);
        assert!(counts.iter().all(|&c| c == counts[0]));
        assert_eq!(counts[0], 317);
    }
}
