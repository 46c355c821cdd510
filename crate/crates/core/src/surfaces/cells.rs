//! Vertical-slab decomposition of the complement of a curve arrangement.
//!
//! All lattice translates of the input paths are clipped to a rectangular
//! fundamental domain. Vertical walls go through every piece endpoint and
//! every crossing, so inside a slab the pieces are totally ordered and the
//! cells between consecutive pieces are convex trapezoids. Cells are joined
//! by portals: across a piece (labelled with the piece's curve), across a
//! wall, or across an identified side of the domain.

use std::collections::VecDeque;

use crate::geom::{candidate_pairs, segment_intersection, BBox, IntersectionResult, RatPoint, Segment};
use crate::rat::Rat;

use super::contacts::{contacts, Lattice, PathView};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CellError {
    #[error("curves {0} and {1} share a segment")]
    DegenerateOverlap(usize, usize),
}

/// A point strictly between `lo` and `hi`, slightly below the midpoint.
/// Midpoints of parallel translates are again translates; this fraction
/// is not a midpoint for any spacing below 2048.
fn interior(lo: &Rat, hi: &Rat) -> Rat {
    lo + &((hi - lo) * Rat::new(1021, 2048))
}

#[derive(Clone, Debug)]
pub struct Domain {
    pub x0: Rat,
    pub x1: Rat,
    pub y0: Rat,
    pub y1: Rat,
    pub wrap_x: bool,
    pub wrap_y: bool,
}

#[derive(Clone, Debug)]
pub struct Piece {
    pub curve: usize,
    pub seg: usize,
    pub shift: (i64, i64),
    /// Left end (lower end for vertical pieces).
    pub a: RatPoint,
    pub b: RatPoint,
    pub vertical: bool,
}

impl Piece {
    fn y_at(&self, x: &Rat) -> Rat {
        let dx = &self.b.x - &self.a.x;
        &self.a.y + &((x - &self.a.x) * (&self.b.y - &self.a.y) / dx)
    }

    fn dir(&self) -> RatPoint {
        &self.b - &self.a
    }
}

#[derive(Clone, Debug)]
pub struct Slab {
    pub xl: Rat,
    pub xr: Rat,
    pub xm: Rat,
    /// Non-vertical pieces spanning the slab, bottom to top.
    pub pieces: Vec<usize>,
    pub first_cell: usize,
}

#[derive(Clone, Debug)]
pub struct Cell {
    pub slab: usize,
    /// Index among the `pieces.len() + 1` cells of the slab, from the bottom.
    pub idx: usize,
}

#[derive(Clone, Debug)]
pub struct Portal {
    pub a: usize,
    pub b: usize,
    /// Portal point in the frame of cell `a`.
    pub pt: RatPoint,
    /// Frame of `b` minus frame of `a`: the same surface point is `pt - offset`
    /// in the frame of `b`.
    pub offset: (i64, i64),
    /// Curve crossed when going through the portal.
    pub crossing: Option<usize>,
    /// Passes through an identified side of the domain.
    pub wrap: bool,
}

#[derive(Clone, Debug)]
pub struct Located {
    pub cell: usize,
    /// Lift point = `dom + offset`.
    pub offset: (i64, i64),
    pub dom: RatPoint,
}

/// One traversal of a portal during a walk; `forward` means from `a` to `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    pub portal: usize,
    pub forward: bool,
}

#[derive(Clone, Debug)]
pub struct CellComplex {
    pub domain: Domain,
    pub n_curves: usize,
    pub pieces: Vec<Piece>,
    pub walls: Vec<Rat>,
    pub slabs: Vec<Slab>,
    pub cells: Vec<Cell>,
    pub portals: Vec<Portal>,
    pub adj: Vec<Vec<usize>>,
}

/// Midpoint of the widest circular gap of `vals` inside `[0, 1)`.
pub fn generic_offset(vals: &mut Vec<Rat>) -> Rat {
    vals.sort();
    vals.dedup();
    if vals.is_empty() {
        return Rat::new(1, 2);
    }
    let n = vals.len();
    let mut best = (Rat::zero(), Rat::zero());
    for k in 0..n {
        let lo = vals[k].clone();
        let hi = if k + 1 < n { vals[k + 1].clone() } else { &vals[0] + &Rat::one() };
        let gap = &hi - &lo;
        if gap > best.0 {
            best = (gap, (&lo + &hi) * Rat::new(1, 2));
        }
    }
    best.1.fract()
}

fn clip(seg: &Segment, d: &Domain) -> Option<(RatPoint, RatPoint)> {
    let dir = seg.dir();
    let mut lo = Rat::zero();
    let mut hi = Rat::one();
    let checks = [
        (&dir.x, &seg.p.x, &d.x0, &d.x1),
        (&dir.y, &seg.p.y, &d.y0, &d.y1),
    ];
    for (dv, pv, mn, mx) in checks {
        if dv.is_zero() {
            if pv < mn || pv > mx {
                return None;
            }
            continue;
        }
        let t1 = (mn - pv) / dv;
        let t2 = (mx - pv) / dv;
        let (a, b) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        lo = Rat::max(&lo, &a);
        hi = Rat::min(&hi, &b);
        if lo >= hi {
            return None;
        }
    }
    Some((seg.at(&lo), seg.at(&hi)))
}

impl CellComplex {
    /// Complex of the given closed curves on the torus, with a fundamental
    /// square whose sides avoid every vertex and crossing.
    pub fn torus(paths: &[PathView<'_>]) -> Result<CellComplex, CellError> {
        let (mut xs, mut ys) = feature_coords(paths, Lattice::Z2);
        let ox = generic_offset(&mut xs);
        let oy = generic_offset(&mut ys);
        let domain = Domain {
            x1: &ox + &Rat::one(),
            y1: &oy + &Rat::one(),
            x0: ox,
            y0: oy,
            wrap_x: true,
            wrap_y: true,
        };
        CellComplex::build(paths, Lattice::Z2, domain)
    }

    /// Complex for arcs in the annulus `(R/Z) x [y0, y1]`.
    pub fn annulus(paths: &[PathView<'_>], y0: Rat, y1: Rat) -> Result<CellComplex, CellError> {
        let (mut xs, _) = feature_coords(paths, Lattice::Horizontal);
        let ox = generic_offset(&mut xs);
        let domain = Domain { x1: &ox + &Rat::one(), x0: ox, y0, y1, wrap_x: true, wrap_y: false };
        CellComplex::build(paths, Lattice::Horizontal, domain)
    }

    /// Complex in a plain rectangle, no identifications.
    pub fn window(paths: &[PathView<'_>], domain: Domain) -> Result<CellComplex, CellError> {
        CellComplex::build(paths, Lattice::Trivial, domain)
    }

    pub fn build(paths: &[PathView<'_>], lattice: Lattice, domain: Domain) -> Result<CellComplex, CellError> {
        let pieces = make_pieces(paths, lattice, &domain);
        let mut walls: Vec<Rat> = vec![domain.x0.clone(), domain.x1.clone()];
        for p in &pieces {
            walls.push(p.a.x.clone());
            walls.push(p.b.x.clone());
        }
        let boxes: Vec<BBox> = pieces.iter().map(|p| BBox::of_points([&p.a, &p.b])).collect();
        for (i, j) in candidate_pairs(&boxes) {
            let si = Segment::new(pieces[i].a.clone(), pieces[i].b.clone());
            let sj = Segment::new(pieces[j].a.clone(), pieces[j].b.clone());
            match segment_intersection(&si, &sj) {
                IntersectionResult::Empty => {}
                IntersectionResult::Point { at, .. } => walls.push(at.x),
                IntersectionResult::Overlap { .. } => {
                    return Err(CellError::DegenerateOverlap(pieces[i].curve, pieces[j].curve));
                }
            }
        }
        walls.sort();
        walls.dedup();
        let mut cx = CellComplex {
            domain,
            n_curves: paths.len(),
            pieces,
            walls,
            slabs: Vec::new(),
            cells: Vec::new(),
            portals: Vec::new(),
            adj: Vec::new(),
        };
        cx.make_slabs();
        cx.make_portals();
        Ok(cx)
    }

    fn make_slabs(&mut self) {
        let mut order: Vec<usize> = (0..self.pieces.len()).filter(|&i| !self.pieces[i].vertical).collect();
        order.sort_by(|&i, &j| self.pieces[i].a.x.cmp(&self.pieces[j].a.x));
        let mut next = 0;
        let mut active: Vec<usize> = Vec::new();
        for k in 0..self.walls.len() - 1 {
            let xl = self.walls[k].clone();
            let xr = self.walls[k + 1].clone();
            let xm = (&xl + &xr) * Rat::new(1, 2);
            while next < order.len() && self.pieces[order[next]].a.x <= xl {
                active.push(order[next]);
                next += 1;
            }
            active.retain(|&i| self.pieces[i].b.x >= xr);
            let mut keyed: Vec<(Rat, usize)> = active.iter().map(|&i| (self.pieces[i].y_at(&xm), i)).collect();
            keyed.sort();
            let first_cell = self.cells.len();
            for idx in 0..=keyed.len() {
                self.cells.push(Cell { slab: k, idx });
            }
            self.slabs.push(Slab { xl, xr, xm, pieces: keyed.into_iter().map(|(_, i)| i).collect(), first_cell });
        }
        self.adj = vec![Vec::new(); self.cells.len()];
    }

    fn add_portal(&mut self, p: Portal) {
        let id = self.portals.len();
        self.adj[p.a].push(id);
        if p.b != p.a {
            self.adj[p.b].push(id);
        }
        self.portals.push(p);
    }

    fn make_portals(&mut self) {
        for k in 0..self.slabs.len() {
            let slab = self.slabs[k].clone();
            for (idx, &pi) in slab.pieces.iter().enumerate() {
                let y = self.pieces[pi].y_at(&slab.xm);
                self.add_portal(Portal {
                    a: slab.first_cell + idx,
                    b: slab.first_cell + idx + 1,
                    pt: RatPoint::new(slab.xm.clone(), y),
                    offset: (0, 0),
                    crossing: Some(self.pieces[pi].curve),
                    wrap: false,
                });
            }
            if self.domain.wrap_y && !slab.pieces.is_empty() {
                self.add_portal(Portal {
                    a: slab.first_cell + slab.pieces.len(),
                    b: slab.first_cell,
                    pt: RatPoint::new(slab.xm.clone(), self.domain.y1.clone()),
                    offset: (0, 1),
                    crossing: None,
                    wrap: true,
                });
            }
        }
        for w in 1..self.walls.len() - 1 {
            self.wall_portals(w - 1, w, &self.walls[w].clone(), &self.walls[w].clone(), (0, 0), false);
        }
        if self.domain.wrap_x && self.slabs.len() > 0 {
            let last = self.slabs.len() - 1;
            let (x1, x0) = (self.domain.x1.clone(), self.domain.x0.clone());
            self.wall_portals(last, 0, &x1, &x0, (1, 0), true);
        }
    }

    /// Portals between slab `l` (its right side at `xl_side`) and slab `r`
    /// (its left side at `xr_side`).
    fn wall_portals(&mut self, l: usize, r: usize, xl_side: &Rat, xr_side: &Rat, offset: (i64, i64), wrap: bool) {
        let ly: Vec<Rat> = self.slabs[l].pieces.iter().map(|&i| self.pieces[i].y_at(xl_side)).collect();
        let ry: Vec<Rat> = self.slabs[r].pieces.iter().map(|&i| self.pieces[i].y_at(xr_side)).collect();
        let verticals: Vec<usize> = if wrap {
            Vec::new()
        } else {
            (0..self.pieces.len())
                .filter(|&i| self.pieces[i].vertical && self.pieces[i].a.x == *xl_side)
                .collect()
        };
        let mut bps: Vec<Rat> = vec![self.domain.y0.clone(), self.domain.y1.clone()];
        bps.extend(ly.iter().cloned());
        bps.extend(ry.iter().cloned());
        for &v in &verticals {
            bps.push(self.pieces[v].a.y.clone());
            bps.push(self.pieces[v].b.y.clone());
        }
        bps.sort();
        bps.dedup();
        for e in 0..bps.len() - 1 {
            let ym = interior(&bps[e], &bps[e + 1]);
            let lc = ly.partition_point(|y| *y < ym);
            let rc = ry.partition_point(|y| *y < ym);
            let crossing = verticals
                .iter()
                .find(|&&v| self.pieces[v].a.y <= bps[e] && self.pieces[v].b.y >= bps[e + 1])
                .map(|&v| self.pieces[v].curve);
            self.add_portal(Portal {
                a: self.slabs[l].first_cell + lc,
                b: self.slabs[r].first_cell + rc,
                pt: RatPoint::new(xl_side.clone(), ym),
                offset,
                crossing,
                wrap,
            });
        }
    }

    fn bottom_y(&self, cell: usize, x: &Rat) -> Rat {
        let c = &self.cells[cell];
        let s = &self.slabs[c.slab];
        if c.idx == 0 {
            self.domain.y0.clone()
        } else {
            self.pieces[s.pieces[c.idx - 1]].y_at(x)
        }
    }

    fn top_y(&self, cell: usize, x: &Rat) -> Rat {
        let c = &self.cells[cell];
        let s = &self.slabs[c.slab];
        if c.idx == s.pieces.len() {
            self.domain.y1.clone()
        } else {
            self.pieces[s.pieces[c.idx]].y_at(x)
        }
    }

    /// An interior point of the cell, in its frame.
    pub fn center(&self, cell: usize) -> RatPoint {
        let s = &self.slabs[self.cells[cell].slab];
        let y = interior(&self.bottom_y(cell, &s.xm), &self.top_y(cell, &s.xm));
        RatPoint::new(s.xm.clone(), y)
    }

    /// Curves whose pieces bound the cell from below or above.
    pub fn bounding_curves(&self, cell: usize) -> Vec<usize> {
        let c = &self.cells[cell];
        let s = &self.slabs[c.slab];
        let mut v = Vec::new();
        if c.idx > 0 {
            v.push(self.pieces[s.pieces[c.idx - 1]].curve);
        }
        if c.idx < s.pieces.len() {
            v.push(self.pieces[s.pieces[c.idx]].curve);
        }
        v
    }

    fn reduce(&self, p: &RatPoint) -> (RatPoint, (i64, i64)) {
        let d = &self.domain;
        let mut x = p.x.clone();
        let mut y = p.y.clone();
        let mut ox = 0;
        let mut oy = 0;
        if d.wrap_x {
            ox = (&p.x - &d.x0).floor_i64();
            x = &x - &Rat::int(ox);
        }
        if d.wrap_y {
            oy = (&p.y - &d.y0).floor_i64();
            y = &y - &Rat::int(oy);
        }
        (RatPoint::new(x, y), (ox, oy))
    }

    /// Cell entered when leaving `p` in direction `dir` (zero `dir` for a
    /// point off every curve and wall). `None` when `dir` runs along a piece
    /// or the point is outside the domain.
    pub fn locate(&self, p: &RatPoint, dir: &RatPoint) -> Option<Located> {
        let (mut dom, mut off) = self.reduce(p);
        let d = &self.domain;
        if dom.x < d.x0 || dom.x > d.x1 || dom.y < d.y0 || dom.y > d.y1 {
            return None;
        }
        if d.wrap_x && dom.x == d.x0 && dir.x.signum() < 0 {
            dom.x = d.x1.clone();
            off.0 -= 1;
        }
        if d.wrap_y && dom.y == d.y0 && dir.y.signum() < 0 {
            dom.y = d.y1.clone();
            off.1 -= 1;
        }
        // Last wall at or left of x.
        let k = self.walls.partition_point(|w| *w <= dom.x).checked_sub(1)?;
        let slab = if self.walls[k] == dom.x && dir.x.signum() < 0 { k.checked_sub(1)? } else { k };
        if slab >= self.slabs.len() {
            return None;
        }
        let s = &self.slabs[slab];
        let mut below = 0;
        for &pi in &s.pieces {
            let piece = &self.pieces[pi];
            let y = piece.y_at(&dom.x);
            let above = match dom.y.cmp(&y) {
                std::cmp::Ordering::Greater => true,
                std::cmp::Ordering::Less => false,
                std::cmp::Ordering::Equal => match piece.dir().cross(dir).signum() {
                    1 => true,
                    -1 => false,
                    _ => return None,
                },
            };
            if above {
                below += 1;
            } else {
                break;
            }
        }
        Some(Located { cell: s.first_cell + below, offset: off, dom })
    }

    /// Breadth-first walk from `from` to the first cell accepted by `target`.
    pub fn bfs(
        &self,
        from: usize,
        target: &dyn Fn(usize) -> bool,
        allow: &dyn Fn(&Portal) -> bool,
        blocked: &dyn Fn(usize) -> bool,
    ) -> Option<Vec<Step>> {
        let mut prev: Vec<Option<Step>> = vec![None; self.cells.len()];
        let mut seen = vec![false; self.cells.len()];
        let mut queue = VecDeque::new();
        seen[from] = true;
        queue.push_back(from);
        while let Some(c) = queue.pop_front() {
            if target(c) {
                let mut steps = Vec::new();
                let mut cur = c;
                while cur != from {
                    let st = prev[cur].unwrap();
                    steps.push(st);
                    let p = &self.portals[st.portal];
                    cur = if st.forward { p.a } else { p.b };
                }
                steps.reverse();
                return Some(steps);
            }
            for &pid in &self.adj[c] {
                let p = &self.portals[pid];
                if !allow(p) {
                    continue;
                }
                let (n, forward) = if p.a == c { (p.b, true) } else { (p.a, false) };
                if seen[n] || blocked(n) {
                    continue;
                }
                seen[n] = true;
                prev[n] = Some(Step { portal: pid, forward });
                queue.push_back(n);
            }
        }
        None
    }

    /// Breadth-first tree from `from`: the step used to reach each cell.
    pub fn bfs_tree(
        &self,
        from: usize,
        allow: &dyn Fn(&Portal) -> bool,
        blocked: &dyn Fn(usize) -> bool,
    ) -> Vec<Option<Step>> {
        let mut prev: Vec<Option<Step>> = vec![None; self.cells.len()];
        let mut seen = vec![false; self.cells.len()];
        let mut queue = VecDeque::new();
        seen[from] = true;
        queue.push_back(from);
        while let Some(c) = queue.pop_front() {
            for &pid in &self.adj[c] {
                let p = &self.portals[pid];
                if !allow(p) {
                    continue;
                }
                let (n, forward) = if p.a == c { (p.b, true) } else { (p.a, false) };
                if seen[n] || blocked(n) {
                    continue;
                }
                seen[n] = true;
                prev[n] = Some(Step { portal: pid, forward });
                queue.push_back(n);
            }
        }
        prev
    }

    /// Steps from the root of a `bfs_tree` to `to`, if reached.
    pub fn tree_path(&self, tree: &[Option<Step>], from: usize, to: usize) -> Option<Vec<Step>> {
        let mut steps = Vec::new();
        let mut cur = to;
        while cur != from {
            let st = tree[cur]?;
            steps.push(st);
            let p = &self.portals[st.portal];
            cur = if st.forward { p.a } else { p.b };
        }
        steps.reverse();
        Some(steps)
    }

    /// The cell on the far side of a portal traversal.
    pub fn step_target(&self, st: Step) -> usize {
        let p = &self.portals[st.portal];
        if st.forward {
            p.b
        } else {
            p.a
        }
    }

    /// Cells visited by a walk, starting with `from`.
    pub fn walk_cells(&self, from: usize, steps: &[Step]) -> Vec<usize> {
        let mut v = vec![from];
        for st in steps {
            let p = &self.portals[st.portal];
            v.push(if st.forward { p.b } else { p.a });
        }
        v
    }

    /// Lift polyline of a walk: start point, cell centers and portal points,
    /// then `end` (given in the frame of the final cell) if present.
    /// Returns the points and the frame offset of the final cell.
    pub fn walk_polyline(
        &self,
        start: &Located,
        steps: &[Step],
        end: Option<&RatPoint>,
    ) -> (Vec<RatPoint>, (i64, i64)) {
        let lift = |p: &RatPoint, o: (i64, i64)| p.shifted(o.0, o.1);
        let mut o = start.offset;
        let mut cell = start.cell;
        let mut out = vec![lift(&start.dom, o), lift(&self.center(cell), o)];
        for st in steps {
            let p = &self.portals[st.portal];
            if st.forward {
                out.push(lift(&p.pt, o));
                o = (o.0 + p.offset.0, o.1 + p.offset.1);
                cell = p.b;
            } else {
                let pt_b = p.pt.shifted(-p.offset.0, -p.offset.1);
                out.push(lift(&pt_b, o));
                o = (o.0 - p.offset.0, o.1 - p.offset.1);
                cell = p.a;
            }
            out.push(lift(&self.center(cell), o));
        }
        if let Some(e) = end {
            out.push(lift(e, o));
        }
        out.dedup();
        (out, o)
    }

    /// Union-find labels of cells connected through portals that pass
    /// `allow`.
    pub fn components(&self, allow: &dyn Fn(&Portal) -> bool) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.cells.len()).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut c = x;
            while p[c] != r {
                let n = p[c];
                p[c] = r;
                c = n;
            }
            r
        }
        for pt in &self.portals {
            if allow(pt) {
                let (ra, rb) = (find(&mut parent, pt.a), find(&mut parent, pt.b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
        (0..self.cells.len()).map(|c| find(&mut parent, c)).collect()
    }
}

/// Fractional x and y coordinates of all vertices and mutual crossings.
pub fn feature_coords(paths: &[PathView<'_>], lattice: Lattice) -> (Vec<Rat>, Vec<Rat>) {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for p in paths {
        for v in p.pts {
            xs.push(v.x.fract());
            ys.push(v.y.fract());
        }
    }
    for i in 0..paths.len() {
        for j in i + 1..paths.len() {
            let c = contacts(paths[i], paths[j], lattice);
            for pt in c.points {
                xs.push(pt.at.x.fract());
                ys.push(pt.at.y.fract());
            }
        }
    }
    (xs, ys)
}

fn make_pieces(paths: &[PathView<'_>], lattice: Lattice, d: &Domain) -> Vec<Piece> {
    let mut out = Vec::new();
    for (ci, path) in paths.iter().enumerate() {
        for j in 0..path.n_segments() {
            let seg = path.segment(j);
            let bb = seg.bbox();
            let xs: Vec<i64> = match lattice {
                Lattice::Trivial => vec![0],
                _ => ((&d.x0 - &bb.xmax).ceil_i64()..=(&d.x1 - &bb.xmin).floor_i64()).collect(),
            };
            let ys: Vec<i64> = match lattice {
                Lattice::Z2 => ((&d.y0 - &bb.ymax).ceil_i64()..=(&d.y1 - &bb.ymin).floor_i64()).collect(),
                _ => vec![0],
            };
            for &dx in &xs {
                for &dy in &ys {
                    let v = RatPoint::ints(dx, dy);
                    let s = Segment::new(&seg.p + &v, &seg.q + &v);
                    if let Some((p, q)) = clip(&s, d) {
                        let vertical = p.x == q.x;
                        let (a, b) = if p <= q { (p, q) } else { (q, p) };
                        out.push(Piece { curve: ci, seg: j, shift: (dx, dy), a, b, vertical });
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(v: &[(i64, i64, i64)]) -> Vec<RatPoint> {
        v.iter().map(|&(x, y, d)| RatPoint::frac(x, d, y, d)).collect()
    }

    #[test]
    fn single_essential_curve_leaves_one_component() {
        let a = path(&[(0, 1, 3), (3, 1, 3)]);
        let cx = CellComplex::torus(&[PathView { pts: &a, closed: true }]).unwrap();
        let comps = cx.components(&|p| p.crossing.is_none());
        let mut roots = comps.clone();
        roots.sort();
        roots.dedup();
        assert_eq!(roots.len(), 1);
    }

    #[test]
    fn square_loop_splits_torus() {
        let sq = path(&[(1, 1, 4), (2, 1, 4), (2, 2, 4), (1, 2, 4), (1, 1, 4)]);
        let cx = CellComplex::torus(&[PathView { pts: &sq, closed: true }]).unwrap();
        let comps = cx.components(&|p| p.crossing.is_none());
        let mut roots = comps.clone();
        roots.sort();
        roots.dedup();
        assert_eq!(roots.len(), 2);
        let inside = cx.locate(&RatPoint::frac(3, 8, 3, 8), &RatPoint::origin()).unwrap();
        let outside = cx.locate(&RatPoint::frac(7, 8, 7, 8), &RatPoint::origin()).unwrap();
        assert_ne!(comps[inside.cell], comps[outside.cell]);
        let near = cx.locate(&RatPoint::frac(1, 4, 3, 8), &RatPoint::ints(1, 0)).unwrap();
        assert_eq!(comps[near.cell], comps[inside.cell]);
    }

    #[test]
    fn walk_stays_off_curves() {
        let a = path(&[(0, 1, 3), (3, 1, 3)]);
        let b = path(&[(1, 0, 3), (1, 3, 3)]);
        let views = [PathView { pts: &a, closed: true }, PathView { pts: &b, closed: true }];
        let cx = CellComplex::torus(&views).unwrap();
        let s = cx.locate(&RatPoint::frac(1, 6, 1, 6), &RatPoint::origin()).unwrap();
        let t = cx.locate(&RatPoint::frac(5, 6, 5, 6), &RatPoint::origin()).unwrap();
        let steps = cx.bfs(s.cell, &|c| c == t.cell, &|p| p.crossing.is_none(), &|_| false).unwrap();
        let (pts, _) = cx.walk_polyline(&s, &steps, Some(&t.dom));
        let seg_path: Vec<Segment> = pts.windows(2).map(|w| Segment::new(w[0].clone(), w[1].clone())).collect();
        let probe = contacts(PathView { pts: &pts, closed: false }, views[0], Lattice::Z2);
        assert!(probe.points.is_empty(), "{:?}", seg_path);
        let probe = contacts(PathView { pts: &pts, closed: false }, views[1], Lattice::Z2);
        assert!(probe.points.is_empty());
    }
}
