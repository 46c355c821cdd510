//! Intersections between lifted paths and all lattice translates of another.
//!
//! Parameters are half-open: a point at the end of segment `i` is reported as
//! the start of segment `i + 1`, except for the final segment of an open
//! path. With both paths simple, every surface intersection point appears
//! exactly once.

use std::cmp::Ordering;

use crate::geom::{candidate_cross_pairs, segment_intersection, BBox, IntersectionResult, RatPoint, Segment};
use crate::rat::Rat;

/// Translation group of the cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lattice {
    Z2,
    Horizontal,
    Trivial,
}

/// A lifted path. Closed paths end at a lattice translate of their start.
#[derive(Clone, Copy, Debug)]
pub struct PathView<'a> {
    pub pts: &'a [RatPoint],
    pub closed: bool,
}

impl<'a> PathView<'a> {
    pub fn n_segments(&self) -> usize {
        self.pts.len() - 1
    }

    pub fn segment(&self, i: usize) -> Segment {
        Segment::new(self.pts[i].clone(), self.pts[i + 1].clone())
    }

    pub fn dir(&self, i: usize) -> RatPoint {
        &self.pts[i + 1] - &self.pts[i]
    }

    fn param_ok(&self, i: usize, s: &Rat) -> bool {
        *s < 1 || (!self.closed && i + 1 == self.n_segments())
    }

    /// Directions of the local branches leaving the point `(i, s)`.
    pub fn branches(&self, i: usize, s: &Rat) -> Vec<RatPoint> {
        let n = self.n_segments();
        let d = self.dir(i);
        if s.is_zero() {
            let prev = if i > 0 {
                Some(i - 1)
            } else if self.closed {
                Some(n - 1)
            } else {
                None
            };
            let mut v = vec![d];
            if let Some(pi) = prev {
                v.push(-&self.dir(pi));
            }
            v
        } else if *s == 1 {
            // Only reachable at the end of an open path.
            vec![-&d]
        } else {
            vec![-&d, d]
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contact {
    /// Segment and parameter on the first path.
    pub i: usize,
    pub s: Rat,
    /// Segment and parameter on the second path.
    pub j: usize,
    pub t: Rat,
    /// The second path was translated by this lattice vector.
    pub shift: (i64, i64),
    /// The point, in the first path's lift coordinates.
    pub at: RatPoint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapContact {
    pub i: usize,
    pub s: (Rat, Rat),
    pub j: usize,
    pub t: (Rat, Rat),
    pub shift: (i64, i64),
    pub seg: Segment,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Contacts {
    pub points: Vec<Contact>,
    pub overlaps: Vec<OverlapContact>,
}

fn shift_range(lo: &Rat, hi: &Rat) -> std::ops::RangeInclusive<i64> {
    lo.ceil_i64()..=hi.floor_i64()
}

/// Horizontal shifts `dx` for which `sb + (dx, 0)` can meet `sa`: the
/// values `x_a - x_b` over pairs of points at a common height.
fn horizontal_shifts(sa: &Segment, sb: &Segment) -> Option<(Rat, Rat)> {
    let (ba, bb) = (sa.bbox(), sb.bbox());
    let y0 = Rat::max(&ba.ymin, &bb.ymin);
    let y1 = Rat::min(&ba.ymax, &bb.ymax);
    if y0 > y1 {
        return None;
    }
    // x of the segment at height y, or its x-interval when horizontal.
    let x_at = |s: &Segment, bx: &BBox, y: &Rat| -> (Rat, Rat) {
        let d = s.dir();
        if d.y.is_zero() {
            (bx.xmin.clone(), bx.xmax.clone())
        } else {
            let x = &s.p.x + &((y - &s.p.y) * &d.x / &d.y);
            (x.clone(), x)
        }
    };
    let mut lo: Option<Rat> = None;
    let mut hi: Option<Rat> = None;
    for y in [&y0, &y1] {
        let (al, ah) = x_at(sa, &ba, y);
        let (bl, bh) = x_at(sb, &bb, y);
        let (l, h) = (&al - &bh, &ah - &bl);
        lo = Some(lo.map_or(l.clone(), |v| Rat::min(&v, &l)));
        hi = Some(hi.map_or(h.clone(), |v| Rat::max(&v, &h)));
    }
    Some((lo?, hi?))
}

fn horizontal_contacts(a: PathView<'_>, b: PathView<'_>) -> Contacts {
    let mut out = Contacts::default();
    let b_segs: Vec<Segment> = (0..b.n_segments()).map(|j| b.segment(j)).collect();
    for i in 0..a.n_segments() {
        let sa = a.segment(i);
        for (j, sb0) in b_segs.iter().enumerate() {
            let Some((lo, hi)) = horizontal_shifts(&sa, sb0) else {
                continue;
            };
            for dx in shift_range(&lo, &hi) {
                let v = RatPoint::ints(dx, 0);
                let sb = Segment::new(&sb0.p + &v, &sb0.q + &v);
                push_contact(&mut out, &a, &b, i, &sa, j, &sb, (dx, 0));
            }
        }
    }
    out.points.sort_by(|x, y| (x.i, &x.s).cmp(&(y.i, &y.s)));
    out
}

#[allow(clippy::too_many_arguments)]
fn push_contact(
    out: &mut Contacts,
    a: &PathView<'_>,
    b: &PathView<'_>,
    i: usize,
    sa: &Segment,
    j: usize,
    sb: &Segment,
    shift: (i64, i64),
) {
    match segment_intersection(sa, sb) {
        IntersectionResult::Empty => {}
        IntersectionResult::Point { at, s, t, .. } => {
            if a.param_ok(i, &s) && b.param_ok(j, &t) {
                out.points.push(Contact { i, s, j, t, shift, at });
            }
        }
        IntersectionResult::Overlap { seg, s, t } => {
            out.overlaps.push(OverlapContact { i, s, j, t, shift, seg });
        }
    }
}

/// All contacts between `a` and the lattice translates of `b`.
pub fn contacts(a: PathView<'_>, b: PathView<'_>, lattice: Lattice) -> Contacts {
    if lattice == Lattice::Horizontal {
        return horizontal_contacts(a, b);
    }
    let a_boxes: Vec<BBox> = (0..a.n_segments()).map(|i| a.segment(i).bbox()).collect();
    let total = BBox::of_points(a.pts.iter());
    // Translated copies of b's segments that can reach a's bounding box.
    let mut b_boxes = Vec::new();
    let mut b_ids: Vec<(usize, (i64, i64))> = Vec::new();
    for j in 0..b.n_segments() {
        let bb = b.segment(j).bbox();
        let xs: Vec<i64> = match lattice {
            Lattice::Trivial => vec![0],
            _ => shift_range(&(&total.xmin - &bb.xmax), &(&total.xmax - &bb.xmin)).collect(),
        };
        let ys: Vec<i64> = match lattice {
            Lattice::Z2 => shift_range(&(&total.ymin - &bb.ymax), &(&total.ymax - &bb.ymin)).collect(),
            _ => vec![0],
        };
        for &dx in &xs {
            for &dy in &ys {
                b_boxes.push(bb.translated(&Rat::int(dx), &Rat::int(dy)));
                b_ids.push((j, (dx, dy)));
            }
        }
    }
    let mut out = Contacts::default();
    for (i, k) in candidate_cross_pairs(&a_boxes, &b_boxes) {
        let (j, shift) = b_ids[k];
        let sa = a.segment(i);
        let v = RatPoint::ints(shift.0, shift.1);
        let sb = Segment::new(&b.pts[j] + &v, &b.pts[j + 1] + &v);
        push_contact(&mut out, &a, &b, i, &sa, j, &sb, shift);
    }
    out.points.sort_by(|x, y| (x.i, &x.s).cmp(&(y.i, &y.s)));
    out
}

/// Contacts of a path with its own translates, dropping the trivial
/// self-coincidence of each segment.
pub fn self_contacts(a: PathView<'_>, lattice: Lattice) -> Contacts {
    let mut c = contacts(a, a, lattice);
    c.points.retain(|p| !(p.i == p.j && p.shift == (0, 0)));
    c.overlaps.retain(|o| !(o.i == o.j && o.shift == (0, 0)));
    // A closed path meets its own translate by the closing vector only at
    // the shared endpoint, which the half-open rule already drops.
    c
}

pub fn is_simple(a: PathView<'_>, lattice: Lattice) -> bool {
    let c = self_contacts(a, lattice);
    c.points.is_empty() && c.overlaps.is_empty()
}

/// Compare `u` and `v` by counterclockwise angle measured from `base`.
pub fn cmp_from(base: &RatPoint, u: &RatPoint, v: &RatPoint) -> Ordering {
    let h = |w: &RatPoint| {
        let c = base.cross(w).signum();
        if c > 0 || (c == 0 && base.dot(w).signum() > 0) {
            0
        } else {
            1
        }
    };
    let (hu, hv) = (h(u), h(v));
    if hu != hv {
        return hu.cmp(&hv);
    }
    match u.cross(v).signum() {
        1 => Ordering::Less,
        -1 => Ordering::Greater,
        _ => Ordering::Equal,
    }
}

fn same_dir(u: &RatPoint, v: &RatPoint) -> bool {
    u.cross(v).is_zero() && u.dot(v).signum() > 0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalKind {
    Transverse,
    Touching,
    /// One of the points is an endpoint of an open path.
    Endpoint,
    /// A branch of one path runs along a branch of the other.
    Collinear,
}

/// Local type of a contact from the branch directions of both paths.
pub fn local_kind(a: &[RatPoint], b: &[RatPoint]) -> LocalKind {
    if a.len() < 2 || b.len() < 2 {
        return LocalKind::Endpoint;
    }
    for u in a {
        for v in b {
            if same_dir(u, v) {
                return LocalKind::Collinear;
            }
        }
    }
    let base = &a[0];
    let other = &a[1];
    let side = |v: &RatPoint| cmp_from(base, v, other) == Ordering::Less;
    if side(&b[0]) != side(&b[1]) {
        LocalKind::Transverse
    } else {
        LocalKind::Touching
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(i64, i64, i64)]) -> Vec<RatPoint> {
        v.iter().map(|&(x, y, d)| RatPoint::frac(x, d, y, d)).collect()
    }

    #[test]
    fn horizontal_vs_vertical_single_contact() {
        let a = pts(&[(0, 1, 3), (3, 1, 3)]);
        let b = pts(&[(1, 0, 3), (1, 3, 3)]);
        let c = contacts(PathView { pts: &a, closed: true }, PathView { pts: &b, closed: true }, Lattice::Z2);
        assert_eq!(c.points.len(), 1);
        assert_eq!(c.points[0].at, RatPoint::frac(1, 3, 1, 3));
    }

    #[test]
    fn slope_curves_meet_determinant_times() {
        // (1,0) vs (1,2): |det| = 2 points.
        let a = pts(&[(0, 1, 7), (7, 1, 7)]);
        let b = pts(&[(1, 0, 5), (6, 10, 5)]);
        let c = contacts(PathView { pts: &a, closed: true }, PathView { pts: &b, closed: true }, Lattice::Z2);
        assert_eq!(c.points.len(), 2);
        // (2,1) vs (1,3): det = 5.
        let a = pts(&[(1, 1, 11), (23, 12, 11)]);
        let b = pts(&[(2, 3, 13), (15, 42, 13)]);
        let c = contacts(PathView { pts: &a, closed: true }, PathView { pts: &b, closed: true }, Lattice::Z2);
        assert_eq!(c.points.len(), 5);
    }

    #[test]
    fn geodesics_are_simple_and_figure_eight_is_not() {
        let g = pts(&[(0, 0, 1), (2, 3, 1)]);
        assert!(is_simple(PathView { pts: &g, closed: true }, Lattice::Z2));
        let bad = pts(&[(0, 0, 1), (2, 2, 1)]);
        assert!(!is_simple(PathView { pts: &bad, closed: true }, Lattice::Z2));
        let back = pts(&[(0, 0, 4), (3, 0, 4), (2, 0, 4), (4, 0, 4)]);
        assert!(!is_simple(PathView { pts: &back, closed: true }, Lattice::Z2));
    }

    #[test]
    fn local_kinds() {
        let e = |x, y| RatPoint::ints(x, y);
        assert_eq!(local_kind(&[e(1, 0), e(-1, 0)], &[e(0, 1), e(0, -1)]), LocalKind::Transverse);
        assert_eq!(local_kind(&[e(1, 0), e(-1, 0)], &[e(1, 1), e(-1, 1)]), LocalKind::Touching);
        assert_eq!(local_kind(&[e(1, 0), e(-1, 0)], &[e(1, 0), e(0, 1)]), LocalKind::Collinear);
        assert_eq!(local_kind(&[e(1, 0)], &[e(0, 1), e(0, -1)]), LocalKind::Endpoint);
    }
}
