//! Exact planar primitives over [`Rat`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rat::Rat;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RatPoint {
    pub x: Rat,
    pub y: Rat,
}

impl RatPoint {
    pub fn new(x: Rat, y: Rat) -> RatPoint {
        RatPoint { x, y }
    }

    pub fn ints(x: i64, y: i64) -> RatPoint {
        RatPoint::new(Rat::int(x), Rat::int(y))
    }

    /// `(xn/xd, yn/yd)`.
    pub fn frac(xn: i64, xd: i64, yn: i64, yd: i64) -> RatPoint {
        RatPoint::new(Rat::new(xn, xd), Rat::new(yn, yd))
    }

    pub fn origin() -> RatPoint {
        RatPoint::ints(0, 0)
    }

    pub fn cross(&self, other: &RatPoint) -> Rat {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn dot(&self, other: &RatPoint) -> Rat {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn norm2(&self) -> Rat {
        self.dot(self)
    }

    pub fn scale(&self, k: &Rat) -> RatPoint {
        RatPoint::new(&self.x * k, &self.y * k)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// `self + t (other - self)`.
    pub fn lerp(&self, other: &RatPoint, t: &Rat) -> RatPoint {
        RatPoint::new(
            &self.x + &(t * &(&other.x - &self.x)),
            &self.y + &(t * &(&other.y - &self.y)),
        )
    }

    pub fn midpoint(&self, other: &RatPoint) -> RatPoint {
        self.lerp(other, &Rat::new(1, 2))
    }

    /// Counterclockwise quarter turn.
    pub fn perp(&self) -> RatPoint {
        RatPoint::new(-&self.y, self.x.clone())
    }

    pub fn shifted(&self, dx: i64, dy: i64) -> RatPoint {
        RatPoint::new(&self.x + &Rat::int(dx), &self.y + &Rat::int(dy))
    }

    pub fn dist2(&self, other: &RatPoint) -> Rat {
        (self - other).norm2()
    }
}

impl fmt::Debug for RatPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.x, self.y)
    }
}

impl Serialize for RatPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (&self.x, &self.y).serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<RatPoint, D::Error> {
        let (x, y) = <(Rat, Rat)>::deserialize(d)?;
        Ok(RatPoint { x, y })
    }
}

impl Add<&RatPoint> for &RatPoint {
    type Output = RatPoint;
    fn add(self, o: &RatPoint) -> RatPoint {
        RatPoint::new(&self.x + &o.x, &self.y + &o.y)
    }
}

impl Sub<&RatPoint> for &RatPoint {
    type Output = RatPoint;
    fn sub(self, o: &RatPoint) -> RatPoint {
        RatPoint::new(&self.x - &o.x, &self.y - &o.y)
    }
}

impl Add<RatPoint> for RatPoint {
    type Output = RatPoint;
    fn add(self, o: RatPoint) -> RatPoint {
        &self + &o
    }
}

impl Sub<RatPoint> for RatPoint {
    type Output = RatPoint;
    fn sub(self, o: RatPoint) -> RatPoint {
        &self - &o
    }
}

impl Neg for &RatPoint {
    type Output = RatPoint;
    fn neg(self) -> RatPoint {
        RatPoint::new(-&self.x, -&self.y)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Segment {
    pub p: RatPoint,
    pub q: RatPoint,
}

impl Segment {
    /// Panics if `p == q`.
    pub fn new(p: RatPoint, q: RatPoint) -> Segment {
        assert!(p != q, "degenerate segment at {:?}", p);
        Segment { p, q }
    }

    pub fn dir(&self) -> RatPoint {
        &self.q - &self.p
    }

    pub fn at(&self, t: &Rat) -> RatPoint {
        self.p.lerp(&self.q, t)
    }

    pub fn bbox(&self) -> BBox {
        BBox::of_points([&self.p, &self.q])
    }

    pub fn reversed(&self) -> Segment {
        Segment::new(self.q.clone(), self.p.clone())
    }

    /// Parameter of `pt` on the segment if it lies on it.
    pub fn param_of(&self, pt: &RatPoint) -> Option<Rat> {
        let d = self.dir();
        let w = pt - &self.p;
        if !d.cross(&w).is_zero() {
            return None;
        }
        let t = d.dot(&w) / d.norm2();
        if t.signum() < 0 || t > 1 {
            None
        } else {
            Some(t)
        }
    }

    pub fn contains(&self, pt: &RatPoint) -> bool {
        self.param_of(pt).is_some()
    }
}

/// Sign of `(q - p) x (r - p)`.
pub fn orient(p: &RatPoint, q: &RatPoint, r: &RatPoint) -> i32 {
    (q - p).cross(&(r - p)).signum()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum IntersectionResult {
    Empty,
    /// Single common point with its parameter on each segment. The flags say
    /// whether the point is interior to the first / second segment.
    Point {
        at: RatPoint,
        s: Rat,
        t: Rat,
        interior1: bool,
        interior2: bool,
    },
    /// Collinear overlap of positive length, oriented along the first segment.
    /// `s` are the parameters of its ends on the first segment, `t` on the second.
    Overlap {
        seg: Segment,
        s: (Rat, Rat),
        t: (Rat, Rat),
    },
}

fn interior(t: &Rat) -> bool {
    t.signum() > 0 && *t < 1
}

fn in_unit(t: &Rat) -> bool {
    t.signum() >= 0 && *t <= 1
}

pub fn segment_intersection(s1: &Segment, s2: &Segment) -> IntersectionResult {
    if !s1.bbox().intersects(&s2.bbox()) {
        return IntersectionResult::Empty;
    }
    let r = s1.dir();
    let sd = s2.dir();
    let w = &s2.p - &s1.p;
    let den = r.cross(&sd);
    if !den.is_zero() {
        let s = w.cross(&sd) / &den;
        let t = w.cross(&r) / &den;
        if in_unit(&s) && in_unit(&t) {
            let at = s1.at(&s);
            return IntersectionResult::Point {
                interior1: interior(&s),
                interior2: interior(&t),
                at,
                s,
                t,
            };
        }
        return IntersectionResult::Empty;
    }
    if !w.cross(&r).is_zero() {
        return IntersectionResult::Empty;
    }
    // Collinear: project the second segment onto the first.
    let rr = r.norm2();
    let a = w.dot(&r) / &rr;
    let b = (&s2.q - &s1.p).dot(&r) / &rr;
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    let lo = Rat::max(&lo, &Rat::zero());
    let hi = Rat::min(&hi, &Rat::one());
    if lo > hi {
        return IntersectionResult::Empty;
    }
    let sdd = sd.norm2();
    let param2 = |pt: &RatPoint| (pt - &s2.p).dot(&sd) / &sdd;
    if lo == hi {
        let at = s1.at(&lo);
        let t = param2(&at);
        return IntersectionResult::Point {
            interior1: interior(&lo),
            interior2: interior(&t),
            at,
            s: lo,
            t,
        };
    }
    let p0 = s1.at(&lo);
    let p1 = s1.at(&hi);
    let t = (param2(&p0), param2(&p1));
    IntersectionResult::Overlap {
        seg: Segment::new(p0, p1),
        s: (lo, hi),
        t,
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BBox {
    pub xmin: Rat,
    pub xmax: Rat,
    pub ymin: Rat,
    pub ymax: Rat,
}

impl BBox {
    pub fn of_points<'a, I: IntoIterator<Item = &'a RatPoint>>(pts: I) -> BBox {
        let mut it = pts.into_iter();
        let first = it.next().expect("empty point set");
        let mut b = BBox {
            xmin: first.x.clone(),
            xmax: first.x.clone(),
            ymin: first.y.clone(),
            ymax: first.y.clone(),
        };
        for p in it {
            if p.x < b.xmin {
                b.xmin = p.x.clone();
            }
            if p.x > b.xmax {
                b.xmax = p.x.clone();
            }
            if p.y < b.ymin {
                b.ymin = p.y.clone();
            }
            if p.y > b.ymax {
                b.ymax = p.y.clone();
            }
        }
        b
    }

    pub fn intersects(&self, o: &BBox) -> bool {
        self.xmin <= o.xmax && o.xmin <= self.xmax && self.ymin <= o.ymax && o.ymin <= self.ymax
    }

    pub fn translated(&self, dx: &Rat, dy: &Rat) -> BBox {
        BBox {
            xmin: &self.xmin + dx,
            xmax: &self.xmax + dx,
            ymin: &self.ymin + dy,
            ymax: &self.ymax + dy,
        }
    }
}

/// Index pairs `(i, j)`, `i < j`, whose boxes intersect. Sweep over `xmin`.
pub fn candidate_pairs(boxes: &[BBox]) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..boxes.len()).collect();
    order.sort_by(|&a, &b| boxes[a].xmin.cmp(&boxes[b].xmin));
    let mut active: Vec<usize> = Vec::new();
    let mut out = Vec::new();
    for &i in &order {
        active.retain(|&j| boxes[j].xmax >= boxes[i].xmin);
        for &j in &active {
            if boxes[i].ymin <= boxes[j].ymax && boxes[j].ymin <= boxes[i].ymax {
                out.push((i.min(j), i.max(j)));
            }
        }
        active.push(i);
    }
    out.sort();
    out
}

/// Index pairs `(i, j)` with box `a[i]` meeting box `b[j]`.
pub fn candidate_cross_pairs(a: &[BBox], b: &[BBox]) -> Vec<(usize, usize)> {
    let mut all: Vec<BBox> = a.to_vec();
    all.extend(b.iter().cloned());
    let n = a.len();
    let mut out: Vec<(usize, usize)> = candidate_pairs(&all)
        .into_iter()
        .filter(|&(i, j)| i < n && j >= n)
        .map(|(i, j)| (i, j - n))
        .collect();
    out.sort();
    out
}

fn edges_of(path: &[RatPoint], closed: bool) -> Vec<Segment> {
    let n = path.len();
    let mut edges: Vec<Segment> = path
        .windows(2)
        .map(|w| Segment::new(w[0].clone(), w[1].clone()))
        .collect();
    if closed && path[n - 1] != path[0] {
        edges.push(Segment::new(path[n - 1].clone(), path[0].clone()));
    }
    edges
}

fn edge_pair_bad(edges: &[Segment], closed: bool, i: usize, j: usize) -> bool {
    let m = edges.len();
    let adjacent_fwd = j == i + 1;
    let adjacent_wrap = closed && i == 0 && j == m - 1;
    match segment_intersection(&edges[i], &edges[j]) {
        IntersectionResult::Empty => false,
        IntersectionResult::Overlap { .. } => true,
        IntersectionResult::Point { at, .. } => {
            if adjacent_fwd && adjacent_wrap {
                // Two-edge loop: the edges share both vertices.
                return true;
            }
            if adjacent_fwd {
                at != edges[i].q
            } else if adjacent_wrap {
                at != edges[i].p
            } else {
                true
            }
        }
    }
}

/// Quadratic reference check.
pub fn polyline_self_intersects_naive(path: &[RatPoint], closed: bool) -> bool {
    let edges = edges_of(path, closed);
    if closed && edges.len() < 3 {
        return true;
    }
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if edge_pair_bad(&edges, closed, i, j) {
                return true;
            }
        }
    }
    false
}

/// True iff two non-adjacent edges meet, or two adjacent edges meet away
/// from their shared vertex. A closed path has an implicit closing edge
/// unless its last point repeats the first.
pub fn polyline_self_intersects(path: &[RatPoint], closed: bool) -> bool {
    assert!(path.len() >= 2, "polyline needs two points");
    let edges = edges_of(path, closed);
    if closed && edges.len() < 3 {
        return true;
    }
    let boxes: Vec<BBox> = edges.iter().map(|e| e.bbox()).collect();
    candidate_pairs(&boxes)
        .into_iter()
        .any(|(i, j)| edge_pair_bad(&edges, closed, i, j))
}

/// Squared distance from `p` to segment `s`.
pub fn point_segment_dist2(p: &RatPoint, s: &Segment) -> Rat {
    let d = s.dir();
    let t = (p - &s.p).dot(&d) / d.norm2();
    let t = Rat::min(&Rat::max(&t, &Rat::zero()), &Rat::one());
    p.dist2(&s.at(&t))
}

/// Squared distance between two segments (zero when they meet).
pub fn segment_dist2(a: &Segment, b: &Segment) -> Rat {
    if segment_intersection(a, b) != IntersectionResult::Empty {
        return Rat::zero();
    }
    [
        point_segment_dist2(&a.p, b),
        point_segment_dist2(&a.q, b),
        point_segment_dist2(&b.p, a),
        point_segment_dist2(&b.q, a),
    ]
    .into_iter()
    .min()
    .unwrap()
}

fn half(v: &RatPoint) -> u8 {
    if v.y.signum() > 0 || (v.y.is_zero() && v.x.signum() > 0) {
        0
    } else {
        1
    }
}

/// Total order of nonzero direction vectors by polar angle in `[0, 2π)`.
pub fn cmp_angle(u: &RatPoint, v: &RatPoint) -> Ordering {
    let (hu, hv) = (half(u), half(v));
    if hu != hv {
        return hu.cmp(&hv);
    }
    match u.cross(v).signum() {
        1 => Ordering::Less,
        -1 => Ordering::Greater,
        _ => Ordering::Equal,
    }
}

/// Shoelace signed area times two.
pub fn signed_area2(path: &[RatPoint]) -> Rat {
    let n = path.len();
    let mut acc = Rat::zero();
    for i in 0..n {
        acc += &path[i].cross(&path[(i + 1) % n]);
    }
    acc
}
