//! Intersection reports between curves, pushing a curve aside, and
//! perturbation into general position.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::geom::{candidate_cross_pairs, segment_dist2, BBox, RatPoint, Segment};
use crate::rat::Rat;
use crate::surfaces::contacts::{contacts, local_kind, Lattice, LocalKind, PathView};
use crate::surfaces::{reduce_torus, AnnulusArc, CurveError, SurfaceModel, TorusCurve};

/// Something with a lift in one of the surface models.
pub trait SurfaceCurve {
    fn model(&self) -> SurfaceModel;
    fn closed(&self) -> bool;
    fn points(&self) -> &[RatPoint];
}

impl SurfaceCurve for TorusCurve {
    fn model(&self) -> SurfaceModel {
        SurfaceModel::Torus
    }
    fn closed(&self) -> bool {
        true
    }
    fn points(&self) -> &[RatPoint] {
        self.lift()
    }
}

impl SurfaceCurve for AnnulusArc {
    fn model(&self) -> SurfaceModel {
        self.model
    }
    fn closed(&self) -> bool {
        false
    }
    fn points(&self) -> &[RatPoint] {
        self.lift()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PointKind {
    Transverse,
    Touching,
    /// Shared endpoint of two arcs.
    Endpoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportPoint {
    /// Surface point, reduced into the fundamental domain.
    pub location: RatPoint,
    pub kind: PointKind,
    /// Position on the first curve: segment and parameter.
    #[serde(skip)]
    pub a_pos: (usize, Rat),
    /// Position on the second curve.
    #[serde(skip)]
    pub b_pos: (usize, Rat),
    /// Lattice translation applied to the second lift.
    #[serde(skip)]
    pub shift: (i64, i64),
    /// The point in the first curve's lift coordinates.
    #[serde(skip)]
    pub lift: RatPoint,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IntersectionReport {
    pub points: Vec<ReportPoint>,
    pub overlaps: Vec<Segment>,
}

impl IntersectionReport {
    pub fn transverse_count(&self) -> usize {
        self.points.iter().filter(|p| p.kind == PointKind::Transverse).count()
    }

    /// Points other than shared arc endpoints.
    pub fn interior_count(&self) -> usize {
        self.points.iter().filter(|p| p.kind != PointKind::Endpoint).count()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && self.overlaps.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OpsError {
    #[error("curves live on different surface models")]
    ModelMismatch,
    #[error("no valid collar found for push-aside")]
    ClearanceFailure,
    #[error("perturbation budget exhausted")]
    BudgetExceeded,
}

fn reduce(model: SurfaceModel, p: &RatPoint) -> RatPoint {
    match model {
        SurfaceModel::Torus => reduce_torus(p),
        SurfaceModel::CompactAnnulus | SurfaceModel::OpenAnnulus => RatPoint::new(p.x.fract(), p.y.clone()),
        SurfaceModel::PuncturedPlane => p.clone(),
    }
}

/// Lifts used for intersection questions between `a` and `b`.
fn windowed_pair<C: SurfaceCurve>(a: &C, b: &C) -> (Vec<RatPoint>, Vec<RatPoint>) {
    if a.model() != SurfaceModel::OpenAnnulus {
        return (a.points().to_vec(), b.points().to_vec());
    }
    let (lo, hi) = open_window(&[a.points(), b.points()]);
    (open_extend(a.points(), &lo, &hi), open_extend(b.points(), &lo, &hi))
}

pub(crate) fn open_window(lifts: &[&[RatPoint]]) -> (Rat, Rat) {
    let mut lo = Rat::zero();
    let mut hi = Rat::one();
    for l in lifts {
        for p in l.iter() {
            if p.y < lo {
                lo = p.y.clone();
            }
            if p.y > hi {
                hi = p.y.clone();
            }
        }
    }
    (lo - Rat::one(), hi + Rat::one())
}

pub(crate) fn open_extend(pts: &[RatPoint], lo: &Rat, hi: &Rat) -> Vec<RatPoint> {
    let f = &pts[0];
    let l = &pts[pts.len() - 1];
    let mut v = vec![RatPoint::new(f.x.clone(), lo.clone())];
    v.extend(pts.iter().cloned());
    v.push(RatPoint::new(l.x.clone(), hi.clone()));
    crate::surfaces::simplify_open(&v)
}

/// Complete report of `a ∩ b` on their common surface.
pub fn intersect_curves<C: SurfaceCurve>(a: &C, b: &C) -> Result<IntersectionReport, OpsError> {
    if a.model() != b.model() {
        return Err(OpsError::ModelMismatch);
    }
    let (pa, pb) = windowed_pair(a, b);
    Ok(report_paths(
        PathView { pts: &pa, closed: a.closed() },
        PathView { pts: &pb, closed: b.closed() },
        a.model(),
    ))
}

pub fn intersect_torus(a: &TorusCurve, b: &TorusCurve) -> IntersectionReport {
    report_paths(a.view(), b.view(), SurfaceModel::Torus)
}

pub fn report_paths(a: PathView<'_>, b: PathView<'_>, model: SurfaceModel) -> IntersectionReport {
    let c = contacts(a, b, model.lattice());
    let mut out = IntersectionReport::default();
    for k in c.points {
        let ba = a.branches(k.i, &k.s);
        let bb = b.branches(k.j, &k.t);
        let kind = match local_kind(&ba, &bb) {
            LocalKind::Transverse => PointKind::Transverse,
            LocalKind::Touching => PointKind::Touching,
            LocalKind::Endpoint => PointKind::Endpoint,
            LocalKind::Collinear => continue,
        };
        out.points.push(ReportPoint {
            location: reduce(model, &k.at),
            kind,
            a_pos: (k.i, k.s),
            b_pos: (k.j, k.t),
            shift: k.shift,
            lift: k.at,
        });
    }
    out.overlaps = c.overlaps.into_iter().map(|o| o.seg).collect();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub enum SideChoice {
    Left,
    Right,
}

/// Normal of `d` scaled so that its larger coordinate has absolute value 1.
fn cheap_normal(d: &RatPoint, side: SideChoice) -> RatPoint {
    let m = Rat::max(&d.x.abs(), &d.y.abs());
    let n = d.perp().scale(&m.recip());
    match side {
        SideChoice::Left => n,
        SideChoice::Right => -&n,
    }
}

/// Miter offset of an open or closed lift by `eps`.
pub fn offset_path(pts: &[RatPoint], closed: bool, side: SideChoice, eps: &Rat) -> Vec<RatPoint> {
    let n = pts.len() - 1;
    let dirs: Vec<RatPoint> = (0..n).map(|i| &pts[i + 1] - &pts[i]).collect();
    let normals: Vec<RatPoint> = dirs.iter().map(|d| cheap_normal(d, side).scale(eps)).collect();
    let vertex = |i: usize, prev: Option<usize>, next: Option<usize>| -> RatPoint {
        match (prev, next) {
            (Some(a), Some(b)) => {
                let (da, db) = (&dirs[a], &dirs[b]);
                let cr = da.cross(db);
                if cr.is_zero() {
                    &pts[i] + &normals[b]
                } else {
                    let s = -((&normals[a] - &normals[b]).cross(db)) / cr;
                    &(&pts[i] + &normals[a]) + &da.scale(&s)
                }
            }
            (Some(a), None) => &pts[i] + &normals[a],
            (None, Some(b)) => &pts[i] + &normals[b],
            (None, None) => unreachable!(),
        }
    };
    let mut out = Vec::with_capacity(pts.len());
    for i in 0..=n {
        let prev = if i > 0 {
            Some(i - 1)
        } else if closed {
            Some(n - 1)
        } else {
            None
        };
        let next = if i < n {
            Some(i)
        } else if closed {
            Some(0)
        } else {
            None
        };
        out.push(vertex(i, prev, next));
    }
    out
}

/// Squared distance between `a` and the lattice translates of `b`, capped
/// at `cap`. With `skip_adjacent` (for `a == b`) pairs of segments sharing a
/// vertex are ignored.
pub fn clearance2(a: PathView<'_>, b: PathView<'_>, lattice: Lattice, skip_adjacent: bool, cap: &Rat) -> Rat {
    let grow = |bb: BBox| BBox {
        xmin: &bb.xmin - cap,
        xmax: &bb.xmax + cap,
        ymin: &bb.ymin - cap,
        ymax: &bb.ymax + cap,
    };
    let na = a.n_segments();
    let a_boxes: Vec<BBox> = (0..na).map(|i| grow(a.segment(i).bbox())).collect();
    let total = BBox::of_points(a.pts.iter());
    let total = grow(total);
    let mut b_boxes = Vec::new();
    let mut ids = Vec::new();
    for j in 0..b.n_segments() {
        let bb = b.segment(j).bbox();
        let xs: Vec<i64> = match lattice {
            Lattice::Trivial => vec![0],
            _ => ((&total.xmin - &bb.xmax).ceil_i64()..=(&total.xmax - &bb.xmin).floor_i64()).collect(),
        };
        let ys: Vec<i64> = match lattice {
            Lattice::Z2 => ((&total.ymin - &bb.ymax).ceil_i64()..=(&total.ymax - &bb.ymin).floor_i64()).collect(),
            _ => vec![0],
        };
        for &dx in &xs {
            for &dy in &ys {
                b_boxes.push(bb.translated(&Rat::int(dx), &Rat::int(dy)));
                ids.push((j, dx, dy));
            }
        }
    }
    let mut best = cap * cap;
    for (i, k) in candidate_cross_pairs(&a_boxes, &b_boxes) {
        let (j, dx, dy) = ids[k];
        let sb = b.segment(j);
        let v = RatPoint::ints(dx, dy);
        let sb = Segment::new(&sb.p + &v, &sb.q + &v);
        let sa = a.segment(i);
        if skip_adjacent && (sa.p == sb.p || sa.p == sb.q || sa.q == sb.p || sa.q == sb.q) {
            continue;
        }
        let d = segment_dist2(&sa, &sb);
        if d < best {
            best = d;
        }
    }
    best
}

fn pow2_below_sqrt(c2: &Rat, extra: u32) -> u32 {
    if c2.is_zero() {
        return 40;
    }
    c2.sqrt_pow2_floor_exponent() + extra
}

/// A parallel copy of `a` on the given side, inside a collar that stays away
/// from every obstacle `a` does not meet.
pub fn push_aside(a: &TorusCurve, side: SideChoice, obstacles: &[TorusCurve]) -> Result<TorusCurve, OpsError> {
    let cap = Rat::new(1, 4);
    let mut c2 = clearance2(a.view(), a.view(), Lattice::Z2, true, &cap);
    let mut far: Vec<(&TorusCurve, Rat)> = Vec::new();
    let mut near: Vec<(&TorusCurve, IntersectionReport)> = Vec::new();
    for o in obstacles {
        let rep = intersect_torus(a, o);
        if rep.is_empty() {
            let d = clearance2(a.view(), o.view(), Lattice::Z2, false, &cap);
            if d < c2 {
                c2 = d.clone();
            }
            far.push((o, d));
        } else {
            near.push((o, rep));
        }
    }
    // Feature scale near crossings: vertices of obstacles close to `a`.
    let mut k = pow2_below_sqrt(&c2, 3);
    for _ in 0..48 {
        let eps = Rat::pow2_neg(k);
        let lift = offset_path(a.lift(), true, side, &eps);
        if let Ok(cand) = TorusCurve::new(lift) {
            if verify_push(a, &cand, &far, &near) {
                return Ok(cand);
            }
        }
        k += 1;
    }
    Err(OpsError::ClearanceFailure)
}

fn max_disp2(a: &TorusCurve, b: &TorusCurve) -> Rat {
    a.lift().iter().zip(b.lift()).map(|(p, q)| p.dist2(q)).max().unwrap()
}

fn verify_push(
    a: &TorusCurve,
    cand: &TorusCurve,
    far: &[(&TorusCurve, Rat)],
    near: &[(&TorusCurve, IntersectionReport)],
) -> bool {
    if !cand.is_simple() || !intersect_torus(a, cand).is_empty() {
        return false;
    }
    let disp = max_disp2(a, cand);
    for (o, d) in far {
        // Hausdorff distance below half the clearance.
        if disp.clone() * Rat::int(4) >= *d || !intersect_torus(cand, o).is_empty() {
            return false;
        }
    }
    for (o, rep) in near {
        let all_transverse = rep.overlaps.is_empty() && rep.points.iter().all(|p| p.kind == PointKind::Transverse);
        if all_transverse {
            let r2 = intersect_torus(cand, o);
            if !r2.overlaps.is_empty()
                || r2.points.len() != rep.points.len()
                || r2.points.iter().any(|p| p.kind != PointKind::Transverse)
            {
                return false;
            }
            // Each new crossing sits within the displacement of an old one.
            for p in &r2.points {
                if !rep.points.iter().any(|q| torus_dist2(&p.location, &q.location) <= disp.clone() * Rat::int(64)) {
                    return false;
                }
            }
        }
    }
    true
}

/// Squared flat distance on the torus between reduced points.
pub fn torus_dist2(p: &RatPoint, q: &RatPoint) -> Rat {
    let wrap = |d: Rat| {
        let d = d.fract();
        let e = Rat::one() - &d;
        Rat::min(&d, &e)
    };
    let dx = wrap(&p.x - &q.x);
    let dy = wrap(&p.y - &q.y);
    &dx * &dx + &dy * &dy
}

/// Fixed direction list of the jitter schedule.
fn jitter_dirs() -> Vec<RatPoint> {
    [(1, 1, 1, 3), (-2, 7, 1, 1), (3, 11, -1, 1), (-1, 1, -5, 13), (1, 1, -3, 17), (7, 19, 1, 1), (-1, 1, 2, 23), (-4, 29, -1, 1)]
        .iter()
        .map(|&(a, b, c, d)| RatPoint::frac(a, b, c, d))
        .collect()
}

fn jitter(c: &TorusCurve, amp: &Rat, k: usize, round: usize) -> Option<TorusCurve> {
    let dirs = jitter_dirs();
    let (p, q) = c.homology();
    let n = c.n_segments();
    let mut lift: Vec<RatPoint> = (0..n)
        .map(|i| {
            let g = &dirs[(7 * i + 3 * k + 5 * round) % dirs.len()];
            &c.lift()[i] + &g.scale(amp)
        })
        .collect();
    lift.push(lift[0].shifted(p, q));
    let out = TorusCurve::new(lift).ok()?;
    out.is_simple().then_some(out)
}

/// Indices of curves involved in a non-generic configuration.
pub fn non_generic(curves: &[TorusCurve]) -> Vec<usize> {
    let mut bad = vec![false; curves.len()];
    let mut seen: BTreeMap<RatPoint, usize> = BTreeMap::new();
    for i in 0..curves.len() {
        if !curves[i].is_simple() {
            bad[i] = true;
        }
        for j in i + 1..curves.len() {
            let r = intersect_torus(&curves[i], &curves[j]);
            if !r.overlaps.is_empty() || r.points.iter().any(|p| p.kind != PointKind::Transverse) {
                bad[j] = true;
                if j == 0 {
                    bad[i] = true;
                }
            }
            for p in r.points {
                if let Some(&prev) = seen.get(&p.location) {
                    if prev != i * curves.len() + j {
                        bad[j] = true;
                    }
                } else {
                    seen.insert(p.location, i * curves.len() + j);
                }
            }
        }
    }
    (0..curves.len()).filter(|&i| bad[i]).collect()
}

/// Deterministic vertex jitter until the curves are pairwise in general
/// position. Curve 0 is never moved; generic input is returned unchanged.
pub fn perturb_to_generic(curves: &[TorusCurve], delta: &Rat) -> Result<Vec<TorusCurve>, OpsError> {
    let mut cur = curves.to_vec();
    for round in 0..40 {
        let bad = non_generic(&cur);
        if bad.is_empty() {
            return Ok(cur);
        }
        let amp = delta * &Rat::pow2_neg(round as u32 / 8 + 1);
        for &k in &bad {
            if k == 0 {
                continue;
            }
            if let Some(j) = jitter(&curves[k], &amp, k, round) {
                cur[k] = j;
            }
        }
    }
    Err(OpsError::BudgetExceeded)
}

/// The closed curve `x` followed by `y` backwards, for two arc lifts whose
/// ends agree on the torus. Its class is `v_x - v_y` with `v` the
/// displacement of an arc lift.
pub fn arc_loop(x: &[RatPoint], y: &[RatPoint]) -> Result<TorusCurve, CurveError> {
    let d = &x[x.len() - 1] - &y[y.len() - 1];
    let (Some(dx), Some(dy)) = (d.x.to_i64(), d.y.to_i64()) else {
        return Err(CurveError::NonIntegerClosure);
    };
    let mut lift = x.to_vec();
    lift.extend(y.iter().rev().skip(1).map(|p| p.shifted(dx, dy)));
    TorusCurve::new(crate::surfaces::simplify_open(&lift))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(n: i64, d: i64) -> TorusCurve {
        TorusCurve::horizontal(Rat::new(n, d))
    }

    fn v(n: i64, d: i64) -> TorusCurve {
        TorusCurve::vertical(Rat::new(n, d))
    }

    #[test]
    fn arc_loop_classes() {
        let x = [RatPoint::ints(0, 0), RatPoint::frac(1, 2, 1, 2)];
        let y = [RatPoint::ints(0, 0), RatPoint::frac(1, 1, 1, 4), RatPoint::frac(3, 2, 1, 2)];
        let l = arc_loop(&x, &y).unwrap();
        assert_eq!(l.homology(), (-1, 0));
        assert!(l.is_simple());
        assert_eq!(arc_loop(&x, &x[..1]).unwrap_err(), CurveError::NonIntegerClosure);
    }

    #[test]
    fn report_examples() {
        let r = intersect_torus(&h(1, 3), &v(1, 3));
        assert_eq!(r.points.len(), 1);
        assert_eq!(r.points[0].location, RatPoint::frac(1, 3, 1, 3));
        assert_eq!(r.points[0].kind, PointKind::Transverse);
        assert!(intersect_torus(&h(1, 3), &h(2, 3)).is_empty());
    }

    #[test]
    fn wedge_contact_is_touching() {
        let dip = TorusCurve::new(vec![
            RatPoint::frac(0, 1, 3, 4),
            RatPoint::frac(1, 2, 1, 2),
            RatPoint::frac(1, 1, 3, 4),
        ])
        .unwrap();
        let r = intersect_torus(&h(1, 2), &dip);
        assert_eq!(r.points.len(), 1);
        assert_eq!(r.points[0].kind, PointKind::Touching);
    }

    #[test]
    fn push_examples() {
        let a = h(1, 2);
        let up = push_aside(&a, SideChoice::Left, &[]).unwrap();
        assert_eq!(up.homology(), (1, 0));
        assert!(intersect_torus(&a, &up).is_empty());
        let o = v(1, 3);
        let p = push_aside(&a, SideChoice::Right, &[o.clone()]).unwrap();
        let r = intersect_torus(&p, &o);
        assert_eq!(r.points.len(), 1);
        assert_eq!(r.points[0].kind, PointKind::Transverse);
        let pl = TorusCurve::new(vec![
            RatPoint::ints(0, 0),
            RatPoint::frac(3, 2, 1, 4),
            RatPoint::ints(2, 1),
        ])
        .unwrap();
        assert_eq!(push_aside(&pl, SideChoice::Left, &[]).unwrap().homology(), (2, 1));
    }

    #[test]
    fn opposite_pushes_are_separated() {
        let a = TorusCurve::new(vec![RatPoint::ints(0, 0), RatPoint::frac(1, 2, 1, 5), RatPoint::ints(1, 1)]).unwrap();
        let l = push_aside(&a, SideChoice::Left, &[]).unwrap();
        let r = push_aside(&a, SideChoice::Right, &[]).unwrap();
        assert!(intersect_torus(&l, &r).is_empty());
        let faces = crate::surfaces::complement_components(&[l, a, r]).unwrap();
        assert_eq!(faces.len(), 3);
    }

    #[test]
    fn perturbation_examples() {
        let d = Rat::new(1, 100);
        let a = TorusCurve::new(vec![RatPoint::frac(0, 1, 1, 3), RatPoint::frac(1, 2, 1, 2), RatPoint::frac(1, 1, 1, 3)]).unwrap();
        let out = perturb_to_generic(&[a.clone(), a.clone()], &d).unwrap();
        assert!(non_generic(&out).is_empty());
        assert_eq!(out[1].homology(), a.homology());
        let g = vec![h(1, 3), v(1, 3)];
        assert_eq!(perturb_to_generic(&g, &d).unwrap(), g);
        let o = RatPoint::origin();
        let three = vec![
            TorusCurve::geodesic(1, 0, o.clone()),
            TorusCurve::geodesic(0, 1, o.clone()),
            TorusCurve::geodesic(1, 1, o),
        ];
        let out = perturb_to_generic(&three, &d).unwrap();
        assert!(non_generic(&out).is_empty());
    }
}
