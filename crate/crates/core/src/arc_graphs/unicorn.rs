//! Unicorn paths between two arcs of an annulus with common endpoints.
//!
//! With `z` the first point of `g1` on `t`, the unicorn arc runs along `g1`
//! up to `z` and then along `t`. Pushed off `t` with its ends fixed, it is
//! disjoint from `t` and meets `g1` only where `t` did after `z`. Iterating
//! with `t` replaced by the pushed arc ends at an arc disjoint from `g1`.

use serde::Serialize;

use super::CutSurface;
use crate::curves_ops::{offset_path, report_paths, IntersectionReport, PointKind, SideChoice};
use crate::geom::RatPoint;
use crate::rat::Rat;
use crate::surfaces::{simplify_open, AnnulusArc, SurfaceModel};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UnicornError {
    #[error("arcs meet non-transversely or overlap")]
    NonGenericInput,
    #[error("arcs do not share their endpoints")]
    EndpointsDiffer,
    #[error("no pushed unicorn arc found")]
    PushFailed,
}

/// Arcs `g1 = c_0, ..., c_m = g2` with consecutive arcs meeting only at
/// their endpoints, and the interior intersection counts `|g1 ∩ t_k|` of
/// the successive targets `t_0 = g2, t_1, ...`.
#[derive(Clone, Debug, Serialize)]
pub struct UnicornPath {
    pub arcs: Vec<AnnulusArc>,
    pub counts: Vec<usize>,
}

/// Lift starting on the lower boundary.
fn upward(a: &AnnulusArc) -> Vec<RatPoint> {
    let mut v = a.lift().to_vec();
    if v[0].y == 1 {
        v.reverse();
    }
    v
}

fn report(a: &[RatPoint], b: &[RatPoint]) -> IntersectionReport {
    use crate::surfaces::PathView;
    report_paths(
        PathView { pts: a, closed: false },
        PathView { pts: b, closed: false },
        SurfaceModel::CompactAnnulus,
    )
}

/// Interior crossings of `a` and `b`, or `None` if they overlap or touch.
fn crossings(a: &[RatPoint], b: &[RatPoint]) -> Option<IntersectionReport> {
    let r = report(a, b);
    let ok = r.overlaps.is_empty() && r.points.iter().all(|p| p.kind != PointKind::Touching);
    ok.then_some(r)
}

fn interior(r: &IntersectionReport) -> usize {
    r.points.iter().filter(|p| p.kind != PointKind::Endpoint).count()
}

/// `g1` up to its first point on `t`, then `t` to its end.
fn unicorn(g1: &[RatPoint], t: &[RatPoint], r: &IntersectionReport) -> Vec<RatPoint> {
    let z = r
        .points
        .iter()
        .filter(|p| p.kind == PointKind::Transverse)
        .min_by(|a, b| a.a_pos.cmp(&b.a_pos))
        .expect("a crossing exists");
    let mut out: Vec<RatPoint> = g1[..=z.a_pos.0].to_vec();
    out.push(z.lift.clone());
    let (dx, dy) = z.shift;
    out.extend(t[z.b_pos.0 + 1..].iter().map(|p| p.shifted(dx, dy)));
    simplify_open(&out)
}

/// The unicorn arc pushed to one side by `eps`, ends fixed, vertices on a
/// dyadic grid a little finer than `eps`.
fn pushed(c: &[RatPoint], side: SideChoice, eps_exp: u32) -> Vec<RatPoint> {
    let mut v = offset_path(c, false, side, &Rat::pow2_neg(eps_exp));
    let n = v.len() - 1;
    v[0] = c[0].clone();
    v[n] = c[n].clone();
    for p in &mut v[1..n] {
        *p = RatPoint::new(p.x.snap(eps_exp + 6), p.y.snap(eps_exp + 6));
    }
    simplify_open(&v)
}

/// A pushed unicorn arc `c'` with `c' ∩ t` at the endpoints only and fewer
/// interior crossings with `g1` than `t`; returns it with its report
/// against `g1`.
fn accept(g1: &[RatPoint], t: &[RatPoint], cand: Vec<RatPoint>, bound: usize) -> Option<(Vec<RatPoint>, IntersectionReport)> {
    let rt = crossings(t, &cand)?;
    if interior(&rt) != 0 {
        return None;
    }
    let rg = crossings(g1, &cand)?;
    if interior(&rg) >= bound {
        return None;
    }
    let arc = AnnulusArc::compact(cand).ok()?;
    arc.is_simple().then(|| (arc.lift().to_vec(), rg))
}

const FIRST_EPS: u32 = 6;
const EPS_TRIES: u32 = 40;

/// Unicorn path between two arcs of the compact annulus with the same
/// endpoints on the boundary circles.
pub fn unicorn_arcs(g1: &AnnulusArc, g2: &AnnulusArc) -> Result<UnicornPath, UnicornError> {
    if g1.model != SurfaceModel::CompactAnnulus || g2.model != SurfaceModel::CompactAnnulus {
        return Err(UnicornError::NonGenericInput);
    }
    if !g1.is_simple() || !g2.is_simple() {
        return Err(UnicornError::NonGenericInput);
    }
    let a = upward(g1);
    let b = upward(g2);
    let d0 = &a[0].x - &b[0].x;
    let d1 = &a[a.len() - 1].x - &b[b.len() - 1].x;
    if !d0.is_integer() || !d1.is_integer() {
        return Err(UnicornError::EndpointsDiffer);
    }
    let r = crossings(&a, &b).ok_or(UnicornError::NonGenericInput)?;
    let mut counts = vec![interior(&r)];
    let mut targets = vec![g2.clone()];
    let mut t = b;
    let mut rep = r;
    let mut eps = FIRST_EPS;
    while counts[counts.len() - 1] > 0 {
        let bound = counts[counts.len() - 1];
        let c = unicorn(&a, &t, &rep);
        let mut found = None;
        for e in eps..eps + EPS_TRIES {
            let mut best: Option<(Vec<RatPoint>, IntersectionReport)> = None;
            for side in [SideChoice::Left, SideChoice::Right] {
                if let Some(ok) = accept(&a, &t, pushed(&c, side, e), bound) {
                    if best.as_ref().is_none_or(|b| interior(&ok.1) < interior(&b.1)) {
                        best = Some(ok);
                    }
                }
            }
            if let Some(b) = best {
                eps = e;
                found = Some(b);
                break;
            }
        }
        let (next, r) = found.ok_or(UnicornError::PushFailed)?;
        counts.push(interior(&r));
        rep = r;
        targets.push(AnnulusArc::compact(next.clone()).expect("accepted arcs are proper"));
        t = next;
    }
    let mut arcs = vec![g1.clone()];
    arcs.extend(targets.into_iter().rev());
    Ok(UnicornPath { arcs, counts })
}

/// Unicorn path between two arcs of a cut surface joining its marked
/// points.
pub fn unicorn_path(s: &CutSurface, g1: &AnnulusArc, g2: &AnnulusArc) -> Result<UnicornPath, UnicornError> {
    for g in [g1, g2] {
        let l = upward(g);
        let at_p = (&l[0] - &s.p).x.is_integer();
        let at_q = (&l[l.len() - 1] - &s.q).x.is_integer();
        if !at_p || !at_q {
            return Err(UnicornError::EndpointsDiffer);
        }
    }
    unicorn_arcs(g1, g2)
}
