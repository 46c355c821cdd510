//! Chains of bouquet moves between two transverse edges at one point.

use serde::{Deserialize, Serialize};

use super::{cut_along, unicorn_path, CutError, CutSurface, UnicornError};
use crate::curves_ops::{report_paths, PointKind};
use crate::fine_graph::{classify_clique3, point_of_edge, CliqueType, EdgeT, GraphError};
use crate::geom::RatPoint;
use crate::rat::Rat;
use crate::surfaces::cells::CellComplex;
use crate::surfaces::{simplify_open, AnnulusArc, PathView, SurfaceModel, TorusCurve};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChainError {
    #[error("the two edges cross at different points")]
    PointsDiffer,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Cut(#[from] CutError),
    #[error(transparent)]
    Unicorn(#[from] UnicornError),
    #[error("no intermediate curve found between consecutive arcs")]
    DeltaFailed,
}

/// `(shared, from)` and `(shared, to)` are consecutive edges and the three
/// curves form a bouquet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BouquetMove {
    pub shared: TorusCurve,
    pub from: TorusCurve,
    pub to: TorusCurve,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainCertificate {
    pub edges: Vec<EdgeT>,
    pub moves: Vec<BouquetMove>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum ChainViolation {
    Empty,
    MoveCount { edges: usize, moves: usize },
    NotTransverse { edge: usize },
    WrongPoint { edge: usize },
    PointChanges { edge: usize },
    MoveMismatch { mv: usize },
    NotBouquet { mv: usize },
}

fn bouquet(a: &TorusCurve, b: &TorusCurve, c: &TorusCurve) -> bool {
    classify_clique3(a, b, c).is_ok_and(|r| r.clique_type == CliqueType::Bouquet)
}

/// Direction halfway between two directions less than a half turn apart.
fn bisector(d1: &RatPoint, d2: &RatPoint) -> RatPoint {
    let n = |d: &RatPoint| d.scale(&Rat::max(&d.x.abs(), &d.y.abs()).recip());
    &n(d1) + &n(d2)
}

/// Lift starting at `(0, 0)`.
fn based(a: &AnnulusArc) -> Vec<RatPoint> {
    let mut v = a.lift().to_vec();
    if v[0].y == 1 {
        v.reverse();
    }
    let k = v[0].x.floor_i64();
    v.iter().map(|p| p.shifted(-k, 0)).collect()
}

/// Sector boundaries around a marked point, in increasing angle: the
/// boundary circle, the two arcs in angular order, the boundary circle.
fn sectors(d1: &RatPoint, d2: &RatPoint, upper: bool) -> [RatPoint; 4] {
    let (lo, hi) = if d1.cross(d2).signum() > 0 { (d1, d2) } else { (d2, d1) };
    let (first, last) = if upper { (RatPoint::ints(1, 0), RatPoint::ints(-1, 0)) } else { (RatPoint::ints(-1, 0), RatPoint::ints(1, 0)) };
    [first, lo.clone(), hi.clone(), last]
}

/// Whether a branch in sector `k` comes before the arc leaving along `d`.
fn before(bounds: &[RatPoint; 4], k: usize, d: &RatPoint) -> bool {
    bounds[k + 1..3].contains(d)
}

/// An arc from `p` to `q` meeting `c1` and `c2` only at the marked points
/// whose glued curve crosses both glued curves transversely at `x`.
fn delta(s: &CutSurface, a: &TorusCurve, c1: &AnnulusArc, c2: &AnnulusArc) -> Option<TorusCurve> {
    let l1 = based(c1);
    let l2 = based(c2);
    let (n1, n2) = (l1.len() - 1, l2.len() - 1);
    let u = [&l1[1] - &l1[0], &l2[1] - &l2[0]];
    let w = [&l1[n1 - 1] - &l1[n1], &l2[n2 - 1] - &l2[n2]];
    let up = sectors(&u[0], &u[1], true);
    let down = sectors(&w[0], &w[1], false);
    let cx = CellComplex::annulus(
        &[PathView { pts: &l1, closed: false }, PathView { pts: &l2, closed: false }],
        Rat::zero(),
        Rat::one(),
    )
    .ok()?;
    let g1 = s.curve_of(c1).ok()?;
    let g2 = s.curve_of(c2).ok()?;
    for kp in 0..3 {
        for kq in 0..3 {
            let alternates = (0..2).all(|i| before(&up, kp, &u[i]) == before(&down, kq, &w[i]));
            if !alternates {
                continue;
            }
            let dp = bisector(&up[kp], &up[kp + 1]);
            let dq = bisector(&down[kq], &down[kq + 1]);
            for e in 6..40 {
                let r = Rat::pow2_neg(e);
                let sp = &s.p + &dp.scale(&r);
                let eq = &s.q + &dq.scale(&r);
                let zero = RatPoint::origin();
                let (Some(ls), Some(le)) = (cx.locate(&sp, &zero), cx.locate(&eq, &zero)) else {
                    continue;
                };
                let Some(steps) = cx.bfs(ls.cell, &|c| c == le.cell, &|p| p.crossing.is_none(), &|_| false) else {
                    break;
                };
                let (mut pts, o) = cx.walk_polyline(&ls, &steps, Some(&le.dom));
                let k = o.0 - le.offset.0;
                pts.insert(0, s.p.clone());
                pts.push(s.q.shifted(k, 0));
                let Ok(arc) = AnnulusArc::compact(simplify_open(&pts)) else {
                    continue;
                };
                if !arc.is_simple() || !meets_at_ends(&arc, &l1) || !meets_at_ends(&arc, &l2) {
                    continue;
                }
                let Ok(d) = s.curve_of(&arc) else {
                    continue;
                };
                if bouquet(a, &g1, &d) && bouquet(a, &d, &g2) {
                    return Some(d);
                }
            }
        }
    }
    None
}

fn meets_at_ends(arc: &AnnulusArc, other: &[RatPoint]) -> bool {
    let r = report_paths(
        PathView { pts: arc.lift(), closed: false },
        PathView { pts: other, closed: false },
        SurfaceModel::CompactAnnulus,
    );
    r.overlaps.is_empty() && r.points.iter().all(|p| p.kind == PointKind::Endpoint)
}

/// Certificate that `(a,b)` and `(a,c)` are joined by bouquet moves, for
/// transverse edges crossing at the same point.
pub fn bouquet_chain(a: &TorusCurve, b: &TorusCurve, c: &TorusCurve) -> Result<ChainCertificate, ChainError> {
    let eb = EdgeT::new(a.clone(), b.clone())?;
    let ec = EdgeT::new(a.clone(), c.clone())?;
    let x = point_of_edge(&eb);
    if x != point_of_edge(&ec) {
        return Err(ChainError::PointsDiffer);
    }
    if b.same_image(c) {
        return Ok(ChainCertificate { edges: vec![eb], moves: Vec::new() });
    }
    let s = cut_along(a, &x)?;
    let beta = s.arc_of(b)?;
    let gamma = s.arc_of(c)?;
    let path = unicorn_path(&s, &beta, &gamma)?;
    let m = path.arcs.len() - 1;
    let mut curves = vec![b.clone()];
    for arc in &path.arcs[1..m] {
        curves.push(s.curve_of(arc)?);
    }
    curves.push(c.clone());
    let mut edges = vec![eb];
    let mut moves = Vec::new();
    let mut step = |from: &TorusCurve, to: &TorusCurve, edges: &mut Vec<EdgeT>| -> Result<(), ChainError> {
        edges.push(EdgeT::new(a.clone(), to.clone())?);
        moves.push(BouquetMove { shared: a.clone(), from: from.clone(), to: to.clone() });
        Ok(())
    };
    for i in 0..m {
        let (u, v) = (&curves[i], &curves[i + 1]);
        if bouquet(a, u, v) {
            step(u, v, &mut edges)?;
        } else {
            let d = delta(&s, a, &path.arcs[i], &path.arcs[i + 1]).ok_or(ChainError::DeltaFailed)?;
            step(u, &d, &mut edges)?;
            step(&d, v, &mut edges)?;
        }
    }
    Ok(ChainCertificate { edges, moves })
}

/// The other curve of an edge containing `shared`, if any.
fn other<'a>(e: &'a EdgeT, shared: &TorusCurve) -> Option<&'a TorusCurve> {
    if e.a.same_image(shared) {
        Some(&e.b)
    } else if e.b.same_image(shared) {
        Some(&e.a)
    } else {
        None
    }
}

/// Independent check of a certificate; an empty list means accepted.
pub fn verify_chain(cert: &ChainCertificate) -> Vec<ChainViolation> {
    let mut out = Vec::new();
    if cert.edges.is_empty() {
        return vec![ChainViolation::Empty];
    }
    if cert.moves.len() + 1 != cert.edges.len() {
        out.push(ChainViolation::MoveCount { edges: cert.edges.len(), moves: cert.moves.len() });
    }
    let rebuilt = |c: &TorusCurve| TorusCurve::new(c.lift().to_vec()).ok();
    let mut first: Option<RatPoint> = None;
    for (k, e) in cert.edges.iter().enumerate() {
        let fresh = match (rebuilt(&e.a), rebuilt(&e.b)) {
            (Some(a), Some(b)) => EdgeT::new(a, b).ok(),
            _ => None,
        };
        let Some(fresh) = fresh else {
            out.push(ChainViolation::NotTransverse { edge: k });
            continue;
        };
        let pt = point_of_edge(&fresh);
        if pt != point_of_edge(e) {
            out.push(ChainViolation::WrongPoint { edge: k });
        }
        match &first {
            None => first = Some(pt),
            Some(p0) if *p0 != pt => out.push(ChainViolation::PointChanges { edge: k }),
            _ => {}
        }
    }
    for (k, mv) in cert.moves.iter().enumerate() {
        let (Some(e0), Some(e1)) = (cert.edges.get(k), cert.edges.get(k + 1)) else {
            break;
        };
        let matches = other(e0, &mv.shared).is_some_and(|f| f.same_image(&mv.from))
            && other(e1, &mv.shared).is_some_and(|t| t.same_image(&mv.to));
        if !matches {
            out.push(ChainViolation::MoveMismatch { mv: k });
        }
        let ok = match (rebuilt(&mv.shared), rebuilt(&mv.from), rebuilt(&mv.to)) {
            (Some(u), Some(v), Some(w)) => bouquet(&u, &v, &w),
            _ => false,
        };
        if !ok {
            out.push(ChainViolation::NotBouquet { mv: k });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(x: &RatPoint, p: i64, q: i64) -> TorusCurve {
        TorusCurve::new(vec![x.clone(), x.shifted(p, q)]).unwrap()
    }

    #[test]
    fn same_curve_is_empty_chain() {
        let a = TorusCurve::horizontal(Rat::zero());
        let b = TorusCurve::vertical(Rat::zero());
        let cert = bouquet_chain(&a, &b, &b).unwrap();
        assert_eq!(cert.edges.len(), 1);
        assert!(cert.moves.is_empty());
        assert!(verify_chain(&cert).is_empty());
    }

    #[test]
    fn bouquet_is_one_move() {
        let o = RatPoint::origin();
        let (a, b, c) = (line(&o, 1, 0), line(&o, 0, 1), line(&o, 1, 1));
        let cert = bouquet_chain(&a, &b, &c).unwrap();
        assert_eq!(cert.moves.len(), 1);
        assert!(verify_chain(&cert).is_empty());
    }

    #[test]
    fn points_differ() {
        let a = TorusCurve::horizontal(Rat::zero());
        let b = TorusCurve::vertical(Rat::zero());
        let c = TorusCurve::vertical(Rat::new(1, 2));
        assert_eq!(bouquet_chain(&a, &b, &c).unwrap_err(), ChainError::PointsDiffer);
    }

    #[test]
    fn extra_crossings() {
        let o = RatPoint::origin();
        let a = line(&o, 1, 0);
        let b = line(&o, 0, 1);
        // Class (6,1): c crosses b five more times away from the origin.
        let c = TorusCurve::new(vec![o.clone(), RatPoint::frac(3, 1, 1, 3), RatPoint::ints(6, 1)]).unwrap();
        let cert = bouquet_chain(&a, &b, &c).unwrap();
        assert!(cert.moves.len() >= 2);
        assert!(verify_chain(&cert).is_empty());
        for mv in &cert.moves {
            let r = classify_clique3(&mv.shared, &mv.from, &mv.to).unwrap();
            assert_eq!(r.clique_type, CliqueType::Bouquet);
        }
    }

    #[test]
    fn touching_pair_needs_delta() {
        // b and c leave the origin on the same side of each other at both
        // ends, so they touch there.
        let o = RatPoint::origin();
        let a = line(&o, 1, 0);
        let b = TorusCurve::new(vec![o.clone(), RatPoint::frac(1, 4, 1, 2), RatPoint::ints(0, 1)]).unwrap();
        let c = TorusCurve::new(vec![o.clone(), RatPoint::frac(1, 2, 1, 2), RatPoint::ints(0, 1)]).unwrap();
        assert!(classify_clique3(&a, &b, &c).is_err());
        let cert = bouquet_chain(&a, &b, &c).unwrap();
        assert_eq!(cert.moves.len(), 2);
        assert!(verify_chain(&cert).is_empty());
    }

    #[test]
    fn tampered_certificate_is_rejected() {
        let o = RatPoint::origin();
        let (a, b, c) = (line(&o, 1, 0), line(&o, 0, 1), line(&o, 1, 1));
        let mut cert = bouquet_chain(&a, &b, &c).unwrap();
        cert.moves[0].to = line(&RatPoint::frac(1, 2, 0, 1), 0, 1);
        assert!(!verify_chain(&cert).is_empty());
    }
}
