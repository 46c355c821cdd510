//! Edges and 3-cliques of the fine curve graph of the torus.

mod refute;

pub use refute::{faces_met, far_witness, refute_n, FarWitness, RefuteError};

use serde::Serialize;

use crate::curves_ops::{intersect_torus, push_aside, IntersectionReport, PointKind, SideChoice};
use crate::geom::RatPoint;
use crate::rat::Rat;
use crate::surfaces::{reduce_torus, TorusCurve};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("curve {0} is not a vertex (separating or not simple)")]
    NotAVertex(usize),
    #[error("the curves do not form a 3-clique")]
    NotAClique,
    #[error("the clique is not a necklace")]
    NotANecklace,
    #[error("the curves do not cross exactly once transversely")]
    NotATransverseEdge,
    #[error("construction failed: {0}")]
    ConstructionFailed(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum EdgeKind {
    NonEdge,
    DisjointEdge,
    /// Crossing point, reduced into `[0,1)^2`.
    TransverseEdge(RatPoint),
}

pub fn is_vertex(c: &TorusCurve) -> bool {
    c.is_nonseparating() && c.is_simple()
}

pub fn edge_from_report(r: &IntersectionReport) -> EdgeKind {
    if !r.overlaps.is_empty() {
        return EdgeKind::NonEdge;
    }
    match r.points.as_slice() {
        [] => EdgeKind::DisjointEdge,
        [p] if p.kind == PointKind::Transverse => EdgeKind::TransverseEdge(p.location.clone()),
        _ => EdgeKind::NonEdge,
    }
}

pub fn is_edge(a: &TorusCurve, b: &TorusCurve) -> Result<EdgeKind, GraphError> {
    if !is_vertex(a) {
        return Err(GraphError::NotAVertex(0));
    }
    if !is_vertex(b) {
        return Err(GraphError::NotAVertex(1));
    }
    Ok(edge_from_report(&intersect_torus(a, b)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CliqueType {
    AllDisjoint,
    OnePair,
    TwoPair,
    Necklace,
    Bouquet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Clique3Report {
    /// Pairwise intersection sizes, sorted decreasingly.
    pub profile: [usize; 3],
    pub clique_type: CliqueType,
    /// Crossing points of the pairs `(a,b)`, `(a,c)`, `(b,c)` that cross.
    pub points: Vec<RatPoint>,
    /// Crossing point of each pair, `None` for disjoint pairs.
    #[serde(skip)]
    pub pair_points: [Option<RatPoint>; 3],
}

/// Type of a 3-clique from its three pairwise edge tags.
pub fn clique_from_edges(ab: &EdgeKind, ac: &EdgeKind, bc: &EdgeKind) -> Result<Clique3Report, GraphError> {
    let mut pair_points: [Option<RatPoint>; 3] = [None, None, None];
    for (k, e) in [ab, ac, bc].into_iter().enumerate() {
        match e {
            EdgeKind::NonEdge => return Err(GraphError::NotAClique),
            EdgeKind::DisjointEdge => {}
            EdgeKind::TransverseEdge(p) => pair_points[k] = Some(p.clone()),
        }
    }
    let n = pair_points.iter().filter(|p| p.is_some()).count();
    let points: Vec<RatPoint> = pair_points.iter().flatten().cloned().collect();
    let clique_type = match n {
        0 => CliqueType::AllDisjoint,
        1 => CliqueType::OnePair,
        2 => CliqueType::TwoPair,
        _ => {
            if points[0] == points[1] && points[1] == points[2] {
                CliqueType::Bouquet
            } else if points[0] != points[1] && points[1] != points[2] && points[0] != points[2] {
                CliqueType::Necklace
            } else {
                // Two equal crossing points force the third to agree.
                return Err(GraphError::NotAClique);
            }
        }
    };
    let mut profile = [0; 3];
    for k in 0..n {
        profile[k] = 1;
    }
    Ok(Clique3Report { profile, clique_type, points, pair_points })
}

pub fn classify_clique3(a: &TorusCurve, b: &TorusCurve, c: &TorusCurve) -> Result<Clique3Report, GraphError> {
    for (i, x) in [a, b, c].into_iter().enumerate() {
        if !is_vertex(x) {
            return Err(GraphError::NotAVertex(i));
        }
    }
    let ab = edge_from_report(&intersect_torus(a, b));
    let ac = edge_from_report(&intersect_torus(a, c));
    let bc = edge_from_report(&intersect_torus(b, c));
    clique_from_edges(&ab, &ac, &bc)
}

/// A transverse edge together with its crossing point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct EdgeT {
    pub a: TorusCurve,
    pub b: TorusCurve,
    pub point: RatPoint,
}

impl EdgeT {
    pub fn new(a: TorusCurve, b: TorusCurve) -> Result<EdgeT, GraphError> {
        match is_edge(&a, &b)? {
            EdgeKind::TransverseEdge(point) => Ok(EdgeT { a, b, point }),
            _ => Err(GraphError::NotATransverseEdge),
        }
    }
}

/// The crossing point of a transverse edge, reduced into `[0,1)^2`.
pub fn point_of_edge(e: &EdgeT) -> RatPoint {
    reduce_torus(&e.point)
}

/// Position `(segment, parameter)` of a surface point on `c`.
pub fn position_on(c: &TorusCurve, p: &RatPoint) -> Option<(usize, Rat)> {
    let target = reduce_torus(p);
    for i in 0..c.n_segments() {
        let seg = c.segment(i);
        let bb = seg.bbox();
        for dx in (&bb.xmin - &target.x).ceil_i64()..=(&bb.xmax - &target.x).floor_i64() {
            for dy in (&bb.ymin - &target.y).ceil_i64()..=(&bb.ymax - &target.y).floor_i64() {
                if let Some(t) = seg.param_of(&target.shifted(dx, dy)) {
                    if t < 1 {
                        return Some((i, t));
                    }
                }
            }
        }
    }
    None
}

pub fn curve_contains(c: &TorusCurve, p: &RatPoint) -> bool {
    position_on(c, p).is_some()
}

/// Lift of the sub-arc of `c` running forward from position `from` to
/// position `to` (the whole curve when they coincide).
pub fn sub_arc_forward(c: &TorusCurve, from: &(usize, Rat), to: &(usize, Rat)) -> Vec<RatPoint> {
    let (p, q) = c.homology();
    let n = c.n_segments();
    let lift = c.lift();
    let start = c.point_at(from.0, &from.1);
    let mut out = vec![start];
    let after = (to.0, &to.1) > (from.0, &from.1);
    let push_range = |out: &mut Vec<RatPoint>, lo: usize, hi: usize, shift: bool| {
        for k in lo..=hi {
            let v = if shift { lift[k].shifted(p, q) } else { lift[k].clone() };
            out.push(v);
        }
    };
    if after {
        if from.0 + 1 <= to.0 {
            push_range(&mut out, from.0 + 1, to.0, false);
        }
        out.push(c.point_at(to.0, &to.1));
    } else {
        push_range(&mut out, from.0 + 1, n, false);
        if to.0 >= 1 {
            push_range(&mut out, 1, to.0, true);
        }
        out.push(c.point_at(to.0, &to.1).shifted(p, q));
    }
    out.dedup();
    out
}

/// Concatenate lifts, translating each piece so that it starts where the
/// previous one ended. Consecutive pieces must join on the torus.
pub fn concat_lifts(parts: &[Vec<RatPoint>]) -> Vec<RatPoint> {
    let mut out: Vec<RatPoint> = parts[0].clone();
    for part in &parts[1..] {
        let end = out.last().unwrap().clone();
        let d = &end - &part[0];
        let (dx, dy) = (d.x.to_i64().expect("pieces join"), d.y.to_i64().expect("pieces join"));
        for p in &part[1..] {
            out.push(p.shifted(dx, dy));
        }
    }
    out.dedup();
    out
}

/// Arcs of a necklace: for each curve, the two arcs between its clique
/// points. `arcs[k] = (lower, upper)` where `lower` runs forward from the
/// lexicographically smaller point to the larger.
#[derive(Clone, Debug)]
pub struct NecklaceArcs {
    /// `P_ab`, `P_ac`, `P_bc`.
    pub points: [RatPoint; 3],
    pub arcs: [(Vec<RatPoint>, Vec<RatPoint>); 3],
}

pub fn necklace_arcs(a: &TorusCurve, b: &TorusCurve, c: &TorusCurve) -> Result<NecklaceArcs, GraphError> {
    let rep = classify_clique3(a, b, c)?;
    if rep.clique_type != CliqueType::Necklace {
        return Err(GraphError::NotANecklace);
    }
    let pts: Vec<RatPoint> = rep.pair_points.iter().map(|p| p.clone().unwrap()).collect();
    let (pab, pac, pbc) = (pts[0].clone(), pts[1].clone(), pts[2].clone());
    let split = |curve: &TorusCurve, u: &RatPoint, v: &RatPoint| {
        let (lo, hi) = if u <= v { (u, v) } else { (v, u) };
        let plo = position_on(curve, lo).expect("clique point on curve");
        let phi = position_on(curve, hi).expect("clique point on curve");
        (sub_arc_forward(curve, &plo, &phi), sub_arc_forward(curve, &phi, &plo))
    };
    Ok(NecklaceArcs {
        arcs: [split(a, &pab, &pac), split(b, &pab, &pbc), split(c, &pac, &pbc)],
        points: [pab, pac, pbc],
    })
}

fn oriented(arc: &[RatPoint], from: &RatPoint) -> Vec<RatPoint> {
    if reduce_torus(&arc[0]) == reduce_torus(from) {
        arc.to_vec()
    } else {
        let mut v = arc.to_vec();
        v.reverse();
        v
    }
}

/// The eight combination curves of the necklace arcs, as closed lifts
/// `P_ab -> P_ac` (along a), `P_ac -> P_bc` (along c), `P_bc -> P_ab` (along b).
pub fn combination_curves(arcs: &NecklaceArcs) -> Vec<TorusCurve> {
    let [pab, pac, pbc] = &arcs.points;
    let mut out = Vec::new();
    for mask in 0..8u32 {
        let pick = |k: usize| {
            let (lo, hi) = &arcs.arcs[k];
            if mask & (1 << k) == 0 {
                lo.clone()
            } else {
                hi.clone()
            }
        };
        let xa = oriented(&pick(0), pab);
        let xc = oriented(&pick(2), pac);
        let xb = oriented(&pick(1), pbc);
        let lift = concat_lifts(&[xa, xc, xb]);
        if let Ok(c) = TorusCurve::new(lift) {
            out.push(c);
        }
    }
    out
}

/// Witness set of a necklace: the nonseparating simple combination curves.
pub fn necklace_witness_f(a: &TorusCurve, b: &TorusCurve, c: &TorusCurve) -> Result<Vec<TorusCurve>, GraphError> {
    let arcs = necklace_arcs(a, b, c)?;
    Ok(combination_curves(&arcs)
        .into_iter()
        .filter(|f| f.is_nonseparating() && f.is_simple())
        .collect())
}

/// For a transverse edge `(a, b)`, a curve `c` making `{a, b, c}` a necklace:
/// resolve the crossing of parallel copies `a'`, `b'` by cutting corners.
pub fn necklace_completion(a: &TorusCurve, b: &TorusCurve) -> Result<TorusCurve, GraphError> {
    let e = EdgeT::new(a.clone(), b.clone())?;
    let fail = |_| GraphError::ConstructionFailed("push-aside");
    let a1 = push_aside(a, SideChoice::Left, &[b.clone()]).map_err(fail)?;
    let b1 = push_aside(b, SideChoice::Left, &[a.clone(), a1.clone()]).map_err(fail)?;
    let r = intersect_torus(&a1, &b1);
    if r.points.len() != 1 {
        return Err(GraphError::ConstructionFailed("pushed copies"));
    }
    let x = r.points[0].location.clone();
    let pa = position_on(&a1, &x).unwrap();
    let pb = position_on(&b1, &x).unwrap();
    let a_loop = sub_arc_forward(&a1, &pa, &pa);
    let b_loop = sub_arc_forward(&b1, &pb, &pb);
    let (n, m) = (a_loop.len(), b_loop.len());
    let ua = &a_loop[1] - &a_loop[0];
    let ub = &b_loop[1] - &b_loop[0];
    let ua_in = &a_loop[n - 1] - &a_loop[n - 2];
    let ub_in = &b_loop[m - 1] - &b_loop[m - 2];
    let ha = &a_loop[n - 1] - &a_loop[0];
    let hb = &b_loop[m - 1] - &b_loop[0];
    let total = &ha + &hb;
    let mut eta = Rat::new(1, 8);
    for _ in 0..40 {
        let step = |v: &RatPoint| v.scale(&(&eta / &Rat::max(&v.x.abs(), &v.y.abs())));
        let join = &a_loop[n - 1];
        // Cut the corner at the a -> b junction and at the b -> a closure.
        let mut lift = vec![&a_loop[0] + &step(&ua)];
        lift.extend(a_loop[1..n - 1].iter().cloned());
        lift.push(join - &step(&ua_in));
        lift.push(join + &step(&ub));
        lift.extend(b_loop[1..m - 1].iter().map(|p| p + &ha));
        lift.push(&(&b_loop[m - 1] + &ha) - &step(&ub_in));
        lift.push(&lift[0] + &total);
        if lift.windows(2).all(|w| w[0] != w[1]) {
            if let Ok(c) = TorusCurve::new(lift) {
                let good = is_vertex(&c)
                    && matches!(classify_clique3(&e.a, &e.b, &c), Ok(rep) if rep.clique_type == CliqueType::Necklace);
                if good {
                    return Ok(c);
                }
            }
        }
        eta = eta * Rat::new(1, 2);
    }
    Err(GraphError::ConstructionFailed("corner cutting"))
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

    pub(crate) fn standard_necklace() -> [TorusCurve; 3] {
        [
            h(1, 4),
            v(1, 4),
            TorusCurve::geodesic(1, 1, RatPoint::frac(0, 1, 1, 2)),
        ]
    }

    #[test]
    fn edge_examples() {
        assert_eq!(is_edge(&h(1, 3), &h(2, 3)).unwrap(), EdgeKind::DisjointEdge);
        assert_eq!(
            is_edge(&h(1, 3), &v(1, 3)).unwrap(),
            EdgeKind::TransverseEdge(RatPoint::frac(1, 3, 1, 3))
        );
        let dip = TorusCurve::new(vec![
            RatPoint::frac(0, 1, 3, 4),
            RatPoint::frac(1, 2, 1, 2),
            RatPoint::frac(1, 1, 3, 4),
        ])
        .unwrap();
        assert_eq!(is_edge(&h(1, 2), &dip).unwrap(), EdgeKind::NonEdge);
        let sq = TorusCurve::new(vec![
            RatPoint::ints(0, 0),
            RatPoint::frac(1, 4, 0, 1),
            RatPoint::frac(1, 4, 1, 4),
            RatPoint::frac(0, 1, 1, 4),
            RatPoint::ints(0, 0),
        ])
        .unwrap();
        assert_eq!(is_edge(&sq, &h(1, 2)), Err(GraphError::NotAVertex(0)));
    }

    #[test]
    fn clique_examples() {
        let r = classify_clique3(&h(1, 4), &h(1, 2), &h(3, 4)).unwrap();
        assert_eq!(r.clique_type, CliqueType::AllDisjoint);
        let [a, b, c] = standard_necklace();
        let r = classify_clique3(&a, &b, &c).unwrap();
        assert_eq!(r.clique_type, CliqueType::Necklace);
        assert_eq!(r.profile, [1, 1, 1]);
        let o = RatPoint::origin();
        let r = classify_clique3(
            &TorusCurve::geodesic(1, 0, o.clone()),
            &TorusCurve::geodesic(0, 1, o.clone()),
            &TorusCurve::geodesic(1, 1, o),
        )
        .unwrap();
        assert_eq!(r.clique_type, CliqueType::Bouquet);
        assert_eq!(r.points, vec![RatPoint::origin(); 3]);
    }

    #[test]
    fn standard_witness_set() {
        let [a, b, c] = standard_necklace();
        let f = necklace_witness_f(&a, &b, &c).unwrap();
        assert!(f.len() >= 4 && f.len() <= 8, "{}", f.len());
        for x in &f {
            assert_ne!(x.homology(), (0, 0));
            assert!(!x.same_image(&a) && !x.same_image(&b) && !x.same_image(&c));
        }
    }

    #[test]
    fn completion_gives_necklace() {
        let c = necklace_completion(&h(1, 3), &v(1, 3)).unwrap();
        let r = classify_clique3(&h(1, 3), &v(1, 3), &c).unwrap();
        assert_eq!(r.clique_type, CliqueType::Necklace);
    }

    #[test]
    fn point_of_edge_examples() {
        let e = EdgeT::new(h(1, 3), v(1, 3)).unwrap();
        assert_eq!(point_of_edge(&e), RatPoint::frac(1, 3, 1, 3));
        let e = EdgeT::new(h(7, 3), v(-2, 3)).unwrap();
        assert_eq!(point_of_edge(&e), RatPoint::frac(1, 3, 1, 3));
    }
}
