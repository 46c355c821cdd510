//! Witness curves for non-necklace cliques and germ completions.

use std::collections::BTreeSet;

use crate::curves_ops::{intersect_torus, offset_path, push_aside, SideChoice};
use crate::geom::{point_segment_dist2, RatPoint};
use crate::rat::Rat;
use crate::surfaces::cells::{CellComplex, Located, Step};
use crate::surfaces::contacts::{contacts, Lattice, PathView};
use crate::surfaces::faces::FaceMap;
use crate::surfaces::{reduce_torus, TorusCurve};

use super::{classify_clique3, edge_from_report, is_vertex, position_on, CliqueType, EdgeKind, EdgeT, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RefuteError {
    #[error("the clique is a necklace")]
    IsNecklace,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("witness search failed: {0}")]
    WitnessSearchFailed(&'static str),
}

/// Faces of `a ∪ b ∪ c` that `d` passes through.
pub fn faces_met(d: &TorusCurve, fm: &FaceMap, others: &[&TorusCurve]) -> BTreeSet<usize> {
    let mut cuts: Vec<Vec<Rat>> = vec![vec![Rat::zero(), Rat::one()]; d.n_segments()];
    for o in others {
        let c = contacts(d.view(), o.view(), Lattice::Z2);
        for p in c.points {
            cuts[p.i].push(p.s);
        }
    }
    let mut met = BTreeSet::new();
    for (i, mut ts) in cuts.into_iter().enumerate() {
        ts.sort();
        ts.dedup();
        for w in ts.windows(2) {
            let mid = (&w[0] + &w[1]) * Rat::new(1, 2);
            if let Some(f) = fm.face_of_point(&d.point_at(i, &mid)) {
                met.insert(f);
            }
        }
    }
    met
}

fn meets_every_face(d: &TorusCurve, abc: &[&TorusCurve; 3]) -> bool {
    let curves: Vec<TorusCurve> = abc.iter().map(|c| (*c).clone()).collect();
    let Ok(fm) = FaceMap::new(&curves) else {
        return false;
    };
    faces_met(d, &fm, abc).len() == fm.faces.len()
}

fn four_clique(d: &TorusCurve, abc: &[&TorusCurve; 3]) -> bool {
    is_vertex(d)
        && abc
            .iter()
            .all(|x| edge_from_report(&intersect_torus(d, x)) != EdgeKind::NonEdge)
}

fn destroys_edge(d: &TorusCurve, alpha: &TorusCurve) -> bool {
    let r = intersect_torus(d, alpha);
    !r.overlaps.is_empty() || r.points.len() >= 2
}

/// A curve crossing each of three pairwise disjoint parallel curves exactly
/// once, threaded through the annuli between them.
fn transversal(abc: &[&TorusCurve; 3]) -> Option<TorusCurve> {
    let views: Vec<PathView<'_>> = abc.iter().map(|c| c.view()).collect();
    let cx = CellComplex::torus(&views).ok()?;
    let p0 = cx.portals.iter().position(|p| p.crossing == Some(0))?;
    let start_portal = cx.portals[p0].clone();
    let mut used: BTreeSet<usize> = BTreeSet::new();
    let mut steps: Vec<Step> = Vec::new();
    let mut cur = start_portal.b;
    used.insert(cur);
    let mut remaining: BTreeSet<usize> = [1usize, 2].into_iter().collect();
    while !remaining.is_empty() {
        let blocked = |c: usize| used.contains(&c);
        let tree = cx.bfs_tree(cur, &|p| p.crossing.is_none(), &blocked);
        let mut found = None;
        'search: for c in 0..cx.cells.len() {
            if c != cur && tree[c].is_none() {
                continue;
            }
            for &pid in &cx.adj[c] {
                let p = &cx.portals[pid];
                let Some(k) = p.crossing else { continue };
                if !remaining.contains(&k) {
                    continue;
                }
                let st = Step { portal: pid, forward: p.a == c };
                let next = cx.step_target(st);
                if used.contains(&next) || next == c {
                    continue;
                }
                found = Some((c, st, k));
                break 'search;
            }
        }
        let (c, st, k) = found?;
        let path = cx.tree_path(&tree, cur, c)?;
        for s in &path {
            used.insert(cx.step_target(*s));
        }
        steps.extend(path);
        steps.push(st);
        cur = cx.step_target(st);
        used.insert(cur);
        remaining.remove(&k);
    }
    let target = start_portal.a;
    if cur != target {
        if used.contains(&target) {
            return None;
        }
        let blocked = |c: usize| used.contains(&c) && c != target;
        let tail = cx.bfs(cur, &|c| c == target, &|p| p.crossing.is_none(), &blocked)?;
        steps.extend(tail);
    }
    let dom = start_portal.pt.shifted(-start_portal.offset.0, -start_portal.offset.1);
    let start = Located { cell: start_portal.b, offset: (0, 0), dom };
    let (pts, _) = cx.walk_polyline(&start, &steps, Some(&start_portal.pt));
    TorusCurve::new(pts).ok()
}

/// Replace a short piece of `d` around the crossing-portal point `y` by a
/// thin finger following `route` (which starts at `y`).
fn finger(d: &TorusCurve, route: &[RatPoint], eta: &Rat) -> Option<TorusCurve> {
    let y = &route[0];
    let (i, s) = position_on(d, y)?;
    if s.is_zero() {
        return None;
    }
    let yl = d.point_at(i, &s);
    let shift = &yl - y;
    let route: Vec<RatPoint> = route.iter().map(|p| p + &shift).collect();
    let u = d.segment(i).dir();
    let r0 = &route[1] - &route[0];
    let den = u.cross(&r0);
    if den.is_zero() {
        return None;
    }
    let mut left = offset_path(&route, false, SideChoice::Left, eta);
    let mut right = offset_path(&route, false, SideChoice::Right, eta);
    let tl = (&left[0] - &yl).cross(&r0) / &den;
    let tr = (&right[0] - &yl).cross(&r0) / &den;
    left[0] = &yl + &u.scale(&tl);
    right[0] = &yl + &u.scale(&tr);
    let (first, second) = if tl < tr { (left, right) } else { (right, left) };
    let t_lo = Rat::min(&tl, &tr);
    let t_hi = Rat::max(&tl, &tr);
    if &s + &t_lo <= Rat::zero() || &s + &t_hi >= Rat::one() {
        return None;
    }
    let mut lift: Vec<RatPoint> = d.lift()[..=i].to_vec();
    lift.extend(first.iter().cloned());
    lift.extend(second.iter().rev().cloned());
    lift.extend(d.lift()[i + 1..].iter().cloned());
    if lift.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    TorusCurve::new(lift).ok()
}

fn add_finger(d: &TorusCurve, abc: &[&TorusCurve; 3], alphas: &[TorusCurve], j: usize) -> Option<TorusCurve> {
    let alpha = &alphas[j];
    let views = [abc[0].view(), abc[1].view(), abc[2].view(), d.view(), alpha.view()];
    let cx = CellComplex::torus(&views).ok()?;
    let allow = |p: &crate::surfaces::cells::Portal| p.crossing.is_none() || p.crossing == Some(4);
    let d_portals: Vec<usize> = (0..cx.portals.len()).filter(|&k| cx.portals[k].crossing == Some(3)).collect();
    let a_portals: Vec<usize> = (0..cx.portals.len()).filter(|&k| cx.portals[k].crossing == Some(4)).collect();
    for &pd in &d_portals {
        let portal = cx.portals[pd].clone();
        for side in [portal.a, portal.b] {
            let tree = cx.bfs_tree(side, &allow, &|_| false);
            for &pa in &a_portals {
                let q = &cx.portals[pa];
                for (u, forward) in [(q.a, true), (q.b, false)] {
                    if u != side && tree[u].is_none() {
                        continue;
                    }
                    let Some(mut steps) = cx.tree_path(&tree, side, u) else { continue };
                    let st = Step { portal: pa, forward };
                    let v = cx.step_target(st);
                    let visited = cx.walk_cells(side, &steps);
                    if visited.contains(&v) {
                        continue;
                    }
                    steps.push(st);
                    let dom = if side == portal.a {
                        portal.pt.clone()
                    } else {
                        portal.pt.shifted(-portal.offset.0, -portal.offset.1)
                    };
                    let start = Located { cell: side, offset: (0, 0), dom };
                    let (route, _) = cx.walk_polyline(&start, &steps, None);
                    let mut eta = Rat::new(1, 64);
                    for _ in 0..24 {
                        if let Some(d2) = finger(d, &route, &eta) {
                            let ok = four_clique(&d2, abc)
                                && meets_every_face(&d2, abc)
                                && alphas[..=j].iter().all(|x| destroys_edge(&d2, x));
                            if ok {
                                return Some(d2);
                            }
                        }
                        eta = eta * Rat::new(1, 2);
                    }
                }
            }
        }
    }
    None
}

/// A curve `d` with `{a,b,c,d}` a 4-clique that meets every face of
/// `a ∪ b ∪ c` and has at least two intersection points with every `alpha`.
pub fn refute_n(a: &TorusCurve, b: &TorusCurve, c: &TorusCurve, alphas: &[TorusCurve]) -> Result<TorusCurve, RefuteError> {
    let rep = classify_clique3(a, b, c)?;
    let abc = [a, b, c];
    let pushed = |k: usize| -> Option<TorusCurve> {
        let others: Vec<TorusCurve> = (0..3).filter(|&i| i != k).map(|i| abc[i].clone()).collect();
        for side in [SideChoice::Left, SideChoice::Right] {
            if let Ok(d) = push_aside(abc[k], side, &others) {
                if four_clique(&d, &abc) && meets_every_face(&d, &abc) {
                    return Some(d);
                }
            }
        }
        None
    };
    let [ab, ac, bc] = &rep.pair_points;
    let base = match rep.clique_type {
        CliqueType::Necklace => return Err(RefuteError::IsNecklace),
        CliqueType::Bouquet => pushed(0),
        CliqueType::TwoPair => {
            let k = match (ab.is_some(), ac.is_some(), bc.is_some()) {
                (true, true, _) => 0,
                (true, _, true) => 1,
                _ => 2,
            };
            pushed(k)
        }
        CliqueType::OnePair => {
            let k = if ab.is_some() {
                2
            } else if ac.is_some() {
                1
            } else {
                0
            };
            pushed(k)
        }
        CliqueType::AllDisjoint => transversal(&abc).filter(|d| four_clique(d, &abc) && meets_every_face(d, &abc)),
    };
    let mut d = base.ok_or(RefuteError::WitnessSearchFailed("base curve"))?;
    for j in 0..alphas.len() {
        if destroys_edge(&d, &alphas[j]) {
            continue;
        }
        d = add_finger(&d, &abc, alphas, j).ok_or(RefuteError::WitnessSearchFailed("finger"))?;
    }
    Ok(d)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FarWitness {
    Witness { a: TorusCurve, b: TorusCurve },
    NotFar,
}

fn inf_norm(v: &RatPoint) -> Rat {
    Rat::max(&v.x.abs(), &v.y.abs())
}

fn point_curve_dist2(p: &RatPoint, c: &TorusCurve) -> Rat {
    let cap = Rat::new(1, 2);
    let mut best = &cap * &cap;
    let p = reduce_torus(p);
    for seg in c.segments() {
        let bb = seg.bbox();
        for dx in (&bb.xmin - &p.x - &cap).ceil_i64()..=(&bb.xmax - &p.x + &cap).floor_i64() {
            for dy in (&bb.ymin - &p.y - &cap).ceil_i64()..=(&bb.ymax - &p.y + &cap).floor_i64() {
                let d = point_segment_dist2(&p.shifted(dx, dy), &seg);
                if d < best {
                    best = d;
                }
            }
        }
    }
    best
}

/// Branch directions of `c` at `x` (incoming, outgoing) with the room
/// available along each, in max-norm.
fn branches_at(c: &TorusCurve, x: &RatPoint) -> Option<(RatPoint, RatPoint, Rat)> {
    let (i, s) = position_on(c, x)?;
    let n = c.n_segments();
    let seg = c.segment(i);
    let here = c.point_at(i, &s);
    if s.is_zero() {
        let prev = c.segment((i + n - 1) % n);
        let room = Rat::min(&inf_norm(&prev.dir()), &inf_norm(&seg.dir()));
        Some((prev.dir(), seg.dir(), room))
    } else {
        let room = Rat::min(&inf_norm(&(&here - &seg.p)), &inf_norm(&(&seg.q - &here)));
        Some((seg.dir(), seg.dir(), room))
    }
}

fn germ(x: &RatPoint, din: &RatPoint, dout: &RatPoint, r: &Rat) -> Vec<RatPoint> {
    vec![
        x - &din.scale(&(r / &inf_norm(din))),
        x.clone(),
        x + &dout.scale(&(r / &inf_norm(dout))),
    ]
}

/// Route from the end of an open germ back to its start, crossing the
/// curve with index `cross` exactly once when given, and nothing else.
fn close_germ(cx: &CellComplex, g: &[RatPoint], cross: Option<usize>) -> Option<Vec<RatPoint>> {
    let n = g.len();
    // Leave the germ ends slightly to the left so the tie with the germ
    // itself is broken.
    let nudge = |d: RatPoint| &d + &d.perp().scale(&Rat::new(1, 1024));
    let start = cx.locate(&g[n - 1], &nudge(&g[n - 1] - &g[n - 2]))?;
    let end = cx.locate(&g[0], &nudge(&g[0] - &g[1]))?;
    let none = |p: &crate::surfaces::cells::Portal| p.crossing.is_none();
    let steps = match cross {
        None => cx.bfs(start.cell, &|c| c == end.cell, &none, &|_| false)?,
        Some(k) => {
            let tree = cx.bfs_tree(start.cell, &none, &|_| false);
            let mut found = None;
            for (pid, p) in cx.portals.iter().enumerate() {
                if p.crossing != Some(k) {
                    continue;
                }
                for (u, forward) in [(p.a, true), (p.b, false)] {
                    if u != start.cell && tree[u].is_none() {
                        continue;
                    }
                    let Some(first) = cx.tree_path(&tree, start.cell, u) else { continue };
                    let used: BTreeSet<usize> = cx.walk_cells(start.cell, &first).into_iter().collect();
                    let st = Step { portal: pid, forward };
                    let v = cx.step_target(st);
                    if used.contains(&v) || used.contains(&end.cell) {
                        continue;
                    }
                    if let Some(second) = cx.bfs(v, &|c| c == end.cell, &none, &|c| used.contains(&c)) {
                        let mut all = first;
                        all.push(st);
                        all.extend(second);
                        found = Some(all);
                        break;
                    }
                }
                if found.is_some() {
                    break;
                }
            }
            found?
        }
    };
    let (route, _) = cx.walk_polyline(&start, &steps, Some(&end.dom));
    let mut lift = g.to_vec();
    lift.extend(route[1..].iter().cloned());
    lift.dedup();
    Some(lift)
}

/// New curves agreeing with `a` and `b` near their crossing point and
/// forming a non-bouquet 3-clique with `c`, or `NotFar` when the crossing
/// point lies on `c`.
pub fn far_witness(a: &TorusCurve, b: &TorusCurve, c: &TorusCurve) -> Result<FarWitness, GraphError> {
    let e = EdgeT::new(a.clone(), b.clone())?;
    if !is_vertex(c) {
        return Err(GraphError::NotAVertex(2));
    }
    let x = reduce_torus(&e.point);
    if position_on(c, &x).is_some() {
        return Ok(FarWitness::NotFar);
    }
    let (ain, aout, aroom) = branches_at(a, &x).ok_or(GraphError::ConstructionFailed("point on a"))?;
    let (bin, bout, broom) = branches_at(b, &x).ok_or(GraphError::ConstructionFailed("point on b"))?;
    let clear = point_curve_dist2(&x, c);
    let mut k = clear.sqrt_pow2_floor_exponent() + 2;
    while Rat::pow2_neg(k) * Rat::int(2) > Rat::min(&aroom, &broom) {
        k += 1;
    }
    for _ in 0..16 {
        let r = Rat::pow2_neg(k);
        let ga = germ(&x, &ain, &aout, &(&r * &Rat::new(1, 4)));
        let gb = germ(&x, &bin, &bout, &r);
        if let Some(w) = complete_germs(&ga, &gb, c) {
            return Ok(w);
        }
        k += 1;
    }
    Err(GraphError::ConstructionFailed("germ completion"))
}

fn complete_germs(ga: &[RatPoint], gb: &[RatPoint], c: &TorusCurve) -> Option<FarWitness> {
    let views = [
        c.view(),
        PathView { pts: ga, closed: false },
        PathView { pts: gb, closed: false },
    ];
    let cx = CellComplex::torus(&views).ok()?;
    let a2 = TorusCurve::new(close_germ(&cx, ga, Some(0))?).ok()?;
    let views = [c.view(), a2.view(), PathView { pts: gb, closed: false }];
    let cx = CellComplex::torus(&views).ok()?;
    let b2 = TorusCurve::new(close_germ(&cx, gb, None)?).ok()?;
    let rep = classify_clique3(&a2, &b2, c).ok()?;
    let germ_kept = a2.lift()[..3] == *ga && b2.lift()[..3] == *gb;
    (rep.clique_type != CliqueType::Bouquet && germ_kept).then_some(FarWitness::Witness { a: a2, b: b2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fine_graph::classify_clique3;

    fn h(n: i64, d: i64) -> TorusCurve {
        TorusCurve::horizontal(Rat::new(n, d))
    }

    fn v(n: i64, d: i64) -> TorusCurve {
        TorusCurve::vertical(Rat::new(n, d))
    }

    fn check(a: &TorusCurve, b: &TorusCurve, c: &TorusCurve, alphas: &[TorusCurve], d: &TorusCurve) {
        let abc = [a, b, c];
        assert!(four_clique(d, &abc));
        assert!(meets_every_face(d, &abc));
        for al in alphas {
            assert!(destroys_edge(d, al));
        }
    }

    #[test]
    fn bouquet_uses_push() {
        let o = RatPoint::origin();
        let a = TorusCurve::geodesic(1, 0, o.clone());
        let b = TorusCurve::geodesic(0, 1, o.clone());
        let c = TorusCurve::geodesic(1, 1, o);
        let d = refute_n(&a, &b, &c, &[]).unwrap();
        assert_eq!(d.homology(), (1, 0));
        check(&a, &b, &c, &[], &d);
    }

    #[test]
    fn all_disjoint_with_alpha() {
        let (a, b, c) = (h(1, 4), h(1, 2), h(3, 4));
        let alphas = vec![v(1, 2)];
        let d = refute_n(&a, &b, &c, &alphas).unwrap();
        check(&a, &b, &c, &alphas, &d);
        assert_eq!(intersect_torus(&d, &alphas[0]).points.len() % 2, 0);
    }

    #[test]
    fn all_disjoint_in_any_order() {
        for (i, j, k) in [(1, 2, 3), (3, 1, 2), (2, 3, 1), (1, 3, 2), (2, 1, 3), (3, 2, 1)] {
            let (a, b, c) = (h(i, 4), h(j, 4), h(k, 4));
            let d = refute_n(&a, &b, &c, &[]).unwrap();
            check(&a, &b, &c, &[], &d);
        }
    }

    #[test]
    fn two_pair_with_alphas() {
        let (a, b, c) = (h(1, 3), v(1, 4), v(3, 4));
        let alphas = vec![h(2, 3), TorusCurve::geodesic(1, 1, RatPoint::frac(1, 8, 0, 1)), v(1, 2)];
        let d = refute_n(&a, &b, &c, &alphas).unwrap();
        check(&a, &b, &c, &alphas, &d);
    }

    #[test]
    fn necklace_is_rejected() {
        let a = h(1, 4);
        let b = v(1, 4);
        let c = TorusCurve::geodesic(1, 1, RatPoint::frac(0, 1, 1, 2));
        assert_eq!(refute_n(&a, &b, &c, &[]), Err(RefuteError::IsNecklace));
    }

    #[test]
    fn far_witness_examples() {
        let a = v(0, 1);
        let b = h(0, 1);
        let c = h(1, 2);
        match far_witness(&a, &b, &c).unwrap() {
            FarWitness::Witness { a: a2, b: b2 } => {
                let t = classify_clique3(&a2, &b2, &c).unwrap().clique_type;
                assert!(matches!(t, CliqueType::OnePair | CliqueType::TwoPair | CliqueType::Necklace));
                for p in &a2.lift()[..3] {
                    assert!(crate::fine_graph::curve_contains(&a, p));
                }
                for p in &b2.lift()[..3] {
                    assert!(crate::fine_graph::curve_contains(&b, p));
                }
            }
            FarWitness::NotFar => panic!("point is off c"),
        }
        let through = TorusCurve::geodesic(1, 1, RatPoint::origin());
        assert_eq!(far_witness(&a, &b, &through).unwrap(), FarWitness::NotFar);
    }
}
