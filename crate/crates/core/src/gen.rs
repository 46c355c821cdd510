//! Seeded random instances for property checks and the suite.
//!
//! Every generator draws from a caller-owned `ChaCha8Rng`, so one seed fixes
//! a whole corpus. Generators that need a property (a clique type, a
//! crossing count) sample and reject; they give up with `None` after a
//! bounded number of tries.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
pub use rand_chacha::ChaCha8Rng;

use crate::arc_graphs::{mat_apply, Mat2};
use crate::curves_ops::{intersect_torus, non_generic, PointKind};
use crate::fine_graph::{classify_clique3, is_edge, is_vertex, CliqueType, EdgeKind};
use crate::geom::RatPoint;
use crate::homeo_action::PlMap;
use crate::rat::Rat;
use crate::surfaces::contacts::{contacts, is_simple, Lattice, PathView};
use crate::surfaces::{reduce_torus, AnnulusArc, TorusCurve};

const TRIES: usize = 400;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `k / den` with `k` uniform in `lo..=hi`.
pub fn rat(rng: &mut ChaCha8Rng, lo: i64, hi: i64, den: i64) -> Rat {
    Rat::new(rng.gen_range(lo..=hi), den)
}

fn unit_point(rng: &mut ChaCha8Rng, den: i64) -> RatPoint {
    RatPoint::new(rat(rng, 0, den - 1, den), rat(rng, 0, den - 1, den))
}

/// A product of up to three of `S`, `T`, `T^-1`.
pub fn random_sl2(rng: &mut ChaCha8Rng) -> Mat2 {
    let gens: [Mat2; 3] = [[[0, -1], [1, 0]], [[1, 1], [0, 1]], [[1, -1], [0, 1]]];
    let mut m: Mat2 = [[1, 0], [0, 1]];
    for _ in 0..rng.gen_range(0..=3) {
        m = crate::arc_graphs::mat_mul(&m, gens.choose(rng).unwrap());
    }
    m
}

/// `z -> m z + t` applied to a curve.
pub fn transform(c: &TorusCurve, m: &Mat2, t: &RatPoint) -> TorusCurve {
    let lift = c.lift().iter().map(|z| &mat_apply(m, z) + t).collect();
    TorusCurve::new(lift).expect("affine images stay valid")
}

/// One extra vertex near the middle of a random segment, displaced by a
/// small vector. The result may fail to be simple.
pub fn jitter(rng: &mut ChaCha8Rng, c: &TorusCurve) -> Option<TorusCurve> {
    let i = rng.gen_range(0..c.n_segments());
    let s = rat(rng, 3, 5, 8);
    let d = RatPoint::new(rat(rng, -2, 2, 64), rat(rng, -2, 2, 64));
    if d.is_zero() {
        return None;
    }
    let mut lift = c.lift().to_vec();
    let m = &c.point_at(i, &s) + &d;
    lift.insert(i + 1, m);
    TorusCurve::new(lift).ok().filter(|x| x.is_simple())
}

fn h(y: Rat) -> TorusCurve {
    TorusCurve::horizontal(y)
}

fn v(x: Rat) -> TorusCurve {
    TorusCurve::vertical(x)
}

fn distinct(rng: &mut ChaCha8Rng, k: usize, den: i64) -> Vec<Rat> {
    let mut vals: Vec<i64> = (0..den).collect();
    vals.shuffle(rng);
    vals[..k].iter().map(|&n| Rat::new(n, den)).collect()
}

fn base_clique(rng: &mut ChaCha8Rng, ty: CliqueType) -> Option<[TorusCurve; 3]> {
    let den = 32;
    Some(match ty {
        CliqueType::AllDisjoint => {
            let y = distinct(rng, 3, den);
            [h(y[0].clone()), h(y[1].clone()), h(y[2].clone())]
        }
        CliqueType::TwoPair => {
            let y = distinct(rng, 2, den);
            [h(y[0].clone()), v(rat(rng, 0, den - 1, den)), h(y[1].clone())]
        }
        CliqueType::Necklace => {
            let (x, y) = (rat(rng, 0, den - 1, den), rat(rng, 0, den - 1, den));
            let s = unit_point(rng, den);
            if (&s.y - &s.x - (&y - &x)).fract().is_zero() {
                return None;
            }
            [h(y), v(x), TorusCurve::geodesic(1, 1, s)]
        }
        CliqueType::Bouquet => {
            let p = unit_point(rng, den);
            let third = if rng.gen_bool(0.5) { (1, 1) } else { (1, -1) };
            [
                TorusCurve::geodesic(1, 0, p.clone()),
                TorusCurve::geodesic(0, 1, p.clone()),
                TorusCurve::geodesic(third.0, third.1, p),
            ]
        }
        CliqueType::OnePair => return None,
    })
}

/// A 3-clique of the given type: a base configuration moved by a random
/// unimodular map and translation, with random extra vertices.
pub fn clique3(rng: &mut ChaCha8Rng, ty: CliqueType) -> Option<[TorusCurve; 3]> {
    for _ in 0..TRIES {
        let Some(base) = base_clique(rng, ty) else {
            if ty == CliqueType::OnePair {
                return None;
            }
            continue;
        };
        let m = random_sl2(rng);
        let t = unit_point(rng, 64);
        let mut abc = base.map(|c| transform(&c, &m, &t));
        for c in abc.iter_mut() {
            if rng.gen_bool(0.4) {
                if let Some(j) = jitter(rng, c) {
                    *c = j;
                }
            }
        }
        let [a, b, c] = &abc;
        if classify_clique3(a, b, c).is_ok_and(|r| r.clique_type == ty) {
            return Some(abc);
        }
    }
    None
}

/// Attempted `(1,0,0)` clique: `a, b` crossing once and `c` a curve
/// disjoint from `a`. Returned for realizability checks.
pub fn one_pair_attempt(rng: &mut ChaCha8Rng) -> [TorusCurve; 3] {
    let y = distinct(rng, 2, 32);
    let m = random_sl2(rng);
    let t = unit_point(rng, 64);
    let a = h(y[0].clone());
    let b = v(rat(rng, 0, 31, 32));
    let mut c = h(y[1].clone());
    if let Some(j) = jitter(rng, &c) {
        if intersect_torus(&a, &j).is_empty() {
            c = j;
        }
    }
    [a, b, c].map(|x| transform(&x, &m, &t))
}

/// A curve `d` with `{a, b, c, d}` a 4-clique: a translate of one of the
/// three curves, sometimes moved onto the crossing of the other two, then
/// possibly given an extra vertex.
pub fn four_clique_completion(rng: &mut ChaCha8Rng, abc: &[TorusCurve; 3]) -> Option<TorusCurve> {
    for _ in 0..TRIES {
        let k = rng.gen_range(0..3);
        let base = &abc[k];
        let shift = if rng.gen_bool(0.3) {
            let (i, j) = [(1, 2), (0, 2), (0, 1)][k];
            match is_edge(&abc[i], &abc[j]) {
                Ok(EdgeKind::TransverseEdge(p)) => &p - &base.lift()[0],
                _ => continue,
            }
        } else {
            RatPoint::new(rat(rng, -15, 15, 32), rat(rng, -15, 15, 32))
        };
        let mut d = base.translated(&shift);
        if rng.gen_bool(0.3) {
            if let Some(j) = jitter(rng, &d) {
                d = j;
            }
        }
        let ok = abc.iter().all(|x| !x.same_image(&d) && matches!(is_edge(x, &d), Ok(EdgeKind::DisjointEdge | EdgeKind::TransverseEdge(_))));
        if ok {
            return Some(d);
        }
    }
    None
}

/// Vertex curves in general position with `abc` and with each other.
pub fn alpha_curves(rng: &mut ChaCha8Rng, abc: &[TorusCurve; 3], k: usize) -> Vec<TorusCurve> {
    let classes = [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2)];
    let mut out: Vec<TorusCurve> = Vec::new();
    let mut tries = 0;
    while out.len() < k && tries < TRIES {
        tries += 1;
        let (p, q) = *classes.choose(rng).unwrap();
        let mut c = TorusCurve::geodesic(p, q, unit_point(rng, 64));
        if rng.gen_bool(0.5) {
            match jitter(rng, &c) {
                Some(j) => c = j,
                None => continue,
            }
        }
        let mut all: Vec<TorusCurve> = abc.to_vec();
        all.extend(out.iter().cloned());
        all.push(c.clone());
        // Only the new curve is judged: a bouquet's own triple point is fine.
        if is_vertex(&c) && !non_generic(&all).contains(&(all.len() - 1)) {
            out.push(c);
        }
    }
    out
}

/// A y-monotone arc of the compact annulus.
pub fn annulus_arc(rng: &mut ChaCha8Rng) -> AnnulusArc {
    let k = rng.gen_range(0..=3);
    let mut ys = distinct(rng, k, 16);
    ys.retain(|y| !y.is_zero());
    ys.sort();
    let mut pts = vec![RatPoint::new(rat(rng, -32, 32, 16), Rat::zero())];
    for y in ys {
        pts.push(RatPoint::new(rat(rng, -48, 48, 16), y));
    }
    pts.push(RatPoint::new(rat(rng, -32, 32, 16), Rat::one()));
    AnnulusArc::compact(pts).expect("monotone arcs are proper")
}

/// x-coordinate of an upward y-monotone lift at height `y`.
fn x_at(pts: &[RatPoint], y: &Rat) -> Rat {
    let k = pts.partition_point(|p| p.y <= *y).clamp(1, pts.len() - 1);
    let (a, b) = (&pts[k - 1], &pts[k]);
    &a.x + &((y - &a.y) * (&b.x - &a.x) / (&b.y - &a.y))
}

/// A random arc disjoint from the y-monotone arc `a`: `a` moved right by a
/// varying amount strictly between 0 and 1.
pub fn neighbor(rng: &mut ChaCha8Rng, a: &AnnulusArc) -> AnnulusArc {
    let mut pts = a.lift().to_vec();
    if pts[0].y == 1 {
        pts.reverse();
    }
    let mut ys: Vec<Rat> = pts.iter().map(|p| p.y.clone()).collect();
    ys.extend(distinct(rng, 2, 16).into_iter().filter(|y| !y.is_zero()));
    ys.sort();
    ys.dedup();
    let out: Vec<RatPoint> = ys
        .iter()
        .map(|y| RatPoint::new(&x_at(&pts, y) + &rat(rng, 1, 15, 16), y.clone()))
        .collect();
    AnnulusArc::compact(crate::surfaces::simplify_open(&out)).expect("shifted monotone arcs are proper")
}

/// A transverse pair `(a, b)` and `(a, c)` crossing at one point `x`, with
/// `b` and `c` in general position elsewhere.
pub fn bouquet_triple(rng: &mut ChaCha8Rng) -> Option<[TorusCurve; 3]> {
    for _ in 0..TRIES {
        let a = TorusCurve::new(vec![
            RatPoint::ints(0, 0),
            RatPoint::new(rat(rng, 6, 10, 16), rat(rng, -2, 2, 64)),
            RatPoint::ints(1, 0),
        ])
        .ok()?;
        let mut cross = || -> Option<TorusCurve> {
            let m = rng.gen_range(-2..=2);
            let k = rng.gen_range(1..=3);
            let mut ys = distinct(rng, k, 8);
            ys.retain(|y| !y.is_zero());
            ys.sort();
            let mut lift = vec![RatPoint::origin()];
            for y in ys {
                lift.push(RatPoint::new(rat(rng, -40, 40, 16), y));
            }
            lift.push(RatPoint::ints(m, 1));
            TorusCurve::new(lift).ok()
        };
        let (Some(b), Some(c)) = (cross(), cross()) else {
            continue;
        };
        let x = RatPoint::origin();
        let through = |u: &TorusCurve| is_edge(&a, u) == Ok(EdgeKind::TransverseEdge(x.clone()));
        if !through(&b) || !through(&c) || b.same_image(&c) {
            continue;
        }
        let r = intersect_torus(&b, &c);
        if !r.overlaps.is_empty() || r.points.iter().any(|p| p.kind != PointKind::Transverse) {
            continue;
        }
        let m = random_sl2(rng);
        let t = unit_point(rng, 64);
        return Some([a, b, c].map(|u| transform(&u, &m, &t)));
    }
    None
}

/// Arcs `g1` from `(0,0)` to `(0,1)` and `g2` from `(0,0)` to `(n+1, 1)`
/// with exactly `n` interior crossings.
pub fn unicorn_pair(rng: &mut ChaCha8Rng, n: i64) -> Option<(AnnulusArc, AnnulusArc)> {
    for _ in 0..TRIES {
        let g1 = AnnulusArc::compact(vec![
            RatPoint::ints(0, 0),
            RatPoint::new(rat(rng, -3, 3, 64), Rat::new(1, 3)),
            RatPoint::new(rat(rng, -3, 3, 64), Rat::new(2, 3)),
            RatPoint::ints(0, 1),
        ])
        .ok()?;
        let w = n + 1;
        let g2 = AnnulusArc::compact(vec![
            RatPoint::ints(0, 0),
            RatPoint::new(&Rat::new(w, 3) + &rat(rng, -4, 4, 32), &Rat::new(1, 3) + &rat(rng, -3, 3, 64)),
            RatPoint::new(&Rat::new(2 * w, 3) + &rat(rng, -4, 4, 32), &Rat::new(2, 3) + &rat(rng, -3, 3, 64)),
            RatPoint::ints(w, 1),
        ])
        .ok()?;
        let r = crate::curves_ops::intersect_curves(&g1, &g2).ok()?;
        let generic = r.overlaps.is_empty() && r.points.iter().all(|p| p.kind != PointKind::Touching);
        if generic && r.interior_count() == n as usize && g2.is_simple() && g1.is_simple() {
            return Some((g1, g2));
        }
    }
    None
}

/// Three arc lifts from `p` to lifts of `q`, pairwise meeting only at
/// their ends on the torus.
pub fn arc_triple(rng: &mut ChaCha8Rng) -> Option<[Vec<RatPoint>; 3]> {
    let ends = [(0, 0), (1, 0), (0, 1), (1, 1)];
    for _ in 0..TRIES {
        let p = unit_point(rng, 32);
        let q = &p + &RatPoint::new(rat(rng, 4, 12, 32), rat(rng, 4, 12, 32));
        let mut arcs: Vec<Vec<RatPoint>> = Vec::new();
        for _ in 0..3 {
            let (wx, wy) = *ends.choose(rng).unwrap();
            let end = q.shifted(wx, wy);
            let mid = &p.midpoint(&end) + &RatPoint::new(rat(rng, -12, 12, 32), rat(rng, -12, 12, 32));
            arcs.push(vec![p.clone(), mid, end]);
        }
        let simple = arcs.iter().all(|x| x[1] != x[0] && x[1] != x[2] && is_simple(PathView { pts: x, closed: false }, Lattice::Z2));
        if !simple {
            continue;
        }
        let ok = (0..3).all(|i| (i + 1..3).all(|j| ends_only(&arcs[i], &arcs[j], &p, &q)));
        if ok {
            return Some([arcs[0].clone(), arcs[1].clone(), arcs[2].clone()]);
        }
    }
    None
}

fn ends_only(x: &[RatPoint], y: &[RatPoint], p: &RatPoint, q: &RatPoint) -> bool {
    let c = contacts(PathView { pts: x, closed: false }, PathView { pts: y, closed: false }, Lattice::Z2);
    let at_end = |path: &[RatPoint], i: usize, s: &Rat| (i == 0 && s.is_zero()) || (i + 2 == path.len() && *s == 1);
    c.overlaps.is_empty()
        && c.points.iter().all(|k| {
            let loc = reduce_torus(&k.at);
            (loc == reduce_torus(p) || loc == reduce_torus(q)) && at_end(x, k.i, &k.s) && at_end(y, k.j, &k.t)
        })
}

/// Curves of small classes through random points and a few shared hubs,
/// some with an extra vertex.
pub fn universe(rng: &mut ChaCha8Rng, n: usize) -> Vec<TorusCurve> {
    let classes = [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2)];
    let hubs: Vec<RatPoint> = (0..3).map(|_| unit_point(rng, 32)).collect();
    let mut out: Vec<TorusCurve> = Vec::new();
    while out.len() < n {
        let (p, q) = *classes.choose(rng).unwrap();
        let start = if rng.gen_bool(0.4) { hubs.choose(rng).unwrap().clone() } else { unit_point(rng, 64) };
        let mut c = TorusCurve::geodesic(p, q, start);
        if rng.gen_bool(0.3) {
            match jitter(rng, &c) {
                Some(j) => c = j,
                None => continue,
            }
        }
        if is_vertex(&c) && !out.iter().any(|x| x.same_image(&c)) {
            out.push(c);
        }
    }
    out
}

/// A perturbation of the identity on a grid of size 2 to 4.
pub fn pl_map(rng: &mut ChaCha8Rng) -> PlMap {
    loop {
        let n = rng.gen_range(2..=4u32);
        let den = 16 * n as i64;
        let moves: Vec<RatPoint> = (0..n * n).map(|_| RatPoint::new(rat(rng, -3, 3, den), rat(rng, -3, 3, den))).collect();
        if let Ok(m) = PlMap::perturbed_identity(n, |i, j| moves[(i + j * n) as usize].clone()) {
            return m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cliques_have_requested_types() {
        let mut r = rng(1);
        for ty in [CliqueType::AllDisjoint, CliqueType::TwoPair, CliqueType::Necklace, CliqueType::Bouquet] {
            let [a, b, c] = clique3(&mut r, ty).unwrap();
            assert_eq!(classify_clique3(&a, &b, &c).unwrap().clique_type, ty);
        }
        assert!(clique3(&mut r, CliqueType::OnePair).is_none());
    }

    #[test]
    fn same_seed_same_corpus() {
        let a = universe(&mut rng(5), 10);
        let b = universe(&mut rng(5), 10);
        assert_eq!(a, b);
    }

    #[test]
    fn neighbors_are_disjoint() {
        let mut r = rng(2);
        for _ in 0..20 {
            let a = annulus_arc(&mut r);
            let n = neighbor(&mut r, &a);
            assert!(crate::surfaces::lift_translates_hit(&a, &n).unwrap().is_empty());
        }
    }

    #[test]
    fn generators_succeed() {
        let mut r = rng(3);
        assert!(bouquet_triple(&mut r).is_some());
        assert!(unicorn_pair(&mut r, 7).is_some());
        assert!(arc_triple(&mut r).is_some());
        let abc = clique3(&mut r, CliqueType::Necklace).unwrap();
        assert!(four_clique_completion(&mut r, &abc).is_some());
        assert_eq!(alpha_curves(&mut r, &abc, 3).len(), 3);
        pl_map(&mut r);
    }
}
