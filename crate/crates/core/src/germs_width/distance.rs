//! Explicit shortest paths in the graph of arcs of an annulus.
//!
//! Given `a` and `b` with `K(a,b) = [m, M]`, a new arc is threaded through
//! the strip between `a~` and `T(a~)` avoiding `T^{1-m}(b~)` and
//! `T^{-M}(b~)`. The parts of those two lifts inside the strip cut off
//! bigons against `T(a~)` and `a~` respectively; the new arc meets every
//! translate in `[m, M-1]` and no other, so the width drops by one.

use crate::geom::RatPoint;
use crate::rat::Rat;
use crate::surfaces::cells::{CellComplex, Domain, Located, Step};
use crate::surfaces::contacts::{contacts, Lattice, PathView};
use crate::surfaces::{lift_translates_hit, AnnulusArc, DeckShift, SurfaceModel, WidthError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DistanceError {
    #[error(transparent)]
    Width(#[from] WidthError),
    #[error("relative width is infinite")]
    InfiniteWidth,
    #[error("no channel between the bigons (non-generic input)")]
    DegenerateBigon,
}

/// Arc lift running from the lower window edge to the upper one.
fn upward(a: &AnnulusArc, lo: &Rat, hi: &Rat) -> Vec<RatPoint> {
    let mut pts = a.windowed(lo, hi);
    if pts[0].y > pts[pts.len() - 1].y {
        pts.reverse();
    }
    pts
}

/// A value in `(lo, hi)` whose fractional part differs from all of `bad`.
fn generic_in(lo: &Rat, hi: &Rat, bad: &[Rat]) -> Rat {
    let mut den = 2;
    loop {
        for num in 1..den {
            if num % 2 == 0 && den > 2 {
                continue;
            }
            let x = lo + &((hi - lo) * Rat::new(num, den));
            let f = x.fract();
            if bad.iter().all(|b| *b != f) {
                return x;
            }
        }
        den *= 2;
    }
}

struct Channel {
    steps: Vec<Step>,
    start: usize,
    end: usize,
}

/// One compression step: an arc disjoint from `cur` whose translate set
/// against `b` is `k` with its top element removed.
fn compress(cur: &[RatPoint], b: &[RatPoint], m: i64, big_m: i64, lo: &Rat, hi: &Rat) -> Option<Vec<RatPoint>> {
    let t1 = DeckShift { k: 1 }.apply_path(cur);
    let sp = DeckShift { k: 1 - m }.apply_path(b);
    let sm = DeckShift { k: -big_m }.apply_path(b);
    let all = [cur, &t1[..], &sp[..], &sm[..]];
    let mut xmin = cur[0].x.clone();
    let mut xmax = cur[0].x.clone();
    for p in all.iter().flat_map(|v| v.iter()) {
        xmin = Rat::min(&xmin, &p.x);
        xmax = Rat::max(&xmax, &p.x);
    }
    let domain = Domain {
        x0: xmin - Rat::one(),
        x1: xmax + Rat::one(),
        y0: lo.clone(),
        y1: hi.clone(),
        wrap_x: false,
        wrap_y: false,
    };
    let views: Vec<PathView<'_>> = all.iter().map(|v| PathView { pts: v, closed: false }).collect();
    let cx = CellComplex::window(&views, domain).ok()?;
    let left = &cur[0].x;
    let right = left + &Rat::one();
    let top_cell = |c: usize| {
        let cell = &cx.cells[c];
        cell.idx == cx.slabs[cell.slab].pieces.len()
    };
    let mut best: Option<Channel> = None;
    for s in &cx.slabs {
        if !(s.xm > *left && s.xm < right) {
            continue;
        }
        let Some(steps) = cx.bfs(s.first_cell, &top_cell, &|p| p.crossing.is_none(), &|_| false) else {
            continue;
        };
        if best.as_ref().is_none_or(|b| steps.len() < b.steps.len()) {
            let end = *cx.walk_cells(s.first_cell, &steps).last().unwrap();
            best = Some(Channel { steps, start: s.first_cell, end });
        }
    }
    let ch = best?;
    let ends: Vec<Rat> = [cur, b]
        .iter()
        .flat_map(|v| [v[0].x.fract(), v[v.len() - 1].x.fract()])
        .collect();
    let sa = &cx.slabs[cx.cells[ch.start].slab];
    let sb = &cx.slabs[cx.cells[ch.end].slab];
    let x_start = generic_in(&sa.xl, &sa.xr, &ends);
    let x_end = generic_in(&sb.xl, &sb.xr, &ends);
    let start = Located { cell: ch.start, offset: (0, 0), dom: RatPoint::new(x_start, lo.clone()) };
    let end = RatPoint::new(x_end, hi.clone());
    let (pts, _) = cx.walk_polyline(&start, &ch.steps, Some(&end));
    let bad: Vec<Rat> = [cur, b]
        .iter()
        .flat_map(|v| v.iter().map(|p| p.x.fract()))
        .collect();
    Some(tighten(pts, &all, &bad))
}

fn clear(p: &RatPoint, q: &RatPoint, obstacles: &[&[RatPoint]]) -> bool {
    if p == q {
        return false;
    }
    let seg = [p.clone(), q.clone()];
    obstacles.iter().all(|o| {
        let c = contacts(PathView { pts: &seg, closed: false }, PathView { pts: o, closed: false }, Lattice::Trivial);
        c.points.is_empty() && c.overlaps.is_empty()
    })
}

/// Fewer and shorter vertices for a channel polyline: greedy shortcuts,
/// then each vertex moved to a coarse dyadic point where its two segments
/// stay clear. End points keep their height and a generic abscissa.
fn tighten(pts: Vec<RatPoint>, obstacles: &[&[RatPoint]], bad: &[Rat]) -> Vec<RatPoint> {
    let n = pts.len();
    let mut out = vec![pts[0].clone()];
    let mut i = 0;
    while i + 1 < n {
        let j = (i + 1..n).rev().find(|&j| clear(&pts[i], &pts[j], obstacles)).unwrap_or(i + 1);
        out.push(pts[j].clone());
        i = j;
    }
    let m = out.len();
    for k in 0..m {
        for bits in (2..=40).step_by(2) {
            let mut v = RatPoint::new(out[k].x.snap(bits), out[k].y.snap(bits));
            if k == 0 || k == m - 1 {
                v.y = out[k].y.clone();
                if bad.contains(&v.x.fract()) {
                    continue;
                }
            } else if v.y <= out[0].y || v.y >= out[m - 1].y {
                continue;
            }
            let ok_prev = k == 0 || clear(&out[k - 1], &v, obstacles);
            let ok_next = k == m - 1 || clear(&v, &out[k + 1], obstacles);
            if ok_prev && ok_next {
                out[k] = v;
                break;
            }
        }
    }
    out
}

/// Shortest path `a = v_0, ..., v_{w+1} = b` in the graph of arcs where
/// edges join disjoint arcs, `w` the relative width.
pub fn distance_path(a: &AnnulusArc, b: &AnnulusArc) -> Result<Vec<AnnulusArc>, DistanceError> {
    if a.model != b.model {
        return Err(WidthError::ModelMismatch.into());
    }
    if !matches!(a.model, SurfaceModel::CompactAnnulus | SurfaceModel::OpenAnnulus) {
        return Err(WidthError::Unsupported.into());
    }
    if a == b {
        return Ok(vec![a.clone()]);
    }
    let mut path = vec![a.clone()];
    let mut cur = a.clone();
    loop {
        let k = lift_translates_hit(&cur, b)?;
        let (Some(&m), Some(&big_m)) = (k.first(), k.last()) else {
            break;
        };
        let (lo, hi) = match a.model {
            SurfaceModel::OpenAnnulus => AnnulusArc::window(&[&cur, b]),
            _ => (Rat::zero(), Rat::one()),
        };
        let cp = upward(&cur, &lo, &hi);
        let bp = upward(b, &lo, &hi);
        let next = compress(&cp, &bp, m, big_m, &lo, &hi)
            .and_then(|pts| AnnulusArc::new(a.model, pts).ok())
            .ok_or(DistanceError::DegenerateBigon)?;
        let mut expect = k.clone();
        expect.remove(&big_m);
        if lift_translates_hit(&next, b)? != expect || !lift_translates_hit(&next, &cur)?.is_empty() {
            return Err(DistanceError::DegenerateBigon);
        }
        path.push(next.clone());
        cur = next;
    }
    path.push(b.clone());
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germs_width::{relative_width, Width};

    fn winding(k: i64) -> AnnulusArc {
        AnnulusArc::compact(vec![RatPoint::frac(1, 3, 0, 1), RatPoint::frac(3 * k + 1, 3, 1, 1)]).unwrap()
    }

    fn check_path(a: &AnnulusArc, b: &AnnulusArc, w: u64) {
        let path = distance_path(a, b).unwrap();
        assert_eq!(path.len() as u64, w + 2);
        for (i, pair) in path.windows(2).enumerate() {
            assert!(lift_translates_hit(&pair[0], &pair[1]).unwrap().is_empty());
            assert_eq!(relative_width(&pair[0], b).unwrap().width, Width::Finite(w - i as u64));
        }
    }

    #[test]
    fn width_zero_is_one_step() {
        let a = AnnulusArc::vertical(Rat::new(1, 5));
        let b = AnnulusArc::vertical(Rat::new(3, 5));
        assert_eq!(distance_path(&a, &b).unwrap(), vec![a, b]);
    }

    #[test]
    fn winding_paths() {
        let a = AnnulusArc::vertical(Rat::new(1, 2));
        for k in [1, 2, 3, 5, 8, 10] {
            check_path(&a, &winding(k), k as u64);
        }
    }

    #[test]
    fn zigzag_pair() {
        let a = AnnulusArc::compact(vec![
            RatPoint::ints(0, 0),
            RatPoint::frac(5, 2, 1, 3),
            RatPoint::frac(-1, 2, 2, 3),
            RatPoint::ints(2, 1),
        ])
        .unwrap();
        let b = AnnulusArc::compact(vec![RatPoint::frac(1, 7, 0, 1), RatPoint::frac(-13, 7, 1, 1)]).unwrap();
        let w = match relative_width(&a, &b).unwrap().width {
            Width::Finite(w) => w,
            Width::Infinite => unreachable!(),
        };
        assert!(w >= 1);
        check_path(&a, &b, w);
    }

    #[test]
    fn open_annulus_path() {
        let a = AnnulusArc::new(SurfaceModel::OpenAnnulus, vec![RatPoint::ints(0, 0), RatPoint::ints(0, 1)]).unwrap();
        let b = AnnulusArc::new(
            SurfaceModel::OpenAnnulus,
            vec![RatPoint::frac(1, 2, -1, 1), RatPoint::frac(5, 2, 1, 1), RatPoint::frac(5, 2, 2, 1)],
        )
        .unwrap();
        check_path(&a, &b, 2);
    }
}

