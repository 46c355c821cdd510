//! Cutting the torus along a curve, unicorn paths between arcs of the cut
//! annulus, and chains of bouquet moves between transverse edges.
//!
//! The cut is realised by an explicit PL chart. An integral unimodular map
//! sends the class of `a` to `(1,0)` and makes its lift the graph of a
//! periodic function `f`; the shear `(x, y) -> (x, y - f(x))` then turns `a`
//! into the horizontal circle `y = 0`. The torus minus `a` is the open
//! annulus `R/Z x (0,1)` of the chart, and the cut point `x` becomes the
//! marked points `p = (0,0)` and `q = (0,1)`.

mod chain;
mod unicorn;

pub use chain::{bouquet_chain, verify_chain, BouquetMove, ChainCertificate, ChainError, ChainViolation};
pub use unicorn::{unicorn_arcs, unicorn_path, UnicornError, UnicornPath};

use serde::Serialize;

use crate::fine_graph::{is_vertex, position_on};
use crate::geom::RatPoint;
use crate::rat::Rat;
use crate::surfaces::{reduce_torus, simplify_open, AnnulusArc, CurveError, SurfaceModel, TorusCurve};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CutError {
    #[error("the point does not lie on the curve")]
    PointNotOnCurve,
    #[error("the cut curve is not a vertex")]
    NotAVertex,
    #[error("no shear makes the curve a graph")]
    NotMonotone,
    #[error("the curve does not cross the cut exactly once at the marked point")]
    NotOnceCrossing,
    #[error("chart image is not a valid curve: {0}")]
    Curve(#[from] CurveError),
}

/// Integer 2x2 matrix, row major.
pub type Mat2 = [[i64; 2]; 2];

pub fn mat_apply(m: &Mat2, p: &RatPoint) -> RatPoint {
    let x = &(&p.x * &Rat::int(m[0][0])) + &(&p.y * &Rat::int(m[0][1]));
    let y = &(&p.x * &Rat::int(m[1][0])) + &(&p.y * &Rat::int(m[1][1]));
    RatPoint::new(x, y)
}

pub fn mat_apply_int(m: &Mat2, v: (i64, i64)) -> (i64, i64) {
    (m[0][0] * v.0 + m[0][1] * v.1, m[1][0] * v.0 + m[1][1] * v.1)
}

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn mat_det(m: &Mat2) -> i64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// Inverse of a matrix with determinant `±1`.
pub fn mat_inv(m: &Mat2) -> Mat2 {
    let d = mat_det(m);
    [[d * m[1][1], -d * m[0][1]], [-d * m[1][0], d * m[0][0]]]
}

/// `(g, u, v)` with `u a + v b = g = gcd(a, b) >= 0`.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        return if a >= 0 { (a, 1, 0) } else { (-a, -1, 0) };
    }
    let (g, u, v) = ext_gcd(b, a.rem_euclid(b));
    (g, v, u - a.div_euclid(b) * v)
}

/// The torus cut open along `base` at `x`.
#[derive(Clone, Debug, Serialize)]
pub struct CutSurface {
    pub base: TorusCurve,
    /// Cut point, reduced into `[0,1)^2`.
    pub x: RatPoint,
    pub model: SurfaceModel,
    /// Marked point on the lower boundary circle.
    pub p: RatPoint,
    /// Marked point on the upper boundary circle.
    pub q: RatPoint,
    /// Chart is `z -> shear(linear z + shift)`.
    pub linear: Mat2,
    pub shift: RatPoint,
    /// Graph of `f` on `[0,1]`, strictly increasing in `x`, from `(0,0)`
    /// to `(1,0)`.
    pub graph: Vec<RatPoint>,
}

/// Cut the torus along `a` at the point `x` of `a`.
pub fn cut_along(a: &TorusCurve, x: &RatPoint) -> Result<CutSurface, CutError> {
    if !is_vertex(a) {
        return Err(CutError::NotAVertex);
    }
    let (i, s) = position_on(a, x).ok_or(CutError::PointNotOnCurve)?;
    let (p, q) = a.homology();
    let (_, u, v) = ext_gcd(p, q);
    let base: Mat2 = [[u, v], [-q, p]];
    let ar = a.rebased(i, &s);
    let img: Vec<RatPoint> = ar.lift().iter().map(|z| mat_apply(&base, z)).collect();
    // Shear [[1,n],[0,1]] so that every segment moves right.
    let mut lo = i64::MIN;
    let mut hi = i64::MAX;
    for w in img.windows(2) {
        let d = &w[1] - &w[0];
        match d.y.signum() {
            0 => {
                if d.x.signum() <= 0 {
                    return Err(CutError::NotMonotone);
                }
            }
            1 => lo = lo.max((-&d.x / &d.y).floor_i64() + 1),
            _ => hi = hi.min((-&d.x / &d.y).ceil_i64() - 1),
        }
    }
    if lo > hi {
        return Err(CutError::NotMonotone);
    }
    let n = if lo > 0 { lo } else if hi < 0 { hi } else { 0 };
    let linear = mat_mul(&[[1, n], [0, 1]], &base);
    let shift = -&mat_apply(&linear, &ar.lift()[0]);
    let graph: Vec<RatPoint> = ar.lift().iter().map(|z| &mat_apply(&linear, z) + &shift).collect();
    debug_assert_eq!(graph[graph.len() - 1], RatPoint::ints(1, 0));
    Ok(CutSurface {
        base: a.clone(),
        x: reduce_torus(x),
        model: SurfaceModel::CompactAnnulus,
        p: RatPoint::ints(0, 0),
        q: RatPoint::ints(0, 1),
        linear,
        shift,
        graph: simplify_open(&graph),
    })
}

impl CutSurface {
    /// `f(t)` for any real `t`, extended with period 1.
    pub fn f(&self, t: &Rat) -> Rat {
        let tf = t.fract();
        let k = self.graph.partition_point(|g| g.x <= tf).clamp(1, self.graph.len() - 1);
        let (a, b) = (&self.graph[k - 1], &self.graph[k]);
        &a.y + &((&tf - &a.x) * (&b.y - &a.y) / (&b.x - &a.x))
    }

    /// Insert vertices where the path crosses the verticals `x = g + j`
    /// through the breakpoints of `f`.
    fn subdivide(&self, pts: &[RatPoint]) -> Vec<RatPoint> {
        let mut out = vec![pts[0].clone()];
        for w in pts.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            if a.x != b.x {
                let (l, r) = if a.x < b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
                let mut cuts = Vec::new();
                for g in &self.graph[..self.graph.len() - 1] {
                    let j0 = (l - &g.x).floor_i64() + 1;
                    let j1 = (r - &g.x).ceil_i64() - 1;
                    for j in j0..=j1 {
                        cuts.push(&g.x + &Rat::int(j));
                    }
                }
                cuts.sort();
                if a.x > b.x {
                    cuts.reverse();
                }
                for c in cuts {
                    let t = (&c - &a.x) / (&b.x - &a.x);
                    out.push(a.lerp(b, &t));
                }
            }
            out.push(b.clone());
        }
        out
    }

    fn forward_lift(&self, pts: &[RatPoint]) -> Vec<RatPoint> {
        let w: Vec<RatPoint> = pts.iter().map(|z| &mat_apply(&self.linear, z) + &self.shift).collect();
        self.subdivide(&w)
            .into_iter()
            .map(|p| {
                let y = &p.y - &self.f(&p.x);
                RatPoint::new(p.x, y)
            })
            .collect()
    }

    fn inverse_lift(&self, pts: &[RatPoint]) -> Vec<RatPoint> {
        let inv = mat_inv(&self.linear);
        self.subdivide(pts)
            .into_iter()
            .map(|p| {
                let y = &p.y + &self.f(&p.x);
                mat_apply(&inv, &(&RatPoint::new(p.x, y) - &self.shift))
            })
            .collect()
    }

    /// Chart coordinates of a torus point, in `[0,1)^2`. Points of the base
    /// curve go to `y = 0`.
    pub fn to_chart(&self, z: &RatPoint) -> RatPoint {
        reduce_torus(&self.forward_lift(std::slice::from_ref(z))[0])
    }

    /// Torus point with the given chart coordinates, in `[0,1)^2`.
    pub fn from_chart(&self, u: &RatPoint) -> RatPoint {
        reduce_torus(&self.inverse_lift(std::slice::from_ref(u))[0])
    }

    /// Arc from `p` to `q` induced by a curve crossing the base once at `x`.
    pub fn arc_of(&self, c: &TorusCurve) -> Result<AnnulusArc, CutError> {
        let (i, s) = position_on(c, &self.x).ok_or(CutError::PointNotOnCurve)?;
        let mut cr = c.rebased(i, &s);
        let (_, n) = mat_apply_int(&self.linear, cr.homology());
        match n {
            1 => {}
            -1 => cr = cr.reversed(),
            _ => return Err(CutError::NotOnceCrossing),
        }
        let img = self.forward_lift(cr.lift());
        let o = &img[0];
        let (ox, oy) = (o.x.to_i64().expect("lift of x"), o.y.to_i64().expect("lift of x"));
        let pts: Vec<RatPoint> = img.iter().map(|p| p.shifted(-ox, -oy)).collect();
        AnnulusArc::compact(simplify_open(&pts)).map_err(|_| CutError::NotOnceCrossing)
    }

    /// Closed curve obtained by gluing the ends of an arc from `p` to `q`.
    pub fn curve_of(&self, arc: &AnnulusArc) -> Result<TorusCurve, CutError> {
        let mut pts = arc.lift().to_vec();
        if pts[0].y == 1 {
            pts.reverse();
        }
        if !pts[0].x.is_integer() || !pts[pts.len() - 1].x.is_integer() {
            return Err(CutError::NotOnceCrossing);
        }
        let lift = simplify_open(&self.inverse_lift(&pts));
        Ok(TorusCurve::new(lift)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves_ops::intersect_torus;
    use crate::fine_graph::curve_contains;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn zig() -> TorusCurve {
        TorusCurve::new(vec![
            RatPoint::ints(0, 0),
            RatPoint::frac(1, 3, 1, 4),
            RatPoint::frac(2, 3, -1, 5),
            RatPoint::ints(1, 1),
        ])
        .unwrap()
    }

    #[test]
    fn ext_gcd_identity() {
        for (a, b) in [(1, 0), (0, 1), (3, 5), (-2, 7), (4, -1), (-3, -8)] {
            let (g, u, v) = ext_gcd(a, b);
            assert_eq!(u * a + v * b, g);
            assert_eq!(g, Rat::gcd_i64(a, b).abs());
        }
    }

    #[test]
    fn cut_horizontal() {
        let a = TorusCurve::horizontal(Rat::zero());
        let s = cut_along(&a, &RatPoint::origin()).unwrap();
        assert_eq!(s.p, RatPoint::ints(0, 0));
        assert_eq!(s.q, RatPoint::ints(0, 1));
        assert_eq!(s.to_chart(&RatPoint::frac(1, 3, 0, 1)).y, Rat::zero());
        let v = TorusCurve::vertical(Rat::zero());
        let arc = s.arc_of(&v).unwrap();
        assert_eq!(arc.lift(), &[RatPoint::ints(0, 0), RatPoint::ints(0, 1)]);
        assert!(s.curve_of(&arc).unwrap().same_image(&v));
    }

    #[test]
    fn point_not_on_curve() {
        let a = TorusCurve::horizontal(Rat::zero());
        assert_eq!(cut_along(&a, &RatPoint::frac(0, 1, 1, 2)).unwrap_err(), CutError::PointNotOnCurve);
    }

    #[test]
    fn zigzag_chart_round_trip() {
        let a = zig();
        let x = RatPoint::frac(1, 3, 1, 4);
        let s = cut_along(&a, &x).unwrap();
        for v in a.lift() {
            assert_eq!(s.to_chart(v).y, Rat::zero());
        }
        assert_eq!(s.to_chart(&x), RatPoint::origin());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut n = 0;
        while n < 100 {
            let z = RatPoint::frac(rng.gen_range(0..997), 997, rng.gen_range(0..991), 991);
            if curve_contains(&a, &z) {
                continue;
            }
            let u = s.to_chart(&z);
            assert!(u.y.signum() > 0);
            assert_eq!(s.from_chart(&u), z);
            n += 1;
        }
    }

    #[test]
    fn crossing_curves_become_arcs() {
        let a = zig();
        let x = RatPoint::frac(1, 3, 1, 4);
        let s = cut_along(&a, &x).unwrap();
        // Through x with class (0,1) or (1,2): algebraic intersection 1 with (1,1).
        for (dx, dy) in [(0, 1), (1, 2), (-1, 0)] {
            let c = TorusCurve::new(vec![x.clone(), x.shifted(dx, dy)]).unwrap();
            if intersect_torus(&a, &c).points.len() != 1 {
                continue;
            }
            let arc = s.arc_of(&c).unwrap();
            assert!(arc.is_simple());
            let back = s.curve_of(&arc).unwrap();
            assert!(back.same_image(&c));
        }
        assert_eq!(s.arc_of(&a).unwrap_err(), CutError::NotOnceCrossing);
    }
}
