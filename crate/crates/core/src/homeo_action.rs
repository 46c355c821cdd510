//! Explicit torus homeomorphisms acting on curves, and a check that they
//! preserve edges, clique types and crossing points.

use serde::{Deserialize, Serialize};

use crate::arc_graphs::{mat_apply, mat_apply_int, mat_det, mat_mul, Mat2};
use crate::curves_ops::intersect_torus;
use crate::fine_graph::{clique_from_edges, edge_from_report, is_vertex, CliqueType, EdgeKind};
use crate::geom::RatPoint;
use crate::rat::Rat;
use crate::surfaces::{reduce_torus, simplify_open, CurveError, TorusCurve};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MapError {
    #[error("invalid map: {0}")]
    InvalidMap(&'static str),
    #[error("image is not a curve: {0}")]
    Curve(#[from] CurveError),
}

/// A PL map of the torus, affine on the triangles of the `n x n` grid of
/// the unit square cut by the diagonals of slope 1. It lifts to
/// `F(z + m) = F(z) + L m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlMap {
    pub n: u32,
    pub linear: Mat2,
    /// Images of the grid vertices `(i/n, j/n)`, `0 <= i, j <= n`, stored at
    /// `i + j (n+1)`.
    pub images: Vec<RatPoint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TorusMap {
    Linear { matrix: Mat2 },
    Translation { by: RatPoint },
    Pl(PlMap),
    /// `outer` after `inner`.
    Compose { outer: Box<TorusMap>, inner: Box<TorusMap> },
}

impl PlMap {
    pub fn new(n: u32, linear: Mat2, images: Vec<RatPoint>) -> Result<PlMap, MapError> {
        let m = PlMap { n, linear, images };
        m.validate()?;
        Ok(m)
    }

    /// The identity with every grid vertex moved by `moves(i, j)`, which is
    /// read modulo `n` in both indices.
    pub fn perturbed_identity(n: u32, moves: impl Fn(u32, u32) -> RatPoint) -> Result<PlMap, MapError> {
        let nn = Rat::int(n as i64);
        let mut images = Vec::new();
        for j in 0..=n {
            for i in 0..=n {
                let base = RatPoint::new(Rat::int(i as i64) / &nn, Rat::int(j as i64) / &nn);
                images.push(&base + &moves(i % n, j % n));
            }
        }
        PlMap::new(n, [[1, 0], [0, 1]], images)
    }

    fn v(&self, i: u32, j: u32) -> &RatPoint {
        &self.images[(i + j * (self.n + 1)) as usize]
    }

    fn triangles(&self) -> Vec<[&RatPoint; 3]> {
        let mut out = Vec::new();
        for j in 0..self.n {
            for i in 0..self.n {
                out.push([self.v(i, j), self.v(i + 1, j), self.v(i + 1, j + 1)]);
                out.push([self.v(i, j), self.v(i + 1, j + 1), self.v(i, j + 1)]);
            }
        }
        out
    }

    fn validate(&self) -> Result<(), MapError> {
        let n = self.n;
        if n == 0 || self.images.len() != ((n + 1) * (n + 1)) as usize {
            return Err(MapError::InvalidMap("grid size mismatch"));
        }
        let d = mat_det(&self.linear);
        if d.abs() != 1 {
            return Err(MapError::InvalidMap("linear part is not unimodular"));
        }
        let (c0, c1) = ((self.linear[0][0], self.linear[1][0]), (self.linear[0][1], self.linear[1][1]));
        for k in 0..=n {
            if *self.v(n, k) != self.v(0, k).shifted(c0.0, c0.1) || *self.v(k, n) != self.v(k, 0).shifted(c1.0, c1.1) {
                return Err(MapError::InvalidMap("vertex images are not periodic"));
            }
        }
        // Same orientation on every triangle and degree one.
        let mut total = Rat::zero();
        for [a, b, c] in self.triangles() {
            // Twice the signed area.
            let area = (b - a).cross(&(c - a));
            if area.signum() != d.signum() as i32 {
                return Err(MapError::InvalidMap("triangle images fold over"));
            }
            total = &total + &area;
        }
        if total != Rat::int(2 * d) {
            return Err(MapError::InvalidMap("map does not have degree one"));
        }
        Ok(())
    }

    pub fn apply_point(&self, z: &RatPoint) -> RatPoint {
        let n = self.n as i64;
        let nn = Rat::int(n);
        let zx = &z.x * &nn;
        let zy = &z.y * &nn;
        let (i, j) = (zx.floor_i64(), zy.floor_i64());
        let fx = &zx - &Rat::int(i);
        let fy = &zy - &Rat::int(j);
        let (i0, j0) = (i.rem_euclid(n) as u32, j.rem_euclid(n) as u32);
        let m = (i.div_euclid(n), j.div_euclid(n));
        let v00 = self.v(i0, j0);
        let v11 = self.v(i0 + 1, j0 + 1);
        let (ex, ey) = if fx >= fy {
            let v10 = self.v(i0 + 1, j0);
            (v10 - v00, v11 - v10)
        } else {
            let v01 = self.v(i0, j0 + 1);
            (v11 - v01, v01 - v00)
        };
        let img = &(v00 + &ex.scale(&fx)) + &ey.scale(&fy);
        let (dx, dy) = mat_apply_int(&self.linear, m);
        img.shifted(dx, dy)
    }

    /// Lift with vertices added where it crosses the triangulation.
    fn subdivide(&self, pts: &[RatPoint]) -> Vec<RatPoint> {
        let nn = Rat::int(self.n as i64);
        let mut out = vec![pts[0].clone()];
        for w in pts.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            let d = b - a;
            let mut ts: Vec<Rat> = Vec::new();
            // Lines u = k/n for u = x, y, x - y.
            let fams = [
                (&a.x * &nn, &d.x * &nn),
                (&a.y * &nn, &d.y * &nn),
                (&(&a.x - &a.y) * &nn, &(&d.x - &d.y) * &nn),
            ];
            for (u0, du) in fams {
                if du.is_zero() {
                    continue;
                }
                let u1 = &u0 + &du;
                let (lo, hi) = if u0 < u1 { (&u0, &u1) } else { (&u1, &u0) };
                for k in lo.floor_i64() + 1..=hi.ceil_i64() - 1 {
                    ts.push((&Rat::int(k) - &u0) / &du);
                }
            }
            ts.sort();
            ts.dedup();
            for t in ts {
                out.push(a.lerp(b, &t));
            }
            out.push(b.clone());
        }
        out
    }
}

impl TorusMap {
    pub fn linear(matrix: Mat2) -> Result<TorusMap, MapError> {
        if mat_det(&matrix).abs() != 1 {
            return Err(MapError::InvalidMap("linear part is not unimodular"));
        }
        Ok(TorusMap::Linear { matrix })
    }

    /// Checks the invariants of a map read from outside.
    pub fn validate(&self) -> Result<(), MapError> {
        match self {
            TorusMap::Linear { matrix } => TorusMap::linear(*matrix).map(|_| ()),
            TorusMap::Translation { .. } => Ok(()),
            TorusMap::Pl(m) => m.validate(),
            TorusMap::Compose { outer, inner } => {
                outer.validate()?;
                inner.validate()
            }
        }
    }

    /// Image of a lift point.
    pub fn apply_lift_point(&self, z: &RatPoint) -> RatPoint {
        match self {
            TorusMap::Linear { matrix } => mat_apply(matrix, z),
            TorusMap::Translation { by } => z + by,
            TorusMap::Pl(m) => m.apply_point(z),
            TorusMap::Compose { outer, inner } => outer.apply_lift_point(&inner.apply_lift_point(z)),
        }
    }

    /// Image of a torus point, reduced into `[0,1)^2`.
    pub fn apply_point(&self, z: &RatPoint) -> RatPoint {
        reduce_torus(&self.apply_lift_point(z))
    }

    fn apply_lift(&self, pts: &[RatPoint]) -> Vec<RatPoint> {
        match self {
            TorusMap::Pl(m) => m.subdivide(pts).iter().map(|z| m.apply_point(z)).collect(),
            TorusMap::Compose { outer, inner } => outer.apply_lift(&inner.apply_lift(pts)),
            _ => pts.iter().map(|z| self.apply_lift_point(z)).collect(),
        }
    }

    /// Image of a curve. Its lift is the image of the lift of `c`, with the
    /// vertices a PL map needs.
    pub fn apply(&self, c: &TorusCurve) -> Result<TorusCurve, MapError> {
        self.validate()?;
        Ok(TorusCurve::new(simplify_open(&self.apply_lift(c.lift())))?)
    }
}

/// `f` after `g`, merged when both are linear or both translations.
pub fn compose(f: &TorusMap, g: &TorusMap) -> TorusMap {
    match (f, g) {
        (TorusMap::Linear { matrix: a }, TorusMap::Linear { matrix: b }) => TorusMap::Linear { matrix: mat_mul(a, b) },
        (TorusMap::Translation { by: a }, TorusMap::Translation { by: b }) => TorusMap::Translation { by: a + b },
        _ => TorusMap::Compose { outer: Box::new(f.clone()), inner: Box::new(g.clone()) },
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum AutViolation {
    NotAVertex { curve: usize },
    EdgeTag { pair: (usize, usize) },
    Point { pair: (usize, usize) },
    CliqueType { triple: (usize, usize, usize) },
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AutReport {
    pub curves: usize,
    pub pairs: usize,
    pub triples: usize,
    pub violations: Vec<AutViolation>,
}

fn tag(e: &EdgeKind) -> u8 {
    match e {
        EdgeKind::NonEdge => 0,
        EdgeKind::DisjointEdge => 1,
        EdgeKind::TransverseEdge(_) => 2,
    }
}

/// Compares the graph structure on `universe` with that on its image.
pub fn check_automorphism(f: &TorusMap, universe: &[TorusCurve]) -> Result<AutReport, MapError> {
    let images: Vec<TorusCurve> = universe.iter().map(|c| f.apply(c)).collect::<Result<_, _>>()?;
    let n = universe.len();
    let mut rep = AutReport { curves: n, ..AutReport::default() };
    for (i, c) in images.iter().enumerate() {
        if !is_vertex(c) {
            rep.violations.push(AutViolation::NotAVertex { curve: i });
        }
    }
    let mut before = vec![vec![EdgeKind::NonEdge; n]; n];
    let mut after = vec![vec![EdgeKind::NonEdge; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            rep.pairs += 1;
            let e0 = edge_from_report(&intersect_torus(&universe[i], &universe[j]));
            let e1 = edge_from_report(&intersect_torus(&images[i], &images[j]));
            if tag(&e0) != tag(&e1) {
                rep.violations.push(AutViolation::EdgeTag { pair: (i, j) });
            } else if let (EdgeKind::TransverseEdge(p), EdgeKind::TransverseEdge(q)) = (&e0, &e1) {
                if f.apply_point(p) != *q {
                    rep.violations.push(AutViolation::Point { pair: (i, j) });
                }
            }
            before[i][j] = e0;
            after[i][j] = e1;
        }
    }
    let kind = |m: &Vec<Vec<EdgeKind>>, i: usize, j: usize, k: usize| -> Option<CliqueType> {
        clique_from_edges(&m[i][j], &m[i][k], &m[j][k]).ok().map(|r| r.clique_type)
    };
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                rep.triples += 1;
                if kind(&before, i, j, k) != kind(&after, i, j, k) {
                    rep.violations.push(AutViolation::CliqueType { triple: (i, j, k) });
                }
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surfaces::homology_class;

    fn wobble() -> PlMap {
        PlMap::perturbed_identity(3, |i, j| RatPoint::frac(((i + 2 * j) % 3) as i64 - 1, 17, ((2 * i + j) % 3) as i64 - 1, 19))
            .unwrap()
    }

    fn universe() -> Vec<TorusCurve> {
        let mut v = Vec::new();
        for (p, q) in [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2)] {
            for s in [RatPoint::origin(), RatPoint::frac(1, 3, 1, 5)] {
                v.push(TorusCurve::geodesic(p, q, s));
            }
        }
        v
    }

    #[test]
    fn linear_action_on_homology() {
        let f = TorusMap::linear([[1, 1], [0, 1]]).unwrap();
        let c = f.apply(&TorusCurve::vertical(Rat::zero())).unwrap();
        assert_eq!(homology_class(&c), (1, 1));
        assert!(TorusMap::linear([[2, 0], [0, 1]]).is_err());
    }

    #[test]
    fn translation_keeps_horizontal() {
        let f = TorusMap::Translation { by: RatPoint::frac(1, 3, 0, 1) };
        let h = TorusCurve::horizontal(Rat::new(1, 2));
        let c = f.apply(&h).unwrap();
        assert!(c.same_image(&h));
        assert_eq!(homology_class(&c), (1, 0));
    }

    #[test]
    fn pl_map_keeps_class() {
        let f = TorusMap::Pl(wobble());
        let g = TorusCurve::geodesic(2, 1, RatPoint::frac(1, 7, 0, 1));
        let c = f.apply(&g).unwrap();
        assert!(c.is_simple());
        assert_eq!(homology_class(&c), (2, 1));
        assert!(c.n_segments() > 1);
    }

    #[test]
    fn folding_map_is_rejected() {
        // Moving one vertex across the opposite side folds a triangle.
        let bad = PlMap::perturbed_identity(2, |i, j| if (i, j) == (1, 1) { RatPoint::frac(3, 4, 0, 1) } else { RatPoint::origin() });
        assert!(matches!(bad, Err(MapError::InvalidMap(_))));
    }

    #[test]
    fn functoriality() {
        let s = TorusMap::linear([[0, -1], [1, 0]]).unwrap();
        let t = TorusMap::linear([[1, 1], [0, 1]]).unwrap();
        let c = TorusCurve::geodesic(1, 2, RatPoint::frac(1, 5, 0, 1));
        assert_eq!(compose(&s, &t).apply(&c).unwrap(), s.apply(&t.apply(&c).unwrap()).unwrap());
        let w = TorusMap::Pl(wobble());
        let lhs = compose(&w, &s).apply(&c).unwrap();
        let rhs = w.apply(&s.apply(&c).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn automorphism_checks() {
        let u = universe();
        for f in [
            TorusMap::linear([[0, -1], [1, 0]]).unwrap(),
            TorusMap::linear([[1, 1], [0, 1]]).unwrap(),
            TorusMap::Translation { by: RatPoint::frac(1, 4, 2, 7) },
            TorusMap::Pl(wobble()),
        ] {
            let r = check_automorphism(&f, &u).unwrap();
            assert!(r.violations.is_empty(), "{:?}", r.violations);
            assert_eq!(r.pairs, 66);
        }
    }

    #[test]
    fn json_round_trip() {
        let f = TorusMap::Pl(wobble());
        let s = serde_json::to_string(&f).unwrap();
        let g: TorusMap = serde_json::from_str(&s).unwrap();
        assert_eq!(f, g);
        assert!(s.contains("\"kind\":\"pl\""));
    }
}
