//! Surface models, lifted curves and arcs, homology classes.

pub mod cells;
pub mod contacts;
pub mod faces;
pub mod width;

use serde::{Deserialize, Serialize};

use crate::geom::{RatPoint, Segment};
use crate::rat::Rat;

pub use contacts::{Contact, Contacts, Lattice, OverlapContact, PathView};
pub use faces::{complement_components, Face};
pub use width::{is_interval, lift_translates_hit, torus_translates_hit, WidthError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SurfaceModel {
    /// `R^2 / Z^2`.
    Torus,
    /// `(R/Z) x [0,1]`.
    CompactAnnulus,
    /// `(R/Z) x R`.
    OpenAnnulus,
    /// `R^2 \ {0}`.
    PuncturedPlane,
}

impl SurfaceModel {
    pub fn lattice(self) -> Lattice {
        match self {
            SurfaceModel::Torus => Lattice::Z2,
            SurfaceModel::CompactAnnulus | SurfaceModel::OpenAnnulus => Lattice::Horizontal,
            SurfaceModel::PuncturedPlane => Lattice::Trivial,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CurveError {
    #[error("a curve needs at least two points")]
    TooShort,
    #[error("consecutive points coincide at index {0}")]
    RepeatedPoint(usize),
    #[error("closing vector is not an integer vector")]
    NonIntegerClosure,
    #[error("arc endpoints must lie on the two boundary circles")]
    BadEndpoints,
    #[error("arc leaves the annulus or touches its boundary at an interior point")]
    NotProper,
    #[error("curve is not simple")]
    NotSimple,
}

/// A closed PL curve on the torus, stored as one lifted period
/// `v_0, ..., v_n` with `v_n = v_0 + (p, q)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct TorusCurve {
    lift: Vec<RatPoint>,
    homology: (i64, i64),
}

impl TorusCurve {
    pub fn new(lift: Vec<RatPoint>) -> Result<TorusCurve, CurveError> {
        if lift.len() < 2 {
            return Err(CurveError::TooShort);
        }
        if let Some(i) = lift.windows(2).position(|w| w[0] == w[1]) {
            return Err(CurveError::RepeatedPoint(i));
        }
        let d = &lift[lift.len() - 1] - &lift[0];
        let (p, q) = match (d.x.to_i64(), d.y.to_i64()) {
            (Some(p), Some(q)) => (p, q),
            _ => return Err(CurveError::NonIntegerClosure),
        };
        if p == 0 && q == 0 && lift.len() < 4 {
            return Err(CurveError::TooShort);
        }
        Ok(TorusCurve { lift, homology: (p, q) })
    }

    /// Straight lift from `start` to `start + (p, q)`.
    pub fn geodesic(p: i64, q: i64, start: RatPoint) -> TorusCurve {
        let end = start.shifted(p, q);
        TorusCurve::new(vec![start, end]).expect("nonzero class")
    }

    /// Horizontal `y = c`.
    pub fn horizontal(c: Rat) -> TorusCurve {
        TorusCurve::geodesic(1, 0, RatPoint::new(Rat::zero(), c))
    }

    /// Vertical `x = c`.
    pub fn vertical(c: Rat) -> TorusCurve {
        TorusCurve::geodesic(0, 1, RatPoint::new(c, Rat::zero()))
    }

    pub fn lift(&self) -> &[RatPoint] {
        &self.lift
    }

    pub fn homology(&self) -> (i64, i64) {
        self.homology
    }

    pub fn is_nonseparating(&self) -> bool {
        self.homology != (0, 0)
    }

    pub fn n_segments(&self) -> usize {
        self.lift.len() - 1
    }

    pub fn segment(&self, i: usize) -> Segment {
        Segment::new(self.lift[i].clone(), self.lift[i + 1].clone())
    }

    pub fn segments(&self) -> Vec<Segment> {
        (0..self.n_segments()).map(|i| self.segment(i)).collect()
    }

    pub fn view(&self) -> PathView<'_> {
        PathView { pts: &self.lift, closed: true }
    }

    pub fn is_simple(&self) -> bool {
        contacts::is_simple(self.view(), Lattice::Z2)
    }

    pub fn translated(&self, v: &RatPoint) -> TorusCurve {
        TorusCurve {
            lift: self.lift.iter().map(|p| p + v).collect(),
            homology: self.homology,
        }
    }

    pub fn reversed(&self) -> TorusCurve {
        let mut lift = self.lift.clone();
        lift.reverse();
        TorusCurve::new(lift).expect("reversal keeps validity")
    }

    /// Lift point at parameter `s` of segment `i`.
    pub fn point_at(&self, i: usize, s: &Rat) -> RatPoint {
        self.lift[i].lerp(&self.lift[i + 1], s)
    }

    /// Same curve, lift restarted at a point `(i, s)` (inserted as a vertex
    /// when interior). The new lift starts at the given point.
    pub fn rebased(&self, i: usize, s: &Rat) -> TorusCurve {
        let n = self.n_segments();
        let (p, q) = self.homology;
        let start = self.point_at(i, s);
        let mut lift = vec![start.clone()];
        for k in i + 1..=n {
            lift.push(self.lift[k].clone());
        }
        for k in 1..=i {
            lift.push(self.lift[k].shifted(p, q));
        }
        let end = start.shifted(p, q);
        if *lift.last().unwrap() != end {
            lift.push(end);
        }
        lift.dedup();
        TorusCurve::new(lift).expect("rebase keeps validity")
    }

    /// Removes vertices where the curve goes straight on.
    pub fn simplified(&self) -> TorusCurve {
        TorusCurve::new(simplify_open(&self.lift)).expect("simplification keeps validity")
    }

    /// Vertex representatives reduced into `[0,1)^2`, sorted.
    pub fn reduced_vertices(&self) -> Vec<RatPoint> {
        let mut v: Vec<RatPoint> = self.lift[..self.lift.len() - 1]
            .iter()
            .map(reduce_torus)
            .collect();
        v.sort();
        v
    }

    /// True iff the two curves have the same image on the torus.
    pub fn same_image(&self, other: &TorusCurve) -> bool {
        let (p, q) = self.homology;
        let (r, s) = other.homology;
        if !((p == r && q == s) || (p == -r && q == -s)) {
            return false;
        }
        let a = self.simplified();
        let b = other.simplified();
        let c = contacts::contacts(a.view(), b.view(), Lattice::Z2);
        if c.overlaps.is_empty() {
            return false;
        }
        // Every segment of `a` must be fully covered by overlaps.
        let mut covered = vec![Rat::zero(); a.n_segments()];
        for o in &c.overlaps {
            covered[o.i] += &(&o.s.1 - &o.s.0).abs();
        }
        covered.iter().all(|x| *x == 1)
    }
}

/// Reduce a point mod `Z^2` into `[0,1)^2`.
pub fn reduce_torus(p: &RatPoint) -> RatPoint {
    RatPoint::new(p.x.fract(), p.y.fract())
}

/// Drop interior vertices where the path continues straight.
pub fn simplify_open(pts: &[RatPoint]) -> Vec<RatPoint> {
    let mut out: Vec<RatPoint> = Vec::with_capacity(pts.len());
    for p in pts {
        if out.last() == Some(p) {
            continue;
        }
        while out.len() >= 2 {
            let a = &out[out.len() - 2];
            let b = &out[out.len() - 1];
            let d1 = b - a;
            let d2 = p - b;
            if d1.cross(&d2).is_zero() && d1.dot(&d2).signum() > 0 {
                out.pop();
            } else {
                break;
            }
        }
        out.push(p.clone());
    }
    out
}

pub fn homology_class(c: &TorusCurve) -> (i64, i64) {
    c.homology()
}

/// Deck transformation `(x, y) -> (x + k, y)` of the annulus cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DeckShift {
    pub k: i64,
}

impl DeckShift {
    pub fn compose(self, other: DeckShift) -> DeckShift {
        DeckShift { k: self.k + other.k }
    }

    pub fn apply(self, p: &RatPoint) -> RatPoint {
        p.shifted(self.k, 0)
    }

    pub fn apply_path(self, pts: &[RatPoint]) -> Vec<RatPoint> {
        pts.iter().map(|p| self.apply(p)).collect()
    }
}

/// An arc in an annulus-like model, given by one lift in the universal cover
/// `R x [0,1]` (compact) or `R x R` (open). Open-annulus arcs continue with
/// vertical rays: downward from the first point and upward from the last.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct AnnulusArc {
    pub model: SurfaceModel,
    lift: Vec<RatPoint>,
}

impl AnnulusArc {
    pub fn new(model: SurfaceModel, lift: Vec<RatPoint>) -> Result<AnnulusArc, CurveError> {
        if lift.len() < 2 {
            return Err(CurveError::TooShort);
        }
        if let Some(i) = lift.windows(2).position(|w| w[0] == w[1]) {
            return Err(CurveError::RepeatedPoint(i));
        }
        match model {
            SurfaceModel::CompactAnnulus => {
                let (f, l) = (&lift[0], &lift[lift.len() - 1]);
                let ok = (f.y.is_zero() && l.y == 1) || (f.y == 1 && l.y.is_zero());
                if !ok {
                    return Err(CurveError::BadEndpoints);
                }
                let inner = &lift[1..lift.len() - 1];
                if inner.iter().any(|p| p.y.signum() <= 0 || p.y >= 1) {
                    return Err(CurveError::NotProper);
                }
            }
            SurfaceModel::OpenAnnulus => {}
            _ => return Err(CurveError::BadEndpoints),
        }
        Ok(AnnulusArc { model, lift })
    }

    pub fn compact(lift: Vec<RatPoint>) -> Result<AnnulusArc, CurveError> {
        AnnulusArc::new(SurfaceModel::CompactAnnulus, lift)
    }

    /// Vertical arc `x = c` in the compact annulus.
    pub fn vertical(c: Rat) -> AnnulusArc {
        AnnulusArc::compact(vec![
            RatPoint::new(c.clone(), Rat::zero()),
            RatPoint::new(c, Rat::one()),
        ])
        .unwrap()
    }

    pub fn lift(&self) -> &[RatPoint] {
        &self.lift
    }

    pub fn n_segments(&self) -> usize {
        self.lift.len() - 1
    }

    pub fn shifted(&self, k: i64) -> AnnulusArc {
        AnnulusArc {
            model: self.model,
            lift: DeckShift { k }.apply_path(&self.lift),
        }
    }

    pub fn reversed(&self) -> AnnulusArc {
        let mut lift = self.lift.clone();
        lift.reverse();
        AnnulusArc { model: self.model, lift }
    }

    /// Lift extended so that all intersection questions with the other arcs
    /// live in a compact window: for the open model the rays are replaced by
    /// vertical segments reaching `ylo` and `yhi`.
    pub fn windowed(&self, ylo: &Rat, yhi: &Rat) -> Vec<RatPoint> {
        match self.model {
            SurfaceModel::OpenAnnulus => {
                let f = &self.lift[0];
                let l = &self.lift[self.lift.len() - 1];
                let mut v = vec![RatPoint::new(f.x.clone(), ylo.clone())];
                v.extend(self.lift.iter().cloned());
                v.push(RatPoint::new(l.x.clone(), yhi.clone()));
                simplify_open(&v)
            }
            _ => self.lift.clone(),
        }
    }

    /// Vertical window covering every finite vertex of the given arcs.
    pub fn window(arcs: &[&AnnulusArc]) -> (Rat, Rat) {
        let mut lo = Rat::zero();
        let mut hi = Rat::one();
        for a in arcs {
            for p in &a.lift {
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

    pub fn is_simple(&self) -> bool {
        let (lo, hi) = AnnulusArc::window(&[self]);
        let pts = self.windowed(&lo, &hi);
        contacts::is_simple(PathView { pts: &pts, closed: false }, Lattice::Horizontal)
    }
}
