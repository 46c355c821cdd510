//! Deck translates of one lift met by another.

use std::collections::BTreeSet;

use super::contacts::{contacts, Contacts, Lattice, PathView};
use super::{AnnulusArc, SurfaceModel, TorusCurve};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WidthError {
    #[error("curves live on different surface models")]
    ModelMismatch,
    #[error("torus curves are not in the same homotopy family")]
    DifferentClasses,
    #[error("unsupported surface model for this operation")]
    Unsupported,
}

fn shifts(c: &Contacts, k_of: impl Fn((i64, i64)) -> i64) -> BTreeSet<i64> {
    c.points
        .iter()
        .map(|p| k_of(p.shift))
        .chain(c.overlaps.iter().map(|o| k_of(o.shift)))
        .collect()
}

/// `{k : T^k(a~) meets b~}` for arcs of the compact or open annulus, with
/// `T(x,y) = (x+1,y)`.
pub fn lift_translates_hit(a: &AnnulusArc, b: &AnnulusArc) -> Result<BTreeSet<i64>, WidthError> {
    if a.model != b.model {
        return Err(WidthError::ModelMismatch);
    }
    if !matches!(a.model, SurfaceModel::CompactAnnulus | SurfaceModel::OpenAnnulus) {
        return Err(WidthError::Unsupported);
    }
    let (lo, hi) = AnnulusArc::window(&[a, b]);
    let pa = a.windowed(&lo, &hi);
    let pb = b.windowed(&lo, &hi);
    let c = contacts(PathView { pts: &pa, closed: false }, PathView { pts: &pb, closed: false }, Lattice::Horizontal);
    // a~(s) = b~(t) + (dx, 0), so T^{-dx}(a~) meets b~.
    Ok(shifts(&c, |(dx, _)| -dx))
}

/// The same set for two torus curves of one primitive class `h = (p,q)`,
/// lifted to the cyclic cover `R^2 / <h>` whose deck group is generated by
/// a vector `u` with `det(h, u) = 1`.
pub fn torus_translates_hit(a: &TorusCurve, b: &TorusCurve) -> Result<BTreeSet<i64>, WidthError> {
    let (p, q) = a.homology();
    let hb = b.homology();
    if (p, q) == (0, 0) || (hb != (p, q) && hb != (-p, -q)) {
        return Err(WidthError::DifferentClasses);
    }
    let c = contacts(a.view(), b.view(), Lattice::Z2);
    // A shift `alpha h + beta u` has `beta = det(h, shift)`.
    Ok(shifts(&c, |(dx, dy)| q * dx - p * dy))
}

/// True when the set is empty or a run of consecutive integers.
pub fn is_interval(k: &BTreeSet<i64>) -> bool {
    match (k.first(), k.last()) {
        (Some(lo), Some(hi)) => (hi - lo + 1) as usize == k.len(),
        _ => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::RatPoint;
    use crate::rat::Rat;

    fn winding(k: i64) -> AnnulusArc {
        AnnulusArc::compact(vec![RatPoint::ints(0, 0), RatPoint::ints(k, 1)]).unwrap()
    }

    /// Brute force: intersect explicit translates of the lifts.
    fn oracle(a: &AnnulusArc, b: &AnnulusArc, range: i64) -> BTreeSet<i64> {
        (-range..=range)
            .filter(|&k| {
                let ak = a.shifted(k);
                let c = contacts(
                    PathView { pts: ak.lift(), closed: false },
                    PathView { pts: b.lift(), closed: false },
                    Lattice::Trivial,
                );
                !c.points.is_empty() || !c.overlaps.is_empty()
            })
            .collect()
    }

    #[test]
    fn disjoint_verticals() {
        let a = AnnulusArc::vertical(Rat::new(1, 4));
        let b = AnnulusArc::vertical(Rat::new(1, 2));
        assert!(lift_translates_hit(&a, &b).unwrap().is_empty());
    }

    #[test]
    fn winding_arcs_against_oracle() {
        let v = AnnulusArc::vertical(Rat::new(1, 2));
        for k in 1..=6 {
            let w = winding(k);
            let got = lift_translates_hit(&v, &w).unwrap();
            assert_eq!(got.len(), k as usize);
            assert_eq!(got, oracle(&v, &w, k + 2));
            assert!(is_interval(&got));
        }
    }

    #[test]
    fn self_hit_contains_zero() {
        let w = winding(2);
        assert!(lift_translates_hit(&w, &w).unwrap().contains(&0));
    }

    #[test]
    fn torus_same_family() {
        let a = TorusCurve::vertical(Rat::zero());
        let zig = TorusCurve::new(vec![
            RatPoint::frac(-1, 4, 0, 1),
            RatPoint::frac(1, 4, 1, 2),
            RatPoint::frac(-1, 4, 1, 1),
        ])
        .unwrap();
        assert_eq!(torus_translates_hit(&a, &zig).unwrap().len(), 1);
        let slope = TorusCurve::geodesic(1, 1, RatPoint::origin());
        assert_eq!(torus_translates_hit(&a, &slope), Err(WidthError::DifferentClasses));
    }

    #[test]
    fn model_mismatch() {
        let a = AnnulusArc::vertical(Rat::zero());
        let b = AnnulusArc::new(SurfaceModel::OpenAnnulus, vec![RatPoint::ints(0, 0), RatPoint::ints(1, 1)]).unwrap();
        assert_eq!(lift_translates_hit(&a, &b), Err(WidthError::ModelMismatch));
    }
}
