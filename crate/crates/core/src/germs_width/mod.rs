//! Relative width of arcs and curves in annulus-like covers, distance paths
//! in the graphs of pairwise disjoint arcs, and widths of spiral germs.

mod distance;
mod germs;

pub use distance::{distance_path, DistanceError};
pub use germs::{fixtures as germ_fixtures, germ_discrepancies, germ_width, GermError, GermSpec, GermWidth, Similarity};

use std::collections::BTreeSet;

use serde::{Serialize, Serializer};

use crate::surfaces::{is_interval, lift_translates_hit, torus_translates_hit, AnnulusArc, TorusCurve, WidthError};

/// A width value: a count or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Width {
    Finite(u64),
    Infinite,
}

impl Width {
    pub fn is_finite(self) -> bool {
        matches!(self, Width::Finite(_))
    }

    /// Graph distance `width + 1`.
    pub fn distance(self) -> Width {
        match self {
            Width::Finite(w) => Width::Finite(w + 1),
            Width::Infinite => Width::Infinite,
        }
    }
}

impl Serialize for Width {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Width::Finite(w) => s.serialize_u64(*w),
            Width::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WidthResult {
    /// The set `K` of translates met, `None` when infinite.
    pub k: Option<BTreeSet<i64>>,
    pub width: Width,
}

impl WidthResult {
    pub fn finite(k: BTreeSet<i64>) -> WidthResult {
        let width = Width::Finite(k.len() as u64);
        WidthResult { k: Some(k), width }
    }

    pub fn infinite() -> WidthResult {
        WidthResult { k: None, width: Width::Infinite }
    }

    /// `K` is empty or an interval of integers.
    pub fn is_interval(&self) -> bool {
        self.k.as_ref().is_none_or(is_interval)
    }
}

/// Objects whose lifts to a cyclic cover can be compared by deck translates.
pub trait WidthVertex {
    fn translates_hit(&self, other: &Self) -> Result<BTreeSet<i64>, WidthError>;
}

impl WidthVertex for AnnulusArc {
    fn translates_hit(&self, other: &Self) -> Result<BTreeSet<i64>, WidthError> {
        lift_translates_hit(self, other)
    }
}

impl WidthVertex for TorusCurve {
    fn translates_hit(&self, other: &Self) -> Result<BTreeSet<i64>, WidthError> {
        torus_translates_hit(self, other)
    }
}

pub fn relative_width<C: WidthVertex>(a: &C, b: &C) -> Result<WidthResult, WidthError> {
    Ok(WidthResult::finite(a.translates_hit(b)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::RatPoint;
    use crate::rat::Rat;

    #[test]
    fn width_examples() {
        let a = AnnulusArc::vertical(Rat::new(1, 4));
        let b = AnnulusArc::vertical(Rat::new(3, 4));
        let r = relative_width(&a, &b).unwrap();
        assert_eq!(r.width, Width::Finite(0));
        assert_eq!(r.width.distance(), Width::Finite(1));
        let w = AnnulusArc::compact(vec![RatPoint::ints(0, 0), RatPoint::ints(3, 1)]).unwrap();
        let r = relative_width(&a, &w).unwrap();
        assert_eq!(r.width, Width::Finite(3));
        assert!(r.is_interval());
        assert_eq!(serde_json::to_string(&Width::Infinite).unwrap(), "\"inf\"");
        assert_eq!(serde_json::to_string(&Width::Finite(3)).unwrap(), "3");
    }
}
