//! Self-similar germs at the origin of the punctured plane.
//!
//! A germ is the tail `g, Mg, M^2 g, ...` of a generator arc `g` under a
//! contracting similarity `M = lambda R`. Lifted angles are tracked by
//! counting signed crossings of the positive x-axis, so the discrepancy
//! between two germs at a common point is an exact integer.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::geom::{cmp_angle, point_segment_dist2, polyline_self_intersects, RatPoint, Segment};
use crate::rat::Rat;
use crate::surfaces::contacts::{contacts, Lattice, PathView};

use super::Width;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GermError {
    #[error("germs do not share their contraction")]
    ContractionMismatch,
    #[error("germ tails overlap along a segment")]
    NonGeneric,
    #[error("invalid germ: {0}")]
    Invalid(&'static str),
}

/// The contraction `M = lambda R`, `R` the rotation with the given cosine
/// and sine.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Similarity {
    pub lambda: Rat,
    pub rot: (Rat, Rat),
}

impl Similarity {
    pub fn new(lambda: Rat, cos: Rat, sin: Rat) -> Result<Similarity, GermError> {
        if lambda <= 0 || lambda >= 1 {
            return Err(GermError::Invalid("lambda must lie in (0,1)"));
        }
        if &cos * &cos + &sin * &sin != Rat::one() {
            return Err(GermError::Invalid("rotation is not orthogonal"));
        }
        Ok(Similarity { lambda, rot: (cos, sin) })
    }

    pub fn apply(&self, p: &RatPoint) -> RatPoint {
        let (c, s) = &self.rot;
        RatPoint::new(
            &self.lambda * &(c * &p.x - s * &p.y),
            &self.lambda * &(s * &p.x + c * &p.y),
        )
    }

    pub fn apply_path(&self, pts: &[RatPoint]) -> Vec<RatPoint> {
        pts.iter().map(|p| self.apply(p)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GermSpec {
    /// Arc ending at the start of the generator; irrelevant to the germ.
    pub prefix: Vec<RatPoint>,
    pub generator: Vec<RatPoint>,
    #[serde(flatten)]
    pub m: Similarity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GermWidth {
    pub width: Width,
    pub comparable: bool,
}

/// Signed crossings of the open positive x-axis by the segment `u -> v`,
/// counting a crossing when the segment reaches `y = 0` from below or
/// leaves it downward.
fn ray_crossings(u: &RatPoint, v: &RatPoint) -> i64 {
    let up = u.y.signum() < 0 && v.y.signum() >= 0;
    let down = u.y.signum() >= 0 && v.y.signum() < 0;
    if !up && !down {
        return 0;
    }
    let x = &u.x + &((&v.x - &u.x) * (-&u.y) / (&v.y - &u.y));
    if x.signum() <= 0 {
        0
    } else if up {
        1
    } else {
        -1
    }
}

fn path_crossings(pts: &[RatPoint]) -> i64 {
    pts.windows(2).map(|w| ray_crossings(&w[0], &w[1])).sum()
}

/// Crossing count from the start of `pts` up to the point `(i, s)`.
fn crossings_upto(pts: &[RatPoint], i: usize, s: &Rat) -> i64 {
    let p = &pts[i] + &(&pts[i + 1] - &pts[i]).scale(s);
    path_crossings(&pts[..=i]) + if s.is_zero() { 0 } else { ray_crossings(&pts[i], &p) }
}

impl GermSpec {
    pub fn new(prefix: Vec<RatPoint>, generator: Vec<RatPoint>, m: Similarity) -> Result<GermSpec, GermError> {
        let g = GermSpec { prefix, generator, m };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<(), GermError> {
        let g = &self.generator;
        let m = Similarity::new(self.m.lambda.clone(), self.m.rot.0.clone(), self.m.rot.1.clone())?;
        if g.len() < 2 || g.windows(2).any(|w| w[0] == w[1]) {
            return Err(GermError::Invalid("generator needs distinct consecutive points"));
        }
        let o = RatPoint::origin();
        if g.windows(2).any(|w| point_segment_dist2(&o, &Segment::new(w[0].clone(), w[1].clone())).is_zero()) {
            return Err(GermError::Invalid("generator passes through the origin"));
        }
        if m.apply(&g[0]) != g[g.len() - 1] {
            return Err(GermError::Invalid("generator copies do not chain"));
        }
        if !self.prefix.is_empty() && self.prefix[self.prefix.len() - 1] != g[0] {
            return Err(GermError::Invalid("prefix does not end at the generator"));
        }
        let n = self.self_overlap_bound() + 2;
        if polyline_self_intersects(&self.tail(n), false) {
            return Err(GermError::Invalid("germ arc is not simple"));
        }
        Ok(())
    }

    /// Copy `i` of the generator, `M^i g`.
    pub fn copy(&self, i: usize) -> Vec<RatPoint> {
        let mut pts = self.generator.clone();
        for _ in 0..i {
            pts = self.m.apply_path(&pts);
        }
        pts
    }

    /// The first `n` copies, concatenated.
    pub fn tail(&self, n: usize) -> Vec<RatPoint> {
        let mut out = vec![self.generator[0].clone()];
        let mut cur = self.generator.clone();
        for _ in 0..n {
            out.extend(cur[1..].iter().cloned());
            cur = self.m.apply_path(&cur);
        }
        out
    }

    /// Squared radii `(min, max)` of the generator.
    fn radii2(&self) -> (Rat, Rat) {
        let o = RatPoint::origin();
        let g = &self.generator;
        let min = g
            .windows(2)
            .map(|w| point_segment_dist2(&o, &Segment::new(w[0].clone(), w[1].clone())))
            .min()
            .unwrap();
        let max = g.iter().map(|p| p.norm2()).max().unwrap();
        (min, max)
    }

    /// Largest `j` such that copy `j` can reach the radii of copy 0.
    fn self_overlap_bound(&self) -> usize {
        let (lo, hi) = self.radii2();
        reach(&hi, &lo, &self.m.lambda)
    }

    /// Full turns made by one period, `(total angle - rotation angle) / 2 pi`
    /// with the rotation angle taken in `[0, 2 pi)`.
    pub fn period_turns(&self) -> i64 {
        let g = &self.generator;
        let wrap = cmp_angle(&g[g.len() - 1], &g[0]) == Ordering::Less;
        path_crossings(g) - i64::from(wrap)
    }
}

/// Largest `j >= 0` with `lambda^(2j) * hi >= lo`.
fn reach(hi: &Rat, lo: &Rat, lambda: &Rat) -> usize {
    let l2 = lambda * lambda;
    let mut r = hi.clone();
    let mut j = 0;
    loop {
        r = &r * &l2;
        if r < *lo {
            return j;
        }
        j += 1;
    }
}

/// Discrepancies `c_1(p) - c_2(p)` over intersections of copy `i` of `g1`
/// with copy `j` of `g2`. The junction point of two copies belongs to the
/// later copy.
fn pair_discrepancies(g1: &GermSpec, g2: &GermSpec, i: usize, j: usize, base1: i64, base2: i64) -> Result<BTreeSet<i64>, GermError> {
    let a = g1.copy(i);
    let b = g2.copy(j);
    let c = contacts(PathView { pts: &a, closed: false }, PathView { pts: &b, closed: false }, Lattice::Trivial);
    if !c.overlaps.is_empty() {
        return Err(GermError::NonGeneric);
    }
    let (la, lb) = (a.len() - 2, b.len() - 2);
    Ok(c.points
        .iter()
        .filter(|p| !(p.i == la && p.s == 1) && !(p.j == lb && p.t == 1))
        .map(|p| base1 + crossings_upto(&a, p.i, &p.s) - base2 - crossings_upto(&b, p.j, &p.t))
        .collect())
}

/// Crossing counts of the tail before each of the first `n` copies.
fn copy_bases(g: &GermSpec, n: usize) -> Vec<i64> {
    let mut out = Vec::with_capacity(n);
    let mut acc = 0;
    let mut cur = g.generator.clone();
    for _ in 0..n {
        out.push(acc);
        acc += path_crossings(&cur);
        cur = g.m.apply_path(&cur);
    }
    out
}

/// Local relative width of two germs sharing their contraction.
pub fn germ_width(g1: &GermSpec, g2: &GermSpec) -> Result<GermWidth, GermError> {
    if g1.m != g2.m {
        return Err(GermError::ContractionMismatch);
    }
    g1.validate()?;
    g2.validate()?;
    let (lo1, hi1) = g1.radii2();
    let (lo2, hi2) = g2.radii2();
    let lambda = &g1.m.lambda;
    // Copy pairs (0, j) and (i, 0) whose radial ranges overlap; every other
    // pair is a common image of one of these under M.
    let jmax = reach(&hi2, &lo1, lambda);
    let imax = reach(&hi1, &lo2, lambda);
    let b1 = copy_bases(g1, imax + 1);
    let b2 = copy_bases(g2, jmax + 1);
    let mut d0 = BTreeSet::new();
    for j in 0..=jmax {
        d0.extend(pair_discrepancies(g1, g2, 0, j, b1[0], b2[j])?);
    }
    for i in 1..=imax {
        d0.extend(pair_discrepancies(g1, g2, i, 0, b1[i], b2[0])?);
    }
    let delta = g1.period_turns() - g2.period_turns();
    let width = if d0.is_empty() {
        Width::Finite(0)
    } else if delta != 0 {
        Width::Infinite
    } else {
        Width::Finite(d0.len() as u64)
    };
    Ok(GermWidth { width, comparable: width.is_finite() })
}

/// Reference enumeration: discrepancies of all intersections between the
/// first `n` copies of each tail, computed on the concatenated tails.
pub fn germ_discrepancies(g1: &GermSpec, g2: &GermSpec, n: usize) -> Result<BTreeSet<i64>, GermError> {
    let a = g1.tail(n);
    let b = g2.tail(n);
    let c = contacts(PathView { pts: &a, closed: false }, PathView { pts: &b, closed: false }, Lattice::Trivial);
    if !c.overlaps.is_empty() {
        return Err(GermError::NonGeneric);
    }
    Ok(c.points
        .iter()
        .map(|p| crossings_upto(&a, p.i, &p.s) - crossings_upto(&b, p.j, &p.t))
        .collect())
}

/// Germ fixtures with `M = x -> x/2`.
pub mod fixtures {
    use super::*;

    pub fn half() -> Similarity {
        Similarity::new(Rat::new(1, 2), Rat::one(), Rat::zero()).unwrap()
    }

    /// Straight ray germ along `dir`.
    pub fn ray(dir: RatPoint) -> GermSpec {
        let m = half();
        let end = m.apply(&dir);
        GermSpec::new(Vec::new(), vec![dir, end], m).unwrap()
    }

    const OCT: [(i64, i64, i64, i64); 8] = [
        (1, 1, 1, 3),
        (1, 3, 1, 1),
        (-1, 3, 1, 1),
        (-1, 1, 1, 3),
        (-1, 1, -1, 3),
        (-1, 3, -1, 1),
        (1, 3, -1, 1),
        (1, 1, -1, 3),
    ];

    fn oct(k: usize, r: Rat) -> RatPoint {
        let (a, b, c, d) = OCT[k % 8];
        RatPoint::frac(a, b, c, d).scale(&r)
    }

    /// Spiral making one counterclockwise turn per period.
    pub fn spiral() -> GermSpec {
        let mut g = vec![oct(6, Rat::one())];
        for (n, k) in [7, 0, 1, 2, 3, 4, 5].into_iter().enumerate() {
            g.push(oct(k, Rat::new(15 - n as i64, 16)));
        }
        g.push(oct(6, Rat::new(1, 2)));
        GermSpec::new(Vec::new(), g, half()).unwrap()
    }

    /// Arc winding a little over one turn counterclockwise and back, with
    /// no net turning per period. Against `ray((1,0))` it meets two
    /// translates.
    pub fn back_and_forth() -> GermSpec {
        let mut g = vec![oct(6, Rat::one())];
        for (n, k) in [7, 0, 1, 2, 3, 4, 5, 6, 7, 0].into_iter().enumerate() {
            g.push(oct(k, Rat::new(99 - n as i64, 100)));
        }
        for (n, k) in [7, 6, 5, 4, 3, 2, 1, 0, 7].into_iter().enumerate() {
            g.push(oct(k, Rat::new(75 - n as i64, 100)));
        }
        g.push(oct(6, Rat::new(3, 5)));
        g.push(oct(6, Rat::new(1, 2)));
        GermSpec::new(Vec::new(), g, half()).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ray_vs_ray() {
        let w = germ_width(&ray(RatPoint::ints(1, 0)), &ray(RatPoint::ints(0, 1))).unwrap();
        assert_eq!(w, GermWidth { width: Width::Finite(0), comparable: true });
        assert_eq!(w.width.distance(), Width::Finite(1));
    }

    #[test]
    fn ray_vs_spiral_is_infinite() {
        let r = ray(RatPoint::frac(1, 1, 1, 5));
        let s = spiral();
        assert_eq!(s.period_turns(), 1);
        let w = germ_width(&r, &s).unwrap();
        assert_eq!(w, GermWidth { width: Width::Infinite, comparable: false });
        let mut prev = 0;
        for n in 1..=20 {
            let d = germ_discrepancies(&r, &s, n).unwrap();
            assert!(d.len() > prev);
            prev = d.len();
        }
    }

    #[test]
    fn back_and_forth_has_width_two() {
        let r = ray(RatPoint::ints(1, 0));
        let g = back_and_forth();
        assert_eq!(g.period_turns(), 0);
        let w = germ_width(&r, &g).unwrap();
        assert_eq!(w, GermWidth { width: Width::Finite(2), comparable: true });
        assert_eq!(w.width.distance(), Width::Finite(3));
        let d10 = germ_discrepancies(&r, &g, 10).unwrap();
        assert_eq!(d10.len(), 2);
        assert_eq!(germ_discrepancies(&r, &g, 12).unwrap(), d10);
    }

    #[test]
    fn shared_contraction_is_required() {
        let r = ray(RatPoint::ints(1, 0));
        let m = Similarity::new(Rat::new(1, 3), Rat::one(), Rat::zero()).unwrap();
        let other = GermSpec::new(Vec::new(), vec![RatPoint::ints(0, 1), RatPoint::frac(0, 1, 1, 3)], m).unwrap();
        assert_eq!(germ_width(&r, &other), Err(GermError::ContractionMismatch));
    }

    #[test]
    fn invalid_specs() {
        let m = half();
        assert!(GermSpec::new(Vec::new(), vec![RatPoint::ints(1, 0), RatPoint::ints(1, 1)], m.clone()).is_err());
        assert!(GermSpec::new(Vec::new(), vec![RatPoint::ints(1, 0), RatPoint::ints(-1, 0), RatPoint::frac(1, 2, 0, 1)], m).is_err());
        assert!(Similarity::new(Rat::new(1, 2), Rat::new(1, 2), Rat::new(1, 2)).is_err());
    }

    fn rotated(start: (i64, i64), prefix: Vec<RatPoint>) -> Option<GermSpec> {
        let m = Similarity::new(Rat::new(1, 2), Rat::new(3, 5), Rat::new(4, 5)).unwrap();
        let s = RatPoint::ints(start.0, start.1);
        let e = m.apply(&s);
        let mut prefix = prefix;
        if !prefix.is_empty() {
            prefix.push(s.clone());
        }
        GermSpec::new(prefix, vec![s, e], m).ok()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn symmetric_and_prefix_free(
            a in (-5i64..=5, -5i64..=5),
            b in (-5i64..=5, -5i64..=5),
            px in -9i64..=9,
            py in -9i64..=9,
        ) {
            prop_assume!(a != (0, 0) && b != (0, 0));
            let (Some(g1), Some(g2)) = (rotated(a, Vec::new()), rotated(b, Vec::new())) else {
                return Ok(());
            };
            let Ok(w) = germ_width(&g1, &g2) else { return Ok(()) };
            prop_assert_eq!(germ_width(&g2, &g1).unwrap().width, w.width);
            if let Some(g1p) = rotated(a, vec![RatPoint::ints(px, py + 20)]) {
                prop_assert_eq!(germ_width(&g1p, &g2).unwrap(), w);
            }
            if let Width::Finite(n) = w.width {
                let d = germ_discrepancies(&g1, &g2, 12).unwrap();
                prop_assert_eq!(d.len() as u64, n);
            }
        }
    }
}
