//! Connected components of the complement of curves on the torus.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::geom::RatPoint;
use crate::rat::Rat;

use super::cells::{CellComplex, CellError};
use super::contacts::{contacts, Lattice, PathView};
use super::{reduce_torus, TorusCurve};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    /// A point of the face, reduced into `[0,1)^2`.
    pub witness: RatPoint,
    /// Indices of the input curves that bound the face.
    pub curves: Vec<usize>,
}

/// Faces with the complex they were computed from and the face index of
/// every cell.
pub struct FaceMap {
    pub complex: CellComplex,
    pub face_of_cell: Vec<usize>,
    pub faces: Vec<Face>,
}

impl FaceMap {
    pub fn new(curves: &[TorusCurve]) -> Result<FaceMap, CellError> {
        let views: Vec<PathView<'_>> = curves.iter().map(|c| c.view()).collect();
        let complex = CellComplex::torus(&views)?;
        let labels = complex.components(&|p| p.crossing.is_none());
        let mut index: BTreeMap<usize, usize> = BTreeMap::new();
        let mut face_of_cell = Vec::with_capacity(labels.len());
        for &root in &labels {
            let next = index.len();
            face_of_cell.push(*index.entry(root).or_insert(next));
        }
        let mut bounds: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); index.len()];
        for p in &complex.portals {
            if let Some(c) = p.crossing {
                bounds[face_of_cell[p.a]].insert(c);
                bounds[face_of_cell[p.b]].insert(c);
            }
        }
        let mut witness: Vec<Option<RatPoint>> = vec![None; index.len()];
        for (cell, &f) in face_of_cell.iter().enumerate() {
            if witness[f].is_none() {
                witness[f] = Some(reduce_torus(&complex.center(cell)));
            }
        }
        let faces = witness
            .into_iter()
            .zip(bounds)
            .map(|(w, b)| Face { witness: w.unwrap(), curves: b.into_iter().collect() })
            .collect();
        Ok(FaceMap { complex, face_of_cell, faces })
    }

    /// Face containing a point off the curves.
    pub fn face_of_point(&self, p: &RatPoint) -> Option<usize> {
        self.complex.locate(p, &RatPoint::origin()).map(|l| self.face_of_cell[l.cell])
    }
}

pub fn complement_components(curves: &[TorusCurve]) -> Result<Vec<Face>, CellError> {
    Ok(FaceMap::new(curves)?.faces)
}

/// `V - E + F` of the arrangement of `curves` together with one horizontal
/// and one vertical line at generic heights. All faces are disks when every
/// curve is essential, so the value is the Euler characteristic 0.
pub fn euler_characteristic(curves: &[TorusCurve]) -> Result<i64, CellError> {
    let mut all: Vec<TorusCurve> = curves.to_vec();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for c in curves {
        for v in c.lift() {
            xs.push(v.x.fract());
            ys.push(v.y.fract());
        }
    }
    let gx = super::cells::generic_offset(&mut xs);
    let gy = super::cells::generic_offset(&mut ys);
    all.push(TorusCurve::vertical(gx));
    all.push(TorusCurve::horizontal(gy));
    let faces = complement_components(&all)?.len() as i64;
    let mut verts: BTreeSet<RatPoint> = BTreeSet::new();
    let mut on_curve: Vec<BTreeSet<RatPoint>> = vec![BTreeSet::new(); all.len()];
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            for c in contacts(all[i].view(), all[j].view(), Lattice::Z2).points {
                let r = reduce_torus(&c.at);
                verts.insert(r.clone());
                on_curve[i].insert(r.clone());
                on_curve[j].insert(r);
            }
        }
    }
    let edges: i64 = on_curve.iter().map(|s| s.len() as i64).sum();
    Ok(verts.len() as i64 - edges + faces)
}

/// Reference face count: flood fill on an `n x n` grid of sample points,
/// joining neighbours whose connecting segment avoids every curve.
pub fn grid_face_count(curves: &[TorusCurve], n: i64) -> usize {
    let off = Rat::new(1, 2 * n + 1);
    let pt = |i: i64, j: i64| RatPoint::new(&Rat::new(i, n) + &off, &Rat::new(j, n) + &off * Rat::new(1, 3));
    let idx = |i: i64, j: i64| (i.rem_euclid(n) * n + j.rem_euclid(n)) as usize;
    let mut parent: Vec<usize> = (0..(n * n) as usize).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let clear = |a: &RatPoint, b: &RatPoint| {
        let seg = [a.clone(), b.clone()];
        curves.iter().all(|c| {
            let k = contacts(PathView { pts: &seg, closed: false }, c.view(), Lattice::Z2);
            k.points.is_empty() && k.overlaps.is_empty()
        })
    };
    for i in 0..n {
        for j in 0..n {
            let p = pt(i, j);
            for (di, dj) in [(1, 0), (0, 1)] {
                let q = pt(i + di, j + dj);
                if clear(&p, &q) {
                    let (a, b) = (find(&mut parent, idx(i, j)), find(&mut parent, idx(i + di, j + dj)));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
    }
    let mut roots: BTreeSet<usize> = BTreeSet::new();
    for k in 0..(n * n) as usize {
        roots.insert(find(&mut parent, k));
    }
    roots.len()
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

    #[test]
    fn small_arrangements() {
        assert_eq!(complement_components(&[h(1, 2)]).unwrap().len(), 1);
        assert_eq!(complement_components(&[h(1, 2), v(1, 2)]).unwrap().len(), 1);
        assert_eq!(complement_components(&[h(1, 4), h(3, 4)]).unwrap().len(), 2);
        let faces = complement_components(&[h(1, 4), h(1, 2), h(3, 4)]).unwrap();
        assert_eq!(faces.len(), 3);
        for f in &faces {
            assert_eq!(f.curves.len(), 2);
        }
    }

    #[test]
    fn overlap_is_rejected() {
        assert!(complement_components(&[h(1, 2), h(1, 2)]).is_err());
    }

    #[test]
    fn euler_and_flood_fill_agree() {
        let slope = TorusCurve::geodesic(1, 1, RatPoint::frac(1, 7, 0, 1));
        let sets = vec![
            vec![h(1, 3)],
            vec![h(1, 3), v(2, 5)],
            vec![h(1, 3), h(2, 3), v(2, 5)],
            vec![h(1, 3), v(2, 5), slope.clone()],
            vec![h(1, 4), h(3, 4), slope],
        ];
        for s in sets {
            assert_eq!(euler_characteristic(&s).unwrap(), 0);
            let f = complement_components(&s).unwrap().len();
            assert_eq!(grid_face_count(&s, 24), f);
        }
    }
}
