//! Exact rational polytopes in any affine dimension.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactnum::{factorial, Rational};
use crate::hull::hull_facets;
use crate::lattice::Lattice;
use crate::linalg::{det, sub, AffineFrame};
use crate::{Error, Result};

/// A facet `{x : <x, normal> = -offset}` with `<x, normal> >= -offset` on the
/// polytope. For lower-dimensional polytopes the normal is written in the
/// pivot coordinates of the affine span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<BigInt>,
    pub offset: Rational,
    /// input points lying on the facet
    pub points: Vec<usize>,
}

impl Facet {
    pub fn value(&self, x: &[Rational]) -> Rational {
        self.normal
            .iter()
            .zip(x)
            .map(|(v, xi)| Rational::from_integer(v.clone()) * xi)
            .sum::<Rational>()
            + &self.offset
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Face {
    pub dim: usize,
    /// input points lying on the face
    pub points: Vec<usize>,
}

#[derive(Debug)]
pub struct Polytope {
    points: Vec<Vec<Rational>>,
    frame: AffineFrame,
    vertices: Vec<usize>,
    facets: Vec<Facet>,
    faces: OnceLock<Vec<Vec<Face>>>,
}

impl Clone for Polytope {
    fn clone(&self) -> Self {
        Polytope {
            points: self.points.clone(),
            frame: self.frame.clone(),
            vertices: self.vertices.clone(),
            facets: self.facets.clone(),
            faces: OnceLock::new(),
        }
    }
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.vertices() == other.vertices()
    }
}

/// Scale a rational vector to a primitive integer vector; returns the
/// positive scale factor used.
pub fn primitive(v: &[Rational]) -> (Vec<BigInt>, Rational) {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return (ints, Rational::one());
    }
    let out = ints.iter().map(|x| x / &g).collect();
    (out, Rational::new(l, g))
}

pub fn to_rational_points(points: &[Vec<BigInt>]) -> Vec<Vec<Rational>> {
    points
        .iter()
        .map(|p| {
            p.iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect()
        })
        .collect()
}

fn slices(points: &[Vec<Rational>]) -> Vec<&[Rational]> {
    points.iter().map(|p| p.as_slice()).collect()
}

/// Facets of the point set `idx` (of affine dimension >= 1) computed in its
/// own frame; point sets are returned as subsets of `idx`.
fn relative_facets(
    points: &[Vec<Rational>],
    idx: &[usize],
) -> (AffineFrame, Vec<(Vec<usize>, Vec<Rational>, Rational)>) {
    let sub_pts: Vec<&[Rational]> = idx.iter().map(|&i| points[i].as_slice()).collect();
    let frame = AffineFrame::of(&sub_pts);
    let proj: Vec<Vec<Rational>> = sub_pts.iter().map(|p| frame.project(p)).collect();
    let facets = hull_facets(&proj)
        .into_iter()
        .map(|f| {
            (
                f.points.iter().map(|&k| idx[k]).collect(),
                f.normal,
                f.offset,
            )
        })
        .collect();
    (frame, facets)
}

/// Pulling triangulation of the points `idx`; simplices are lists of input
/// indices (affinely independent, of the set's full dimension).
pub fn triangulate(points: &[Vec<Rational>], idx: &[usize]) -> Vec<Vec<usize>> {
    let sub_pts: Vec<&[Rational]> = idx.iter().map(|&i| points[i].as_slice()).collect();
    let frame = AffineFrame::of(&sub_pts);
    if frame.dim() == 0 {
        return vec![vec![idx[0]]];
    }
    let apex = *idx
        .iter()
        .min_by(|&&a, &&b| points[a].cmp(&points[b]).then(a.cmp(&b)))
        .unwrap();
    let (_, facets) = relative_facets(points, idx);
    let mut out = Vec::new();
    for (f_pts, _, _) in facets {
        if f_pts.iter().any(|&i| points[i] == points[apex]) {
            continue;
        }
        for mut s in triangulate(points, &f_pts) {
            s.insert(0, apex);
            out.push(s);
        }
    }
    out
}

/// Volume of a simplex in the coordinates given by `frame`.
fn simplex_volume(points: &[Vec<Rational>], s: &[usize], frame: &AffineFrame) -> Rational {
    let k = s.len() - 1;
    if k == 0 {
        return Rational::one();
    }
    let p0 = frame.project(&points[s[0]]);
    let m: Vec<Vec<Rational>> = s[1..]
        .iter()
        .map(|&i| sub(&frame.project(&points[i]), &p0))
        .collect();
    det(&m).abs() / Rational::from_integer(factorial(k))
}

/// Exact square root of a nonnegative rational, if it is a square.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Rational::new(n, d))
}

impl Polytope {
    /// Convex hull of a nonempty point list.
    pub fn convex_hull(points: Vec<Vec<Rational>>) -> Result<Polytope> {
        let Some(first) = points.first() else {
            return Err(Error::InvalidInput("convex hull of no points".into()));
        };
        let n = first.len();
        if let Some(p) = points.iter().find(|p| p.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.len(),
            });
        }
        let frame = AffineFrame::of(&slices(&points));
        let k = frame.dim();
        if k == 0 {
            return Ok(Polytope {
                points,
                frame,
                vertices: vec![0],
                facets: vec![],
                faces: OnceLock::new(),
            });
        }
        let all: Vec<usize> = (0..points.len()).collect();
        let (_, rel) = relative_facets(&points, &all);
        let mut facets = Vec::new();
        for (f_pts, w, off) in rel {
            let mut normal = vec![Rational::zero(); n];
            let mut offset = off;
            for (wj, &pj) in w.iter().zip(&frame.pivots) {
                normal[pj] = wj.clone();
                offset -= wj * &frame.origin[pj];
            }
            let (prim, scale) = primitive(&normal);
            facets.push(Facet {
                normal: prim,
                offset: offset * scale,
                points: f_pts,
            });
        }
        // a point is a vertex when the facets through it meet only at it
        let mut vertices: Vec<usize> = Vec::new();
        for i in 0..points.len() {
            if vertices.iter().any(|&v| points[v] == points[i]) {
                continue;
            }
            let through: Vec<&Facet> = facets.iter().filter(|f| f.points.contains(&i)).collect();
            if through.is_empty() {
                continue;
            }
            let alone = (0..points.len())
                .filter(|j| through.iter().all(|f| f.points.contains(j)))
                .all(|j| points[j] == points[i]);
            if alone {
                vertices.push(i);
            }
        }
        vertices.sort_by(|&a, &b| points[a].cmp(&points[b]));
        Ok(Polytope {
            points,
            frame,
            vertices,
            facets,
            faces: OnceLock::new(),
        })
    }

    pub fn from_integer_points(points: &[Vec<BigInt>]) -> Result<Polytope> {
        Self::convex_hull(to_rational_points(points))
    }

    pub fn from_i64(points: &[&[i64]]) -> Result<Polytope> {
        Self::convex_hull(
            points
                .iter()
                .map(|p| {
                    p.iter()
                        .map(|&x| Rational::from_integer(x.into()))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn ambient_dim(&self) -> usize {
        self.frame.ambient()
    }

    pub fn affine_dim(&self) -> usize {
        self.frame.dim()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim() == self.ambient_dim()
    }

    pub fn frame(&self) -> &AffineFrame {
        &self.frame
    }

    /// The input points (not only the vertices).
    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }

    /// Extreme points, sorted lexicographically.
    pub fn vertices(&self) -> Vec<&[Rational]> {
        self.vertices
            .iter()
            .map(|&i| self.points[i].as_slice())
            .collect()
    }

    /// Input indices of the vertices (first occurrence of each).
    pub fn vertex_indices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Whether x lies in the polytope.
    pub fn contains(&self, x: &[Rational]) -> bool {
        self.frame.contains(x) && self.facets.iter().all(|f| !f.value(x).is_negative())
    }

    /// Faces grouped by dimension (index 0 holds the vertices), each with
    /// the input points it contains.
    pub fn face_lattice(&self) -> &[Vec<Face>] {
        self.faces.get_or_init(|| {
            let k = self.affine_dim();
            let mut found: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
            let all: Vec<usize> = (0..self.points.len()).collect();
            let mut stack = vec![(all, k)];
            while let Some((set, d)) = stack.pop() {
                if found.contains_key(&set) {
                    continue;
                }
                found.insert(set.clone(), d);
                if d == 0 {
                    continue;
                }
                let (_, rel) = relative_facets(&self.points, &set);
                for (f, _, _) in rel {
                    stack.push((f, d - 1));
                }
            }
            let mut out = vec![Vec::new(); k + 1];
            for (points, dim) in found {
                out[dim].push(Face { dim, points });
            }
            for level in &mut out {
                level.sort_by(|a, b| {
                    let va: Vec<&Vec<Rational>> =
                        a.points.iter().map(|&i| &self.points[i]).collect();
                    let vb: Vec<&Vec<Rational>> =
                        b.points.iter().map(|&i| &self.points[i]).collect();
                    va.cmp(&vb)
                });
            }
            out
        })
    }

    pub fn triangulation(&self) -> Vec<Vec<usize>> {
        let idx: Vec<usize> = (0..self.points.len()).collect();
        triangulate(&self.points, &idx)
    }

    /// Volume measured in the pivot coordinates of the affine span.
    pub fn frame_volume(&self) -> Rational {
        self.triangulation()
            .iter()
            .map(|s| simplex_volume(&self.points, s, &self.frame))
            .sum()
    }

    /// Squared intrinsic (Euclidean) volume in the affine span.
    pub fn volume_squared(&self) -> Rational {
        let v = self.frame_volume();
        &v * &v * self.frame.volume_factor_sq()
    }

    /// Intrinsic volume; errors when a lower-dimensional polytope has
    /// irrational Euclidean volume (use [`Polytope::normalized_volume`]).
    pub fn volume(&self) -> Result<Rational> {
        if self.is_full_dimensional() {
            return Ok(self.frame_volume());
        }
        let sq = self.volume_squared();
        rational_sqrt(&sq).ok_or_else(|| Error::IrrationalVolume {
            squared: crate::exactnum::format_rational(&sq),
        })
    }

    /// Lebesgue measure in the ambient space (0 unless full-dimensional).
    pub fn ambient_volume(&self) -> Rational {
        if self.is_full_dimensional() {
            self.frame_volume()
        } else {
            Rational::zero()
        }
    }

    /// Volume normalized so that a fundamental domain of `l` has volume 1.
    pub fn normalized_volume(&self, l: &Lattice) -> Result<Rational> {
        let k = self.affine_dim();
        if l.dim() != self.ambient_dim() || l.rank() != k {
            return Err(Error::LatticeSpanMismatch);
        }
        let mut c = Vec::with_capacity(k);
        for b in l.basis() {
            let br: Vec<Rational> = b
                .iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect();
            let shifted: Vec<Rational> = br
                .iter()
                .zip(&self.frame.origin)
                .map(|(x, o)| x + o)
                .collect();
            if !self.frame.contains(&shifted) {
                return Err(Error::LatticeSpanMismatch);
            }
            c.push(
                self.frame
                    .pivots
                    .iter()
                    .map(|&j| br[j].clone())
                    .collect::<Vec<_>>(),
            );
        }
        let d = if k == 0 {
            Rational::one()
        } else {
            det(&c).abs()
        };
        Ok(self.frame_volume() / d)
    }

    /// Affine hull of `P + Q` from pairwise vertex sums.
    pub fn minkowski_sum(&self, other: &Polytope) -> Result<Polytope> {
        minkowski_sum(self, other)
    }
}

pub fn convex_hull(points: Vec<Vec<Rational>>) -> Result<Polytope> {
    Polytope::convex_hull(points)
}

pub fn minkowski_sum(p: &Polytope, q: &Polytope) -> Result<Polytope> {
    if p.ambient_dim() != q.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: p.ambient_dim(),
            found: q.ambient_dim(),
        });
    }
    let mut pts: Vec<Vec<Rational>> = Vec::new();
    for a in p.vertices() {
        for b in q.vertices() {
            let s: Vec<Rational> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            pts.push(s);
        }
    }
    pts.sort();
    pts.dedup();
    Polytope::convex_hull(pts)
}

/// Sum of the polytopes selected by `mask` for every nonempty mask.
pub(crate) fn subset_sums(list: &[Polytope]) -> Result<Vec<Option<Polytope>>> {
    let m = list.len();
    let mut sums: Vec<Option<Polytope>> = vec![None; 1 << m];
    for mask in 1usize..(1 << m) {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        sums[mask] = Some(match &sums[rest] {
            None => list[low].clone(),
            Some(r) => minkowski_sum(r, &list[low])?,
        });
    }
    Ok(sums)
}

/// Mixed volume of n polytopes in R^n by inclusion-exclusion over the
/// Minkowski sums of all subfamilies.
pub fn mixed_volume(list: &[Polytope]) -> Result<Rational> {
    let n = list.len();
    for p in list {
        if p.ambient_dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.ambient_dim(),
            });
        }
    }
    if n == 0 {
        return Ok(Rational::one());
    }
    let sums = subset_sums(list)?;
    let mut total = Rational::zero();
    for (mask, s) in sums.iter().enumerate().skip(1) {
        let size = mask.count_ones() as usize;
        let v = s.as_ref().unwrap().ambient_volume();
        if (n - size).is_multiple_of(2) {
            total += v;
        } else {
            total -= v;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    fn poly(points: &[&[i64]]) -> Polytope {
        Polytope::from_i64(points).unwrap()
    }

    #[test]
    fn hull_examples() {
        let q = poly(&[&[0, 0], &[1, 0], &[2, 1], &[1, 2]]);
        assert_eq!(q.vertices().len(), 4);
        assert_eq!(q.volume().unwrap(), int(2));
        let s = poly(&[&[0], &[1], &[2]]);
        assert_eq!(s.vertices(), vec![&[int(0)][..], &[int(2)][..]]);
        let p = poly(&[&[3, 4]]);
        assert_eq!(p.affine_dim(), 0);
        assert_eq!(p.volume().unwrap(), int(1));
    }

    #[test]
    fn facets_are_primitive_and_valid() {
        let q = poly(&[&[0, 0], &[1, 0], &[2, 1], &[1, 2], &[1, 1]]);
        assert_eq!(q.facets().len(), 4);
        for f in q.facets() {
            assert_eq!(crate::lattice::content(&f.normal), BigInt::one());
            for (i, p) in q.points().iter().enumerate() {
                let v = f.value(p);
                assert!(!v.is_negative());
                assert_eq!(v.is_zero(), f.points.contains(&i));
            }
        }
    }

    #[test]
    fn face_lattices() {
        let s = poly(&[&[0], &[1], &[2]]);
        let fl = s.face_lattice();
        assert_eq!(
            fl[0].iter().map(|f| f.points.clone()).collect::<Vec<_>>(),
            vec![vec![0], vec![2]]
        );
        assert_eq!(fl[1][0].points, vec![0, 1, 2]);
        let sq = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let counts: Vec<usize> = sq.face_lattice().iter().map(|l| l.len()).collect();
        assert_eq!(counts, vec![4, 4, 1]);
        let q = poly(&[&[0, 0], &[1, 0], &[2, 1], &[1, 2]]);
        let counts: Vec<usize> = q.face_lattice().iter().map(|l| l.len()).collect();
        assert_eq!(counts, vec![4, 4, 1]);
    }

    #[test]
    fn volumes() {
        for (n, d) in [(1usize, 3i64), (2, 3), (3, 2)] {
            let mut pts = vec![vec![0i64; n]];
            for i in 0..n {
                let mut e = vec![0; n];
                e[i] = d;
                pts.push(e);
            }
            let refs: Vec<&[i64]> = pts.iter().map(|p| p.as_slice()).collect();
            let expect = Rational::new(BigInt::from(d).pow(n as u32), factorial(n));
            assert_eq!(poly(&refs).volume().unwrap(), expect);
        }
        let seg = poly(&[&[0, 0], &[2, 2]]);
        assert_eq!(seg.volume_squared(), int(8));
        assert!(matches!(seg.volume(), Err(Error::IrrationalVolume { .. })));
        assert_eq!(
            seg.normalized_volume(&Lattice::from_i64(2, &[&[1, 1]]))
                .unwrap(),
            int(2)
        );
        assert_eq!(
            seg.normalized_volume(&Lattice::from_i64(2, &[&[1, 0]])),
            Err(Error::LatticeSpanMismatch)
        );
        let flat = poly(&[&[0, 0, 0], &[3, 0, 0], &[0, 4, 0]]);
        assert_eq!(flat.volume().unwrap(), int(6));
        let tilted = poly(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 1]]);
        assert_eq!(tilted.volume_squared(), rat(1, 2));
    }

    #[test]
    fn sums_and_mixed_volumes() {
        let e1 = poly(&[&[0, 0], &[1, 0]]);
        let e2 = poly(&[&[0, 0], &[0, 1]]);
        let sq = minkowski_sum(&e1, &e2).unwrap();
        assert_eq!(sq, poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]));
        assert_eq!(mixed_volume(&[e1.clone(), e2.clone()]).unwrap(), int(1));
        assert_eq!(mixed_volume(&[sq.clone(), sq.clone()]).unwrap(), int(2));
        let tri = poly(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(mixed_volume(&[tri.clone(), tri]).unwrap(), int(1));
        let u = poly(&[&[0], &[1]]);
        assert_eq!(minkowski_sum(&u, &u).unwrap(), poly(&[&[0], &[2]]));
        assert!(matches!(
            minkowski_sum(&u, &sq),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
