//! Roof functions: concave piecewise-affine upper envelopes of lifted point
//! sets, their integrals, sup-convolutions and mixed integrals.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exactnum::{factorial, format_rational, LogLinear, Rational};
use crate::hull::{upper_envelope, Affine};
use crate::linalg::{det, sub, AffineFrame};
use crate::polytope::{primitive, subset_sums, triangulate, Polytope};
use crate::{Error, Result};

/// A top-dimensional cell of the regular subdivision induced by a lift.
#[derive(Clone, Debug, PartialEq)]
pub struct RoofCell {
    /// every input point whose lift lies on the pan
    pub points: Vec<usize>,
    /// vertices of the cell polytope
    pub vertices: Vec<usize>,
    /// gradient in the coordinates of the domain frame
    pub grad: Vec<LogLinear>,
    pub constant: LogLinear,
    /// primitive `(v_P, w_P)` proportional to `(grad, -1)`, for rational lifts
    pub pan_normal: Option<(Vec<BigInt>, BigInt)>,
}

impl RoofCell {
    fn affine(&self) -> Affine<LogLinear> {
        Affine {
            grad: self.grad.clone(),
            constant: self.constant.clone(),
        }
    }
}

/// The roof of `(a_i, tau_i)` over `Conv(a_i)`.
#[derive(Clone, Debug)]
pub struct RoofFunction {
    points: Vec<Vec<Rational>>,
    lifts: Vec<LogLinear>,
    frame: AffineFrame,
    cells: Vec<RoofCell>,
}

fn identity_frame(n: usize) -> AffineFrame {
    AffineFrame {
        origin: vec![Rational::zero(); n],
        pivots: (0..n).collect(),
        basis: (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect()
            })
            .collect(),
    }
}

impl RoofFunction {
    pub fn new(points: Vec<Vec<Rational>>, lifts: Vec<LogLinear>) -> Result<RoofFunction> {
        if points.is_empty() {
            return Err(Error::InvalidInput("roof of an empty point set".into()));
        }
        if points.len() != lifts.len() {
            return Err(Error::DimensionMismatch {
                expected: points.len(),
                found: lifts.len(),
            });
        }
        let n = points[0].len();
        if let Some(p) = points.iter().find(|p| p.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.len(),
            });
        }
        let refs: Vec<&[Rational]> = points.iter().map(|p| p.as_slice()).collect();
        let mut frame = AffineFrame::of(&refs);
        if frame.dim() == n {
            frame = identity_frame(n);
        }
        let proj: Vec<Vec<Rational>> = points.iter().map(|p| frame.project(p)).collect();
        let cells = upper_envelope(&proj, &lifts)?
            .into_iter()
            .map(|c| {
                let cell_pts: Vec<Vec<Rational>> =
                    c.points.iter().map(|&i| proj[i].clone()).collect();
                let vertices = if frame.dim() == 0 {
                    vec![c.points[0]]
                } else {
                    let poly = Polytope::convex_hull(cell_pts).expect("nonempty cell");
                    poly.vertex_indices().iter().map(|&k| c.points[k]).collect()
                };
                let rational_grad: Option<Vec<Rational>> = c
                    .affine
                    .grad
                    .iter()
                    .map(|g| g.as_rational().cloned())
                    .collect();
                let pan_normal = rational_grad.map(|mut g| {
                    g.push(-Rational::one());
                    let (mut v, _) = primitive(&g);
                    let w = v.pop().unwrap();
                    (v, w)
                });
                RoofCell {
                    points: c.points,
                    vertices,
                    grad: c.affine.grad,
                    constant: c.affine.constant,
                    pan_normal,
                }
            })
            .collect();
        Ok(RoofFunction {
            points,
            lifts,
            frame,
            cells,
        })
    }

    pub fn from_integer_points(
        points: &[Vec<BigInt>],
        lifts: Vec<LogLinear>,
    ) -> Result<RoofFunction> {
        Self::new(crate::polytope::to_rational_points(points), lifts)
    }

    pub fn ambient_dim(&self) -> usize {
        self.frame.ambient()
    }

    pub fn domain_dim(&self) -> usize {
        self.frame.dim()
    }

    pub fn frame(&self) -> &AffineFrame {
        &self.frame
    }

    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }

    pub fn lifts(&self) -> &[LogLinear] {
        &self.lifts
    }

    pub fn cells(&self) -> &[RoofCell] {
        &self.cells
    }

    pub fn domain(&self) -> Polytope {
        Polytope::convex_hull(self.points.clone()).expect("nonempty")
    }

    /// Indices of points whose lift lies on the roof.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self
            .cells
            .iter()
            .flat_map(|c| c.points.iter().copied())
            .collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Value at a point of the domain: the least of the cell functions.
    pub fn eval(&self, x: &[Rational]) -> Result<LogLinear> {
        let y = self.frame.project(x);
        let values: Vec<LogLinear> = self.cells.iter().map(|c| c.affine().eval(&y)).collect();
        Ok(LogLinear::min_of(&values)?.expect("at least one cell"))
    }

    /// Whether the roof is identically zero.
    pub fn is_zero(&self) -> bool {
        self.cells
            .iter()
            .all(|c| c.constant.is_zero() && c.grad.iter().all(|g| g.is_zero()))
    }

    /// Integral in the coordinates of the domain frame (counting measure in
    /// dimension 0).
    pub fn frame_integral(&self) -> LogLinear {
        let k = self.domain_dim();
        let proj: Vec<Vec<Rational>> = self.points.iter().map(|p| self.frame.project(p)).collect();
        let kfact = Rational::from_integer(factorial(k));
        let mut total = LogLinear::zero();
        for cell in &self.cells {
            if k == 0 {
                total += &cell.constant;
                continue;
            }
            for s in triangulate(&proj, &cell.points) {
                let p0 = &proj[s[0]];
                let m: Vec<Vec<Rational>> = s[1..].iter().map(|&i| sub(&proj[i], p0)).collect();
                let vol = det(&m).abs() / &kfact;
                let mean = Rational::new(BigInt::one(), BigInt::from(k + 1));
                let lift_sum: LogLinear = s.iter().map(|&i| &self.lifts[i]).sum();
                total += lift_sum.scale(&(vol * mean));
            }
        }
        total
    }

    /// Integral against Lebesgue measure of the ambient space; zero when the
    /// domain is lower dimensional (and the value itself in dimension 0).
    pub fn integral(&self) -> LogLinear {
        if self.domain_dim() < self.ambient_dim() {
            return LogLinear::zero();
        }
        self.frame_integral()
    }

    /// Cells as CSV rows `cell,point,x_1,...,x_n,lift`.
    pub fn cells_csv(&self) -> String {
        let n = self.ambient_dim();
        let mut out = String::from("cell,point");
        for j in 1..=n {
            let _ = write!(out, ",x{j}");
        }
        out.push_str(",lift\n");
        for (c, cell) in self.cells.iter().enumerate() {
            for &i in &cell.points {
                let _ = write!(out, "{c},{i}");
                for x in &self.points[i] {
                    let _ = write!(out, ",{}", format_rational(x));
                }
                let _ = writeln!(out, ",{}", self.lifts[i]);
            }
        }
        out
    }
}

/// Roof of an exponent configuration with a weight vector.
pub fn roof(points: &[Vec<BigInt>], tau: &[LogLinear]) -> Result<RoofFunction> {
    RoofFunction::from_integer_points(points, tau.to_vec())
}

pub fn integrate_roof(f: &RoofFunction) -> LogLinear {
    f.integral()
}

/// `(f ⊞ g)(x) = sup { f(y) + g(z) : y + z = x }`, the roof of the lifted
/// Minkowski sum of the supports.
pub fn sup_convolution(f: &RoofFunction, g: &RoofFunction) -> Result<RoofFunction> {
    if f.ambient_dim() != g.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: f.ambient_dim(),
            found: g.ambient_dim(),
        });
    }
    let mut best: BTreeMap<Vec<Rational>, LogLinear> = BTreeMap::new();
    for i in f.support() {
        for j in g.support() {
            let x: Vec<Rational> = f.points[i]
                .iter()
                .zip(&g.points[j])
                .map(|(a, b)| a + b)
                .collect();
            let t = &f.lifts[i] + &g.lifts[j];
            match best.get(&x) {
                Some(old) if old.cmp_exact(&t)? != Ordering::Less => {}
                _ => {
                    best.insert(x, t);
                }
            }
        }
    }
    let (points, lifts): (Vec<_>, Vec<_>) = best.into_iter().unzip();
    RoofFunction::new(points, lifts)
}

/// Mixed integral of n+1 roofs over polytopes of R^n, by inclusion-exclusion
/// over the sup-convolutions of all subfamilies.
pub fn mixed_integral(fs: &[RoofFunction]) -> Result<LogLinear> {
    let Some(first) = fs.first() else {
        return Err(Error::InvalidInput("mixed integral of no functions".into()));
    };
    let n = first.ambient_dim();
    if fs.len() != n + 1 {
        return Err(Error::DimensionMismatch {
            expected: n + 1,
            found: fs.len(),
        });
    }
    if let Some(f) = fs.iter().find(|f| f.ambient_dim() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: f.ambient_dim(),
        });
    }
    let m = fs.len();
    let mut conv: Vec<Option<RoofFunction>> = vec![None; 1 << m];
    let mut total = LogLinear::zero();
    for mask in 1usize..(1 << m) {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let h = match &conv[rest] {
            None => fs[low].clone(),
            Some(r) => sup_convolution(r, &fs[low])?,
        };
        let sign = (m - mask.count_ones() as usize).is_multiple_of(2);
        let v = h.integral();
        if sign {
            total += v;
        } else {
            total -= v;
        }
        conv[mask] = Some(h);
    }
    Ok(total)
}

/// Mixed volume through the domains of roofs (a convenience for callers that
/// already hold roofs).
pub fn domains_mixed_volume(fs: &[RoofFunction]) -> Result<Rational> {
    let polys: Vec<Polytope> = fs.iter().map(|f| f.domain()).collect();
    let sums = subset_sums(&polys)?;
    let n = polys.len();
    let mut total = Rational::zero();
    for (mask, s) in sums.iter().enumerate().skip(1) {
        let v = s.as_ref().unwrap().ambient_volume();
        if (n - mask.count_ones() as usize).is_multiple_of(2) {
            total += v;
        } else {
            total -= v;
        }
    }
    Ok(total)
}

#[cfg(test)]
fn constant_roof(points: Vec<Vec<Rational>>, c: &Rational) -> Result<RoofFunction> {
    let lifts = vec![LogLinear::from_rational(c.clone()); points.len()];
    RoofFunction::new(points, lifts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    fn line(xs: &[i64]) -> Vec<Vec<Rational>> {
        xs.iter().map(|&x| vec![int(x)]).collect()
    }

    fn ll(s: &str) -> LogLinear {
        s.parse().unwrap()
    }

    #[test]
    fn tent_roof() {
        let f = RoofFunction::new(line(&[0, 1, 2]), vec![ll("0"), ll("1"), ll("0")]).unwrap();
        let sets: Vec<_> = f.cells().iter().map(|c| c.points.clone()).collect();
        assert_eq!(sets, vec![vec![0, 1], vec![1, 2]]);
        for (x, v) in [(0, "0"), (1, "1"), (2, "0")] {
            assert_eq!(f.eval(&[int(x)]).unwrap(), ll(v));
        }
        assert_eq!(f.integral(), ll("1"));
        assert_eq!(
            f.cells()[0].pan_normal,
            Some((vec![BigInt::from(1)], BigInt::from(-1)))
        );
        assert_eq!(
            f.cells()[1].pan_normal,
            Some((vec![BigInt::from(-1)], BigInt::from(-1)))
        );
    }

    #[test]
    fn flat_and_log_roofs() {
        let f = constant_roof(line(&[0, 1, 2]), &rat(5, 2)).unwrap();
        assert_eq!(f.cells().len(), 1);
        assert_eq!(f.integral(), ll("5"));
        let g = RoofFunction::new(line(&[0, 1, 2]), vec![ll("0"), ll("0"), ll("log(2)")]).unwrap();
        assert_eq!(g.cells().len(), 1);
        assert_eq!(g.cells()[0].points, vec![0, 2]);
        assert_eq!(g.integral(), ll("log(2)"));
        assert!(g.cells()[0].pan_normal.is_none());
    }

    #[test]
    fn sup_convolutions() {
        let z = constant_roof(line(&[0, 1]), &int(0)).unwrap();
        let zz = sup_convolution(&z, &z).unwrap();
        assert_eq!(zz.domain().vertices(), vec![&[int(0)][..], &[int(2)][..]]);
        assert!(zz.is_zero());
        let id = RoofFunction::new(line(&[0, 1]), vec![ll("0"), ll("1")]).unwrap();
        let idid = sup_convolution(&id, &id).unwrap();
        assert_eq!(idid.eval(&[rat(3, 2)]).unwrap(), ll("3/2"));
        let c = RoofFunction::new(line(&[0]), vec![ll("log(3)")]).unwrap();
        let shifted = sup_convolution(&id, &c).unwrap();
        assert_eq!(shifted.eval(&[rat(1, 2)]).unwrap(), ll("1/2 + log(3)"));
    }

    #[test]
    fn mixed_integrals() {
        let f = RoofFunction::new(vec![vec![]], vec![ll("log(5)")]).unwrap();
        assert_eq!(
            mixed_integral(std::slice::from_ref(&f)).unwrap(),
            f.integral()
        );
        let tent =
            RoofFunction::new(line(&[0, 1, 2]), vec![ll("0"), ll("log(2)"), ll("1/3")]).unwrap();
        let mi = mixed_integral(&[tent.clone(), tent.clone()]).unwrap();
        assert_eq!(mi, tent.integral().scale(&int(2)));
    }

    #[test]
    fn planar_roof() {
        let pts: Vec<Vec<Rational>> = [[0, 0], [2, 0], [0, 2], [2, 2], [1, 1]]
            .iter()
            .map(|p| p.iter().map(|&x| int(x)).collect())
            .collect();
        let f = RoofFunction::new(pts, vec![ll("0"), ll("0"), ll("0"), ll("0"), ll("1")]).unwrap();
        assert_eq!(f.cells().len(), 4);
        // pyramid of height 1 over a square of area 4
        assert_eq!(f.integral(), ll("4/3"));
    }

    #[test]
    fn csv_rows() {
        let f = RoofFunction::new(line(&[0, 1, 2]), vec![ll("0"), ll("1"), ll("0")]).unwrap();
        let csv = f.cells_csv();
        assert!(csv.starts_with("cell,point,x1,lift\n0,0,0,0\n0,1,1,1\n"));
    }
}
