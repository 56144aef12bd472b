//! Upper envelopes of lifted point sets by gift wrapping, and facets of
//! full-dimensional rational point sets built on top of them.
//!
//! The lift is generic: the only operations needed on lifted values are
//! rational linear combinations and a certified sign, so the same engine
//! serves rational hulls and log-linear roofs.

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};
use std::fmt::Debug;

use num_traits::{One, Signed, Zero};

use crate::exactnum::{LogLinear, Rational};
use crate::linalg::{affine_dim, affinely_independent_subset, dot, inverse, AffineFrame};
use crate::Result;

/// Values that can sit in the lifted coordinate.
pub trait Lift: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, c: &Rational) -> Self;
    fn signum(&self) -> Result<Ordering>;
}

impl Lift for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, c: &Rational) -> Self {
        self * c
    }
    fn signum(&self) -> Result<Ordering> {
        Ok(Ord::cmp(self, &<Rational as Zero>::zero()))
    }
}

impl Lift for LogLinear {
    fn zero() -> Self {
        LogLinear::zero()
    }
    fn from_rational(r: &Rational) -> Self {
        LogLinear::from_rational(r.clone())
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, c: &Rational) -> Self {
        self.scale(c)
    }
    fn signum(&self) -> Result<Ordering> {
        self.sign()
    }
}

/// An affine function `x -> <grad, x> + constant` with lifted values.
#[derive(Clone, Debug, PartialEq)]
pub struct Affine<T> {
    pub grad: Vec<T>,
    pub constant: T,
}

impl<T: Lift> Affine<T> {
    pub fn eval(&self, x: &[Rational]) -> T {
        self.grad
            .iter()
            .zip(x)
            .fold(self.constant.clone(), |acc, (g, xi)| acc.plus(&g.times(xi)))
    }

    /// The affine function through `(p_j, t_j)` for n+1 affinely independent p_j.
    pub fn through(points: &[&[Rational]], values: &[&T]) -> Option<Affine<T>> {
        let n = points.len() - 1;
        let m: Vec<Vec<Rational>> = points
            .iter()
            .map(|p| {
                let mut r = p.to_vec();
                r.push(Rational::one());
                r
            })
            .collect();
        let inv = inverse(&m)?;
        let coeffs: Vec<T> = inv
            .iter()
            .map(|row| {
                row.iter()
                    .zip(values)
                    .fold(T::zero(), |acc, (c, v)| acc.plus(&v.times(c)))
            })
            .collect();
        Some(Affine {
            grad: coeffs[..n].to_vec(),
            constant: coeffs[n].clone(),
        })
    }
}

/// A top-dimensional cell of an upper envelope: every point whose lift lies
/// on the affine piece.
#[derive(Clone, Debug, PartialEq)]
pub struct EnvelopeCell<T> {
    pub points: Vec<usize>,
    pub affine: Affine<T>,
}

/// A facet of a full-dimensional point set: `<x, normal> + offset >= 0`,
/// with equality exactly on `points`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullFacet {
    pub normal: Vec<Rational>,
    pub offset: Rational,
    pub points: Vec<usize>,
}

impl HullFacet {
    pub fn value(&self, x: &[Rational]) -> Rational {
        dot(&self.normal, x) + &self.offset
    }
}

fn refs(points: &[Vec<Rational>], idx: &[usize]) -> Vec<Vec<Rational>> {
    idx.iter().map(|&i| points[i].clone()).collect()
}

fn as_slices(points: &[Vec<Rational>]) -> Vec<&[Rational]> {
    points.iter().map(|p| p.as_slice()).collect()
}

/// Upper envelope of `(base_i, lifts_i)`. The base points must affinely
/// span R^n. Cells come back sorted by their point sets.
pub fn upper_envelope<T: Lift>(
    base: &[Vec<Rational>],
    lifts: &[T],
) -> Result<Vec<EnvelopeCell<T>>> {
    envelope(base, lifts, false)
}

fn argmax<T: Lift>(lifts: &[T], idx: impl Iterator<Item = usize>) -> Result<(T, Vec<usize>)> {
    let mut best: Option<(T, Vec<usize>)> = None;
    for i in idx {
        best = match best {
            None => Some((lifts[i].clone(), vec![i])),
            Some((b, mut set)) => match lifts[i].minus(&b).signum()? {
                Ordering::Greater => Some((lifts[i].clone(), vec![i])),
                Ordering::Equal => {
                    set.push(i);
                    Some((b, set))
                }
                Ordering::Less => Some((b, set)),
            },
        };
    }
    Ok(best.expect("nonempty point set"))
}

fn envelope<T: Lift>(
    base: &[Vec<Rational>],
    lifts: &[T],
    first_only: bool,
) -> Result<Vec<EnvelopeCell<T>>> {
    assert_eq!(base.len(), lifts.len());
    let n = base[0].len();
    if n == 0 {
        let (max, points) = argmax(lifts, 0..base.len())?;
        return Ok(vec![EnvelopeCell {
            points,
            affine: Affine {
                grad: vec![],
                constant: max,
            },
        }]);
    }

    // Start from a cell of the envelope restricted to a facet of the base.
    let f0 = one_facet(base);
    let on_f0: Vec<usize> = (0..base.len())
        .filter(|&i| f0.value(&base[i]).is_zero())
        .collect();
    let face_pts = refs(base, &on_f0);
    let frame = AffineFrame::of(&as_slices(&face_pts));
    let face_base: Vec<Vec<Rational>> = face_pts.iter().map(|p| frame.project(p)).collect();
    let face_lifts: Vec<T> = on_f0.iter().map(|&i| lifts[i].clone()).collect();
    let face_cell = envelope(&face_base, &face_lifts, true)?.remove(0);
    let ridge: Vec<usize> = face_cell.points.iter().map(|&j| on_f0[j]).collect();
    let far: Vec<usize> = (0..base.len())
        .filter(|&i| f0.value(&base[i]).is_positive())
        .collect();
    let first = rotate(base, lifts, &ridge, &far)?;

    let mut cells = vec![first.clone()];
    if first_only {
        return Ok(cells);
    }
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([first.points.clone()]);
    let mut queue = VecDeque::from([first]);
    while let Some(cell) = queue.pop_front() {
        for (facet_pts, facet) in cell_ridges(base, &cell.points) {
            let far: Vec<usize> = (0..base.len())
                .filter(|&i| facet.value(&base[i]).is_negative())
                .collect();
            if far.is_empty() {
                continue; // wall
            }
            let next = rotate(base, lifts, &facet_pts, &far)?;
            if seen.insert(next.points.clone()) {
                cells.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    cells.sort_by(|a, b| a.points.cmp(&b.points));
    Ok(cells)
}

/// Rotate the supporting hyperplane about a lifted ridge towards `far`.
fn rotate<T: Lift>(
    base: &[Vec<Rational>],
    lifts: &[T],
    ridge: &[usize],
    far: &[usize],
) -> Result<EnvelopeCell<T>> {
    let ridge_pts = refs(base, ridge);
    let sel: Vec<usize> = affinely_independent_subset(&as_slices(&ridge_pts))
        .into_iter()
        .map(|j| ridge[j])
        .collect();
    let solve = |c: usize| {
        let mut idx = sel.clone();
        idx.push(c);
        let pts: Vec<&[Rational]> = idx.iter().map(|&i| base[i].as_slice()).collect();
        let vals: Vec<&T> = idx.iter().map(|&i| &lifts[i]).collect();
        Affine::through(&pts, &vals).expect("ridge plus far point is a simplex")
    };
    let mut g = solve(far[0]);
    for &q in &far[1..] {
        if lifts[q].minus(&g.eval(&base[q])).signum()? == Ordering::Greater {
            g = solve(q);
        }
    }
    let points = (0..base.len())
        .filter(|&i| g.eval(&base[i]) == lifts[i])
        .collect();
    Ok(EnvelopeCell { points, affine: g })
}

/// Facets of a cell's base polytope, with the cell points on each.
fn cell_ridges(base: &[Vec<Rational>], cell: &[usize]) -> Vec<(Vec<usize>, HullFacet)> {
    let pts = refs(base, cell);
    let n = base[0].len();
    if cell.len() == n + 1 {
        // simplex: barycentric coordinates give the facet inequalities
        let m: Vec<Vec<Rational>> = pts
            .iter()
            .map(|p| {
                let mut r = p.clone();
                r.push(Rational::one());
                r
            })
            .collect();
        let inv = inverse(&m).expect("simplex cell");
        return (0..=n)
            .map(|j| {
                let normal: Vec<Rational> = (0..n).map(|r| inv[r][j].clone()).collect();
                let offset = inv[n][j].clone();
                let ridge: Vec<usize> = cell
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, &i)| i)
                    .collect();
                let points = (0..=n).filter(|&k| k != j).collect();
                (
                    ridge,
                    HullFacet {
                        normal,
                        offset,
                        points,
                    },
                )
            })
            .collect();
    }
    hull_facets(&pts)
        .into_iter()
        .map(|f| (f.points.iter().map(|&k| cell[k]).collect(), f))
        .collect()
}

/// Some facet of a full-dimensional point set.
fn one_facet(points: &[Vec<Rational>]) -> HullFacet {
    let d = points[0].len();
    if d == 1 {
        let min = points.iter().map(|p| &p[0]).min().unwrap().clone();
        let pts = (0..points.len()).filter(|&i| points[i][0] == min).collect();
        return HullFacet {
            normal: vec![Rational::one()],
            offset: -min,
            points: pts,
        };
    }
    let proj: Vec<Vec<Rational>> = points.iter().map(|p| p[..d - 1].to_vec()).collect();
    let last: Vec<Rational> = points.iter().map(|p| p[d - 1].clone()).collect();
    let cell = envelope(&proj, &last, true)
        .expect("rational signs are certain")
        .remove(0);
    upper_facet(cell)
}

fn upper_facet(cell: EnvelopeCell<Rational>) -> HullFacet {
    let mut normal = cell.affine.grad;
    normal.push(-Rational::one());
    HullFacet {
        normal,
        offset: cell.affine.constant,
        points: cell.points,
    }
}

/// All facets of a full-dimensional point set in R^d (d >= 1), sorted by
/// their incident point sets.
pub fn hull_facets(points: &[Vec<Rational>]) -> Vec<HullFacet> {
    let d = points[0].len();
    assert!(d >= 1);
    if d == 1 {
        let lo = points.iter().map(|p| &p[0]).min().unwrap().clone();
        let hi = points.iter().map(|p| &p[0]).max().unwrap().clone();
        let at = |v: &Rational| (0..points.len()).filter(|&i| &points[i][0] == v).collect();
        let mut out = vec![
            HullFacet {
                normal: vec![Rational::one()],
                offset: -lo.clone(),
                points: at(&lo),
            },
            HullFacet {
                normal: vec![-Rational::one()],
                offset: hi.clone(),
                points: at(&hi),
            },
        ];
        out.sort_by(|a, b| a.points.cmp(&b.points));
        return out;
    }
    let proj: Vec<Vec<Rational>> = points.iter().map(|p| p[..d - 1].to_vec()).collect();
    let last: Vec<Rational> = points.iter().map(|p| p[d - 1].clone()).collect();
    let neg: Vec<Rational> = last.iter().map(|x| -x).collect();
    let mut out: Vec<HullFacet> = Vec::new();
    for cell in upper_envelope(&proj, &last).expect("rational signs are certain") {
        out.push(upper_facet(cell));
    }
    for cell in upper_envelope(&proj, &neg).expect("rational signs are certain") {
        let mut normal = cell.affine.grad;
        normal.push(Rational::one());
        out.push(HullFacet {
            normal,
            offset: cell.affine.constant,
            points: cell.points,
        });
    }
    for g in hull_facets(&proj) {
        let pts = refs(points, &g.points);
        if affine_dim(&as_slices(&pts)) == Some(d - 1) {
            let mut normal = g.normal;
            normal.push(<Rational as Zero>::zero());
            out.push(HullFacet {
                normal,
                offset: g.offset,
                points: g.points,
            });
        }
    }
    out.sort_by(|a, b| a.points.cmp(&b.points));
    out
}
