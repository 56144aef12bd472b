//! Dense rational linear algebra on row-major `Vec<Vec<Rational>>`.

use num_traits::{One, Zero};

use crate::exactnum::Rational;

pub type RatMatrix = Vec<Vec<Rational>>;

/// Reduced row echelon form and pivot columns.
pub fn rref(m: &[Vec<Rational>]) -> (RatMatrix, Vec<usize>) {
    let mut a: RatMatrix = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank(m: &[Vec<Rational>]) -> usize {
    rref(m).1.len()
}

pub fn det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a: RatMatrix = m.to_vec();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        let inv = a[c][c].recip();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..n {
                let t = &f * &a[c][j];
                a[i][j] -= t;
            }
        }
    }
    d
}

pub fn inverse(m: &[Vec<Rational>]) -> Option<RatMatrix> {
    let n = m.len();
    let aug: RatMatrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    let (red, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn transpose(m: &[Vec<Rational>]) -> RatMatrix {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols)
        .map(|j| m.iter().map(|r| r[j].clone()).collect())
        .collect()
}

pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> RatMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Gram determinant of the rows.
pub fn gram_det(rows: &[Vec<Rational>]) -> Rational {
    if rows.is_empty() {
        return Rational::one();
    }
    det(&mat_mul(rows, &transpose(rows)))
}

/// Dimension of the affine span of the points (`None` for an empty set).
pub fn affine_dim(points: &[&[Rational]]) -> Option<usize> {
    let first = points.first()?;
    let diffs: RatMatrix = points[1..].iter().map(|p| sub(p, first)).collect();
    Some(rank(&diffs))
}

/// Greedy choice (in order) of an affinely independent subset of maximal size.
pub fn affinely_independent_subset(points: &[&[Rational]]) -> Vec<usize> {
    let Some(first) = points.first() else {
        return Vec::new();
    };
    let mut chosen = vec![0];
    let mut rows: RatMatrix = Vec::new();
    for (i, p) in points.iter().enumerate().skip(1) {
        rows.push(sub(p, first));
        if rank(&rows) == rows.len() {
            chosen.push(i);
        } else {
            rows.pop();
        }
    }
    chosen
}

/// Affine coordinates on the span of a point set: `x = origin + sum y_j basis_j`
/// with `y_j = x[pivot_j] - origin[pivot_j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineFrame {
    pub origin: Vec<Rational>,
    pub pivots: Vec<usize>,
    pub basis: RatMatrix,
}

impl AffineFrame {
    pub fn of(points: &[&[Rational]]) -> AffineFrame {
        let origin = points[0].to_vec();
        let diffs: RatMatrix = points[1..].iter().map(|p| sub(p, &origin)).collect();
        let (basis, pivots) = rref(&diffs);
        AffineFrame {
            origin,
            pivots,
            basis,
        }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient(&self) -> usize {
        self.origin.len()
    }

    pub fn is_identity(&self) -> bool {
        self.dim() == self.ambient() && self.origin.iter().all(|x| x.is_zero())
    }

    pub fn project(&self, x: &[Rational]) -> Vec<Rational> {
        self.pivots
            .iter()
            .map(|&j| &x[j] - &self.origin[j])
            .collect()
    }

    pub fn lift(&self, y: &[Rational]) -> Vec<Rational> {
        let mut x = self.origin.clone();
        for (c, row) in y.iter().zip(&self.basis) {
            for (xi, bi) in x.iter_mut().zip(row) {
                *xi += c * bi;
            }
        }
        x
    }

    /// Whether x lies in the affine span.
    pub fn contains(&self, x: &[Rational]) -> bool {
        self.lift(&self.project(x)) == x
    }

    /// Squared ratio between intrinsic volume and volume in frame coordinates.
    pub fn volume_factor_sq(&self) -> Rational {
        gram_det(&self.basis)
    }
}
