//! Integer lattices: Smith and Hermite normal forms, kernels, saturation,
//! indices, covolumes and l1 successive minima.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactnum::Rational;
use crate::linalg::{det, rank};
use crate::{Error, Result};

/// A rectangular matrix of big integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Vec<BigInt>>) -> Self {
        assert_eq!(data.len(), rows);
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix { rows, cols, data }
    }

    pub fn from_rows(cols: usize, data: Vec<Vec<BigInt>>) -> Self {
        Self::new(data.len(), cols, data)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![vec![BigInt::zero(); cols]; rows])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i]
    }

    pub fn data(&self) -> &[Vec<BigInt>] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn transpose(&self) -> Self {
        Self::new(
            self.cols,
            self.rows,
            (0..self.cols)
                .map(|j| (0..self.rows).map(|i| self.data[i][j].clone()).collect())
                .collect(),
        )
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let data = self
            .data
            .iter()
            .map(|r| {
                (0..other.cols)
                    .map(|j| (0..self.cols).map(|k| &r[k] * &other.data[k][j]).sum())
                    .collect()
            })
            .collect();
        IntMatrix::new(self.rows, other.cols, data)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.data
            .iter()
            .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn to_rational(&self) -> Vec<Vec<Rational>> {
        self.data
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| Rational::from_integer(x.clone()))
                    .collect()
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.data.swap(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in &mut self.data {
            r.swap(a, b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        let s = self.data[src].clone();
        for (x, y) in self.data[dst].iter_mut().zip(&s) {
            *x += k * y;
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for r in &mut self.data {
            let y = r[src].clone();
            r[dst] += k * y;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.data[i] {
            *x = -x.clone();
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.data {
            writeln!(f, "{}", format_vec(r))?;
        }
        Ok(())
    }
}

/// `(a, b, c)`
pub fn format_vec(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Smith normal form: returns `(U, D, V)` with `U M V = D`, `U`, `V`
/// unimodular and `D` diagonal with nonnegative entries `d1 | d2 | ...`.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let (r, c) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    for t in 0..r.min(c) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    if !d.data[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| d.data[i][j].abs() < d.data[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((i, j)) = best else {
                return (u, d, v);
            };
            d.swap_rows(t, i);
            u.swap_rows(t, i);
            d.swap_cols(t, j);
            v.swap_cols(t, j);
            let mut clean = true;
            for i in t + 1..r {
                let q = d.data[i][t].div_floor(&d.data[t][t]);
                d.add_row(i, t, &-q.clone());
                u.add_row(i, t, &-q);
                clean &= d.data[i][t].is_zero();
            }
            for j in t + 1..c {
                let q = d.data[t][j].div_floor(&d.data[t][t]);
                d.add_col(j, t, &-q.clone());
                v.add_col(j, t, &-q);
                clean &= d.data[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let piv = d.data[t][t].clone();
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !d.data[i][j].is_multiple_of(&piv)));
            match bad {
                Some(i) => {
                    d.add_row(t, i, &BigInt::one());
                    u.add_row(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d.data[t][t].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    (u, d, v)
}

/// Row Hermite normal form of the row lattice: independent rows in echelon
/// form, positive pivots, entries above each pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..a.rows {
                if !a.data[i][c].is_zero()
                    && best.is_none_or(|b| a.data[i][c].abs() < a.data[b][c].abs())
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            a.swap_rows(r, b);
            let mut clean = true;
            for i in r + 1..a.rows {
                let q = a.data[i][c].div_floor(&a.data[r][c]);
                a.add_row(i, r, &-q);
                clean &= a.data[i][c].is_zero();
            }
            if clean {
                break;
            }
        }
        if r < a.rows && !a.data[r][c].is_zero() {
            if a.data[r][c].is_negative() {
                a.negate_row(r);
            }
            for i in 0..r {
                let q = a.data[i][c].div_floor(&a.data[r][c]);
                a.add_row(i, r, &-q);
            }
            pivots.push(c);
            r += 1;
        }
    }
    a.data.truncate(r);
    a.rows = r;
    a
}

/// Integer kernel `{x : M x = 0}`.
pub fn integer_kernel(m: &IntMatrix) -> Lattice {
    let (_, d, v) = smith_normal_form(m);
    let r = (0..d.rows.min(d.cols))
        .take_while(|&i| !d.data[i][i].is_zero())
        .count();
    let gens = (r..m.cols)
        .map(|j| (0..m.cols).map(|i| v.data[i][j].clone()).collect())
        .collect();
    Lattice::new(m.cols, gens)
}

/// Index of one lattice in another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(BigInt),
    Infinite,
}

impl fmt::Display for LatticeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeIndex::Finite(k) => write!(f, "{k}"),
            LatticeIndex::Infinite => write!(f, "infinite"),
        }
    }
}

/// A subgroup of Z^dim, stored by its Hermite basis (so equal lattices
/// compare equal).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Vec<BigInt>>,
}

impl Lattice {
    /// The lattice generated by arbitrary integer vectors.
    pub fn new(dim: usize, generators: Vec<Vec<BigInt>>) -> Self {
        let h = hermite_normal_form(&IntMatrix::from_rows(dim, generators));
        Lattice { dim, basis: h.data }
    }

    pub fn from_i64(dim: usize, generators: &[&[i64]]) -> Self {
        Self::new(
            dim,
            generators
                .iter()
                .map(|g| g.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn full(dim: usize) -> Self {
        Lattice {
            dim,
            basis: IntMatrix::identity(dim).data,
        }
    }

    pub fn zero(dim: usize) -> Self {
        Lattice {
            dim,
            basis: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(self.dim, self.basis.clone())
    }

    /// Coordinates of v in the basis if v lies in the rational span.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<Rational>> {
        let mut rest: Vec<Rational> = v
            .iter()
            .map(|x| Rational::from_integer(x.clone()))
            .collect();
        let mut coords = Vec::with_capacity(self.rank());
        for row in &self.basis {
            let p = row
                .iter()
                .position(|x| !x.is_zero())
                .expect("nonzero basis row");
            let c = &rest[p] / Rational::from_integer(row[p].clone());
            for (r, b) in rest.iter_mut().zip(row) {
                *r -= &c * Rational::from_integer(b.clone());
            }
            coords.push(c);
        }
        rest.iter().all(|x| x.is_zero()).then_some(coords)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v)
            .is_some_and(|c| c.iter().all(|x| x.is_integer()))
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    pub fn orthogonal_complement(&self) -> Lattice {
        if self.basis.is_empty() {
            return Lattice::full(self.dim);
        }
        integer_kernel(&self.basis_matrix())
    }

    pub fn saturate(&self) -> Lattice {
        self.orthogonal_complement().orthogonal_complement()
    }

    pub fn is_saturated(&self) -> bool {
        lattice_index(self, &self.saturate()) == Ok(LatticeIndex::Finite(BigInt::one()))
    }

    pub fn covolume_sq(&self) -> Result<Rational> {
        covolume_sq(self)
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        let mut gens = self.basis.clone();
        gens.extend(other.basis.iter().cloned());
        Lattice::new(self.dim, gens)
    }
}

pub fn saturate(l: &Lattice) -> Lattice {
    l.saturate()
}

pub fn is_saturated(l: &Lattice) -> bool {
    l.is_saturated()
}

pub fn orthogonal_complement(l: &Lattice) -> Lattice {
    l.orthogonal_complement()
}

/// `[sup : sub]`.
pub fn lattice_index(sub: &Lattice, sup: &Lattice) -> Result<LatticeIndex> {
    if sub.dim != sup.dim {
        return Err(Error::DimensionMismatch {
            expected: sup.dim,
            found: sub.dim,
        });
    }
    let mut coords = Vec::new();
    for b in &sub.basis {
        match sup.coordinates(b) {
            Some(c) if c.iter().all(|x| x.is_integer()) => coords.push(c),
            _ => return Err(Error::NotASublattice),
        }
    }
    if sub.rank() != sup.rank() {
        return Ok(LatticeIndex::Infinite);
    }
    let d = det(&coords);
    Ok(LatticeIndex::Finite(d.abs().to_integer()))
}

/// Gram determinant of a basis, the squared covolume.
pub fn covolume_sq(l: &Lattice) -> Result<Rational> {
    if l.rank() == 0 {
        return Err(Error::ZeroRank);
    }
    let b = l.basis_matrix();
    let g = b.mul(&b.transpose());
    Ok(det(&g.to_rational()))
}

pub fn l1_norm(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).sum()
}

fn gram_schmidt(b: &[Vec<BigInt>]) -> (Vec<Rational>, Vec<Vec<Rational>>) {
    let r = b.len();
    let rows: Vec<Vec<Rational>> = b
        .iter()
        .map(|v| {
            v.iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let dot =
        |u: &[Rational], v: &[Rational]| -> Rational { u.iter().zip(v).map(|(a, b)| a * b).sum() };
    let mut star: Vec<Vec<Rational>> = Vec::with_capacity(r);
    let mut norms: Vec<Rational> = Vec::with_capacity(r);
    let mut mu = vec![vec![Rational::zero(); r]; r];
    for i in 0..r {
        let mut v = rows[i].clone();
        for j in 0..i {
            mu[i][j] = dot(&rows[i], &star[j]) / &norms[j];
            for (x, y) in v.iter_mut().zip(&star[j]) {
                *x -= &mu[i][j] * y;
            }
        }
        norms.push(dot(&v, &v));
        star.push(v);
    }
    (norms, mu)
}

/// LLL-reduced basis (delta = 3/4) of the lattice spanned by the
/// independent rows `b`.
pub fn lll_reduce(b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut b = b.to_vec();
    let r = b.len();
    let delta = Rational::new(3.into(), 4.into());
    let mut k = 1;
    while k < r {
        for j in (0..k).rev() {
            let (_, mu) = gram_schmidt(&b);
            let q = mu[k][j].round().to_integer();
            if !q.is_zero() {
                let bj = b[j].clone();
                for (x, y) in b[k].iter_mut().zip(&bj) {
                    *x -= &q * y;
                }
            }
        }
        let (norms, mu) = gram_schmidt(&b);
        let m = &mu[k][k - 1];
        if norms[k] >= (&delta - m * m) * &norms[k - 1] {
            k += 1;
        } else {
            b.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    b
}

/// All nonzero lattice vectors with squared Euclidean length at most `r2`,
/// one of each pair `±v` (first nonzero entry positive).
pub fn short_vectors(l: &Lattice, r2: &Rational) -> Vec<Vec<BigInt>> {
    let r = l.rank();
    let b = IntMatrix::from_rows(l.dim, lll_reduce(&l.basis));
    let g = b.mul(&b.transpose()).to_rational();
    // q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2
    let mut q = g.clone();
    for i in 0..r {
        for j in i + 1..r {
            q[j][i] = q[i][j].clone();
            q[i][j] = &q[i][j] / &q[i][i];
        }
        for k in i + 1..r {
            for l2 in k..r {
                let t = &q[k][i] * &q[i][l2];
                q[k][l2] -= t;
            }
        }
    }
    let mut out = Vec::new();
    let mut x = vec![BigInt::zero(); r];
    if r > 0 {
        enumerate(&q, r - 1, r2.clone(), &mut x, &mut |x| {
            if x.iter().all(|c| c.is_zero()) {
                return;
            }
            let v: Vec<BigInt> = (0..l.dim)
                .map(|j| (0..r).map(|i| &x[i] * &b.data[i][j]).sum())
                .collect();
            if v.iter()
                .find(|c| !c.is_zero())
                .is_some_and(|c| c.is_positive())
            {
                out.push(v);
            }
        });
    }
    out
}

fn isqrt_floor(t: &Rational) -> BigInt {
    // floor(sqrt(t)) for t >= 0
    let f = t.floor().to_integer();
    if f.is_negative() {
        return BigInt::zero();
    }
    f.sqrt()
}

fn enumerate(
    q: &[Vec<Rational>],
    i: usize,
    budget: Rational,
    x: &mut Vec<BigInt>,
    visit: &mut dyn FnMut(&[BigInt]),
) {
    let r = q.len();
    let center: Rational = (i + 1..r)
        .map(|j| &q[i][j] * Rational::from_integer(x[j].clone()))
        .sum();
    let t = &budget / &q[i][i];
    let s: BigInt = isqrt_floor(&t) + 1;
    let lo: BigInt = (-&center).floor().to_integer() - &s;
    let hi: BigInt = (-&center).ceil().to_integer() + &s;
    let mut xi = lo;
    while xi <= hi {
        let y = Rational::from_integer(xi.clone()) + &center;
        let used = &q[i][i] * &y * &y;
        if used <= budget {
            x[i] = xi.clone();
            if i == 0 {
                visit(x);
            } else {
                enumerate(q, i - 1, &budget - &used, x, visit);
            }
        }
        xi += 1;
    }
    x[i] = BigInt::zero();
}

/// The first k successive minima for the l1 norm, with independent witnesses.
///
/// Every vector of l1 norm at most R lies in the Euclidean ball of radius R,
/// so enumerating that ball and sorting by (l1 norm, lexicographic) is
/// exhaustive; R doubles until k independent vectors appear.
pub fn successive_minima_l1(l: &Lattice, k: usize) -> Result<Vec<(Rational, Vec<BigInt>)>> {
    if k > l.rank() || k == 0 {
        return Err(Error::RankExceeded {
            requested: k,
            rank: l.rank(),
        });
    }
    let mut radius = lll_reduce(&l.basis)
        .iter()
        .map(|b| l1_norm(b))
        .min()
        .expect("rank >= 1");
    loop {
        let r2 = Rational::from_integer(&radius * &radius);
        let mut cands: Vec<(BigInt, Vec<BigInt>)> = short_vectors(l, &r2)
            .into_iter()
            .map(|v| (l1_norm(&v), v))
            .filter(|(n, _)| n <= &radius)
            .collect();
        cands.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        let mut chosen: Vec<(Rational, Vec<BigInt>)> = Vec::new();
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for (n, v) in cands {
            rows.push(
                v.iter()
                    .map(|x| Rational::from_integer(x.clone()))
                    .collect(),
            );
            if rank(&rows) == rows.len() {
                chosen.push((Rational::from_integer(n), v));
                if chosen.len() == k {
                    return Ok(chosen);
                }
            } else {
                rows.pop();
            }
        }
        radius *= 2;
    }
}

/// Convert an index vector of i64 to BigInt.
pub fn ivec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Euclidean `<u, v>`.
pub fn idot(u: &[BigInt], v: &[BigInt]) -> BigInt {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// gcd of all entries (0 for the zero vector).
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Compare vectors by (l1 norm, lex).
pub fn l1_lex_cmp(a: &[BigInt], b: &[BigInt]) -> Ordering {
    l1_norm(a).cmp(&l1_norm(b)).then_with(|| a.cmp(b))
}
