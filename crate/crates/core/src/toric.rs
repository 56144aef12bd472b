//! Toric data `(A, alpha)`: degrees, multidegrees, binomial ideals,
//! obstruction indices and Plücker coordinates.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactnum::{binomial, factorial, pi_enclosure, precision_cap, AlgScalar, Rational};
use crate::lattice::{
    content, format_vec, integer_kernel, lattice_index, smith_normal_form, successive_minima_l1,
    IntMatrix, Lattice, LatticeIndex,
};
use crate::polytope::{mixed_volume, to_rational_points, Polytope};
use crate::{Error, Result};

/// An ordered configuration `A = (a_0, ..., a_N)` of points of Z^n.
#[derive(Clone, Debug)]
pub struct ExponentConfig {
    n: usize,
    points: Vec<Vec<BigInt>>,
    polytope: Polytope,
    kernel: Lattice,
    differences: Lattice,
}

impl PartialEq for ExponentConfig {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.points == other.points
    }
}

impl ExponentConfig {
    pub fn new(points: Vec<Vec<BigInt>>) -> Result<ExponentConfig> {
        let Some(first) = points.first() else {
            return Err(Error::InvalidInput("empty exponent configuration".into()));
        };
        let n = first.len();
        if let Some(p) = points.iter().find(|p| p.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.len(),
            });
        }
        Self::with_dim(n, points)
    }

    /// Like [`ExponentConfig::new`] but allows the torus dimension to be
    /// given explicitly (needed for n = 0).
    pub fn with_dim(n: usize, points: Vec<Vec<BigInt>>) -> Result<ExponentConfig> {
        if points.is_empty() {
            return Err(Error::InvalidInput("empty exponent configuration".into()));
        }
        if let Some(p) = points.iter().find(|p| p.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.len(),
            });
        }
        let polytope = Polytope::from_integer_points(&points)?;
        let mut eta = vec![vec![BigInt::one(); points.len()]];
        for i in 0..n {
            eta.push(points.iter().map(|p| p[i].clone()).collect());
        }
        let kernel = integer_kernel(&IntMatrix::from_rows(points.len(), eta));
        let differences = difference_lattice(n, &points);
        Ok(ExponentConfig {
            n,
            points,
            polytope,
            kernel,
            differences,
        })
    }

    pub fn from_i64(points: &[&[i64]]) -> Result<ExponentConfig> {
        Self::new(
            points
                .iter()
                .map(|p| p.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    /// Torus dimension (the ambient n of `Z^n`).
    pub fn n(&self) -> usize {
        self.n
    }

    /// N, so that there are N + 1 points.
    pub fn big_n(&self) -> usize {
        self.points.len() - 1
    }

    pub fn points(&self) -> &[Vec<BigInt>] {
        &self.points
    }

    pub fn polytope(&self) -> &Polytope {
        &self.polytope
    }

    /// `Gamma_A`, the integer relations among the columns `(1, a_i)`.
    pub fn kernel(&self) -> &Lattice {
        &self.kernel
    }

    /// `L_A`, generated by the differences `a_i - a_0`.
    pub fn differences(&self) -> &Lattice {
        &self.differences
    }

    /// Rank of `L_A` (the dimension of the toric variety).
    pub fn rank(&self) -> usize {
        self.differences.rank()
    }

    pub fn is_reduced(&self) -> bool {
        self.differences == Lattice::full(self.n)
    }

    /// Distinct points, in order of first appearance.
    pub fn support(&self) -> Vec<Vec<BigInt>> {
        let mut out: Vec<Vec<BigInt>> = Vec::new();
        for p in &self.points {
            if !out.contains(p) {
                out.push(p.clone());
            }
        }
        out
    }

    /// The sub-configuration of the listed indices.
    pub fn restrict(&self, idx: &[usize]) -> Result<ExponentConfig> {
        Self::with_dim(
            self.n,
            idx.iter().map(|&i| self.points[i].clone()).collect(),
        )
    }

    pub fn reduce_to_full_rank(&self) -> (ExponentConfig, LatticeMap) {
        reduce_to_full_rank(self)
    }
}

fn difference_lattice(n: usize, points: &[Vec<BigInt>]) -> Lattice {
    let a0 = &points[0];
    let diffs = points[1..]
        .iter()
        .map(|p| p.iter().zip(a0).map(|(x, y)| x - y).collect())
        .collect();
    Lattice::new(n, diffs)
}

/// The affine injection `b -> origin + sum b_k basis_k` from `Z^r` onto
/// `a_0 + L_A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeMap {
    pub origin: Vec<BigInt>,
    pub basis: Vec<Vec<BigInt>>,
}

impl LatticeMap {
    pub fn apply(&self, b: &[BigInt]) -> Vec<BigInt> {
        let mut x = self.origin.clone();
        for (c, row) in b.iter().zip(&self.basis) {
            for (xi, bi) in x.iter_mut().zip(row) {
                *xi += c * bi;
            }
        }
        x
    }
}

/// Rewrite A in coordinates of a basis of `L_A` (Hermite basis, origin
/// `a_0`), so that the difference lattice becomes `Z^rank`.
pub fn reduce_to_full_rank(a: &ExponentConfig) -> (ExponentConfig, LatticeMap) {
    let l = a.differences();
    let origin = a.points[0].clone();
    let coords: Vec<Vec<BigInt>> = a
        .points
        .iter()
        .map(|p| {
            let d: Vec<BigInt> = p.iter().zip(&origin).map(|(x, y)| x - y).collect();
            l.coordinates(&d)
                .expect("difference lies in L_A")
                .into_iter()
                .map(|c| c.to_integer())
                .collect()
        })
        .collect();
    let reduced = ExponentConfig::with_dim(l.rank(), coords).expect("nonempty configuration");
    (
        reduced,
        LatticeMap {
            origin,
            basis: l.basis().to_vec(),
        },
    )
}

/// `deg X_{A,alpha} = r! mu_A(Q_A)`, the normalized volume for `L_A`.
pub fn degree(a: &ExponentConfig) -> BigInt {
    let r = a.rank();
    let v = a
        .polytope()
        .normalized_volume(a.differences())
        .expect("L_A spans the affine directions of Q_A");
    (v * Rational::from_integer(factorial(r))).to_integer()
}

/// Multidegree `deg_c` of the multiprojective toric variety of
/// `A_0, ..., A_m`: the mixed volume with `c_i` copies of `Q_{A_i}`.
pub fn multidegree(configs: &[ExponentConfig], c: &[usize]) -> Result<BigInt> {
    let Some(first) = configs.first() else {
        return Err(Error::BadIndexVector("no factors".into()));
    };
    let n = first.n();
    if c.len() != configs.len() {
        return Err(Error::BadIndexVector(format!(
            "{} entries for {} factors",
            c.len(),
            configs.len()
        )));
    }
    if c.iter().sum::<usize>() != n {
        return Err(Error::BadIndexVector(format!("entries must sum to {n}")));
    }
    if let Some(b) = configs.iter().find(|b| b.n() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: b.n(),
        });
    }
    let joint = configs
        .iter()
        .fold(Lattice::zero(n), |acc, b| acc.sum(b.differences()));
    if joint != Lattice::full(n) {
        return Err(Error::LatticeSpanMismatch);
    }
    let mut list = Vec::with_capacity(n);
    for (b, &k) in configs.iter().zip(c) {
        for _ in 0..k {
            list.push(b.polytope().clone());
        }
    }
    Ok(mixed_volume(&list)?.to_integer())
}

/// A toric variety `X_{A,alpha}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ToricData {
    pub config: ExponentConfig,
    pub alpha: Vec<AlgScalar>,
}

impl ToricData {
    pub fn new(config: ExponentConfig, alpha: Vec<AlgScalar>) -> Result<ToricData> {
        if alpha.len() != config.points().len() {
            return Err(Error::DimensionMismatch {
                expected: config.points().len(),
                found: alpha.len(),
            });
        }
        Ok(ToricData { config, alpha })
    }

    /// The subgroup case `alpha = (1, ..., 1)`.
    pub fn torus(config: ExponentConfig) -> ToricData {
        let alpha = vec![AlgScalar::one(); config.points().len()];
        ToricData { config, alpha }
    }

    pub fn degree(&self) -> BigInt {
        degree(&self.config)
    }

    /// Same variety with A rewritten so that `L_A = Z^rank`.
    pub fn reduced(&self) -> ToricData {
        ToricData {
            config: reduce_to_full_rank(&self.config).0,
            alpha: self.alpha.clone(),
        }
    }

    /// `alpha^b` for an integer vector b.
    pub fn alpha_power(&self, b: &[BigInt]) -> AlgScalar {
        alpha_power(&self.alpha, b)
    }

    /// The face variety `(A(P), alpha(P))` on the listed indices.
    pub fn restrict(&self, idx: &[usize]) -> Result<ToricData> {
        Ok(ToricData {
            config: self.config.restrict(idx)?,
            alpha: idx.iter().map(|&i| self.alpha[i].clone()).collect(),
        })
    }
}

pub fn alpha_power(alpha: &[AlgScalar], b: &[BigInt]) -> AlgScalar {
    alpha
        .iter()
        .zip(b)
        .fold(AlgScalar::one(), |acc, (a, e)| acc * a.powi(e))
}

/// The binomial `x^plus - coefficient * x^minus`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Binomial {
    pub plus: Vec<BigInt>,
    pub minus: Vec<BigInt>,
    pub coefficient: AlgScalar,
}

impl Binomial {
    /// Split `b = b_+ - b_-` into disjoint supports.
    pub fn from_relation(b: &[BigInt], coefficient: AlgScalar) -> Binomial {
        let plus = b
            .iter()
            .map(|x| {
                if x.is_positive() {
                    x.clone()
                } else {
                    BigInt::zero()
                }
            })
            .collect();
        let minus = b
            .iter()
            .map(|x| if x.is_negative() { -x } else { BigInt::zero() })
            .collect();
        Binomial {
            plus,
            minus,
            coefficient,
        }
    }

    pub fn relation(&self) -> Vec<BigInt> {
        self.plus
            .iter()
            .zip(&self.minus)
            .map(|(p, m)| p - m)
            .collect()
    }

    pub fn degree(&self) -> BigInt {
        self.plus.iter().sum()
    }
}

fn monomial(e: &[BigInt]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, k)| !k.is_zero())
        .map(|(i, k)| {
            if k.is_one() {
                format!("x{i}")
            } else {
                format!("x{i}^{k}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.coefficient;
        let (sign, mag) = if c.is_negative() {
            ("+", c * &AlgScalar::from_int(-1).unwrap())
        } else {
            ("-", c.clone())
        };
        let m = monomial(&self.minus);
        if mag.is_unit() {
            write!(f, "{} {sign} {m}", monomial(&self.plus))
        } else if m == "1" {
            write!(f, "{} {sign} {mag}", monomial(&self.plus))
        } else {
            write!(f, "{} {sign} {mag}*{m}", monomial(&self.plus))
        }
    }
}

/// One generator `x^{b+} - alpha^b x^{b-}` per basis vector of `Gamma_A`.
pub fn ideal_generators(x: &ToricData) -> Vec<Binomial> {
    x.config
        .kernel()
        .basis()
        .iter()
        .map(|b| Binomial::from_relation(b, x.alpha_power(b)))
        .collect()
}

/// A binomial ideal: a saturated homogeneous lattice with a partial
/// character given on a basis.
#[derive(Clone, Debug, PartialEq)]
pub struct BinomialIdeal {
    basis: Vec<Vec<BigInt>>,
    values: Vec<AlgScalar>,
    lattice: Lattice,
}

impl BinomialIdeal {
    /// `basis` must be linearly independent; `values[j]` is the character
    /// on `basis[j]`.
    pub fn new(
        dim: usize,
        basis: Vec<Vec<BigInt>>,
        values: Vec<AlgScalar>,
    ) -> Result<BinomialIdeal> {
        if basis.len() != values.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                found: values.len(),
            });
        }
        if let Some(b) = basis.iter().find(|b| b.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: b.len(),
            });
        }
        let lattice = Lattice::new(dim, basis.clone());
        if lattice.rank() != basis.len() {
            return Err(Error::InvalidInput(
                "relations are linearly dependent".into(),
            ));
        }
        if let Some(b) = basis.iter().find(|b| !b.iter().sum::<BigInt>().is_zero()) {
            return Err(Error::InhomogeneousSupport(format_vec(b)));
        }
        if !lattice.is_saturated() {
            return Err(Error::NotSaturated);
        }
        Ok(BinomialIdeal {
            basis,
            values,
            lattice,
        })
    }

    /// The ideal of `X_{A,alpha}`.
    pub fn of(x: &ToricData) -> BinomialIdeal {
        let basis = x.config.kernel().basis().to_vec();
        let values = basis.iter().map(|b| x.alpha_power(b)).collect();
        let lattice = x.config.kernel().clone();
        BinomialIdeal {
            basis,
            values,
            lattice,
        }
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn values(&self) -> &[AlgScalar] {
        &self.values
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// The character on any element of the lattice.
    pub fn character(&self, v: &[BigInt]) -> Result<AlgScalar> {
        let m = IntMatrix::from_rows(self.dim(), self.basis.clone());
        let sol = solve_integer_combination(&m, v).ok_or(Error::NotASublattice)?;
        Ok(sol
            .iter()
            .zip(&self.values)
            .fold(AlgScalar::one(), |acc, (k, r)| acc * r.powi(k)))
    }

    pub fn generators(&self) -> Vec<Binomial> {
        self.basis
            .iter()
            .zip(&self.values)
            .map(|(b, r)| Binomial::from_relation(b, r.clone()))
            .collect()
    }
}

/// Integer `k` with `sum k_j rows_j = v`, if any.
fn solve_integer_combination(m: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    // rows^T k = v; with U M V = D we get k = U^T y, D^T y = V^T v
    let (u, d, vv) = smith_normal_form(m);
    let rhs = vv.transpose().mul_vec(v);
    let mut y = vec![BigInt::zero(); m.rows()];
    for (j, r) in rhs.iter().enumerate() {
        let dj = if j < m.rows() {
            d.get(j, j).clone()
        } else {
            BigInt::zero()
        };
        if dj.is_zero() {
            if !r.is_zero() {
                return None;
            }
        } else {
            let (q, rem) = r.div_rem(&dj);
            if !rem.is_zero() {
                return None;
            }
            y[j] = q;
        }
    }
    Some(u.transpose().mul_vec(&y))
}

/// Build `(A, alpha)` with `I(X_{A,alpha}) = I`.
///
/// A comes from a basis of the orthogonal lattice whose first vector is
/// `(1, ..., 1)`; the remaining vectors are shifted to vanish at index 0 and
/// put in Hermite form, so `a_0 = 0`. The coefficients extend the character
/// through a Smith form of the relation matrix; saturation makes every
/// elementary divisor 1, so only integer powers of the given values occur.
pub fn from_binomial_ideal(ideal: &BinomialIdeal) -> Result<ToricData> {
    let m = ideal.dim();
    if m == 0 {
        return Err(Error::InvalidInput("empty coordinate set".into()));
    }
    let perp = ideal.lattice().orthogonal_complement();
    let ones = vec![BigInt::one(); m];
    let c: Vec<BigInt> = perp
        .coordinates(&ones)
        .filter(|c| c.iter().all(|x| x.is_integer()))
        .ok_or_else(|| {
            Error::InhomogeneousSupport("(1, ..., 1) is not orthogonal to the relations".into())
        })?
        .into_iter()
        .map(|x| x.to_integer())
        .collect();
    let k = perp.rank();
    // c V = (±1, 0, ..., 0) so the rows of V^{-1} P form a basis with first row ±(1, ..., 1)
    let (_, d, v) = smith_normal_form(&IntMatrix::from_rows(k, vec![c]));
    if !d.get(0, 0).is_one() {
        return Err(Error::NotSaturated);
    }
    let vinv = unimodular_inverse(&v);
    let rows = vinv.mul(&perp.basis_matrix());
    let rest: Vec<Vec<BigInt>> = rows.data()[1..]
        .iter()
        .map(|r| r.iter().map(|x| x - &r[0]).collect())
        .collect();
    let rest = crate::lattice::hermite_normal_form(&IntMatrix::from_rows(m, rest));
    let n = k - 1;
    let points: Vec<Vec<BigInt>> = (0..m)
        .map(|j| (0..n).map(|i| rest.get(i, j).clone()).collect())
        .collect();
    let config = ExponentConfig::with_dim(n, points)?;
    let alpha = extend_character(ideal)?;
    ToricData::new(config, alpha)
}

fn extend_character(ideal: &BinomialIdeal) -> Result<Vec<AlgScalar>> {
    let m = ideal.dim();
    let r = ideal.basis().len();
    if r == 0 {
        return Ok(vec![AlgScalar::one(); m]);
    }
    // U G V = D with D = [I | 0]: y_i = prod_j rho_j^{U_ij}, alpha = V y
    let g = IntMatrix::from_rows(m, ideal.basis().to_vec());
    let (u, d, v) = smith_normal_form(&g);
    for i in 0..r {
        if !d.get(i, i).is_one() {
            return Err(Error::CharacterNotRepresentable(format!(
                "elementary divisor {}",
                d.get(i, i)
            )));
        }
    }
    let y: Vec<AlgScalar> = (0..r)
        .map(|i| {
            (0..r).fold(AlgScalar::one(), |acc, j| {
                acc * ideal.values()[j].powi(u.get(i, j))
            })
        })
        .collect();
    Ok((0..m)
        .map(|kk| (0..r).fold(AlgScalar::one(), |acc, i| acc * y[i].powi(v.get(kk, i))))
        .collect())
}

fn unimodular_inverse(v: &IntMatrix) -> IntMatrix {
    let inv = crate::linalg::inverse(&v.to_rational()).expect("unimodular matrix");
    IntMatrix::from_rows(
        v.cols(),
        inv.into_iter()
            .map(|r| r.into_iter().map(|x| x.to_integer()).collect())
            .collect(),
    )
}

/// Obstruction index `omega_i = mu_i / 2` with a binomial of that degree.
#[derive(Clone, Debug, PartialEq)]
pub struct Obstruction {
    pub omega: Rational,
    pub witness: Binomial,
}

/// The obstruction indices relative to the open torus: halves of the l1
/// successive minima of `Gamma_A`.
pub fn obstruction_indices(x: &ToricData) -> Result<Vec<Obstruction>> {
    let gamma = x.config.kernel();
    if gamma.rank() == 0 {
        return Ok(Vec::new());
    }
    Ok(successive_minima_l1(gamma, gamma.rank())?
        .into_iter()
        .map(|(mu, v)| Obstruction {
            omega: mu / Rational::from_integer(2.into()),
            witness: Binomial::from_relation(&v, x.alpha_power(&v)),
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct SandwichReport {
    pub degree: BigInt,
    pub omega_product: Rational,
    /// `N + 1`
    pub n_plus_one: usize,
    /// codimension `N - n`
    pub codim: usize,
    /// `c(N,n)^2 = sharp_sq_rational / pi^sharp_pi_power`
    pub sharp_sq_rational: Rational,
    pub sharp_pi_power: usize,
    /// floating value of `((N+1)/sqrt(pi))^(N-n) deg`
    pub bound_approx: f64,
    pub lower: bool,
    pub sharp: bool,
    pub weak: bool,
}

/// Certified decision of `x * pi^j <= y` for positive rationals (strict
/// inequality whenever `j > 0`).
pub fn pi_power_le(x: &Rational, j: usize, y: &Rational) -> Result<bool> {
    if j == 0 {
        return Ok(x <= y);
    }
    let cap = precision_cap();
    let mut prec = 64;
    loop {
        let (lo, hi) = pi_enclosure(prec);
        let pw = |b: &Rational| (0..j).fold(Rational::one(), |acc, _| acc * b);
        if x * pw(&hi) <= *y {
            return Ok(true);
        }
        if x * pw(&lo) > *y {
            return Ok(false);
        }
        if prec >= cap {
            return Err(Error::PrecisionCapExceeded { cap });
        }
        prec = (prec * 2).min(cap);
    }
}

/// `c(N,n)^2` as `(rational, power of pi in the denominator)`, using
/// `Gamma(1 + k/2)` in closed form.
pub fn sandwich_constant_sq(big_n: usize, n: usize) -> (Rational, usize) {
    let k = big_n - n;
    let base = Rational::from_integer(binomial(big_n + 1, n + 1))
        * Rational::from_integer(BigInt::from(big_n + 1).pow(k as u32));
    if k.is_multiple_of(2) {
        let g = Rational::from_integer(factorial(k / 2));
        (base * &g * &g, k)
    } else {
        let m = (k - 1) / 2;
        // Gamma(m + 3/2) = (2m+2)! / (4^(m+1) (m+1)!) sqrt(pi)
        let g = Rational::new(
            factorial(2 * m + 2),
            BigInt::from(4).pow(m as u32 + 1) * factorial(m + 1),
        );
        (base * &g * &g, k - 1)
    }
}

/// `deg X <= prod omega_i <= c(N,n) deg X <= ((N+1)/sqrt(pi))^(N-n) deg X`.
pub fn minkowski_sandwich(x: &ToricData) -> Result<SandwichReport> {
    let deg = x.degree();
    let omegas = obstruction_indices(x)?;
    let prod: Rational = omegas.iter().fold(Rational::one(), |acc, o| acc * &o.omega);
    let big_n = x.config.big_n();
    let n = x.config.rank();
    let k = big_n - n;
    let degr = Rational::from_integer(deg.clone());
    let lower = degr <= prod;
    let (c2, j) = sandwich_constant_sq(big_n, n);
    let sharp = pi_power_le(&(&prod * &prod), j, &(c2.clone() * &degr * &degr))?;
    let n1 = Rational::from_integer(BigInt::from(big_n + 1).pow(2 * k as u32));
    let weak = pi_power_le(&(&prod * &prod), k, &(n1 * &degr * &degr))?;
    let bound_approx =
        ((big_n + 1) as f64 / std::f64::consts::PI.sqrt()).powi(k as i32) * deg_f64(&deg);
    let report = SandwichReport {
        degree: deg,
        omega_product: prod,
        n_plus_one: big_n + 1,
        codim: k,
        sharp_sq_rational: c2,
        sharp_pi_power: j,
        bound_approx,
        lower,
        sharp,
        weak,
    };
    if !(lower && sharp && weak) {
        return Err(Error::AssertionViolated(format!(
            "Minkowski sandwich fails: {report:?}"
        )));
    }
    Ok(report)
}

fn deg_f64(d: &BigInt) -> f64 {
    d.to_string().parse().unwrap_or(f64::INFINITY)
}

/// Plücker coordinates of the tangent space of the subgroup `X_A`.
#[derive(Clone, Debug, PartialEq)]
pub struct PlueckerData {
    /// `lambda[i][j-1] = a_{j,i} - a_{0,i}` for `j = 1..N`
    pub lambda: Vec<Vec<BigInt>>,
    /// `(j_1 < ... < j_n)` (1-based) with the minor on those columns
    pub minors: Vec<(Vec<usize>, BigInt)>,
    pub gcd: BigInt,
}

impl PlueckerData {
    pub fn schmidt_height_sq(&self) -> BigInt {
        self.minors.iter().map(|(_, m)| m * m).sum()
    }

    pub fn abs_sum(&self) -> BigInt {
        self.minors.iter().map(|(_, m)| m.abs()).sum()
    }

    pub fn max_abs(&self) -> BigInt {
        self.minors
            .iter()
            .map(|(_, m)| m.abs())
            .max()
            .unwrap_or_default()
    }
}

/// All k-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Minors of the `n x N` matrix `lambda`, computed on the reduced
/// configuration.
pub fn pluecker(a: &ExponentConfig) -> PlueckerData {
    let a = if a.is_reduced() {
        a.clone()
    } else {
        reduce_to_full_rank(a).0
    };
    let n = a.n();
    let pts = a.points();
    let lambda: Vec<Vec<BigInt>> = (0..n)
        .map(|i| pts[1..].iter().map(|p| &p[i] - &pts[0][i]).collect())
        .collect();
    let minors: Vec<(Vec<usize>, BigInt)> = subsets(a.big_n(), n)
        .into_iter()
        .map(|s| {
            let m: Vec<Vec<Rational>> = lambda
                .iter()
                .map(|row| {
                    s.iter()
                        .map(|&j| Rational::from_integer(row[j].clone()))
                        .collect()
                })
                .collect();
            let d = crate::linalg::det(&m).to_integer();
            (s.iter().map(|j| j + 1).collect(), d)
        })
        .collect();
    let gcd = content(&minors.iter().map(|(_, m)| m.clone()).collect::<Vec<_>>());
    PlueckerData {
        lambda,
        minors,
        gcd,
    }
}

/// Sum of the squared Plücker coordinates.
pub fn schmidt_height_sq(a: &ExponentConfig) -> BigInt {
    pluecker(a).schmidt_height_sq()
}

/// Degree of the Segre image in `P^{2^N - 1}`: `n! sum |Lambda|`.
pub fn segre_degree(a: &ExponentConfig) -> BigInt {
    let p = pluecker(a);
    factorial(p.lambda.len()) * p.abs_sum()
}

/// `sum over n-subsets of Vol(Conv(a_0, a_{j_1}, ..., a_{j_n}))`, the integral
/// of the covering-count function `f_A`, measured with actual hulls.
pub fn f_a_integral(a: &ExponentConfig) -> Result<Rational> {
    let a = if a.is_reduced() {
        a.clone()
    } else {
        reduce_to_full_rank(a).0
    };
    let n = a.n();
    let mut total = Rational::zero();
    for s in subsets(a.big_n(), n) {
        let mut pts = vec![a.points()[0].clone()];
        pts.extend(s.iter().map(|&j| a.points()[j + 1].clone()));
        total += Polytope::convex_hull(to_rational_points(&pts))?.ambient_volume();
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub is_projection: bool,
    /// `[L_B : L_A]`; `None` when the index is infinite
    pub projection_degree: Option<BigInt>,
    pub is_isomorphism: bool,
}

/// Compare `X_A` with `X_B` for `Supp(A) ⊆ Supp(B)` under the coordinate
/// projection.
pub fn compare_embeddings(a: &ExponentConfig, b: &ExponentConfig) -> Result<EmbeddingReport> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch {
            expected: b.n(),
            found: a.n(),
        });
    }
    if let Some(p) = a.points().iter().find(|p| !b.points().contains(p)) {
        return Err(Error::InvalidInput(format!(
            "{} is not an exponent of B",
            format_vec(p)
        )));
    }
    let qa = a.polytope();
    let qb = b.polytope();
    let mut va: Vec<&[Rational]> = qa.vertices();
    let mut vb: Vec<&[Rational]> = qb.vertices();
    va.sort();
    va.dedup();
    vb.sort();
    vb.dedup();
    if va != vb {
        return Err(Error::PolytopeMismatch("Q_A and Q_B differ".into()));
    }
    let degree = match lattice_index(a.differences(), b.differences())? {
        LatticeIndex::Finite(k) => Some(k),
        LatticeIndex::Infinite => None,
    };
    let mut iso = true;
    for level in qb.face_lattice() {
        for face in level {
            let bf: Vec<Vec<BigInt>> = face.points.iter().map(|&i| b.points()[i].clone()).collect();
            let af: Vec<Vec<BigInt>> = a
                .points()
                .iter()
                .filter(|p| bf.contains(p))
                .cloned()
                .collect();
            if af.is_empty() || difference_lattice(a.n(), &af) != difference_lattice(b.n(), &bf) {
                iso = false;
            }
        }
    }
    Ok(EmbeddingReport {
        is_projection: true,
        projection_degree: degree,
        is_isomorphism: iso,
    })
}
