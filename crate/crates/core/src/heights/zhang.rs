//! A family of toric varieties with prescribed successive minima and
//! height, defined over `Q(2^{1/l})`.
//!
//! All parameters are rational multiples of `log 2`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactnum::{
    ceil, factorial, floor, format_rational, next_prime_at_least, AlgScalar, LogLinear, Rational,
};
use crate::toric::{ExponentConfig, ToricData};
use crate::{Error, Result};

use super::normalized_height;

#[derive(Clone, Debug, PartialEq)]
pub struct ZhangParameters {
    pub n: usize,
    /// `mu_1 >= ... >= mu_{n+1} >= 0`
    pub mu: Vec<Rational>,
    pub nu: Rational,
    pub eps1: Rational,
    pub eps2: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZhangFamily {
    pub data: ToricData,
    pub d: u64,
    pub k: usize,
    pub f: u64,
    pub ell: BigInt,
    pub q: Vec<Rational>,
    pub lambda: Rational,
    /// `q_{i-1} log 2`
    pub predicted: Vec<LogLinear>,
    pub theta: LogLinear,
    pub height: LogLinear,
    pub height_over_degree: LogLinear,
    /// `h/deg - theta`, the normalized integral over the third piece
    pub excess: LogLinear,
    /// `(n+1)(k-1)/d q_0 log 2`
    pub excess_bound: LogLinear,
    /// `2 n^2 mu_1 / d log 2`
    pub nu_bound: LogLinear,
    /// integrals of the roof over the two simplices where it is affine
    pub i1: LogLinear,
    pub i2: LogLinear,
    /// the rest of the integral
    pub i3: LogLinear,
    pub i3_bound: LogLinear,
}

impl ZhangFamily {
    /// Vertices of the two simplices `Q_1` and `Q_2`.
    pub fn simplices(&self) -> [Vec<Vec<BigInt>>; 2] {
        let n = self.data.config.n();
        let pts = self.data.config.points();
        let a = |i: usize| pts[i].clone();
        let b = |i: usize| pts[2 * n + 1 + i].clone();
        let mut q1 = vec![a(0)];
        q1.extend((1..=self.k).map(b));
        q1.extend((self.k + 1..=n).map(a));
        let mut q2: Vec<Vec<BigInt>> = (1..=self.k).map(b).collect();
        q2.extend((self.k..=n).map(a));
        [q1, q2]
    }
}

fn log2(c: Rational) -> LogLinear {
    LogLinear::log_prime_times(2, c)
}

fn two_to(q: &Rational) -> AlgScalar {
    if q.is_zero() {
        AlgScalar::one()
    } else {
        AlgScalar::prime_power(2, q.clone())
    }
}

fn r(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// The variety with `A = (0, a_1..a_n, 0, a_1..a_n, b_1..b_n)` where
/// `a_i = d e_i`, `b_i = (d-1) e_i` for `i < k`, `b_k = f e_k`, `b_i = e_i`
/// for `i > k`, and `alpha = (1 (n+1 times), 2^{q_0}..2^{q_n}, 2^{q_0}
/// (k times), 1 (n-k times))`.
pub fn theorem_family(n: usize, d: u64, k: usize, f: u64, q: &[Rational]) -> Result<ToricData> {
    if n == 0 || k == 0 || k > n {
        return Err(Error::InfeasibleParameters(format!(
            "need 1 <= k <= n, got k = {k}, n = {n}"
        )));
    }
    if d < 2 || f == 0 || f >= d {
        return Err(Error::InfeasibleParameters(format!(
            "need 1 <= f <= d - 1, got f = {f}, d = {d}"
        )));
    }
    if q.len() != n + 1 {
        return Err(Error::DimensionMismatch {
            expected: n + 1,
            found: q.len(),
        });
    }
    if q.iter().any(|x| x.is_negative()) || q.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InfeasibleParameters(
            "q must be non-increasing and non-negative".into(),
        ));
    }
    let unit = |i: usize, c: u64| -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); n];
        v[i - 1] = BigInt::from(c);
        v
    };
    let mut points = Vec::with_capacity(3 * n + 2);
    for _ in 0..2 {
        points.push(vec![BigInt::zero(); n]);
        points.extend((1..=n).map(|i| unit(i, d)));
    }
    for i in 1..=n {
        let c = match i.cmp(&k) {
            std::cmp::Ordering::Less => d - 1,
            std::cmp::Ordering::Equal => f,
            std::cmp::Ordering::Greater => 1,
        };
        points.push(unit(i, c));
    }
    let mut alpha = vec![AlgScalar::one(); n + 1];
    alpha.extend(q.iter().map(two_to));
    alpha.extend((0..k).map(|_| two_to(&q[0])));
    alpha.extend((k..n).map(|_| AlgScalar::one()));
    ToricData::new(ExponentConfig::with_dim(n, points)?, alpha)
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::AssertionViolated(what()))
    }
}

/// Choose the parameters of [`theorem_family`] for the targets `mu`, `nu`
/// and verify the resulting minima and height.
pub fn zhang_family(p: &ZhangParameters) -> Result<ZhangFamily> {
    let n = p.n;
    let infeasible = |s: &str| Err(Error::InfeasibleParameters(s.into()));
    if n == 0 {
        return infeasible("n must be positive");
    }
    if p.mu.len() != n + 1 {
        return Err(Error::DimensionMismatch {
            expected: n + 1,
            found: p.mu.len(),
        });
    }
    if p.mu.iter().any(|m| m.is_negative()) || p.mu.windows(2).any(|w| w[0] < w[1]) {
        return infeasible("mu must be non-increasing and non-negative");
    }
    if !p.eps1.is_positive() || !p.eps2.is_positive() {
        return infeasible("eps1 and eps2 must be positive");
    }
    let mu1 = p.mu[0].clone();
    let sum_mu: Rational = p.mu.iter().sum();
    let top = r(n + 1) * &mu1;
    let degenerate = mu1.is_zero() && p.nu.is_zero();
    if !degenerate {
        if sum_mu > p.nu || p.nu >= top {
            return infeasible("need mu_1 + ... + mu_{n+1} <= nu < (n+1) mu_1");
        }
        if p.eps1 > &top - &p.nu {
            return infeasible("need eps1 <= (n+1) mu_1 - nu");
        }
    }

    let ell = ceil(&(Rational::one() / &p.eps1)) + BigInt::one();
    let q: Vec<Rational> =
        p.mu.iter()
            .map(|m| Rational::new(floor(&(m * r(ell.clone()))), ell.clone()))
            .collect();
    let s = |k: usize| -> Rational { r(k) * &q[0] + q[k..].iter().sum::<Rational>() };
    if p.nu > s(n + 1) {
        return Err(Error::InfeasibleParameters(format!(
            "nu = {} exceeds (n+1) q_0 = {} after rounding the minima to 1/{ell}",
            format_rational(&p.nu),
            format_rational(&s(n + 1))
        )));
    }
    let k = (1..=n)
        .find(|&k| s(k) <= p.nu && p.nu <= s(k + 1))
        .expect("nu lies between s_1 and s_{n+1}");
    let lambda = if q[0] == q[k] {
        Rational::zero()
    } else {
        (&p.nu - s(k)) / (&q[0] - &q[k])
    };

    let n2 = r(2 * n * n);
    let (lo, hi) = if mu1.is_zero() {
        (BigInt::from(2), None)
    } else {
        (
            ceil(&(&n2 * &mu1 / &p.eps2)),
            Some(floor(&(&n2 * r(2) * &mu1 / &p.eps2))),
        )
    };
    let lo_u = lo
        .to_u64()
        .ok_or_else(|| Error::InfeasibleParameters("degree too large".into()))?;
    let d = next_prime_at_least(lo_u.max(2));
    if let Some(hi) = &hi {
        if BigInt::from(d) > *hi {
            return Err(Error::NoPrimeInRange {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
    }
    let rounded = floor(&(&lambda * r(d) + Rational::new(BigInt::one(), BigInt::from(2))));
    let f = rounded.to_u64().unwrap_or(0).clamp(1, d - 1);

    let data = theorem_family(n, d, k, f, &q)?;
    let deg = data.degree();
    let dn = BigInt::from(d).pow(n as u32);
    check(deg == dn, || {
        format!("degree {deg} differs from d^n = {dn}")
    })?;
    let height = normalized_height(&data)?;
    let hd = height.scale(&Rational::new(BigInt::one(), deg.clone()));

    let rd = r(d);
    let fd = r(f) / &rd;
    let shrink = (Rational::one() - Rational::one() / &rd).pow(k as i32 - 1);
    let theta = log2(&shrink * (s(k) + &fd * (&q[0] - &q[k])));
    let excess = &hd - &theta;
    let excess_bound = log2(r((n + 1) * (k - 1)) / &rd * &q[0]);
    check(
        LogLinear::zero().le(&excess)? && excess.le(&excess_bound)?,
        || format!("h/deg - theta = {excess} not in [0, {excess_bound}]"),
    )?;
    let nu_bound = log2(&n2 * &mu1 / &rd);
    let gap = &hd - &log2(p.nu.clone());
    check((-&nu_bound).le(&gap)? && gap.le(&nu_bound)?, || {
        format!("|h/deg - nu| = |{gap}| exceeds {nu_bound}")
    })?;
    for (m, qi) in p.mu.iter().zip(&q) {
        let diff = m - qi;
        check(!diff.is_negative() && diff <= p.eps1, || {
            format!("mu - q = {} not in [0, eps1]", format_rational(&diff))
        })?;
    }

    let pow = |b: u64, e: usize| r(BigInt::from(b).pow(e as u32));
    let base = pow(d - 1, k - 1) * pow(d, n - k) / r(factorial(n + 1));
    let i1 = log2(&base * r(f) * s(k + 1));
    let i2 = log2(&base * r(d - f) * s(k));
    let i3 = &(&height * &Rational::new(BigInt::one(), factorial(n + 1))) - &(&i1 + &i2);
    let vol3 = (pow(d, n) - pow(d - 1, k - 1) * pow(d, n - k + 1)) / r(factorial(n));
    let i3_bound = log2(vol3 * &q[0]);
    check(LogLinear::zero().le(&i3)? && i3.le(&i3_bound)?, || {
        format!("I_3 = {i3} not in [0, {i3_bound}]")
    })?;

    let predicted = q.iter().map(|x| log2(x.clone())).collect();
    Ok(ZhangFamily {
        data,
        d,
        k,
        f,
        ell,
        q,
        lambda,
        predicted,
        theta,
        height,
        height_over_degree: hd,
        excess,
        excess_bound,
        nu_bound,
        i1,
        i2,
        i3,
        i3_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::heights::{successive_minima, zhang_check};
    use crate::polytope::{to_rational_points, Polytope};
    use crate::roof::roof;

    fn params(
        n: usize,
        mu: &[(i64, i64)],
        nu: (i64, i64),
        eps1: (i64, i64),
        eps2: (i64, i64),
    ) -> ZhangParameters {
        ZhangParameters {
            n,
            mu: mu.iter().map(|&(a, b)| rat(a, b)).collect(),
            nu: rat(nu.0, nu.1),
            eps1: rat(eps1.0, eps1.1),
            eps2: rat(eps2.0, eps2.1),
        }
    }

    #[test]
    fn curve_instance() {
        let fam = zhang_family(&params(1, &[(1, 1), (1, 2)], (3, 2), (1, 4), (1, 2))).unwrap();
        assert_eq!(fam.d, 5);
        assert_eq!(fam.data.degree(), BigInt::from(5));
        let m = successive_minima(&fam.data).unwrap();
        assert_eq!(m.values().unwrap(), fam.predicted);
        zhang_check(&fam.data).unwrap();
    }

    #[test]
    fn torsion_like_instance() {
        let fam = zhang_family(&params(
            2,
            &[(0, 1), (0, 1), (0, 1)],
            (0, 1),
            (1, 3),
            (1, 1),
        ))
        .unwrap();
        assert!(fam.height.is_zero());
    }

    #[test]
    fn surface_instance_splits_into_pieces() {
        let fam = zhang_family(&params(
            2,
            &[(1, 1), (1, 2), (1, 4)],
            (5, 2),
            (1, 4),
            (4, 5),
        ))
        .unwrap();
        assert_eq!(fam.d, 11);
        let tau: Vec<LogLinear> = fam.data.alpha.iter().map(AlgScalar::log_abs).collect();
        let f = roof(fam.data.config.points(), &tau).unwrap();
        for (piece, closed) in fam.simplices().iter().zip([&fam.i1, &fam.i2]) {
            let pts = to_rational_points(piece);
            let vol = Polytope::convex_hull(pts.clone()).unwrap().ambient_volume();
            let mean: LogLinear = pts.iter().map(|x| f.eval(x).unwrap()).sum();
            let integral = mean.scale(&(vol / r(pts.len())));
            assert_eq!(&integral, closed);
        }
        assert_eq!(m_values(&fam), fam.predicted);
    }

    fn m_values(fam: &ZhangFamily) -> Vec<LogLinear> {
        successive_minima(&fam.data).unwrap().values().unwrap()
    }

    #[test]
    fn infeasible_targets() {
        let e = zhang_family(&params(1, &[(1, 1), (1, 2)], (2, 1), (1, 4), (1, 2))).unwrap_err();
        assert_eq!(e.reason(), "infeasible-parameters");
        let e = zhang_family(&params(1, &[(1, 2), (1, 1)], (3, 2), (1, 4), (1, 2))).unwrap_err();
        assert_eq!(e.reason(), "infeasible-parameters");
    }
}
