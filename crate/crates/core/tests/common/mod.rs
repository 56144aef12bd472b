#![allow(dead_code)]

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use toric_arith::exactnum::{rat, AlgScalar, LogLinear, Rational};
use toric_arith::toric::ExponentConfig;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn ll(s: &str) -> LogLinear {
    s.parse().unwrap()
}

pub fn scalars(v: &[i64]) -> Vec<AlgScalar> {
    v.iter().map(|&x| AlgScalar::from_int(x).unwrap()).collect()
}

/// `count` distinct points of `{0..=max}^n` spanning `R^n` affinely.
pub fn random_points(r: &mut ChaCha8Rng, n: usize, count: usize, max: i64) -> Vec<Vec<BigInt>> {
    assert!(count > n);
    loop {
        let mut pts: Vec<Vec<BigInt>> = Vec::new();
        let mut tries = 0;
        while pts.len() < count && tries < 1000 {
            tries += 1;
            let p: Vec<BigInt> = (0..n).map(|_| big(r.gen_range(0..=max))).collect();
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        if pts.len() < count {
            continue;
        }
        let a = ExponentConfig::new(pts.clone()).unwrap();
        if a.rank() == n {
            return pts;
        }
    }
}

pub fn random_config(r: &mut ChaCha8Rng, n: usize, count: usize, max: i64) -> ExponentConfig {
    ExponentConfig::new(random_points(r, n, count, max)).unwrap()
}

/// Random reduced configuration (difference lattice equal to `Z^n`).
pub fn random_reduced_config(
    r: &mut ChaCha8Rng,
    n: usize,
    count: usize,
    max: i64,
) -> ExponentConfig {
    loop {
        let a = random_config(r, n, count, max);
        if a.is_reduced() {
            return a;
        }
    }
}

pub fn random_rational(r: &mut ChaCha8Rng, num: i64, max_den: i64) -> Rational {
    rat(r.gen_range(-num..=num), r.gen_range(1..=max_den))
}

/// `r + s log 2 + t log 3` with small rational coefficients.
pub fn random_log_linear(r: &mut ChaCha8Rng) -> LogLinear {
    let a = LogLinear::from_rational(random_rational(r, 6, 3));
    let b = LogLinear::log_prime_times(2, random_rational(r, 3, 2));
    let c = LogLinear::log_prime_times(3, random_rational(r, 3, 2));
    a + b + c
}

pub fn random_alpha(r: &mut ChaCha8Rng, len: usize) -> Vec<AlgScalar> {
    let pool = [
        AlgScalar::one(),
        AlgScalar::from_int(2).unwrap(),
        AlgScalar::from_int(3).unwrap(),
        AlgScalar::from_int(6).unwrap(),
        AlgScalar::from_rational(&rat(1, 2)).unwrap(),
        AlgScalar::from_rational(&rat(5, 3)).unwrap(),
        AlgScalar::prime_power(2, rat(1, 2)),
        AlgScalar::from_int(-3).unwrap(),
    ];
    (0..len)
        .map(|_| pool[r.gen_range(0..pool.len())].clone())
        .collect()
}

/// Fraction-free determinant of a square integer matrix.
pub fn int_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return big(1);
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = big(1);
    let mut prev = big(1);
    for k in 0..n - 1 {
        if a[k][k] == big(0) {
            match (k + 1..n).find(|&i| a[i][k] != big(0)) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return big(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(big(1), |acc, k| acc * big(k as i64))
}
