use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::{Error, Result};

const TRIAL_LIMIT: u64 = 1 << 16;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn factor_u64(n: u64, out: &mut BTreeMap<u64, u32>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        *out.entry(n).or_insert(0) += 1;
        return;
    }
    let d = pollard_rho(n);
    factor_u64(d, out);
    factor_u64(n / d, out);
}

/// Prime factorization of |n| (n nonzero). Cofactors beyond 64 bits after
/// trial division are rejected.
pub fn factor_integer(n: &BigInt) -> Result<BTreeMap<u64, u32>> {
    if n.is_zero() {
        return Err(Error::InvalidInput("cannot factor zero".into()));
    }
    let mut m: BigUint = n.magnitude().clone();
    let mut out = BTreeMap::new();
    let mut p = 2u64;
    while p < TRIAL_LIMIT && m > BigUint::one() {
        if m.to_u64().is_some() {
            break;
        }
        let bp = BigUint::from(p);
        while (&m % &bp).is_zero() {
            m /= &bp;
            *out.entry(p).or_insert(0) += 1;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    match m.to_u64() {
        Some(small) => factor_u64(small, &mut out),
        None => {
            return Err(Error::InvalidInput(format!(
                "integer {n} has a cofactor too large to factor"
            )))
        }
    }
    Ok(out)
}

/// Smallest prime >= n.
pub fn next_prime_at_least(n: u64) -> u64 {
    let mut k = n.max(2);
    while !is_prime(k) {
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        let primes: Vec<u64> = (0..30).filter(|&k| is_prime(k)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
    }

    #[test]
    fn factor_composites() {
        let f = factor_integer(&BigInt::from(-40320)).unwrap();
        assert_eq!(f, BTreeMap::from([(2, 7), (3, 2), (5, 1), (7, 1)]));
        let big = BigInt::from(1_000_000_007u64) * BigInt::from(998_244_353u64);
        let f = factor_integer(&big).unwrap();
        assert_eq!(f, BTreeMap::from([(998_244_353, 1), (1_000_000_007, 1)]));
    }

    #[test]
    fn next_prime() {
        assert_eq!(next_prime_at_least(4), 5);
        assert_eq!(next_prime_at_least(11), 11);
        assert_eq!(next_prime_at_least(0), 2);
    }
}
