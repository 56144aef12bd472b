//! Exact scalars: rationals, radical-rational coefficients and exact
//! rational combinations of prime logarithms.

mod interval;
mod loglinear;
mod primes;
mod scalar;

use std::sync::atomic::{AtomicU32, Ordering as AtomicOrdering};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use interval::{log_prime_enclosure, pi_enclosure};
pub use loglinear::{ll_combine, ll_sign, LogLinear};
pub use primes::{factor_integer, is_prime, next_prime_at_least};
pub use scalar::{scalar_log, scalar_valuation, AlgScalar};

/// Arbitrary-precision rational in canonical form.
pub type Rational = BigRational;

/// Default hard cap on the working precision of certified sign decisions.
pub const DEFAULT_PRECISION_CAP: u32 = 10_000;

static PRECISION_CAP: AtomicU32 = AtomicU32::new(DEFAULT_PRECISION_CAP);

/// Current precision cap (bits) used by [`ll_sign`].
pub fn precision_cap() -> u32 {
    PRECISION_CAP.load(AtomicOrdering::Relaxed)
}

/// Set the precision cap used by subsequent sign decisions.
pub fn set_precision_cap(bits: u32) {
    PRECISION_CAP.store(bits.max(64), AtomicOrdering::Relaxed);
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn big(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Parse "a", "-a", "a/b".
pub fn parse_rational(s: &str) -> crate::Result<Rational> {
    let s = s.trim();
    let err = || crate::Error::Parse(format!("bad rational `{s}`"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        Ok(Rational::new(n, d))
    } else {
        let n: BigInt = s.parse().map_err(|_| err())?;
        Ok(Rational::from_integer(n))
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Floor of a rational as a big integer.
pub fn floor(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

pub fn ceil(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}
