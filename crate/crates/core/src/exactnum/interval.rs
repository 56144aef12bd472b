//! Certified rational enclosures of log p and pi.
//!
//! Series are summed in fixed point with 2^-w units; every term is floored,
//! so each term contributes at most one unit of error, and the tail is
//! bounded by the first vanishing term.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Rational;

const GUARD_BITS: u32 = 16;

/// atanh(num/den) * 2^w enclosed in [lo, hi]; requires 0 <= num/den <= 1/3.
fn atanh_fixed(num: u64, den: u64, w: u32) -> (BigInt, BigInt) {
    let scale = BigInt::one() << w;
    let num = BigInt::from(num);
    let den = BigInt::from(den);
    let num2 = &num * &num;
    let den2 = &den * &den;
    let mut pnum = num.clone();
    let mut pden = den.clone();
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    loop {
        let term = (&scale * &pnum) / (&pden * BigInt::from(2 * k + 1));
        if term.is_zero() {
            break;
        }
        sum += term;
        pnum *= &num2;
        pden *= &den2;
        k += 1;
    }
    // floors lose < 1 unit per term; tail < (2k+1) units for z <= 1/3
    let slack = BigInt::from(3 * k + 3);
    (sum.clone(), sum + slack)
}

/// atan(1/m) * 2^w enclosed in [lo, hi] (alternating series).
fn atan_inv_fixed(m: u64, w: u32) -> (BigInt, BigInt) {
    let scale = BigInt::one() << w;
    let m = BigInt::from(m);
    let m2 = &m * &m;
    let mut pden = m.clone();
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    loop {
        let term = &scale / (&pden * BigInt::from(2 * k + 1));
        if term.is_zero() {
            break;
        }
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        pden *= &m2;
        k += 1;
    }
    let slack = BigInt::from(k + 2);
    (&sum - &slack, sum + slack)
}

fn to_rational(x: BigInt, w: u32) -> Rational {
    Rational::new(x, BigInt::one() << w)
}

/// Rational interval [lo, hi] containing log(p), of width about 2^-prec.
pub fn log_prime_enclosure(p: u64, prec: u32) -> (Rational, Rational) {
    assert!(p >= 2, "log enclosure needs p >= 2");
    let w = prec + GUARD_BITS;
    let (l2lo, l2hi) = atanh_fixed(1, 3, w);
    let (l2lo, l2hi) = (l2lo * 2, l2hi * 2);
    let k = 63 - p.leading_zeros();
    let base = 1u64 << k;
    let (rlo, rhi) = if p == base {
        (BigInt::zero(), BigInt::zero())
    } else {
        let (a, b) = atanh_fixed(p - base, p + base, w);
        (a * 2, b * 2)
    };
    let k = BigInt::from(k);
    (
        to_rational(&k * l2lo + rlo, w),
        to_rational(&k * l2hi + rhi, w),
    )
}

/// Rational interval containing pi (Machin's formula).
pub fn pi_enclosure(prec: u32) -> (Rational, Rational) {
    let w = prec + GUARD_BITS;
    let (a_lo, a_hi) = atan_inv_fixed(5, w);
    let (b_lo, b_hi) = atan_inv_fixed(239, w);
    (
        to_rational(a_lo * 16 - b_hi * 4, w),
        to_rational(a_hi * 16 - b_lo * 4, w),
    )
}
