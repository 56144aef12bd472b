use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::primes::{factor_integer, is_prime};
use super::{format_rational, parse_rational, LogLinear, Rational};
use crate::{Error, Result};

/// A nonzero radical rational `sign * prod p^(e_p)` with rational exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgScalar {
    negative: bool,
    exps: BTreeMap<u64, Rational>,
}

impl AlgScalar {
    pub fn one() -> Self {
        AlgScalar {
            negative: false,
            exps: BTreeMap::new(),
        }
    }

    pub fn from_rational(r: &Rational) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::InvalidInput("coefficient must be nonzero".into()));
        }
        let mut out = AlgScalar {
            negative: r.is_negative(),
            exps: BTreeMap::new(),
        };
        for (p, e) in factor_integer(r.numer())? {
            out.add_exp(p, &Rational::from_integer(e.into()));
        }
        for (p, e) in factor_integer(r.denom())? {
            out.add_exp(p, &-Rational::from_integer(e.into()));
        }
        Ok(out)
    }

    pub fn from_int(n: i64) -> Result<Self> {
        Self::from_rational(&Rational::from_integer(n.into()))
    }

    /// `p^e` for a prime p.
    pub fn prime_power(p: u64, e: Rational) -> Self {
        assert!(is_prime(p), "{p} is not prime");
        let mut out = Self::one();
        out.add_exp(p, &e);
        out
    }

    fn add_exp(&mut self, p: u64, e: &Rational) {
        if e.is_zero() {
            return;
        }
        let slot = self.exps.entry(p).or_insert_with(Rational::zero);
        *slot += e;
        if slot.is_zero() {
            self.exps.remove(&p);
        }
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn exponents(&self) -> &BTreeMap<u64, Rational> {
        &self.exps
    }

    /// True when |value| = 1.
    pub fn is_unit(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        let mut acc = Rational::one();
        for (p, e) in &self.exps {
            if !e.is_integer() {
                return None;
            }
            let k = e.to_integer();
            let base = Rational::from_integer(BigInt::from(*p));
            let k32: i32 = (&k).try_into().ok()?;
            acc *= num_traits::pow::Pow::pow(&base, k32);
        }
        Some(if self.negative { -acc } else { acc })
    }

    pub fn is_rational(&self) -> bool {
        self.exps.values().all(|e| e.is_integer())
    }

    pub fn inv(&self) -> Self {
        AlgScalar {
            negative: self.negative,
            exps: self.exps.iter().map(|(p, e)| (*p, -e)).collect(),
        }
    }

    pub fn powi(&self, k: &BigInt) -> Self {
        let kr = Rational::from_integer(k.clone());
        AlgScalar {
            negative: self.negative && k.is_odd(),
            exps: if k.is_zero() {
                BTreeMap::new()
            } else {
                self.exps.iter().map(|(p, e)| (*p, e * &kr)).collect()
            },
        }
    }

    /// Real power `x^(a/b)`. A negative base needs an odd denominator.
    pub fn pow_rational(&self, q: &Rational) -> Result<Self> {
        if self.negative && q.denom().is_even() {
            return Err(Error::CharacterNotRepresentable(format!(
                "({self})^({}) needs an even root of a negative number",
                format_rational(q)
            )));
        }
        Ok(AlgScalar {
            negative: self.negative && q.numer().is_odd(),
            exps: if q.is_zero() {
                BTreeMap::new()
            } else {
                self.exps.iter().map(|(p, e)| (*p, e * q)).collect()
            },
        })
    }

    /// Archimedean `log |x|`.
    pub fn log_abs(&self) -> LogLinear {
        self.exps
            .iter()
            .map(|(p, e)| LogLinear::log_prime_times(*p, e.clone()))
            .sum()
    }

    /// Exponent of p, i.e. `-log|x|_p / log p`.
    pub fn valuation(&self, p: u64) -> Rational {
        self.exps.get(&p).cloned().unwrap_or_else(Rational::zero)
    }
}

pub fn scalar_log(a: &AlgScalar) -> LogLinear {
    a.log_abs()
}

pub fn scalar_valuation(a: &AlgScalar, p: u64) -> Rational {
    a.valuation(p)
}

impl Mul for &AlgScalar {
    type Output = AlgScalar;
    fn mul(self, rhs: &AlgScalar) -> AlgScalar {
        let mut out = self.clone();
        out.negative ^= rhs.negative;
        for (p, e) in &rhs.exps {
            out.add_exp(*p, e);
        }
        out
    }
}

impl Mul for AlgScalar {
    type Output = AlgScalar;
    fn mul(self, rhs: AlgScalar) -> AlgScalar {
        &self * &rhs
    }
}

impl fmt::Display for AlgScalar {
    /// Integer parts are collected into a leading fraction; fractional
    /// exponents are written as `p^(c/d)` factors.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        let mut radicals = Vec::new();
        for (p, e) in &self.exps {
            let fl = e.floor();
            let k = fl.to_integer();
            let frac = e - &fl;
            let k: u32 = k.magnitude().try_into().unwrap_or(u32::MAX);
            if e.floor().is_negative() {
                den *= BigInt::from(*p).pow(k);
            } else {
                num *= BigInt::from(*p).pow(k);
            }
            if !frac.is_zero() {
                radicals.push(format!("{p}^({})", format_rational(&frac)));
            }
        }
        if self.negative {
            write!(f, "-")?;
        }
        if den.is_one() {
            write!(f, "{num}")?;
        } else {
            write!(f, "{num}/{den}")?;
        }
        for r in radicals {
            write!(f, " * {r}")?;
        }
        Ok(())
    }
}

impl FromStr for AlgScalar {
    type Err = Error;

    /// Grammar: `±a/b * p^(c/d) * ...`; the radical factors may use any
    /// positive rational base.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let mut out = AlgScalar::one();
        for (k, factor) in compact.split('*').enumerate() {
            if factor.is_empty() {
                return Err(Error::Parse(format!("bad scalar `{s}`")));
            }
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => {
                    let e = e.trim_start_matches('(').trim_end_matches(')');
                    (b, parse_rational(e)?)
                }
                None => (factor, Rational::one()),
            };
            let base = base.trim_start_matches('(').trim_end_matches(')');
            let base = parse_rational(base)?;
            if base.is_negative() && k > 0 && !exp.is_one() {
                return Err(Error::Parse(format!("negative radical base in `{s}`")));
            }
            let b = AlgScalar::from_rational(&base)?;
            out = &out * &b.pow_rational(&exp)?;
        }
        Ok(out)
    }
}

impl Serialize for AlgScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for AlgScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
