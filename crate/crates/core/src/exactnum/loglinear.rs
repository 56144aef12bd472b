use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::interval::log_prime_enclosure;
use super::primes::{factor_integer, is_prime};
use super::{format_rational, parse_rational, precision_cap, Rational};
use crate::{Error, Result};

/// An exact real `r + sum_p c_p log p` with rational `r` and `c_p`.
///
/// Zero coefficients are never stored, so two values are equal exactly when
/// their representations are identical (1 and the log p are linearly
/// independent over Q).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LogLinear {
    rational: Rational,
    logs: BTreeMap<u64, Rational>,
}

impl LogLinear {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_rational(r: Rational) -> Self {
        LogLinear {
            rational: r,
            logs: BTreeMap::new(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `log p` for a prime p.
    pub fn log_prime(p: u64) -> Self {
        assert!(is_prime(p), "{p} is not prime");
        Self::log_prime_times(p, Rational::one())
    }

    pub fn log_prime_times(p: u64, c: Rational) -> Self {
        let mut logs = BTreeMap::new();
        if !c.is_zero() {
            logs.insert(p, c);
        }
        LogLinear {
            rational: Rational::zero(),
            logs,
        }
    }

    /// `log |r|` for a nonzero rational r.
    pub fn log_of(r: &Rational) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::InvalidInput("log of zero".into()));
        }
        let mut out = LogLinear::zero();
        for (p, e) in factor_integer(r.numer())? {
            out.add_log(p, &Rational::from_integer(e.into()));
        }
        for (p, e) in factor_integer(r.denom())? {
            out.add_log(p, &-Rational::from_integer(e.into()));
        }
        Ok(out)
    }

    fn add_log(&mut self, p: u64, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.logs.entry(p).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.logs.remove(&p);
        }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rational
    }

    pub fn log_coefficients(&self) -> &BTreeMap<u64, Rational> {
        &self.logs
    }

    pub fn coefficient(&self, p: u64) -> Rational {
        self.logs.get(&p).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.logs.is_empty()
    }

    /// The value when it is a pure rational.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.logs.is_empty().then_some(&self.rational)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LogLinear {
            rational: &self.rational * c,
            logs: self.logs.iter().map(|(p, x)| (*p, x * c)).collect(),
        }
    }

    /// Rational interval containing the value, each log enclosed to `prec` bits.
    pub fn enclosure(&self, prec: u32) -> (Rational, Rational) {
        let mut lo = self.rational.clone();
        let mut hi = self.rational.clone();
        for (p, c) in &self.logs {
            let (l, h) = log_prime_enclosure(*p, prec);
            if c.is_positive() {
                lo += c * l;
                hi += c * h;
            } else {
                lo += c * h;
                hi += c * l;
            }
        }
        (lo, hi)
    }

    /// Certified sign with doubling precision up to the configured cap.
    pub fn sign(&self) -> Result<Ordering> {
        self.sign_with_cap(precision_cap())
    }

    /// As [`LogLinear::sign`] with an explicit cap in bits.
    pub fn sign_with_cap(&self, cap: u32) -> Result<Ordering> {
        if self.logs.is_empty() {
            return Ok(self.rational.cmp(&Rational::zero()));
        }
        let mut prec = 64u32;
        loop {
            let (lo, hi) = self.enclosure(prec);
            if lo.is_positive() {
                return Ok(Ordering::Greater);
            }
            if hi.is_negative() {
                return Ok(Ordering::Less);
            }
            if prec >= cap {
                return Err(Error::PrecisionCapExceeded { cap });
            }
            prec = (prec * 2).min(cap);
        }
    }

    pub fn cmp_exact(&self, other: &Self) -> Result<Ordering> {
        if self == other {
            return Ok(Ordering::Equal);
        }
        (self - other).sign()
    }

    pub fn le(&self, other: &Self) -> Result<bool> {
        Ok(self.cmp_exact(other)? != Ordering::Greater)
    }

    pub fn max_of<'a, I: IntoIterator<Item = &'a LogLinear>>(
        values: I,
    ) -> Result<Option<LogLinear>> {
        let mut best: Option<&LogLinear> = None;
        for v in values {
            best = match best {
                Some(b) if b.cmp_exact(v)? != Ordering::Less => Some(b),
                _ => Some(v),
            };
        }
        Ok(best.cloned())
    }

    pub fn min_of<'a, I: IntoIterator<Item = &'a LogLinear>>(
        values: I,
    ) -> Result<Option<LogLinear>> {
        let mut best: Option<&LogLinear> = None;
        for v in values {
            best = match best {
                Some(b) if b.cmp_exact(v)? != Ordering::Greater => Some(b),
                _ => Some(v),
            };
        }
        Ok(best.cloned())
    }

    pub fn to_f64(&self) -> f64 {
        let mut x = self.rational.to_f64().unwrap_or(f64::NAN);
        for (p, c) in &self.logs {
            x += c.to_f64().unwrap_or(f64::NAN) * (*p as f64).ln();
        }
        x
    }

    /// Decimal rendering with `digits` fractional digits and a certified
    /// error bound `10^-digits`.
    pub fn to_decimal(&self, digits: usize) -> String {
        let bits = (digits as f64 * 3.33) as u32 + 24;
        let (lo, hi) = self.enclosure(bits);
        let mid = (lo + hi) / Rational::from_integer(2.into());
        let scale = BigInt::from(10).pow(digits as u32);
        let scaled = (mid * Rational::from_integer(scale.clone()))
            .round()
            .to_integer();
        let neg = scaled.is_negative();
        let mag = scaled.abs();
        let int_part = &mag / &scale;
        let frac_part = &mag % &scale;
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int_part} (±1)")
        } else {
            format!(
                "{sign}{int_part}.{frac:0>width$} (±1e-{digits})",
                frac = frac_part.to_string(),
                width = digits
            )
        }
    }
}

/// Exact linear combination of log-linear values.
pub fn ll_combine<'a, I>(terms: I) -> LogLinear
where
    I: IntoIterator<Item = (&'a Rational, &'a LogLinear)>,
{
    terms.into_iter().map(|(c, x)| x.scale(c)).sum()
}

/// Certified sign as -1, 0, +1.
pub fn ll_sign(x: &LogLinear) -> Result<i8> {
    Ok(match x.sign()? {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    })
}

impl From<Rational> for LogLinear {
    fn from(r: Rational) -> Self {
        LogLinear::from_rational(r)
    }
}

impl<'a> Add<&'a LogLinear> for &'a LogLinear {
    type Output = LogLinear;
    fn add(self, rhs: &LogLinear) -> LogLinear {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LogLinear {
    type Output = LogLinear;
    fn add(mut self, rhs: LogLinear) -> LogLinear {
        self += &rhs;
        self
    }
}

impl AddAssign<&LogLinear> for LogLinear {
    fn add_assign(&mut self, rhs: &LogLinear) {
        self.rational += &rhs.rational;
        for (p, c) in &rhs.logs {
            self.add_log(*p, c);
        }
    }
}

impl AddAssign for LogLinear {
    fn add_assign(&mut self, rhs: LogLinear) {
        *self += &rhs;
    }
}

impl SubAssign<&LogLinear> for LogLinear {
    fn sub_assign(&mut self, rhs: &LogLinear) {
        self.rational -= &rhs.rational;
        for (p, c) in &rhs.logs {
            self.add_log(*p, &-c);
        }
    }
}

impl SubAssign for LogLinear {
    fn sub_assign(&mut self, rhs: LogLinear) {
        *self -= &rhs;
    }
}

impl<'a> Sub<&'a LogLinear> for &'a LogLinear {
    type Output = LogLinear;
    fn sub(self, rhs: &LogLinear) -> LogLinear {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LogLinear {
    type Output = LogLinear;
    fn sub(mut self, rhs: LogLinear) -> LogLinear {
        self -= &rhs;
        self
    }
}

impl Neg for LogLinear {
    type Output = LogLinear;
    fn neg(self) -> LogLinear {
        self.scale(&-Rational::one())
    }
}

impl Neg for &LogLinear {
    type Output = LogLinear;
    fn neg(self) -> LogLinear {
        self.scale(&-Rational::one())
    }
}

impl<'a> Mul<&'a Rational> for &'a LogLinear {
    type Output = LogLinear;
    fn mul(self, rhs: &Rational) -> LogLinear {
        self.scale(rhs)
    }
}

impl Mul<Rational> for LogLinear {
    type Output = LogLinear;
    fn mul(self, rhs: Rational) -> LogLinear {
        self.scale(&rhs)
    }
}

impl Sum for LogLinear {
    fn sum<I: Iterator<Item = LogLinear>>(iter: I) -> Self {
        iter.fold(LogLinear::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a LogLinear> for LogLinear {
    fn sum<I: Iterator<Item = &'a LogLinear>>(iter: I) -> Self {
        iter.fold(LogLinear::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

impl fmt::Display for LogLinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut term =
            |f: &mut fmt::Formatter<'_>, c: &Rational, body: Option<u64>| -> fmt::Result {
                let neg = c.is_negative();
                let mag = c.abs();
                if first {
                    if neg {
                        write!(f, "-")?;
                    }
                } else {
                    write!(f, "{}", if neg { " - " } else { " + " })?;
                }
                first = false;
                match body {
                    None => write!(f, "{}", format_rational(&mag)),
                    Some(p) if mag.is_one() => write!(f, "log({p})"),
                    Some(p) => write!(f, "{}*log({p})", format_rational(&mag)),
                }
            };
        if !self.rational.is_zero() {
            term(f, &self.rational, None)?;
        }
        for (p, c) in &self.logs {
            term(f, c, Some(*p))?;
        }
        Ok(())
    }
}

impl FromStr for LogLinear {
    type Err = Error;

    /// Accepts sums such as `3/2 + 2*log(2) - log(9/4)`.
    fn from_str(s: &str) -> Result<Self> {
        let err = |m: &str| Error::Parse(format!("bad log-linear `{s}`: {m}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty"));
        }
        // split on top-level + and - (not inside parentheses, not after '/' or '*')
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut depth = 0i32;
        let mut cur = String::new();
        let mut neg = false;
        for (i, ch) in compact.char_indices() {
            match ch {
                '(' => {
                    depth += 1;
                    cur.push(ch)
                }
                ')' => {
                    depth -= 1;
                    cur.push(ch)
                }
                '+' | '-' if depth == 0 => {
                    let prev = compact[..i].chars().last();
                    if matches!(prev, Some('*') | Some('/')) {
                        cur.push(ch);
                        continue;
                    }
                    if !cur.is_empty() {
                        terms.push((neg, std::mem::take(&mut cur)));
                    } else if i != 0 {
                        return Err(err("dangling sign"));
                    }
                    neg = ch == '-';
                }
                _ => cur.push(ch),
            }
        }
        if cur.is_empty() {
            return Err(err("trailing sign"));
        }
        terms.push((neg, cur));
        let mut out = LogLinear::zero();
        for (neg, t) in terms {
            let mut value = if let Some(pos) = t.find("log(") {
                if !t.ends_with(')') {
                    return Err(err("unterminated log"));
                }
                let coef = &t[..pos];
                let arg = &t[pos + 4..t.len() - 1];
                let c = if coef.is_empty() {
                    Rational::one()
                } else {
                    let c = coef.strip_suffix('*').ok_or_else(|| err("expected `*`"))?;
                    parse_rational(c)?
                };
                let arg = parse_rational(arg)?;
                if !arg.is_positive() {
                    return Err(err("log of a non-positive number"));
                }
                LogLinear::log_of(&arg)?.scale(&c)
            } else {
                LogLinear::from_rational(parse_rational(&t)?)
            };
            if neg {
                value = -value;
            }
            out += value;
        }
        Ok(out)
    }
}

impl Serialize for LogLinear {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LogLinear {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;

    fn ll(s: &str) -> LogLinear {
        s.parse().unwrap()
    }

    #[test]
    fn combine_examples() {
        let l2 = LogLinear::log_prime(2);
        let l3 = LogLinear::log_prime(3);
        let one = int(1);
        let sum = ll_combine([(&one, &l2), (&one, &l3)]);
        assert_eq!(
            sum.log_coefficients(),
            &BTreeMap::from([(2, int(1)), (3, int(1))])
        );

        let two = int(2);
        assert_eq!(ll_combine([(&two, &l2)]), ll("log(4)"));

        let twolog2 = l2.scale(&two);
        let minus = int(-1);
        let x = ll_combine([(&one, &twolog2), (&minus, &l3)]);
        assert_eq!(
            x.log_coefficients(),
            &BTreeMap::from([(2, int(2)), (3, int(-1))])
        );
        assert_eq!(x, ll("log(4/3)"));
    }

    #[test]
    fn sign_examples() {
        assert_eq!(ll_sign(&LogLinear::zero()).unwrap(), 0);
        assert_eq!(ll_sign(&ll("2*log(2) - log(3)")).unwrap(), 1);
        assert_eq!(ll_sign(&ll("log(2) - log(3)")).unwrap(), -1);
        // log 2 vs 7/10 (log 2 = 0.6931...)
        assert_eq!(ll_sign(&ll("log(2) - 7/10")).unwrap(), -1);
        // 3 log 2 - 2 log 3 + 1/8 = log(8/9) + 0.125 > 0
        assert_eq!(ll_sign(&ll("3*log(2) - 2*log(3) + 1/8")).unwrap(), 1);
    }

    #[test]
    fn near_cancellation_needs_more_bits() {
        // 2^10 = 1024 vs 10^3 = 1000: 10 log 2 - 3 log 10 = log(1.024)
        let x = ll("10*log(2) - 3*log(10)");
        assert_eq!(ll_sign(&x).unwrap(), 1);
        // 3^12 = 531441 vs 2^19 = 524288
        let y = ll("19*log(2) - 12*log(3)");
        assert_eq!(ll_sign(&y).unwrap(), -1);
    }

    #[test]
    fn cap_is_reported() {
        // about 2^-200 away from zero: undecidable at 64 bits
        let tiny = ll("log(2)") - LogLinear::from_rational(log_prime_enclosure(2, 200).0);
        assert!(matches!(
            tiny.sign_with_cap(64),
            Err(Error::PrecisionCapExceeded { cap: 64 })
        ));
        assert_eq!(tiny.sign_with_cap(1024).unwrap(), Ordering::Greater);
    }

    #[test]
    fn display_and_parse() {
        let x = ll("log(36)");
        assert_eq!(x.to_string(), "2*log(2) + 2*log(3)");
        assert_eq!(ll(&x.to_string()), x);
        let y = ll("-3/2 + log(2) - 1/2*log(5)");
        assert_eq!(y.to_string(), "-3/2 + log(2) - 1/2*log(5)");
        assert_eq!(ll("0").to_string(), "0");
        assert!("log(0)".parse::<LogLinear>().is_err());
        assert!("2*log(2) +".parse::<LogLinear>().is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(ll("log(36)").to_decimal(6), "3.583519 (±1e-6)");
        assert_eq!(ll("-log(2)").to_decimal(3), "-0.693 (±1e-3)");
    }
}
