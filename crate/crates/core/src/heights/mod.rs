//! Arithmetic invariants of toric varieties: weight systems, Chow weights,
//! normalized heights and multiheights.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::exactnum::{factorial, AlgScalar, LogLinear, Rational};
use crate::lattice::Lattice;
use crate::roof::{mixed_integral, roof};
use crate::toric::{reduce_to_full_rank, ExponentConfig, ToricData};
use crate::{Error, Result};

mod bezout;
mod minima;
mod zhang;

pub use bezout::{
    chow_bezout, chow_weight_cycle, cycle_degree, cycle_height, height_bezout,
    monomial_intersection, subdivision_correction, theta_cell, ChowBezoutReport, CycleComponent,
    HeightBezoutReport, IntersectionCycle, MonomialDivisor,
};
pub use minima::{
    essential_minimum, height_degree_bounds, hypersurface_minima, successive_minima, zhang_check,
    BoundsReport, HypersurfaceMinima, MinimaProfile, MinimumEntry, MinimumStatus, ZhangReport,
};
pub use zhang::{theorem_family, zhang_family, ZhangFamily, ZhangParameters};

/// A place symbol: the archimedean one, or a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Infinite,
    Finite(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinite => write!(f, "inf"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

/// One weight vector per place, aggregated over the places above each
/// prime.
#[derive(Clone, Debug, PartialEq)]
pub struct AdelicWeightSystem {
    symbols: Vec<(Place, Vec<LogLinear>)>,
}

impl AdelicWeightSystem {
    pub fn symbols(&self) -> &[(Place, Vec<LogLinear>)] {
        &self.symbols
    }

    pub fn weights(&self, place: Place) -> Option<&[LogLinear]> {
        self.symbols
            .iter()
            .find(|(p, _)| *p == place)
            .map(|(_, w)| w.as_slice())
    }

    /// Coordinatewise sum over the symbols vanishes.
    pub fn satisfies_product_formula(&self) -> bool {
        let len = self.symbols.first().map_or(0, |(_, w)| w.len());
        (0..len).all(|i| {
            self.symbols
                .iter()
                .map(|(_, w)| &w[i])
                .sum::<LogLinear>()
                .is_zero()
        })
    }

    /// Keep only the listed coordinates.
    pub fn restrict(&self, idx: &[usize]) -> AdelicWeightSystem {
        AdelicWeightSystem {
            symbols: self
                .symbols
                .iter()
                .map(|(p, w)| (*p, idx.iter().map(|&i| w[i].clone()).collect()))
                .collect(),
        }
    }
}

/// `tau_inf,i = log|alpha_i|` and `tau_p,i = -v_p(alpha_i) log p`.
pub fn adelic_weights(alpha: &[AlgScalar]) -> AdelicWeightSystem {
    let mut primes: Vec<u64> = alpha
        .iter()
        .flat_map(|a| a.exponents().keys().copied())
        .collect();
    primes.sort_unstable();
    primes.dedup();
    let mut symbols = vec![(
        Place::Infinite,
        alpha.iter().map(AlgScalar::log_abs).collect(),
    )];
    for p in primes {
        let w = alpha
            .iter()
            .map(|a| LogLinear::log_prime_times(p, -a.valuation(p)))
            .collect();
        symbols.push((Place::Finite(p), w));
    }
    AdelicWeightSystem { symbols }
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

fn reduced(a: &ExponentConfig) -> ExponentConfig {
    if a.is_reduced() {
        a.clone()
    } else {
        reduce_to_full_rank(a).0
    }
}

/// `e_tau(X_A) = (n+1)! * integral of the roof`, computed on the reduced
/// configuration.
pub fn chow_weight(a: &ExponentConfig, tau: &[LogLinear]) -> Result<LogLinear> {
    check_len(a.points().len(), tau.len())?;
    let r = reduced(a);
    let f = roof(r.points(), tau)?;
    Ok(f.integral()
        .scale(&Rational::from_integer(factorial(r.n() + 1))))
}

/// `(sum tau_i) deg f - min_a <a, tau>` for a hypersurface with the given
/// monomial exponents.
pub fn chow_weight_hypersurface(monomials: &[Vec<BigInt>], tau: &[LogLinear]) -> Result<LogLinear> {
    let Some(first) = monomials.first() else {
        return Err(Error::InvalidInput("empty support".into()));
    };
    for m in monomials {
        check_len(tau.len(), m.len())?;
        if m.iter().any(|e| e.is_negative()) {
            return Err(Error::InvalidInput(
                "negative exponent in a monomial".into(),
            ));
        }
    }
    let deg: BigInt = first.iter().sum();
    if monomials.iter().any(|m| m.iter().sum::<BigInt>() != deg) {
        return Err(Error::InhomogeneousSupport(
            "monomials of different degrees".into(),
        ));
    }
    let weights: Vec<LogLinear> = monomials.iter().map(|m| pair(m, tau)).collect();
    let w = LogLinear::min_of(&weights)?.expect("nonempty");
    let total: LogLinear = tau.iter().sum();
    Ok(total.scale(&Rational::from_integer(deg)) - w)
}

/// `<b, tau>` for an integer vector b.
pub fn pair(b: &[BigInt], tau: &[LogLinear]) -> LogLinear {
    b.iter()
        .zip(tau)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, t)| t.scale(&Rational::from_integer(c.clone())))
        .sum()
}

/// Chow weights of every symbol.
pub fn chow_weights(a: &ExponentConfig, w: &AdelicWeightSystem) -> Result<Vec<(Place, LogLinear)>> {
    w.symbols()
        .iter()
        .map(|(p, tau)| Ok((*p, chow_weight(a, tau)?)))
        .collect()
}

/// `h(X_{A,alpha})` as the sum over symbols of the Chow weights.
pub fn normalized_height(x: &ToricData) -> Result<LogLinear> {
    Ok(chow_weights(&x.config, &adelic_weights(&x.alpha))?
        .into_iter()
        .map(|(_, e)| e)
        .sum())
}

/// Weil height of the projective point `(alpha_0 : ... : alpha_N)`.
pub fn point_height(alpha: &[AlgScalar]) -> Result<LogLinear> {
    if alpha.is_empty() {
        return Err(Error::InvalidInput("empty point".into()));
    }
    let mut total = LogLinear::zero();
    for (_, tau) in adelic_weights(alpha).symbols() {
        total += LogLinear::max_of(tau)?.expect("nonempty");
    }
    Ok(total)
}

/// Multiheight `h_c` of the multiprojective toric variety of the factors
/// `(A_i, alpha_i)`: over every symbol, the mixed integral with `c_i` copies
/// of the i-th roof.
pub fn multiheight(
    configs: &[ExponentConfig],
    alphas: &[Vec<AlgScalar>],
    c: &[usize],
) -> Result<LogLinear> {
    let Some(first) = configs.first() else {
        return Err(Error::BadIndexVector("no factors".into()));
    };
    let n = first.n();
    if c.len() != configs.len() || alphas.len() != configs.len() {
        return Err(Error::BadIndexVector(format!(
            "{} entries for {} factors",
            c.len(),
            configs.len()
        )));
    }
    if c.iter().sum::<usize>() != n + 1 {
        return Err(Error::BadIndexVector(format!(
            "entries must sum to {}",
            n + 1
        )));
    }
    for (a, al) in configs.iter().zip(alphas) {
        check_len(n, a.n())?;
        check_len(a.points().len(), al.len())?;
    }
    let joint = configs
        .iter()
        .fold(Lattice::zero(n), |acc, a| acc.sum(a.differences()));
    if joint != Lattice::full(n) {
        return Err(Error::LatticeSpanMismatch);
    }
    let all: Vec<AlgScalar> = alphas.iter().flatten().cloned().collect();
    let mut total = LogLinear::zero();
    for (_, tau) in adelic_weights(&all).symbols() {
        let mut roofs = Vec::with_capacity(n + 1);
        let mut start = 0;
        for (a, &k) in configs.iter().zip(c) {
            let len = a.points().len();
            let f = roof(a.points(), &tau[start..start + len])?;
            start += len;
            for _ in 0..k {
                roofs.push(f.clone());
            }
        }
        total += mixed_integral(&roofs)?;
    }
    Ok(total)
}

/// Whether every symbol's roof is identically zero.
pub fn is_torsion(x: &ToricData) -> Result<bool> {
    let r = reduced(&x.config);
    for (_, tau) in adelic_weights(&x.alpha).symbols() {
        if !roof(r.points(), tau)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::lattice::ivec;

    fn ll(s: &str) -> LogLinear {
        s.parse().unwrap()
    }

    fn scalars(v: &[i64]) -> Vec<AlgScalar> {
        v.iter().map(|&k| AlgScalar::from_int(k).unwrap()).collect()
    }

    fn line(n: i64) -> ExponentConfig {
        let pts: Vec<Vec<i64>> = (0..=n).map(|i| vec![i]).collect();
        let refs: Vec<&[i64]> = pts.iter().map(|p| p.as_slice()).collect();
        ExponentConfig::from_i64(&refs).unwrap()
    }

    #[test]
    fn weights_of_small_integers() {
        let w = adelic_weights(&scalars(&[1, 2, 3, 4]));
        assert_eq!(w.symbols().len(), 3);
        assert_eq!(
            w.weights(Place::Infinite).unwrap(),
            &[ll("0"), ll("log(2)"), ll("log(3)"), ll("2*log(2)")]
        );
        assert_eq!(
            w.weights(Place::Finite(2)).unwrap(),
            &[ll("0"), ll("-log(2)"), ll("0"), ll("-2*log(2)")]
        );
        assert_eq!(
            w.weights(Place::Finite(3)).unwrap(),
            &[ll("0"), ll("0"), ll("-log(3)"), ll("0")]
        );
        assert!(w.satisfies_product_formula());
        let units = adelic_weights(&scalars(&[1, -1, 1]));
        assert_eq!(units.symbols().len(), 1);
        assert!(units.symbols()[0].1.iter().all(LogLinear::is_zero));
        let root = adelic_weights(&[AlgScalar::prime_power(2, rat(3, 2))]);
        assert_eq!(root.weights(Place::Infinite).unwrap(), &[ll("3/2*log(2)")]);
        assert_eq!(
            root.weights(Place::Finite(2)).unwrap(),
            &[ll("-3/2*log(2)")]
        );
    }

    #[test]
    fn chow_weights_of_the_conic() {
        let a = line(2);
        assert_eq!(
            chow_weight(&a, &[ll("0"), ll("0"), ll("0")]).unwrap(),
            ll("0")
        );
        assert_eq!(
            chow_weight(&a, &[ll("0"), ll("1"), ll("0")]).unwrap(),
            ll("2")
        );
        assert_eq!(
            chow_weight(&a, &[ll("1"), ll("1"), ll("1")]).unwrap(),
            ll("4")
        );
    }

    #[test]
    fn hypersurface_weights() {
        let e0 = [ll("1"), ll("0"), ll("0"), ll("0")];
        let quadric = [ivec(&[1, 0, 0, 1]), ivec(&[0, 1, 1, 0])];
        assert_eq!(chow_weight_hypersurface(&quadric, &e0).unwrap(), ll("2"));
        let zero = vec![ll("0"); 4];
        assert_eq!(chow_weight_hypersurface(&quadric, &zero).unwrap(), ll("0"));
        let quartic = [ivec(&[2, 0, 2, 0]), ivec(&[0, 3, 0, 1])];
        assert_eq!(chow_weight_hypersurface(&quartic, &e0).unwrap(), ll("4"));
        let bad = [ivec(&[2, 0, 0, 0]), ivec(&[0, 1, 0, 0])];
        assert_eq!(
            chow_weight_hypersurface(&bad, &e0).unwrap_err().reason(),
            "inhomogeneous-support"
        );
    }

    #[test]
    fn heights_of_rational_normal_curves() {
        for n in 2..=8 {
            let alpha = scalars(&(1..=n + 1).collect::<Vec<_>>());
            let x = ToricData::new(line(n), alpha).unwrap();
            let expected = LogLinear::log_of(&Rational::from_integer(factorial(n as usize)))
                .unwrap()
                .scale(&rat(2, 1));
            assert_eq!(normalized_height(&x).unwrap(), expected);
        }
        let x = ToricData::new(line(3), scalars(&[1, 2, 3, 4])).unwrap();
        assert_eq!(
            normalized_height(&x).unwrap().to_string(),
            "2*log(2) + 2*log(3)"
        );
        assert_eq!(
            normalized_height(&ToricData::torus(line(3))).unwrap(),
            ll("0")
        );
        assert!(is_torsion(&ToricData::torus(line(3))).unwrap());
        assert!(!is_torsion(&x).unwrap());
    }

    #[test]
    fn point_heights() {
        assert_eq!(point_height(&scalars(&[1, 2])).unwrap(), ll("log(2)"));
        assert_eq!(point_height(&scalars(&[1, 1])).unwrap(), ll("0"));
        assert_eq!(point_height(&scalars(&[2, 3])).unwrap(), ll("log(3)"));
        assert_eq!(point_height(&scalars(&[4, 6])).unwrap(), ll("log(3)"));
    }

    #[test]
    fn multiheights_of_products_of_lines() {
        let seg = line(1);
        let xi = [2i64, 3, 5];
        let h = |i: usize, j: usize| {
            let alphas = vec![scalars(&[1, xi[i]]), scalars(&[1, xi[j]])];
            multiheight(&[seg.clone(), seg.clone()], &alphas, &[1, 1]).unwrap()
        };
        assert_eq!(h(0, 1), ll("log(3)"));
        let mut pairs = LogLinear::zero();
        let mut all = LogLinear::zero();
        for i in 0..3 {
            for j in 0..3 {
                let hij = point_height(&scalars(&[xi[i], xi[j]])).unwrap();
                if i < j {
                    assert_eq!(h(i, j), hij);
                    pairs += h(i, j);
                }
                all += hij;
            }
        }
        assert_eq!(pairs.scale(&rat(2, 1)), all);
        let ones = vec![scalars(&[1, 1]), scalars(&[1, 1])];
        assert_eq!(
            multiheight(&[seg.clone(), seg.clone()], &ones, &[1, 1]).unwrap(),
            ll("0")
        );
        assert_eq!(
            multiheight(&[seg.clone(), seg], &ones, &[1, 0])
                .unwrap_err()
                .reason(),
            "bad-index-vector"
        );
    }
}
