//! Successive algebraic minima and the bounds relating them to the height.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exactnum::{AlgScalar, LogLinear, Rational};
use crate::lattice::{content, format_vec};
use crate::toric::{from_binomial_ideal, BinomialIdeal, ToricData};
use crate::{Error, Result};

use super::{adelic_weights, normalized_height, point_height};

/// Essential minimum under the dominant-point hypothesis: some `a` in the
/// support carries the maximum of every weight vector. Then the minimum is
/// the height of alpha.
pub fn essential_minimum(x: &ToricData) -> Result<LogLinear> {
    let w = adelic_weights(&x.alpha);
    let pts = x.config.points();
    let mut failures: Vec<(String, String)> = Vec::new();
    for a in x.config.support() {
        let idx: Vec<usize> = (0..pts.len()).filter(|&i| pts[i] == a).collect();
        let mut failing = None;
        for (place, tau) in w.symbols() {
            let all = LogLinear::max_of(tau)?.expect("nonempty");
            let here = LogLinear::max_of(idx.iter().map(|&i| &tau[i]))?.expect("nonempty");
            if all != here {
                failing = Some(place.to_string());
                break;
            }
        }
        match failing {
            None => return point_height(&x.alpha),
            Some(s) => failures.push((format_vec(&a), s)),
        }
    }
    let mut witness = String::new();
    for (k, (a, s)) in failures.iter().enumerate() {
        if k > 0 {
            witness.push_str("; ");
        }
        let _ = write!(witness, "a = {a} fails at {s}");
    }
    Err(Error::HypothesisNotSatisfied {
        symbol: failures[0].1.clone(),
        witness,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinimumStatus {
    Proved,
    HypothesisFailed,
}

impl MinimumStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            MinimumStatus::Proved => "proved",
            MinimumStatus::HypothesisFailed => "hypothesis-failed",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinimumEntry {
    /// least essential minimum over the faces where it could be computed
    pub value: Option<LogLinear>,
    /// point indices of the face realizing `value`
    pub face: Option<Vec<usize>>,
    pub status: MinimumStatus,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinimaProfile {
    pub entries: Vec<MinimumEntry>,
}

impl MinimaProfile {
    pub fn is_proved(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.status == MinimumStatus::Proved)
    }

    /// The values, when every entry is proved.
    pub fn values(&self) -> Option<Vec<LogLinear>> {
        if !self.is_proved() {
            return None;
        }
        self.entries.iter().map(|e| e.value.clone()).collect()
    }
}

/// Essential minimum of a face variety: the dominant-point case, or the
/// closed form `h(1 : lambda) / deg f` of a toric hypersurface.
fn face_minimum(x: &ToricData) -> Result<LogLinear> {
    match essential_minimum(x) {
        Err(Error::HypothesisNotSatisfied { .. }) if x.config.kernel().rank() == 1 => {
            let gamma = &x.config.kernel().basis()[0];
            let lambda = x.alpha_power(gamma);
            let deg: BigInt = gamma.iter().filter(|g| g.is_positive()).sum();
            Ok(
                point_height(&[AlgScalar::one(), lambda])?
                    .scale(&Rational::new(BigInt::one(), deg)),
            )
        }
        other => other,
    }
}

/// `mu_i` as the least essential minimum of the face varieties of
/// dimension `n - i + 1`.
pub fn successive_minima(x: &ToricData) -> Result<MinimaProfile> {
    let poly = x.config.polytope();
    let n = poly.affine_dim();
    let faces = poly.face_lattice();
    let mut entries = Vec::with_capacity(n + 1);
    for i in 1..=n + 1 {
        let mut best: Option<(LogLinear, Vec<usize>)> = None;
        let mut status = MinimumStatus::Proved;
        for face in &faces[n + 1 - i] {
            match face_minimum(&x.restrict(&face.points)?) {
                Ok(v) => {
                    let better = match &best {
                        None => true,
                        Some((b, _)) => v.cmp_exact(b)?.is_lt(),
                    };
                    if better {
                        best = Some((v, face.points.clone()));
                    }
                }
                Err(Error::HypothesisNotSatisfied { .. }) => {
                    status = MinimumStatus::HypothesisFailed
                }
                Err(e) => return Err(e),
            }
        }
        let (value, face) = match best {
            Some((v, f)) => (Some(v), Some(f)),
            None => (None, None),
        };
        entries.push(MinimumEntry {
            value,
            face,
            status,
        });
    }
    Ok(MinimaProfile { entries })
}

#[derive(Clone, Debug, PartialEq)]
pub struct HypersurfaceMinima {
    /// `h(1 : lambda) / deg f`
    pub essential_minimum: LogLinear,
    /// `h(X) / deg X` for the variety rebuilt from the binomial
    pub height_over_degree: LogLinear,
    pub degree: BigInt,
    pub variety: ToricData,
}

/// Essential minimum of the toric hypersurface `x^b - lambda x^c`.
pub fn hypersurface_minima(
    b: &[BigInt],
    c: &[BigInt],
    lambda: &AlgScalar,
) -> Result<HypersurfaceMinima> {
    if b.len() != c.len() {
        return Err(Error::DimensionMismatch {
            expected: b.len(),
            found: c.len(),
        });
    }
    if b.iter().chain(c).any(|e| e.is_negative()) {
        return Err(Error::InvalidInput("negative exponent".into()));
    }
    if b.iter().sum::<BigInt>() != c.iter().sum::<BigInt>() {
        return Err(Error::InhomogeneousSupport(
            "x^b and x^c have different degrees".into(),
        ));
    }
    let gamma: Vec<BigInt> = b.iter().zip(c).map(|(x, y)| x - y).collect();
    if gamma.iter().all(Zero::is_zero) {
        return Err(Error::InvalidInput("x^b and x^c coincide".into()));
    }
    if !content(&gamma).is_one() {
        return Err(Error::NotSaturated);
    }
    let deg: BigInt = gamma.iter().filter(|g| g.is_positive()).sum();
    let ess = point_height(&[AlgScalar::one(), lambda.clone()])?
        .scale(&Rational::new(BigInt::one(), deg.clone()));
    let ideal = BinomialIdeal::new(gamma.len(), vec![gamma], vec![lambda.clone()])?;
    let variety = from_binomial_ideal(&ideal)?;
    let vdeg = variety.degree();
    let hd = normalized_height(&variety)?.scale(&Rational::new(BigInt::one(), vdeg.clone()));
    if hd != ess || vdeg != deg {
        return Err(Error::AssertionViolated(format!(
            "h(1:lambda)/deg = {ess} but h(X)/deg(X) = {hd}"
        )));
    }
    Ok(HypersurfaceMinima {
        essential_minimum: ess,
        height_over_degree: hd,
        degree: deg,
        variety,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZhangReport {
    pub minima: Vec<LogLinear>,
    pub sum: LogLinear,
    pub height_over_degree: LogLinear,
    /// `(n+1) mu_1`
    pub upper: LogLinear,
}

/// `mu_1 + ... + mu_{n+1} <= h(X)/deg(X) <= (n+1) mu_1`.
pub fn zhang_check(x: &ToricData) -> Result<ZhangReport> {
    let minima = successive_minima(x)?
        .values()
        .ok_or(Error::MinimaNotProved)?;
    let sum: LogLinear = minima.iter().sum();
    let hd = normalized_height(x)?.scale(&Rational::new(BigInt::one(), x.degree()));
    let upper = minima[0].scale(&Rational::from_integer(BigInt::from(minima.len())));
    if !sum.le(&hd)? || !hd.le(&upper)? {
        return Err(Error::AssertionViolated(format!(
            "{sum} <= {hd} <= {upper} fails"
        )));
    }
    Ok(ZhangReport {
        minima,
        sum,
        height_over_degree: hd,
        upper,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundsReport {
    /// `h(alpha) - n h(alpha_j^{-1} : a_j vertex)`
    pub lower: LogLinear,
    pub height_over_degree: LogLinear,
    /// `(n+1) h(alpha)`
    pub upper: LogLinear,
}

/// Lower and upper bounds of `h(X)/deg(X)` by heights of points.
pub fn height_degree_bounds(x: &ToricData) -> Result<BoundsReport> {
    let poly = x.config.polytope();
    let n = poly.affine_dim();
    let mut at_vertices: Vec<usize> = poly.face_lattice()[0]
        .iter()
        .flat_map(|f| f.points.iter().copied())
        .collect();
    at_vertices.sort_unstable();
    let inverses: Vec<AlgScalar> = at_vertices.iter().map(|&j| x.alpha[j].inv()).collect();
    let h_alpha = point_height(&x.alpha)?;
    let lower =
        &h_alpha - &point_height(&inverses)?.scale(&Rational::from_integer(BigInt::from(n)));
    let upper = h_alpha.scale(&Rational::from_integer(BigInt::from(n + 1)));
    let hd = normalized_height(x)?.scale(&Rational::new(BigInt::one(), x.degree()));
    if !lower.le(&hd)? || !hd.le(&upper)? {
        return Err(Error::AssertionViolated(format!(
            "{lower} <= {hd} <= {upper} fails"
        )));
    }
    Ok(BoundsReport {
        lower,
        height_over_degree: hd,
        upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::lattice::ivec;
    use crate::toric::ExponentConfig;

    fn ll(s: &str) -> LogLinear {
        s.parse().unwrap()
    }

    fn scalars(v: &[i64]) -> Vec<AlgScalar> {
        v.iter().map(|&k| AlgScalar::from_int(k).unwrap()).collect()
    }

    #[test]
    fn dominant_point_hypothesis() {
        let a = ExponentConfig::from_i64(&[&[0], &[0], &[1]]).unwrap();
        let x = ToricData::new(a.clone(), scalars(&[1, 2, 3])).unwrap();
        let e = essential_minimum(&x).unwrap_err();
        assert_eq!(e.reason(), "hypothesis-not-satisfied");
        assert!(e.to_string().contains("a = (0) fails at inf"));
        assert!(e.to_string().contains("a = (1) fails at 3"));
        assert_eq!(essential_minimum(&ToricData::torus(a)).unwrap(), ll("0"));
    }

    #[test]
    fn minima_of_a_small_family_member() {
        let x = crate::heights::theorem_family(1, 5, 1, 2, &[rat(3, 2), rat(1, 2)]).unwrap();
        assert_eq!(essential_minimum(&x).unwrap(), ll("3/2*log(2)"));
        let m = successive_minima(&x).unwrap();
        assert!(m.is_proved());
        assert_eq!(
            m.values().unwrap(),
            vec![ll("3/2*log(2)"), ll("1/2*log(2)")]
        );
        assert_eq!(m.entries[1].face.as_deref(), Some(&[1usize, 3][..]));
        let z = zhang_check(&x).unwrap();
        assert!(z.sum.le(&z.height_over_degree).unwrap());
    }

    #[test]
    fn torsion_minima_vanish() {
        let a = ExponentConfig::from_i64(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let x = ToricData::torus(a);
        let m = successive_minima(&x).unwrap();
        assert_eq!(m.values().unwrap(), vec![ll("0"); 3]);
        let z = zhang_check(&x).unwrap();
        assert!(z.sum.is_zero() && z.upper.is_zero());
        let b = height_degree_bounds(&x).unwrap();
        assert!(b.lower.is_zero() && b.upper.is_zero());
    }

    #[test]
    fn binomial_hypersurfaces() {
        let six = AlgScalar::from_int(6).unwrap();
        let h = hypersurface_minima(&ivec(&[1, 1, 0]), &ivec(&[0, 0, 2]), &six).unwrap();
        assert_eq!(h.essential_minimum, ll("1/2*log(2) + 1/2*log(3)"));
        let m = successive_minima(&h.variety).unwrap();
        assert!(m.is_proved());
        let v = m.values().unwrap();
        assert_eq!(v[0], h.essential_minimum);
        assert!(v[1..].iter().all(LogLinear::is_zero));
        let z = zhang_check(&h.variety).unwrap();
        assert_eq!(z.sum, z.height_over_degree);

        let nine = AlgScalar::from_int(9).unwrap();
        let q = hypersurface_minima(&ivec(&[2, 0, 2, 0]), &ivec(&[0, 3, 0, 1]), &nine).unwrap();
        assert_eq!(q.essential_minimum, ll("1/2*log(3)"));
        let one =
            hypersurface_minima(&ivec(&[1, 1, 0]), &ivec(&[0, 0, 2]), &AlgScalar::one()).unwrap();
        assert!(one.essential_minimum.is_zero());
        let bad = hypersurface_minima(&ivec(&[2, 0, 0]), &ivec(&[0, 1, 0]), &six).unwrap_err();
        assert_eq!(bad.reason(), "inhomogeneous-support");
    }

    #[test]
    fn bounds_for_the_cubic_curve() {
        let a = ExponentConfig::from_i64(&[&[0], &[1], &[2], &[3]]).unwrap();
        let x = ToricData::new(a, scalars(&[1, 2, 3, 4])).unwrap();
        let b = height_degree_bounds(&x).unwrap();
        assert_eq!(b.height_over_degree, ll("2/3*log(2) + 2/3*log(3)"));
        assert_eq!(b.lower, ll("0"));
        assert_eq!(b.upper, ll("4*log(2)"));
    }
}
