//! Intersection with a monomial divisor `div(x^b)` and the three Bézout
//! identities (degree, Chow weight, height).

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::exactnum::{factorial, LogLinear, Rational};
use crate::lattice::{idot, lattice_index, Lattice, LatticeIndex};
use crate::linalg::{affinely_independent_subset, det};
use crate::polytope::{to_rational_points, Polytope};
use crate::roof::roof;
use crate::toric::{degree, ExponentConfig, ToricData};
use crate::{Error, Result};

use super::{adelic_weights, check_len, chow_weight, normalized_height, pair, reduced};

/// `x^b` bound to a configuration: `D = sum b_j`, `M = sum b_j a_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialDivisor {
    b: Vec<BigInt>,
    d: BigInt,
    m: Vec<BigInt>,
}

impl MonomialDivisor {
    pub fn new(a: &ExponentConfig, b: &[BigInt]) -> Result<MonomialDivisor> {
        check_len(a.points().len(), b.len())?;
        let mut m = vec![BigInt::zero(); a.n()];
        for (bj, aj) in b.iter().zip(a.points()) {
            for (mi, x) in m.iter_mut().zip(aj) {
                *mi += bj * x;
            }
        }
        Ok(MonomialDivisor {
            b: b.to_vec(),
            d: b.iter().sum(),
            m,
        })
    }

    pub fn b(&self) -> &[BigInt] {
        &self.b
    }

    pub fn degree(&self) -> &BigInt {
        &self.d
    }

    pub fn m(&self) -> &[BigInt] {
        &self.m
    }

    pub fn is_effective(&self) -> bool {
        self.b.iter().all(|x| !x.is_negative())
    }
}

/// One component `X_{A(F), alpha(F)}` of the cycle.
#[derive(Clone, Debug, PartialEq)]
pub struct CycleComponent {
    /// indices of the points of A on the facet
    pub facet: Vec<usize>,
    /// primitive inner normal in the reduced coordinates
    pub normal: Vec<BigInt>,
    /// `i(A; F)`
    pub index: BigInt,
    pub multiplicity: BigInt,
    pub component: ToricData,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntersectionCycle {
    pub divisor: MonomialDivisor,
    pub components: Vec<CycleComponent>,
}

/// The cycle `X_{A,alpha} . div(x^b)`, one component per facet with nonzero
/// multiplicity `<M - D a_F, v_F> i(A; F)`.
pub fn monomial_intersection(x: &ToricData, b: &[BigInt]) -> Result<IntersectionCycle> {
    check_len(x.config.points().len(), b.len())?;
    let a = reduced(&x.config);
    let n = a.n();
    if n == 0 {
        return Err(Error::InvalidInput(
            "a point does not meet a divisor properly".into(),
        ));
    }
    let divisor = MonomialDivisor::new(&a, b)?;
    let mut components = Vec::new();
    for facet in a.polytope().facets() {
        let v = &facet.normal;
        let a_f = &a.points()[facet.points[0]];
        let shifted: Vec<BigInt> = divisor
            .m
            .iter()
            .zip(a_f)
            .map(|(m, y)| m - &divisor.d * y)
            .collect();
        let pairing = idot(&shifted, v);
        if pairing.is_zero() {
            continue;
        }
        let diffs: Vec<Vec<BigInt>> = facet.points[1..]
            .iter()
            .map(|&i| a.points()[i].iter().zip(a_f).map(|(p, q)| p - q).collect())
            .collect();
        let l_f = Lattice::new(n, diffs);
        let h_f = Lattice::new(n, vec![v.clone()]).orthogonal_complement();
        let index = match lattice_index(&l_f, &h_f)? {
            LatticeIndex::Finite(k) => k,
            LatticeIndex::Infinite => return Err(Error::LatticeSpanMismatch),
        };
        components.push(CycleComponent {
            facet: facet.points.clone(),
            normal: v.clone(),
            multiplicity: pairing * &index,
            index,
            component: x.restrict(&facet.points)?,
        });
    }
    let cycle = IntersectionCycle {
        divisor,
        components,
    };
    let lhs = cycle_degree(&cycle);
    let rhs = cycle.divisor.degree() * degree(&a);
    if lhs != rhs {
        return Err(Error::AssertionViolated(format!(
            "deg(X.div) = {lhs} but D deg(X) = {rhs}"
        )));
    }
    Ok(cycle)
}

pub fn cycle_degree(cycle: &IntersectionCycle) -> BigInt {
    cycle
        .components
        .iter()
        .map(|c| &c.multiplicity * c.component.degree())
        .sum()
}

/// Chow weight of a cycle: multiplicity-weighted sum over the components,
/// each with tau restricted to its facet.
pub fn chow_weight_cycle(cycle: &IntersectionCycle, tau: &[LogLinear]) -> Result<LogLinear> {
    check_len(cycle.divisor.b.len(), tau.len())?;
    let mut total = LogLinear::zero();
    for c in &cycle.components {
        let t: Vec<LogLinear> = c.facet.iter().map(|&i| tau[i].clone()).collect();
        total += chow_weight(&c.component.config, &t)?
            .scale(&Rational::from_integer(c.multiplicity.clone()));
    }
    Ok(total)
}

pub fn cycle_height(cycle: &IntersectionCycle) -> Result<LogLinear> {
    let mut total = LogLinear::zero();
    for c in &cycle.components {
        total +=
            normalized_height(&c.component)?.scale(&Rational::from_integer(c.multiplicity.clone()));
    }
    Ok(total)
}

/// `theta_{tau,S}(b) = sum v_i tau_{j_i}` where `sum v_i = D` and
/// `sum v_i a_{j_i} = M_A(b)` over affinely independent points of the cell,
/// each `v_i` a ratio of determinants.
pub fn theta_cell(
    a: &ExponentConfig,
    tau: &[LogLinear],
    cell: &[usize],
    b: &[BigInt],
) -> Result<LogLinear> {
    check_len(a.points().len(), tau.len())?;
    let a = reduced(a);
    let n = a.n();
    let div = MonomialDivisor::new(&a, b)?;
    let pts = to_rational_points(a.points());
    let refs: Vec<&[Rational]> = cell.iter().map(|&i| pts[i].as_slice()).collect();
    let chosen: Vec<usize> = affinely_independent_subset(&refs)
        .into_iter()
        .map(|k| cell[k])
        .collect();
    if chosen.len() != n + 1 {
        return Err(Error::DegenerateSimplex);
    }
    let column = |i: usize| -> Vec<Rational> {
        let mut c = vec![Rational::from_integer(1.into())];
        c.extend(pts[i].iter().cloned());
        c
    };
    let mut target = vec![Rational::from_integer(div.d.clone())];
    target.extend(div.m.iter().map(|x| Rational::from_integer(x.clone())));
    // columns of the matrix as rows: the determinant is unchanged
    let base: Vec<Vec<Rational>> = chosen.iter().map(|&i| column(i)).collect();
    let d0 = det(&base);
    if d0.is_zero() {
        return Err(Error::DegenerateSimplex);
    }
    let mut theta = LogLinear::zero();
    for (k, &j) in chosen.iter().enumerate() {
        let mut m = base.clone();
        m[k] = target.clone();
        let v = det(&m) / &d0;
        theta += tau[j].scale(&v);
    }
    Ok(theta)
}

/// `sum_S theta_{tau,S}(b) Vol(S)` over the cells of the roof subdivision.
pub fn subdivision_correction(
    a: &ExponentConfig,
    tau: &[LogLinear],
    b: &[BigInt],
) -> Result<LogLinear> {
    let a = reduced(a);
    let f = roof(a.points(), tau)?;
    let mut total = LogLinear::zero();
    for cell in f.cells() {
        let pts: Vec<Vec<Rational>> = cell
            .vertices
            .iter()
            .map(|&i| f.points()[i].clone())
            .collect();
        let vol = Polytope::convex_hull(pts)?.ambient_volume();
        total += theta_cell(&a, tau, &cell.vertices, b)?.scale(&vol);
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChowBezoutReport {
    /// `e_tau(X . div(x^b))` from the cycle
    pub lhs: LogLinear,
    /// `D e_tau(X) - n! sum_S theta Vol(S)`
    pub rhs: LogLinear,
    pub d_times_weight: LogLinear,
    /// `sum_S theta_{tau,S}(b) Vol(S)`
    pub correction: LogLinear,
    pub equal: bool,
    /// `lhs <= D e_tau(X) - <tau, b> deg(X)`, checked for effective b
    pub inequality: Option<bool>,
}

/// Chow-weight Bézout identity, both sides computed independently.
pub fn chow_bezout(
    a: &ExponentConfig,
    tau: &[LogLinear],
    b: &[BigInt],
) -> Result<ChowBezoutReport> {
    check_len(a.points().len(), tau.len())?;
    let cycle = monomial_intersection(&ToricData::torus(a.clone()), b)?;
    let lhs = chow_weight_cycle(&cycle, tau)?;
    let r = reduced(a);
    let d = Rational::from_integer(cycle.divisor.d.clone());
    let d_times_weight = chow_weight(&r, tau)?.scale(&d);
    let correction = subdivision_correction(&r, tau, b)?;
    let rhs = &d_times_weight - &correction.scale(&Rational::from_integer(factorial(r.n())));
    let equal = lhs == rhs;
    if !equal {
        return Err(Error::AssertionViolated(format!(
            "e_tau(X.div) = {lhs} but the subdivision side is {rhs}"
        )));
    }
    let inequality = if cycle.divisor.is_effective() {
        let bound = &d_times_weight - &pair(b, tau).scale(&Rational::from_integer(degree(&r)));
        let ok = lhs.le(&bound)?;
        if !ok {
            return Err(Error::AssertionViolated(format!(
                "e_tau(X.div) = {lhs} exceeds {bound}"
            )));
        }
        Some(ok)
    } else {
        None
    };
    Ok(ChowBezoutReport {
        lhs,
        rhs,
        d_times_weight,
        correction,
        equal,
        inequality,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct HeightBezoutReport {
    pub cycle_height: LogLinear,
    pub d_times_height: LogLinear,
    /// `n! sum_s sum_S theta_{tau_s,S}(b) Vol(S)`
    pub correction: LogLinear,
    pub equal: bool,
    /// `h(X . div) <= D h(X)`, checked for effective b
    pub inequality: Option<bool>,
}

/// Height Bézout identity over the symbols of the weight system of alpha.
pub fn height_bezout(x: &ToricData, b: &[BigInt]) -> Result<HeightBezoutReport> {
    let cycle = monomial_intersection(x, b)?;
    let cycle_height = cycle_height(&cycle)?;
    let r = reduced(&x.config);
    let d = Rational::from_integer(cycle.divisor.d.clone());
    let nf = Rational::from_integer(factorial(r.n()));
    let mut d_times_height = LogLinear::zero();
    let mut correction = LogLinear::zero();
    for (_, tau) in adelic_weights(&x.alpha).symbols() {
        d_times_height += chow_weight(&r, tau)?.scale(&d);
        correction += subdivision_correction(&r, tau, b)?.scale(&nf);
    }
    let equal = cycle_height == &d_times_height - &correction;
    if !equal {
        return Err(Error::AssertionViolated(format!(
            "h(X.div) = {cycle_height} but D h(X) - correction = {}",
            &d_times_height - &correction
        )));
    }
    let inequality = if cycle.divisor.is_effective() {
        let ok = cycle_height.le(&d_times_height)?;
        if !ok {
            return Err(Error::AssertionViolated(format!(
                "h(X.div) = {cycle_height} exceeds {d_times_height}"
            )));
        }
        Some(ok)
    } else {
        None
    };
    Ok(HeightBezoutReport {
        cycle_height,
        d_times_height,
        correction,
        equal,
        inequality,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::AlgScalar;
    use crate::lattice::ivec;

    fn ll(s: &str) -> LogLinear {
        s.parse().unwrap()
    }

    fn conic() -> ExponentConfig {
        ExponentConfig::from_i64(&[&[0], &[1], &[2]]).unwrap()
    }

    fn summary(c: &IntersectionCycle) -> Vec<(Vec<usize>, i64)> {
        c.components
            .iter()
            .map(|e| (e.facet.clone(), i64::try_from(&e.multiplicity).unwrap()))
            .collect()
    }

    #[test]
    fn cycles_on_the_conic() {
        let x = ToricData::torus(conic());
        let c = monomial_intersection(&x, &ivec(&[1, 0, 0])).unwrap();
        assert_eq!(summary(&c), vec![(vec![2], 2)]);
        let c1 = monomial_intersection(&x, &ivec(&[0, 1, 0])).unwrap();
        let mut s = summary(&c1);
        s.sort();
        assert_eq!(s, vec![(vec![0], 1), (vec![2], 1)]);
        let line = ToricData::torus(ExponentConfig::from_i64(&[&[0], &[1]]).unwrap());
        assert_eq!(
            summary(&monomial_intersection(&line, &ivec(&[1, 0])).unwrap()),
            vec![(vec![1], 1)]
        );

        let tau = [ll("0"), ll("1"), ll("0")];
        assert_eq!(chow_weight_cycle(&c, &tau).unwrap(), ll("0"));
        assert_eq!(chow_weight_cycle(&c1, &tau).unwrap(), ll("0"));
        assert_eq!(
            chow_weight_cycle(&c, &[ll("0"), ll("0"), ll("0")]).unwrap(),
            ll("0")
        );
    }

    #[test]
    fn thetas_on_the_conic() {
        let tau = [ll("0"), ll("1"), ll("0")];
        let e0 = ivec(&[1, 0, 0]);
        assert_eq!(theta_cell(&conic(), &tau, &[1, 2], &e0).unwrap(), ll("2"));
        assert_eq!(theta_cell(&conic(), &tau, &[0, 1], &e0).unwrap(), ll("0"));
        assert_eq!(
            theta_cell(&conic(), &tau, &[0, 1], &ivec(&[0, 1, 0])).unwrap(),
            ll("1")
        );
        assert_eq!(
            theta_cell(&conic(), &tau, &[1, 1], &e0).unwrap_err(),
            Error::DegenerateSimplex
        );
    }

    #[test]
    fn chow_bezout_on_the_conic() {
        let tau = [ll("0"), ll("1"), ll("0")];
        let r = chow_bezout(&conic(), &tau, &ivec(&[1, 0, 0])).unwrap();
        assert_eq!(r.lhs, ll("0"));
        assert_eq!(r.d_times_weight, ll("2"));
        assert_eq!(r.correction, ll("2"));
        assert_eq!(r.inequality, Some(true));
        let z = chow_bezout(&conic(), &[ll("0"), ll("0"), ll("0")], &ivec(&[1, 2, 0])).unwrap();
        assert!(z.lhs.is_zero() && z.rhs.is_zero() && z.correction.is_zero());
        let neg = chow_bezout(&conic(), &tau, &ivec(&[2, -1, 0])).unwrap();
        assert!(neg.equal && neg.inequality.is_none());
    }

    #[test]
    fn height_bezout_on_the_conic() {
        let alpha = [1, 1, 2]
            .iter()
            .map(|&k| AlgScalar::from_int(k).unwrap())
            .collect();
        let x = ToricData::new(conic(), alpha).unwrap();
        let r = height_bezout(&x, &ivec(&[1, 0, 0])).unwrap();
        assert_eq!(r.cycle_height, ll("0"));
        assert_eq!(r.d_times_height, ll("log(2)"));
        assert_eq!(r.correction, ll("log(2)"));
        assert_eq!(r.inequality, Some(true));
        let t = height_bezout(&ToricData::torus(conic()), &ivec(&[1, 1, 0])).unwrap();
        assert!(t.cycle_height.is_zero() && t.d_times_height.is_zero());
    }

    #[test]
    fn plane_configuration() {
        let a = ExponentConfig::from_i64(&[&[0, 0], &[2, 0], &[0, 1], &[1, 1], &[1, 0]]).unwrap();
        let tau = [ll("1/2"), ll("0"), ll("-1"), ll("3/4"), ll("1")];
        for b in [
            [1, 0, 0, 0, 0],
            [0, 2, 1, 0, 0],
            [1, -1, 2, 0, 3],
            [0, 0, 0, 0, 1],
        ] {
            let r = chow_bezout(&a, &tau, &ivec(&b)).unwrap();
            assert!(r.equal);
        }
    }
}
