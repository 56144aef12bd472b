// Intersections with monomial divisors and the arithmetic Bezout identities.

use toric_arith::exactnum::{AlgScalar, LogLinear};
use toric_arith::heights::{chow_bezout, height_bezout, monomial_intersection};
use toric_arith::lattice::ivec;
use toric_arith::toric::{ExponentConfig, ToricData};

fn main() -> toric_arith::Result<()> {
    let a = ExponentConfig::from_i64(&[&[0, 0], &[2, 0], &[0, 2], &[1, 1]])?;
    let alpha = vec![
        AlgScalar::one(),
        AlgScalar::from_int(2)?,
        AlgScalar::from_int(3)?,
        "5/2".parse()?,
    ];
    let x = ToricData::new(a.clone(), alpha)?;
    let b = ivec(&[1, 0, 1, 2]);

    let cycle = monomial_intersection(&x, &b)?;
    println!("D = {}", cycle.divisor.degree());
    for c in &cycle.components {
        println!(
            "  facet {:?}: index {}, multiplicity {}, degree {}",
            c.facet,
            c.index,
            c.multiplicity,
            c.component.degree()
        );
    }

    let tau: Vec<LogLinear> = ["0", "1", "1/2", "log(3)"]
        .iter()
        .map(|s| s.parse())
        .collect::<Result<_, _>>()?;
    let cb = chow_bezout(&a, &tau, &b)?;
    println!("e(X.div) = {}", cb.lhs);
    println!(
        "  D e(X) = {}, subdivision term {}",
        cb.d_times_weight, cb.correction
    );
    let hb = height_bezout(&x, &b)?;
    println!(
        "h(X.div) = {} <= D h(X) = {}",
        hb.cycle_height, hb.d_times_height
    );
    Ok(())
}
