// Toric varieties from exponents, and back from binomial ideals.

use toric_arith::exactnum::AlgScalar;
use toric_arith::lattice::ivec;
use toric_arith::toric::{
    from_binomial_ideal, ideal_generators, minkowski_sandwich, obstruction_indices, pluecker,
    BinomialIdeal, ExponentConfig, ToricData,
};

fn main() -> toric_arith::Result<()> {
    let a = ExponentConfig::from_i64(&[&[0, 0], &[1, 0], &[2, 1], &[1, 2]])?;
    let alpha = ["1", "1", "3", "1"]
        .iter()
        .map(|s| s.parse())
        .collect::<Result<Vec<AlgScalar>, _>>()?;
    let x = ToricData::new(a, alpha)?;
    println!("degree {}", x.degree());
    for g in ideal_generators(&x) {
        println!("generator {g}");
    }
    for o in obstruction_indices(&x)? {
        println!("omega = {} witnessed by {}", o.omega, o.witness);
    }
    let s = minkowski_sandwich(&x)?;
    println!(
        "deg {} <= prod omega {} (codim {})",
        s.degree, s.omega_product, s.codim
    );
    let p = pluecker(&x.config);
    println!("Pluecker minors {:?}, gcd {}", p.minors, p.gcd);

    let ideal = BinomialIdeal::new(
        4,
        vec![ivec(&[2, -3, 2, -1])],
        vec![AlgScalar::from_int(9)?],
    )?;
    let y = from_binomial_ideal(&ideal)?;
    println!(
        "recovered exponents {:?}, degree {}",
        y.config.points(),
        y.degree()
    );
    Ok(())
}
