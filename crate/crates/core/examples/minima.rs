// Successive minima, Zhang's inequality and a family with prescribed minima.

use toric_arith::exactnum::{rat, AlgScalar};
use toric_arith::heights::{
    height_degree_bounds, successive_minima, zhang_check, zhang_family, ZhangParameters,
};
use toric_arith::toric::{ExponentConfig, ToricData};

fn main() -> toric_arith::Result<()> {
    let a = ExponentConfig::from_i64(&[&[0], &[1], &[2], &[3]])?;
    let alpha = [1, 2, 3, 4]
        .iter()
        .map(|&v| AlgScalar::from_int(v))
        .collect::<Result<_, _>>()?;
    let x = ToricData::new(a, alpha)?;
    let b = height_degree_bounds(&x)?;
    println!(
        "{} <= h/deg = {} <= {}",
        b.lower, b.height_over_degree, b.upper
    );

    // targets in units of log 2
    let p = ZhangParameters {
        n: 2,
        mu: vec![rat(1, 1), rat(1, 2), rat(1, 4)],
        nu: rat(5, 2),
        eps1: rat(1, 4),
        eps2: rat(4, 5),
    };
    let fam = zhang_family(&p)?;
    println!(
        "d = {}, k = {}, f = {}, degree {}",
        fam.d,
        fam.k,
        fam.f,
        fam.data.degree()
    );
    let prof = successive_minima(&fam.data)?;
    for (i, e) in prof.entries.iter().enumerate() {
        println!(
            "  mu_{} = {:?} ({})",
            i + 1,
            e.value.as_ref().map(|v| v.to_string()),
            e.status.as_str()
        );
    }
    println!("h/deg = {}", fam.height_over_degree.to_decimal(8));
    let z = zhang_check(&fam.data)?;
    println!(
        "{} <= {} <= {}",
        z.sum.to_decimal(6),
        z.height_over_degree.to_decimal(6),
        z.upper.to_decimal(6)
    );

    Ok(())
}
