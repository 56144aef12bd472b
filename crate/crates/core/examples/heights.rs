// Chow weights, normalized heights and multiheights.

use num_bigint::BigInt;

use toric_arith::exactnum::AlgScalar;
use toric_arith::heights::{
    adelic_weights, chow_weights, multiheight, normalized_height, point_height,
};
use toric_arith::toric::{ExponentConfig, ToricData};

fn ints(v: &[i64]) -> Vec<AlgScalar> {
    v.iter().map(|&x| AlgScalar::from_int(x).unwrap()).collect()
}

fn main() -> toric_arith::Result<()> {
    // rational normal curves through (1 : 2 : ... : N+1) have height 2 log N!
    for n in 2..=6i64 {
        let pts = (0..=n).map(|i| vec![BigInt::from(i)]).collect();
        let x = ToricData::new(
            ExponentConfig::new(pts)?,
            ints(&(1..=n + 1).collect::<Vec<_>>()),
        )?;
        println!("N = {n}: h = {}", normalized_height(&x)?);
    }

    let a = ExponentConfig::from_i64(&[&[0], &[1], &[2], &[3]])?;
    let w = adelic_weights(&ints(&[1, 2, 3, 4]));
    for (place, e) in chow_weights(&a, &w)? {
        println!("  e at {place}: {e}");
    }

    let seg = ExponentConfig::from_i64(&[&[0], &[1]])?;
    let h = multiheight(
        &[seg.clone(), seg],
        &[ints(&[1, 2]), ints(&[1, 3])],
        &[1, 1],
    )?;
    println!(
        "multiheight {h}, h(2 : 3) = {}",
        point_height(&ints(&[2, 3]))?
    );
    Ok(())
}
