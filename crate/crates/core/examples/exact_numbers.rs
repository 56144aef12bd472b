// Exact log-linear numbers and radical-rational scalars.

use std::cmp::Ordering;

use toric_arith::exactnum::{rat, AlgScalar, LogLinear};

fn main() -> toric_arith::Result<()> {
    // log 36 and 2 log 2 + 2 log 3 are the same number
    let a = LogLinear::log_of(&rat(36, 1))?;
    let b: LogLinear = "2*log(2) + 2*log(3)".parse()?;
    assert_eq!(a, b);
    println!("log 36 = {a} = {}", a.to_decimal(30));

    // 3 log 2 vs 2 log 3: 8 < 9, decided with certified enclosures
    let c: LogLinear = "3*log(2) - 2*log(3)".parse()?;
    assert_eq!(c.sign()?, Ordering::Less);
    println!("sign of {c}: {:?}", c.sign()?);

    // 12^(1/2) = 2 * 3^(1/2)
    let s: AlgScalar = "12^(1/2)".parse()?;
    println!(
        "{s}: log|s| = {}, v_2 = {}, v_3 = {}",
        s.log_abs(),
        s.valuation(2),
        s.valuation(3)
    );
    Ok(())
}
