// Roof functions, their regular subdivisions and mixed integrals.

use toric_arith::exactnum::LogLinear;
use toric_arith::lattice::ivec;
use toric_arith::roof::{mixed_integral, roof, sup_convolution};

fn main() -> toric_arith::Result<()> {
    let pts = vec![ivec(&[0, 0]), ivec(&[2, 0]), ivec(&[0, 2]), ivec(&[1, 1])];
    let lifts: Vec<LogLinear> = ["0", "0", "0", "log(2)"]
        .iter()
        .map(|s| s.parse())
        .collect::<Result<_, _>>()?;
    let f = roof(&pts, &lifts)?;
    println!("{} cells, integral {}", f.cells().len(), f.integral());
    print!("{}", f.cells_csv());

    // a segment roof and its sup-convolution with itself
    let seg = roof(
        &[ivec(&[0]), ivec(&[1])],
        &["0".parse()?, "log(3)".parse()?],
    )?;
    let twice = sup_convolution(&seg, &seg)?;
    println!("integral of f [+] f = {}", twice.integral());
    println!("MI(f, f) = {}", mixed_integral(&[seg.clone(), seg])?);
    Ok(())
}
