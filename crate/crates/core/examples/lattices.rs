// Integer lattices: Smith form, saturation, duality and l1 minima.

use toric_arith::lattice::{
    covolume_sq, format_vec, lattice_index, smith_normal_form, successive_minima_l1, IntMatrix,
    Lattice,
};

fn main() -> toric_arith::Result<()> {
    let m = IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
    let (_, d, _) = smith_normal_form(&m);
    let diag: Vec<String> = (0..3).map(|i| d.get(i, i).to_string()).collect();
    println!("invariant factors: {}", diag.join(", "));

    // (2,0,-2) - 2(1,-1,0) = (0,2,-2), so (0,1,-1) is missing
    let l = Lattice::from_i64(3, &[&[2, 0, -2], &[1, -1, 0]]);
    let s = l.saturate();
    println!("index in saturation: {:?}", lattice_index(&l, &s)?);
    let dual = s.orthogonal_complement();
    println!(
        "covolume^2: {} and of the complement {}",
        covolume_sq(&s)?,
        covolume_sq(&dual)?
    );

    let gamma = Lattice::from_i64(4, &[&[2, -3, 2, -1]]);
    for (mu, v) in successive_minima_l1(&gamma, 1)? {
        println!("l1 minimum {mu} at {}", format_vec(&v));
    }
    Ok(())
}
