// Exact convex hulls, face lattices and mixed volumes.

use toric_arith::polytope::{mixed_volume, Polytope};

fn main() -> toric_arith::Result<()> {
    let cube = Polytope::from_i64(&[
        &[0, 0, 0],
        &[1, 0, 0],
        &[0, 1, 0],
        &[0, 0, 1],
        &[1, 1, 0],
        &[1, 0, 1],
        &[0, 1, 1],
        &[1, 1, 1],
    ])?;
    let counts: Vec<usize> = cube.face_lattice().iter().map(|f| f.len()).collect();
    println!("cube f-vector: {counts:?}, volume {}", cube.volume()?);
    for f in cube.facets() {
        println!("  facet normal {:?} offset {}", f.normal, f.offset);
    }

    // MV of two generic segments is |det|, MV(Q, Q) = 2 Vol(Q)
    let p = Polytope::from_i64(&[&[0, 0], &[2, 1]])?;
    let q = Polytope::from_i64(&[&[0, 0], &[1, 3]])?;
    println!("MV(segments) = {}", mixed_volume(&[p, q])?);
    let tri = Polytope::from_i64(&[&[0, 0], &[3, 0], &[0, 2]])?;
    println!(
        "MV(T, T) = {}, Vol(T) = {}",
        mixed_volume(&[tri.clone(), tri.clone()])?,
        tri.volume()?
    );
    Ok(())
}
