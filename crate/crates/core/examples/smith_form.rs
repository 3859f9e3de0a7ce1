//! Smith normal form and the homology of a small chain complex.

use hz_dihedral::linalg::{homology_at, smith_normal_form, FreeComplex, IntMatrix};

fn main() {
    let m = IntMatrix::from_rows_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let (d, u, v) = smith_normal_form(&m);
    println!("D = {d:?}\nU = {u:?}\nV = {v:?}");
    // The cellular chains of RP^2: Z <-0- Z <-2- Z.
    let c = FreeComplex::new(
        0,
        vec![1, 1, 1],
        vec![IntMatrix::from_rows_i64(&[vec![0]]), IntMatrix::from_rows_i64(&[vec![2]])],
    )
    .unwrap();
    for n in 0..3 {
        println!("H_{n}(RP^2) = {}", homology_at(&c, n));
    }
}
