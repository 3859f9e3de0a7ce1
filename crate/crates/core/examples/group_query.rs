//! Looks up π_★ at a few gradings and lists the generators with their
//! families.

use hz_dihedral::dihedral::{Grading, GroupSpec};
use hz_dihedral::ring::{self, Mono};

fn main() {
    let spec = GroupSpec::new(3).expect("odd prime");
    for text in ["0,0,0", "1,1,-1", "0,0,-1", "1,0,-1", "-2,2,0", "0,-1,0", "2,-2,0", "2,0,-1"] {
        let g: Grading = text.parse().expect("grading");
        let piece = ring::group_at(spec, g);
        let gens: Vec<String> = piece
            .basis
            .iter()
            .zip(piece.labels())
            .map(|(m, label)| format!("{label} [{}]", m.family()))
            .collect();
        println!("{:>10}  {:<8} {}", g.to_string(), piece.group().to_string(), gens.join(", "));
    }
    let m = ring::group_at(spec, Grading::new(0, 0, -1)).basis[0];
    println!("kind of {m}: {:?}", m.kind(3));
}
