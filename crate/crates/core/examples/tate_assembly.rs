//! Rebuilds π_★ from the Borel, orbit, Tate and localized theories.

use hz_dihedral::dihedral::{Grading, GroupSpec};
use hz_dihedral::ring;
use hz_dihedral::tate::{assemble_at, kc_sequences, localization_stabilization, theory_group_at, Euler, TheoryTag};

fn main() {
    let spec = GroupSpec::new(3).expect("odd prime");
    let g = Grading::new(-2, 2, 0);
    for t in TheoryTag::ALL {
        println!("{:>12} at {g}: {}", t.name(), theory_group_at(spec, t, g).group);
    }
    println!("assembled {} vs closed form {}", assemble_at(spec, g).group, ring::group_at(spec, g).group());
    println!("exact sequence failures: {:?}", kc_sequences(spec, g).failures);
    for n in 0..=8 {
        println!("tilde in degree {n}: {}", theory_group_at(spec, TheoryTag::Tilde, Grading::new(n, 0, 0)).group);
    }
    for e in [Euler::AAlpha, Euler::AGamma] {
        let r = localization_stabilization(spec, Grading::new(0, 1, -1), e, 8).unwrap();
        let tower: Vec<String> = r.tower.iter().map(|x| x.to_string()).collect();
        println!("{e:?} tower {} stabilizes from {:?} to {}", tower.join(" "), r.stable_from, r.localized);
    }
}
