//! Multiplication, restriction and transfer on named elements.

use hz_dihedral::dihedral::{Grading, GroupSpec, SubgroupTag};
use hz_dihedral::ring::{self, parse_element, LevelElement};

fn main() {
    let p = 5;
    let spec = GroupSpec::new(p).expect("odd prime");
    let pairs = [
        ("2*uga*u2a^-1", "2*uga*u2a^-1"),
        ("2*uga*u2a^-1", "5*uga^-1"),
        ("u2a^-1*ag", "S^-1*uga^-1*ag^-2"),
        ("u2a^-1*ag", "S^-1*uga^-1*ag^-1"),
        ("aa", "ag"),
    ];
    for (x, y) in pairs {
        let (a, b) = (parse_element(p, x).unwrap(), parse_element(p, y).unwrap());
        println!("({x}) * ({y}) = {}", a.multiply(p, &b));
    }

    let x = parse_element(p, "10*uga^-1*u2a^-1").unwrap();
    let g = x.grading().expect("homogeneous");
    for to in [SubgroupTag::Cp, SubgroupTag::C2, SubgroupTag::E] {
        println!("res to {to}: {}", ring::res(spec, to, &LevelElement::G(x.clone())).unwrap());
    }

    let y = parse_element(p, "S^-1*uga^-1*ag^-1").unwrap();
    let gy: Grading = y.grading().unwrap();
    let r = ring::res(spec, SubgroupTag::Cp, &LevelElement::G(y.clone())).unwrap();
    println!("res to Cp of {y}: {r}, and back: {}", ring::tr(spec, SubgroupTag::G, &r, gy).unwrap());
    println!("grading of {x}: {g}");
}
