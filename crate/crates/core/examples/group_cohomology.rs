//! A free resolution of Z over Z[D_2p] and the cohomology it gives.

use hz_dihedral::dihedral::{GroupSpec, SubgroupTag};
use hz_dihedral::groupcoh::{build_resolution, closed_form_compare, Coefficients, DEFAULT_RANK_CAP};

fn main() {
    let spec = GroupSpec::new(5).expect("odd prime");
    let res = build_resolution(spec, SubgroupTag::G, 8, DEFAULT_RANK_CAP).unwrap();
    println!("ranks {:?}, audit {:?}", res.ranks(), res.audit());
    for row in closed_form_compare(&res, 8).unwrap() {
        let c = if row.coefficients == Coefficients::Trivial { "Z" } else { "Z~" };
        println!("H^{}(D_10; {c}) = {}  (closed form {})", row.degree, row.computed, row.expected);
    }
}
