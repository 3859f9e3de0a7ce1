//! Computes a Mackey functor cellularly and compares it with the closed
//! form.

use hz_dihedral::dihedral::{Grading, GroupSpec};
use hz_dihedral::mackey::mackey_axiom_check;
use hz_dihedral::oracle::pi_mackey;
use hz_dihedral::ring;
use hz_dihedral::service::json::MackeyJson;

fn main() {
    let spec = GroupSpec::new(3).expect("odd prime");
    for text in ["1,1,-1", "-3,-1,2", "2,-2,0", "-1,2,-2"] {
        let g: Grading = text.parse().unwrap();
        let oracle = pi_mackey(spec, g).expect("small complex");
        let closed = ring::mackey_at(spec, g);
        let axioms = mackey_axiom_check(&oracle);
        println!(
            "{g}: signatures {}, {} identities checked on the oracle",
            if oracle.signature() == closed.signature() { "agree" } else { "DIFFER" },
            axioms.checked
        );
    }
    let ans = ring::mackey_at(spec, Grading::new(1, 1, -1));
    println!("{}", serde_json::to_string_pretty(&MackeyJson::from_answer(&ans, "closed_form")).unwrap());
}
