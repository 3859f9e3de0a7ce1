use hz_dihedral::dihedral::{Grading, GroupSpec};
use hz_dihedral::oracle::pi_mackey;
use hz_dihedral::ring;
use hz_dihedral::service::json::MackeyJson;
use hz_dihedral::service::{compare_with_oracle, Status};

#[test]
fn rendered_answers_compare_equal_after_parsing() {
    for p in [3, 5] {
        let spec = GroupSpec::new(p).unwrap();
        for g in ["0,0,0", "1,1,-1", "-3,-1,2", "2,-2,0", "-2,2,0", "-1,1,1", "1,0,-1"] {
            let g: Grading = g.parse().unwrap();
            for (ans, source) in [(pi_mackey(spec, g).unwrap(), "oracle"), (ring::mackey_at(spec, g), "closed_form")] {
                let text = serde_json::to_string(&MackeyJson::from_answer(&ans, source)).unwrap();
                let back: MackeyJson = serde_json::from_str(&text).unwrap();
                let rebuilt = back.to_answer().unwrap();
                assert_eq!(rebuilt.signature(), ans.signature(), "p={p} {g} {source}");
                assert_eq!(compare_with_oracle(&rebuilt, &ans).status, Status::Match);
                assert_eq!(serde_json::to_string(&MackeyJson::from_answer(&rebuilt, source)).unwrap(), text);
            }
        }
    }
}

#[test]
fn comparison_detects_differences() {
    let spec = GroupSpec::new(3).unwrap();
    let a = ring::mackey_at(spec, Grading::new(0, 0, -1));
    let b = pi_mackey(spec, Grading::new(1, 0, -1)).unwrap();
    let e = compare_with_oracle(&a, &b);
    assert_eq!(e.status, Status::Mismatch);
    assert_ne!(e.left, e.right);
}
