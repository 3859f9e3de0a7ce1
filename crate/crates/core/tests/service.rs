use hz_dihedral::dihedral::GroupSpec;
use hz_dihedral::service::{verify, Suite, VerifyOptions, Window};
use proptest::prelude::*;

#[test]
fn report_does_not_depend_on_jobs() {
    let spec = GroupSpec::new(5).unwrap();
    let window: Window = "-3..3,-2..2,-1..1".parse().unwrap();
    let run = |jobs| {
        let mut o = VerifyOptions::new(spec, window, Suite::ALL.to_vec());
        o.jobs = jobs;
        verify(&o, None).unwrap()
    };
    let (a, b) = (run(1), run(4));
    assert_eq!(a.entries, b.entries);
    assert!(a.passed(), "{:?}", a.entries.iter().find(|e| !e.passed()));
}

#[test]
fn windows_parse_and_print() {
    let w: Window = "-6..6,-3..3,-3..3".parse().unwrap();
    assert_eq!(w, Window::ACCEPTANCE);
    assert_eq!(w.len(), 637);
    let w: Window = "-4..4".parse().unwrap();
    assert_eq!(w.gradings().len(), 9);
    assert!("1..2,3".parse::<Window>().is_err());
    assert!("a..b".parse::<Window>().is_err());
    let empty: Window = "2..1".parse().unwrap();
    assert!(empty.is_empty() && empty.gradings().is_empty());
}

proptest! {
    #[test]
    fn window_display_round_trips(a0 in -9i64..9, a1 in -9i64..9, b0 in -9i64..9, b1 in -9i64..9, c0 in -9i64..9, c1 in -9i64..9) {
        let w = Window { a: (a0, a1), b: (b0, b1), c: (c0, c1) };
        let back: Window = w.to_string().parse().unwrap();
        prop_assert_eq!(back, w);
        prop_assert_eq!(w.gradings().len(), w.len());
        prop_assert!(w.gradings().iter().all(|g| w.contains(*g)));
    }
}
