//! Runs every suite over a window and prints the mismatches.
//!
//! `cargo run --release --example verify_window -- 3 -2..2,-1..1,-1..1`

use hz_dihedral::dihedral::GroupSpec;
use hz_dihedral::service::{verify, Suite, VerifyOptions, Window};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let p: u64 = args.get(1).map_or(3, |s| s.parse().expect("prime"));
    let window: Window = args.get(2).map_or("-2..2,-1..1,-1..1", |s| s.as_str()).parse().expect("window");
    let spec = GroupSpec::new(p).expect("odd prime");
    let report = verify(&VerifyOptions::new(spec, window, Suite::ALL.to_vec()), None).expect("within budget");
    if std::env::var_os("SHOW_ALL").is_some() {
        for e in &report.entries {
            println!("{} {}: {} | {}", e.suite, e.key, e.left, e.right);
        }
    }
    for e in report.entries.iter().filter(|e| !e.passed()) {
        println!("{} {}: {} | {} {:?}", e.suite, e.key, e.left, e.right, e.failures);
    }
    println!(
        "p={} window={} entries={} mismatches={} in {} ms",
        report.p, report.window, report.checked, report.mismatches, report.elapsed_ms
    );
}
