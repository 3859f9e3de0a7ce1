//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::Instant;

use hz_dihedral::dihedral::{Grading, GroupSpec, SubgroupTag};
use hz_dihedral::groupcoh::{build_resolution, DEFAULT_RANK_CAP};
use hz_dihedral::linalg::FgAbGroup;
use hz_dihedral::mackey::{MackeyAnswer, StructureMap};
use hz_dihedral::oracle::pi_mackey;
use hz_dihedral::properties;
use hz_dihedral::ring;
use hz_dihedral::service::{tilde_integer_expected, verify, Entry, Suite, VerifyOptions, Window};
use hz_dihedral::tate::{self, Euler, TheoryTag};

const PRIMES: [u64; 2] = [3, 5];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(failures: &[String], detail: String) -> Outcome {
    let mut detail = detail;
    if let Some(f) = failures.first() {
        detail = format!("{detail}; {} failures, first: {f}", failures.len());
    }
    Outcome {
        passed: failures.is_empty(),
        detail,
    }
}

fn spec(p: u64) -> GroupSpec {
    GroupSpec::new(p).expect("odd prime")
}

fn suite_run(p: u64, suite: Suite) -> Vec<Entry> {
    let opts = VerifyOptions::new(spec(p), Window::ACCEPTANCE, vec![suite]);
    verify(&opts, None).expect("within budget").entries
}

fn entry_failures(p: u64, entries: &[Entry]) -> Vec<String> {
    entries
        .iter()
        .filter(|e| !e.passed())
        .map(|e| format!("p={p} {} {}: {} vs {} {:?}", e.suite, e.key, e.left, e.right, e.failures))
        .collect()
}

fn criterion_1() -> Outcome {
    let mut failures = Vec::new();
    let mut n = 0;
    for p in PRIMES {
        let entries = suite_run(p, Suite::Oracle);
        n += entries.len();
        failures.extend(entry_failures(p, &entries));
    }
    outcome(&failures, format!("{n} gradings compared, levels and all structure maps"))
}

fn is_unit_map(ans: &MackeyAnswer, m: StructureMap, want: i64) -> bool {
    let f = ans.map(m);
    f.matrix.rows() == 1 && f.matrix.cols() == 1 && f.matrix[(0, 0)] == want.into()
}

fn criterion_2() -> Outcome {
    let s = spec(3);
    let mut failures = Vec::new();
    let mut check = |name: &str, ok: bool| {
        if !ok {
            failures.push(name.to_string());
        }
    };
    let both = |g: Grading| (ring::mackey_at(s, g), pi_mackey(s, g).expect("small"));
    let z = FgAbGroup::free(1);

    let (closed, oracle) = both(Grading::new(0, 0, 0));
    for ans in [&closed, &oracle] {
        for l in SubgroupTag::ALL {
            check("pi_0 is Z at every level", ans.group(l) == z);
        }
        for m in StructureMap::ALL {
            let (a, b) = m.levels();
            let want = if m.is_restriction() { 1 } else { a.index_in(b, s) as i64 };
            check("pi_0 is the constant Mackey functor", is_unit_map(ans, m, want));
        }
    }

    let (closed, oracle) = both(Grading::new(1, 1, -1));
    check("pi_{1-γ+α} closed form is Z", closed.group(SubgroupTag::G) == z);
    check("pi_{1-γ+α} oracle is Z", oracle.group(SubgroupTag::G) == z);
    for ans in [&closed, &oracle] {
        // Generators are chosen up to sign in the oracle.
        let unit = |m| is_unit_map(ans, m, 1) || is_unit_map(ans, m, -1);
        check("Res to Cp is 1 on pi_{1-γ+α}", unit(StructureMap::ResGCp));
        check("Res to C2 is 1 on pi_{1-γ+α}", unit(StructureMap::ResGC2));
    }
    let x = ring::parse_element(3, "uga").unwrap();
    for l in [SubgroupTag::Cp, SubgroupTag::C2] {
        let r = ring::res(s, l, &ring::LevelElement::G(x.clone())).unwrap();
        let want = if l == SubgroupTag::Cp { "ul" } else { "1" };
        check("Res of uga is the unit generator", r.to_string() == want);
    }

    for (n, want) in [(0, FgAbGroup::cyclic(3)), (1, FgAbGroup::cyclic(2)), (2, FgAbGroup::zero())] {
        let g = Grading::new(n, 0, -1);
        let (closed, oracle) = both(g);
        check("reduced H_n(S^γ) closed form", closed.group(SubgroupTag::G) == want);
        check("reduced H_n(S^γ) oracle", oracle.group(SubgroupTag::G) == want);
    }
    for (g, want) in [(Grading::new(0, -1, 0), FgAbGroup::cyclic(2)), (Grading::new(2, -2, 0), z.clone())] {
        let (closed, oracle) = both(g);
        check("pi_{-α} and pi_{2-2α}", closed.group(SubgroupTag::G) == want && oracle.group(SubgroupTag::G) == want);
    }
    outcome(&failures, "pi_0, pi_{1-γ+α} with restrictions, H_*(S^γ), pi_{-α}, pi_{2-2α}".into())
}

fn criterion_3() -> Outcome {
    let mut failures = Vec::new();
    let (mut identities, mut triples) = (0usize, 0usize);
    for p in PRIMES {
        let opts = VerifyOptions::new(spec(p), Window::ACCEPTANCE, vec![Suite::Ring]);
        let report = verify(&opts, None).expect("no oracle involved");
        failures.extend(entry_failures(p, &report.entries));
        for e in &report.entries {
            if let Some((gens, rest)) = e.left.split_once(" generators, ") {
                let gens: usize = gens.parse().unwrap();
                identities += rest.trim_end_matches(" identities").parse::<usize>().unwrap();
                triples += gens * opts.triples;
            }
        }
        if !report.entries.iter().any(|e| e.key == "worked-products" && e.passed()) {
            failures.push(format!("p={p}: worked products"));
        }
    }
    if triples < 10_000 {
        failures.push(format!("only {triples} random triples"));
    }
    outcome(&failures, format!("4 worked products, {identities} identities including {triples} random triples"))
}

fn criterion_4() -> Outcome {
    let mut failures = Vec::new();
    let mut n = 0;
    for p in PRIMES {
        let entries = suite_run(p, Suite::Mackey);
        n += entries.len();
        failures.extend(entry_failures(p, &entries));
    }
    outcome(&failures, format!("{n} gradings: tr∘res, double coset formula, 2p and F7 family values"))
}

fn criterion_5() -> Outcome {
    let mut failures = Vec::new();
    let mut compared = 0;
    for p in PRIMES {
        failures.extend(entry_failures(p, &suite_run(p, Suite::Groupcoh)));
        let s = spec(p);
        let res = build_resolution(s, SubgroupTag::G, 8, DEFAULT_RANK_CAP).expect("small ranks");
        for g in Window::ACCEPTANCE.gradings() {
            if !(0..=8).contains(&-g.dimension()) {
                continue;
            }
            compared += 1;
            let r = tate::borel_vs_group_cohomology(s, g, &res);
            if r.matches() != Some(true) {
                failures.push(format!("p={p} {g}: borel {} vs {:?}", r.borel, r.cohomology));
            }
        }
    }
    outcome(&failures, format!("H^n for n ≤ 8 with both coefficients, {compared} Borel gradings"))
}

fn criterion_6() -> Outcome {
    let mut failures = Vec::new();
    let mut n = 0;
    for p in PRIMES {
        let s = spec(p);
        for g in Window::ACCEPTANCE.gradings() {
            n += 1;
            let (a, c) = (tate::assemble_at(s, g).group, ring::group_at(s, g).group());
            if a != c {
                failures.push(format!("p={p} {g}: assembled {a} vs {c}"));
            }
            let tilde = tate::theory_group_at(s, TheoryTag::Tilde, g).group;
            let split = tate::theory_group_at(s, TheoryTag::LocAAlpha, g)
                .group
                .direct_sum(&tate::theory_group_at(s, TheoryTag::LocAGamma, g).group);
            if tilde != split {
                failures.push(format!("p={p} {g}: tilde {tilde} vs {split}"));
            }
            failures.extend(tate::kc_sequences(s, g).failures.into_iter().map(|f| format!("p={p} {g}: {f}")));
        }
        for d in 0..=8 {
            let got = tate::theory_group_at(s, TheoryTag::Tilde, Grading::new(d, 0, 0)).group;
            let want = tilde_integer_expected(p, d);
            if got != want {
                failures.push(format!("p={p} tilde in degree {d}: {got} vs {want}"));
            }
        }
    }
    outcome(&failures, format!("{n} gradings assembled and split, tilde in degrees 0..8"))
}

fn criterion_7() -> Outcome {
    let mut failures = Vec::new();
    let mut samples = [0usize; 2];
    for p in PRIMES {
        let s = spec(p);
        for g in Window::ACCEPTANCE.gradings() {
            for (i, e) in [Euler::AAlpha, Euler::AGamma].into_iter().enumerate() {
                samples[i] += 1;
                match tate::localization_stabilization(s, g, e, 16) {
                    Ok(r) if r.matches => {}
                    Ok(r) => failures.push(format!("p={p} {g} {e:?}: stable {:?}, localized {}", r.stable_from, r.localized)),
                    Err(err) => failures.push(format!("p={p} {g} {e:?}: {err}")),
                }
            }
        }
    }
    if samples.iter().any(|&n| n < 20) {
        failures.push("fewer than 20 samples".into());
    }
    outcome(&failures, format!("{} a_α and {} a_γ towers", samples[0], samples[1]))
}

fn criterion_8() -> Outcome {
    let reports = properties::run_all(20_261_016, 2_000);
    let total: usize = reports.iter().map(|r| r.instances).sum();
    let mut failures: Vec<String> = reports
        .iter()
        .flat_map(|r| r.failures.iter().map(move |f| format!("{}: {f}", r.name)))
        .collect();
    if total < 10_000 {
        failures.push(format!("only {total} instances"));
    }
    let parts: Vec<String> = reports.iter().map(|r| format!("{} {}", r.name, r.instances)).collect();
    outcome(&failures, format!("{total} instances ({})", parts.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("oracle and closed form agree", criterion_1),
        ("spot values", criterion_2),
        ("ring suite", criterion_3),
        ("mackey suite", criterion_4),
        ("group cohomology", criterion_5),
        ("tate assembly", criterion_6),
        ("localization towers", criterion_7),
        ("property suites", criterion_8),
    ];
    let mut all = true;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        all &= o.passed;
        println!(
            "criterion {}: {} {name}: {} [{:.1}s]",
            i + 1,
            if o.passed { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
