//! Batch verification of the closed form against the oracle and the
//! second-row assembly, with caching, and table rendering.

pub mod cache;
pub mod json;
pub mod table;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dihedral::{Grading, GroupSpec, SubgroupTag};
use crate::groupcoh::{self, build_resolution, CohomologyError, Resolution, DEFAULT_RANK_CAP};
use crate::mackey::{mackey_axiom_check, MackeyAnswer, MackeySignature};
use crate::oracle::{Budget, OracleComplex, OracleError};
use crate::ring::{self, CyclicMonomial, FamilyTag, LevelElement, RingElement, SubElement};
use crate::tate::{self, Euler, TheoryTag};

pub use cache::{Cache, CACHE_ENV};

/// A box of gradings `a + bα + cγ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub a: (i64, i64),
    pub b: (i64, i64),
    pub c: (i64, i64),
}

impl Window {
    pub const ACCEPTANCE: Window = Window {
        a: (-6, 6),
        b: (-3, 3),
        c: (-3, 3),
    };

    /// All gradings, sorted by `(a, b, c)`.
    pub fn gradings(&self) -> Vec<Grading> {
        let mut out = Vec::new();
        for a in self.a.0..=self.a.1 {
            for b in self.b.0..=self.b.1 {
                for c in self.c.0..=self.c.1 {
                    out.push(Grading::new(a, b, c));
                }
            }
        }
        out
    }

    pub fn contains(&self, g: Grading) -> bool {
        (self.a.0..=self.a.1).contains(&g.a) && (self.b.0..=self.b.1).contains(&g.b) && (self.c.0..=self.c.1).contains(&g.c)
    }

    pub fn len(&self) -> usize {
        let n = |r: (i64, i64)| (r.1 - r.0 + 1).max(0) as usize;
        n(self.a) * n(self.b) * n(self.c)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}..{},{}..{},{}..{}",
            self.a.0, self.a.1, self.b.0, self.b.1, self.c.0, self.c.1
        )
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("bad window {0:?}: expected aMin..aMax[,bMin..bMax,cMin..cMax]")]
pub struct WindowParseError(pub String);

fn parse_range(s: &str) -> Option<(i64, i64)> {
    let (lo, hi) = s.split_once("..")?;
    Some((lo.trim().parse().ok()?, hi.trim().parse().ok()?))
}

impl FromStr for Window {
    type Err = WindowParseError;
    /// `a0..a1,b0..b1,c0..c1`, or `a0..a1` alone for integer gradings.
    fn from_str(s: &str) -> Result<Self, WindowParseError> {
        let err = || WindowParseError(s.to_string());
        let parts: Vec<&str> = s.split(',').collect();
        match parts.as_slice() {
            [a] => Ok(Window {
                a: parse_range(a).ok_or_else(err)?,
                b: (0, 0),
                c: (0, 0),
            }),
            [a, b, c] => Ok(Window {
                a: parse_range(a).ok_or_else(err)?,
                b: parse_range(b).ok_or_else(err)?,
                c: parse_range(c).ok_or_else(err)?,
            }),
            _ => Err(err()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Oracle,
    Assembly,
    Ring,
    Mackey,
    Groupcoh,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Oracle, Suite::Assembly, Suite::Ring, Suite::Mackey, Suite::Groupcoh];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Oracle => "oracle",
            Suite::Assembly => "assembly",
            Suite::Ring => "ring",
            Suite::Mackey => "mackey",
            Suite::Groupcoh => "groupcoh",
        }
    }

    /// `all` or one suite name.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>, String> {
        if s == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .map(|x| vec![x])
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Match,
    Mismatch,
}

/// Outcome of one check: the two sides it compared and any failed
/// identities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub suite: Suite,
    pub key: String,
    pub status: Status,
    pub left: String,
    pub right: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

impl Entry {
    fn new(suite: Suite, key: String, left: String, right: String, mut failures: Vec<String>) -> Self {
        if left != right && failures.is_empty() {
            failures.push("sides differ".into());
        }
        let status = if failures.is_empty() { Status::Match } else { Status::Mismatch };
        Entry {
            suite,
            key,
            status,
            left,
            right,
            failures,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Match
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheStats {
    pub hits: usize,
    pub misses: usize,
    pub corrupted: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub p: u32,
    pub window: String,
    pub suites: Vec<Suite>,
    pub checked: usize,
    pub mismatches: usize,
    pub entries: Vec<Entry>,
    pub elapsed_ms: u128,
    pub cache: CacheStats,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }
}

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error("thread pool: {0}")]
    Pool(String),
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub spec: GroupSpec,
    pub window: Window,
    pub suites: Vec<Suite>,
    pub jobs: usize,
    pub budget: Budget,
    /// Highest cohomological degree compared.
    pub max_degree: usize,
    /// Random associativity triples per grading.
    pub triples: usize,
    pub tower_steps: usize,
}

impl VerifyOptions {
    pub fn new(spec: GroupSpec, window: Window, suites: Vec<Suite>) -> Self {
        VerifyOptions {
            spec,
            window,
            suites,
            jobs: 0,
            budget: Budget::default(),
            max_degree: 8,
            triples: 64,
            tower_steps: 16,
        }
    }
}

/// Gradings first, numerically, then named checks.
fn key_order(key: &str) -> (u8, Vec<i64>, &str) {
    match key.split(',').map(str::parse).collect::<Result<Vec<i64>, _>>() {
        Ok(v) if v.len() == 3 => (0, v, key),
        _ => (1, Vec::new(), key),
    }
}

fn grading_key(g: Grading) -> String {
    format!("{},{},{}", g.a, g.b, g.c)
}

fn levels_summary(s: &MackeySignature) -> String {
    SubgroupTag::ALL
        .iter()
        .map(|l| format!("{}={}", l, s.levels[l]))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Work shared by the checks of one run.
struct Context<'a> {
    opts: &'a VerifyOptions,
    resolution: Option<Resolution>,
    /// Generators of the G level at every window grading.
    ring_basis: Vec<(Grading, Vec<RingElement>)>,
    ring_gens: Vec<RingElement>,
    /// Generators of the C2, Cp and e levels at every window grading.
    sub_basis: BTreeMap<SubgroupTag, Vec<(Grading, Vec<SubElement>)>>,
}

impl<'a> Context<'a> {
    fn new(opts: &'a VerifyOptions) -> Result<Self, VerifyError> {
        let spec = opts.spec;
        let needs_res = opts.suites.iter().any(|s| matches!(s, Suite::Assembly | Suite::Groupcoh));
        let resolution = if needs_res {
            Some(build_resolution(spec, SubgroupTag::G, opts.max_degree, DEFAULT_RANK_CAP)?)
        } else {
            None
        };
        let mut ring_basis: Vec<(Grading, Vec<RingElement>)> = Vec::new();
        let mut sub_basis = BTreeMap::new();
        if opts.suites.contains(&Suite::Ring) {
            for g in opts.window.gradings() {
                let piece = ring::group_at(spec, g);
                ring_basis.push((g, (0..piece.len()).map(|n| piece.generator(n)).collect()));
            }
            for l in [SubgroupTag::Cp, SubgroupTag::C2, SubgroupTag::E] {
                let v = opts
                    .window
                    .gradings()
                    .into_iter()
                    .map(|g| {
                        let piece = ring::level_group_at(spec, l, g);
                        (g, (0..piece.len()).map(|n| piece.generator(n)).collect())
                    })
                    .collect();
                sub_basis.insert(l, v);
            }
        }
        let ring_gens = ring_basis.iter().flat_map(|(_, v)| v.iter().cloned()).collect();
        Ok(Context {
            opts,
            resolution,
            ring_basis,
            ring_gens,
            sub_basis,
        })
    }

    fn p(&self) -> u64 {
        self.opts.spec.p() as u64
    }
}

/// Compares the closed form with the oracle at one grading.
pub fn compare_with_oracle(closed: &MackeyAnswer, oracle: &MackeyAnswer) -> Entry {
    let (sc, so) = (closed.signature(), oracle.signature());
    let (left, right) = if sc == so {
        (levels_summary(&sc), levels_summary(&so))
    } else {
        (
            serde_json::to_string(&sc).expect("serializable"),
            serde_json::to_string(&so).expect("serializable"),
        )
    };
    Entry::new(Suite::Oracle, grading_key(closed.grading), left, right, Vec::new())
}

/// Identities every value must satisfy, with the double coset formula for
/// `res^G_{C2} tr^G_{C2}` written out: the identity double coset plus
/// `(p-1)/2` free ones through e.
pub fn mackey_identities(ans: &MackeyAnswer) -> Vec<String> {
    use SubgroupTag::*;
    let mut failures = mackey_axiom_check(ans).failures;
    let p = ans.spec.p() as i64;
    let lhs = ans.res(G, C2).after(&ans.tr(C2, G));
    let rhs = ans
        .identity(C2)
        .add(&ans.tr(E, C2).after(&ans.res(C2, E)).after(&ans.scalar(C2, (p - 1) / 2)));
    if !lhs.equals(&rhs) {
        failures.push("res^G_C2 tr^G_C2 ≠ 1 + (p-1)/2 tr res".into());
    }
    for (small, large) in [(Cp, G), (C2, G), (E, Cp), (E, C2)] {
        let idx = small.index_in(large, ans.spec) as i64;
        if !ans.tr(small, large).after(&ans.res(large, small)).equals(&ans.scalar(large, idx)) {
            failures.push(format!("tr∘res ≠ {idx} on {large}"));
        }
    }
    failures
}

/// The restriction and transfer values on the 2p-prefixed and the
/// Σ^{-1}…a_γ^{-j} families at `g`.
pub fn family_values(spec: GroupSpec, g: Grading) -> Vec<String> {
    let p = spec.p() as u64;
    let top = ring::group_at(spec, g);
    let mut failures = Vec::new();
    let coeff = |x: &LevelElement, m: &CyclicMonomial| match x {
        LevelElement::Sub(_, y) => y.coefficient(p, m),
        _ => BigInt::from(0),
    };
    for n in 0..top.len() {
        let m = top.basis[n];
        let x = LevelElement::G(top.generator(n));
        match m.family() {
            FamilyTag::F4 => {
                for (l, want) in [(SubgroupTag::Cp, 2), (SubgroupTag::C2, p)] {
                    let r = ring::res(spec, l, &x).expect("nested");
                    let target = m.restrict(l).expect("u's restrict");
                    if coeff(&r, &target) != BigInt::from(want) {
                        failures.push(format!("res to {l} of {x} is {r}, expected {want}×"));
                    }
                }
            }
            FamilyTag::F7 => {
                let r = ring::res(spec, SubgroupTag::Cp, &x).expect("nested");
                let target = m.restrict(SubgroupTag::Cp).expect("k = 0");
                if coeff(&r, &target) != BigInt::from(1) {
                    failures.push(format!("res to Cp of {x} is {r}, expected 1×"));
                }
                let t = ring::tr(spec, SubgroupTag::G, &r, g).expect("nested");
                let LevelElement::G(t) = t else { unreachable!() };
                if t.coefficient(p, &m) != BigInt::from(2) {
                    failures.push(format!("tr to G of {r} is {t}, expected 2×"));
                }
            }
            _ => {}
        }
    }
    failures
}

fn oracle_column(ctx: &Context, suite: Suite, b: i64, c: i64, cache: Option<&Cache>) -> Result<Vec<Entry>, VerifyError> {
    let opts = ctx.opts;
    let spec = opts.spec;
    let p = spec.p();
    let mut out = Vec::new();
    let mut todo = Vec::new();
    for a in opts.window.a.0..=opts.window.a.1 {
        let key = grading_key(Grading::new(a, b, c));
        match cache.and_then(|k| k.get::<Entry>(p, suite.name(), &key)) {
            Some(e) => out.push(e),
            None => todo.push(a),
        }
    }
    if todo.is_empty() {
        return Ok(out);
    }
    let oc = OracleComplex::new(spec, b, c, opts.budget)?;
    for a in todo {
        let g = Grading::new(a, b, c);
        let oracle = oc.mackey_at(a);
        let closed = ring::mackey_at(spec, g);
        let e = match suite {
            Suite::Oracle => compare_with_oracle(&closed, &oracle),
            _ => {
                let mut failures: Vec<String> =
                    mackey_identities(&oracle).into_iter().map(|f| format!("oracle: {f}")).collect();
                failures.extend(mackey_identities(&closed).into_iter().map(|f| format!("closed form: {f}")));
                failures.extend(family_values(spec, g));
                let n = mackey_axiom_check(&oracle).checked + mackey_axiom_check(&closed).checked;
                Entry::new(suite, grading_key(g), format!("{n} identities"), format!("{n} identities"), failures)
            }
        };
        if let Some(k) = cache {
            let _ = k.put(p, suite.name(), &e.key, &e);
        }
        out.push(e);
    }
    Ok(out)
}

fn ring_check(ctx: &Context, g: Grading, basis: &[RingElement]) -> Entry {
    let spec = ctx.opts.spec;
    let p = ctx.p();
    let one = RingElement::one();
    let mut failures = Vec::new();
    let mut checked = 0usize;
    let mut fail = |f: String| {
        if failures.len() < 8 {
            failures.push(f);
        }
    };
    let res_to = |l: SubgroupTag, x: &RingElement| match ring::res(spec, l, &LevelElement::G(x.clone())).expect("nested") {
        LevelElement::Sub(_, y) => y,
        _ => unreachable!(),
    };
    let tr_from = |l: SubgroupTag, y: &SubElement, at: Grading| match ring::tr(spec, SubgroupTag::G, &LevelElement::Sub(l, y.clone()), at)
        .expect("nested")
    {
        LevelElement::G(x) => x,
        _ => unreachable!(),
    };
    let tr_e = |l: SubgroupTag, y: &SubElement, at: Grading| match ring::tr(spec, l, &LevelElement::Sub(SubgroupTag::E, y.clone()), at)
        .expect("nested")
    {
        LevelElement::Sub(_, x) => x,
        _ => unreachable!(),
    };
    let mut rng = StdRng::seed_from_u64((p << 48) ^ ((g.a as u64 & 0xffff) << 32) ^ ((g.b as u64 & 0xffff) << 16) ^ (g.c as u64 & 0xffff));
    for x in basis {
        checked += 2;
        if x.multiply(p, &one) != *x || one.multiply(p, x) != *x {
            fail(format!("1·{x} ≠ {x}"));
        }
        for (h, ys) in &ctx.ring_basis {
            for y in ys {
                checked += 3;
                let xy = x.multiply(p, y);
                if xy != y.multiply(p, x) {
                    fail(format!("{x}·{y} ≠ {y}·{x}"));
                }
                if !xy.is_zero() && xy.grading() != Some(g + *h) {
                    fail(format!("deg({x}·{y}) ≠ {}", g + *h));
                }
                for l in [SubgroupTag::Cp, SubgroupTag::C2, SubgroupTag::E] {
                    let lhs = res_to(l, &xy);
                    let rhs = res_to(l, x).multiply(p, &res_to(l, y));
                    if lhs != rhs {
                        fail(format!("res_{l}({x}·{y}) = {lhs} ≠ {rhs}"));
                    }
                }
            }
            for y1 in ys {
                for y2 in ys {
                    checked += 1;
                    let lhs = x.multiply(p, &y1.add(p, y2));
                    let rhs = x.multiply(p, y1).add(p, &x.multiply(p, y2));
                    if lhs != rhs {
                        fail(format!("{x}·({y1}+{y2}) ≠ {x}·{y1}+{x}·{y2}"));
                    }
                }
            }
        }
        // Frobenius reciprocity for every sublevel generator in the window.
        for (&l, rows) in &ctx.sub_basis {
            let rx = res_to(l, x);
            for (h, ys) in rows {
                for y in ys {
                    checked += 1;
                    let (lhs, rhs) = if l == SubgroupTag::E {
                        let t = |z: &SubElement, at| tr_from(SubgroupTag::Cp, &tr_e(SubgroupTag::Cp, z, at), at);
                        (t(&rx.multiply(p, y), g + *h), x.multiply(p, &t(y, *h)))
                    } else {
                        (tr_from(l, &rx.multiply(p, y), g + *h), x.multiply(p, &tr_from(l, y, *h)))
                    };
                    if lhs != rhs {
                        fail(format!("tr_{l}(res({x})·{y}) = {lhs} ≠ {x}·tr({y}) = {rhs}"));
                    }
                }
            }
        }
        for _ in 0..ctx.opts.triples {
            checked += 1;
            let gens = &ctx.ring_gens;
            let y = &gens[rng.gen_range(0..gens.len())];
            let z = &gens[rng.gen_range(0..gens.len())];
            let lhs = x.multiply(p, y).multiply(p, z);
            let rhs = x.multiply(p, &y.multiply(p, z));
            if lhs != rhs {
                fail(format!("({x}·{y})·{z} ≠ {x}·({y}·{z})"));
            }
        }
    }
    // Frobenius on the cyclic levels: tr^H_e(res^H_e(z)·ι) = z·tr^H_e(ι).
    for l in [SubgroupTag::Cp, SubgroupTag::C2] {
        if let Some(rows) = ctx.sub_basis.get(&l) {
            let zs = rows.iter().find(|(h, _)| *h == g).map(|(_, z)| z.clone()).unwrap_or_default();
            let e_rows = &ctx.sub_basis[&SubgroupTag::E];
            for z in &zs {
                let rz = match ring::res(spec, SubgroupTag::E, &LevelElement::Sub(l, z.clone())).expect("nested") {
                    LevelElement::Sub(_, y) => y,
                    _ => unreachable!(),
                };
                for (h, iotas) in e_rows {
                    for iota in iotas {
                        checked += 1;
                        let lhs = tr_e(l, &rz.multiply(p, iota), g + *h);
                        let rhs = z.multiply(p, &tr_e(l, iota, *h));
                        if lhs != rhs {
                            fail(format!("tr^{l}_e(res({z})·1) = {lhs} ≠ {rhs}"));
                        }
                    }
                }
            }
        }
    }
    let summary = format!("{} generators, {checked} identities", basis.len());
    Entry::new(Suite::Ring, grading_key(g), summary.clone(), summary, failures)
}

fn assembly_check(ctx: &Context, g: Grading) -> Entry {
    let spec = ctx.opts.spec;
    let mut failures = Vec::new();
    let assembled = tate::assemble_at(spec, g).group;
    let closed = ring::group_at(spec, g).group();
    failures.extend(tate::kc_sequences(spec, g).failures);
    let tilde = tate::theory_group_at(spec, TheoryTag::Tilde, g).group;
    let split = tate::theory_group_at(spec, TheoryTag::LocAAlpha, g)
        .group
        .direct_sum(&tate::theory_group_at(spec, TheoryTag::LocAGamma, g).group);
    if tilde != split {
        failures.push(format!("tilde {tilde} ≠ loc_a_alpha ⊕ loc_a_gamma {split}"));
    }
    if let Some(res) = &ctx.resolution {
        let d = -g.dimension();
        if (0..=ctx.opts.max_degree as i64).contains(&d) {
            let r = tate::borel_vs_group_cohomology(spec, g, res);
            if r.matches() != Some(true) {
                failures.push(format!("borel {} ≠ H^{d} {:?}", r.borel, r.cohomology.map(|h| h.to_string())));
            }
        }
    }
    for euler in [Euler::AAlpha, Euler::AGamma] {
        match tate::localization_stabilization(spec, g, euler, ctx.opts.tower_steps) {
            Ok(r) if r.matches => {}
            Ok(r) => failures.push(format!(
                "{euler:?} tower {} does not stabilize to {}",
                r.tower.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
                r.localized
            )),
            Err(e) => failures.push(e.to_string()),
        }
    }
    Entry::new(Suite::Assembly, grading_key(g), assembled.to_string(), closed.to_string(), failures)
}

/// The integer-graded geometric part: `Z/2p` in degree 0, `Z/2` in every
/// positive even degree, plus `Z/p` in degrees divisible by 4.
pub fn tilde_integer_expected(p: u64, n: i64) -> crate::linalg::FgAbGroup {
    let mut orders = Vec::new();
    if n == 0 {
        orders.push(BigInt::from(2 * p));
    } else if n > 0 && n % 2 == 0 {
        orders.push(BigInt::from(2));
        if n % 4 == 0 {
            orders.push(BigInt::from(p));
        }
    }
    crate::linalg::FgAbGroup::from_orders(&orders)
}

fn assembly_globals(ctx: &Context) -> Vec<Entry> {
    let spec = ctx.opts.spec;
    let p = ctx.p();
    let mut out = Vec::new();
    for n in 0..=8 {
        let got = tate::theory_group_at(spec, TheoryTag::Tilde, Grading::new(n, 0, 0)).group;
        let want = tilde_integer_expected(p, n);
        out.push(Entry::new(Suite::Assembly, format!("tilde-{n}"), got.to_string(), want.to_string(), Vec::new()));
    }
    out
}

fn groupcoh_entries(ctx: &Context) -> Result<Vec<Entry>, VerifyError> {
    let res = ctx.resolution.as_ref().expect("built for this suite");
    let mut out = Vec::new();
    let audit = res.audit().err().into_iter().collect();
    let ranks = format!("{:?}", res.ranks());
    out.push(Entry::new(Suite::Groupcoh, "resolution".into(), ranks.clone(), ranks, audit));
    for row in groupcoh::closed_form_compare(res, ctx.opts.max_degree)? {
        let coeff = match row.coefficients {
            groupcoh::Coefficients::Trivial => "Z",
            groupcoh::Coefficients::Sign => "Zt",
        };
        out.push(Entry::new(
            Suite::Groupcoh,
            format!("H{}-{coeff}", row.degree),
            row.computed.to_string(),
            row.expected.to_string(),
            Vec::new(),
        ));
    }
    let spot = groupcoh::cp_spot_check(res, ctx.opts.max_degree)?;
    out.push(Entry::new(Suite::Groupcoh, "cp-spot".into(), "injective".into(), "injective".into(), spot));
    Ok(out)
}

fn cached_or<F: FnOnce() -> Entry>(cache: Option<&Cache>, p: u32, suite: &str, key: &str, f: F) -> Entry {
    if let Some(e) = cache.and_then(|c| c.get::<Entry>(p, suite, key)) {
        return e;
    }
    let e = f();
    if let Some(c) = cache {
        let _ = c.put(p, suite, key, &e);
    }
    e
}

/// Runs the selected suites over the window on `jobs` threads (0 = all
/// cores). Entries are sorted, so the report does not depend on `jobs`.
pub fn verify(opts: &VerifyOptions, cache: Option<&Cache>) -> Result<VerificationReport, VerifyError> {
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| VerifyError::Pool(e.to_string()))?;
    let p = opts.spec.p();
    let entries = pool.install(|| -> Result<Vec<Entry>, VerifyError> {
        let ctx = Context::new(opts)?;
        let mut entries = Vec::new();
        for &suite in &opts.suites {
            match suite {
                Suite::Oracle | Suite::Mackey => {
                    let cols: Vec<(i64, i64)> = (opts.window.b.0..=opts.window.b.1)
                        .flat_map(|b| (opts.window.c.0..=opts.window.c.1).map(move |c| (b, c)))
                        .collect();
                    let parts: Result<Vec<Vec<Entry>>, VerifyError> =
                        cols.par_iter().map(|&(b, c)| oracle_column(&ctx, suite, b, c, cache)).collect();
                    entries.extend(parts?.into_iter().flatten());
                }
                Suite::Ring => {
                    let dir = format!("ring-{}", opts.window);
                    let part: Vec<Entry> = ctx
                        .ring_basis
                        .par_iter()
                        .map(|(g, basis)| cached_or(cache, p, &dir, &grading_key(*g), || ring_check(&ctx, *g, basis)))
                        .collect();
                    entries.extend(part);
                    entries.push(cached_or(cache, p, "ring", "worked-products", || worked_products(opts.spec)));
                }
                Suite::Assembly => {
                    let part: Vec<Entry> = opts
                        .window
                        .gradings()
                        .par_iter()
                        .map(|g| cached_or(cache, p, "assembly", &grading_key(*g), || assembly_check(&ctx, *g)))
                        .collect();
                    entries.extend(part);
                    entries.extend(assembly_globals(&ctx));
                }
                Suite::Groupcoh => entries.extend(groupcoh_entries(&ctx)?),
            }
        }
        Ok(entries)
    })?;
    let mut entries = entries;
    entries.sort_by(|x, y| (x.suite, key_order(&x.key)).cmp(&(y.suite, key_order(&y.key))));
    let mismatches = entries.iter().filter(|e| !e.passed()).count();
    let stats = cache.map_or_else(CacheStats::default, |c| {
        use std::sync::atomic::Ordering::Relaxed;
        CacheStats {
            hits: c.hits.load(Relaxed),
            misses: c.misses.load(Relaxed),
            corrupted: c.corrupted.load(Relaxed),
        }
    });
    Ok(VerificationReport {
        p,
        window: opts.window.to_string(),
        suites: opts.suites.clone(),
        checked: entries.len(),
        mismatches,
        entries,
        elapsed_ms: start.elapsed().as_millis(),
        cache: stats,
    })
}

/// The four displayed products, each as (left factor, right factor,
/// expected product).
pub const WORKED_PRODUCTS: [(&str, &str, &str); 4] = [
    ("2*uga*u2a^-1", "2*uga*u2a^-1", "4*uga^2*u2a^-2"),
    ("2*uga*u2a^-1", "P*uga^-1", "2P*u2a^-1"),
    ("u2a^-1*ag", "S^-1*uga^-1*ag^-2", "S^-1*uga^-1*u2a^-1*ag^-1"),
    ("u2a^-1*ag", "S^-1*uga^-1*ag^-1", "0"),
];

/// Substitutes `p` for `P` and `2p` for `2P`.
pub fn instantiate(p: u64, s: &str) -> String {
    s.replace("2P", &(2 * p).to_string()).replace('P', &p.to_string())
}

pub fn worked_products(spec: GroupSpec) -> Entry {
    let p = spec.p() as u64;
    let mut got = Vec::new();
    let mut want = Vec::new();
    let mut failures = Vec::new();
    for (x, y, z) in WORKED_PRODUCTS {
        let (x, y, z) = (instantiate(p, x), instantiate(p, y), instantiate(p, z));
        match (ring::parse_element(p, &x), ring::parse_element(p, &y)) {
            (Ok(a), Ok(b)) => got.push(a.multiply(p, &b).to_string()),
            (Err(e), _) | (_, Err(e)) => failures.push(e.to_string()),
        }
        want.push(z);
    }
    Entry::new(Suite::Ring, "worked-products".into(), got.join(" "), want.join(" "), failures)
}
