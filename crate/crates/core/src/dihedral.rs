//! The dihedral group D_2p = <ξ, τ | ξ^p = τ² = 1, τξ = ξ^{p-1}τ>, its
//! subgroup ladder e ⊂ C2 = <τ>, Cp ⊂ G, and the grading lattice
//! Z{1, α, γ} with its restrictions to subgroups.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("p = {0} is not an odd prime")]
    NotOddPrime(u64),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse grading {text:?}: expected three integers \"a,b,c\"")]
pub struct GradingParseError {
    pub text: String,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupSpec {
    p: u32,
}

/// `ξ^i τ^j` in normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub i: u32,
    pub j: u8,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement { i: 0, j: 0 };

    pub fn is_reflection(self) -> bool {
        self.j == 1
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.i, self.j) {
            (0, 0) => write!(f, "1"),
            (0, 1) => write!(f, "t"),
            (1, 0) => write!(f, "x"),
            (1, 1) => write!(f, "xt"),
            (i, 0) => write!(f, "x^{i}"),
            (i, _) => write!(f, "x^{i}t"),
        }
    }
}

impl GroupSpec {
    pub fn new(p: u64) -> Result<Self, GroupError> {
        if p < 3 || !is_prime(p) || p > u32::MAX as u64 {
            return Err(GroupError::NotOddPrime(p));
        }
        Ok(GroupSpec { p: p as u32 })
    }

    pub fn p(self) -> u32 {
        self.p
    }

    pub fn order(self) -> usize {
        2 * self.p as usize
    }

    pub fn xi(self) -> GroupElement {
        GroupElement { i: 1 % self.p, j: 0 }
    }

    pub fn tau(self) -> GroupElement {
        GroupElement { i: 0, j: 1 }
    }

    pub fn element(self, i: i64, j: i64) -> GroupElement {
        GroupElement {
            i: i.rem_euclid(self.p as i64) as u32,
            j: j.rem_euclid(2) as u8,
        }
    }

    /// Position of `g` in [`GroupSpec::elements`]: `i + p·j`.
    pub fn index_of(self, g: GroupElement) -> usize {
        g.i as usize + self.p as usize * g.j as usize
    }

    pub fn from_index(self, k: usize) -> GroupElement {
        let p = self.p as usize;
        GroupElement {
            i: (k % p) as u32,
            j: (k / p) as u8,
        }
    }

    pub fn elements(self) -> impl Iterator<Item = GroupElement> {
        (0..self.order()).map(move |k| self.from_index(k))
    }

    /// `(ξ^i τ^j)(ξ^k τ^l) = ξ^{i + (-1)^j k} τ^{j+l}`.
    pub fn multiply(self, x: GroupElement, y: GroupElement) -> GroupElement {
        let p = self.p as i64;
        let k = if x.j == 0 { y.i as i64 } else { -(y.i as i64) };
        GroupElement {
            i: (x.i as i64 + k).rem_euclid(p) as u32,
            j: (x.j + y.j) % 2,
        }
    }

    pub fn inverse(self, x: GroupElement) -> GroupElement {
        if x.j == 1 {
            x
        } else {
            GroupElement {
                i: (self.p - x.i) % self.p,
                j: 0,
            }
        }
    }

    pub fn conjugate(self, g: GroupElement, x: GroupElement) -> GroupElement {
        self.multiply(self.multiply(g, x), self.inverse(g))
    }

    pub fn power(self, x: GroupElement, n: u64) -> GroupElement {
        let mut r = GroupElement::IDENTITY;
        for _ in 0..n {
            r = self.multiply(r, x);
        }
        r
    }

    /// `ξ^k` for every `k`, one representative of each left coset of `C2`.
    pub fn rotations(self) -> impl Iterator<Item = GroupElement> {
        (0..self.p).map(|i| GroupElement { i, j: 0 })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SubgroupTag {
    E,
    C2,
    Cp,
    G,
}

impl SubgroupTag {
    pub const ALL: [SubgroupTag; 4] = [SubgroupTag::G, SubgroupTag::Cp, SubgroupTag::C2, SubgroupTag::E];

    pub fn name(self) -> &'static str {
        match self {
            SubgroupTag::E => "e",
            SubgroupTag::C2 => "C2",
            SubgroupTag::Cp => "Cp",
            SubgroupTag::G => "G",
        }
    }

    pub fn order(self, spec: GroupSpec) -> usize {
        match self {
            SubgroupTag::E => 1,
            SubgroupTag::C2 => 2,
            SubgroupTag::Cp => spec.p() as usize,
            SubgroupTag::G => spec.order(),
        }
    }

    pub fn contains(self, g: GroupElement) -> bool {
        match self {
            SubgroupTag::E => g == GroupElement::IDENTITY,
            SubgroupTag::C2 => g.i == 0,
            SubgroupTag::Cp => g.j == 0,
            SubgroupTag::G => true,
        }
    }

    pub fn elements(self, spec: GroupSpec) -> Vec<GroupElement> {
        spec.elements().filter(|&g| self.contains(g)).collect()
    }

    pub fn is_subgroup_of(self, other: SubgroupTag) -> bool {
        use SubgroupTag::*;
        matches!(
            (self, other),
            (E, _) | (C2, C2) | (C2, G) | (Cp, Cp) | (Cp, G) | (G, G)
        )
    }

    /// Left coset representatives of `self` in `larger`.
    pub fn coset_reps(self, larger: SubgroupTag, spec: GroupSpec) -> Vec<GroupElement> {
        assert!(self.is_subgroup_of(larger), "{self:?} is not inside {larger:?}");
        let mut seen = vec![false; spec.order()];
        let mut reps = Vec::new();
        for g in larger.elements(spec) {
            if seen[spec.index_of(g)] {
                continue;
            }
            reps.push(g);
            for h in self.elements(spec) {
                seen[spec.index_of(spec.multiply(g, h))] = true;
            }
        }
        reps
    }

    pub fn index_in(self, larger: SubgroupTag, spec: GroupSpec) -> usize {
        larger.order(spec) / self.order(spec)
    }
}

impl fmt::Display for SubgroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SubgroupTag {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "e" | "E" => Ok(SubgroupTag::E),
            "C2" | "c2" => Ok(SubgroupTag::C2),
            "Cp" | "cp" => Ok(SubgroupTag::Cp),
            "G" | "g" => Ok(SubgroupTag::G),
            _ => Err(format!("unknown subgroup {s:?}")),
        }
    }
}

/// One double coset `H g K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCoset {
    pub rep: GroupElement,
    pub size: usize,
    /// `H ∩ g K g⁻¹`.
    pub intersection: Vec<GroupElement>,
}

pub fn double_cosets(spec: GroupSpec, h: SubgroupTag, k: SubgroupTag) -> Vec<DoubleCoset> {
    let hs = h.elements(spec);
    let ks = k.elements(spec);
    let mut seen = vec![false; spec.order()];
    let mut out = Vec::new();
    for g in spec.elements() {
        if seen[spec.index_of(g)] {
            continue;
        }
        let mut size = 0;
        for &a in &hs {
            for &b in &ks {
                let x = spec.multiply(spec.multiply(a, g), b);
                if !seen[spec.index_of(x)] {
                    seen[spec.index_of(x)] = true;
                    size += 1;
                }
            }
        }
        let conj: Vec<GroupElement> = ks.iter().map(|&b| spec.conjugate(g, b)).collect();
        let intersection = hs.iter().copied().filter(|x| conj.contains(x)).collect();
        out.push(DoubleCoset { rep: g, size, intersection });
    }
    out
}

/// A point `a + bα + cγ` of the grading lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
pub struct Grading {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl Grading {
    pub const ZERO: Grading = Grading { a: 0, b: 0, c: 0 };

    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        Grading { a, b, c }
    }

    /// Dimension of the underlying virtual sphere.
    pub fn dimension(self) -> i64 {
        self.a + self.b + 2 * self.c
    }

    /// Parity of the orientation character: G acts on the top class of the
    /// underlying sphere by `sign^(b+c)`.
    pub fn orientation_odd(self) -> bool {
        (self.b + self.c).rem_euclid(2) == 1
    }

    pub fn as_array(self) -> [i64; 3] {
        [self.a, self.b, self.c]
    }
}

impl std::ops::Add for Grading {
    type Output = Grading;
    fn add(self, o: Grading) -> Grading {
        Grading::new(self.a + o.a, self.b + o.b, self.c + o.c)
    }
}

impl std::ops::Sub for Grading {
    type Output = Grading;
    fn sub(self, o: Grading) -> Grading {
        Grading::new(self.a - o.a, self.b - o.b, self.c - o.c)
    }
}

impl std::ops::Mul<Grading> for i64 {
    type Output = Grading;
    fn mul(self, g: Grading) -> Grading {
        Grading::new(self * g.a, self * g.b, self * g.c)
    }
}

impl fmt::Display for Grading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.a, self.b, self.c)
    }
}

impl FromStr for Grading {
    type Err = GradingParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || GradingParseError { text: s.to_string() };
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(err());
        }
        let v: Vec<i64> = parts
            .iter()
            .map(|x| x.parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|_| err())?;
        Ok(Grading::new(v[0], v[1], v[2]))
    }
}

/// A grading seen from a subgroup. For the cyclic levels, `trivial` counts
/// trivial summands and `twisted` the nontrivial irreducible (σ resp. λ).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LevelGrading {
    G(Grading),
    Cp { trivial: i64, lambda: i64 },
    C2 { trivial: i64, sigma: i64 },
    E { dim: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictedGrading {
    pub grading: LevelGrading,
    /// Exponent of the sign character on the top class, mod 2.
    pub orientation_odd: bool,
}

impl LevelGrading {
    pub fn dimension(self) -> i64 {
        match self {
            LevelGrading::G(g) => g.dimension(),
            LevelGrading::Cp { trivial, lambda } => trivial + 2 * lambda,
            LevelGrading::C2 { trivial, sigma } => trivial + sigma,
            LevelGrading::E { dim } => dim,
        }
    }
}

pub fn restrict_grading(g: Grading, level: SubgroupTag) -> RestrictedGrading {
    let grading = match level {
        SubgroupTag::G => LevelGrading::G(g),
        SubgroupTag::Cp => LevelGrading::Cp {
            trivial: g.a + g.b,
            lambda: g.c,
        },
        SubgroupTag::C2 => LevelGrading::C2 {
            trivial: g.a + g.c,
            sigma: g.b + g.c,
        },
        SubgroupTag::E => LevelGrading::E { dim: g.dimension() },
    };
    RestrictedGrading {
        grading,
        orientation_odd: g.orientation_odd(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d6() -> GroupSpec {
        GroupSpec::new(3).unwrap()
    }

    #[test]
    fn rejects_non_odd_primes() {
        for p in [0, 1, 2, 4, 9, 15] {
            assert!(GroupSpec::new(p).is_err());
        }
        assert!(GroupSpec::new(7).is_ok());
    }

    #[test]
    fn defining_relation() {
        let s = d6();
        assert_eq!(s.multiply(s.tau(), s.xi()), GroupElement { i: 2, j: 1 });
        assert_eq!(s.multiply(s.xi(), s.element(2, 0)), GroupElement::IDENTITY);
        assert_eq!(s.power(s.xi(), 3), GroupElement::IDENTITY);
        assert_eq!(s.power(s.tau(), 2), GroupElement::IDENTITY);
    }

    #[test]
    fn group_axioms_on_full_table() {
        for p in [3, 5, 7] {
            let s = GroupSpec::new(p).unwrap();
            let els: Vec<_> = s.elements().collect();
            assert_eq!(els.len(), 2 * p as usize);
            for &x in &els {
                assert_eq!(s.multiply(x, s.inverse(x)), GroupElement::IDENTITY);
                for &y in &els {
                    for &z in &els {
                        assert_eq!(
                            s.multiply(s.multiply(x, y), z),
                            s.multiply(x, s.multiply(y, z))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn double_coset_counts() {
        let s = d6();
        let c2 = double_cosets(s, SubgroupTag::C2, SubgroupTag::C2);
        let mut sizes: Vec<_> = c2.iter().map(|d| d.size).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 4]);
        assert_eq!(double_cosets(s, SubgroupTag::Cp, SubgroupTag::Cp).len(), 2);
        for h in SubgroupTag::ALL {
            assert_eq!(double_cosets(s, SubgroupTag::G, h).len(), 1);
        }
    }

    #[test]
    fn restriction_examples() {
        let g = Grading::new(0, 0, 1);
        assert_eq!(
            restrict_grading(g, SubgroupTag::C2).grading,
            LevelGrading::C2 { trivial: 1, sigma: 1 }
        );
        assert_eq!(restrict_grading(g, SubgroupTag::E).grading, LevelGrading::E { dim: 2 });
        assert_eq!(
            restrict_grading(Grading::new(0, 1, 0), SubgroupTag::Cp).grading,
            LevelGrading::Cp { trivial: 1, lambda: 0 }
        );
    }

    #[test]
    fn grading_round_trip() {
        let g: Grading = "-3, 2,1".parse().unwrap();
        assert_eq!(g, Grading::new(-3, 2, 1));
        assert_eq!(g.to_string().parse::<Grading>().unwrap(), g);
        assert!("1,2".parse::<Grading>().is_err());
        assert!("1,x,2".parse::<Grading>().is_err());
    }

    proptest! {
        #[test]
        fn double_cosets_partition(p in prop::sample::select(vec![3u64, 5, 7, 11]), h in 0usize..4, k in 0usize..4) {
            let s = GroupSpec::new(p).unwrap();
            let dc = double_cosets(s, SubgroupTag::ALL[h], SubgroupTag::ALL[k]);
            prop_assert_eq!(dc.iter().map(|d| d.size).sum::<usize>(), s.order());
            for d in &dc {
                let hk = SubgroupTag::ALL[h].order(s) * SubgroupTag::ALL[k].order(s);
                prop_assert_eq!(d.size * d.intersection.len(), hk);
            }
        }

        #[test]
        fn restriction_is_additive(a in -9i64..9, b in -9i64..9, c in -9i64..9, x in -9i64..9, y in -9i64..9, z in -9i64..9) {
            let g = Grading::new(a, b, c);
            let h = Grading::new(x, y, z);
            for l in SubgroupTag::ALL {
                let (rg, rh, rs) = (restrict_grading(g, l), restrict_grading(h, l), restrict_grading(g + h, l));
                prop_assert_eq!(rs.grading.dimension(), g.dimension() + h.dimension());
                prop_assert_eq!(rg.grading.dimension(), g.dimension());
                prop_assert_eq!(rs.orientation_odd, rg.orientation_odd ^ rh.orientation_odd);
            }
        }
    }
}
