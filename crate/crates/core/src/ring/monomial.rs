use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dihedral::{Grading, SubgroupTag};

/// Additive type of a monomial family: the order of its generator (0 for
/// Z) and the literal integer written in front of the generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Kind {
    pub torsion: u64,
    pub prefix: u64,
}

impl Kind {
    pub fn is_free(self) -> bool {
        self.torsion == 0
    }
}

/// A monomial of some level ring.
pub trait Mono: Copy + Ord + fmt::Debug + fmt::Display {
    /// Exponents added, or `None` when two suspensions meet.
    fn times(self, other: Self) -> Option<Self>;
    /// Family type, or `None` when the monomial names no class.
    fn kind(&self, p: u64) -> Option<Kind>;
    fn is_one(&self) -> bool;
}

/// `Σ^{-s} u_{2α}^i u_{γ-α}^j a_α^k a_γ^l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub s: u8,
    pub i: i64,
    pub j: i64,
    pub k: i64,
    pub l: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FamilyTag {
    F1,
    F2,
    F3,
    F4,
    F5,
    F6,
    F7,
    F8,
    Zero,
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FamilyTag::Zero => "ZERO",
            other => return write!(f, "{other:?}"),
        };
        f.write_str(s)
    }
}

impl Monomial {
    pub const ONE: Monomial = Monomial { s: 0, i: 0, j: 0, k: 0, l: 0 };
    pub const U2A: Monomial = Monomial { s: 0, i: 1, j: 0, k: 0, l: 0 };
    pub const UGA: Monomial = Monomial { s: 0, i: 0, j: 1, k: 0, l: 0 };
    pub const AA: Monomial = Monomial { s: 0, i: 0, j: 0, k: 1, l: 0 };
    pub const AG: Monomial = Monomial { s: 0, i: 0, j: 0, k: 0, l: 1 };

    pub const fn new(s: u8, i: i64, j: i64, k: i64, l: i64) -> Self {
        Monomial { s, i, j, k, l }
    }

    pub fn degree(&self) -> Grading {
        let s = self.s as i64;
        Grading::new(-s + 2 * self.i + self.j, -2 * self.i + self.j - self.k, -self.j - self.l)
    }

    pub fn family(&self) -> FamilyTag {
        classify(self)
    }

    /// Substitution into the C2 or Cp ring; `None` when a factor maps to 0.
    pub fn restrict(&self, level: SubgroupTag) -> Option<CyclicMonomial> {
        match level {
            SubgroupTag::Cp => (self.k == 0).then(|| CyclicMonomial::new(level, self.s, self.j, self.l)),
            SubgroupTag::C2 => (self.l == 0).then(|| CyclicMonomial::new(level, self.s, self.i, self.k)),
            SubgroupTag::E => (self.s == 0 && self.k == 0 && self.l == 0).then_some(CyclicMonomial::ONE_E),
            SubgroupTag::G => None,
        }
    }
}

pub fn classify(m: &Monomial) -> FamilyTag {
    use FamilyTag::*;
    let &Monomial { s, i, j, k, l } = m;
    if s == 0 {
        if i >= 0 && j >= 0 && k >= 0 && l >= 0 {
            return if k >= 1 && l >= 1 { Zero } else { F1 };
        }
        match (k, l) {
            (0, 0) if i <= -1 && j >= 0 => F2,
            (0, 0) if i >= 0 && j <= -1 => F3,
            (0, 0) if i <= -1 && j <= -1 => F4,
            (0, l) if l >= 1 && i <= -1 && j >= 0 => F5,
            (k, 0) if k >= 1 && i >= 0 && j <= -1 => F6,
            _ => Zero,
        }
    } else if s == 1 {
        if k == 0 && j <= -1 && l <= -1 {
            F7
        } else if l == 0 && i <= -1 && k <= -1 {
            F8
        } else {
            Zero
        }
    } else {
        Zero
    }
}

impl FamilyTag {
    pub fn kind(self, m: &Monomial, p: u64) -> Option<Kind> {
        use FamilyTag::*;
        let (torsion, prefix) = match self {
            F1 if m.k >= 1 => (2, 1),
            F1 if m.l >= 1 => (p, 1),
            F1 => (0, 1),
            F2 => (0, 2),
            F3 => (0, p),
            F4 => (0, 2 * p),
            F5 | F7 => (p, 1),
            F6 | F8 => (2, 1),
            Zero => return None,
        };
        Some(Kind { torsion, prefix })
    }
}

impl Mono for Monomial {
    fn times(self, o: Self) -> Option<Self> {
        let s = self.s + o.s;
        (s <= 1).then(|| Monomial::new(s, self.i + o.i, self.j + o.j, self.k + o.k, self.l + o.l))
    }

    fn kind(&self, p: u64) -> Option<Kind> {
        classify(self).kind(self, p)
    }

    fn is_one(&self) -> bool {
        *self == Monomial::ONE
    }
}

fn write_factor(f: &mut fmt::Formatter<'_>, first: &mut bool, name: &str, e: i64) -> fmt::Result {
    if e == 0 {
        return Ok(());
    }
    if !*first {
        f.write_str("*")?;
    }
    *first = false;
    if e == 1 {
        f.write_str(name)
    } else {
        write!(f, "{name}^{e}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        write_factor(f, &mut first, "S", -(self.s as i64))?;
        write_factor(f, &mut first, "uga", self.j)?;
        write_factor(f, &mut first, "u2a", self.i)?;
        write_factor(f, &mut first, "aa", self.k)?;
        write_factor(f, &mut first, "ag", self.l)
    }
}

/// Every monomial of degree `g` that lies in one of the eight families.
pub fn monomials_at(g: Grading) -> Vec<Monomial> {
    let mut out = BTreeSet::new();
    for s in 0..=1u8 {
        let si = s as i64;
        // l = 0
        let j = -g.c;
        if (g.a + si - j) % 2 == 0 {
            let i = (g.a + si - j) / 2;
            let k = -2 * i + j - g.b;
            out.insert(Monomial::new(s, i, j, k, 0));
        }
        // k = 0
        if (g.a + g.b + si) % 2 == 0 {
            let j = (g.a + g.b + si) / 2;
            let l = -g.c - j;
            if (g.a + si - j) % 2 == 0 {
                let i = (g.a + si - j) / 2;
                out.insert(Monomial::new(s, i, j, 0, l));
            }
        }
    }
    out.into_iter()
        .filter(|m| classify(m) != FamilyTag::Zero)
        .inspect(|m| debug_assert_eq!(m.degree(), g))
        .collect()
}

/// Monomial of the C2 ring `Z[u_{2σ}, a_σ]/(2a_σ)` (exponents `u`, `a`),
/// of the Cp ring `Z[u_λ, a_λ]/(p a_λ)`, or the unit of the e level,
/// together with the negative cones of the cyclic groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicMonomial {
    pub level: SubgroupTag,
    pub s: u8,
    pub u: i64,
    pub a: i64,
}

impl CyclicMonomial {
    pub const ONE_E: CyclicMonomial = CyclicMonomial { level: SubgroupTag::E, s: 0, u: 0, a: 0 };

    pub const fn new(level: SubgroupTag, s: u8, u: i64, a: i64) -> Self {
        CyclicMonomial { level, s, u, a }
    }

    pub fn one(level: SubgroupTag) -> Self {
        CyclicMonomial::new(level, 0, 0, 0)
    }

    /// Degree as `x + y·σ` (C2) or `x + y·λ` (Cp); `(0, 0)` at e.
    pub fn degree(&self) -> (i64, i64) {
        let s = self.s as i64;
        match self.level {
            SubgroupTag::C2 => (-s + 2 * self.u, -2 * self.u - self.a),
            SubgroupTag::Cp => (-s + 2 * self.u, -self.u - self.a),
            _ => (0, 0),
        }
    }

    fn names(&self) -> (&'static str, &'static str) {
        match self.level {
            SubgroupTag::C2 => ("u2s", "as"),
            _ => ("ul", "al"),
        }
    }
}

impl Mono for CyclicMonomial {
    fn times(self, o: Self) -> Option<Self> {
        debug_assert_eq!(self.level, o.level);
        let s = self.s + o.s;
        (s <= 1).then(|| CyclicMonomial::new(self.level, s, self.u + o.u, self.a + o.a))
    }

    fn kind(&self, p: u64) -> Option<Kind> {
        let q = match self.level {
            SubgroupTag::C2 => 2,
            SubgroupTag::Cp => p,
            SubgroupTag::E => return self.is_one().then_some(Kind { torsion: 0, prefix: 1 }),
            SubgroupTag::G => return None,
        };
        let &CyclicMonomial { s, u, a, .. } = self;
        let (torsion, prefix) = match s {
            0 if u >= 0 && a == 0 => (0, 1),
            0 if u >= 0 && a >= 1 => (q, 1),
            0 if u <= -1 && a == 0 => (0, q),
            1 if u <= -1 && a <= -1 => (q, 1),
            _ => return None,
        };
        Some(Kind { torsion, prefix })
    }

    fn is_one(&self) -> bool {
        self.s == 0 && self.u == 0 && self.a == 0
    }
}

impl fmt::Display for CyclicMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let (u, a) = self.names();
        let mut first = true;
        write_factor(f, &mut first, "S", -(self.s as i64))?;
        write_factor(f, &mut first, u, self.u)?;
        write_factor(f, &mut first, a, self.a)
    }
}

/// Every class-carrying monomial of the given level at the restriction of
/// `g` to that level.
pub fn cyclic_monomials_at(level: SubgroupTag, g: Grading, p: u64) -> Vec<CyclicMonomial> {
    let mut out = Vec::new();
    match level {
        SubgroupTag::E => {
            if g.dimension() == 0 {
                out.push(CyclicMonomial::ONE_E);
            }
        }
        SubgroupTag::C2 | SubgroupTag::Cp => {
            let (x, y) = match level {
                SubgroupTag::C2 => (g.a + g.c, g.b + g.c),
                _ => (g.a + g.b, g.c),
            };
            for s in 0..=1u8 {
                let xs = x + s as i64;
                if xs % 2 != 0 {
                    continue;
                }
                let u = xs / 2;
                let a = match level {
                    SubgroupTag::C2 => -y - 2 * u,
                    _ => -y - u,
                };
                let m = CyclicMonomial::new(level, s, u, a);
                if m.kind(p).is_some() {
                    debug_assert_eq!(m.degree(), (x, y));
                    out.push(m);
                }
            }
        }
        SubgroupTag::G => {}
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use FamilyTag::*;

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&Monomial::ONE), F1);
        assert_eq!(classify(&Monomial::new(0, -1, 2, 0, 0)), F2);
        assert_eq!(classify(&Monomial::new(1, 0, -1, 0, -2)), F7);
        assert_eq!(classify(&Monomial::new(0, 0, 0, 1, 1)), Zero);
        assert_eq!(classify(&Monomial::new(0, -1, 0, 1, 0)), Zero);
    }

    #[test]
    fn generator_degrees() {
        assert_eq!(Monomial::U2A.degree(), Grading::new(2, -2, 0));
        assert_eq!(Monomial::UGA.degree(), Grading::new(1, 1, -1));
        assert_eq!(Monomial::AA.degree(), Grading::new(0, -1, 0));
        assert_eq!(Monomial::AG.degree(), Grading::new(0, 0, -1));
    }

    #[test]
    fn enumeration_finds_every_family_member() {
        // Brute force over a box of exponents.
        let mut seen = std::collections::BTreeMap::<Grading, Vec<Monomial>>::new();
        for s in 0..=1 {
            for i in -6..=6 {
                for j in -6..=6 {
                    for k in -6..=6 {
                        for l in -6..=6 {
                            let m = Monomial::new(s, i, j, k, l);
                            if classify(&m) != Zero {
                                seen.entry(m.degree()).or_default().push(m);
                            }
                        }
                    }
                }
            }
        }
        for a in -4..=4 {
            for b in -2..=2 {
                for c in -2..=2 {
                    let g = Grading::new(a, b, c);
                    let mut want = seen.get(&g).cloned().unwrap_or_default();
                    want.sort();
                    assert_eq!(monomials_at(g), want, "{g}");
                }
            }
        }
    }

    #[test]
    fn display_order() {
        assert_eq!(Monomial::new(1, -1, -1, 0, -1).to_string(), "S^-1*uga^-1*u2a^-1*ag^-1");
        assert_eq!(Monomial::new(0, 0, 1, 1, 0).to_string(), "uga*aa");
        assert_eq!(CyclicMonomial::new(SubgroupTag::C2, 1, -1, -1).to_string(), "S^-1*u2s^-1*as^-1");
    }
}
