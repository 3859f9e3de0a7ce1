use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::element::{Element, RingElement, SubElement};
use super::monomial::{cyclic_monomials_at, monomials_at, CyclicMonomial, FamilyTag, Kind, Mono, Monomial};
use super::RingError;
use crate::dihedral::{Grading, GroupSpec, SubgroupTag};
use crate::linalg::{FgAbGroup, FgAbMap, IntMatrix};
use crate::mackey::{LevelValue, MackeyAnswer, StructureMap};

/// The group of one level at one grading, with one generator per monomial.
#[derive(Clone, Debug)]
pub struct GradedPiece<M: Mono> {
    p: u64,
    pub basis: Vec<M>,
    pub kinds: Vec<Kind>,
}

impl<M: Mono> GradedPiece<M> {
    fn new(p: u64, basis: Vec<M>) -> Self {
        let kinds = basis.iter().map(|m| m.kind(p).expect("enumerated monomials carry classes")).collect();
        GradedPiece { p, basis, kinds }
    }

    pub fn orders(&self) -> Vec<BigInt> {
        self.kinds.iter().map(|k| BigInt::from(k.torsion)).collect()
    }

    pub fn group(&self) -> FgAbGroup {
        FgAbGroup::from_orders(&self.orders())
    }

    pub fn generator(&self, n: usize) -> Element<M> {
        Element::generator(self.p, self.basis[n])
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.basis.len()).map(|n| self.generator(n).to_string()).collect()
    }

    /// Coordinates in the generators. Every monomial of `x` must be one of
    /// the basis monomials.
    pub fn coordinates(&self, x: &Element<M>) -> Vec<BigInt> {
        for m in x.monomials() {
            assert!(self.basis.contains(m), "{m} is not in this piece");
        }
        self.basis.iter().map(|m| x.coefficient(self.p, m)).collect()
    }

    pub fn level_value(&self) -> LevelValue {
        LevelValue::from_orders(&self.orders(), self.labels())
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }
}

/// The G level at `g`.
pub fn group_at(spec: GroupSpec, g: Grading) -> GradedPiece<Monomial> {
    GradedPiece::new(spec.p() as u64, monomials_at(g))
}

/// The C2, Cp or e level at (the restriction of) `g`.
pub fn level_group_at(spec: GroupSpec, level: SubgroupTag, g: Grading) -> GradedPiece<CyclicMonomial> {
    assert_ne!(level, SubgroupTag::G, "use group_at for the top level");
    let p = spec.p() as u64;
    GradedPiece::new(p, cyclic_monomials_at(level, g, p))
}

/// An element of some level, tagged with the level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LevelElement {
    G(RingElement),
    Sub(SubgroupTag, SubElement),
}

impl LevelElement {
    pub fn level(&self) -> SubgroupTag {
        match self {
            LevelElement::G(_) => SubgroupTag::G,
            LevelElement::Sub(l, _) => *l,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            LevelElement::G(x) => x.is_zero(),
            LevelElement::Sub(_, x) => x.is_zero(),
        }
    }
}

impl std::fmt::Display for LevelElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LevelElement::G(x) => x.fmt(f),
            LevelElement::Sub(_, x) => x.fmt(f),
        }
    }
}

fn res_g(p: u64, to: SubgroupTag, x: &RingElement) -> SubElement {
    let mut out = SubElement::zero();
    for (m, v) in x.terms() {
        if let Some(c) = m.restrict(to) {
            out = out.add(p, &SubElement::from_literal(p, c, v.clone()).expect("restriction of a class"));
        }
    }
    out
}

fn res_to_e(p: u64, x: &SubElement) -> SubElement {
    let mut out = SubElement::zero();
    for (m, v) in x.terms() {
        if m.s == 0 && m.a == 0 {
            out = out.add(p, &SubElement::from_literal(p, CyclicMonomial::ONE_E, v.clone()).unwrap());
        }
    }
    out
}

/// Restriction from `x`'s level to `to`.
pub fn res(spec: GroupSpec, to: SubgroupTag, x: &LevelElement) -> Result<LevelElement, RingError> {
    use SubgroupTag::*;
    let p = spec.p() as u64;
    let from = x.level();
    if !to.is_subgroup_of(from) || to == from {
        return Err(RingError::UndefinedLevelPair { from, to });
    }
    Ok(match x {
        LevelElement::G(x) => match to {
            E => LevelElement::Sub(E, res_to_e(p, &res_g(p, Cp, x))),
            _ => LevelElement::Sub(to, res_g(p, to, x)),
        },
        LevelElement::Sub(_, x) => LevelElement::Sub(E, res_to_e(p, x)),
    })
}

fn index(spec: GroupSpec, small: SubgroupTag, large: SubgroupTag) -> BigInt {
    BigInt::from(small.index_in(large, spec))
}

fn exact_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    assert!(r.is_zero(), "{b} does not divide {a}");
    q
}

/// Transfer of one generator of level `from` to G, at `g`.
fn tr_generator_to_g(spec: GroupSpec, from: SubgroupTag, z: CyclicMonomial, g: Grading) -> RingElement {
    let p = spec.p() as u64;
    let top = group_at(spec, g);
    let zgen = SubElement::generator(p, z);
    let idx = index(spec, from, SubgroupTag::G);
    let kind = z.kind(p).expect("generator");
    if !kind.is_free() {
        // The torsion class restricting onto z by 1, if any.
        for n in 0..top.len() {
            let x = top.generator(n);
            if res_g(p, from, &x) == zgen {
                return x.scale(p, &idx);
            }
        }
        return RingElement::zero();
    }
    for n in 0..top.len() {
        if top.kinds[n].is_free() {
            let x = top.generator(n);
            let rho = res_g(p, from, &x).coefficient(p, &z);
            return x.scale(p, &exact_div(&idx, &rho));
        }
    }
    // Dimension 0 without a free class at G: the only class is the F8 one
    // with a_α^{-1}, hit through the C2 level.
    if from == SubgroupTag::Cp {
        let r = res_to_e(p, &zgen).coefficient(p, &CyclicMonomial::ONE_E);
        for n in 0..top.len() {
            if top.basis[n].family() == FamilyTag::F8 {
                return top.generator(n).scale(p, &r);
            }
        }
    }
    RingElement::zero()
}

/// Transfer of the e-level generator to `to` at `g`.
fn tr_e_generator(spec: GroupSpec, to: SubgroupTag, g: Grading) -> SubElement {
    let p = spec.p() as u64;
    let piece = level_group_at(spec, to, g);
    let idx = index(spec, SubgroupTag::E, to);
    for n in 0..piece.len() {
        let y = piece.generator(n);
        if piece.kinds[n].is_free() {
            let r = res_to_e(p, &y).coefficient(p, &CyclicMonomial::ONE_E);
            return y.scale(p, &exact_div(&idx, &r));
        }
    }
    // C2 at odd x = -y: the suspension class Σ^{-1} u_{2σ}^{-i} a_σ^{-1}.
    match piece.len() {
        0 => SubElement::zero(),
        _ => piece.generator(0),
    }
}

/// Transfer from `x`'s level to `to`; `g` is the grading of `x` as a
/// G-representation.
pub fn tr(spec: GroupSpec, to: SubgroupTag, x: &LevelElement, g: Grading) -> Result<LevelElement, RingError> {
    use SubgroupTag::*;
    let p = spec.p() as u64;
    let from = x.level();
    let LevelElement::Sub(_, x) = x else {
        return Err(RingError::UndefinedLevelPair { from, to });
    };
    if !from.is_subgroup_of(to) || to == from {
        return Err(RingError::UndefinedLevelPair { from, to });
    }
    if from == E {
        let n = x.coefficient(p, &CyclicMonomial::ONE_E);
        if to == G {
            let y = tr_e_generator(spec, Cp, g).scale(p, &n);
            return tr(spec, G, &LevelElement::Sub(Cp, y), g);
        }
        return Ok(LevelElement::Sub(to, tr_e_generator(spec, to, g).scale(p, &n)));
    }
    let mut out = RingElement::zero();
    for (m, _) in x.terms() {
        let c = x.coefficient(p, m);
        out = out.add(p, &tr_generator_to_g(spec, from, *m, g).scale(p, &c));
    }
    Ok(LevelElement::G(out))
}

/// The Weyl involution on the Cp level at `g`.
pub fn weyl(spec: GroupSpec, x: &SubElement, g: Grading) -> SubElement {
    let p = spec.p() as u64;
    let mut out = SubElement::zero();
    for (m, v) in x.terms() {
        let sign = if (m.u + g.b).rem_euclid(2) == 0 { 1 } else { -1 };
        out = out.add(p, &SubElement::from_literal(p, *m, v * sign).unwrap());
    }
    out
}

fn matrix_of<M: Mono, N: Mono>(
    source: &GradedPiece<M>,
    target: &GradedPiece<N>,
    f: impl Fn(&Element<M>) -> Element<N>,
) -> IntMatrix {
    let mut m = IntMatrix::zeros(target.len(), source.len());
    for j in 0..source.len() {
        for (i, v) in target.coordinates(&f(&source.generator(j))).into_iter().enumerate() {
            m[(i, j)] = v;
        }
    }
    m
}

/// Closed-form Mackey functor value at `g`.
pub fn mackey_at(spec: GroupSpec, g: Grading) -> MackeyAnswer {
    use SubgroupTag::*;
    let p = spec.p() as u64;
    let top = group_at(spec, g);
    let sub: BTreeMap<SubgroupTag, GradedPiece<CyclicMonomial>> =
        [Cp, C2, E].into_iter().map(|l| (l, level_group_at(spec, l, g))).collect();
    let mut levels = BTreeMap::from([(G, top.level_value())]);
    for (&l, piece) in &sub {
        levels.insert(l, piece.level_value());
    }
    let pres = |l: SubgroupTag| levels[&l].presentation.clone();
    let fg = |from: SubgroupTag, to: SubgroupTag, m: IntMatrix| {
        FgAbMap::new(pres(from), pres(to), m).unwrap_or_else(|e| panic!("{from}→{to} at {g}: {e}"))
    };
    let mut maps = BTreeMap::new();
    for sm in StructureMap::ALL {
        let (s, t) = sm.levels();
        let m = match (s, sm.is_restriction()) {
            (G, true) => matrix_of(&top, &sub[&t], |x| res_g(p, t, x)),
            (_, true) => matrix_of(&sub[&s], &sub[&t], |x| res_to_e(p, x)),
            (_, false) if t == G => matrix_of(&sub[&s], &top, |x| match tr(spec, G, &LevelElement::Sub(s, x.clone()), g) {
                Ok(LevelElement::G(y)) => y,
                _ => unreachable!(),
            }),
            (_, false) => matrix_of(&sub[&s], &sub[&t], |x| match tr(spec, t, &LevelElement::Sub(s, x.clone()), g) {
                Ok(LevelElement::Sub(_, y)) => y,
                _ => unreachable!(),
            }),
        };
        maps.insert(sm, fg(s, t, m));
    }
    let weyl = fg(Cp, Cp, matrix_of(&sub[&Cp], &sub[&Cp], |x| weyl(spec, x, g)));
    let e_xi = FgAbMap::identity(&levels[&E].presentation);
    let tau_sign = if (g.b + g.c).rem_euclid(2) == 0 { 1 } else { -1 };
    let e_tau = FgAbMap::scalar(&levels[&E].presentation, tau_sign);
    MackeyAnswer {
        spec,
        grading: g,
        levels,
        maps,
        weyl,
        e_xi,
        e_tau,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{parse_element, Monomial};

    fn spec(p: u64) -> GroupSpec {
        GroupSpec::new(p).unwrap()
    }

    fn el(p: u64, s: &str) -> RingElement {
        parse_element(p, s).unwrap()
    }

    #[test]
    fn group_examples() {
        let s = spec(3);
        assert_eq!(group_at(s, Grading::ZERO).labels(), ["1"]);
        assert_eq!(group_at(s, Grading::new(-2, 2, 0)).labels(), ["2*u2a^-1"]);
        let g = group_at(s, Grading::new(1, 0, -1));
        assert_eq!(g.labels(), ["uga*aa"]);
        assert_eq!(g.group(), FgAbGroup::cyclic(2));
        assert!(group_at(s, Grading::new(2, 0, -1)).is_empty());
        assert_eq!(group_at(s, Grading::new(0, 0, -1)).group(), FgAbGroup::cyclic(3));
    }

    #[test]
    fn worked_products() {
        let p = 7;
        let x = el(p, "2*uga*u2a^-1");
        assert_eq!(x.multiply(p, &x).to_string(), "4*uga^2*u2a^-2");
        assert_eq!(x.multiply(p, &x).coefficient(p, &Monomial::new(0, -2, 2, 0, 0)), BigInt::from(2));
        let y = x.multiply(p, &el(p, "7*uga^-1"));
        assert_eq!(y, el(p, "14*u2a^-1"));
        assert_eq!(y.coefficient(p, &Monomial::new(0, -1, 0, 0, 0)), BigInt::from(7));
        let z = el(p, "u2a^-1*ag");
        assert_eq!(z.multiply(p, &el(p, "S^-1*uga^-1*ag^-2")), el(p, "S^-1*u2a^-1*uga^-1*ag^-1"));
        assert!(z.multiply(p, &el(p, "S^-1*uga^-1*ag^-1")).is_zero());
    }

    #[test]
    fn restriction_examples() {
        let s = spec(5);
        let x = LevelElement::G(el(5, "10*u2a^-1*uga^-1"));
        let LevelElement::Sub(_, r) = res(s, SubgroupTag::Cp, &x).unwrap() else { panic!() };
        assert_eq!(r.coefficient(5, &CyclicMonomial::new(SubgroupTag::Cp, 0, -1, 0)), BigInt::from(2));
        let LevelElement::Sub(_, r) = res(s, SubgroupTag::C2, &x).unwrap() else { panic!() };
        assert_eq!(r.coefficient(5, &CyclicMonomial::new(SubgroupTag::C2, 0, -1, 0)), BigInt::from(5));
        let LevelElement::Sub(_, r) = res(s, SubgroupTag::C2, &LevelElement::G(el(5, "uga"))).unwrap() else {
            panic!()
        };
        assert_eq!(r.to_string(), "1");
        assert!(res(s, SubgroupTag::G, &x).is_err());
    }

    #[test]
    fn torsion_transfers() {
        let s = spec(3);
        let x = el(3, "S^-1*u2a^-1*uga^-1*ag^-1");
        let g = x.grading().unwrap();
        let LevelElement::Sub(_, r) = res(s, SubgroupTag::Cp, &LevelElement::G(x.clone())).unwrap() else {
            panic!()
        };
        assert_eq!(r.to_string(), "S^-1*ul^-1*al^-1");
        let t = tr(s, SubgroupTag::G, &LevelElement::Sub(SubgroupTag::Cp, r), g).unwrap();
        assert_eq!(t, LevelElement::G(x.scale(3, &BigInt::from(2))));
    }

    #[test]
    fn constant_at_zero() {
        let s = spec(5);
        let a = mackey_at(s, Grading::ZERO);
        for l in SubgroupTag::ALL {
            assert_eq!(a.group(l), FgAbGroup::free(1));
        }
        assert_eq!(a.map(StructureMap::TrCpG).matrix[(0, 0)], BigInt::from(2));
        assert_eq!(a.map(StructureMap::TrC2G).matrix[(0, 0)], BigInt::from(5));
        assert_eq!(a.map(StructureMap::ResGCp).matrix[(0, 0)], BigInt::from(1));
    }
}
