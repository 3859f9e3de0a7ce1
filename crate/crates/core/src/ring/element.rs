use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::monomial::{CyclicMonomial, Kind, Mono, Monomial};
use super::RingError;

/// A homogeneous element: monomials with the integer each one carries in
/// the Borel image (the generator times its family prefix).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element<M: Mono> {
    terms: BTreeMap<M, BigInt>,
}

pub type RingElement = Element<Monomial>;
pub type SubElement = Element<CyclicMonomial>;

fn reduce_literal(kind: Kind, literal: &BigInt) -> Option<BigInt> {
    if kind.is_free() {
        let (q, r) = literal.div_rem(&BigInt::from(kind.prefix));
        r.is_zero().then(|| q * kind.prefix)
    } else {
        Some(literal.mod_floor(&BigInt::from(kind.torsion)))
    }
}

impl<M: Mono> Element<M> {
    pub fn zero() -> Self {
        Element { terms: BTreeMap::new() }
    }

    /// `literal · m`, normalized. Fails if `m` is torsion-free with a prefix
    /// that does not divide `literal`.
    pub fn from_literal(p: u64, m: M, literal: BigInt) -> Result<Self, RingError> {
        let mut e = Element::zero();
        e.add_literal(p, m, literal)?;
        Ok(e)
    }

    /// The family generator of `m` (its prefix times `m`), or zero.
    pub fn generator(p: u64, m: M) -> Self {
        match m.kind(p) {
            Some(k) => Element::from_literal(p, m, BigInt::from(k.prefix)).expect("prefix divides itself"),
            None => Element::zero(),
        }
    }

    fn add_literal(&mut self, p: u64, m: M, literal: BigInt) -> Result<(), RingError> {
        let Some(kind) = m.kind(p) else {
            return Ok(());
        };
        let sum = self.terms.remove(&m).unwrap_or_default() + literal;
        let reduced = reduce_literal(kind, &sum).ok_or_else(|| RingError::NotInRing {
            term: format!("{sum}*{m}"),
            prefix: kind.prefix,
        })?;
        if !reduced.is_zero() {
            self.terms.insert(m, reduced);
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&M, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The literal carried by `m`.
    pub fn literal(&self, m: &M) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Multiple of the family generator of `m`.
    pub fn coefficient(&self, p: u64, m: &M) -> BigInt {
        match m.kind(p) {
            Some(k) => self.literal(m) / k.prefix,
            None => BigInt::zero(),
        }
    }

    pub fn add(&self, p: u64, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, v) in &other.terms {
            out.add_literal(p, *m, v.clone()).expect("sums of ring elements stay in the ring");
        }
        out
    }

    pub fn scale(&self, p: u64, n: &BigInt) -> Self {
        let mut out = Element::zero();
        for (m, v) in &self.terms {
            out.add_literal(p, *m, v * n).expect("multiples of ring elements stay in the ring");
        }
        out
    }

    pub fn neg(&self, p: u64) -> Self {
        self.scale(p, &BigInt::from(-1))
    }

    /// Product: literals multiply and exponents add, then the result is
    /// classified and normalized.
    pub fn multiply(&self, p: u64, other: &Self) -> Self {
        let mut out = Element::zero();
        for (m, v) in &self.terms {
            for (n, w) in &other.terms {
                if let Some(mn) = m.times(*n) {
                    out.add_literal(p, mn, v * w).unwrap_or_else(|e| panic!("product {m} · {n}: {e}"));
                }
            }
        }
        out
    }

    pub fn one() -> Self
    where
        M: HasOne,
    {
        Element {
            terms: BTreeMap::from([(M::one(), BigInt::one())]),
        }
    }

    pub fn monomials(&self) -> impl Iterator<Item = &M> {
        self.terms.keys()
    }
}

pub trait HasOne {
    fn one() -> Self;
}

impl HasOne for Monomial {
    fn one() -> Self {
        Monomial::ONE
    }
}

impl RingElement {
    pub fn grading(&self) -> Option<crate::dihedral::Grading> {
        self.terms.keys().next().map(Monomial::degree)
    }
}

impl<M: Mono> fmt::Display for Element<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (m, v)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str("+")?;
            }
            if m.is_one() {
                write!(f, "{v}")?;
            } else if v.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{v}*{m}")?;
            }
        }
        Ok(())
    }
}
