//! The closed form: monomial families at every grading, the product, and
//! the restriction and transfer maps to the cyclic subgroup levels.

mod element;
mod mackey;
mod monomial;
mod parse;

use thiserror::Error;

use crate::dihedral::{Grading, SubgroupTag};

pub use element::{Element, HasOne, RingElement, SubElement};
pub use mackey::{group_at, level_group_at, mackey_at, res, tr, weyl, GradedPiece, LevelElement};
pub use monomial::{classify, cyclic_monomials_at, monomials_at, CyclicMonomial, FamilyTag, Kind, Mono, Monomial};
pub use parse::{format_element, parse_element};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("terms of different gradings at position {pos}: {left} and {right}")]
    GradingMismatch { pos: usize, left: Grading, right: Grading },
    #[error("{term} is not in the ring: its family needs a multiple of {prefix}")]
    NotInRing { term: String, prefix: u64 },
    #[error("no structure map from {from} to {to}")]
    UndefinedLevelPair { from: SubgroupTag, to: SubgroupTag },
    #[error("element lives at level {actual}, expected {expected}")]
    WrongLevel { expected: SubgroupTag, actual: SubgroupTag },
}
