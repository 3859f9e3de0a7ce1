//! RO(D_2p)-graded homotopy Mackey functors of the Eilenberg-MacLane
//! spectrum of the constant Mackey functor Z, for an odd prime p.

pub mod linalg;
pub mod dihedral;
pub mod gmodule;
pub mod mackey;
pub mod oracle;
pub mod ring;
pub mod groupcoh;
pub mod tate;
pub mod properties;
pub mod service;
