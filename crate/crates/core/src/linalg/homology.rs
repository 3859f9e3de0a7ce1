//! Homology of bounded complexes of free abelian groups, with explicit
//! cycle representatives so that induced maps can be computed.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use thiserror::Error;

use super::abgroup::{FgAbGroup, Presentation};
use super::integer::{small_then_big, Integer, Overflow};
use super::matrix::{IntMatrix, Matrix};
use super::snf::{smith_generic, Track};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("not a complex: d{0} o d{1} != 0")]
    NotAComplex(i64, i64),
    #[error("differential d{degree} has shape {rows}x{cols}, expected {exp_rows}x{exp_cols}")]
    Shape {
        degree: i64,
        rows: usize,
        cols: usize,
        exp_rows: usize,
        exp_cols: usize,
    },
}

/// A bounded chain complex of free abelian groups. `d(n)` maps degree `n`
/// to degree `n - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex {
    ranks: BTreeMap<i64, usize>,
    diffs: BTreeMap<i64, IntMatrix>,
}

impl FreeComplex {
    /// `ranks[k]` is the rank in degree `low + k`; `diffs[k]` is the
    /// differential out of degree `low + k + 1`.
    pub fn new(low: i64, ranks: Vec<usize>, diffs: Vec<IntMatrix>) -> Result<Self, ComplexError> {
        let ranks: BTreeMap<i64, usize> = ranks.into_iter().enumerate().map(|(k, r)| (low + k as i64, r)).collect();
        let mut c = FreeComplex {
            ranks,
            diffs: BTreeMap::new(),
        };
        for (k, d) in diffs.into_iter().enumerate() {
            let deg = low + k as i64 + 1;
            let (er, ec) = (c.rank(deg - 1), c.rank(deg));
            if d.rows() != er || d.cols() != ec {
                return Err(ComplexError::Shape {
                    degree: deg,
                    rows: d.rows(),
                    cols: d.cols(),
                    exp_rows: er,
                    exp_cols: ec,
                });
            }
            c.diffs.insert(deg, d);
        }
        c.check()?;
        Ok(c)
    }

    pub fn rank(&self, n: i64) -> usize {
        self.ranks.get(&n).copied().unwrap_or(0)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.ranks.keys().copied()
    }

    pub fn d(&self, n: i64) -> IntMatrix {
        self.diffs
            .get(&n)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(self.rank(n - 1), self.rank(n)))
    }

    fn check(&self) -> Result<(), ComplexError> {
        for (&n, d) in &self.diffs {
            let below = self.d(n - 1);
            if !below.checked_mul(d).unwrap().is_zero() {
                return Err(ComplexError::NotAComplex(n - 1, n));
            }
        }
        Ok(())
    }

    /// The same complex with every degree raised by `k`.
    pub fn shift(&self, k: i64) -> FreeComplex {
        FreeComplex {
            ranks: self.ranks.iter().map(|(&n, &r)| (n + k, r)).collect(),
            diffs: self.diffs.iter().map(|(&n, d)| (n + k, d.clone())).collect(),
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .map(|(&n, &r)| if n.rem_euclid(2) == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }
}

/// `ker(d_n) / im(d_{n+1})` in canonical form.
pub fn homology_at(c: &FreeComplex, n: i64) -> FgAbGroup {
    let h = Homology::compute_big(&c.d(n), &c.d(n + 1));
    h.group()
}

/// Homology in one degree with cycle representatives.
#[derive(Clone, Debug)]
pub struct Homology {
    /// Order of each generator; zero for a free generator. Never one.
    pub orders: Vec<BigInt>,
    /// Cycle representatives, one column per generator.
    pub generators: IntMatrix,
    /// Maps a cycle to its generator coordinates (before reduction).
    projector: IntMatrix,
}

impl Homology {
    /// `d_out: C_n -> C_{n-1}`, `d_in: C_{n+1} -> C_n`.
    pub fn compute_big(d_out: &IntMatrix, d_in: &IntMatrix) -> Homology {
        small_then_big(
            || {
                let a = Matrix::<i128>::from_big(d_out)?;
                let b = Matrix::<i128>::from_big(d_in)?;
                compute_generic(&a, &b)
            },
            || compute_generic(d_out, d_in),
        )
    }

    pub fn compute_small(d_out: &Matrix<i128>, d_in: &Matrix<i128>) -> Homology {
        small_then_big(
            || compute_generic(d_out, d_in),
            || compute_generic(&d_out.to_big(), &d_in.to_big()),
        )
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn group(&self) -> FgAbGroup {
        FgAbGroup::from_orders(&self.orders)
    }

    pub fn presentation(&self) -> Presentation {
        Presentation::from_orders(&self.orders)
    }

    pub fn chain_rank(&self) -> usize {
        self.generators.rows()
    }

    pub fn generator(&self, i: usize) -> Vec<BigInt> {
        self.generators.column(i)
    }

    /// Coordinates of a cycle, reduced modulo the generator orders.
    pub fn coordinates(&self, cycle: &[BigInt]) -> Vec<BigInt> {
        let raw = self.projector.checked_mul_vec(cycle).unwrap();
        raw.into_iter()
            .zip(&self.orders)
            .map(|(x, d)| if Integer::is_zero(d) { x } else { x.div_floor(d).1 })
            .collect()
    }
}

fn compute_generic<T: Integer>(d_out: &Matrix<T>, d_in: &Matrix<T>) -> Result<Homology, Overflow> {
    let cn = d_out.cols();
    debug_assert_eq!(d_in.rows(), cn);
    let s1 = smith_generic(d_out, Track::RIGHT)?;
    let r = s1.rank;
    let v = s1.v.unwrap();
    let v_inv = s1.v_inv.unwrap();
    let kernel = v.select_columns(r..cn);
    let left_inv = v_inv.select_rows(r..cn);
    let x = left_inv.checked_mul(d_in)?;
    let s2 = smith_generic(&x, Track::LEFT)?;
    let z = cn - r;
    let u = s2.u.unwrap();
    let u_inv = s2.u_inv.unwrap();
    let mut kept = Vec::new();
    let mut orders = Vec::new();
    for i in 0..z {
        let d = if i < s2.rank { s2.diag[i].clone() } else { T::zero() };
        if d == T::one() {
            continue;
        }
        kept.push(i);
        orders.push(d.to_bigint());
    }
    let generators = kernel.checked_mul(&u_inv.select_columns(kept.iter().copied()))?;
    let projector = u.select_rows(kept.iter().copied()).checked_mul(&left_inv)?;
    Ok(Homology {
        orders,
        generators: generators.to_big(),
        projector: projector.to_big(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows_i64(rows)
    }

    #[test]
    fn single_z() {
        let c = FreeComplex::new(0, vec![1], vec![]).unwrap();
        assert_eq!(homology_at(&c, 0), FgAbGroup::free(1));
        assert_eq!(homology_at(&c, 1), FgAbGroup::zero());
    }

    #[test]
    fn times_two() {
        let c = FreeComplex::new(0, vec![1, 1], vec![m(&[vec![2]])]).unwrap();
        assert_eq!(homology_at(&c, 0), FgAbGroup::cyclic(2));
        assert_eq!(homology_at(&c, 1), FgAbGroup::zero());
    }

    #[test]
    fn fixed_s_gamma_at_p3() {
        // G-fixed reduced cellular chains of S^gamma for p = 3:
        // d1 = [3 3], d2 = [2; -2].
        let c = FreeComplex::new(0, vec![1, 2, 1], vec![m(&[vec![3, 3]]), m(&[vec![2], vec![-2]])]).unwrap();
        assert_eq!(homology_at(&c, 0), FgAbGroup::cyclic(3));
        assert_eq!(homology_at(&c, 1), FgAbGroup::cyclic(2));
        assert_eq!(homology_at(&c, 2), FgAbGroup::zero());
    }

    #[test]
    fn not_a_complex() {
        let err = FreeComplex::new(0, vec![1, 1, 1], vec![m(&[vec![1]]), m(&[vec![1]])]).unwrap_err();
        assert_eq!(err, ComplexError::NotAComplex(1, 2));
    }

    #[test]
    fn coordinates_detect_boundaries() {
        let c = FreeComplex::new(0, vec![1, 1], vec![m(&[vec![4]])]).unwrap();
        let h = Homology::compute_big(&c.d(0), &c.d(1));
        assert_eq!(h.orders, vec![BigInt::from(4)]);
        let g = h.generator(0);
        assert_eq!(h.coordinates(&g), vec![BigInt::from(1)]);
        assert_eq!(h.coordinates(&[BigInt::from(4)]), vec![BigInt::from(0)]);
        assert_eq!(h.coordinates(&[BigInt::from(7)]), vec![BigInt::from(3)]);
    }
}
