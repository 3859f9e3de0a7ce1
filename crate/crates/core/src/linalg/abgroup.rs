//! Finitely generated abelian groups and homomorphisms between presented
//! groups.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::lattice::{in_span, kernel_basis, solve_in_basis, span_basis};
use super::matrix::IntMatrix;
use super::snf::{smith_big, Track};

/// Canonical form: free rank plus invariant factors `d_1 | d_2 | ...`,
/// each at least 2. Equality of values is isomorphism of groups.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
pub struct FgAbGroup {
    pub free_rank: usize,
    #[serde(with = "bigint_vec")]
    pub torsion: Vec<BigInt>,
}

impl FgAbGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup { free_rank: rank, torsion: vec![] }
    }

    pub fn cyclic(order: u64) -> Self {
        Self::from_orders(&[BigInt::from(order)])
    }

    /// Canonical form of `⊕ Z/d_i`, where `d_i = 0` means a free summand.
    pub fn from_orders(orders: &[BigInt]) -> Self {
        let n = orders.len();
        let m = IntMatrix::diagonal(n, n, orders);
        Self::cokernel_of(&m)
    }

    /// `Z^rows / column span of relations`.
    pub fn cokernel_of(relations: &IntMatrix) -> Self {
        let s = smith_big(relations, Track::NONE);
        let torsion = s.diag[..s.rank].iter().filter(|d| !d.is_one()).cloned().collect();
        FgAbGroup {
            free_rank: relations.rows() - s.rank,
            torsion,
        }
    }

    /// Direct sum: canonical form of the concatenated summands.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut orders: Vec<BigInt> = self.torsion.iter().chain(&other.torsion).cloned().collect();
        orders.extend(std::iter::repeat_n(BigInt::zero(), self.free_rank + other.free_rank));
        Self::from_orders(&orders)
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion.iter().map(|d| d.to_u64().unwrap_or(u64::MAX)).collect()
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join("+"))
    }
}

/// `Z^gens / column span of relations`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub gens: usize,
    pub relations: IntMatrix,
}

impl Presentation {
    pub fn free(gens: usize) -> Self {
        Presentation {
            gens,
            relations: IntMatrix::zeros(gens, 0),
        }
    }

    /// Diagonal presentation; an order of zero contributes no relation.
    pub fn from_orders(orders: &[BigInt]) -> Self {
        let cols: Vec<Vec<BigInt>> = orders
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(i, d)| {
                let mut c = vec![BigInt::zero(); orders.len()];
                c[i] = d.abs();
                c
            })
            .collect();
        Presentation {
            gens: orders.len(),
            relations: IntMatrix::from_columns(orders.len(), &cols),
        }
    }

    pub fn group(&self) -> FgAbGroup {
        FgAbGroup::cokernel_of(&self.relations)
    }

    /// Whether every column of `x` is zero in the presented group.
    pub fn all_zero(&self, x: &IntMatrix) -> bool {
        in_span(&self.relations, x)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MapError {
    #[error("malformed map: matrix is {rows}x{cols}, expected {exp_rows}x{exp_cols}")]
    Shape {
        rows: usize,
        cols: usize,
        exp_rows: usize,
        exp_cols: usize,
    },
    #[error("malformed map: source relations are not sent into target relations")]
    MalformedMap,
}

/// A homomorphism given on generators: column `j` is the image of source
/// generator `j` in target generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgAbMap {
    pub source: Presentation,
    pub target: Presentation,
    pub matrix: IntMatrix,
}

/// Isomorphism invariants of a homomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MapInvariants {
    pub kernel: FgAbGroup,
    pub image: FgAbGroup,
    pub cokernel: FgAbGroup,
    /// Smith diagonal of `[f | target relations]`, units included.
    #[serde(with = "bigint_vec")]
    pub factors: Vec<BigInt>,
}

impl FgAbMap {
    pub fn new(source: Presentation, target: Presentation, matrix: IntMatrix) -> Result<Self, MapError> {
        if matrix.rows() != target.gens || matrix.cols() != source.gens {
            return Err(MapError::Shape {
                rows: matrix.rows(),
                cols: matrix.cols(),
                exp_rows: target.gens,
                exp_cols: source.gens,
            });
        }
        let carried = matrix.checked_mul(&source.relations).unwrap();
        if !target.all_zero(&carried) {
            return Err(MapError::MalformedMap);
        }
        Ok(FgAbMap { source, target, matrix })
    }

    pub fn identity(p: &Presentation) -> Self {
        FgAbMap {
            source: p.clone(),
            target: p.clone(),
            matrix: IntMatrix::identity(p.gens),
        }
    }

    pub fn scalar(p: &Presentation, k: i64) -> Self {
        let mut m = IntMatrix::identity(p.gens);
        for i in 0..p.gens {
            m[(i, i)] = BigInt::from(k);
        }
        FgAbMap {
            source: p.clone(),
            target: p.clone(),
            matrix: m,
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &FgAbMap) -> FgAbMap {
        assert_eq!(first.target.gens, self.source.gens, "composition shape mismatch");
        FgAbMap {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.checked_mul(&first.matrix).unwrap(),
        }
    }

    pub fn add(&self, other: &FgAbMap) -> FgAbMap {
        let data = self
            .matrix
            .entries()
            .iter()
            .zip(other.matrix.entries())
            .map(|(a, b)| a + b)
            .collect();
        FgAbMap {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: IntMatrix::from_vec(self.matrix.rows(), self.matrix.cols(), data),
        }
    }

    /// Equality as homomorphisms (entries compared modulo target relations).
    pub fn equals(&self, other: &FgAbMap) -> bool {
        if self.matrix.rows() != other.matrix.rows() || self.matrix.cols() != other.matrix.cols() {
            return false;
        }
        let diff = self.matrix.checked_sub(&other.matrix).unwrap();
        self.target.all_zero(&diff)
    }

    pub fn is_zero(&self) -> bool {
        self.target.all_zero(&self.matrix)
    }

    pub fn invariants(&self) -> MapInvariants {
        map_invariants(self)
    }
}

/// Kernel, image and cokernel of `f`, in canonical form.
pub fn map_invariants(f: &FgAbMap) -> MapInvariants {
    let m = f.source.gens;
    let n = f.target.gens;
    let rt = &f.target.relations;

    // coker = Z^n / (im F + im R_t)
    let combined = f.matrix.hconcat(rt);
    let coker_smith = smith_big(&combined, Track::NONE);
    let cokernel = FgAbGroup::cokernel_of(&combined);
    let mut factors: Vec<BigInt> = coker_smith.diag[..coker_smith.rank].to_vec();
    factors.extend(std::iter::repeat_n(BigInt::zero(), n - coker_smith.rank));

    // L = {x : F x ∈ im R_t}
    let mut neg_rt = rt.clone();
    for i in 0..neg_rt.rows() {
        for j in 0..neg_rt.cols() {
            neg_rt[(i, j)] = -neg_rt[(i, j)].clone();
        }
    }
    let joint = f.matrix.hconcat(&neg_rt);
    let k = kernel_basis(&joint);
    let l_gens = k.select_rows(0..m);
    let l_basis = span_basis(&l_gens);

    // image ≅ Z^m / L
    let image = FgAbGroup::cokernel_of(&l_basis);

    // kernel = L / im R_s
    let kernel = if l_basis.cols() == 0 {
        FgAbGroup::zero()
    } else {
        let x = solve_in_basis(&l_basis, &f.source.relations)
            .expect("source relations lie in L for a well-formed map");
        FgAbGroup::cokernel_of(&x)
    };

    MapInvariants {
        kernel,
        image,
        cokernel,
        factors,
    }
}

pub(crate) mod bigint_vec {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let as_str: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        // Small values are emitted as JSON numbers.
        let nums: Option<Vec<i64>> = v.iter().map(|x| i64::try_from(x).ok()).collect();
        match nums {
            Some(n) => n.serialize(s),
            None => as_str.serialize(s),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Item {
            N(i64),
            S(String),
        }
        let items = Vec::<Item>::deserialize(d)?;
        items
            .into_iter()
            .map(|it| match it {
                Item::N(n) => Ok(BigInt::from(n)),
                Item::S(s) => s.parse().map_err(serde::de::Error::custom),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn canonical_merge() {
        let g = FgAbGroup::from_orders(&[b(2), b(3), b(0)]);
        assert_eq!(g, FgAbGroup { free_rank: 1, torsion: vec![b(6)] });
        assert_eq!(g.to_string(), "Z+Z/6");
        let h = FgAbGroup::cyclic(2).direct_sum(&FgAbGroup::cyclic(4));
        assert_eq!(h.torsion, vec![b(2), b(4)]);
    }

    #[test]
    fn multiplication_by_p() {
        let z = Presentation::free(1);
        let f = FgAbMap::new(z.clone(), z, IntMatrix::from_rows_i64(&[vec![5]])).unwrap();
        let inv = f.invariants();
        assert!(inv.kernel.is_zero());
        assert_eq!(inv.cokernel, FgAbGroup::cyclic(5));
        assert_eq!(inv.image, FgAbGroup::free(1));
    }

    #[test]
    fn projection_off_torsion() {
        let src = Presentation::from_orders(&[b(0), b(2)]);
        let tgt = Presentation::free(1);
        let f = FgAbMap::new(src, tgt, IntMatrix::from_rows_i64(&[vec![1, 0]])).unwrap();
        let inv = f.invariants();
        assert_eq!(inv.kernel, FgAbGroup::cyclic(2));
        assert!(inv.cokernel.is_zero());
    }

    #[test]
    fn two_p_cokernel() {
        // 1x1 Smith form of [2p] with p = 3.
        let z = Presentation::free(1);
        let f = FgAbMap::new(z.clone(), z, IntMatrix::from_rows_i64(&[vec![6]])).unwrap();
        assert_eq!(f.invariants().cokernel, FgAbGroup::cyclic(6));
    }

    #[test]
    fn malformed_map_rejected() {
        // Z/2 -> Z sending the generator to 1 does not respect 2x = 0.
        let src = Presentation::from_orders(&[b(2)]);
        let err = FgAbMap::new(src, Presentation::free(1), IntMatrix::from_rows_i64(&[vec![1]]));
        assert_eq!(err.unwrap_err(), MapError::MalformedMap);
    }

    #[test]
    fn torsion_kernel_and_image() {
        // Z/4 -> Z/4, x -> 2x: kernel Z/2, image Z/2, cokernel Z/2.
        let p = Presentation::from_orders(&[b(4)]);
        let f = FgAbMap::new(p.clone(), p, IntMatrix::from_rows_i64(&[vec![2]])).unwrap();
        let inv = f.invariants();
        assert_eq!(inv.kernel, FgAbGroup::cyclic(2));
        assert_eq!(inv.image, FgAbGroup::cyclic(2));
        assert_eq!(inv.cokernel, FgAbGroup::cyclic(2));
    }
}
