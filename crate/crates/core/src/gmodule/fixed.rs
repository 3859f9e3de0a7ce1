use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{GComplex, Orbit};
use crate::dihedral::{GroupElement, SubgroupTag};
use crate::linalg::{FreeComplex, IntMatrix};

/// A vector in the full basis of one degree.
pub type FixedVector = Vec<BigInt>;

/// The subcomplex of `level`-fixed chains. Its basis in each degree is the
/// signed orbit sums of the orbits whose stabilizer acts trivially; the
/// coordinate of a fixed chain on an orbit is its coefficient at the
/// orbit representative.
#[derive(Clone, Debug)]
pub struct FixedComplex {
    pub level: SubgroupTag,
    low: i64,
    orbits: Vec<Vec<Orbit>>,
    /// For each degree and basis index, the fixed orbit whose
    /// representative it is.
    rep_of: Vec<Vec<Option<u32>>>,
    complex: FreeComplex,
}

impl FixedComplex {
    pub fn new(c: &GComplex, level: SubgroupTag) -> FixedComplex {
        let low = c.low();
        let mut orbits = Vec::new();
        let mut rep_of = Vec::new();
        for n in c.degrees() {
            let os: Vec<Orbit> = c
                .module_ref(n)
                .map(|m| m.orbits(level).into_iter().filter(|o| o.fixed).collect())
                .unwrap_or_default();
            let mut lookup = vec![None; c.rank(n)];
            for (i, o) in os.iter().enumerate() {
                lookup[o.rep()] = Some(i as u32);
            }
            orbits.push(os);
            rep_of.push(lookup);
        }
        let ranks: Vec<usize> = orbits.iter().map(Vec::len).collect();
        let mut diffs = Vec::new();
        for (k, n) in c.degrees().enumerate().skip(1) {
            let mut m = IntMatrix::zeros(ranks[k - 1], ranks[k]);
            for (j, o) in orbits[k].iter().enumerate() {
                let mut acc: BTreeMap<u32, i64> = BTreeMap::new();
                for &(x, s) in &o.members {
                    for &(y, v) in c.d_column(n, x) {
                        if let Some(i) = rep_of[k - 1][y as usize] {
                            *acc.entry(i).or_insert(0) += s as i64 * v;
                        }
                    }
                }
                for (i, v) in acc {
                    m[(i as usize, j)] = BigInt::from(v);
                }
            }
            diffs.push(m);
        }
        let complex = FreeComplex::new(low, ranks, diffs).expect("fixed chains form a subcomplex");
        FixedComplex {
            level,
            low,
            orbits,
            rep_of,
            complex,
        }
    }

    pub fn complex(&self) -> &FreeComplex {
        &self.complex
    }

    fn slot(&self, n: i64) -> Option<usize> {
        let k = n - self.low;
        (k >= 0 && (k as usize) < self.orbits.len()).then_some(k as usize)
    }

    pub fn rank(&self, n: i64) -> usize {
        self.slot(n).map_or(0, |k| self.orbits[k].len())
    }

    /// The fixed chain with the given orbit coordinates.
    pub fn to_full(&self, c: &GComplex, n: i64, coords: &[BigInt]) -> FixedVector {
        let mut v = vec![BigInt::zero(); c.rank(n)];
        if let Some(k) = self.slot(n) {
            for (o, a) in self.orbits[k].iter().zip(coords) {
                if a.is_zero() {
                    continue;
                }
                for &(x, s) in &o.members {
                    v[x] += a * s as i64;
                }
            }
        }
        v
    }

    /// Orbit coordinates of a fixed chain.
    pub fn from_full(&self, n: i64, v: &[BigInt]) -> Vec<BigInt> {
        match self.slot(n) {
            Some(k) => self.orbits[k].iter().map(|o| v[o.rep()].clone()).collect(),
            None => Vec::new(),
        }
    }

    /// Whether `v` is fixed by the level, i.e. a combination of orbit sums.
    pub fn contains(&self, c: &GComplex, n: i64, v: &[BigInt]) -> bool {
        let back = self.to_full(c, n, &self.from_full(n, v));
        back == v
    }

    pub fn is_rep(&self, n: i64, x: usize) -> bool {
        self.slot(n).is_some_and(|k| self.rep_of[k][x].is_some())
    }
}

impl GComplex {
    /// `g·v` for a chain `v` in degree `n`.
    pub fn act_vector(&self, n: i64, g: GroupElement, v: &[BigInt]) -> FixedVector {
        let mut out = vec![BigInt::zero(); v.len()];
        if let Some(m) = self.module_ref(n) {
            for (x, a) in v.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let (y, s) = m.act(g, x);
                out[y] += a * s as i64;
            }
        }
        out
    }

    /// `Σ_g g·v` over the given elements.
    pub fn sum_over(&self, n: i64, elements: &[GroupElement], v: &[BigInt]) -> FixedVector {
        let mut out = vec![BigInt::zero(); v.len()];
        for &g in elements {
            for (o, x) in out.iter_mut().zip(self.act_vector(n, g, v)) {
                *o += x;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dihedral::GroupSpec;
    use crate::gmodule::{permutation_module, GIntModule};

    #[test]
    fn fixed_ranks() {
        let spec = GroupSpec::new(3).unwrap();
        let reg = GComplex::concentrated(permutation_module(spec, SubgroupTag::E, 0).unwrap(), 0);
        assert_eq!(FixedComplex::new(&reg, SubgroupTag::G).rank(0), 1);
        assert_eq!(FixedComplex::new(&reg, SubgroupTag::C2).rank(0), 3);
        let sign = GComplex::concentrated(GIntModule::sign(spec), 0);
        assert_eq!(FixedComplex::new(&sign, SubgroupTag::C2).rank(0), 0);
        let rays = GComplex::concentrated(permutation_module(spec, SubgroupTag::C2, 0).unwrap(), 0);
        assert_eq!(FixedComplex::new(&rays, SubgroupTag::G).rank(0), 1);
    }

    #[test]
    fn transfer_after_inclusion_is_index() {
        let spec = GroupSpec::new(5).unwrap();
        let m = permutation_module(spec, SubgroupTag::C2, 3).unwrap().direct_sum(&GIntModule::sign(spec));
        let c = GComplex::concentrated(m, 0);
        for (small, large) in [
            (SubgroupTag::E, SubgroupTag::C2),
            (SubgroupTag::C2, SubgroupTag::G),
            (SubgroupTag::Cp, SubgroupTag::G),
            (SubgroupTag::E, SubgroupTag::G),
        ] {
            let fl = FixedComplex::new(&c, large);
            let reps = small.coset_reps(large, spec);
            for j in 0..fl.rank(0) {
                let mut e = vec![BigInt::zero(); fl.rank(0)];
                e[j] = BigInt::from(1);
                let v = fl.to_full(&c, 0, &e);
                let t = c.sum_over(0, &reps, &v);
                let idx = BigInt::from(small.index_in(large, spec));
                let expect: Vec<BigInt> = v.iter().map(|x| x * &idx).collect();
                assert_eq!(t, expect);
            }
        }
    }
}
