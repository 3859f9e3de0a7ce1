//! Brute-force cellular computation of `π_{a+bα+cγ}` of `HZ` at every level.
//!
//! With `b = b⁺ − b⁻` and `c = c⁺ − c⁻`, the level-`L` value is
//! `H_a(Hom_{Z[L]}(C(S^{b⁺α+c⁺γ}), C(S^{b⁻α+c⁻γ})))`, the homology of the
//! `L`-fixed part of an equivariant Hom complex. Restrictions are fixed-point
//! inclusions and transfers are coset sums.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use thiserror::Error;

use crate::dihedral::{Grading, GroupSpec, SubgroupTag};
use crate::gmodule::{
    hom_total_complex, permutation_module, reduce, tensor_complex, FixedComplex, GComplex, GIntModule, ModuleError,
    SparseMatrix,
};
use crate::linalg::{FgAbMap, Homology, IntMatrix};
use crate::mackey::{LevelValue, MackeyAnswer, StructureMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("resource budget exceeded: complex of total rank {rank} is above the cap {cap}")]
    ResourceBudget { rank: usize, cap: usize },
    #[error(transparent)]
    Module(#[from] ModuleError),
}

/// Size cap for the reduced Hom complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_total_rank: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_total_rank: 200_000 }
    }
}

/// Reduced cellular chains of `S^α`: a fixed 0-cell and two arcs `Z[G/Cp]`
/// swapped by τ, each with boundary the 0-cell.
pub fn s_alpha(spec: GroupSpec) -> GComplex {
    let arcs = permutation_module(spec, SubgroupTag::Cp, 0).expect("Cp has one conjugate");
    let d1 = SparseMatrix::from_columns(1, vec![vec![(0, 1)], vec![(0, 1)]]);
    GComplex::new(spec, 0, vec![GIntModule::trivial(spec, 1), arcs], vec![d1]).expect("S^α model")
}

/// Reduced cellular chains of `S^γ`. Degree 1 holds rays `A_k` at angle
/// `2πk/p` (stabilizer `<ξ^{2k}τ>`, `A_0` fixed by τ) then rays `B_k` at
/// angle `2πk/p + π/p` (`B_0` fixed by `ξτ`); degree 2 holds the `2p`
/// sectors `g·s`, where `s` lies between `A_0` and `B_0` and
/// `∂s = A_0 − B_0`.
pub fn s_gamma(spec: GroupSpec) -> GComplex {
    let p = spec.p() as usize;
    let rays_a = permutation_module(spec, SubgroupTag::C2, 0).expect("valid twist");
    let rays_b = permutation_module(spec, SubgroupTag::C2, 1).expect("valid twist");
    let rays = rays_a.direct_sum(&rays_b);
    let sectors = permutation_module(spec, SubgroupTag::E, 0).expect("regular module");
    let d1 = SparseMatrix::from_columns(1, vec![vec![(0, 1)]; 2 * p]);
    let d2_cols = spec
        .elements()
        .map(|g| {
            let a = g.i as usize;
            let b = if g.j == 0 { g.i as usize } else { (g.i as usize + p - 1) % p };
            vec![(a as u32, 1), ((p + b) as u32, -1)]
        })
        .collect();
    let d2 = SparseMatrix::from_columns(2 * p, d2_cols);
    GComplex::new(spec, 0, vec![GIntModule::trivial(spec, 1), rays, sectors], vec![d1, d2]).expect("S^γ model")
}

/// Cellular chains of `S^{bα+cγ}` as the plain iterated tensor product.
pub fn rep_sphere_complex(spec: GroupSpec, b: u32, c: u32) -> Result<GComplex, ModuleError> {
    let mut out = GComplex::point(spec);
    for _ in 0..b {
        out = tensor_complex(&out, &s_alpha(spec))?;
    }
    for _ in 0..c {
        out = tensor_complex(&out, &s_gamma(spec))?;
    }
    Ok(out)
}

/// Like [`rep_sphere_complex`], cancelling matching orbit pairs after
/// every factor.
pub fn reduced_sphere_complex(spec: GroupSpec, b: u32, c: u32) -> Result<GComplex, ModuleError> {
    let mut out = GComplex::point(spec);
    for _ in 0..b {
        out = reduce(&tensor_complex(&out, &s_alpha(spec))?)?;
    }
    for _ in 0..c {
        out = reduce(&tensor_complex(&out, &s_gamma(spec))?)?;
    }
    Ok(out)
}

fn split(x: i64) -> (u32, u32) {
    if x >= 0 {
        (x as u32, 0)
    } else {
        (0, (-x) as u32)
    }
}

/// The reduced Hom complex for one `(b, c)` with its fixed subcomplexes;
/// answers every `a` at once.
pub struct OracleComplex {
    spec: GroupSpec,
    b: i64,
    c: i64,
    hom: GComplex,
    fixed: BTreeMap<SubgroupTag, FixedComplex>,
}

impl OracleComplex {
    pub fn new(spec: GroupSpec, b: i64, c: i64, budget: Budget) -> Result<Self, OracleError> {
        let (bp, bm) = split(b);
        let (cp, cm) = split(c);
        Self::from_spheres(spec, (bp, cp), (bm, cm), budget)
    }

    /// Maps from `S^{b₊α+c₊γ}` to `S^{b₋α+c₋γ}`, for any split of
    /// `b = b₊ - b₋` and `c = c₊ - c₋`.
    pub fn from_spheres(spec: GroupSpec, (bp, cp): (u32, u32), (bm, cm): (u32, u32), budget: Budget) -> Result<Self, OracleError> {
        let (b, c) = (bp as i64 - bm as i64, cp as i64 - cm as i64);
        let source = reduced_sphere_complex(spec, bp, cp)?;
        let target = reduced_sphere_complex(spec, bm, cm)?;
        let raw = source.total_rank() * target.total_rank();
        if raw > budget.max_total_rank.saturating_mul(4) {
            return Err(OracleError::ResourceBudget {
                rank: raw,
                cap: budget.max_total_rank,
            });
        }
        let hom = reduce(&hom_total_complex(&source, &target)?)?;
        if hom.total_rank() > budget.max_total_rank {
            return Err(OracleError::ResourceBudget {
                rank: hom.total_rank(),
                cap: budget.max_total_rank,
            });
        }
        Ok(Self::from_hom(spec, b, c, hom))
    }

    /// Wraps an already built Hom complex; `mackey_at(a)` reads degree `a`.
    pub fn from_hom(spec: GroupSpec, b: i64, c: i64, hom: GComplex) -> Self {
        let fixed = SubgroupTag::ALL
            .into_iter()
            .map(|l| (l, FixedComplex::new(&hom, l)))
            .collect();
        OracleComplex { spec, b, c, hom, fixed }
    }

    pub fn hom_complex(&self) -> &GComplex {
        &self.hom
    }

    pub fn fixed(&self, l: SubgroupTag) -> &FixedComplex {
        &self.fixed[&l]
    }

    pub fn mackey_at(&self, a: i64) -> MackeyAnswer {
        use SubgroupTag::*;
        let spec = self.spec;
        let hom = &self.hom;
        let h: BTreeMap<SubgroupTag, Homology> = SubgroupTag::ALL
            .into_iter()
            .map(|l| {
                let f = self.fixed(l).complex();
                (l, Homology::compute_big(&f.d(a), &f.d(a + 1)))
            })
            .collect();
        let levels: BTreeMap<SubgroupTag, LevelValue> = h
            .iter()
            .map(|(&l, hl)| {
                let basis = (0..hl.len()).map(|i| format!("{}:{i}", l.name())).collect();
                (l, LevelValue::from_orders(&hl.orders, basis))
            })
            .collect();

        // Image of each generator of level `from` under `op`, in the
        // generators of level `to`.
        let induced = |from: SubgroupTag, to: SubgroupTag, op: &dyn Fn(Vec<BigInt>) -> Vec<BigInt>| {
            let (hf, ht) = (&h[&from], &h[&to]);
            let (ff, ft) = (self.fixed(from), self.fixed(to));
            let mut m = IntMatrix::zeros(ht.len(), hf.len());
            for j in 0..hf.len() {
                let full = ff.to_full(hom, a, &hf.generator(j));
                let image = op(full);
                debug_assert!(ft.contains(hom, a, &image));
                let coords = ht.coordinates(&ft.from_full(a, &image));
                for (i, x) in coords.into_iter().enumerate() {
                    m[(i, j)] = x;
                }
            }
            FgAbMap::new(
                levels[&from].presentation.clone(),
                levels[&to].presentation.clone(),
                m,
            )
            .expect("induced maps respect relations")
        };

        let mut maps = BTreeMap::new();
        for sm in StructureMap::ALL {
            let (s, t) = sm.levels();
            let f = if sm.is_restriction() {
                induced(s, t, &|v| v)
            } else {
                let reps = s.coset_reps(t, spec);
                induced(s, t, &|v| hom.sum_over(a, &reps, &v))
            };
            maps.insert(sm, f);
        }
        let weyl = induced(Cp, Cp, &|v| hom.act_vector(a, spec.tau(), &v));
        let e_xi = induced(E, E, &|v| hom.act_vector(a, spec.xi(), &v));
        let e_tau = induced(E, E, &|v| hom.act_vector(a, spec.tau(), &v));
        MackeyAnswer {
            spec,
            grading: Grading::new(a, self.b, self.c),
            levels,
            maps,
            weyl,
            e_xi,
            e_tau,
        }
    }

    /// Degrees outside this range have zero homology at every level.
    pub fn degree_range(&self) -> std::ops::RangeInclusive<i64> {
        self.hom.degrees()
    }
}

/// Oracle value at one grading.
pub fn pi_mackey(spec: GroupSpec, g: Grading) -> Result<MackeyAnswer, OracleError> {
    pi_mackey_with_budget(spec, g, Budget::default())
}

pub fn pi_mackey_with_budget(spec: GroupSpec, g: Grading, budget: Budget) -> Result<MackeyAnswer, OracleError> {
    Ok(OracleComplex::new(spec, g.b, g.c, budget)?.mackey_at(g.a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{homology_at, FgAbGroup};
    use crate::mackey::mackey_axiom_check;

    #[test]
    fn base_model_ranks() {
        let spec = GroupSpec::new(3).unwrap();
        assert_eq!(rep_sphere_complex(spec, 1, 0).unwrap().ranks(), vec![1, 2]);
        let g = rep_sphere_complex(spec, 0, 1).unwrap();
        assert_eq!(g.ranks(), vec![1, 6, 6]);
        assert_eq!(g.euler_characteristic(), 1);
        assert_eq!(rep_sphere_complex(spec, 0, 0).unwrap().ranks(), vec![1]);
    }

    #[test]
    fn fixed_s_gamma_homology() {
        let spec = GroupSpec::new(3).unwrap();
        let f = FixedComplex::new(&s_gamma(spec), SubgroupTag::G);
        let expect = [FgAbGroup::cyclic(3), FgAbGroup::cyclic(2), FgAbGroup::zero()];
        for (n, e) in expect.iter().enumerate() {
            assert_eq!(&homology_at(f.complex(), n as i64), e);
        }
    }

    #[test]
    fn minus_gamma() {
        let spec = GroupSpec::new(3).unwrap();
        let ans = pi_mackey(spec, Grading::new(0, 0, -1)).unwrap();
        assert_eq!(ans.group(SubgroupTag::G), FgAbGroup::cyclic(3));
        assert_eq!(ans.group(SubgroupTag::Cp), FgAbGroup::cyclic(3));
        assert_eq!(ans.group(SubgroupTag::C2), FgAbGroup::zero());
        assert_eq!(ans.group(SubgroupTag::E), FgAbGroup::zero());
        assert!(mackey_axiom_check(&ans).passed());
    }

    #[test]
    fn zero_grading_is_constant() {
        let spec = GroupSpec::new(5).unwrap();
        let ans = pi_mackey(spec, Grading::ZERO).unwrap();
        for l in SubgroupTag::ALL {
            assert_eq!(ans.group(l), FgAbGroup::free(1));
        }
        let r = mackey_axiom_check(&ans);
        assert!(r.passed(), "{:?}", r.failures);
        let tr = ans.map(StructureMap::TrC2G);
        assert!(tr.equals(&FgAbMap::scalar(&tr.source, 5)));
    }

    #[test]
    fn minus_alpha() {
        let spec = GroupSpec::new(3).unwrap();
        let ans = pi_mackey(spec, Grading::new(0, -1, 0)).unwrap();
        assert_eq!(ans.group(SubgroupTag::G), FgAbGroup::cyclic(2));
        assert_eq!(ans.group(SubgroupTag::Cp), FgAbGroup::zero());
        assert_eq!(ans.group(SubgroupTag::C2), FgAbGroup::cyclic(2));
        assert_eq!(ans.group(SubgroupTag::E), FgAbGroup::zero());
        assert!(mackey_axiom_check(&ans).passed());
    }

    #[test]
    fn sizes() {
        for p in [3u64, 5] {
            let spec = GroupSpec::new(p).unwrap();
            for (b, c) in [(3, 3), (0, 3), (3, 0)] {
                let s = reduced_sphere_complex(spec, b, c).unwrap();
                eprintln!("p={p} S^({b},{c}) reduced ranks {:?}", s.ranks());
            }
        }
    }
}
