//! Free resolutions of Z over the integral group ring, built by peeling
//! off kernels, and the cohomology they compute.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::dihedral::{GroupElement, GroupSpec, SubgroupTag};
use crate::linalg::{in_span, kernel_basis, FgAbGroup, FgAbMap, Homology, IntMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("resolution rank {rank} in degree {degree} exceeds the cap {cap}")]
    BudgetExceeded { degree: usize, rank: usize, cap: usize },
    #[error("degree {0} needs stage {1} of the resolution, which was not built")]
    NotBuilt(usize, usize),
}

/// Coefficients: Z with trivial action, or the sign representation where
/// reflections act by -1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Coefficients {
    Trivial,
    Sign,
}

impl Coefficients {
    pub fn for_twist(odd: bool) -> Self {
        if odd {
            Coefficients::Sign
        } else {
            Coefficients::Trivial
        }
    }

    fn chi(self, g: GroupElement) -> i64 {
        match self {
            Coefficients::Sign if g.is_reflection() => -1,
            _ => 1,
        }
    }
}

/// One free module `Z[H]^rank` with the images of its generators.
#[derive(Clone, Debug)]
pub struct ResolutionStage {
    pub rank: usize,
    /// `boundary[t]`: image of generator `t`, coordinate `s·|H| + h` for the
    /// group element `h` on generator `s` of the previous stage. Stage 0
    /// maps to Z by the augmentation and stores `[1]`.
    pub boundary: Vec<Vec<i64>>,
}

#[derive(Clone, Debug)]
pub struct Resolution {
    spec: GroupSpec,
    group: SubgroupTag,
    elements: Vec<GroupElement>,
    /// Index of each element of G within `elements`, if present.
    position: Vec<Option<usize>>,
    pub stages: Vec<ResolutionStage>,
}

pub const DEFAULT_RANK_CAP: usize = 64;

impl Resolution {
    fn empty(spec: GroupSpec, group: SubgroupTag) -> Self {
        let elements = group.elements(spec);
        let mut position = vec![None; spec.order()];
        for (n, &g) in elements.iter().enumerate() {
            position[spec.index_of(g)] = Some(n);
        }
        Resolution {
            spec,
            group,
            elements,
            position,
            stages: Vec::new(),
        }
    }

    pub fn group(&self) -> SubgroupTag {
        self.group
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.stages.iter().map(|s| s.rank).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.stages.len() - 1
    }

    fn pos(&self, g: GroupElement) -> usize {
        self.position[self.spec.index_of(g)].expect("element of the group")
    }

    /// `g · v` for `v` in a free module with coordinates `s·|H| + h`.
    fn act(&self, g: GroupElement, v: &[i64]) -> Vec<i64> {
        let m = self.order();
        let mut out = vec![0; v.len()];
        for (x, &c) in v.iter().enumerate() {
            if c != 0 {
                let (s, h) = (x / m, x % m);
                out[s * m + self.pos(self.spec.multiply(g, self.elements[h]))] += c;
            }
        }
        out
    }

    /// The boundary out of stage `n` as an integer matrix between the
    /// underlying lattices.
    pub fn lattice_boundary(&self, n: usize) -> IntMatrix {
        let m = self.order();
        let stage = &self.stages[n];
        let rows = if n == 0 { 1 } else { self.stages[n - 1].rank * m };
        let mut cols = Vec::with_capacity(stage.rank * m);
        for t in 0..stage.rank {
            for &g in &self.elements {
                let col = if n == 0 { stage.boundary[t].clone() } else { self.act(g, &stage.boundary[t]) };
                cols.push(col.into_iter().map(BigInt::from).collect::<Vec<_>>());
            }
        }
        IntMatrix::from_columns(rows, &cols)
    }

    fn orbit_columns(&self, v: &[i64]) -> Vec<Vec<BigInt>> {
        self.elements
            .iter()
            .map(|&g| self.act(g, v).into_iter().map(BigInt::from).collect())
            .collect()
    }

    /// Adds the next stage: module generators for the kernel of the last
    /// boundary, chosen greedily from a lattice basis of the kernel.
    fn extend(&mut self, cap: usize) -> Result<(), CohomologyError> {
        let n = self.stages.len();
        let d = self.lattice_boundary(n - 1);
        let kernel = kernel_basis(&d);
        let mut candidates: Vec<Vec<i64>> = (0..kernel.cols())
            .map(|j| {
                kernel
                    .column(j)
                    .iter()
                    .map(|x| i64::try_from(x).expect("kernel entries fit in i64"))
                    .collect()
            })
            .collect();
        candidates.sort_by_key(|v| {
            let nnz = v.iter().filter(|&&x| x != 0).count();
            let l1: i64 = v.iter().map(|x| x.abs()).sum();
            (nnz, l1)
        });
        let rows = d.cols();
        let mut span: Vec<Vec<BigInt>> = Vec::new();
        let mut chosen: Vec<Vec<i64>> = Vec::new();
        for v in candidates {
            let span_m = IntMatrix::from_columns(rows, &span);
            if span.len() >= kernel.cols() && in_span(&span_m, &kernel) {
                break;
            }
            let x = IntMatrix::from_columns(rows, &[v.iter().map(|&c| BigInt::from(c)).collect()]);
            if !span.is_empty() && in_span(&span_m, &x) {
                continue;
            }
            span.extend(self.orbit_columns(&v));
            chosen.push(v);
            if chosen.len() > cap {
                return Err(CohomologyError::BudgetExceeded {
                    degree: n,
                    rank: chosen.len(),
                    cap,
                });
            }
        }
        debug_assert!(in_span(&IntMatrix::from_columns(rows, &span), &kernel));
        self.stages.push(ResolutionStage {
            rank: chosen.len(),
            boundary: chosen,
        });
        Ok(())
    }

    /// Coboundary `Hom(F_{n-1}, M) → Hom(F_n, M)` as an `r_n × r_{n-1}`
    /// matrix; zero columns for `n = 0`.
    pub fn coboundary(&self, n: usize, coeff: Coefficients) -> IntMatrix {
        let m = self.order();
        let stage = &self.stages[n];
        if n == 0 {
            return IntMatrix::zeros(stage.rank, 0);
        }
        let prev = self.stages[n - 1].rank;
        let mut out = IntMatrix::zeros(stage.rank, prev);
        for t in 0..stage.rank {
            for (x, &c) in stage.boundary[t].iter().enumerate() {
                if c != 0 {
                    let (s, h) = (x / m, x % m);
                    out[(t, s)] += BigInt::from(c * coeff.chi(self.elements[h]));
                }
            }
        }
        out
    }

    fn cohomology_data(&self, coeff: Coefficients, n: usize) -> Result<Homology, CohomologyError> {
        if n + 1 >= self.stages.len() {
            return Err(CohomologyError::NotBuilt(n, n + 1));
        }
        Ok(Homology::compute_big(&self.coboundary(n + 1, coeff), &self.coboundary(n, coeff)))
    }

    pub fn cohomology(&self, coeff: Coefficients, n: usize) -> Result<FgAbGroup, CohomologyError> {
        Ok(self.cohomology_data(coeff, n)?.group())
    }

    /// `∂∘∂ = 0` and `ker ∂_n = im ∂_{n+1}` for every built stage.
    pub fn audit(&self) -> Result<(), String> {
        for n in 1..self.stages.len() {
            let d0 = self.lattice_boundary(n - 1);
            let d1 = self.lattice_boundary(n);
            let dd = d0.checked_mul(&d1).expect("small entries");
            if !dd.is_zero() {
                return Err(format!("∂∂ ≠ 0 at stage {n}"));
            }
            if !in_span(&d1, &kernel_basis(&d0)) {
                return Err(format!("not exact at stage {}", n - 1));
            }
        }
        Ok(())
    }

    /// The same resolution viewed over a subgroup `k`: `Z[H]` is free over
    /// `Z[K]` on right coset representatives.
    pub fn restrict(&self, k: SubgroupTag) -> Resolution {
        let spec = self.spec;
        let mut out = Resolution::empty(spec, k);
        let reps = self.right_coset_reps(k);
        let mk = out.order();
        // x = κ·c with κ ∈ K, c a representative
        let split = |x: GroupElement| -> (usize, GroupElement) {
            for (ci, &c) in reps.iter().enumerate() {
                let kappa = spec.multiply(x, spec.inverse(c));
                if k.contains(kappa) {
                    return (ci, kappa);
                }
            }
            unreachable!("cosets cover the group")
        };
        let m = self.order();
        for (n, stage) in self.stages.iter().enumerate() {
            let mut boundary = Vec::new();
            for t in 0..stage.rank {
                for &c in &reps {
                    if n == 0 {
                        boundary.push(vec![1]);
                        continue;
                    }
                    let mut v = vec![0; self.stages[n - 1].rank * reps.len() * mk];
                    for (x, &coef) in stage.boundary[t].iter().enumerate() {
                        if coef != 0 {
                            let (s, h) = (x / m, x % m);
                            let (ci, kappa) = split(spec.multiply(c, self.elements[h]));
                            v[(s * reps.len() + ci) * mk + out.pos(kappa)] += coef;
                        }
                    }
                    boundary.push(v);
                }
            }
            out.stages.push(ResolutionStage {
                rank: stage.rank * reps.len(),
                boundary,
            });
        }
        out
    }

    fn right_coset_reps(&self, k: SubgroupTag) -> Vec<GroupElement> {
        let spec = self.spec;
        let mut reps: Vec<GroupElement> = Vec::new();
        for &g in &self.elements {
            let known = reps
                .iter()
                .any(|&c| k.contains(spec.multiply(g, spec.inverse(c))));
            if !known {
                reps.push(g);
            }
        }
        reps
    }

    /// The map `H^n(H; M) → H^n(K; M)` induced by restricting cochains,
    /// where `restricted = self.restrict(K)`.
    pub fn restriction_map(
        &self,
        restricted: &Resolution,
        coeff: Coefficients,
        n: usize,
    ) -> Result<FgAbMap, CohomologyError> {
        let big = self.cohomology_data(coeff, n)?;
        let small = restricted.cohomology_data(coeff, n)?;
        let reps = self.right_coset_reps(restricted.group);
        let mut m = IntMatrix::zeros(small.len(), big.len());
        for j in 0..big.len() {
            let phi = big.generator(j);
            let mut psi = Vec::with_capacity(phi.len() * reps.len());
            for x in &phi {
                for &c in &reps {
                    psi.push(x * coeff.chi(c));
                }
            }
            for (i, v) in small.coordinates(&psi).into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        Ok(FgAbMap::new(big.presentation(), small.presentation(), m).expect("restriction is a cochain map"))
    }
}

/// Resolution of Z over `Z[group]` through stage `max_degree + 1`, enough
/// for cohomology through `max_degree`.
pub fn build_resolution(
    spec: GroupSpec,
    group: SubgroupTag,
    max_degree: usize,
    cap: usize,
) -> Result<Resolution, CohomologyError> {
    let mut r = Resolution::empty(spec, group);
    r.stages.push(ResolutionStage {
        rank: 1,
        boundary: vec![vec![1]],
    });
    while r.stages.len() < max_degree + 2 {
        r.extend(cap)?;
    }
    Ok(r)
}

/// `H^n(G; Z)` and `H^n(G; Z̃)` from the ring descriptions
/// `Z[x,z]/(2x,pz)` and `Z[x]/(2x)<c> ⊕ Z/p[z]/(pz)<d>`, `|x| = 2`,
/// `|z| = 4`, `|c| = 1`, `|d| = 2`.
pub fn closed_form(p: u64, coeff: Coefficients, n: usize) -> FgAbGroup {
    let mut orders: Vec<u64> = Vec::new();
    match coeff {
        Coefficients::Trivial => {
            if n == 0 {
                return FgAbGroup::free(1);
            }
            if n.is_multiple_of(2) {
                orders.push(2);
            }
            if n.is_multiple_of(4) {
                orders.push(p);
            }
        }
        Coefficients::Sign => {
            if n % 2 == 1 {
                orders.push(2);
            }
            if n % 4 == 2 {
                orders.push(p);
            }
        }
    }
    FgAbGroup::from_orders(&orders.into_iter().map(BigInt::from).collect::<Vec<_>>())
}

#[derive(Clone, Debug, Serialize)]
pub struct CohomologyRow {
    pub coefficients: Coefficients,
    pub degree: usize,
    pub computed: FgAbGroup,
    pub expected: FgAbGroup,
}

impl CohomologyRow {
    pub fn matches(&self) -> bool {
        self.computed == self.expected
    }
}

/// Degreewise comparison with the closed forms for both coefficients.
pub fn closed_form_compare(res: &Resolution, max_degree: usize) -> Result<Vec<CohomologyRow>, CohomologyError> {
    let p = res.spec.p() as u64;
    let mut rows = Vec::new();
    for coeff in [Coefficients::Trivial, Coefficients::Sign] {
        for n in 0..=max_degree {
            rows.push(CohomologyRow {
                coefficients: coeff,
                degree: n,
                computed: res.cohomology(coeff, n)?,
                expected: closed_form(p, coeff, n),
            });
        }
    }
    Ok(rows)
}

/// Checks that the p-torsion of `H^{4k}(G; Z)` maps injectively to
/// `H^{4k}(Cp; Z) = Z/p`, the latter computed both from the restricted
/// resolution and from a resolution built over `Z[Cp]` directly.
pub fn cp_spot_check(res: &Resolution, max_degree: usize) -> Result<Vec<String>, CohomologyError> {
    let spec = res.spec;
    let p = BigInt::from(spec.p());
    let restricted = res.restrict(SubgroupTag::Cp);
    let direct = build_resolution(spec, SubgroupTag::Cp, max_degree, DEFAULT_RANK_CAP)?;
    let mut failures = Vec::new();
    for n in (4..=max_degree).step_by(4) {
        let coeff = Coefficients::Trivial;
        let via = restricted.cohomology(coeff, n)?;
        let own = direct.cohomology(coeff, n)?;
        let want = FgAbGroup::cyclic(spec.p() as u64);
        if via != want || own != want {
            failures.push(format!("H^{n}(Cp) = {via} (restricted), {own} (direct), expected {want}"));
        }
        let f = res.restriction_map(&restricted, coeff, n)?;
        let ker = f.invariants().kernel;
        if ker.torsion.iter().any(|t| (t % &p).is_zero()) || ker.free_rank > 0 {
            failures.push(format!("restriction H^{n}(G) → H^{n}(Cp) has kernel {ker} with p-torsion"));
        }
    }
    Ok(failures)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_stages() {
        let spec = GroupSpec::new(3).unwrap();
        let r = build_resolution(spec, SubgroupTag::G, 2, DEFAULT_RANK_CAP).unwrap();
        assert_eq!(r.stages[0].rank, 1);
        assert_eq!(r.stages[1].rank, 2);
        r.audit().unwrap();
    }

    #[test]
    fn matches_closed_form_p3() {
        let spec = GroupSpec::new(3).unwrap();
        let r = build_resolution(spec, SubgroupTag::G, 8, DEFAULT_RANK_CAP).unwrap();
        r.audit().unwrap();
        for row in closed_form_compare(&r, 8).unwrap() {
            assert!(row.matches(), "{row:?}");
        }
        assert!(cp_spot_check(&r, 8).unwrap().is_empty());
        assert!(matches!(r.cohomology(Coefficients::Trivial, 9), Err(CohomologyError::NotBuilt(..))));
    }

    #[test]
    fn twisted_is_a_different_answer() {
        assert_ne!(closed_form(5, Coefficients::Sign, 2), closed_form(5, Coefficients::Trivial, 2));
    }
}
