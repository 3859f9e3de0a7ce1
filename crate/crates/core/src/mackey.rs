//! Values of a Mackey functor on the ladder e ⊂ C2, Cp ⊂ G, and the
//! identities such a value must satisfy.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::dihedral::{double_cosets, Grading, GroupSpec, SubgroupTag};
use crate::linalg::{FgAbGroup, FgAbMap, MapInvariants, Presentation};

/// One level: a presented group and a label for each generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelValue {
    pub presentation: Presentation,
    pub basis: Vec<String>,
}

impl LevelValue {
    pub fn from_orders(orders: &[BigInt], basis: Vec<String>) -> Self {
        assert_eq!(orders.len(), basis.len());
        LevelValue {
            presentation: Presentation::from_orders(orders),
            basis,
        }
    }

    pub fn zero() -> Self {
        LevelValue {
            presentation: Presentation::free(0),
            basis: Vec::new(),
        }
    }

    pub fn group(&self) -> FgAbGroup {
        self.presentation.group()
    }

    pub fn gens(&self) -> usize {
        self.presentation.gens
    }
}

/// The eight restriction and transfer maps along the ladder.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum StructureMap {
    ResGCp,
    ResGC2,
    ResCpE,
    ResC2E,
    TrCpG,
    TrC2G,
    TrECp,
    TrEC2,
}

impl StructureMap {
    pub const ALL: [StructureMap; 8] = [
        StructureMap::ResGCp,
        StructureMap::ResGC2,
        StructureMap::ResCpE,
        StructureMap::ResC2E,
        StructureMap::TrCpG,
        StructureMap::TrC2G,
        StructureMap::TrECp,
        StructureMap::TrEC2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StructureMap::ResGCp => "res_G_Cp",
            StructureMap::ResGC2 => "res_G_C2",
            StructureMap::ResCpE => "res_Cp_e",
            StructureMap::ResC2E => "res_C2_e",
            StructureMap::TrCpG => "tr_Cp_G",
            StructureMap::TrC2G => "tr_C2_G",
            StructureMap::TrECp => "tr_e_Cp",
            StructureMap::TrEC2 => "tr_e_C2",
        }
    }

    /// `(source level, target level)`.
    pub fn levels(self) -> (SubgroupTag, SubgroupTag) {
        use SubgroupTag::*;
        match self {
            StructureMap::ResGCp => (G, Cp),
            StructureMap::ResGC2 => (G, C2),
            StructureMap::ResCpE => (Cp, E),
            StructureMap::ResC2E => (C2, E),
            StructureMap::TrCpG => (Cp, G),
            StructureMap::TrC2G => (C2, G),
            StructureMap::TrECp => (E, Cp),
            StructureMap::TrEC2 => (E, C2),
        }
    }

    pub fn is_restriction(self) -> bool {
        matches!(
            self,
            StructureMap::ResGCp | StructureMap::ResGC2 | StructureMap::ResCpE | StructureMap::ResC2E
        )
    }

    pub fn res(large: SubgroupTag, small: SubgroupTag) -> Option<StructureMap> {
        StructureMap::ALL
            .into_iter()
            .find(|m| m.is_restriction() && m.levels() == (large, small))
    }

    pub fn tr(small: SubgroupTag, large: SubgroupTag) -> Option<StructureMap> {
        StructureMap::ALL
            .into_iter()
            .find(|m| !m.is_restriction() && m.levels() == (small, large))
    }
}

impl fmt::Display for StructureMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A Mackey functor value at one grading, with the Weyl involution on the
/// Cp level and the action of ξ and τ on the e level.
#[derive(Clone, Debug)]
pub struct MackeyAnswer {
    pub spec: GroupSpec,
    pub grading: Grading,
    pub levels: BTreeMap<SubgroupTag, LevelValue>,
    pub maps: BTreeMap<StructureMap, FgAbMap>,
    pub weyl: FgAbMap,
    pub e_xi: FgAbMap,
    pub e_tau: FgAbMap,
}

/// Isomorphism invariants of a [`MackeyAnswer`]: level groups, the
/// (kernel, image, cokernel) of every structure map, and those of `1 ± w`
/// for the involutions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MackeySignature {
    pub levels: BTreeMap<SubgroupTag, FgAbGroup>,
    pub maps: BTreeMap<StructureMap, MapSignature>,
    pub weyl_plus: MapSignature,
    pub weyl_minus: MapSignature,
    pub e_tau_minus: MapSignature,
    pub e_xi_minus: MapSignature,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MapSignature {
    pub kernel: FgAbGroup,
    pub image: FgAbGroup,
    pub cokernel: FgAbGroup,
}

impl From<MapInvariants> for MapSignature {
    fn from(m: MapInvariants) -> Self {
        MapSignature {
            kernel: m.kernel,
            image: m.image,
            cokernel: m.cokernel,
        }
    }
}

impl fmt::Display for MapSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ker {} im {} coker {}", self.kernel, self.image, self.cokernel)
    }
}

fn signature(f: &FgAbMap) -> MapSignature {
    f.invariants().into()
}

impl MackeyAnswer {
    pub fn level(&self, l: SubgroupTag) -> &LevelValue {
        &self.levels[&l]
    }

    pub fn group(&self, l: SubgroupTag) -> FgAbGroup {
        self.level(l).group()
    }

    pub fn map(&self, m: StructureMap) -> &FgAbMap {
        &self.maps[&m]
    }

    fn pres(&self, l: SubgroupTag) -> &Presentation {
        &self.level(l).presentation
    }

    pub fn identity(&self, l: SubgroupTag) -> FgAbMap {
        FgAbMap::identity(self.pres(l))
    }

    pub fn scalar(&self, l: SubgroupTag, k: i64) -> FgAbMap {
        FgAbMap::scalar(self.pres(l), k)
    }

    /// Restriction along any nested pair, composing through the ladder.
    pub fn res(&self, large: SubgroupTag, small: SubgroupTag) -> FgAbMap {
        use SubgroupTag::*;
        if large == small {
            return self.identity(large);
        }
        match (large, small) {
            (G, E) => self.map(StructureMap::ResCpE).after(self.map(StructureMap::ResGCp)),
            _ => self
                .map(StructureMap::res(large, small).expect("nested levels"))
                .clone(),
        }
    }

    /// Transfer along any nested pair, composing through the ladder.
    pub fn tr(&self, small: SubgroupTag, large: SubgroupTag) -> FgAbMap {
        use SubgroupTag::*;
        if large == small {
            return self.identity(large);
        }
        match (small, large) {
            (E, G) => self.map(StructureMap::TrCpG).after(self.map(StructureMap::TrECp)),
            _ => self
                .map(StructureMap::tr(small, large).expect("nested levels"))
                .clone(),
        }
    }

    /// Conjugation by `ξ^i τ^j` on the e level.
    pub fn e_action(&self, i: u32, j: u8) -> FgAbMap {
        let mut m = self.identity(SubgroupTag::E);
        if j == 1 {
            m = self.e_tau.after(&m);
        }
        for _ in 0..i {
            m = self.e_xi.after(&m);
        }
        m
    }

    pub fn signature(&self) -> MackeySignature {
        let e = SubgroupTag::E;
        let cp = SubgroupTag::Cp;
        MackeySignature {
            levels: self.levels.iter().map(|(&l, v)| (l, v.group())).collect(),
            maps: self.maps.iter().map(|(&m, f)| (m, signature(f))).collect(),
            weyl_plus: signature(&self.identity(cp).add(&self.weyl)),
            weyl_minus: signature(&self.identity(cp).add(&self.weyl.scalar_after(-1))),
            e_tau_minus: signature(&self.identity(e).add(&self.e_tau.scalar_after(-1))),
            e_xi_minus: signature(&self.identity(e).add(&self.e_xi.scalar_after(-1))),
        }
    }
}

trait ScalarAfter {
    fn scalar_after(&self, k: i64) -> FgAbMap;
}

impl ScalarAfter for FgAbMap {
    fn scalar_after(&self, k: i64) -> FgAbMap {
        FgAbMap::scalar(&self.target, k).after(self)
    }
}

/// Outcome of [`mackey_axiom_check`]; each failure names the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

/// Verifies the identities of a cohomological Mackey functor with Weyl
/// action on the answer.
pub fn mackey_axiom_check(ans: &MackeyAnswer) -> AxiomReport {
    use SubgroupTag::*;
    let spec = ans.spec;
    let mut r = AxiomReport::default();

    // tr ∘ res = index on every nested pair.
    for (small, large) in [(Cp, G), (C2, G), (E, Cp), (E, C2), (E, G)] {
        let idx = small.index_in(large, spec) as i64;
        let lhs = ans.tr(small, large).after(&ans.res(large, small));
        r.expect(lhs.equals(&ans.scalar(large, idx)), || {
            format!("tr∘res ≠ index: tr^{large}_{small}∘res^{large}_{small} ≠ {idx}")
        });
    }

    // The two routes from G to e agree.
    let via_c2 = ans.map(StructureMap::ResC2E).after(ans.map(StructureMap::ResGC2));
    r.expect(via_c2.equals(&ans.res(G, E)), || "res^G_e through C2 ≠ through Cp".into());
    let tr_via_c2 = ans.map(StructureMap::TrC2G).after(ans.map(StructureMap::TrEC2));
    r.expect(tr_via_c2.equals(&ans.tr(E, G)), || "tr^G_e through C2 ≠ through Cp".into());

    // Involutions and the e-level action.
    let w = &ans.weyl;
    r.expect(w.after(w).equals(&ans.identity(Cp)), || "Weyl action is not an involution".into());
    let (ex, et) = (&ans.e_xi, &ans.e_tau);
    r.expect(et.after(et).equals(&ans.identity(E)), || "τ² ≠ 1 on level e".into());
    r.expect(ans.e_action(spec.p(), 0).equals(&ans.identity(E)), || "ξ^p ≠ 1 on level e".into());
    r.expect(
        et.after(ex).equals(&ans.e_action(spec.p() - 1, 0).after(et)),
        || "τξ ≠ ξ^(p-1)τ on level e".into(),
    );

    // Restrictions land in invariants; transfers are invariant.
    let res_g_cp = ans.map(StructureMap::ResGCp);
    r.expect(w.after(res_g_cp).equals(res_g_cp), || "res^G_Cp does not land in Weyl invariants".into());
    let tr_cp_g = ans.map(StructureMap::TrCpG);
    r.expect(tr_cp_g.after(w).equals(tr_cp_g), || "tr^G_Cp is not Weyl invariant".into());
    let res_cp_e = ans.map(StructureMap::ResCpE);
    r.expect(
        res_cp_e.after(w).equals(&et.after(res_cp_e)),
        || "res^Cp_e is not Weyl equivariant".into(),
    );
    r.expect(ex.after(res_cp_e).equals(res_cp_e), || "res^Cp_e does not land in ξ-invariants".into());
    let res_c2_e = ans.map(StructureMap::ResC2E);
    r.expect(et.after(res_c2_e).equals(res_c2_e), || "res^C2_e does not land in τ-invariants".into());

    // Double coset formulas: res^H_? tr^?_K = Σ_{HgK} tr^H_{H∩gK} c_g res^K_{..}.
    for (h, k) in [(Cp, Cp), (C2, C2), (Cp, C2), (C2, Cp), (E, E), (Cp, E), (E, Cp), (C2, E), (E, C2)] {
        let (lhs, upper) = match (h, k) {
            (E, E) => continue,
            _ => {
                let upper = if h == E || k == E { join(h, k) } else { G };
                (ans.res(upper, h).after(&ans.tr(k, upper)), upper)
            }
        };
        let mut rhs: Option<FgAbMap> = None;
        for dc in double_cosets_within(spec, h, k, upper) {
            let term = double_coset_term(ans, h, k, dc.0, dc.1);
            rhs = Some(match rhs {
                None => term,
                Some(acc) => acc.add(&term),
            });
        }
        let rhs = rhs.expect("at least one double coset");
        r.expect(lhs.equals(&rhs), || {
            format!("double coset formula fails for res^{upper}_{h}∘tr^{upper}_{k}")
        });
    }
    for (small, large) in [(E, C2), (E, Cp)] {
        let lhs = ans.res(large, small).after(&ans.tr(small, large));
        let mut rhs = ans.scalar(E, 0);
        for g in large.elements(spec) {
            rhs = rhs.add(&ans.e_action(g.i, g.j));
        }
        r.expect(lhs.equals(&rhs), || format!("res^{large}_e∘tr^{large}_e ≠ Σ c_g"));
    }
    r
}

fn join(h: SubgroupTag, k: SubgroupTag) -> SubgroupTag {
    if h == SubgroupTag::E {
        k
    } else {
        h
    }
}

/// Double cosets `H\U/K` inside `U`, each as `(rep, intersection is e)`.
fn double_cosets_within(
    spec: GroupSpec,
    h: SubgroupTag,
    k: SubgroupTag,
    upper: SubgroupTag,
) -> Vec<(crate::dihedral::GroupElement, bool)> {
    double_cosets(spec, h, k)
        .into_iter()
        .filter(|d| upper.contains(d.rep))
        .map(|d| (d.rep, d.intersection.len() == 1))
        .collect()
}

/// `tr^H_{H∩gKg⁻¹} ∘ c_g ∘ res^K_{g⁻¹Hg∩K}` for the ladder levels.
fn double_coset_term(
    ans: &MackeyAnswer,
    h: SubgroupTag,
    k: SubgroupTag,
    g: crate::dihedral::GroupElement,
    trivial_intersection: bool,
) -> FgAbMap {
    use SubgroupTag::*;
    if !trivial_intersection {
        // Intersection is all of H = K (g normalizes); conjugation acts
        // through the Weyl action on Cp and trivially on C2 and e.
        assert_eq!(h, k);
        return match (h, g.j) {
            (Cp, 1) => ans.weyl.clone(),
            (E, _) => ans.e_action(g.i, g.j),
            _ => ans.identity(h),
        };
    }
    let down = ans.res(k, E);
    let conj = ans.e_action(g.i, g.j);
    ans.tr(E, h).after(&conj.after(&down))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The constant Mackey functor Z, with an optional corrupted transfer.
    fn constant_z(spec: GroupSpec, tr_g_c2: i64) -> MackeyAnswer {
        let one = [BigInt::from(0)];
        let level = LevelValue::from_orders(&one, vec!["1".into()]);
        let levels = SubgroupTag::ALL.iter().map(|&l| (l, level.clone())).collect();
        let pres = level.presentation.clone();
        let mut maps = BTreeMap::new();
        for m in StructureMap::ALL {
            let (s, t) = m.levels();
            let k = if m.is_restriction() { 1 } else { s.index_in(t, spec) as i64 };
            let k = if m == StructureMap::TrC2G { tr_g_c2 } else { k };
            maps.insert(m, FgAbMap::scalar(&pres, k));
        }
        MackeyAnswer {
            spec,
            grading: Grading::ZERO,
            levels,
            maps,
            weyl: FgAbMap::identity(&pres),
            e_xi: FgAbMap::identity(&pres),
            e_tau: FgAbMap::identity(&pres),
        }
    }

    #[test]
    fn constant_functor_passes() {
        for p in [3, 5, 7] {
            let spec = GroupSpec::new(p).unwrap();
            let r = mackey_axiom_check(&constant_z(spec, p as i64));
            assert!(r.passed(), "{:?}", r.failures);
        }
    }

    #[test]
    fn corrupted_transfer_fails() {
        let spec = GroupSpec::new(3).unwrap();
        let r = mackey_axiom_check(&constant_z(spec, 1));
        assert!(!r.passed());
        assert!(r.failures[0].starts_with("tr∘res ≠ index"), "{:?}", r.failures);
    }
}
