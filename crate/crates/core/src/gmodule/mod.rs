//! Integer representations of D_2p and bounded chain complexes of them.
//!
//! Every module used here has a basis permuted up to sign by the group, so
//! actions are stored as signed permutations. Dense action matrices are
//! available on request.

mod complex;
mod fixed;
mod reduce;

pub use complex::{hom_total_complex, tensor_complex, GComplex, SparseMatrix};
pub use fixed::{FixedComplex, FixedVector};
pub use reduce::reduce;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::dihedral::{GroupElement, GroupSpec, SubgroupTag};
use crate::linalg::IntMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("labeling does not define a G-action: {0}")]
    InvalidTwist(String),
    #[error("action matrix is not a signed permutation")]
    NotSignedPermutation,
    #[error("action matrices violate the group relations: {0}")]
    Relations(&'static str),
    #[error("differential d{0} is not equivariant")]
    NotEquivariant(i64),
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
    #[error("coefficient overflow during construction")]
    Overflow,
}

/// `g·e_k = sign[k]·e_{image[k]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPerm {
    image: Vec<u32>,
    sign: Vec<i8>,
}

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        SignedPerm {
            image: (0..n as u32).collect(),
            sign: vec![1; n],
        }
    }

    pub fn new(image: Vec<u32>, sign: Vec<i8>) -> Self {
        assert_eq!(image.len(), sign.len());
        SignedPerm { image, sign }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    #[inline]
    pub fn apply(&self, k: usize) -> (usize, i8) {
        (self.image[k] as usize, self.sign[k])
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        let (image, sign) = (0..other.len())
            .map(|k| {
                let (m, s) = other.apply(k);
                let (n, t) = self.apply(m);
                (n as u32, s * t)
            })
            .unzip();
        SignedPerm { image, sign }
    }

    fn is_bijection(&self) -> bool {
        let mut seen = vec![false; self.len()];
        for &i in &self.image {
            if i as usize >= seen.len() || std::mem::replace(&mut seen[i as usize], true) {
                return false;
            }
        }
        true
    }

    pub fn to_matrix(&self) -> IntMatrix {
        let n = self.len();
        let mut m = IntMatrix::zeros(n, n);
        for k in 0..n {
            let (i, s) = self.apply(k);
            m[(i, k)] = BigInt::from(s);
        }
        m
    }

    pub fn from_matrix(m: &IntMatrix) -> Option<SignedPerm> {
        if m.rows() != m.cols() {
            return None;
        }
        let n = m.cols();
        let mut image = Vec::with_capacity(n);
        let mut sign = Vec::with_capacity(n);
        for k in 0..n {
            let nz: Vec<usize> = (0..n).filter(|&i| !m[(i, k)].is_zero()).collect();
            if nz.len() != 1 {
                return None;
            }
            let v = m[(nz[0], k)].to_i8()?;
            if v != 1 && v != -1 {
                return None;
            }
            image.push(nz[0] as u32);
            sign.push(v);
        }
        let p = SignedPerm { image, sign };
        p.is_bijection().then_some(p)
    }
}

/// A Z-free G-module whose generators act by signed permutations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GIntModule {
    spec: GroupSpec,
    /// Action of every group element, indexed by `spec.index_of(g)`.
    actions: Vec<SignedPerm>,
}

impl GIntModule {
    pub fn new(spec: GroupSpec, xi: SignedPerm, tau: SignedPerm) -> Result<Self, ModuleError> {
        let n = xi.len();
        if tau.len() != n || !xi.is_bijection() || !tau.is_bijection() {
            return Err(ModuleError::NotSignedPermutation);
        }
        let id = SignedPerm::identity(n);
        let mut xp = id.clone();
        for _ in 0..spec.p() {
            xp = xi.compose(&xp);
        }
        if xp != id {
            return Err(ModuleError::Relations("xi^p != 1"));
        }
        if tau.compose(&tau) != id {
            return Err(ModuleError::Relations("tau^2 != 1"));
        }
        let mut xi_pm1 = id.clone();
        for _ in 0..spec.p() - 1 {
            xi_pm1 = xi.compose(&xi_pm1);
        }
        if tau.compose(&xi) != xi_pm1.compose(&tau) {
            return Err(ModuleError::Relations("tau xi != xi^(p-1) tau"));
        }
        let mut powers = vec![id];
        for k in 1..spec.p() as usize {
            powers.push(xi.compose(&powers[k - 1]));
        }
        let mut actions = powers.clone();
        actions.extend(powers.iter().map(|x| x.compose(&tau)));
        Ok(GIntModule { spec, actions })
    }

    /// Builds a module from dense action matrices of `ξ` and `τ`.
    pub fn from_matrices(spec: GroupSpec, a_xi: &IntMatrix, a_tau: &IntMatrix) -> Result<Self, ModuleError> {
        let xi = SignedPerm::from_matrix(a_xi).ok_or(ModuleError::NotSignedPermutation)?;
        let tau = SignedPerm::from_matrix(a_tau).ok_or(ModuleError::NotSignedPermutation)?;
        Self::new(spec, xi, tau)
    }

    /// The zero module.
    pub fn zero(spec: GroupSpec) -> Self {
        Self::trivial(spec, 0)
    }

    pub fn trivial(spec: GroupSpec, rank: usize) -> Self {
        Self::new(spec, SignedPerm::identity(rank), SignedPerm::identity(rank)).unwrap()
    }

    /// `Z̃`: ξ acts by +1, τ by −1.
    pub fn sign(spec: GroupSpec) -> Self {
        Self::new(spec, SignedPerm::identity(1), SignedPerm::new(vec![0], vec![-1])).unwrap()
    }

    pub fn spec(&self) -> GroupSpec {
        self.spec
    }

    pub fn rank(&self) -> usize {
        self.actions[0].len()
    }

    pub fn action(&self, g: GroupElement) -> &SignedPerm {
        &self.actions[self.spec.index_of(g)]
    }

    #[inline]
    pub fn act(&self, g: GroupElement, k: usize) -> (usize, i8) {
        self.action(g).apply(k)
    }

    pub fn action_matrix(&self, g: GroupElement) -> IntMatrix {
        self.action(g).to_matrix()
    }

    pub fn direct_sum(&self, other: &GIntModule) -> GIntModule {
        let off = self.rank() as u32;
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(a, b)| {
                let mut image = a.image.clone();
                image.extend(b.image.iter().map(|&i| i + off));
                let mut sign = a.sign.clone();
                sign.extend(&b.sign);
                SignedPerm { image, sign }
            })
            .collect();
        GIntModule { spec: self.spec, actions }
    }

    /// Restricts to the basis vectors in `keep`, which must be a union of
    /// orbits. Returns the module and the old-to-new index map.
    pub(crate) fn restrict_to(&self, keep: &[bool]) -> (GIntModule, Vec<Option<u32>>) {
        let mut map = vec![None; keep.len()];
        let mut next = 0u32;
        for (k, &kp) in keep.iter().enumerate() {
            if kp {
                map[k] = Some(next);
                next += 1;
            }
        }
        let actions = self
            .actions
            .iter()
            .map(|a| {
                let (image, sign) = (0..a.len())
                    .filter(|&k| keep[k])
                    .map(|k| {
                        let (i, s) = a.apply(k);
                        (map[i].expect("kept set must be G-stable"), s)
                    })
                    .unzip();
                SignedPerm { image, sign }
            })
            .collect();
        (GIntModule { spec: self.spec, actions }, map)
    }

    /// Orbits of `level` on basis vectors. Each orbit lists `(index, sign)`
    /// with its representative first at sign +1; `fixed` is false when the
    /// stabilizer acts on the representative by −1.
    pub fn orbits(&self, level: SubgroupTag) -> Vec<Orbit> {
        let n = self.rank();
        let els = level.elements(self.spec);
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let mut members: Vec<(usize, i8)> = Vec::new();
            let mut fixed = true;
            for &h in &els {
                let (y, s) = self.act(h, x);
                match members.iter().find(|(m, _)| *m == y) {
                    Some(&(_, t)) => {
                        if t != s {
                            fixed = false;
                        }
                    }
                    None => {
                        seen[y] = true;
                        members.push((y, s));
                    }
                }
            }
            out.push(Orbit { members, fixed });
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub members: Vec<(usize, i8)>,
    pub fixed: bool,
}

impl Orbit {
    pub fn rep(&self) -> usize {
        self.members[0].0
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// `Z[G/L]` with basis the cosets of the chosen conjugate of `L`.
///
/// For `L = C2`, `twist = t` puts the stabilizer of basis vector 0 at the
/// reflection `ξ^t τ`; the basis is `e_k = ξ^k e_0`, so `τ e_k = e_{-k-t}`.
/// Other levels have a single conjugate and accept only `twist = 0`.
pub fn permutation_module(spec: GroupSpec, level: SubgroupTag, twist: u32) -> Result<GIntModule, ModuleError> {
    let p = spec.p() as usize;
    if level != SubgroupTag::C2 && twist != 0 {
        return Err(ModuleError::InvalidTwist(format!("{level} has no conjugates to choose from")));
    }
    if twist as usize >= p {
        return Err(ModuleError::InvalidTwist(format!("twist {twist} must be below p = {p}")));
    }
    let (xi, tau): (Vec<usize>, Vec<usize>) = match level {
        SubgroupTag::G => (vec![0], vec![0]),
        SubgroupTag::Cp => (vec![0, 1], vec![1, 0]),
        SubgroupTag::C2 => {
            let t = twist as usize;
            (
                (0..p).map(|k| (k + 1) % p).collect(),
                (0..p).map(|k| (2 * p - k - t) % p).collect(),
            )
        }
        SubgroupTag::E => {
            let xi = spec.xi();
            let tau = spec.tau();
            (
                spec.elements().map(|h| spec.index_of(spec.multiply(xi, h))).collect(),
                spec.elements().map(|h| spec.index_of(spec.multiply(tau, h))).collect(),
            )
        }
    };
    permutation_module_from_labels(spec, &xi, &tau)
}

/// A permutation module given by the images of each basis vector under
/// `ξ` and `τ`.
pub fn permutation_module_from_labels(spec: GroupSpec, xi: &[usize], tau: &[usize]) -> Result<GIntModule, ModuleError> {
    let wrap = |v: &[usize]| SignedPerm::new(v.iter().map(|&i| i as u32).collect(), vec![1; v.len()]);
    GIntModule::new(spec, wrap(xi), wrap(tau)).map_err(|e| ModuleError::InvalidTwist(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d6() -> GroupSpec {
        GroupSpec::new(3).unwrap()
    }

    #[test]
    fn regular_module() {
        let m = permutation_module(d6(), SubgroupTag::E, 0).unwrap();
        assert_eq!(m.rank(), 6);
        assert_eq!(m.orbits(SubgroupTag::G).len(), 1);
    }

    #[test]
    fn reflection_rays() {
        let s = d6();
        let m = permutation_module(s, SubgroupTag::C2, 0).unwrap();
        assert_eq!(m.rank(), 3);
        assert_eq!(m.act(s.tau(), 0), (0, 1));
        assert_eq!(m.act(s.tau(), 1), (2, 1));
        assert_eq!(m.act(s.tau(), 2), (1, 1));
        let fixed: Vec<_> = m.orbits(SubgroupTag::G);
        assert_eq!(fixed.len(), 1);
        assert!(fixed[0].fixed);
    }

    #[test]
    fn twisted_rays() {
        let s = d6();
        let m = permutation_module(s, SubgroupTag::C2, 1).unwrap();
        assert_eq!(m.act(s.tau(), 0), (2, 1));
        assert_eq!(m.act(s.xi(), 0), (1, 1));
    }

    #[test]
    fn invalid_labels_rejected() {
        let s = d6();
        assert!(matches!(
            permutation_module(s, SubgroupTag::Cp, 1),
            Err(ModuleError::InvalidTwist(_))
        ));
        // τ fixing everything while ξ cycles breaks τξ = ξ^{-1}τ.
        assert!(matches!(
            permutation_module_from_labels(s, &[1, 2, 0], &[0, 1, 2]),
            Err(ModuleError::InvalidTwist(_))
        ));
    }

    #[test]
    fn sign_module_has_no_c2_fixed_vectors() {
        let m = GIntModule::sign(d6());
        let orbits = m.orbits(SubgroupTag::C2);
        assert_eq!(orbits.len(), 1);
        assert!(!orbits[0].fixed);
        assert!(m.orbits(SubgroupTag::Cp)[0].fixed);
    }

    #[test]
    fn matrices_round_trip() {
        let s = GroupSpec::new(5).unwrap();
        let m = permutation_module(s, SubgroupTag::C2, 2).unwrap();
        let again = GIntModule::from_matrices(s, &m.action_matrix(s.xi()), &m.action_matrix(s.tau())).unwrap();
        assert_eq!(again, m);
        let bad = IntMatrix::from_rows_i64(&[vec![2]]);
        assert_eq!(
            GIntModule::from_matrices(s, &bad, &bad),
            Err(ModuleError::NotSignedPermutation)
        );
    }
}
