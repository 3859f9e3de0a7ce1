use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::{GIntModule, ModuleError, SignedPerm};
use crate::dihedral::GroupSpec;
use crate::linalg::IntMatrix;

/// Column-sparse integer matrix; column `j` lists `(row, value)` with
/// distinct rows and nonzero values, sorted by row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols: vec![Vec::new(); cols],
        }
    }

    pub fn from_columns(rows: usize, mut cols: Vec<Vec<(u32, i64)>>) -> Self {
        for c in &mut cols {
            c.retain(|&(_, v)| v != 0);
            c.sort_unstable_by_key(|&(r, _)| r);
            debug_assert!(c.windows(2).all(|w| w[0].0 != w[1].0), "duplicate row in column");
            debug_assert!(c.iter().all(|&(r, _)| (r as usize) < rows));
        }
        SparseMatrix { rows, cols }
    }

    pub fn from_dense(m: &IntMatrix) -> Result<Self, ModuleError> {
        let cols = (0..m.cols())
            .map(|j| {
                (0..m.rows())
                    .filter(|&i| m[(i, j)] != BigInt::from(0))
                    .map(|i| i64::try_from(&m[(i, j)]).map(|v| (i as u32, v)).map_err(|_| ModuleError::Overflow))
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        Ok(SparseMatrix { rows: m.rows(), cols })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[(u32, i64)] {
        &self.cols[j]
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.cols[j]
            .binary_search_by_key(&(i as u32), |&(r, _)| r)
            .map(|k| self.cols[j][k].1)
            .unwrap_or(0)
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols());
        for (j, c) in self.cols.iter().enumerate() {
            for &(i, v) in c {
                m[(i as usize, j)] = BigInt::from(v);
            }
        }
        m
    }
}

/// A bounded chain complex of G-modules. `d(n): C_n → C_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GComplex {
    spec: GroupSpec,
    low: i64,
    modules: Vec<GIntModule>,
    /// `diffs[k]` is the differential out of degree `low + k`.
    diffs: Vec<SparseMatrix>,
}

impl GComplex {
    /// `modules[k]` sits in degree `low + k`; `diffs[k]` is the differential
    /// out of degree `low + k + 1`. Equivariance and `∂∂ = 0` are checked.
    pub fn new(spec: GroupSpec, low: i64, modules: Vec<GIntModule>, diffs: Vec<SparseMatrix>) -> Result<Self, ModuleError> {
        let c = Self::new_unchecked(spec, low, modules, diffs)?;
        c.check()?;
        Ok(c)
    }

    pub(crate) fn new_unchecked(
        spec: GroupSpec,
        low: i64,
        modules: Vec<GIntModule>,
        diffs: Vec<SparseMatrix>,
    ) -> Result<Self, ModuleError> {
        let mut all = vec![SparseMatrix::zeros(0, modules.first().map_or(0, GIntModule::rank))];
        for (k, d) in diffs.into_iter().enumerate() {
            let deg = low + k as i64 + 1;
            let (er, ec) = (
                modules.get(k).map_or(0, GIntModule::rank),
                modules.get(k + 1).map_or(0, GIntModule::rank),
            );
            if d.rows() != er || d.cols() != ec {
                return Err(ModuleError::Shape {
                    degree: deg,
                    rows: d.rows(),
                    cols: d.cols(),
                    exp_rows: er,
                    exp_cols: ec,
                });
            }
            all.push(d);
        }
        while all.len() < modules.len() {
            let k = all.len();
            all.push(SparseMatrix::zeros(modules[k - 1].rank(), modules[k].rank()));
        }
        Ok(GComplex {
            spec,
            low,
            modules,
            diffs: all,
        })
    }

    /// `Z` with trivial action in degree 0.
    pub fn point(spec: GroupSpec) -> Self {
        Self::concentrated(GIntModule::trivial(spec, 1), 0)
    }

    pub fn concentrated(m: GIntModule, degree: i64) -> Self {
        let spec = m.spec();
        Self::new_unchecked(spec, degree, vec![m], vec![]).unwrap()
    }

    pub fn spec(&self) -> GroupSpec {
        self.spec
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    /// Highest degree carried (may hold a zero module).
    pub fn high(&self) -> i64 {
        self.low + self.modules.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.low..=self.high()
    }

    fn slot(&self, n: i64) -> Option<usize> {
        let k = n - self.low;
        (k >= 0 && (k as usize) < self.modules.len()).then_some(k as usize)
    }

    pub fn rank(&self, n: i64) -> usize {
        self.slot(n).map_or(0, |k| self.modules[k].rank())
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(GIntModule::rank).collect()
    }

    pub fn total_rank(&self) -> usize {
        self.modules.iter().map(GIntModule::rank).sum()
    }

    pub fn module(&self, n: i64) -> GIntModule {
        self.slot(n)
            .map_or_else(|| GIntModule::zero(self.spec), |k| self.modules[k].clone())
    }

    pub(crate) fn module_ref(&self, n: i64) -> Option<&GIntModule> {
        self.slot(n).map(|k| &self.modules[k])
    }

    pub fn d(&self, n: i64) -> SparseMatrix {
        match self.slot(n) {
            Some(k) => self.diffs[k].clone(),
            None => SparseMatrix::zeros(self.rank(n - 1), self.rank(n)),
        }
    }

    pub(crate) fn d_column(&self, n: i64, j: usize) -> &[(u32, i64)] {
        match self.slot(n) {
            Some(k) => self.diffs[k].column(j),
            None => &[],
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees()
            .map(|n| if n.rem_euclid(2) == 0 { 1 } else { -1 } * self.rank(n) as i64)
            .sum()
    }

    /// The same complex with every degree raised by `k`; no sign change.
    pub fn shift(&self, k: i64) -> GComplex {
        GComplex {
            low: self.low + k,
            ..self.clone()
        }
    }

    pub fn check(&self) -> Result<(), ModuleError> {
        for n in self.degrees() {
            self.check_equivariant(n)?;
            self.check_square_zero(n)?;
        }
        Ok(())
    }

    fn check_equivariant(&self, n: i64) -> Result<(), ModuleError> {
        let (Some(src), Some(dst)) = (self.module_ref(n), self.module_ref(n - 1)) else {
            return Ok(());
        };
        for g in [self.spec.xi(), self.spec.tau()] {
            for x in 0..src.rank() {
                let (gx, s) = src.act(g, x);
                let mut lhs: Vec<(u32, i64)> = self
                    .d_column(n, gx)
                    .iter()
                    .map(|&(r, v)| (r, v * s as i64))
                    .collect();
                let mut rhs: Vec<(u32, i64)> = self
                    .d_column(n, x)
                    .iter()
                    .map(|&(r, v)| {
                        let (gr, t) = dst.act(g, r as usize);
                        (gr as u32, v * t as i64)
                    })
                    .collect();
                lhs.sort_unstable();
                rhs.sort_unstable();
                if lhs != rhs {
                    return Err(ModuleError::NotEquivariant(n));
                }
            }
        }
        Ok(())
    }

    fn check_square_zero(&self, n: i64) -> Result<(), ModuleError> {
        for x in 0..self.rank(n) {
            let mut acc: BTreeMap<u32, i64> = BTreeMap::new();
            for &(y, v) in self.d_column(n, x) {
                for &(z, w) in self.d_column(n - 1, y as usize) {
                    let e = acc.entry(z).or_insert(0);
                    *e = v
                        .checked_mul(w)
                        .and_then(|t| e.checked_add(t))
                        .ok_or(ModuleError::Overflow)?;
                }
            }
            if acc.values().any(|&v| v != 0) {
                return Err(ModuleError::NotAComplex(n - 1, n));
            }
        }
        Ok(())
    }

    /// The underlying complex of free abelian groups.
    pub fn underlying(&self) -> crate::linalg::FreeComplex {
        let ranks = self.ranks();
        let diffs = self.degrees().skip(1).map(|n| self.d(n).to_dense()).collect();
        crate::linalg::FreeComplex::new(self.low, ranks, diffs).expect("GComplex is a complex")
    }
}

fn push(acc: &mut BTreeMap<u32, i64>, k: usize, v: i64) -> Result<(), ModuleError> {
    let e = acc.entry(k as u32).or_insert(0);
    *e = e.checked_add(v).ok_or(ModuleError::Overflow)?;
    Ok(())
}

fn finish(acc: BTreeMap<u32, i64>) -> Vec<(u32, i64)> {
    acc.into_iter().filter(|&(_, v)| v != 0).collect()
}

fn koszul(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Block layout of one total degree: `(first factor degree, offset, width)`.
struct Blocks {
    blocks: Vec<(i64, usize)>,
    rank: usize,
}

impl Blocks {
    fn offset(&self, k: i64) -> Option<usize> {
        self.blocks.iter().find(|&&(kk, _)| kk == k).map(|&(_, o)| o)
    }
}

/// Paired module on a block: `g(x⊗y) = ε_x ε_y (gx ⊗ gy)`, index `x·|D| + y`.
fn product_module(spec: GroupSpec, a: &GIntModule, b: &GIntModule) -> Vec<(Vec<u32>, Vec<i8>)> {
    let (ra, rb) = (a.rank(), b.rank());
    [spec.xi(), spec.tau()]
        .into_iter()
        .map(|g| {
            let mut image = Vec::with_capacity(ra * rb);
            let mut sign = Vec::with_capacity(ra * rb);
            for x in 0..ra {
                let (gx, s) = a.act(g, x);
                for y in 0..rb {
                    let (gy, t) = b.act(g, y);
                    image.push((gx * rb + gy) as u32);
                    sign.push(s * t);
                }
            }
            (image, sign)
        })
        .collect()
}

fn assemble_module(spec: GroupSpec, parts: Vec<(usize, Vec<(Vec<u32>, Vec<i8>)>)>) -> GIntModule {
    let mut xi = (Vec::new(), Vec::new());
    let mut tau = (Vec::new(), Vec::new());
    for (off, gens) in parts {
        let mut it = gens.into_iter();
        let (xi_i, xi_s) = it.next().unwrap();
        let (tau_i, tau_s) = it.next().unwrap();
        xi.0.extend(xi_i.into_iter().map(|i| i + off as u32));
        xi.1.extend(xi_s);
        tau.0.extend(tau_i.into_iter().map(|i| i + off as u32));
        tau.1.extend(tau_s);
    }
    GIntModule::new(spec, SignedPerm::new(xi.0, xi.1), SignedPerm::new(tau.0, tau.1))
        .expect("products of G-modules are G-modules")
}

/// Total complex of `C ⊗ D` with diagonal action and
/// `∂(x⊗y) = ∂x⊗y + (−1)^{|x|} x⊗∂y`.
pub fn tensor_complex(c: &GComplex, d: &GComplex) -> Result<GComplex, ModuleError> {
    let spec = c.spec;
    let low = c.low + d.low;
    let high = c.high() + d.high();
    let layout: Vec<Blocks> = (low..=high)
        .map(|n| {
            let mut blocks = Vec::new();
            let mut off = 0;
            for k in c.degrees() {
                let w = c.rank(k) * d.rank(n - k);
                if w > 0 {
                    blocks.push((k, off));
                    off += w;
                }
            }
            Blocks { blocks, rank: off }
        })
        .collect();
    let mut modules = Vec::new();
    for (idx, n) in (low..=high).enumerate() {
        let parts = layout[idx]
            .blocks
            .iter()
            .map(|&(k, off)| (off, product_module(spec, c.module_ref(k).unwrap(), d.module_ref(n - k).unwrap())))
            .collect();
        modules.push(assemble_module(spec, parts));
    }
    let mut diffs = Vec::new();
    for (idx, n) in (low..=high).enumerate().skip(1) {
        let target = &layout[idx - 1];
        let mut cols = vec![Vec::new(); layout[idx].rank];
        for &(k, off) in &layout[idx].blocks {
            let rd = d.rank(n - k);
            let rd_below = d.rank(n - k - 1);
            for x in 0..c.rank(k) {
                for y in 0..rd {
                    let mut acc = BTreeMap::new();
                    if let Some(t) = target.offset(k - 1) {
                        for &(x2, v) in c.d_column(k, x) {
                            push(&mut acc, t + x2 as usize * rd + y, v)?;
                        }
                    }
                    if let Some(t) = target.offset(k) {
                        for &(y2, v) in d.d_column(n - k, y) {
                            push(&mut acc, t + x * rd_below + y2 as usize, koszul(k) * v)?;
                        }
                    }
                    cols[off + x * rd + y] = finish(acc);
                }
            }
        }
        diffs.push(SparseMatrix::from_columns(target.rank, cols));
    }
    GComplex::new(spec, low, modules, diffs)
}

/// `Hom(C, D)` with `Hom_n = ∏_k Hom(C_k, D_{k+n})`, conjugation action
/// and `∂f = ∂_D∘f − (−1)^{|f|} f∘∂_C`. The basis map `E_{y,x}` sends `x`
/// to `y`; it sits at index `x·|D_{k+n}| + y` of its block.
pub fn hom_total_complex(c: &GComplex, d: &GComplex) -> Result<GComplex, ModuleError> {
    let spec = c.spec;
    let low = d.low - c.high();
    let high = d.high() - c.low;
    let layout: Vec<Blocks> = (low..=high)
        .map(|n| {
            let mut blocks = Vec::new();
            let mut off = 0;
            for k in c.degrees() {
                let w = c.rank(k) * d.rank(k + n);
                if w > 0 {
                    blocks.push((k, off));
                    off += w;
                }
            }
            Blocks { blocks, rank: off }
        })
        .collect();
    let mut modules = Vec::new();
    for (idx, n) in (low..=high).enumerate() {
        let parts = layout[idx]
            .blocks
            .iter()
            .map(|&(k, off)| (off, product_module(spec, c.module_ref(k).unwrap(), d.module_ref(k + n).unwrap())))
            .collect();
        modules.push(assemble_module(spec, parts));
    }
    // Transposed boundary of C: for x in C_k, the x' in C_{k+1} with ∂x' ∋ x.
    let co_boundary: BTreeMap<i64, Vec<Vec<(u32, i64)>>> = c
        .degrees()
        .map(|k| {
            let mut t = vec![Vec::new(); c.rank(k)];
            for x2 in 0..c.rank(k + 1) {
                for &(x, v) in c.d_column(k + 1, x2) {
                    t[x as usize].push((x2 as u32, v));
                }
            }
            (k, t)
        })
        .collect();
    let mut diffs = Vec::new();
    for (idx, n) in (low..=high).enumerate().skip(1) {
        let target = &layout[idx - 1];
        let mut cols = vec![Vec::new(); layout[idx].rank];
        let sign = koszul(n);
        for &(k, off) in &layout[idx].blocks {
            let rd = d.rank(k + n);
            for x in 0..c.rank(k) {
                for y in 0..rd {
                    let mut acc = BTreeMap::new();
                    // ∂_D ∘ E_{y,x} = Σ ∂_D[y',y] E_{y',x}, in block k of degree n−1.
                    if let Some(t) = target.offset(k) {
                        let rd2 = d.rank(k + n - 1);
                        for &(y2, v) in d.d_column(k + n, y) {
                            push(&mut acc, t + x * rd2 + y2 as usize, v)?;
                        }
                    }
                    // E_{y,x} ∘ ∂_C = Σ ∂_C[x,x'] E_{y,x'}, x' in C_{k+1}.
                    if let Some(t) = target.offset(k + 1) {
                        for &(x2, v) in &co_boundary[&k][x] {
                            push(&mut acc, t + x2 as usize * rd + y, -sign * v)?;
                        }
                    }
                    cols[off + x * rd + y] = finish(acc);
                }
            }
        }
        diffs.push(SparseMatrix::from_columns(target.rank, cols));
    }
    GComplex::new(spec, low, modules, diffs)
}

#[cfg(test)]
mod tests {
    use super::super::permutation_module;
    use super::*;
    use crate::dihedral::SubgroupTag;
    use crate::linalg::{homology_at, FgAbGroup};

    fn s_alpha(spec: GroupSpec) -> GComplex {
        let rays = permutation_module(spec, SubgroupTag::Cp, 0).unwrap();
        let d1 = SparseMatrix::from_columns(1, vec![vec![(0, 1)], vec![(0, 1)]]);
        GComplex::new(spec, 0, vec![GIntModule::trivial(spec, 1), rays], vec![d1]).unwrap()
    }

    #[test]
    fn point_is_unit_for_tensor() {
        let spec = GroupSpec::new(3).unwrap();
        let a = s_alpha(spec);
        assert_eq!(tensor_complex(&a, &GComplex::point(spec)).unwrap(), a);
        assert_eq!(tensor_complex(&GComplex::point(spec), &a).unwrap(), a);
    }

    #[test]
    fn hom_from_point_is_identity() {
        let spec = GroupSpec::new(3).unwrap();
        let a = s_alpha(spec);
        assert_eq!(hom_total_complex(&GComplex::point(spec), &a).unwrap(), a);
    }

    #[test]
    fn hom_into_point_is_dual() {
        let spec = GroupSpec::new(3).unwrap();
        let a = s_alpha(spec);
        let h = hom_total_complex(&a, &GComplex::point(spec)).unwrap();
        assert_eq!(h.low(), -1);
        assert_eq!(h.ranks(), vec![2, 1]);
        assert_eq!(h.euler_characteristic(), a.euler_characteristic());
    }

    #[test]
    fn hom_of_s_alpha_with_itself_is_a_circle_self_map_complex() {
        let spec = GroupSpec::new(3).unwrap();
        let a = s_alpha(spec);
        let h = hom_total_complex(&a, &a).unwrap();
        assert_eq!(homology_at(&h.underlying(), 0), FgAbGroup::free(1));
        assert_eq!(homology_at(&h.underlying(), 1), FgAbGroup::zero());
        assert_eq!(homology_at(&h.underlying(), -1), FgAbGroup::zero());
    }

    #[test]
    fn euler_characteristics_multiply() {
        let spec = GroupSpec::new(5).unwrap();
        let a = s_alpha(spec);
        let aa = tensor_complex(&a, &a).unwrap();
        assert_eq!(aa.euler_characteristic(), a.euler_characteristic().pow(2));
        assert_eq!(aa.ranks(), vec![1, 4, 4]);
    }

    #[test]
    fn non_equivariant_differential_rejected() {
        let spec = GroupSpec::new(3).unwrap();
        let rays = permutation_module(spec, SubgroupTag::Cp, 0).unwrap();
        let d1 = SparseMatrix::from_columns(1, vec![vec![(0, 1)], vec![(0, -1)]]);
        let err = GComplex::new(spec, 0, vec![GIntModule::trivial(spec, 1), rays], vec![d1]).unwrap_err();
        assert_eq!(err, ModuleError::NotEquivariant(1));
    }
}
