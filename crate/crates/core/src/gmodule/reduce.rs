//! Equivariant Gaussian elimination.
//!
//! If an orbit `X` in degree `k+1` and an orbit `Y` in degree `k` have the
//! same size and `∂` sends each `x ∈ X` to exactly one element of `Y` with
//! a unit coefficient, the block `X → Y` is an invertible signed
//! permutation and the pair can be cancelled. The result is chain homotopy
//! equivalent to the input through G-maps, so fixed-point homology at every
//! level, with restrictions, transfers and the Weyl action, is unchanged.

use std::collections::{BTreeMap, BTreeSet};

use super::{GComplex, GIntModule, ModuleError, SparseMatrix};
use crate::dihedral::SubgroupTag;

struct Work {
    /// `cols[k][x]`: boundary of basis element `x` in slot `k`.
    cols: Vec<Vec<BTreeMap<u32, i64>>>,
    /// `rows[k][y]`: elements of slot `k+1` whose boundary contains `y`.
    rows: Vec<Vec<BTreeSet<u32>>>,
    alive: Vec<Vec<bool>>,
}

impl Work {
    fn set(&mut self, k: usize, x: u32, y: u32, v: i64) {
        // entry of ∂ from slot k (column x) into slot k-1 (row y)
        if v == 0 {
            self.cols[k][x as usize].remove(&y);
            self.rows[k - 1][y as usize].remove(&x);
        } else {
            self.cols[k][x as usize].insert(y, v);
            self.rows[k - 1][y as usize].insert(x);
        }
    }

    /// Cancels `x` (slot `k+1`) against `y` (slot `k`), `∂[y,x] = ±1`.
    fn eliminate(&mut self, k: usize, x: u32, y: u32) -> Result<(), ModuleError> {
        let c = self.cols[k + 1][x as usize][&y];
        debug_assert!(c == 1 || c == -1);
        let dx: Vec<(u32, i64)> = self.cols[k + 1][x as usize].iter().map(|(&r, &v)| (r, v)).collect();
        let hits: Vec<u32> = self.rows[k][y as usize].iter().copied().filter(|&z| z != x).collect();
        for z in hits {
            let d = self.cols[k + 1][z as usize][&y];
            let f = d.checked_mul(c).ok_or(ModuleError::Overflow)?;
            for &(r, v) in &dx {
                let old = self.cols[k + 1][z as usize].get(&r).copied().unwrap_or(0);
                let new = f
                    .checked_mul(v)
                    .and_then(|t| old.checked_sub(t))
                    .ok_or(ModuleError::Overflow)?;
                self.set(k + 1, z, r, new);
            }
        }
        // Drop x as a column and as a row of slot k+2.
        for (r, _) in std::mem::take(&mut self.cols[k + 1][x as usize]) {
            self.rows[k][r as usize].remove(&x);
        }
        if k + 2 < self.cols.len() {
            for w in std::mem::take(&mut self.rows[k + 1][x as usize]) {
                self.cols[k + 2][w as usize].remove(&x);
            }
        }
        // Drop y: its boundary, and its row (now only x, already removed).
        for (r, _) in std::mem::take(&mut self.cols[k][y as usize]) {
            self.rows[k - 1][r as usize].remove(&y);
        }
        debug_assert!(self.rows[k][y as usize].is_empty());
        self.alive[k + 1][x as usize] = false;
        self.alive[k][y as usize] = false;
        Ok(())
    }
}

/// Cancels matching orbit pairs until none remain.
pub fn reduce(c: &GComplex) -> Result<GComplex, ModuleError> {
    let spec = c.spec();
    let degrees: Vec<i64> = c.degrees().collect();
    let nslots = degrees.len();
    // Slot 0 is a sentinel degree below the complex so every real slot has
    // a row index.
    let rank = |k: usize| if k == 0 { 0 } else { c.rank(degrees[k - 1]) };
    let mut w = Work {
        cols: (0..=nslots)
            .map(|k| {
                (0..rank(k))
                    .map(|x| {
                        if k <= 1 {
                            BTreeMap::new()
                        } else {
                            c.d_column(degrees[k - 1], x).iter().copied().collect()
                        }
                    })
                    .collect()
            })
            .collect(),
        rows: (0..=nslots).map(|k| vec![BTreeSet::new(); rank(k)]).collect(),
        alive: (0..=nslots).map(|k| vec![true; rank(k)]).collect(),
    };
    for k in 2..=nslots {
        for x in 0..rank(k) {
            for &(y, _) in c.d_column(degrees[k - 1], x) {
                w.rows[k - 1][y as usize].insert(x as u32);
            }
        }
    }
    let module = |k: usize| c.module_ref(degrees[k - 1]).unwrap();
    let orbits: Vec<Vec<Vec<(usize, i8)>>> = (0..=nslots)
        .map(|k| {
            if k == 0 {
                Vec::new()
            } else {
                module(k).orbits(SubgroupTag::G).into_iter().map(|o| o.members).collect()
            }
        })
        .collect();
    let orbit_of: Vec<Vec<usize>> = orbits
        .iter()
        .enumerate()
        .map(|(k, os)| {
            let mut v = vec![0; rank(k)];
            for (i, o) in os.iter().enumerate() {
                for &(x, _) in o {
                    v[x] = i;
                }
            }
            v
        })
        .collect();

    let mut changed = true;
    while changed {
        changed = false;
        for k in (1..nslots).rev() {
            // X in slot k+1, Y in slot k.
            for xo in 0..orbits[k + 1].len() {
                let x0 = orbits[k + 1][xo][0].0;
                if !w.alive[k + 1][x0] {
                    continue;
                }
                let Some(yo) = matching_orbit(&w, &orbits, &orbit_of, k, x0) else {
                    continue;
                };
                for &(x, _) in &orbits[k + 1][xo] {
                    let y = w.cols[k + 1][x]
                        .iter()
                        .find(|(&r, _)| orbit_of[k][r as usize] == yo)
                        .map(|(&r, _)| r)
                        .expect("equivariance gives every member a partner");
                    w.eliminate(k, x as u32, y)?;
                }
                changed = true;
            }
        }
    }

    let mut modules: Vec<GIntModule> = Vec::new();
    let mut maps = Vec::new();
    for k in 1..=nslots {
        let (m, map) = module(k).restrict_to(&w.alive[k]);
        modules.push(m);
        maps.push(map);
    }
    let mut diffs = Vec::new();
    for k in 2..=nslots {
        let cols = (0..rank(k))
            .filter(|&x| w.alive[k][x])
            .map(|x| {
                w.cols[k][x]
                    .iter()
                    .map(|(&y, &v)| (maps[k - 2][y as usize].expect("boundaries stay in live cells"), v))
                    .collect()
            })
            .collect();
        diffs.push(SparseMatrix::from_columns(modules[k - 2].rank(), cols));
    }
    // Trim zero modules at both ends.
    let mut low = c.low();
    while modules.len() > 1 && modules[0].rank() == 0 {
        modules.remove(0);
        diffs.remove(0);
        low += 1;
    }
    while modules.len() > 1 && modules[modules.len() - 1].rank() == 0 {
        modules.pop();
        diffs.pop();
    }
    let out = GComplex::new_unchecked(spec, low, modules, diffs)?;
    debug_assert!(out.check().is_ok());
    Ok(out)
}

fn matching_orbit(
    w: &Work,
    orbits: &[Vec<Vec<(usize, i8)>>],
    orbit_of: &[Vec<usize>],
    k: usize,
    x0: usize,
) -> Option<usize> {
    let xlen = orbits[k + 1][orbit_of[k + 1][x0]].len();
    let mut count: BTreeMap<usize, (usize, i64)> = BTreeMap::new();
    for (&y, &v) in &w.cols[k + 1][x0] {
        let e = count.entry(orbit_of[k][y as usize]).or_insert((0, 0));
        e.0 += 1;
        e.1 = v;
    }
    count
        .into_iter()
        .find(|&(yo, (n, v))| n == 1 && (v == 1 || v == -1) && orbits[k][yo].len() == xlen)
        .map(|(yo, _)| yo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dihedral::GroupSpec;
    use crate::gmodule::{permutation_module, tensor_complex, FixedComplex};
    use crate::linalg::homology_at;

    fn s_alpha(spec: crate::dihedral::GroupSpec) -> GComplex {
        let rays = permutation_module(spec, SubgroupTag::Cp, 0).unwrap();
        let d1 = SparseMatrix::from_columns(1, vec![vec![(0, 1)], vec![(0, 1)]]);
        GComplex::new(spec, 0, vec![GIntModule::trivial(spec, 1), rays], vec![d1]).unwrap()
    }

    #[test]
    fn two_alpha_reduces_to_minimal_model() {
        let spec = GroupSpec::new(3).unwrap();
        let a = s_alpha(spec);
        let aa = tensor_complex(&a, &a).unwrap();
        let r = reduce(&aa).unwrap();
        assert_eq!(r.ranks(), vec![1, 2, 2]);
        r.check().unwrap();
        for level in SubgroupTag::ALL {
            let f0 = FixedComplex::new(&aa, level);
            let f1 = FixedComplex::new(&r, level);
            for n in -1..4 {
                assert_eq!(homology_at(f0.complex(), n), homology_at(f1.complex(), n), "{level} {n}");
            }
        }
    }
}
