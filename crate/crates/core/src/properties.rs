//! Randomized checks of the oracle and the linear algebra that do not
//! depend on any closed form.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::dihedral::{GroupSpec, SubgroupTag};
use crate::linalg::{smith_normal_form, FgAbGroup, IntMatrix, Matrix};
use crate::oracle::{Budget, OracleComplex};

#[derive(Clone, Debug, Serialize)]
pub struct PropertyReport {
    pub name: &'static str,
    pub instances: usize,
    pub failures: Vec<String>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

const PRIMES: [u64; 2] = [3, 5];

type Key = (u64, (u32, u32), (u32, u32));

/// Oracle complexes built on demand and kept for reuse.
#[derive(Default)]
struct Complexes(HashMap<Key, OracleComplex>);

impl Complexes {
    fn get(&mut self, p: u64, source: (u32, u32), target: (u32, u32)) -> &OracleComplex {
        self.0.entry((p, source, target)).or_insert_with(|| {
            let spec = GroupSpec::new(p).expect("odd prime");
            OracleComplex::from_spheres(spec, source, target, Budget::default()).expect("small spheres")
        })
    }
}

fn split(x: i64) -> (u32, u32) {
    if x >= 0 {
        (x as u32, 0)
    } else {
        (0, (-x) as u32)
    }
}

/// A grading with `|b|, |c| ≤ 2` and `a` spanning the nonzero range.
fn sample(rng: &mut StdRng) -> (u64, i64, i64, i64) {
    let p = PRIMES[rng.gen_range(0..PRIMES.len())];
    let (b, c) = (rng.gen_range(-2..=2), rng.gen_range(-2..=2));
    let a = rng.gen_range(-8..=8);
    (p, a, b, c)
}

/// Homology of the Hom complex raised by one degree, read one degree up,
/// is the same Mackey functor.
pub fn suspension_invariance(seed: u64, n: usize) -> PropertyReport {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut shifted: HashMap<(u64, i64, i64), OracleComplex> = HashMap::new();
    let mut cx = Complexes::default();
    let mut failures = Vec::new();
    for _ in 0..n {
        let (p, a, b, c) = sample(&mut rng);
        let base = cx.get(p, (split(b).0, split(c).0), (split(b).1, split(c).1));
        let want = base.mackey_at(a).signature();
        let up = shifted.entry((p, b, c)).or_insert_with(|| {
            let spec = GroupSpec::new(p).expect("odd prime");
            OracleComplex::from_hom(spec, b, c, base.hom_complex().shift(1))
        });
        if up.mackey_at(a + 1).signature() != want {
            failures.push(format!("p={p} ({a},{b},{c})"));
        }
    }
    PropertyReport {
        name: "suspension invariance",
        instances: n,
        failures,
    }
}

/// Smashing source and target with one more `S^α` changes nothing.
pub fn alpha_stabilization(seed: u64, n: usize) -> PropertyReport {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut cx = Complexes::default();
    let mut failures = Vec::new();
    for _ in 0..n {
        let (p, a, b, c) = sample(&mut rng);
        let ((bp, bm), (cp, cm)) = (split(b), split(c));
        let want = cx.get(p, (bp, cp), (bm, cm)).mackey_at(a).signature();
        let got = cx.get(p, (bp + 1, cp), (bm + 1, cm)).mackey_at(a).signature();
        if got != want {
            failures.push(format!("p={p} ({a},{b},{c})"));
        }
    }
    PropertyReport {
        name: "S^alpha stabilization",
        instances: n,
        failures,
    }
}

/// The e level is the homology of a map of spheres of dimensions
/// `b₊ + 2c₊` and `b₋ + 2c₋`: Z exactly when `a + b + 2c = 0`.
pub fn underlying_homology(seed: u64, n: usize) -> PropertyReport {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut cx = Complexes::default();
    let mut failures = Vec::new();
    for _ in 0..n {
        let (p, a, b, c) = sample(&mut rng);
        // Bias towards the one nonzero degree.
        let a = if rng.gen_bool(0.5) { -(b + 2 * c) } else { a };
        let ((bp, bm), (cp, cm)) = (split(b), split(c));
        let ans = cx.get(p, (bp, cp), (bm, cm)).mackey_at(a);
        let want = if a + b + 2 * c == 0 { FgAbGroup::free(1) } else { FgAbGroup::zero() };
        if ans.group(SubgroupTag::E) != want {
            failures.push(format!("p={p} ({a},{b},{c}): e level {}", ans.group(SubgroupTag::E)));
        }
    }
    PropertyReport {
        name: "underlying homology",
        instances: n,
        failures,
    }
}

/// On the e level, τ acts by `(-1)^(b+c)` and ξ trivially.
pub fn orientation_character(seed: u64, n: usize) -> PropertyReport {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut cx = Complexes::default();
    let mut failures = Vec::new();
    for _ in 0..n {
        let (p, _, b, c) = sample(&mut rng);
        let a = -(b + 2 * c);
        let ((bp, bm), (cp, cm)) = (split(b), split(c));
        let ans = cx.get(p, (bp, cp), (bm, cm)).mackey_at(a);
        let sign = if (b + c).rem_euclid(2) == 1 { -1 } else { 1 };
        if !ans.e_tau.equals(&ans.scalar(SubgroupTag::E, sign)) || !ans.e_xi.equals(&ans.identity(SubgroupTag::E)) {
            failures.push(format!("p={p} ({a},{b},{c})"));
        }
    }
    PropertyReport {
        name: "orientation character",
        instances: n,
        failures,
    }
}

fn random_matrix(rng: &mut StdRng) -> IntMatrix {
    let (r, c) = (rng.gen_range(0..=6), rng.gen_range(0..=6));
    let bound = *[1i64, 3, 12, 1_000_000].get(rng.gen_range(0..4)).unwrap();
    let data = (0..r * c)
        .map(|_| if rng.gen_bool(0.3) { BigInt::zero() } else { BigInt::from(rng.gen_range(-bound..=bound)) })
        .collect();
    Matrix::from_vec(r, c, data)
}

fn smith_failure(m: &IntMatrix) -> Option<String> {
    let (d, u, v) = smith_normal_form(m);
    let back = u.checked_mul(m).and_then(|x| x.checked_mul(&v)).expect("big integers");
    if back != d {
        return Some("U·M·V ≠ D".into());
    }
    let diag: Vec<BigInt> = (0..d.rows().min(d.cols())).map(|i| d[(i, i)].clone()).collect();
    for i in 0..d.rows() {
        for j in 0..d.cols() {
            if i != j && !d[(i, j)].is_zero() {
                return Some("D not diagonal".into());
            }
        }
    }
    if diag.iter().any(|x| x.is_negative()) {
        return Some("negative invariant factor".into());
    }
    for w in diag.windows(2) {
        let ok = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
        if !ok {
            return Some(format!("{} does not divide {}", w[0], w[1]));
        }
    }
    for (name, x) in [("U", &u), ("V", &v)] {
        if !determinant(x).abs().is_one() {
            return Some(format!("{name} not unimodular"));
        }
    }
    None
}

/// Determinant by fraction-free elimination.
fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if piv != k {
            a.swap(piv, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        BigInt::one()
    } else {
        sign * &a[n - 1][n - 1]
    }
}

/// `U·M·V = D` with `U`, `V` unimodular and `D` a nonnegative divisor
/// chain.
pub fn smith_reconstruction(seed: u64, n: usize) -> PropertyReport {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..n {
        let m = random_matrix(&mut rng);
        if let Some(f) = smith_failure(&m) {
            failures.push(format!("{m:?}: {f}"));
        }
    }
    PropertyReport {
        name: "SNF reconstruction",
        instances: n,
        failures,
    }
}

/// Every suite with `scale` instances each (SNF gets four times as many).
pub fn run_all(seed: u64, scale: usize) -> Vec<PropertyReport> {
    vec![
        suspension_invariance(seed, scale),
        alpha_stabilization(seed + 1, scale),
        underlying_homology(seed + 2, scale),
        orientation_character(seed + 3, scale),
        smith_reconstruction(seed + 4, 4 * scale),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs_pass() {
        for r in run_all(7, 40) {
            assert!(r.passed(), "{}: {:?}", r.name, r.failures);
        }
    }

    #[test]
    fn determinant_of_known_matrices() {
        let m = IntMatrix::from_rows_i64(&[vec![2, 1], vec![7, 4]]);
        assert_eq!(determinant(&m), BigInt::from(1));
        let m = IntMatrix::from_rows_i64(&[vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 9]]);
        assert_eq!(determinant(&m), BigInt::from(-3));
    }
}
