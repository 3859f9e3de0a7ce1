//! Smith normal form with unimodular transforms.

use super::integer::{small_then_big, Integer, OptionExt, Overflow};
use super::matrix::{IntMatrix, Matrix};

/// Result of a Smith reduction `U * M * V = D`.
///
/// `diag` has length `min(rows, cols)`; the first `rank` entries are
/// positive and form a divisibility chain, the rest are zero. The inverse
/// transforms are kept because homology generators live in `U^-1` and
/// coordinates come from `V^-1`.
#[derive(Clone, Debug)]
pub struct Smith<T> {
    pub diag: Vec<T>,
    pub rank: usize,
    pub u: Option<Matrix<T>>,
    pub u_inv: Option<Matrix<T>>,
    pub v: Option<Matrix<T>>,
    pub v_inv: Option<Matrix<T>>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Track {
    pub left: bool,
    pub right: bool,
}

impl Track {
    pub const NONE: Track = Track { left: false, right: false };
    pub const BOTH: Track = Track { left: true, right: true };
    pub const LEFT: Track = Track { left: true, right: false };
    pub const RIGHT: Track = Track { left: false, right: true };
}

struct State<T> {
    d: Matrix<T>,
    u: Option<Matrix<T>>,
    u_inv: Option<Matrix<T>>,
    v: Option<Matrix<T>>,
    v_inv: Option<Matrix<T>>,
}

impl<T: Integer> State<T> {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        if let Some(u) = &mut self.u {
            u.swap_rows(a, b);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.swap_cols(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        if let Some(v) = &mut self.v {
            v.swap_cols(a, b);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.swap_rows(a, b);
        }
    }

    // row[dst] += k * row[src]
    fn row_op(&mut self, dst: usize, src: usize, k: &T) -> Result<(), Overflow> {
        self.d.add_row_multiple(dst, src, k)?;
        if let Some(u) = &mut self.u {
            u.add_row_multiple(dst, src, k)?;
        }
        if let Some(ui) = &mut self.u_inv {
            ui.add_col_multiple(src, dst, &k.checked_neg().ovf()?)?;
        }
        Ok(())
    }

    // col[dst] += k * col[src]
    fn col_op(&mut self, dst: usize, src: usize, k: &T) -> Result<(), Overflow> {
        self.d.add_col_multiple(dst, src, k)?;
        if let Some(v) = &mut self.v {
            v.add_col_multiple(dst, src, k)?;
        }
        if let Some(vi) = &mut self.v_inv {
            vi.add_row_multiple(src, dst, &k.checked_neg().ovf()?)?;
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) -> Result<(), Overflow> {
        self.d.negate_row(i)?;
        if let Some(u) = &mut self.u {
            u.negate_row(i)?;
        }
        if let Some(ui) = &mut self.u_inv {
            ui.negate_col(i)?;
        }
        Ok(())
    }
}

fn min_abs_in_block<T: Integer>(d: &Matrix<T>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let v = &d[(i, j)];
            if v.is_zero() {
                continue;
            }
            match best {
                Some(b) if v.abs_cmp(&d[b]) != std::cmp::Ordering::Less => {}
                _ => {
                    if v.is_unit() {
                        return Some((i, j));
                    }
                    best = Some((i, j));
                }
            }
        }
    }
    best
}

/// Generic Smith reduction. Returns `Err(Overflow)` only for fixed-width
/// scalars.
pub fn smith_generic<T: Integer>(m: &Matrix<T>, track: Track) -> Result<Smith<T>, Overflow> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut st = State {
        d: m.clone(),
        u: track.left.then(|| Matrix::identity(rows)),
        u_inv: track.left.then(|| Matrix::identity(rows)),
        v: track.right.then(|| Matrix::identity(cols)),
        v_inv: track.right.then(|| Matrix::identity(cols)),
    };
    let n = rows.min(cols);
    let mut rank = 0;
    for t in 0..n {
        let Some((pi, pj)) = min_abs_in_block(&st.d, t) else {
            break;
        };
        st.swap_rows(t, pi);
        st.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if st.d[(i, t)].is_zero() {
                    continue;
                }
                let (q, r) = st.d[(i, t)].div_floor(&st.d[(t, t)]);
                st.row_op(i, t, &q.checked_neg().ovf()?)?;
                if !r.is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if st.d[(t, j)].is_zero() {
                    continue;
                }
                let (q, r) = st.d[(t, j)].div_floor(&st.d[(t, t)]);
                st.col_op(j, t, &q.checked_neg().ovf()?)?;
                if !r.is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // Move the smallest leftover in the pivot row/column onto the diagonal.
                let mut best = (t, t);
                for i in t + 1..rows {
                    let v = &st.d[(i, t)];
                    if !v.is_zero() && v.abs_cmp(&st.d[best]) == std::cmp::Ordering::Less {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    let v = &st.d[(t, j)];
                    if !v.is_zero() && v.abs_cmp(&st.d[best]) == std::cmp::Ordering::Less {
                        best = (t, j);
                    }
                }
                st.swap_rows(t, best.0);
                st.swap_cols(t, best.1);
                continue;
            }
            // Divisibility: every remaining entry must be a multiple of the pivot.
            let pivot = st.d[(t, t)].clone();
            let mut offender = None;
            if !pivot.is_unit() {
                'scan: for i in t + 1..rows {
                    for j in t + 1..cols {
                        let v = &st.d[(i, j)];
                        if !v.is_zero() && !v.div_floor(&pivot).1.is_zero() {
                            offender = Some(i);
                            break 'scan;
                        }
                    }
                }
            }
            match offender {
                Some(i) => st.row_op(t, i, &T::one())?,
                None => break,
            }
        }
        if st.d[(t, t)].is_negative() {
            st.negate_row(t)?;
        }
        rank += 1;
    }
    let diag = (0..n).map(|i| st.d[(i, i)].clone()).collect();
    Ok(Smith {
        diag,
        rank,
        u: st.u,
        u_inv: st.u_inv,
        v: st.v,
        v_inv: st.v_inv,
    })
}

/// `U * M * V = D` with `U`, `V` unimodular and `D` the canonical
/// nonnegative divisor chain on the diagonal.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let s = smith_big(m, Track::BOTH);
    let d = Matrix::diagonal(m.rows(), m.cols(), &s.diag);
    (d, s.u.unwrap(), s.v.unwrap())
}

/// Smith reduction of an arbitrary-precision matrix, computed with 128-bit
/// scalars when they suffice.
pub fn smith_big(m: &IntMatrix, track: Track) -> Smith<num_bigint::BigInt> {
    small_then_big(
        || {
            let small = Matrix::<i128>::from_big(m)?;
            let s = smith_generic(&small, track)?;
            Ok(Smith {
                diag: s.diag.iter().map(Integer::to_bigint).collect(),
                rank: s.rank,
                u: s.u.map(|x| x.to_big()),
                u_inv: s.u_inv.map(|x| x.to_big()),
                v: s.v.map(|x| x.to_big()),
                v_inv: s.v_inv.map(|x| x.to_big()),
            })
        },
        || smith_generic(m, track),
    )
}

/// Nonzero invariant factors (the rank-many positive diagonal entries).
pub fn invariant_factors<T: Integer>(s: &Smith<T>) -> &[T] {
    &s.diag[..s.rank]
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn big(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows_i64(rows)
    }

    fn check(m: &IntMatrix) -> Vec<BigInt> {
        let (d, u, v) = smith_normal_form(m);
        assert_eq!(u.checked_mul(m).unwrap().checked_mul(&v).unwrap(), d);
        let s = smith_big(m, Track::BOTH);
        let uu = s.u.unwrap().checked_mul(&s.u_inv.unwrap()).unwrap();
        assert_eq!(uu, IntMatrix::identity(m.rows()));
        let vv = s.v.unwrap().checked_mul(&s.v_inv.unwrap()).unwrap();
        assert_eq!(vv, IntMatrix::identity(m.cols()));
        for w in s.diag[..s.rank].windows(2) {
            assert!((&w[1] % &w[0]) == BigInt::from(0));
        }
        s.diag
    }

    #[test]
    fn identity_is_fixed() {
        assert_eq!(check(&IntMatrix::identity(2)), vec![BigInt::from(1), BigInt::from(1)]);
    }

    #[test]
    fn two_by_two_example() {
        // Oracle: gcd of entries is 2, |det| = 8, so the chain is (2, 4).
        assert_eq!(check(&big(&[vec![2, 4], vec![6, 8]])), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn zero_matrix() {
        let z = IntMatrix::zeros(3, 2);
        assert_eq!(check(&z), vec![BigInt::from(0), BigInt::from(0)]);
    }

    #[test]
    fn divisibility_fix_is_applied() {
        // diag(2, 3) is not canonical: the chain must read (1, 6).
        assert_eq!(check(&big(&[vec![2, 0], vec![0, 3]])), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn big_fallback_engages() {
        let huge = BigInt::from(i128::MAX) * BigInt::from(4);
        let m = Matrix::from_vec(2, 2, vec![huge.clone(), BigInt::from(0), BigInt::from(0), huge.clone() * 3]);
        let d = check(&m);
        assert_eq!(d[0], huge);
    }
}
