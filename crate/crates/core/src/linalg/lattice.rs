//! Sublattices of Z^n: kernels, spans, membership and exact solving.

use num_bigint::BigInt;

use super::integer::Integer;
use super::matrix::IntMatrix;
use super::snf::{smith_big, Track};

/// Basis (as columns) of the integer kernel of `m`. The kernel lattice is
/// saturated, so this is a basis of `ker(m) ∩ Z^cols`.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let s = smith_big(m, Track::RIGHT);
    let v = s.v.unwrap();
    v.select_columns(s.rank..m.cols())
}

/// Basis (as columns) of the lattice spanned by the columns of `gens`.
pub fn span_basis(gens: &IntMatrix) -> IntMatrix {
    let s = smith_big(gens, Track::LEFT);
    let ui = s.u_inv.unwrap();
    let mut cols = Vec::with_capacity(s.rank);
    for (i, d) in s.diag[..s.rank].iter().enumerate() {
        cols.push(ui.column(i).into_iter().map(|x| x * d).collect::<Vec<BigInt>>());
    }
    IntMatrix::from_columns(gens.rows(), &cols)
}

/// Whether each column of `x` lies in the column span of `gens`.
pub fn in_span(gens: &IntMatrix, x: &IntMatrix) -> bool {
    if x.cols() == 0 {
        return true;
    }
    let s = smith_big(gens, Track::LEFT);
    let ux = s.u.unwrap().checked_mul(x).unwrap();
    for j in 0..x.cols() {
        for i in 0..ux.rows() {
            let v = &ux[(i, j)];
            if i < s.rank {
                if !Integer::is_zero(&(v % &s.diag[i])) {
                    return false;
                }
            } else if !Integer::is_zero(v) {
                return false;
            }
        }
    }
    true
}

/// Solves `basis * X = y` for a full-column-rank `basis` whose span contains
/// every column of `y`. Returns `None` if some column is not in the span.
pub fn solve_in_basis(basis: &IntMatrix, y: &IntMatrix) -> Option<IntMatrix> {
    let r = basis.cols();
    let s = smith_big(basis, Track::BOTH);
    assert_eq!(s.rank, r, "solve_in_basis needs independent columns");
    let uy = s.u.unwrap().checked_mul(y).unwrap();
    let mut z = IntMatrix::zeros(r, y.cols());
    for j in 0..y.cols() {
        for i in 0..uy.rows() {
            let v = &uy[(i, j)];
            if i < r {
                let (q, rem) = v.div_floor(&s.diag[i]);
                if !Integer::is_zero(&rem) {
                    return None;
                }
                z[(i, j)] = q;
            } else if !Integer::is_zero(v) {
                return None;
            }
        }
    }
    Some(s.v.unwrap().checked_mul(&z).unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_row_vector() {
        let m = IntMatrix::from_rows_i64(&[vec![2, 4, 6]]);
        let k = kernel_basis(&m);
        assert_eq!(k.cols(), 2);
        assert!(m.checked_mul(&k).unwrap().is_zero());
    }

    #[test]
    fn span_and_membership() {
        let g = IntMatrix::from_rows_i64(&[vec![2, 0], vec![0, 3]]);
        let b = span_basis(&g);
        assert_eq!(b.cols(), 2);
        assert!(in_span(&g, &IntMatrix::from_rows_i64(&[vec![4], vec![9]])));
        assert!(!in_span(&g, &IntMatrix::from_rows_i64(&[vec![1], vec![0]])));
        let x = solve_in_basis(&g, &IntMatrix::from_rows_i64(&[vec![4], vec![-3]])).unwrap();
        assert_eq!(x, IntMatrix::from_rows_i64(&[vec![2], vec![-1]]));
    }
}
