//! Smith normal form over the integers and the linear-system helpers that
//! sit on top of it.
//!
//! Pivoting rule: at each stage the pivot is the nonzero entry of smallest
//! absolute value in the trailing submatrix, ties broken by row index and then
//! column index.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::{IntMatrix, IntVector};

/// `left * input * right == diagonal`, with `left`, `right` unimodular and the
/// diagonal entries nonnegative and forming a divisibility chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub left: IntMatrix,
    pub diagonal: IntMatrix,
    pub right: IntMatrix,
    /// Inverse of `left`, tracked alongside the row operations.
    pub left_inverse: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries `d_0, …, d_{min(r,c)-1}`.
    pub fn invariants(&self) -> Vec<BigInt> {
        let k = self.diagonal.rows().min(self.diagonal.cols());
        (0..k).map(|i| self.diagonal[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariants().iter().filter(|d| !d.is_zero()).count()
    }
}

fn find_pivot(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let v = &d[(i, j)];
            if v.is_zero() {
                continue;
            }
            let a = v.abs();
            if best.as_ref().is_none_or(|(b, _, _)| a < *b) {
                best = Some((a, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Computes the Smith normal form of `m`.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (r, c) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut u_inv = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);

    for t in 0..r.min(c) {
        loop {
            let Some((pi, pj)) = find_pivot(&d, t) else {
                return finish(u, d, v, u_inv);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            u_inv.swap_cols(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let p = d[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..r {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&d[(i, t)] / &p);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                u_inv.add_col_multiple(t, i, &-&q);
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&d[(t, j)] / &p);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Row and column t are clear; enforce divisibility of the rest.
            let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| !d[(i, j)].is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                    u_inv.add_col_multiple(i, t, &-one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
    }
    finish(u, d, v, u_inv)
}

fn finish(
    left: IntMatrix,
    diagonal: IntMatrix,
    right: IntMatrix,
    left_inverse: IntMatrix,
) -> SmithForm {
    SmithForm {
        left,
        diagonal,
        right,
        left_inverse,
    }
}

/// Finds an integer solution of `a * x = b`, if one exists.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<IntVector> {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let snf = smith_normal_form(a);
    solve_with(&snf, b)
}

pub(crate) fn solve_with(snf: &SmithForm, b: &[BigInt]) -> Option<IntVector> {
    let c = snf.left.apply(b);
    let n = snf.right.rows();
    let mut y = vec![BigInt::zero(); n];
    for (i, ci) in c.iter().enumerate() {
        let d = if i < n {
            snf.diagonal[(i, i)].clone()
        } else {
            BigInt::zero()
        };
        if d.is_zero() {
            if !ci.is_zero() {
                return None;
            }
        } else {
            let (q, rem) = ci.div_rem(&d);
            if !rem.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    Some(snf.right.apply(&y))
}

/// Solves `a * X = b` column by column.
pub fn solve_integer_matrix(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    let snf = smith_normal_form(a);
    let cols: Option<Vec<IntVector>> = b
        .columns()
        .iter()
        .map(|col| solve_with(&snf, col))
        .collect();
    cols.map(|cols| IntMatrix::from_columns(a.cols(), &cols))
}

/// Inverse of a unimodular matrix; `None` if `m` is not unimodular.
pub fn unimodular_inverse(m: &IntMatrix) -> Option<IntMatrix> {
    if !m.is_unimodular() {
        return None;
    }
    solve_integer_matrix(m, &IntMatrix::identity(m.rows()))
}

/// Basis (as columns) of `{x : a x = 0}`. The basis spans a saturated sublattice.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let rank = snf.rank();
    let idx: Vec<usize> = (rank..a.cols()).collect();
    snf.right.select_columns(&idx)
}

/// Basis (as columns) of the sublattice spanned by the columns of `g`.
pub fn column_span_basis(g: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(g);
    let inv = snf.invariants();
    let cols: Vec<IntVector> = inv
        .iter()
        .enumerate()
        .filter(|(_, d)| !d.is_zero())
        .map(|(i, d)| snf.left_inverse.column(i).iter().map(|x| x * d).collect())
        .collect();
    IntMatrix::from_columns(g.rows(), &cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::matrix::ivec;

    fn check(m: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(m);
        assert_eq!(&(&s.left * m) * &s.right, s.diagonal, "U M V != D for {m}");
        assert!(s.left.is_unimodular());
        assert!(s.right.is_unimodular());
        assert!((&s.left * &s.left_inverse).is_identity());
        s
    }

    #[test]
    fn two_by_two_example() {
        let s = check(&IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(s.invariants(), ivec(&[2, 4]));
    }

    #[test]
    fn identity_and_zero() {
        let s = check(&IntMatrix::identity(3));
        assert!(s.diagonal.is_identity());
        let s = check(&IntMatrix::zeros(2, 3));
        assert!(s.diagonal.is_zero());
    }

    #[test]
    fn empty_shapes() {
        let s = check(&IntMatrix::zeros(3, 0));
        assert_eq!(s.left, IntMatrix::identity(3));
        let s = check(&IntMatrix::zeros(0, 2));
        assert_eq!(s.right, IntMatrix::identity(2));
    }

    #[test]
    fn divisibility_fixup() {
        // diag(2, 3) is not in normal form; SNF is diag(1, 6).
        let s = check(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.invariants(), ivec(&[1, 6]));
    }

    #[test]
    fn solve_and_kernel() {
        let a = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let x = solve_integer(&a, &ivec(&[2, 6])).unwrap();
        assert_eq!(a.apply(&x), ivec(&[2, 6]));
        assert!(solve_integer(&a, &ivec(&[1, 0])).is_none());

        let swap_minus_one = IntMatrix::from_rows(&[vec![-1, 1], vec![1, -1]]);
        let k = kernel_basis(&swap_minus_one);
        assert_eq!(k.cols(), 1);
        let col = k.column(0);
        assert!(col == ivec(&[1, 1]) || col == ivec(&[-1, -1]));
    }

    #[test]
    fn span_basis_of_redundant_generators() {
        let g = IntMatrix::from_rows(&[vec![2, 4, 6], vec![0, 0, 0]]);
        let b = column_span_basis(&g);
        assert_eq!(b.cols(), 1);
        assert_eq!(b.column(0)[0].abs(), BigInt::from(2));
    }
}
