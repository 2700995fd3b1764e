//! Smith normal form over the integers, with both transforms and their
//! inverses, plus the integer linear-system helpers built on it.
//!
//! Pivoting always picks the nonzero entry of least absolute value in the
//! active block. Elimination uses Euclidean quotients, so every pass either
//! clears the pivot row and column or strictly lowers the pivot's absolute
//! value.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::IntMatrix;

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal, nonnegative,
/// and with each diagonal entry dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SnfDecomposition {
    /// Nonzero diagonal entries, in order.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k)
            .map(|i| self.d.get(i, i).clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }
}

/// Computes the Smith normal form of `a`.
pub fn snf(a: &IntMatrix) -> SnfDecomposition {
    let full = snf_full(a);
    SnfDecomposition {
        u: full.u,
        u_inv: full.u_inv,
        d: full.d,
        v: full.v,
        v_inv: full.v_inv,
    }
}

/// Smith form together with `U^{-1}` and `V^{-1}`.
#[derive(Clone, Debug)]
pub(crate) struct FullSnf {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl FullSnf {
    pub fn diag(&self, i: usize) -> &BigInt {
        self.d.get(i, i)
    }
}

struct Work {
    d: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    /// row[dst] += k row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.d.add_row_multiple(dst, src, k);
        self.u.add_row_multiple(dst, src, k);
        self.u_inv.add_col_multiple(src, dst, &-k);
    }

    /// col[dst] += k col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.d.add_col_multiple(dst, src, k);
        self.v.add_col_multiple(dst, src, k);
        self.v_inv.add_row_multiple(src, dst, &-k);
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

fn least_nonzero(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = d.get(i, j);
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, b)| ax < *b) {
                let one = ax.is_one();
                best = Some(((i, j), ax));
                if one {
                    return best.map(|(p, _)| p);
                }
            }
        }
    }
    best.map(|(p, _)| p)
}

pub(crate) fn snf_full(a: &IntMatrix) -> FullSnf {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        d: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = least_nonzero(&w.d, t) else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let p = w.d.get(t, t).clone();
            let mut residue = false;
            for i in t + 1..m {
                let x = w.d.get(i, t);
                if x.is_zero() {
                    continue;
                }
                let q = x.div_floor(&p);
                w.add_row(i, t, &-q);
                residue |= !w.d.get(i, t).is_zero();
            }
            for j in t + 1..n {
                let x = w.d.get(t, j);
                if x.is_zero() {
                    continue;
                }
                let q = x.div_floor(&p);
                w.add_col(j, t, &-q);
                residue |= !w.d.get(t, j).is_zero();
            }
            if residue {
                // A remainder smaller than the pivot survived: bring the
                // smallest one of the pivot row/column into position.
                let mut best = (t, t, p.abs());
                for i in t + 1..m {
                    let x = w.d.get(i, t).abs();
                    if !x.is_zero() && x < best.2 {
                        best = (i, t, x);
                    }
                }
                for j in t + 1..n {
                    let x = w.d.get(t, j).abs();
                    if !x.is_zero() && x < best.2 {
                        best = (t, j, x);
                    }
                }
                w.swap_rows(t, best.0);
                w.swap_cols(t, best.1);
                continue;
            }
            // Row and column are clear; enforce divisibility of the rest.
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !w.d.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.d.get(t, t).is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    FullSnf {
        u: w.u,
        u_inv: w.u_inv,
        d: w.d,
        v: w.v,
        v_inv: w.v_inv,
        rank: t,
    }
}

/// Some integer solution `x` of `a x = b`, or `None`.
pub(crate) fn solve_system(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let s = snf_full(a);
    solve_with(&s, b)
}

pub(crate) fn solve_with(s: &FullSnf, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let y = s.u.mul_vec(b);
    let n = s.v.rows();
    let mut z = vec![BigInt::zero(); n];
    for (i, yi) in y.iter().enumerate() {
        if i < s.rank {
            let (q, r) = yi.div_rem(s.diag(i));
            if !r.is_zero() {
                return None;
            }
            z[i] = q;
        } else if !yi.is_zero() {
            return None;
        }
    }
    Some(s.v.mul_vec(&z))
}

/// Basis of the integer kernel lattice of `a`, as columns.
pub(crate) fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let s = snf_full(a);
    let idx: Vec<usize> = (s.rank..a.cols()).collect();
    s.v.select_cols(&idx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> FullSnf {
        let s = snf_full(a);
        assert_eq!(&(&s.u * a) * &s.v, s.d);
        assert_eq!(&s.u * &s.u_inv, IntMatrix::identity(a.rows()));
        assert_eq!(&s.v * &s.v_inv, IntMatrix::identity(a.cols()));
        s
    }

    #[test]
    fn two_by_two_example() {
        let a = IntMatrix::from_i64(2, 2, &[2, 4, 6, 8]);
        let s = check(&a);
        assert_eq!(s.d, IntMatrix::from_i64(2, 2, &[2, 0, 0, 4]));
    }

    #[test]
    fn empty_matrix() {
        let a = IntMatrix::zeros(0, 0);
        let d = snf(&a);
        assert_eq!(d.u.rows(), 0);
        assert_eq!(d.v.rows(), 0);
        assert!(d.diagonal().is_empty());
    }

    #[test]
    fn identity_is_fixed() {
        let a = IntMatrix::identity(3);
        assert_eq!(snf(&a).d, a);
    }

    #[test]
    fn divisibility_fixup() {
        // diag(2, 3) must become diag(1, 6)
        let a = IntMatrix::from_i64(2, 2, &[2, 0, 0, 3]);
        let s = check(&a);
        assert_eq!(s.d, IntMatrix::from_i64(2, 2, &[1, 0, 0, 6]));
    }

    #[test]
    fn rectangular_and_rank_deficient() {
        let a = IntMatrix::from_i64(3, 4, &[1, 2, 3, 4, 2, 4, 6, 8, 0, 0, 0, 5]);
        let s = check(&a);
        assert_eq!(s.rank, 2);
        let k = integer_kernel(&a);
        assert_eq!(k.cols(), 2);
        assert!((&a * &k).is_zero());
    }

    #[test]
    fn solves_systems() {
        let a = IntMatrix::from_i64(1, 1, &[2]);
        assert_eq!(solve_system(&a, &[BigInt::from(4)]), Some(vec![BigInt::from(2)]));
        assert_eq!(solve_system(&a, &[BigInt::from(3)]), None);
        let b = IntMatrix::from_i64(2, 2, &[2, 4, 6, 8]);
        let rhs = [BigInt::from(2), BigInt::from(2)];
        let x = solve_system(&b, &rhs).unwrap();
        assert_eq!(b.mul_vec(&x), rhs.to_vec());
    }
}
