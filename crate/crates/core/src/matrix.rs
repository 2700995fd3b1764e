//! Dense matrices of arbitrary-precision integers.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Row-major dense integer matrix. Entries never overflow.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Multiple of the identity.
    pub fn scalar(n: usize, k: &BigInt) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = k.clone();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::shape(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    /// Builds a matrix from a list of rows. `cols` is required so that
    /// matrices with zero rows keep their width.
    pub fn from_rows(rows: &[Vec<BigInt>], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::shape(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row.iter().cloned());
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Convenience constructor from small integers; panics on ragged input.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        IntMatrix {
            rows,
            cols,
            data: entries.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Result<Self> {
        let cols = columns.len();
        let mut m = Self::zeros(rows, cols);
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::shape(format!(
                    "column {j} has {} entries, expected {rows}",
                    col.len()
                )));
            }
            for (i, x) in col.iter().enumerate() {
                m.data[i * cols + j] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub(crate) fn get_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for (a, b) in self.data[i * self.cols..(i + 1) * self.cols].iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let cols = self.cols + other.cols;
        let mut m = Self::zeros(self.rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.data[i * cols + j] = self.get(i, j).clone();
            }
            for j in 0..other.cols {
                m.data[i * cols + self.cols + j] = other.get(i, j).clone();
            }
        }
        m
    }

    pub fn vstack(&self, other: &IntMatrix) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend(self.data[i * self.cols..(i + 1) * self.cols].iter().cloned());
        }
        IntMatrix {
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                m.data[i * idx.len() + jj] = self.get(i, j).clone();
            }
        }
        m
    }

    /// Rows `start..end`.
    pub fn row_range(&self, start: usize, end: usize) -> Self {
        IntMatrix {
            rows: end - start,
            cols: self.cols,
            data: self.data[start * self.cols..end * self.cols].to_vec(),
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::shape("determinant of a non-square matrix"));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        Ok(sign * a.get(n - 1, n - 1))
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if !s.is_zero() {
                let d = s * k;
                self.data[dst * self.cols + j] += d;
            }
        }
    }

    /// col[dst] += k * col[src]
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if !s.is_zero() {
                let d = s * k;
                self.data[i * self.cols + dst] += d;
            }
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = &mut self.data[i * self.cols + j];
            *x = -std::mem::take(x);
        }
    }

    pub(crate) fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let x = &mut self.data[i * self.cols + j];
            *x = -std::mem::take(x);
        }
    }

    /// Reduces row `i` modulo `m` into `[0, m)`; `m = 0` leaves it alone.
    pub(crate) fn reduce_row(&mut self, i: usize, m: &BigInt) {
        if m.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let x = &mut self.data[i * self.cols + j];
            *x = x.mod_floor(m);
        }
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "matrix product {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        *out.get_mut(i, j) += a * b;
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = IntMatrix::from_i64(2, 3, &[1, 2, 3, 4, 5, 6]);
        let b = a.transpose();
        let p = &a * &b;
        assert_eq!(p, IntMatrix::from_i64(2, 2, &[14, 32, 32, 77]));
        assert_eq!(b.rows(), 3);
    }

    #[test]
    fn determinant_small() {
        // 2*(6-2) - 0 + 1*(1-3) = 6
        let a = IntMatrix::from_i64(3, 3, &[2, 0, 1, 1, 3, 2, 1, 1, 2]);
        assert_eq!(a.determinant().unwrap(), BigInt::from(6));
        let z = IntMatrix::from_i64(2, 2, &[0, 1, 1, 0]);
        assert_eq!(z.determinant().unwrap(), BigInt::from(-1));
        assert_eq!(IntMatrix::zeros(0, 0).determinant().unwrap(), BigInt::from(1));
        let s = IntMatrix::from_i64(2, 2, &[1, 2, 2, 4]);
        assert!(s.determinant().unwrap().is_zero());
    }

    #[test]
    fn ragged_rows_rejected() {
        let rows = vec![vec![BigInt::from(1)], vec![]];
        assert!(IntMatrix::from_rows(&rows, 1).is_err());
    }

    #[test]
    fn empty_shapes_survive_stacking() {
        let a = IntMatrix::zeros(2, 0);
        let b = IntMatrix::identity(2);
        assert_eq!(a.hstack(&b), b);
        let c = IntMatrix::zeros(0, 3);
        assert_eq!(c.vstack(&IntMatrix::zeros(1, 3)).rows(), 1);
    }
}
