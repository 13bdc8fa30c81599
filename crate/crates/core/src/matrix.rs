//! Dense row-major matrices over any [`Field`], with exact elimination.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, got: data.len() });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch { expected: c, got: row.len() });
            }
            data.extend(row);
        }
        Ok(Matrix { rows: r, cols: c, data })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<T>]) -> Result<Self> {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        for col in cols {
            if col.len() != r {
                return Err(Error::DimensionMismatch { expected: r, got: col.len() });
            }
        }
        Ok(Self::from_fn(r, c, |i, j| cols[j][i].clone()))
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

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<T>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl<T: Field> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (j, vj) in v.iter().enumerate() {
                    let a = &self.data[i * self.cols + j];
                    if !a.is_zero() {
                        acc = acc + a.clone() * vj.clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
    }

    /// Block-diagonal assembly.
    pub fn block_diag(a: &Self, b: &Self) -> Self {
        let mut m = Self::zeros(a.rows + b.rows, a.cols + b.cols);
        m.set_block(0, 0, a);
        m.set_block(a.rows, a.cols, b);
        m
    }

    /// `[[a, b], [c, d]]`.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let mut m = Self::zeros(a.rows + c.rows, a.cols + b.cols);
        m.set_block(0, 0, a);
        m.set_block(0, a.cols, b);
        m.set_block(a.rows, 0, c);
        m.set_block(a.rows, a.cols, d);
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Field::is_negligible)
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && (self - other).is_zero()
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && self.approx_eq(&Self::identity(self.rows))
    }

    /// Row echelon reduction; returns (rank, determinant sign-tracked product
    /// of pivots when square, reduced matrix).
    fn eliminate(&self) -> (usize, T, Self) {
        let mut m = self.clone();
        let mut det = T::one();
        let mut rank = 0;
        for c in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(p) = (rank..m.rows).find(|&r| m[(r, c)].is_invertible()) else {
                continue;
            };
            if p != rank {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, rank * m.cols + j);
                }
                det = -det;
            }
            let pivot = m[(rank, c)].clone();
            det = det * pivot.clone();
            for j in c..m.cols {
                let v = m[(rank, j)].clone() / pivot.clone();
                m[(rank, j)] = v;
            }
            for r in 0..m.rows {
                if r == rank {
                    continue;
                }
                let f = m[(r, c)].clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m[(r, j)].clone() - f.clone() * m[(rank, j)].clone();
                    m[(r, j)] = v;
                }
            }
            rank += 1;
        }
        if rank < m.rows.min(m.cols) || !m.is_square() {
            det = T::zero();
        }
        (rank, det, m)
    }

    pub fn rank(&self) -> usize {
        self.eliminate().0
    }

    pub fn det(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        if self.rows == 0 {
            return T::one();
        }
        self.eliminate().1
    }

    /// Solves `self * x = rhs` for square invertible `self`.
    pub fn solve(&self, rhs: &Self) -> Option<Self> {
        if !self.is_square() || rhs.rows != self.rows {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, n + rhs.cols);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, rhs);
        // Eliminate only over the first n columns.
        let mut m = aug;
        for c in 0..n {
            let p = (c..n).find(|&r| m[(r, c)].is_invertible())?;
            if p != c {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, c * m.cols + j);
                }
            }
            let pivot = m[(c, c)].clone();
            for j in c..m.cols {
                let v = m[(c, j)].clone() / pivot.clone();
                m[(c, j)] = v;
            }
            for r in 0..n {
                if r == c {
                    continue;
                }
                let f = m[(r, c)].clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m[(r, j)].clone() - f.clone() * m[(c, j)].clone();
                    m[(r, j)] = v;
                }
            }
        }
        Some(m.block(0, n, n, rhs.cols))
    }

    pub fn solve_vec(&self, rhs: &[T]) -> Option<Vec<T>> {
        let b = Matrix::from_columns(&[rhs.to_vec()]).ok()?;
        self.solve(&b).map(|x| x.column(0))
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        self.solve(&Self::identity(self.rows))
    }

    /// Coefficients `c` with `self * c = target`, found through the normal
    /// equations and checked to reproduce `target` exactly. `None` when the
    /// columns are dependent or `target` lies outside their span.
    pub fn solve_in_span(&self, target: &[T]) -> Option<Vec<T>> {
        let t = self.transpose();
        let gram = &t * self;
        let rhs = t.mul_vec(target);
        let c = gram.solve_vec(&rhs)?;
        let back = self.mul_vec(&c);
        if back.iter().zip(target).all(|(a, b)| (a.clone() - b.clone()).is_negligible()) {
            Some(c)
        } else {
            None
        }
    }

    /// Dimension of the null space of `self` (as a map on column vectors).
    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn max_abs_f64(&self) -> f64 {
        self.data.iter().map(|x| x.leading_f64().abs()).fold(0.0, f64::max)
    }
}

impl<T: Scalar> Matrix<T> {
    /// Row-major canonical strings, the serialized form of an endomorphism.
    pub fn to_canonical(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(Scalar::canonical).collect()).collect()
    }

    pub fn from_canonical(rows: &[Vec<String>]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| T::parse_canonical(s).ok_or_else(|| Error::Parse(s.clone())))
                    .collect::<Result<Vec<T>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(parsed)
    }
}

/// JSON wire form: row-major array of canonical scalar strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MatrixJson(pub Vec<Vec<String>>);

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Field> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.data[k * rhs.cols + j];
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * rhs.cols + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }
}

impl<T: Field> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum dimension mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }
}

impl<T: Field> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference dimension mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }
}

impl<T: Field> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(|x| -x.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Rational};

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x, 1)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(a.det(), q(18, 1));
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
    }

    #[test]
    fn determinant_with_row_swap() {
        let a = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.det(), q(-1, 1));
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let a = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(a.det(), q(0, 1));
        assert!(a.inverse().is_none());
        assert_eq!(a.rank(), 1);
        assert_eq!(a.kernel_dim(), 1);
    }

    #[test]
    fn span_solution_is_checked() {
        let a = m(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(a.solve_in_span(&[q(2, 1), q(3, 1), q(5, 1)]), Some(vec![q(2, 1), q(3, 1)]));
        assert_eq!(a.solve_in_span(&[q(2, 1), q(3, 1), q(4, 1)]), None);
    }

    #[test]
    fn canonical_roundtrip() {
        let a = m(&[&[1, -2], &[0, 7]]).scale(&q(1, 3));
        let back = Matrix::<Rational>::from_canonical(&a.to_canonical()).unwrap();
        assert_eq!(a, back);
    }
}
