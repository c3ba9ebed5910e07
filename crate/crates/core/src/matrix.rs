//! Dense row-major matrices over a [`Scalar`] field.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;

use crate::scalar::Scalar;

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Matrix { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == nc), "ragged rows");
        Matrix::from_vec(nr, nc, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_vec(rows, cols, vec![T::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn scalar(n: usize, s: T) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { s.clone() } else { T::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Self {
        Matrix::from_fn(rows, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn trace(&self) -> T {
        assert!(self.is_square(), "trace of non-square matrix");
        (0..self.rows).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = &self[(r, c)];
                    if r == c {
                        *x == T::one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    /// Whether every entry is negligible relative to `scale` (exactly zero
    /// for exact fields).
    pub fn is_negligible(&self, scale: f64, tol: f64) -> bool {
        let sq = self.data.iter().fold(T::zero(), |acc, x| acc + x.norm_sqr_s());
        T::negligible_sq(&sq, scale * scale, tol)
    }

    /// Columns scaled to unit length (floats only; exact fields are returned
    /// unchanged).
    pub fn normalized_columns(&self) -> Matrix<T> {
        if T::EXACT {
            return self.clone();
        }
        let mut out = self.clone();
        for c in 0..self.cols {
            let norm = self.column(c).iter().map(|x| x.magnitude().powi(2)).sum::<f64>().sqrt();
            if let Some(s) = T::from_c64(Complex64::new(1.0 / norm, 0.0)).filter(|_| norm > 0.0) {
                for r in 0..self.rows {
                    out[(r, c)] = out[(r, c)].clone() * s.clone();
                }
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x.magnitude().powi(2)).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    pub fn submatrix(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        assert!(r0 + nr <= self.rows && c0 + nc <= self.cols, "submatrix out of range");
        Matrix::from_fn(nr, nc, |r, c| self[(r0 + r, c0 + c)].clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix<T>) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of range");
        for r in 0..block.rows {
            for c in 0..block.cols {
                self[(r0 + r, c0 + c)] = block[(r, c)].clone();
            }
        }
    }

    pub fn hstack(parts: &[&Matrix<T>], rows: usize) -> Self {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut c0 = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "hstack row mismatch");
            out.set_block(0, c0, m);
            c0 += m.cols;
        }
        out
    }

    pub fn vstack(parts: &[&Matrix<T>], cols: usize) -> Self {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut r0 = 0;
        for m in parts {
            assert_eq!(m.cols, cols, "vstack column mismatch");
            out.set_block(r0, 0, m);
            r0 += m.rows;
        }
        out
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix<T>) -> Self {
        let mut out = Matrix::zeros(self.rows + other.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, other);
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Gauss-Jordan inverse with partial pivoting. `None` when singular
    /// (exactly, or below `tol` relative to the largest entry for floats).
    pub fn inverse(&self, tol: f64) -> Option<Self> {
        assert!(self.is_square(), "inverse of non-square matrix");
        let n = self.rows;
        let scale = self.max_abs();
        let mut a = self.clone();
        let mut inv: Matrix<T> = Matrix::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .filter(|&r| !a[(r, col)].is_zero())
                .max_by(|&x, &y| a[(x, col)].magnitude().total_cmp(&a[(y, col)].magnitude()))?;
            if !T::EXACT && a[(pivot, col)].magnitude() <= tol * scale {
                return None;
            }
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let p = a[(col, col)].clone();
            for c in 0..n {
                a[(col, c)] = a[(col, c)].clone() / p.clone();
                inv[(col, c)] = inv[(col, c)].clone() / p.clone();
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for c in 0..n {
                    let ac = a[(col, c)].clone();
                    let ic = inv[(col, c)].clone();
                    a[(r, c)] = a[(r, c)].clone() - f.clone() * ac;
                    inv[(r, c)] = inv[(r, c)].clone() - f.clone() * ic;
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// A basis (as columns) of the column space.
    ///
    /// Column-pivoted Gram-Schmidt without normalization, so it stays exact
    /// over exact fields. For floats a residual is dropped once its norm is
    /// at most `tol` times the largest input column norm.
    pub fn column_space(&self, tol: f64) -> Matrix<T> {
        self.column_space_above(tol, 0.0)
    }

    /// [`Matrix::column_space`] with the reference norm raised to at least
    /// `floor`, so that columns which are all roundoff are dropped too.
    pub fn column_space_above(&self, tol: f64, floor: f64) -> Matrix<T> {
        let mut residuals: Vec<Vec<T>> = (0..self.cols).map(|c| self.column(c)).collect();
        let scale_sq = residuals.iter().map(|v| vec_norm_sq(v).magnitude()).fold(floor * floor, f64::max);
        let mut basis: Vec<Vec<T>> = Vec::new();
        loop {
            let best = residuals
                .iter()
                .enumerate()
                .map(|(i, v)| (i, vec_norm_sq(v)))
                .filter(|(_, n)| !T::negligible_sq(n, scale_sq, tol))
                .max_by(|a, b| a.1.magnitude().total_cmp(&b.1.magnitude()));
            let Some((idx, nsq)) = best else { break };
            let q = residuals.swap_remove(idx);
            for v in residuals.iter_mut() {
                let coef = vec_inner(&q, v) / nsq.clone();
                for (vi, qi) in v.iter_mut().zip(&q) {
                    *vi = vi.clone() - coef.clone() * qi.clone();
                }
            }
            basis.push(q);
        }
        Matrix::from_columns(self.rows, &basis)
    }

    /// Rank: exact elimination over exact fields, singular values above
    /// `tol * sigma_max` otherwise.
    pub fn rank(&self, tol: f64) -> usize {
        if T::EXACT {
            self.column_space(0.0).cols()
        } else {
            let sv = self.singular_values();
            let smax = sv.iter().cloned().fold(0.0, f64::max);
            if smax == 0.0 {
                return 0;
            }
            sv.iter().filter(|&&s| s > tol * smax).count()
        }
    }

    /// Reduced row echelon form and pivot columns. Intended for exact fields.
    pub fn rref(&self) -> (Matrix<T>, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..a.cols {
            if row == a.rows {
                break;
            }
            let Some(p) = (row..a.rows).find(|&r| !a[(r, col)].is_zero()) else { continue };
            a.swap_rows(row, p);
            let pv = a[(row, col)].clone();
            for c in 0..a.cols {
                a[(row, c)] = a[(row, c)].clone() / pv.clone();
            }
            for r in 0..a.rows {
                if r != row && !a[(r, col)].is_zero() {
                    let f = a[(r, col)].clone();
                    for c in 0..a.cols {
                        let x = a[(row, c)].clone();
                        a[(r, c)] = a[(r, c)].clone() - f.clone() * x;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }

    /// Basis of the right kernel (as columns), by exact elimination.
    pub fn nullspace(&self) -> Matrix<T> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let cols: Vec<Vec<T>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(i, f)].clone();
                }
                v
            })
            .collect();
        Matrix::from_columns(self.cols, &cols)
    }

    pub fn singular_values(&self) -> Vec<f64> {
        if self.rows == 0 || self.cols == 0 {
            return Vec::new();
        }
        self.to_nalgebra().singular_values().iter().cloned().collect()
    }

    pub fn to_nalgebra(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)].to_c64())
    }

    pub fn from_nalgebra(m: &DMatrix<Complex64>) -> Option<Self> {
        let mut data = Vec::with_capacity(m.nrows() * m.ncols());
        for r in 0..m.nrows() {
            for c in 0..m.ncols() {
                data.push(T::from_c64(m[(r, c)])?);
            }
        }
        Some(Matrix::from_vec(m.nrows(), m.ncols(), data))
    }

    pub fn approx_eq(&self, other: &Matrix<T>, tol: f64) -> bool {
        self.shape() == other.shape()
            && self.data.iter().zip(&other.data).all(|(a, b)| a.approx_eq(b, tol))
    }
}

fn vec_inner<T: Scalar>(q: &[T], v: &[T]) -> T {
    q.iter().zip(v).fold(T::zero(), |acc, (a, b)| acc + a.conj() * b.clone())
}

fn vec_norm_sq<T: Scalar>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |acc, x| acc + x.norm_sqr_s())
}

impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[r * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let idx = r * rhs.cols + c;
                    out.data[idx] = out.data[idx].clone() + a.clone() * rhs.data[k * rhs.cols + c].clone();
                }
            }
        }
        out
    }
}

impl<T: Scalar> Mul for Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: Matrix<T>) -> Matrix<T> {
        &self * &rhs
    }
}

impl<T: Scalar> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }
}

impl<T: Scalar> Add for Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: Matrix<T>) -> Matrix<T> {
        &self + &rhs
    }
}

impl<T: Scalar> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }
}

impl<T: Scalar> Sub for Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: Matrix<T>) -> Matrix<T> {
        &self - &rhs
    }
}

impl<T: Scalar> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(|x| -x.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use num_rational::BigRational;

    fn q(rows: Vec<Vec<i64>>) -> Matrix<BigRational> {
        Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(BigRational::from_i64).collect()).collect())
    }

    #[test]
    fn exact_inverse() {
        let m = q(vec![vec![2, 1], vec![1, 1]]);
        let inv = m.inverse(0.0).unwrap();
        assert!((&m * &inv).is_identity());
        assert!(q(vec![vec![1, 2], vec![2, 4]]).inverse(0.0).is_none());
    }

    #[test]
    fn float_inverse_detects_near_singular() {
        let m = Matrix::from_rows(vec![vec![1.0, 1.0], vec![1.0, 1.0 + 1e-14]]);
        assert!(m.inverse(1e-9).is_none());
        let m = Matrix::from_rows(vec![vec![0.0, 2.0], vec![3.0, 1.0]]);
        let inv = m.inverse(1e-9).unwrap();
        assert!((&m * &inv).approx_eq(&Matrix::identity(2), 1e-12));
    }

    #[test]
    fn column_space_and_rank() {
        let m = q(vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(m.column_space(0.0).cols(), 2);
        assert_eq!(m.rank(0.0), 2);
        let f = m.map(|x| x.to_c64());
        assert_eq!(f.rank(1e-9), 2);
        assert_eq!(f.column_space(1e-9).cols(), 2);
        assert_eq!(Matrix::<f64>::zeros(3, 2).rank(1e-9), 0);
    }

    #[test]
    fn column_space_spans_input() {
        let m = q(vec![vec![1, 1], vec![1, -1], vec![2, 0]]);
        let basis = m.column_space(0.0);
        let joined = Matrix::hstack(&[&basis, &m], 3);
        assert_eq!(joined.rank(0.0), basis.cols());
        assert_eq!(basis[(0, 0)].clone() * ratio(1, 1), basis[(0, 0)]);
    }

    #[test]
    fn nullspace_exact() {
        let m = q(vec![vec![2, -2], vec![-2, 2]]);
        let k = m.nullspace();
        assert_eq!(k.cols(), 1);
        assert!((&m * &k).is_zero());
        assert_eq!(q(vec![vec![2, -1], vec![-1, 2]]).nullspace().cols(), 0);
    }

    #[test]
    fn blocks_and_stacks() {
        let a = q(vec![vec![1, 2]]);
        let b = q(vec![vec![3]]);
        let s = a.direct_sum(&b);
        assert_eq!(s.shape(), (2, 3));
        assert_eq!(s[(1, 2)], BigRational::from_i64(3));
        assert_eq!(s.submatrix(0, 0, 1, 2), a);
        let v = Matrix::vstack(&[&a, &a], 2);
        assert_eq!(v.rows(), 2);
        assert_eq!(q(vec![vec![1, 1], vec![0, 1]]).pow(3), q(vec![vec![1, 3], vec![0, 1]]));
    }
}
