//! Small dense linear algebra kernels: column-major matrices, LU with
//! partial pivoting, Cholesky, one-sided Jacobi SVD and a minimum-norm
//! least-squares solve built on it.
//!
//! Sizes in this crate stay in the hundreds, so everything is written as
//! straightforward loops over contiguous columns.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Dense column-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Real> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for j in 0..cols {
            for i in 0..rows {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Build from columns of equal length.
    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Self {
        let mut data = Vec::with_capacity(rows * columns.len());
        for c in columns {
            assert_eq!(c.len(), rows, "ragged column");
            data.extend_from_slice(c);
        }
        Self {
            rows,
            cols: columns.len(),
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn col(&self, j: usize) -> &[T] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn col_mut(&mut self, j: usize) -> &mut [T] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Sub-matrix made of the column range `cols`.
    pub fn columns(&self, cols: std::ops::Range<usize>) -> Self {
        Self {
            rows: self.rows,
            cols: cols.len(),
            data: self.data[cols.start * self.rows..cols.end * self.rows].to_vec(),
        }
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.cols);
        let mut y = vec![T::zero(); self.rows];
        for (j, &xj) in x.iter().enumerate() {
            if xj == T::zero() {
                continue;
            }
            for (yi, &a) in y.iter_mut().zip(self.col(j)) {
                *yi += a * xj;
            }
        }
        y
    }

    /// `A^T x`.
    pub fn tr_mul_vec(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.rows);
        (0..self.cols)
            .map(|j| dot(self.col(j), x))
            .collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for j in 0..other.cols {
            let y = self.mul_vec(other.col(j));
            out.col_mut(j).copy_from_slice(&y);
        }
        out
    }

    /// `A^T A`.
    pub fn gram(&self) -> Self {
        let n = self.cols;
        let mut g = Self::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = dot(self.col(i), self.col(j));
                g[(i, j)] = v;
                g[(j, i)] = v;
            }
        }
        g
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[j * self.rows + i]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[j * self.rows + i]
    }
}

pub fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(x, y)| *x * *y).sum()
}

/// LU factorisation `PA = LU` with partial pivoting.
#[derive(Debug, Clone)]
pub struct Lu<T> {
    lu: Matrix<T>,
    perm: Vec<usize>,
}

impl<T: Real> Lu<T> {
    pub fn factor(a: &Matrix<T>) -> Result<Self> {
        assert_eq!(a.rows(), a.cols(), "LU needs a square matrix");
        let n = a.rows();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let scale = a.max_abs();
        let tiny = scale * T::epsilon() * T::of_usize(n.max(1));
        for k in 0..n {
            let (p, pivot) = (k..n)
                .map(|i| (i, lu[(i, k)].abs()))
                .fold((k, T::zero()), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pivot <= tiny || pivot == T::zero() {
                return Err(Error::Singular);
            }
            if p != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = tmp;
                }
                perm.swap(k, p);
            }
            let d = lu[(k, k)];
            for i in k + 1..n {
                lu[(i, k)] /= d;
            }
            for j in k + 1..n {
                let ukj = lu[(k, j)];
                if ukj == T::zero() {
                    continue;
                }
                for i in k + 1..n {
                    let lik = lu[(i, k)];
                    lu[(i, j)] -= lik * ukj;
                }
            }
        }
        Ok(Self { lu, perm })
    }

    pub fn size(&self) -> usize {
        self.perm.len()
    }

    pub fn solve(&self, b: &[T]) -> Vec<T> {
        let n = self.size();
        assert_eq!(b.len(), n);
        let mut y: Vec<T> = self.perm.iter().map(|&p| b[p]).collect();
        for j in 0..n {
            let yj = y[j];
            for i in j + 1..n {
                y[i] -= self.lu[(i, j)] * yj;
            }
        }
        for j in (0..n).rev() {
            y[j] /= self.lu[(j, j)];
            let yj = y[j];
            for i in 0..j {
                y[i] -= self.lu[(i, j)] * yj;
            }
        }
        y
    }
}

/// Cholesky factorisation `A = L L^T` of a symmetric positive definite matrix.
#[derive(Debug, Clone)]
pub struct Cholesky<T> {
    l: Matrix<T>,
}

impl<T: Real> Cholesky<T> {
    pub fn factor(a: &Matrix<T>) -> Result<Self> {
        assert_eq!(a.rows(), a.cols());
        let n = a.rows();
        let mut l = Matrix::zeros(n, n);
        for j in 0..n {
            let mut d = a[(j, j)];
            for k in 0..j {
                d -= l[(j, k)] * l[(j, k)];
            }
            if !(d > T::zero()) {
                return Err(Error::NotPositiveDefinite);
            }
            let d = d.sqrt();
            l[(j, j)] = d;
            for i in j + 1..n {
                let mut s = a[(i, j)];
                for k in 0..j {
                    s -= l[(i, k)] * l[(j, k)];
                }
                l[(i, j)] = s / d;
            }
        }
        Ok(Self { l })
    }

    pub fn size(&self) -> usize {
        self.l.rows()
    }

    pub fn solve(&self, b: &[T]) -> Vec<T> {
        let n = self.size();
        assert_eq!(b.len(), n);
        let mut y = b.to_vec();
        for i in 0..n {
            let mut s = y[i];
            for k in 0..i {
                s -= self.l[(i, k)] * y[k];
            }
            y[i] = s / self.l[(i, i)];
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in i + 1..n {
                s -= self.l[(k, i)] * y[k];
            }
            y[i] = s / self.l[(i, i)];
        }
        y
    }
}

/// Thin SVD `A = U diag(s) V^T`, singular values descending.
#[derive(Debug, Clone)]
pub struct Svd<T> {
    pub u: Matrix<T>,
    pub s: Vec<T>,
    pub v: Matrix<T>,
}

impl<T: Real> Svd<T> {
    /// One-sided (Hestenes) Jacobi SVD.
    pub fn new(a: &Matrix<T>) -> Self {
        if a.rows() < a.cols() {
            let t = Self::new(&a.transpose());
            return Self {
                u: t.v,
                s: t.s,
                v: t.u,
            };
        }
        let n = a.cols();
        let mut u = a.clone();
        let mut v = Matrix::identity(n);
        let eps = T::epsilon();
        for _sweep in 0..80 {
            let mut rotated = false;
            for i in 0..n {
                for j in i + 1..n {
                    let alpha = dot(u.col(i), u.col(i));
                    let beta = dot(u.col(j), u.col(j));
                    let gamma = dot(u.col(i), u.col(j));
                    if gamma == T::zero() || gamma.abs() <= eps * (alpha * beta).sqrt() {
                        continue;
                    }
                    rotated = true;
                    let zeta = (beta - alpha) / (T::of(2.0) * gamma);
                    let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                    let c = T::one() / (T::one() + t * t).sqrt();
                    let s = c * t;
                    rotate_columns(&mut u, i, j, c, s);
                    rotate_columns(&mut v, i, j, c, s);
                }
            }
            if !rotated {
                break;
            }
        }
        let mut s: Vec<T> = (0..n).map(|j| dot(u.col(j), u.col(j)).sqrt()).collect();
        for (j, &sj) in s.iter().enumerate() {
            if sj > T::zero() {
                for x in u.col_mut(j) {
                    *x /= sj;
                }
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&x, &y| s[y].partial_cmp(&s[x]).unwrap_or(std::cmp::Ordering::Equal));
        let u = Matrix::from_fn(u.rows(), n, |i, j| u[(i, order[j])]);
        let v = Matrix::from_fn(n, n, |i, j| v[(i, order[j])]);
        s = order.iter().map(|&j| s[j]).collect();
        Self { u, s, v }
    }

    /// Numerical rank with singular values below `rel_tol * s_max` treated as zero.
    pub fn rank(&self, rel_tol: T) -> usize {
        let smax = self.s.first().copied().unwrap_or(T::zero());
        if smax == T::zero() {
            return 0;
        }
        self.s.iter().filter(|&&s| s >= rel_tol * smax).count()
    }

    pub fn condition_number(&self) -> T {
        match (self.s.first(), self.s.last()) {
            (Some(&hi), Some(&lo)) if lo > T::zero() => hi / lo,
            _ => T::infinity(),
        }
    }

    /// Minimum-norm least-squares solution of `A x = b`.
    pub fn solve_min_norm(&self, b: &[T], rel_tol: T) -> Vec<T> {
        assert_eq!(b.len(), self.u.rows());
        let smax = self.s.first().copied().unwrap_or(T::zero());
        let mut x = vec![T::zero(); self.v.rows()];
        for (j, &sj) in self.s.iter().enumerate() {
            if sj <= rel_tol * smax || sj == T::zero() {
                continue;
            }
            let coef = dot(self.u.col(j), b) / sj;
            for (xi, &vij) in x.iter_mut().zip(self.v.col(j)) {
                *xi += coef * vij;
            }
        }
        x
    }
}

fn rotate_columns<T: Real>(m: &mut Matrix<T>, i: usize, j: usize, c: T, s: T) {
    let rows = m.rows();
    for r in 0..rows {
        let a = m[(r, i)];
        let b = m[(r, j)];
        m[(r, i)] = c * a - s * b;
        m[(r, j)] = s * a + c * b;
    }
}

/// Default relative rank threshold: `1e-10`, relaxed for low precision
/// scalars so that `f32` matrices are not reported rank deficient.
pub fn default_rank_tol<T: Real>(n: usize) -> T {
    T::of(1e-10).max(T::epsilon() * T::of_usize(n.max(1)) * T::of(10.0))
}

pub fn rank<T: Real>(a: &Matrix<T>) -> usize {
    let tol = default_rank_tol::<T>(a.rows().max(a.cols()));
    Svd::new(a).rank(tol)
}
