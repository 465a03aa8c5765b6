//! Dense matrices over a generic scalar, symmetric matrices stored as upper
//! triangles, elimination-based determinant/solve/inverse, and fraction-free
//! exact rank.

use crate::error::{Error, Result};
use crate::scalar::{Field, Rat, Ring, Scalar, Tol};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn from_rows(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { rows, cols, entries }
    }

    pub fn from_vec(rows: usize, cols: usize, entries: Vec<T>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        Matrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_rows(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_rows(n, n, |i, j| if i == j { T::one() } else { T::zero() })
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

    pub fn transpose(&self) -> Self {
        Self::from_rows(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        Matrix::from_rows(self.rows, rhs.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc.add(&self[(i, k)].mul(&rhs[(k, j)]));
            }
            acc
        })
    }

    pub fn map<S: Ring>(&self, mut f: impl FnMut(&T) -> S) -> Matrix<S> {
        Matrix::from_rows(self.rows, self.cols, |i, j| f(&self[(i, j)]))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.entries[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.entries[i * self.cols + j]
    }
}

impl<T: Scalar> Matrix<T> {
    /// Max entry magnitude; 0 for an empty matrix.
    pub fn max_magnitude(&self) -> f64 {
        self.entries.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    /// Max magnitude of entrywise difference.
    pub fn max_diff(&self, other: &Matrix<T>) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.sub(b).magnitude())
            .fold(0.0, f64::max)
    }

    /// Determinant by elimination with partial pivoting (largest-magnitude
    /// admissible pivot). Exact over the rationals.
    pub fn det(&self, tol: &Tol) -> T {
        assert!(self.is_square(), "determinant requires a square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = T::one();
        for k in 0..n {
            let pivot = (k..n)
                .filter(|&i| m[(i, k)].admissible_pivot(tol))
                .max_by(|&a, &b| {
                    m[(a, k)].magnitude().total_cmp(&m[(b, k)].magnitude())
                });
            let Some(p) = pivot else {
                return T::zero();
            };
            if p != k {
                m.swap_rows(p, k);
                det = det.neg();
            }
            let d = m[(k, k)].clone();
            det = det.mul(&d);
            let inv = d.inv().expect("admissible pivot is invertible");
            for i in k + 1..n {
                let factor = m[(i, k)].mul(&inv);
                if factor.is_zero() {
                    continue;
                }
                for j in k + 1..n {
                    let delta = factor.mul(&m[(k, j)]);
                    m[(i, j)] = m[(i, j)].sub(&delta);
                }
                m[(i, k)] = T::zero();
            }
        }
        det
    }

    /// Solve `self * X = rhs` for square non-singular `self`.
    pub fn solve(&self, rhs: &Matrix<T>, tol: &Tol) -> Option<Matrix<T>> {
        assert!(self.is_square());
        assert_eq!(self.rows, rhs.rows);
        let n = self.rows;
        let w = rhs.cols;
        let mut a = self.clone();
        let mut b = rhs.clone();
        for k in 0..n {
            let pivot = (k..n)
                .filter(|&i| a[(i, k)].admissible_pivot(tol))
                .max_by(|&p, &q| a[(p, k)].magnitude().total_cmp(&a[(q, k)].magnitude()))?;
            a.swap_rows(pivot, k);
            b.swap_rows(pivot, k);
            let inv = a[(k, k)].inv()?;
            for i in k + 1..n {
                let factor = a[(i, k)].mul(&inv);
                if factor.is_zero() {
                    continue;
                }
                for j in k + 1..n {
                    let delta = factor.mul(&a[(k, j)]);
                    a[(i, j)] = a[(i, j)].sub(&delta);
                }
                a[(i, k)] = T::zero();
                for j in 0..w {
                    let delta = factor.mul(&b[(k, j)]);
                    b[(i, j)] = b[(i, j)].sub(&delta);
                }
            }
        }
        // Back substitution.
        let mut x = Matrix::zeros(n, w);
        for i in (0..n).rev() {
            let inv = a[(i, i)].inv()?;
            for j in 0..w {
                let mut acc = b[(i, j)].clone();
                for k in i + 1..n {
                    acc = acc.sub(&a[(i, k)].mul(&x[(k, j)]));
                }
                x[(i, j)] = acc.mul(&inv);
            }
        }
        Some(x)
    }

    pub fn inverse(&self, tol: &Tol) -> Option<Matrix<T>> {
        self.solve(&Matrix::identity(self.rows), tol)
    }

    /// Solve the possibly under/over-determined system `self * x = rhs`.
    /// Returns a particular solution with free variables set to zero, or
    /// `None` if the system is inconsistent (within tolerance in the
    /// approximate regime).
    pub fn solve_general(&self, rhs: &[T], tol: &Tol) -> Option<Vec<T>> {
        assert_eq!(rhs.len(), self.rows);
        let (m, n) = (self.rows, self.cols);
        let mut a = self.clone();
        let mut b = rhs.to_vec();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut row = 0;
        for col in 0..n {
            if row == m {
                break;
            }
            let pivot = (row..m)
                .filter(|&i| a[(i, col)].admissible_pivot(tol))
                .max_by(|&p, &q| a[(p, col)].magnitude().total_cmp(&a[(q, col)].magnitude()));
            let Some(p) = pivot else {
                continue;
            };
            a.swap_rows(p, row);
            b.swap(p, row);
            let inv = a[(row, col)].inv().expect("admissible pivot is invertible");
            for i in row + 1..m {
                let factor = a[(i, col)].mul(&inv);
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let delta = factor.mul(&a[(row, j)]);
                    a[(i, j)] = a[(i, j)].sub(&delta);
                }
                let delta = factor.mul(&b[row]);
                b[i] = b[i].sub(&delta);
            }
            pivots.push((row, col));
            row += 1;
        }
        // Rows below the last pivot must have (near-)zero right-hand sides.
        for i in row..m {
            if b[i].significant(tol) {
                return None;
            }
        }
        let mut x = vec![T::zero(); n];
        for &(r, c) in pivots.iter().rev() {
            let mut acc = b[r].clone();
            for j in c + 1..n {
                if !x[j].is_zero() {
                    acc = acc.sub(&a[(r, j)].mul(&x[j]));
                }
            }
            x[c] = acc.mul(&a[(r, c)].inv().expect("pivot invertible"));
        }
        Some(x)
    }
}

/// Rank over the rationals by fraction-free (Bareiss) elimination. Exact;
/// never consults a tolerance.
pub fn exact_rank(m: &Matrix<Rat>) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut prev = Rat::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[(i, col)].is_zero()) else {
            continue;
        };
        a.swap_rows(p, rank);
        let pivot = a[(rank, col)].clone();
        for i in rank + 1..rows {
            for j in col + 1..cols {
                let num = pivot.mul(&a[(i, j)]).sub(&a[(i, col)].mul(&a[(rank, j)]));
                a[(i, j)] = num.div(&prev).expect("Bareiss divisor is non-zero");
            }
            a[(i, col)] = Rat::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Symmetric matrix stored as the upper triangle in row-major order, so
/// symmetry is structural rather than asserted.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMat<T> {
    n: usize,
    tri: Vec<T>,
}

/// Length of the packed upper triangle.
pub fn tri_len(n: usize) -> usize {
    n * (n + 1) / 2
}

fn tri_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * n - (i * i - i) / 2 + (j - i)
}

impl<T: Ring> SymMat<T> {
    /// Build from a function of (row, col) evaluated on the upper triangle.
    pub fn from_upper_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut tri = Vec::with_capacity(tri_len(n));
        for i in 0..n {
            for j in i..n {
                tri.push(f(i, j));
            }
        }
        SymMat { n, tri }
    }

    pub fn from_tri(n: usize, tri: Vec<T>) -> Self {
        assert_eq!(tri.len(), tri_len(n), "upper triangle length must be n(n+1)/2");
        SymMat { n, tri }
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_upper_fn(n, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_upper_fn(n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn diagonal(values: &[T]) -> Self {
        Self::from_upper_fn(values.len(), |i, j| {
            if i == j {
                values[i].clone()
            } else {
                T::zero()
            }
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.tri[tri_index(self.n, i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.tri[tri_index(self.n, i, j)] = value;
    }

    pub fn upper_triangle(&self) -> &[T] {
        &self.tri
    }

    pub fn to_matrix(&self) -> Matrix<T> {
        Matrix::from_rows(self.n, self.n, |i, j| self.get(i, j).clone())
    }

    pub fn map<S: Ring>(&self, mut f: impl FnMut(&T) -> S) -> SymMat<S> {
        SymMat { n: self.n, tri: self.tri.iter().map(|x| f(x)).collect() }
    }

    pub fn add(&self, rhs: &SymMat<T>) -> SymMat<T> {
        assert_eq!(self.n, rhs.n);
        SymMat {
            n: self.n,
            tri: self.tri.iter().zip(&rhs.tri).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, c: &T) -> SymMat<T> {
        self.map(|x| x.mul(c))
    }

    /// tr(self * rhs) for symmetric matrices: sum of entrywise products.
    pub fn trace_product(&self, rhs: &SymMat<T>) -> T {
        assert_eq!(self.n, rhs.n);
        let mut acc = T::zero();
        for i in 0..self.n {
            for j in 0..self.n {
                acc = acc.add(&self.get(i, j).mul(rhs.get(i, j)));
            }
        }
        acc
    }
}

impl<T: Field> SymMat<T> {
    /// Capture a numerically symmetric full matrix, averaging the mirrored
    /// entries (a no-op when they are exactly equal).
    pub fn from_matrix_symmetrized(m: &Matrix<T>) -> Self {
        assert!(m.is_square());
        let half = T::from_i64(2).inv().expect("2 is invertible");
        Self::from_upper_fn(m.rows(), |i, j| {
            if i == j {
                m[(i, j)].clone()
            } else {
                m[(i, j)].add(&m[(j, i)]).mul(&half)
            }
        })
    }

    /// g^t * self * g, re-symmetrized.
    pub fn congruence(&self, g: &Matrix<T>) -> SymMat<T> {
        let full = g.transpose().mul(&self.to_matrix()).mul(g);
        Self::from_matrix_symmetrized(&full)
    }
}

impl<T: Scalar> SymMat<T> {
    pub fn max_magnitude(&self) -> f64 {
        self.tri.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    pub fn max_diff(&self, other: &SymMat<T>) -> f64 {
        assert_eq!(self.n, other.n);
        self.tri
            .iter()
            .zip(&other.tri)
            .map(|(a, b)| a.sub(b).magnitude())
            .fold(0.0, f64::max)
    }

    pub fn det(&self, tol: &Tol) -> T {
        self.to_matrix().det(tol)
    }
}

/// Convenience: exact symmetric matrix from integer rows (upper triangle of
/// the given full rows is used).
pub fn sym_from_int_rows(rows: &[&[i64]]) -> SymMat<Rat> {
    let n = rows.len();
    SymMat::from_upper_fn(n, |i, j| crate::scalar::rat(rows[i][j]))
}

/// Exact dense matrix from integer rows.
pub fn mat_from_int_rows(rows: &[&[i64]]) -> Matrix<Rat> {
    let r = rows.len();
    let c = rows[0].len();
    Matrix::from_rows(r, c, |i, j| crate::scalar::rat(rows[i][j]))
}
