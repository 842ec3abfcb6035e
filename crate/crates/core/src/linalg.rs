//! Small dense linear algebra: a row-major matrix and a cyclic Jacobi
//! eigensolver for real symmetric matrices.

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
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
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == T::zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = out[(i, j)] + a * other[(k, j)];
                }
            }
        }
        out
    }

    /// `A x`
    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        assert_eq!(self.cols, x.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(&a, &b)| a * b).sum())
            .collect()
    }

    /// `Aᵀ x`
    pub fn tr_mul_vec(&self, x: &[T]) -> Vec<T> {
        assert_eq!(self.rows, x.len());
        let mut out = vec![T::zero(); self.cols];
        for (i, &xi) in x.iter().enumerate() {
            for (o, &a) in out.iter_mut().zip(self.row(i)) {
                *o = *o + a * xi;
            }
        }
        out
    }

    /// `AᵀA`
    pub fn gram(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.cols);
        for i in 0..self.rows {
            let r = self.row(i);
            for a in 0..self.cols {
                if r[a] == T::zero() {
                    continue;
                }
                for b in a..self.cols {
                    out[(a, b)] = out[(a, b)] + r[a] * r[b];
                }
            }
        }
        for a in 0..self.cols {
            for b in 0..a {
                out[(a, b)] = out[(b, a)];
            }
        }
        out
    }

    /// Submatrix keeping the listed rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])])
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a - b).abs())
            .fold(T::zero(), T::max)
    }

    fn frobenius(&self) -> T {
        self.data.iter().map(|&v| v * v).sum::<T>().sqrt()
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

const MAX_SWEEPS: usize = 100;

/// Eigenpairs of a real symmetric matrix.
///
/// Eigenvalues are returned in ascending order (ties keep the solver's
/// diagonal order), eigenvectors as the matching columns of an orthogonal
/// matrix. Each eigenvector is signed so that its first coordinate whose
/// magnitude exceeds a small noise floor is positive.
pub fn symmetric_eigen<T: Scalar>(matrix: &Matrix<T>) -> Result<(Vec<T>, Matrix<T>)> {
    let n = matrix.rows();
    assert_eq!(n, matrix.cols(), "matrix must be square");
    let mut a = matrix.clone();
    let mut v = Matrix::identity(n);
    let scale = a.frobenius();
    let threshold = T::epsilon() * scale;

    let mut converged = n < 2 || scale == T::zero();
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(Error::ConvergenceFailure { sweeps });
        }
        sweeps += 1;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == T::zero() {
                    continue;
                }
                let app = a[(p, p)];
                let aqq = a[(q, q)];
                let theta = (aqq - app) / (apq + apq);
                let t = {
                    let mag = T::one() / (theta.abs() + (theta * theta + T::one()).sqrt());
                    if theta < T::zero() {
                        -mag
                    } else {
                        mag
                    }
                };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                rotate(&mut a, &mut v, p, q, c, s);
                a[(p, q)] = T::zero();
                a[(q, p)] = T::zero();
            }
        }
        let off = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)] * a[(i, j)])
            .sum::<T>()
            .sqrt();
        converged = off <= threshold;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[(i, i)]
            .partial_cmp(&a[(j, j)])
            .expect("finite eigenvalues")
    });
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let mut vectors = Matrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    fix_signs(&mut vectors);
    Ok((values, vectors))
}

fn rotate<T: Scalar>(a: &mut Matrix<T>, v: &mut Matrix<T>, p: usize, q: usize, c: T, s: T) {
    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = c * akp - s * akq;
        a[(k, q)] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = c * apk - s * aqk;
        a[(q, k)] = s * apk + c * aqk;
    }
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

fn fix_signs<T: Scalar>(vectors: &mut Matrix<T>) {
    let floor = T::epsilon().sqrt() * T::of(1e-2);
    for j in 0..vectors.cols() {
        let lead = (0..vectors.rows())
            .map(|i| vectors[(i, j)])
            .find(|x| x.abs() > floor);
        if matches!(lead, Some(x) if x < T::zero()) {
            for i in 0..vectors.rows() {
                vectors[(i, j)] = -vectors[(i, j)];
            }
        }
    }
}

/// Inverse of a symmetric positive definite matrix through its eigenpairs.
pub fn spd_inverse<T: Scalar>(matrix: &Matrix<T>) -> Result<Matrix<T>> {
    let (values, vectors) = symmetric_eigen(matrix)?;
    let n = matrix.rows();
    Ok(Matrix::from_fn(n, n, |i, j| {
        (0..n)
            .map(|k| vectors[(i, k)] * vectors[(j, k)] / values[k])
            .sum()
    }))
}

/// Numerical rank from Gram eigenvalues: counts eigenvalues above
/// `rank_tol · max(eigenvalue)`.
pub fn gram_rank<T: Scalar>(gram_eigenvalues: &[T]) -> usize {
    let top = gram_eigenvalues.iter().copied().fold(T::zero(), T::max);
    if top <= T::zero() {
        return 0;
    }
    gram_eigenvalues
        .iter()
        .filter(|&&e| e > T::rank_tol() * top)
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_decomposition(m: &Matrix<f64>) {
        let (vals, vecs) = symmetric_eigen(m).unwrap();
        let n = m.rows();
        assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        let qtq = vecs.transpose().matmul(&vecs);
        assert!(qtq.max_abs_diff(&Matrix::identity(n)) < 1e-12);
        for (j, &val) in vals.iter().enumerate() {
            let q = vecs.column(j);
            let mq = m.mul_vec(&q);
            assert!(mq.iter().zip(&q).all(|(a, b)| (a - val * b).abs() < 1e-12));
        }
    }

    #[test]
    fn diagonal_matrix_is_sorted() {
        let m = Matrix::from_fn(3, 3, |i, j| if i == j { [3.0, -1.0, 2.0][i] } else { 0.0 });
        let (vals, vecs) = symmetric_eigen(&m).unwrap();
        assert_eq!(vals, vec![-1.0, 2.0, 3.0]);
        assert_eq!(vecs.column(0), vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn two_by_two() {
        let m = Matrix::<f64>::from_fn(2, 2, |i, j| if i == j { 2.0 } else { 1.0 });
        let (vals, vecs) = symmetric_eigen(&m).unwrap();
        assert!((vals[0] - 1.0).abs() < 1e-14 && (vals[1] - 3.0).abs() < 1e-14);
        // sign convention: leading coordinate positive
        assert!(vecs[(0, 0)] > 0.0 && vecs[(0, 1)] > 0.0);
        check_decomposition(&m);
    }

    #[test]
    fn random_symmetric() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in [1, 4, 9, 20] {
            let mut m = Matrix::zeros(n, n);
            for i in 0..n {
                for j in i..n {
                    let x: f64 = rng.gen_range(-1.0..1.0);
                    m[(i, j)] = x;
                    m[(j, i)] = x;
                }
            }
            check_decomposition(&m);
        }
    }

    #[test]
    fn spd_inverse_roundtrip() {
        let m = Matrix::from_fn(3, 3, |i, j| if i == j { 4.0 } else { 1.0 });
        let inv = spd_inverse(&m).unwrap();
        assert!(m.matmul(&inv).max_abs_diff(&Matrix::identity(3)) < 1e-13);
    }

    #[test]
    fn single_precision_path() {
        let m = Matrix::<f32>::from_fn(2, 2, |i, j| if i == j { 2.0 } else { 1.0 });
        let (vals, _) = symmetric_eigen(&m).unwrap();
        assert!((vals[0] - 1.0).abs() < 1e-6 && (vals[1] - 3.0).abs() < 1e-6);
    }

    #[test]
    fn rank_counts_relative() {
        assert_eq!(gram_rank(&[1.0, 1e-3, 1e-14]), 2);
        assert_eq!(gram_rank::<f64>(&[0.0, 0.0]), 0);
    }
}
