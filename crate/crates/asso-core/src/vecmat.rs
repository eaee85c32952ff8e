//! Dense vectors, matrices and exact linear solving over an ordered field.

use crate::scalar::Scalar;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vector<T> {
    data: Vec<T>,
}

impl<T: Scalar> Vector<T> {
    pub fn from_vec(data: Vec<T>) -> Self {
        Vector { data }
    }

    pub fn zeros(n: usize) -> Self {
        Vector {
            data: vec![T::zero(); n],
        }
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<T> {
        self.data
    }

    pub fn dot(&self, other: &Self) -> T {
        assert_eq!(self.len(), other.len(), "dot of unequal lengths");
        let mut acc = T::zero();
        for (a, b) in self.data.iter().zip(&other.data) {
            acc = acc + a.clone() * b.clone();
        }
        acc
    }

    pub fn scale(&self, s: &T) -> Self {
        Vector {
            data: self.data.iter().map(|x| x.clone() * s.clone()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len());
        Vector {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len());
        Vector {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Vector {
            data: self.data.iter().map(|x| -x.clone()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
}

impl<T> std::ops::Index<usize> for Vector<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.data[i]
    }
}

impl<T> std::ops::IndexMut<usize> for Vector<T> {
    fn index_mut(&mut self, i: usize) -> &mut T {
        &mut self.data[i]
    }
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
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

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vector<T> {
        Vector::from_vec((0..self.rows).map(|i| self[(i, j)].clone()).collect())
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &Vector<T>) -> Vector<T> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let mut out = Vector::zeros(self.rows);
        for i in 0..self.rows {
            let mut acc = T::zero();
            for j in 0..self.cols {
                acc = acc + self[(i, j)].clone() * v[j].clone();
            }
            out[i] = acc;
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)].clone();
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * other[(k, j)].clone();
                }
            }
        }
        out
    }

    /// Reduced row echelon form in place; returns pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = T::one() / self[(r, c)].clone();
            for j in c..self.cols {
                self[(r, j)] = self[(r, j)].clone() * inv.clone();
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let f = self[(i, c)].clone();
                    for j in c..self.cols {
                        let s = self[(r, j)].clone() * f.clone();
                        self[(i, j)] = self[(i, j)].clone() - s;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Exact inverse, or `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = T::one();
        }
        let pivots = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Some(out)
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// Full description of the solution set of `A x = b`.
#[derive(Clone, Debug)]
pub enum LinearSolution<T> {
    /// A particular solution together with a basis of the kernel of `A`.
    Solvable {
        particular: Vector<T>,
        kernel: Vec<Vector<T>>,
    },
    Inconsistent,
}

/// Exact solution of `A x = b` with kernel basis; inconsistency is a value.
pub fn solve_linear<T: Scalar>(a: &Matrix<T>, b: &Vector<T>) -> LinearSolution<T> {
    assert_eq!(a.nrows(), b.len(), "A must have as many rows as b entries");
    let n = a.ncols();
    let mut aug = Matrix::zeros(a.nrows(), n + 1);
    for i in 0..a.nrows() {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, n)] = b[i].clone();
    }
    let pivots = aug.rref();
    if pivots.contains(&n) {
        return LinearSolution::Inconsistent;
    }
    let mut particular = Vector::zeros(n);
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = aug[(r, n)].clone();
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut kernel = Vec::with_capacity(free.len());
    for &f in &free {
        let mut k = Vector::zeros(n);
        k[f] = T::one();
        for (r, &c) in pivots.iter().enumerate() {
            k[c] = -aug[(r, f)].clone();
        }
        kernel.push(k);
    }
    LinearSolution::Solvable { particular, kernel }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{qvec, rat, QMat};

    fn qmat(rows: &[&[i64]]) -> QMat {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    #[test]
    fn identity_solve() {
        let a = qmat(&[&[1, 0], &[0, 1]]);
        let b = qvec(&[1, 2]);
        match solve_linear(&a, &b) {
            LinearSolution::Solvable { particular, kernel } => {
                assert_eq!(particular, qvec(&[1, 2]));
                assert!(kernel.is_empty());
            }
            _ => panic!("identity system must be solvable"),
        }
    }

    #[test]
    fn zero_matrix_kernel() {
        let a = qmat(&[&[0, 0], &[0, 0]]);
        let b = qvec(&[0, 0]);
        match solve_linear(&a, &b) {
            LinearSolution::Solvable { particular, kernel } => {
                assert_eq!(particular, qvec(&[0, 0]));
                assert_eq!(kernel.len(), 2);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn rank_deficient_inconsistent() {
        let a = qmat(&[&[1, 1], &[1, 1]]);
        let b = qvec(&[1, 2]);
        assert!(matches!(solve_linear(&a, &b), LinearSolution::Inconsistent));
    }

    #[test]
    fn solution_satisfies_system() {
        let a = qmat(&[&[2, 1, -1], &[1, 0, 1]]);
        let b = qvec(&[3, 2]);
        match solve_linear(&a, &b) {
            LinearSolution::Solvable { particular, kernel } => {
                assert_eq!(a.mul_vec(&particular), b);
                for k in &kernel {
                    assert!(a.mul_vec(k).is_zero());
                }
                assert_eq!(kernel.len(), 1);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let a = qmat(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().expect("invertible");
        assert_eq!(a.mul(&inv), QMat::identity(2));
        assert!(qmat(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }
}
