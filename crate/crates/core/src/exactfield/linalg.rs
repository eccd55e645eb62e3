//! Gaussian elimination over Q: reduced row echelon form, kernels, linear
//! solves, and an incrementally grown subspace.

use num_traits::{One, Zero};

use super::matrix::Matrix;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Outcome of reducing a matrix to reduced row echelon form.
#[derive(Clone, Debug)]
pub struct RowReduction {
    pub rref: Matrix,
    pub pivots: Vec<usize>,
}

impl RowReduction {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// A basis of the right kernel, one vector per free column. The vector
    /// for free column `f` has a 1 at `f` and zeros at the other free columns.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let n = self.rref.cols();
        let free = (0..n).filter(|j| !self.pivots.contains(j));
        free.map(|f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (r, &p) in self.pivots.iter().enumerate() {
                let x = &self.rref[(r, f)];
                if !x.is_zero() {
                    v[p] = -x;
                }
            }
            v
        })
        .collect()
    }

    /// Free (non-pivot) columns in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.rref.cols())
            .filter(|j| !self.pivots.contains(j))
            .collect()
    }
}

/// Reduced row echelon form, choosing the first nonzero entry as pivot.
pub fn row_reduce(a: &Matrix) -> RowReduction {
    let mut m = a.clone();
    let (rows, cols) = m.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in c..cols {
                let tmp = m[(p, j)].clone();
                m[(p, j)] = m[(r, j)].clone();
                m[(r, j)] = tmp;
            }
        }
        let inv = m[(r, c)].recip();
        for j in c..cols {
            if !m[(r, j)].is_zero() {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
        }
        let pivot_row: Vec<(usize, Rational)> = (c..cols)
            .filter(|&j| !m[(r, j)].is_zero())
            .map(|j| (j, m[(r, j)].clone()))
            .collect();
        for i in 0..rows {
            if i == r || m[(i, c)].is_zero() {
                continue;
            }
            let f = m[(i, c)].clone();
            for (j, x) in &pivot_row {
                m[(i, *j)] -= &f * x;
            }
        }
        pivots.push(c);
        r += 1;
    }
    RowReduction { rref: m, pivots }
}

pub fn rank(a: &Matrix) -> usize {
    row_reduce(a).rank()
}

/// Kernel basis of `a`, as column vectors.
pub fn kernel(a: &Matrix) -> Vec<Vec<Rational>> {
    row_reduce(a).kernel_basis()
}

/// General solution of `A x = b`.
#[derive(Clone, Debug)]
pub struct LinearSolution {
    pub particular: Vec<Rational>,
    pub nullspace: Vec<Vec<Rational>>,
}

/// Solves `A x = b`; `None` when inconsistent.
pub fn solve_linear(a: &Matrix, b: &[Rational]) -> Result<Option<LinearSolution>> {
    if b.len() != a.rows() {
        return Err(Error::mismatch(a.rows(), b.len()));
    }
    let n = a.cols();
    let mut aug = Matrix::zeros(a.rows(), n + 1);
    aug.set_block(0, 0, a);
    for (i, x) in b.iter().enumerate() {
        aug[(i, n)] = x.clone();
    }
    let red = row_reduce(&aug);
    if red.pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut particular = vec![Rational::zero(); n];
    for (r, &p) in red.pivots.iter().enumerate() {
        particular[p] = red.rref[(r, n)].clone();
    }
    let coeff = RowReduction {
        rref: red.rref.block(0, 0, a.rows(), n),
        pivots: red.pivots,
    };
    Ok(Some(LinearSolution {
        particular,
        nullspace: coeff.kernel_basis(),
    }))
}

/// Inverse of a square matrix.
pub fn inverse(a: &Matrix) -> Result<Matrix> {
    let n = a.require_square()?;
    let mut aug = Matrix::zeros(n, 2 * n);
    aug.set_block(0, 0, a);
    aug.set_block(0, n, &Matrix::identity(n));
    let red = row_reduce(&aug);
    if (0..n).any(|i| red.pivots.get(i) != Some(&i)) {
        return Err(Error::Singular);
    }
    Ok(red.rref.block(0, n, n, n))
}

impl Matrix {
    pub fn inverse(&self) -> Result<Matrix> {
        inverse(self)
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }
}

/// True when the given vectors are linearly independent.
pub fn independent(vectors: &[Vec<Rational>], dim: usize) -> bool {
    if vectors.is_empty() {
        return true;
    }
    rank(&Matrix::from_columns(dim, vectors)) == vectors.len()
}

/// A subspace of `Q^n` kept as a reduced echelon basis, so membership is a
/// single reduction.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    // Echelon rows: each has a leading 1 at `pivots[i]` and zeros at every
    // other pivot column.
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn spanned_by(ambient: usize, vectors: &[Vec<Rational>]) -> Self {
        let mut s = Self::new(ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Echelon basis of the subspace.
    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.ambient, "vector length");
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (x, y) in w.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns `false` if it already lay in the subspace.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].recip();
        for x in w.iter_mut() {
            *x = &*x * &inv;
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&w) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, w);
        self.pivots.insert(at, p);
        true
    }
}
