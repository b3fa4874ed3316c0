//! Exact linear algebra over the rationals.
//!
//! Every dimension claim certified by this crate reduces to a rank, kernel
//! or span computation done here. Elimination is plain Gaussian elimination
//! on exact [`Scalar`] entries with the pivot chosen by smallest digit count,
//! so there are no thresholds and no rounding. Matrices in this problem top
//! out at 165x97; dense row-major storage is deliberate.

use num_traits::{One, Zero};

use crate::rng::SplitMix64;
use crate::scalar::{scalar, scalar_size, Scalar};

/// Dense row-major matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    /// Build from rows of integers; handy in tests.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c));
        Matrix::from_fn(r, c, |i, j| scalar(rows[i][j]))
    }

    /// Stack the given equal-length vectors as rows.
    pub fn from_rows(rows: &[Vec<Scalar>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            entries: rows.iter().flat_map(|row| row.iter().cloned()).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        Matrix::from_fn(self.rows, rhs.cols, |r, c| {
            let mut acc = Scalar::zero();
            for k in 0..self.cols {
                let a = self.get(r, k);
                if !a.is_zero() {
                    acc += a * rhs.get(k, c);
                }
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero();
                for (a, x) in self.row(r).iter().zip(v) {
                    if !a.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c) * s)
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c) + rhs.get(r, c))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn trace(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let mut acc = Scalar::zero();
        for i in 0..self.rows {
            acc += self.get(i, i);
        }
        acc
    }

    /// Determinant of a 3x3 matrix by direct expansion.
    pub fn det3x3(&self) -> Scalar {
        assert_eq!((self.rows, self.cols), (3, 3), "det3x3 needs a 3x3 matrix");
        let e = |r: usize, c: usize| self.get(r, c);
        e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1))
            - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
            + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0))
    }

    /// Adjugate (transposed cofactor matrix) of a 3x3 matrix.
    pub fn adjugate3x3(&self) -> Matrix {
        assert_eq!((self.rows, self.cols), (3, 3), "adjugate3x3 needs 3x3");
        let e = |r: usize, c: usize| self.get(r, c);
        // adj[i][j] = cofactor C[j][i]
        let cof = |r: usize, c: usize| {
            let r1 = (r + 1) % 3;
            let r2 = (r + 2) % 3;
            let c1 = (c + 1) % 3;
            let c2 = (c + 2) % 3;
            // Cyclic index choice already encodes the (-1)^{r+c} sign.
            e(r1, c1) * e(r2, c2) - e(r1, c2) * e(r2, c1)
        };
        Matrix::from_fn(3, 3, |i, j| cof(j, i))
    }

    /// Reduced row echelon form. Returns the echelonized matrix and the
    /// pivot column indices. Pivot rows are chosen by smallest digit count
    /// among the column's nonzero candidates to limit coefficient growth.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let candidate = (pivot_row..m.rows)
                .filter(|&r| !m.get(r, col).is_zero())
                .min_by_key(|&r| scalar_size(m.get(r, col)));
            let Some(best) = candidate else { continue };
            m.swap_rows(pivot_row, best);
            let inv = {
                let p = m.get(pivot_row, col).clone();
                Scalar::one() / p
            };
            for c in col..m.cols {
                let v = m.get(pivot_row, c) * &inv;
                m.set(pivot_row, c, v);
            }
            for r in 0..m.rows {
                if r == pivot_row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let v = m.get(r, c) - &factor * m.get(pivot_row, c);
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

/// Exact rank over the rationals.
pub fn rank(m: &Matrix) -> usize {
    m.rref().1.len()
}

/// A linear subspace of Q^ambient_dim given by an independent basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn new(ambient_dim: usize, basis: Vec<Vec<Scalar>>) -> Self {
        assert!(basis.iter().all(|v| v.len() == ambient_dim));
        debug_assert_eq!(rank(&Matrix::from_rows(&basis)), basis.len());
        Subspace { ambient_dim, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    /// Membership test: adding `v` must not increase the span.
    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rank(&Matrix::from_rows(&rows)) == self.basis.len()
    }
}

/// Basis of the right kernel { v : m v = 0 }.
pub fn kernel(m: &Matrix) -> Subspace {
    let (rref, pivots) = m.rref();
    let mut basis = Vec::with_capacity(m.cols() - pivots.len());
    let mut is_pivot = vec![false; m.cols()];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    for free in 0..m.cols() {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![Scalar::zero(); m.cols()];
        v[free] = Scalar::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -rref.get(row, free).clone();
        }
        basis.push(v);
    }
    Subspace::new(m.cols(), basis)
}

/// Dimension of the span of the given vectors (all of one length).
pub fn span_dim(vectors: &[Vec<Scalar>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    rank(&Matrix::from_rows(vectors))
}

/// Product of `steps` elementary shears `I + c E_{ij}` (i != j, c integer in
/// -3..=3), so the determinant is exactly 1.
pub fn random_unimodular(dim: usize, steps: usize, rng: &mut SplitMix64) -> Matrix {
    let mut m = Matrix::identity(dim);
    for _ in 0..steps {
        let i = rng.next_below(dim as u64) as usize;
        let mut j = rng.next_below((dim - 1) as u64) as usize;
        if j >= i {
            j += 1;
        }
        let c = rng.next_in_range(-3, 3);
        let mut shear = Matrix::identity(dim);
        shear.set(i, j, scalar(c));
        m = m.mul(&shear);
    }
    m
}
