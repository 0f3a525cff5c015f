//! Gaussian elimination over a [`Field`]: reduced row echelon form, kernels,
//! and compression of operators onto invariant subspaces.
//!
//! Exact fields test pivots with `is_zero`; floating-point fields treat an
//! entry as zero below `NUMERIC_ZERO` times the largest input entry.

use alloc::vec::Vec;

use super::{Field, Matrix, RingError};

pub const NUMERIC_ZERO: f64 = 1e-10;

fn negligible<T: Field>(x: &T, scale: f64) -> bool {
    if T::EXACT {
        x.is_zero()
    } else {
        x.magnitude() <= NUMERIC_ZERO * scale
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Rref<T> {
    pub matrix: Matrix<T>,
    pub pivots: Vec<usize>,
}

pub fn rref<T: Field>(m: &Matrix<T>) -> Rref<T> {
    let (rows, cols) = (m.rows(), m.cols());
    let scale = m.max_abs().max(f64::MIN_POSITIVE);
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let candidate = if T::EXACT {
            (r..rows).find(|&i| !a.get(i, c).is_zero())
        } else {
            (r..rows)
                .filter(|&i| !negligible(a.get(i, c), scale))
                .max_by(|&i, &j| a.get(i, c).magnitude().total_cmp(&a.get(j, c).magnitude()))
        };
        let Some(p) = candidate else {
            for i in r..rows {
                a.set(i, c, T::zero());
            }
            continue;
        };
        if p != r {
            for k in 0..cols {
                let x = a.get(p, k).clone();
                let y = a.get(r, k).clone();
                a.set(p, k, y);
                a.set(r, k, x);
            }
        }
        let inv = a.get(r, c).inv();
        for k in 0..cols {
            let v = a.get(r, k).times(&inv);
            a.set(r, k, v);
        }
        a.set(r, c, T::one());
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = a.get(i, c).clone();
            if f.is_zero() {
                continue;
            }
            for k in 0..cols {
                let v = a.get(i, k).minus(&f.times(a.get(r, k)));
                a.set(i, k, v);
            }
            a.set(i, c, T::zero());
        }
        pivots.push(c);
        r += 1;
    }
    Rref { matrix: a, pivots }
}

pub fn rank<T: Field>(m: &Matrix<T>) -> usize {
    rref(m).pivots.len()
}

/// Basis of `{x : m·x = 0}`.
///
/// Basis vector `k` has a 1 in coordinate `free[k]` and zeros in the other
/// free coordinates, so the coordinates of any vector of the kernel in this
/// basis are its entries at `free`.
#[derive(Debug, Clone)]
pub struct Kernel<T> {
    /// `ambient x dim` matrix whose columns span the kernel.
    pub basis: Matrix<T>,
    pub free: Vec<usize>,
}

impl<T: Field> Kernel<T> {
    pub fn dim(&self) -> usize {
        self.free.len()
    }

    /// Matrix of `op` restricted to the kernel, assuming `op` preserves it.
    pub fn compress(&self, op: &Matrix<T>) -> Result<Matrix<T>, RingError> {
        let image = op.checked_mul(&self.basis)?;
        Ok(Matrix::from_fn(self.dim(), self.dim(), |r, c| image.get(self.free[r], c).clone()))
    }

    /// Largest component of `op·basis` outside the kernel, i.e. how far `op`
    /// is from preserving it (exactly zero for exact fields).
    pub fn leakage(&self, op: &Matrix<T>) -> Result<f64, RingError> {
        let image = op.checked_mul(&self.basis)?;
        let back = self
            .basis
            .checked_mul(&Matrix::from_fn(self.dim(), self.dim(), |r, c| image.get(self.free[r], c).clone()))?;
        Ok(image.checked_sub(&back)?.max_abs())
    }
}

pub fn kernel<T: Field>(m: &Matrix<T>) -> Kernel<T> {
    let cols = m.cols();
    let reduced = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !reduced.pivots.contains(c)).collect();
    let mut basis = Matrix::zeros(cols, free.len());
    for (k, &f) in free.iter().enumerate() {
        basis.set(f, k, T::one());
        for (row, &p) in reduced.pivots.iter().enumerate() {
            basis.set(p, k, reduced.matrix.get(row, f).negated());
        }
    }
    Kernel { basis, free }
}

/// Inverse of a square matrix by Gauss-Jordan elimination.
pub fn invert<T: Field>(m: &Matrix<T>) -> Result<Matrix<T>, RingError> {
    if !m.is_square() {
        return Err(RingError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let aug = Matrix::from_fn(n, 2 * n, |r, c| {
        if c < n {
            m.get(r, c).clone()
        } else if c - n == r {
            T::one()
        } else {
            T::zero()
        }
    });
    let red = rref(&aug);
    if red.pivots.len() < n || red.pivots[n - 1] != n - 1 {
        return Err(RingError::NotInvertible);
    }
    Ok(Matrix::from_fn(n, n, |r, c| red.matrix.get(r, c + n).clone()))
}
