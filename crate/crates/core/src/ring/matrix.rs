use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Sub};

use super::{Ring, RingError};

/// Dense row-major matrix over a [`Ring`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, RingError> {
        if rows == 0 || cols == 0 {
            return Err(RingError::DimensionMismatch(format!("empty {rows}x{cols} matrix")));
        }
        if data.len() != rows * cols {
            return Err(RingError::DimensionMismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, RingError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(RingError::DimensionMismatch("ragged rows".into()));
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
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

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(k: usize) -> Self {
        Matrix::from_fn(k, k, |r, c| if r == c { T::one() } else { T::zero() })
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

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<U: Ring, E>(&self, f: impl Fn(&T) -> Result<U, E>) -> Result<Matrix<U>, E> {
        Ok(Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect::<Result<_, _>>()? })
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let v = self.get(r, c);
                    if r == c {
                        *v == T::one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn count_nonzero(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(T::magnitude).fold(0.0, f64::max)
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|x| x.times(k))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, RingError> {
        self.same_shape(other)?;
        Ok(self.zip_with(other, T::plus))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, RingError> {
        self.same_shape(other)?;
        Ok(self.zip_with(other, T::minus))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, RingError> {
        if self.cols != other.rows {
            return Err(RingError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out: Matrix<T> = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * out.cols + c;
                    out.data[idx] = out.data[idx].plus(&a.times(b));
                }
            }
        }
        Ok(out)
    }

    /// `self · g` for a `g` that differs from the identity in few columns;
    /// only those columns are recomputed.
    pub fn mul_sparse_right(&self, g: &Self) -> Result<Self, RingError> {
        if self.cols != g.rows || !g.is_square() {
            return Err(RingError::DimensionMismatch("sparse right factor".into()));
        }
        let n = g.cols;
        let mut out = self.clone();
        for c in 0..n {
            let trivial = (0..n).all(|r| {
                let v = g.get(r, c);
                if r == c {
                    *v == T::one()
                } else {
                    v.is_zero()
                }
            });
            if trivial {
                continue;
            }
            let nz: Vec<(usize, &T)> = (0..n).map(|k| (k, g.get(k, c))).filter(|(_, v)| !v.is_zero()).collect();
            for r in 0..self.rows {
                let mut acc = T::zero();
                for &(k, v) in &nz {
                    acc = acc.plus(&self.get(r, k).times(v));
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Result<Self, RingError> {
        self.checked_mul(other)?.checked_sub(&other.checked_mul(self)?)
    }

    /// Kronecker product; row index of the left factor is most significant.
    pub fn kronecker(&self, other: &Self) -> Self {
        Matrix::from_fn(self.rows * other.rows, self.cols * other.cols, |r, c| {
            self.get(r / other.rows, c / other.cols).times(other.get(r % other.rows, c % other.cols))
        })
    }

    fn same_shape(&self, other: &Self) -> Result<(), RingError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(RingError::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    fn require_square(&self) -> Result<(), RingError> {
        if !self.is_square() {
            return Err(RingError::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(())
    }

    /// Matrix with row `skip_r` and column `skip_c` removed.
    pub fn minor(&self, skip_r: usize, skip_c: usize) -> Self {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for r in (0..self.rows).filter(|&r| r != skip_r) {
            for c in (0..self.cols).filter(|&c| c != skip_c) {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix { rows: self.rows - 1, cols: self.cols - 1, data }
    }

    /// Exact determinant: cofactor expansion below 6x6, fraction-free
    /// (Bareiss) elimination from 6x6 up.
    pub fn det(&self) -> Result<T, RingError> {
        self.require_square()?;
        if self.rows < 6 {
            Ok(self.det_cofactor())
        } else {
            self.det_bareiss()
        }
    }

    fn det_cofactor(&self) -> T {
        match self.rows {
            1 => self.data[0].clone(),
            2 => self.data[0].times(&self.data[3]).minus(&self.data[1].times(&self.data[2])),
            n => {
                // expand along the sparsest row
                let r = (0..n).max_by_key(|&r| self.row(r).iter().filter(|x| x.is_zero()).count()).unwrap();
                let mut acc = T::zero();
                for c in 0..n {
                    let a = self.get(r, c);
                    if a.is_zero() {
                        continue;
                    }
                    let term = a.times(&self.minor(r, c).det_cofactor());
                    acc = if (r + c) % 2 == 0 { acc.plus(&term) } else { acc.minus(&term) };
                }
                acc
            }
        }
    }

    pub(crate) fn det_bareiss(&self) -> Result<T, RingError> {
        let n = self.rows;
        let mut m = self.clone();
        let mut negate = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !m.get(r, k).is_zero()) else {
                    return Ok(T::zero());
                };
                for c in 0..n {
                    m.data.swap(k * n + c, p * n + c);
                }
                negate = !negate;
            }
            let pivot = m.get(k, k).clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m.get(i, j).times(&pivot).minus(&m.get(i, k).times(m.get(k, j)));
                    let v = num.div_exact(&prev).ok_or_else(|| RingError::NotDivisible("Bareiss step".into()))?;
                    m.set(i, j, v);
                }
                m.set(i, k, T::zero());
            }
            prev = pivot;
        }
        let d = m.get(n - 1, n - 1).clone();
        Ok(if negate { d.negated() } else { d })
    }

    /// Classical adjugate: `adj(A)·A = det(A)·I`.
    pub fn adjugate(&self) -> Result<Self, RingError> {
        self.require_square()?;
        let n = self.rows;
        if n == 1 {
            return Ok(Matrix::identity(1));
        }
        let mut out = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                let d = self.minor(r, c).det()?;
                out.set(c, r, if (r + c) % 2 == 0 { d } else { d.negated() });
            }
        }
        Ok(out)
    }

    /// Inverse over the ring itself, via adjugate and a unit determinant.
    pub fn inverse(&self) -> Result<Self, RingError> {
        let d = self.det()?;
        let inv = d.unit_inverse().ok_or(RingError::NotInvertible)?;
        Ok(self.adjugate()?.scale(&inv))
    }
}

impl<T: Ring> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    /// Panics on a dimension mismatch; see [`Matrix::checked_mul`].
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.checked_mul(rhs).expect("matrix dimension mismatch")
    }
}

impl<T: Ring> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.checked_add(rhs).expect("matrix dimension mismatch")
    }
}

impl<T: Ring> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.checked_sub(rhs).expect("matrix dimension mismatch")
    }
}

impl<T: Ring + fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            f.write_str("[")?;
            for c in 0..self.cols {
                if c > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[T]> = self.data.chunks(self.cols.max(1)).collect();
        f.debug_struct("Matrix").field("rows", &self.rows).field("cols", &self.cols).field("data", &rows).finish()
    }
}
