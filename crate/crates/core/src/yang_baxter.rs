//! Yang-Baxter checks for concrete matrices `R ∈ Aut(V⊗V)` and the braid
//! group representations `ρ_R(σ_i) = id^{i-1} ⊗ R ⊗ id^{n-i-1}` they induce.
//!
//! Basis of `V^{⊗n}`: multi-indices `(a_1, …, a_n)` in lexicographic order
//! with the leftmost factor most significant, so `e_a ⊗ e_b` has index
//! `a·d + b`. Matrices act on column vectors.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::braid::{BraidWord, Sign};
use crate::ring::{LaurentPoly, Matrix, Ring, RingError};

/// Numeric residuals at or below this count as a pass.
pub const NUMERIC_TOLERANCE: f64 = 1e-10;

/// Largest `d^n` accepted by [`rep_from_r`].
pub const MAX_TENSOR_DIM: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum YbeError {
    #[error("R must be {expected}x{expected} for dim {dim}, got {rows}x{cols}")]
    Shape { dim: usize, expected: usize, rows: usize, cols: usize },
    #[error("dim must be at least 1")]
    ZeroDim,
    #[error("R does not satisfy the braid Yang-Baxter equation")]
    NotAnRMatrix,
    #[error("tensor power dimension {0} exceeds {MAX_TENSOR_DIM}")]
    TooLarge(usize),
    #[error("word has {word} strands, representation requested on {n}")]
    StrandMismatch { word: usize, n: usize },
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// A candidate r-matrix on `V ⊗ V` with `dim V = dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct RMatrix<T> {
    dim: usize,
    matrix: Matrix<T>,
}

impl<T: Ring> RMatrix<T> {
    pub fn new(dim: usize, matrix: Matrix<T>) -> Result<Self, YbeError> {
        if dim == 0 {
            return Err(YbeError::ZeroDim);
        }
        let expected = dim * dim;
        if matrix.rows() != expected || matrix.cols() != expected {
            return Err(YbeError::Shape { dim, expected, rows: matrix.rows(), cols: matrix.cols() });
        }
        Ok(RMatrix { dim, matrix })
    }

    pub fn identity(dim: usize) -> Self {
        RMatrix { dim, matrix: Matrix::identity(dim * dim) }
    }

    /// The flip `τ(e_i ⊗ e_j) = e_j ⊗ e_i`.
    pub fn flip(dim: usize) -> Self {
        RMatrix { dim, matrix: flip_matrix(dim) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    /// `τ ∘ R`.
    pub fn flipped(&self) -> Self {
        RMatrix { dim: self.dim, matrix: &flip_matrix(self.dim) * &self.matrix }
    }

    pub fn scaled(&self, k: &T) -> Self {
        RMatrix { dim: self.dim, matrix: self.matrix.scale(k) }
    }

    /// `R^-1` over the coefficient ring, if it exists there.
    pub fn inverse(&self) -> Result<Self, YbeError> {
        Ok(RMatrix { dim: self.dim, matrix: self.matrix.inverse()? })
    }

    /// Exact: the determinant is a unit. Numeric: the adjugate inverse
    /// reproduces the identity to [`NUMERIC_TOLERANCE`].
    pub fn is_invertible(&self) -> bool {
        match self.matrix.inverse() {
            Ok(inv) if T::EXACT => {
                let _ = inv;
                true
            }
            Ok(inv) => {
                let prod = &self.matrix * &inv;
                let err = prod.checked_sub(&Matrix::identity(prod.rows())).map(|m| m.max_abs());
                matches!(err, Ok(e) if e.is_finite() && e <= NUMERIC_TOLERANCE)
            }
            Err(_) => false,
        }
    }
}

fn flip_matrix<T: Ring>(d: usize) -> Matrix<T> {
    Matrix::from_fn(d * d, d * d, |r, c| {
        let (i, j) = (c / d, c % d);
        if r == j * d + i {
            T::one()
        } else {
            T::zero()
        }
    })
}

/// `Ř_q` on `V = C^2`: `e_i⊗e_i ↦ q e_i⊗e_i`, `e_1⊗e_2 ↦ e_2⊗e_1`,
/// `e_2⊗e_1 ↦ e_1⊗e_2 + (q - q^-1) e_2⊗e_1`, with `q` a formal variable.
pub fn standard_rcheck() -> RMatrix<LaurentPoly> {
    let q = LaurentPoly::var("q");
    let q_inv = LaurentPoly::monomial(1, &[("q", -1)]);
    let one = LaurentPoly::one();
    let mut m = Matrix::zeros(4, 4);
    m.set(0, 0, q.clone());
    m.set(2, 1, one.clone());
    m.set(1, 2, one);
    m.set(2, 2, &q - &q_inv);
    m.set(3, 3, q);
    RMatrix { dim: 2, matrix: m }
}

/// Outcome of an identity check: literal zero for exact rings, max-entry
/// size for floating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Residual {
    Exact { nonzero_entries: usize },
    Numeric { max_abs: f64 },
}

impl Residual {
    pub fn of<T: Ring>(diff: &Matrix<T>) -> Self {
        if T::EXACT {
            Residual::Exact { nonzero_entries: diff.count_nonzero() }
        } else {
            Residual::Numeric { max_abs: diff.max_abs() }
        }
    }

    pub fn passes(&self) -> bool {
        match *self {
            Residual::Exact { nonzero_entries } => nonzero_entries == 0,
            Residual::Numeric { max_abs } => max_abs <= NUMERIC_TOLERANCE,
        }
    }
}

fn digits(mut index: usize, d: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for k in (0..n).rev() {
        out[k] = index % d;
        index /= d;
    }
    out
}

fn undigits(ds: &[usize], d: usize) -> usize {
    ds.iter().fold(0, |acc, &x| acc * d + x)
}

/// `op` (on `V⊗V`) acting on tensor legs `i < j` (1-based) of `V^{⊗n}`.
pub fn place_on_legs<T: Ring>(op: &Matrix<T>, d: usize, n: usize, i: usize, j: usize) -> Matrix<T> {
    assert!(1 <= i && i < j && j <= n, "legs must satisfy 1 <= i < j <= n");
    let size = d.pow(n as u32);
    let mut out = Matrix::zeros(size, size);
    for c in 0..size {
        let cd = digits(c, d, n);
        let local_c = cd[i - 1] * d + cd[j - 1];
        for local_r in 0..d * d {
            let v = op.get(local_r, local_c);
            if v.is_zero() {
                continue;
            }
            let mut rd = cd.clone();
            rd[i - 1] = local_r / d;
            rd[j - 1] = local_r % d;
            out.set(undigits(&rd, d), c, v.clone());
        }
    }
    out
}

/// Returns the difference `(R⊗id)(id⊗R)(R⊗id) − (id⊗R)(R⊗id)(id⊗R)` on `V^{⊗3}`.
pub fn braid_ybe_difference<T: Ring>(r: &RMatrix<T>) -> Matrix<T> {
    let d = r.dim;
    let r12 = place_on_legs(&r.matrix, d, 3, 1, 2);
    let r23 = place_on_legs(&r.matrix, d, 3, 2, 3);
    let lhs = &(&r12 * &r23) * &r12;
    let rhs = &(&r23 * &r12) * &r23;
    &lhs - &rhs
}

pub fn check_braid_ybe<T: Ring>(r: &RMatrix<T>) -> Residual {
    Residual::of(&braid_ybe_difference(r))
}

/// Returns `R12 R13 R23 − R23 R13 R12` on `V^{⊗3}`.
pub fn qybe_difference<T: Ring>(r: &RMatrix<T>) -> Matrix<T> {
    let d = r.dim;
    let r12 = place_on_legs(&r.matrix, d, 3, 1, 2);
    let r13 = place_on_legs(&r.matrix, d, 3, 1, 3);
    let r23 = place_on_legs(&r.matrix, d, 3, 2, 3);
    let lhs = &(&r12 * &r13) * &r23;
    let rhs = &(&r23 * &r13) * &r12;
    &lhs - &rhs
}

pub fn check_qybe<T: Ring>(r: &RMatrix<T>) -> Residual {
    Residual::of(&qybe_difference(r))
}

/// `acc · (id^{k-1} ⊗ op ⊗ id^{n-k-1})` without forming the big factor.
fn mul_local_right<T: Ring>(acc: &Matrix<T>, op: &Matrix<T>, d: usize, n: usize, k: usize) -> Matrix<T> {
    let size = acc.cols();
    let mut out = Matrix::zeros(acc.rows(), size);
    for c in 0..size {
        let cd = digits(c, d, n);
        let local_c = cd[k - 1] * d + cd[k];
        let mut sources = Vec::with_capacity(d * d);
        for local_r in 0..d * d {
            let v = op.get(local_r, local_c);
            if v.is_zero() {
                continue;
            }
            let mut rd = cd.clone();
            rd[k - 1] = local_r / d;
            rd[k] = local_r % d;
            sources.push((undigits(&rd, d), v));
        }
        for row in 0..acc.rows() {
            let mut sum = T::zero();
            for &(src, v) in &sources {
                let a = acc.get(row, src);
                if !a.is_zero() {
                    sum = sum.plus(&a.times(v));
                }
            }
            out.set(row, c, sum);
        }
    }
    out
}

/// `ρ_R(w)` on `V^{⊗n}`. Unless `allow_non_ybe`, `R` must pass the braid
/// Yang-Baxter check first.
pub fn rep_from_r<T: Ring>(
    r: &RMatrix<T>,
    n: usize,
    w: &BraidWord,
    allow_non_ybe: bool,
) -> Result<Matrix<T>, YbeError> {
    if w.strands() != n {
        return Err(YbeError::StrandMismatch { word: w.strands(), n });
    }
    let size = r.dim.checked_pow(n as u32).filter(|&s| s <= MAX_TENSOR_DIM);
    let Some(size) = size else {
        return Err(YbeError::TooLarge(r.dim.saturating_pow(n as u32)));
    };
    if !allow_non_ybe && !check_braid_ybe(r).passes() {
        return Err(YbeError::NotAnRMatrix);
    }
    let needs_inverse = w.letters().iter().any(|l| l.sign == Sign::Negative);
    let inv = if needs_inverse { Some(r.matrix.inverse()?) } else { None };
    let mut acc = Matrix::identity(size);
    for l in w.letters() {
        let op = match l.sign {
            Sign::Positive => &r.matrix,
            Sign::Negative => inv.as_ref().unwrap(),
        };
        acc = mul_local_right(&acc, op, r.dim, n, l.index);
    }
    Ok(acc)
}

/// Matrix-level shadow of the quasi-triangular axioms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuasitriangularReport {
    pub braid_ybe: Residual,
    pub qybe: Residual,
    pub invertible: bool,
}

impl QuasitriangularReport {
    pub fn passes(&self) -> bool {
        self.braid_ybe.passes() && self.qybe.passes() && self.invertible
    }
}

pub fn check_quasitriangular_matrix_axioms<T: Ring>(r: &RMatrix<T>) -> QuasitriangularReport {
    QuasitriangularReport { braid_ybe: check_braid_ybe(r), qybe: check_qybe(r), invertible: r.is_invertible() }
}
