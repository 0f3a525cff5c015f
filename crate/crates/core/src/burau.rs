//! Unreduced and reduced Burau representations over `Λ = Z[t, t^-1]`.
//!
//! `σ_i` maps to `U_i` (block `[[1-t, t], [1, 0]]` at rows/columns `i, i+1`)
//! and, in the reduced representation, to the `(n-1)x(n-1)` matrix `V_i`.
//! Words are evaluated as the product of generator matrices in word order.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::braid::{BraidWord, Sign};
use crate::ring::{LaurentPoly, Matrix, RingError};

/// Name of the Burau variable.
pub const VAR: &str = "t";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BurauError {
    #[error("generator index {index} out of range for {strands} strands")]
    IndexOutOfRange { index: usize, strands: usize },
    #[error("the Burau representation needs at least 2 strands, got {0}")]
    TooFewStrands(usize),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Value of `ψ_n` or `ψ^r_n` on a braid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BurauImage {
    pub strands: usize,
    pub reduced: bool,
    pub matrix: Matrix<LaurentPoly>,
}

fn t() -> LaurentPoly {
    LaurentPoly::var(VAR)
}

fn t_inv() -> LaurentPoly {
    LaurentPoly::monomial(1, &[(VAR, -1)])
}

fn check_index(n: usize, i: usize) -> Result<(), BurauError> {
    if n < 2 {
        return Err(BurauError::TooFewStrands(n));
    }
    if i == 0 || i >= n {
        return Err(BurauError::IndexOutOfRange { index: i, strands: n });
    }
    Ok(())
}

/// `U_i` for `Positive`, the explicit inverse with block
/// `[[0, 1], [t^-1, 1 - t^-1]]` for `Negative`.
pub fn unreduced_generator(n: usize, i: usize, sign: Sign) -> Result<Matrix<LaurentPoly>, BurauError> {
    check_index(n, i)?;
    let one = LaurentPoly::one();
    let block = match sign {
        Sign::Positive => [&one - &t(), t(), one.clone(), LaurentPoly::zero()],
        Sign::Negative => [LaurentPoly::zero(), one.clone(), t_inv(), &one - &t_inv()],
    };
    let mut m = Matrix::identity(n);
    let k = i - 1;
    m.set(k, k, block[0].clone());
    m.set(k, k + 1, block[1].clone());
    m.set(k + 1, k, block[2].clone());
    m.set(k + 1, k + 1, block[3].clone());
    Ok(m)
}

/// `V_i` exactly as displayed for the three cases `i = 1`, `i = n-1` and
/// `1 < i < n-1`; `(-t)` when `n = 2`. Inverses are `adj(V_i) / det(V_i)` with
/// `det(V_i) = -t`.
pub fn reduced_generator(n: usize, i: usize, sign: Sign) -> Result<Matrix<LaurentPoly>, BurauError> {
    check_index(n, i)?;
    let v = reduced_positive(n, i);
    match sign {
        Sign::Positive => Ok(v),
        Sign::Negative => Ok(v.inverse()?),
    }
}

fn reduced_positive(n: usize, i: usize) -> Matrix<LaurentPoly> {
    let k = n - 1;
    let mut v = Matrix::identity(k);
    let minus_t = -t();
    if n == 2 {
        v.set(0, 0, minus_t);
    } else if i == 1 {
        v.set(0, 0, minus_t);
        v.set(1, 0, LaurentPoly::one());
    } else if i == n - 1 {
        v.set(k - 2, k - 1, t());
        v.set(k - 1, k - 1, minus_t);
    } else {
        let b = i - 2;
        v.set(b, b + 1, t());
        v.set(b + 1, b + 1, minus_t);
        v.set(b + 2, b + 1, LaurentPoly::one());
    }
    v
}

fn evaluate(
    w: &BraidWord,
    size: usize,
    generator: impl Fn(usize, usize, Sign) -> Result<Matrix<LaurentPoly>, BurauError>,
) -> Result<Matrix<LaurentPoly>, BurauError> {
    let n = w.strands();
    if n < 2 {
        return Err(BurauError::TooFewStrands(n));
    }
    let mut cache: Vec<Option<Matrix<LaurentPoly>>> = vec![None; 2 * (n - 1)];
    let mut acc = Matrix::identity(size);
    for l in w.letters() {
        let slot = 2 * (l.index - 1) + usize::from(l.sign == Sign::Negative);
        if cache[slot].is_none() {
            cache[slot] = Some(generator(n, l.index, l.sign)?);
        }
        acc = acc.mul_sparse_right(cache[slot].as_ref().unwrap())?;
    }
    Ok(acc)
}

/// `ψ_n(w)`.
pub fn burau(w: &BraidWord) -> Result<BurauImage, BurauError> {
    let matrix = evaluate(w, w.strands(), unreduced_generator)?;
    Ok(BurauImage { strands: w.strands(), reduced: false, matrix })
}

/// `ψ^r_n(w)`.
pub fn reduced_burau(w: &BraidWord) -> Result<BurauImage, BurauError> {
    let n = w.strands();
    let matrix = evaluate(w, n.saturating_sub(1).max(1), reduced_generator)?;
    Ok(BurauImage { strands: n, reduced: true, matrix })
}

/// Upper-triangular all-ones `n x n` matrix.
pub fn conjugation_matrix(n: usize) -> Matrix<LaurentPoly> {
    Matrix::from_fn(n, n, |r, c| if r <= c { LaurentPoly::one() } else { LaurentPoly::zero() })
}

/// `W_i = [[V_i, 0], [X_i, 1]]` with `X_i = (0, …, 0, 1)` for `i = n-1` and
/// zero otherwise.
pub fn block_generator(n: usize, i: usize) -> Result<Matrix<LaurentPoly>, BurauError> {
    check_index(n, i)?;
    let v = reduced_positive(n, i);
    let mut w = Matrix::zeros(n, n);
    for r in 0..n - 1 {
        for c in 0..n - 1 {
            w.set(r, c, v.get(r, c).clone());
        }
    }
    w.set(n - 1, n - 1, LaurentPoly::one());
    if i == n - 1 {
        w.set(n - 1, n - 2, LaurentPoly::one());
    }
    Ok(w)
}

/// Checks `U_i · C = C · W_i` exactly.
pub fn conjugation_check(n: usize, i: usize) -> Result<bool, BurauError> {
    let c = conjugation_matrix(n);
    let lhs = unreduced_generator(n, i, Sign::Positive)?.checked_mul(&c)?;
    let rhs = c.checked_mul(&block_generator(n, i)?)?;
    Ok(lhs == rhs)
}

/// Entry-wise `t ↦ 1`.
pub fn specialize_at_one(m: &Matrix<LaurentPoly>) -> Result<Matrix<LaurentPoly>, RingError> {
    let one = LaurentPoly::one();
    m.try_map(|x| x.substitute(VAR, &one))
}

/// Permutation matrix with a 1 at `(k, π(k))`.
pub fn permutation_matrix(images: &[usize]) -> Matrix<LaurentPoly> {
    let n = images.len();
    Matrix::from_fn(n, n, |r, c| if images[r] == c + 1 { LaurentPoly::one() } else { LaurentPoly::zero() })
}
