//! Exact arithmetic: integers, rationals, multivariate Laurent polynomials,
//! and dense matrices over any of them (plus complex doubles for numerics).

use alloc::string::String;
use core::fmt::Debug;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

mod laurent;
pub mod linalg;
mod matrix;

pub use laurent::LaurentPoly;
pub use matrix::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("not divisible: {0}")]
    NotDivisible(String),
    #[error("substitution image must be a unit monomial, got `{0}`")]
    NonUnitImage(String),
    #[error("matrix is not invertible over its ring")]
    NotInvertible,
    #[error("cannot parse `{0}`")]
    Parse(String),
}

/// Commutative ring with identity, as used by [`Matrix`].
///
/// Arithmetic goes through references so that matrix code never clones
/// big-integer payloads just to add them.
pub trait Ring: Clone + PartialEq + Debug {
    /// `false` for floating-point carriers, where zero tests need a tolerance.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Size of the value; used for pivoting and numeric residuals.
    fn magnitude(&self) -> f64;
    /// `self / rhs` when the quotient exists in the ring.
    fn div_exact(&self, rhs: &Self) -> Option<Self>;

    fn unit_inverse(&self) -> Option<Self> {
        Self::one().div_exact(self)
    }
}

/// Rings in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;

    fn over(&self, rhs: &Self) -> Self {
        self.times(&rhs.inv())
    }
}

impl Ring for BigInt {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if Zero::is_zero(rhs) {
            return None;
        }
        let (q, r) = self.div_rem(rhs);
        Zero::is_zero(&r).then_some(q)
    }
}

impl Ring for BigRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        (!Zero::is_zero(rhs)).then(|| self / rhs)
    }
}

impl Field for BigRational {
    fn inv(&self) -> Self {
        self.recip()
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
}

impl Ring for Complex64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        (!Ring::is_zero(rhs)).then(|| self / rhs)
    }
}

impl Field for Complex64 {
    fn inv(&self) -> Self {
        Complex64::new(1.0, 0.0) / self
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }
}

/// Converts an exact rational to the nearest double.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}
