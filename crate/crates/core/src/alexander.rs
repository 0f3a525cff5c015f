//! The Markov function built from the reduced Burau representation and the
//! Alexander-Conway polynomial of braid closures.
//!
//! For `β ∈ B_n`, `n ≥ 2`:
//!
//! ```text
//! f_n(β) = (-1)^(n+1) · s^(-⟨β⟩) · (s - s^-1) · g(det(ψ^r_n(β) - id)) / (s^n - s^-n)
//! ```
//!
//! where `g` is `t ↦ s^2` and `⟨β⟩` the exponent sum. The division is carried
//! out exactly and a remainder is reported as an error, never truncated.
//! `σ_i` is taken to be the positive crossing `L+`.

use core::fmt;

use thiserror::Error;

use crate::braid::{BraidError, BraidWord, Letter, Sign};
use crate::burau::{self, BurauError};
use crate::ring::{LaurentPoly, Matrix, RingError};

/// Name of the Conway variable.
pub const VAR: &str = "s";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlexanderError {
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Burau(#[from] BurauError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("f_n is only defined for n >= 2 strands, got {0}")]
    TooFewStrands(usize),
}

/// `∇(L)` as a Laurent polynomial in `s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConwayPolynomial {
    pub poly: LaurentPoly,
}

impl fmt::Display for ConwayPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

/// Conway polynomial of a closure together with its number of components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConwayValue {
    pub conway: ConwayPolynomial,
    pub components: usize,
}

fn s_pow(k: i64) -> LaurentPoly {
    LaurentPoly::monomial(1, &[(VAR, k as i32)])
}

/// `s^-1 - s`, the skein coefficient.
pub fn skein_coefficient() -> LaurentPoly {
    &s_pow(-1) - &s_pow(1)
}

/// `f_n(β)` for `n ≥ 2`.
pub fn markov_f(w: &BraidWord) -> Result<ConwayPolynomial, AlexanderError> {
    let n = w.strands();
    if n < 2 {
        return Err(AlexanderError::TooFewStrands(n));
    }
    let psi = burau::reduced_burau(w)?.matrix;
    let shifted = psi.checked_sub(&Matrix::identity(n - 1))?;
    let det = shifted.det()?.substitute(burau::VAR, &s_pow(2))?;

    let sign = if n % 2 == 1 { 1 } else { -1 }; // (-1)^(n+1)
    let prefactor = LaurentPoly::monomial(sign, &[(VAR, -(w.exponent_sum() as i32))]);
    let numerator = &(&prefactor * &(&s_pow(1) - &s_pow(-1))) * &det;
    let denominator = &s_pow(n as i64) - &s_pow(-(n as i64));
    let poly = numerator.exact_div(&denominator)?;
    Ok(ConwayPolynomial { poly })
}

/// `∇` of the closure of `w`; a one-strand word is stabilized once first.
pub fn alexander_conway(w: &BraidWord) -> Result<ConwayValue, AlexanderError> {
    let components = w.closure_component_count();
    let word = if w.strands() == 1 { w.markov_stabilize(Sign::Positive) } else { w.clone() };
    Ok(ConwayValue { conway: markov_f(&word)?, components })
}

/// Verifies `∇(L+) - ∇(L-) = (s^-1 - s)·∇(L0)` for the braid-realised triple
/// `prefix·σ_i^{+1, -1, 0}·suffix`.
pub fn skein_check(prefix: &BraidWord, i: usize, suffix: &BraidWord) -> Result<bool, AlexanderError> {
    let n = prefix.strands();
    if suffix.strands() != n {
        return Err(BraidError::StrandMismatch(n, suffix.strands()).into());
    }
    let middle = |sign| BraidWord::new(n, alloc::vec![Letter::new(i, sign)]);
    let plus = prefix.compose(&middle(Sign::Positive)?)?.compose(suffix)?;
    let minus = prefix.compose(&middle(Sign::Negative)?)?.compose(suffix)?;
    let zero = prefix.compose(suffix)?;

    let lp = alexander_conway(&plus)?.conway.poly;
    let lm = alexander_conway(&minus)?.conway.poly;
    let l0 = alexander_conway(&zero)?.conway.poly;
    Ok(&lp - &lm == &skein_coefficient() * &l0)
}

/// Verifies both Markov moves: `f_n(g w g^-1) = f_n(w)` and
/// `f_n(w) = f_{n+1}(σ_n ι(w)) = f_{n+1}(σ_n^-1 ι(w))`.
pub fn markov_invariance_check(w: &BraidWord, g: &BraidWord) -> Result<bool, AlexanderError> {
    let base = markov_f(w)?;
    let conj = markov_f(&w.markov_conjugate(g)?)?;
    let up = markov_f(&w.markov_stabilize(Sign::Positive))?;
    let down = markov_f(&w.markov_stabilize(Sign::Negative))?;
    Ok(base == conj && base == up && base == down)
}
