//! Representations of Artin braid groups.
//!
//! Three constructions are provided, all consuming the same [`braid::BraidWord`]:
//!
//! * the Burau representation and its reduced form, as exact matrices over
//!   `Z[t, t^-1]` ([`burau`]), together with the Alexander-Conway polynomial of
//!   braid closures built from it ([`alexander`]);
//! * representations induced by solutions of the Yang-Baxter equation on
//!   tensor powers `V^{⊗n}` ([`yang_baxter`]);
//! * monodromy of the Knizhnik-Zamolodchikov connection on tensor powers of
//!   `sl2` Verma modules, computed by adaptive parallel transport ([`kz`]),
//!   with the exact `sl2` algebra behind it in [`sl2`].
//!
//! Letters of a braid word act left to right: the matrix of `w = a·b` is
//! `M(a)·M(b)` in every representation in this crate.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod alexander;
pub mod braid;
pub mod burau;
pub mod kz;
pub mod ring;
pub mod sl2;
pub mod yang_baxter;

pub use braid::{BraidError, BraidWord, Letter, Permutation};
pub use ring::{LaurentPoly, Matrix, Ring, RingError};
