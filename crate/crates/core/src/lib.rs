//! Exact-arithmetic engines for Tsirelson-type implicit norms, generalized
//! Schreier families, and repeated-averages hierarchies.
//!
//! Everything in this crate computes with exact big rationals; no floating
//! point appears anywhere in a value path. The crate is `no_std` (it only
//! needs `alloc`), so the engines can be embedded anywhere; file and
//! command-line plumbing lives in the companion `tsirelson-cli` crate.
//!
//! Module map:
//!
//! * [`ordinal`] — ordinals below `w^w` in Cantor normal form, with the
//!   canonical fundamental sequences used by limit-level constructions.
//! * [`stream`] — computable strictly increasing index streams `M ⊆ ℕ` and a
//!   budgeted consumption cursor.
//! * [`schreier`] — membership, enumeration, relativization, regularity
//!   checking and thinning for the generalized Schreier families `S_a`.
//! * [`averages`] — the repeated-averages hierarchy `a_n^M`, the `⟨x,F⟩`
//!   pairing, the subsequence identity checker and the largeness search.
//! * [`vector`] — canonical finitely supported vectors with exact rational
//!   coefficients.
//! * [`norms`] — the implicit Tsirelson norm, its q-perturbed and truncated
//!   relatives, the recursive `N`-family, the spreading-model formula,
//!   auxiliary norms, and a brute-force subset-enumeration oracle.
//! * [`constructions`] — `l1^m`-average blocks, witness vectors, distance in
//!   distribution, the finite `l1`-core extraction, spreading-model
//!   estimation by shifting, and the two-parameter mixing curve.

#![cfg_attr(not(test), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod averages;
pub mod constructions;
pub mod error;
pub mod norms;
pub mod ordinal;
pub mod rat;
pub mod schreier;
pub mod stream;
pub mod vector;

pub use error::{Error, Result};
pub use rat::Rational;
