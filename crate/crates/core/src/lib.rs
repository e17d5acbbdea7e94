//! Exact truncated computation in completed free associative algebras and
//! Drinfeld-Kohno type quotients.
//!
//! Layers, bottom up:
//! - [`series`]: weighted alphabets, monomials and truncated series with the
//!   Hopf operations (coproduct, exp, log, BCH, substitution).
//! - [`quotient`]: degreewise echelon tables for homogeneous ideals.
//! - [`families`]: the concrete alphabets and relations, symmetric and
//!   cyclic group actions.
//! - [`operadic`]: partial maps, insertion-coproduct morphisms and the
//!   operad, moperad and module compositions built from them.
//! - [`malcev`]: group models made of group-like series.
//! - [`associator`]: equation checkers, the degree-by-degree solver and the
//!   GT-type group laws and actions.
//!
//! The crate is `no_std` and only needs `alloc`.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod associator;
pub mod error;
pub mod families;
pub mod malcev;
pub mod operadic;
pub mod quotient;
pub mod series;

pub use error::Error;

/// Exact rational coefficients.
pub type Rational = num_rational::BigRational;

/// Result alias used across the crate.
pub type Result<T> = core::result::Result<T, Error>;
