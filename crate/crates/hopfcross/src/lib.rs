//! Exact-arithmetic toolkit for finite-dimensional Hopf algebras given by
//! structure constants: verification of the Hopf axioms, crossed products
//! built from a weak action and a convolution cocycle, cleft-extension
//! round trips, and the complete classification machinery for crossed
//! products with the 4-dimensional Sweedler Hopf algebra.
//!
//! Everything is computed over one of three exact coefficient fields: the
//! rationals, a prime field F_p with p an odd prime, or a rational function
//! field F_p(X1, ..., Xn). No floating point is involved anywhere; every
//! reported identity is an identity of field elements.

pub mod scalars;

pub mod linalg;

pub mod report;

pub mod hopf;

pub mod catalog;

pub mod analysis;

pub mod crossed;

pub mod morphism;

pub mod sweedler;

pub mod io;

pub use scalars::{FieldKind, FieldSpec, Scalar, ScalarError};
