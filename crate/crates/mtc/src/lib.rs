//! Exact modular data for weakly integral modular categories.
//!
//! The crate stores S- and T-matrices over cyclotomic fields, checks the
//! modular axioms exactly, analyses Galois symmetry and support cycles, builds
//! the pointed, Ising and metaplectic families, and runs the rank 6 and 7
//! classification searches with per-profile certificates.

pub mod arith;
pub mod classify;
pub mod cyclo;
pub mod families;
pub mod fusion;
pub mod io;
pub mod linalg;
pub mod moddata;
pub mod numeric;
pub mod symmetry;

/// Arbitrary precision rationals.
pub type Rational = num_rational::BigRational;
/// Arbitrary precision integers.
pub type Integer = num_bigint::BigInt;

pub use cyclo::{CycError, CycNumber};
pub use fusion::FusionRing;
pub use moddata::{ModularDatum, NormalizedDatum};
